#!/usr/bin/env python
# -*- coding: utf-8 -*-

# Copyright (c) 2016, 2017 ctesfactor developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Planning of interferogram sequences.

A band with ratio c = lam_max / lam_min lets one interferogram cover the
trial factors [N lam_min / x, N lam_max / x].  Shrinking the displacement
by c from one interferogram to the next makes these intervals abut, so a
geometric sequence x_i = x_0 / c**i covers a whole range of trial factors:

 - METHOD1 covers [3, sqrt(N)] and so finds every factorisation,
 - METHOD2 covers [sqrt(N), N], the cofactors, which needs displacements
   of the order of the wavelength only.
"""

import enum
import logging
import math
from collections import namedtuple
from math import isqrt

from ctesfactor import analysis
from ctesfactor.analysis import FactorReport, TrialInterval, UNCOVERED
from ctesfactor.helper_functions import compose_filename, to_fraction
from ctesfactor.instrument import (Band, SetupSpec, simulate,
                                   write_interferogram)
from ctesfactor.sumcore import SumConfig

LOGGER = logging.getLogger(__name__)

# Relative tolerance on the abutment of adjacent intervals
ABUT_RTOL = analysis.EDGE_SLACK


class PlanningError(ValueError):
    """The requested plan or sequence cannot be made."""
    pass


class CoverageViolation(Exception):
    """A sequence leaves trial factors uncovered."""

    def __init__(self, N, gaps, uncovered):
        self.N = N
        self.gaps = gaps
        self.uncovered = uncovered
        parts = ["gap (%.10g, %.10g)" % gap for gap in gaps]
        parts += ["target part [%.10g, %.10g] uncovered" % part
                  for part in uncovered]
        super(CoverageViolation, self).__init__(
            "Coverage violated for N=%d: %s" % (N, ", ".join(parts)))


class MethodKind(enum.Enum):
    """The two ways of covering the trial factors of N."""
    METHOD1 = 1
    METHOD2 = 2

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        for prefix in ('method', 'm'):
            if text.startswith(prefix):
                text = text[len(prefix):]
                break
        try:
            return cls(int(text))
        except ValueError:
            raise PlanningError("Unknown method %r, use 1 or 2" % (value, ))

    def target(self, N):
        """Real interval of trial factors the method must cover."""
        if self is MethodKind.METHOD1:
            return 3.0, math.sqrt(N)
        return math.sqrt(N), float(N)

    def target_integers(self, N):
        """Integer trial factors the method must cover."""
        if self is MethodKind.METHOD1:
            return TrialInterval(3, isqrt(N))
        return TrialInterval(_ceil_sqrt(N), N)


def _ceil_sqrt(N):
    root = isqrt(N)
    return root if root * root == N else root + 1


SingleShotRange = namedtuple('SingleShotRange', ['method', 'x', 'band',
                                                 'N_lo', 'N_hi', 'valid'])


def _band_fractions(band):
    return to_fraction(band.lam_min), to_fraction(band.lam_max)


def _displacement_limit(lmin, lmax, method):
    if method is MethodKind.METHOD1:
        return 3 * lmax ** 2 / lmin
    return lmax


def single_range(x, band, method):
    """Integers fully handled by a single interferogram of displacement x.

    The range is only usable when *valid* is set.
    """
    method = MethodKind.parse(method)
    x_exact = to_fraction(x)
    if x_exact <= 0:
        raise PlanningError("Displacement must be positive, got %r" % (x, ))
    lmin, lmax = _band_fractions(band)
    if method is MethodKind.METHOD1:
        N_lo = math.ceil(x_exact ** 2 / lmax ** 2)
        N_hi = math.floor(3 * x_exact / lmin)
    else:
        N_lo = 1
        N_hi = math.floor(x_exact ** 2 / lmin ** 2)
    valid = x_exact <= _displacement_limit(lmin, lmax, method)
    return SingleShotRange(method, float(x), band, N_lo, N_hi, bool(valid))


def max_displacement(band, method):
    """Largest displacement for which a single shot range is valid."""
    method = MethodKind.parse(method)
    return float(_displacement_limit(*_band_fractions(band), method=method))


def max_single(band, method, return_exact=False):
    """Largest N fully handled by one interferogram, floor(9 c**2) for
    METHOD1 and floor(c**2) for METHOD2.

    For METHOD1 the floor is only attained when 9 c**2 is an integer, the
    *exact* flag returned with *return_exact* tells so.
    """
    method = MethodKind.parse(method)
    lmin, lmax = _band_fractions(band)
    ratio_sq = lmax ** 2 / lmin ** 2
    if method is MethodKind.METHOD1:
        bound = 9 * ratio_sq
        exact = bound.denominator == 1
        if not exact:
            LOGGER.warning("9 c^2 = %s is not an integer, %d is an upper "
                           "bound only", float(bound), math.floor(bound))
    else:
        bound = ratio_sq
        exact = True
    result = math.floor(bound)
    if return_exact:
        return result, exact
    return result


class SequencePlan(object):
    """Geometric sequence of displacements x_i = x_0 / c**i, i < n."""

    def __init__(self, method, band, N_min, N_max, x0, xs):
        self.method = MethodKind.parse(method)
        self.band = band if isinstance(band, Band) else Band(*band)
        self.N_min = int(N_min)
        self.N_max = int(N_max)
        self.x0 = float(x0)
        self.xs = tuple(float(x) for x in xs)
        if not self.xs:
            raise PlanningError("A plan needs at least one displacement")
        if any(later >= earlier
               for earlier, later in zip(self.xs, self.xs[1:])):
            raise PlanningError("Displacements must decrease strictly")

    @property
    def n(self):
        return len(self.xs)

    @property
    def c(self):
        return self.band.ratio

    def to_dict(self):
        return {'method': self.method.value,
                'band_nm': [self.band.lam_min, self.band.lam_max],
                'N_min': self.N_min, 'N_max': self.N_max,
                'x0_nm': self.x0, 'n': self.n, 'xs_nm': list(self.xs)}

    @classmethod
    def from_dict(cls, info):
        plan_ = cls(info['method'], Band(*info['band_nm']), info['N_min'],
                    info['N_max'], info['x0_nm'], info['xs_nm'])
        if 'n' in info and info['n'] != plan_.n:
            raise PlanningError("Plan lists n=%d but holds %d displacements"
                                % (info['n'], plan_.n))
        return plan_

    def __repr__(self):
        return "<SequencePlan %s N in [%d, %d], n=%d, x0=%g nm>" % (
            self.method.name, self.N_min, self.N_max, self.n, self.x0)


def _min_exponent(ratio_sq, target):
    """Smallest n >= 0 with ratio_sq**n >= target, exactly."""
    if target <= 1:
        return 0
    count = max(0, int(math.ceil(math.log(float(target)) /
                                 math.log(float(ratio_sq)))))
    while count > 0 and ratio_sq ** (count - 1) >= target:
        count -= 1
    while ratio_sq ** count < target:
        count += 1
    return count


def plan(N_min, N_max, band, method, x0=None):
    """Plan the interferogram sequence covering every N in [N_min, N_max].

    The default x_0 is the smallest allowed: lam_min N_max / 3 for METHOD1
    and lam_min sqrt(N_max) for METHOD2.
    """
    method = MethodKind.parse(method)
    if not isinstance(band, Band):
        band = Band(*band)
    if int(N_min) != N_min or int(N_max) != N_max:
        raise PlanningError("N range must be integers")
    N_min, N_max = int(N_min), int(N_max)
    if not 1 <= N_min <= N_max:
        raise PlanningError("Need 1 <= N_min <= N_max, got [%d, %d]" %
                            (N_min, N_max))
    lmin, lmax = _band_fractions(band)
    ratio_sq = lmax ** 2 / lmin ** 2

    if method is MethodKind.METHOD1:
        x0_min_sq = (lmin * N_max / 3) ** 2
        x0_min = float(lmin * N_max / 3)
    else:
        x0_min_sq = lmin ** 2 * N_max
        x0_min = float(lmin) * math.sqrt(N_max)

    if x0 is None:
        x0_sq = x0_min_sq
        x0 = x0_min
    else:
        x0_exact = to_fraction(x0)
        x0_sq = x0_exact ** 2
        if x0_exact <= 0 or x0_sq < x0_min_sq:
            raise PlanningError("x0 = %g nm is below the method minimum "
                                "x_0 = %.10g nm for N_max = %d" %
                                (float(x0), x0_min, N_max))
        x0 = float(x0)

    if method is MethodKind.METHOD1:
        target = x0_sq / (lmin ** 2 * N_min)
    else:
        target = x0_sq / lmin ** 2
    count = max(1, _min_exponent(ratio_sq, target))
    ratio = band.ratio
    xs = [x0 / ratio ** i for i in range(count)]
    result = SequencePlan(method, band, N_min, N_max, x0, xs)
    LOGGER.info("Planned %s: %d interferograms from x0=%.10g nm, c=%.6g",
                method.name, count, x0, ratio)
    return result


def _intervals(plan_, N):
    return [(N * plan_.band.lam_min / x, N * plan_.band.lam_max / x)
            for x in plan_.xs]


def _owned_ranges(intervals, lo_bound, hi_bound):
    """Integers each interval is responsible for within [lo_bound,
    hi_bound].  An integer shared by two intervals belongs to the one
    with the lower index.
    """
    owned = []
    taken = lo_bound - 1
    for low, high in intervals:
        first = math.ceil(low * (1 - ABUT_RTOL))
        last = math.floor(high * (1 + ABUT_RTOL))
        first = max(first, taken + 1, lo_bound)
        last = min(last, hi_bound)
        owned.append(TrialInterval(first, last))
        if first <= last:
            taken = last
    return owned


class CoverageProof(object):
    """Intervals of a verified sequence and which interferogram owns which
    trial factor of the target.
    """

    def __init__(self, N, method, intervals, owned, target):
        self.N = N
        self.method = method
        self.intervals = intervals
        self.owned = owned
        self.target = target

    def index_of(self, ell):
        """Index of the interferogram owning trial factor *ell*."""
        for idx, owned in enumerate(self.owned):
            if ell in owned:
                return idx
        raise KeyError("Trial factor %d is not in the target of N=%d" %
                       (ell, self.N))

    def to_dict(self):
        return {'N': self.N, 'method': self.method.value,
                'target': [self.target.lo, self.target.hi],
                'intervals': [list(item) for item in self.intervals],
                'owned': [[item.lo, item.hi] for item in self.owned]}


def verify_coverage(plan_, N):
    """Check that the plan covers the method target of *N* without gaps.

    Returns a CoverageProof, raises CoverageViolation listing the gaps
    between adjacent intervals and the parts of the target left out.
    """
    if int(N) != N or not plan_.N_min <= N <= plan_.N_max:
        raise PlanningError("N=%s is outside the planned range [%d, %d]" %
                            (N, plan_.N_min, plan_.N_max))
    N = int(N)
    intervals = _intervals(plan_, N)
    gaps = []
    for (_, high), (low, _) in zip(intervals, intervals[1:]):
        if low > high * (1 + ABUT_RTOL):
            gaps.append((high, low))

    target_lo, target_hi = plan_.method.target(N)
    uncovered = []
    if target_lo <= target_hi:
        first_lo = intervals[0][0]
        last_hi = intervals[-1][1]
        if first_lo > target_lo * (1 + ABUT_RTOL):
            uncovered.append((target_lo, min(first_lo, target_hi)))
        for gap_lo, gap_hi in gaps:
            part = (max(gap_lo, target_lo), min(gap_hi, target_hi))
            if part[0] < part[1]:
                uncovered.append(part)
        if last_hi < target_hi * (1 - ABUT_RTOL):
            uncovered.append((max(last_hi, target_lo), target_hi))

    if gaps or uncovered:
        violation = CoverageViolation(N, gaps, uncovered)
        LOGGER.error("%s", violation)
        raise violation

    target = plan_.method.target_integers(N)
    owned = _owned_ranges(intervals, target.lo, target.hi)
    LOGGER.debug("N=%d covered by %d interferograms", N, len(intervals))
    return CoverageProof(N, plan_.method, intervals, owned, target)


UncertaintyBudget = namedtuple('UncertaintyBudget',
                               ['lam', 'x', 'dl', 'dx', 'N', 'ell_max',
                                'dxi', 'dxi_N', 'resolvable',
                                'discriminable'])


def uncertainty(lam, x, dl, dx, N, ell_max=None):
    """Propagate the wavelength error *dl* and displacement error *dx* to
    the rescaled variable:

        d xi   = lam dx / x**2 + dl / x
        d xi_N = N d xi

    Peaks stay resolvable while d xi_N < 1/2.  Neighbouring residues of
    the largest trial factor ell_max (default floor(N lam / x)) stay apart
    while d xi_N < 1 / (2 ell_max).
    """
    if lam <= 0 or x <= 0:
        raise PlanningError("Wavelength and displacement must be positive")
    if dl < 0 or dx < 0:
        raise PlanningError("Errors must be >= 0")
    if ell_max is None:
        ell_max = max(2, int(math.floor(N * lam / x)))
    dxi = lam * dx / x ** 2 + dl / x
    dxi_N = N * dxi
    return UncertaintyBudget(lam, x, dl, dx, N, ell_max, dxi, dxi_N,
                             dxi_N < 0.5, dxi_N < 1.0 / (2 * ell_max))


def uncertainty_bound(band, x, dl, dx, N):
    """Worst case budget over the band, reached at lam_max."""
    return uncertainty(band.lam_max, x, dl, dx, N)


class SequenceReport(FactorReport):
    """Factor report of one N assembled from a whole sequence."""

    def __init__(self, N, method, covered, checks, sources, target,
                 complete):
        super(SequenceReport, self).__init__(N, covered, checks,
                                             coverage_warning=covered.empty)
        self.method = method
        self.sources = list(sources)
        self.target = target
        self.complete = complete

    @property
    def target_factors(self):
        """Factors found within the method target."""
        return [ell for ell in self.factors if ell in self.target]

    @property
    def certified_prime(self):
        """True when the sequence proves N prime."""
        if not self.complete or self.N < 2:
            return False
        if self.N % 2 == 0 and self.N != 2 and 2 not in self.target:
            return False
        return not [ell for ell in self.target_factors if ell != self.N]

    def to_dict(self):
        info = super(SequenceReport, self).to_dict()
        info.update({'method': self.method.value,
                     'target': [self.target.lo, self.target.hi],
                     'complete': self.complete,
                     'certified_prime': self.certified_prime,
                     'target_factors': self.target_factors,
                     'interferogram': self.sources})
        return info


def run_sequence(plan_, Ns, noise, dl, cfg=SumConfig(3, 2),
                 rho=analysis.DEFAULT_RHO, tolerance=0.0, include_two=False,
                 save_pattern=None):
    """Simulate every interferogram of the plan and assemble one report per
    N in *Ns*.

    Interferogram i is simulated with seed ``noise.seed + i``.  Each trial
    factor is checked on the lowest indexed interferogram covering it.
    When *save_pattern* is given, each interferogram is also written to
    the file it composes to, with the keys ``index``, ``x`` and ``method``.
    """
    Ns = [int(N) for N in Ns]
    for N in Ns:
        if N < 2 or not plan_.N_min <= N <= plan_.N_max:
            raise PlanningError("N=%d is outside the planned range [%d, %d]"
                                % (N, plan_.N_min, plan_.N_max))
    lo_bound = 2 if include_two else 3
    owned = {N: _owned_ranges(_intervals(plan_, N), lo_bound, N)
             for N in Ns}
    collected = {N: [] for N in Ns}

    for idx, x in enumerate(plan_.xs):
        setup = SetupSpec(cfg, x, plan_.band, dl,
                          noise.with_seed(noise.seed + idx))
        interferogram = simulate(setup)
        if save_pattern:
            fname = compose_filename(save_pattern,
                                     {'index': idx, 'x': x,
                                      'method': plan_.method.value})
            write_interferogram(interferogram, fname)
        for N in Ns:
            ells = owned[N][idx]
            if ells.empty:
                continue
            checks = analysis.scan_trials(interferogram, N, ells.integers(),
                                          rho, tolerance)
            collected[N].extend((idx, check) for check in checks)
        LOGGER.info("Interferogram %d/%d at x=%.10g nm done", idx + 1,
                    plan_.n, x)

    reports = []
    for N in Ns:
        pairs = collected[N]
        checks = [check for _, check in pairs]
        sources = [idx for idx, _ in pairs]
        ranges = [item for item in owned[N] if not item.empty]
        if ranges:
            covered = TrialInterval(ranges[0].lo, ranges[-1].hi)
        else:
            covered = TrialInterval(lo_bound, lo_bound - 1)
        target = plan_.method.target_integers(N)
        target = TrialInterval(max(target.lo, lo_bound), target.hi)
        decided = set(check.ell for check in checks
                      if check.verdict != UNCOVERED)
        complete = all(ell in decided for ell in target.integers())
        if not complete:
            LOGGER.warning("Sequence does not decide every trial factor of "
                           "N=%d in [%d, %d]", N, target.lo, target.hi)
        report = SequenceReport(N, plan_.method, covered, checks, sources,
                                target, complete)
        if report.unresolved:
            LOGGER.warning("N=%d: interpolation error can flip the verdicts "
                           "of %s", N, report.unresolved)
        reports.append(report)
    return reports
