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

"""Factor analysis of interferograms.

One interferogram of displacement x answers the question "does l divide
N" for every trial factor l whose target wavelength l x / N falls in the
band.  A factor shows a full intensity peak there, a non-factor l can at
most reach the ceiling of its worst residue, and the decision threshold
lies in between:

    threshold(l) = ceiling(l) + rho (1 - ceiling(l)) - tolerance
"""

import logging
import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ctesfactor import sumcore
from ctesfactor.helper_functions import to_fraction
from ctesfactor.instrument import simulate
from ctesfactor.sumcore import DomainError

LOGGER = logging.getLogger(__name__)

FACTOR = 'factor'
NON_FACTOR = 'non-factor'
UNCOVERED = 'uncovered'

DEFAULT_RHO = 0.5

# Relative slack on the band edges when trial factors come from floating
# point interval ends
EDGE_SLACK = 1e-9

# A verdict is unresolved when this many interpolation errors reach from
# the intensity to the threshold
RESOLUTION_SAFETY = 2.0


class TrialInterval(namedtuple('TrialInterval', ['lo', 'hi'])):
    """Closed integer interval, empty when lo > hi."""
    __slots__ = ()

    @property
    def empty(self):
        return self.lo > self.hi

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    def __contains__(self, ell):
        return self.lo <= ell <= self.hi

    def integers(self):
        return range(self.lo, self.hi + 1)


class TrialCheck(namedtuple('TrialCheck', ['N', 'ell', 'lam_target',
                                           'intensity', 'ceiling',
                                           'threshold', 'residue',
                                           'verdict', 'interp_error'],
                            defaults=(None, ))):
    """Outcome of testing whether *ell* divides *N*.

    *interp_error* is the estimated interpolation error of the intensity,
    None for uncovered trial factors.
    """
    __slots__ = ()

    @property
    def resolved(self):
        """False when the interpolation error could flip the verdict."""
        if self.verdict == UNCOVERED or self.interp_error is None:
            return True
        return (RESOLUTION_SAFETY * self.interp_error <
                abs(self.intensity - self.threshold))

    def to_dict(self):
        return {'ell': self.ell, 'lambda_target_nm': self.lam_target,
                'intensity': self.intensity, 'ceiling': self.ceiling,
                'threshold': self.threshold, 'residue': self.residue,
                'verdict': self.verdict,
                'interpolation_error': self.interp_error}

    @classmethod
    def from_dict(cls, N, info):
        return cls(N, info['ell'], info['lambda_target_nm'],
                   info['intensity'], info['ceiling'], info['threshold'],
                   info['residue'], info['verdict'],
                   info.get('interpolation_error'))


class FactorReport(object):
    """Trial factor checks of one integer N."""

    def __init__(self, N, covered, checks, coverage_warning=False):
        self.N = N
        self.covered = covered
        self.checks = list(checks)
        self.coverage_warning = coverage_warning

    @property
    def factors(self):
        """Trial factors found to divide N, ascending."""
        return sorted(check.ell for check in self.checks
                      if check.verdict == FACTOR)

    @property
    def unresolved(self):
        """Trial factors whose verdict the sampling cannot support."""
        return sorted(check.ell for check in self.checks
                      if not check.resolved)

    def to_dict(self):
        return {'N': self.N,
                'coverage': [self.covered.lo, self.covered.hi],
                'coverage_warning': self.coverage_warning,
                'factors': self.factors,
                'unresolved': self.unresolved,
                'checks': [check.to_dict() for check in self.checks]}

    @classmethod
    def from_dict(cls, info):
        N = info['N']
        return cls(N, TrialInterval(*info['coverage']),
                   [TrialCheck.from_dict(N, item) for item in info['checks']],
                   info.get('coverage_warning', False))

    def __repr__(self):
        return "<FactorReport N=%d l in [%d, %d], factors %s>" % (
            self.N, self.covered.lo, self.covered.hi, self.factors)


def _check_N(N):
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer, got %r" % (N, ))
    return int(N)


def coverage(x, band, N):
    """Trial factors testable by an interferogram of displacement *x*:
    [ceil(N lam_min / x), floor(N lam_max / x)] intersected with [2, N].

    Computed in exact rational arithmetic.
    """
    N = _check_N(N)
    x_exact = to_fraction(x)
    if x_exact <= 0:
        raise DomainError("Displacement must be positive, got %r" % (x, ))
    low = math.ceil(N * to_fraction(band.lam_min) / x_exact)
    high = math.floor(N * to_fraction(band.lam_max) / x_exact)
    return TrialInterval(max(low, 2), min(high, N))


def threshold(ceiling, rho=DEFAULT_RHO, tolerance=0.0):
    """Decision threshold between the ceiling of a trial factor and one."""
    if not 0 <= rho < 1:
        raise DomainError("rho must be in [0, 1), got %r" % (rho, ))
    if tolerance < 0:
        raise DomainError("tolerance must be >= 0, got %r" % (tolerance, ))
    return ceiling + rho * (1 - ceiling) - tolerance


def _lagrange3(x0, x1, x2, y0, y1, y2, pos):
    # the weights are exactly one and zero on the nodes
    w0 = ((pos - x1) * (pos - x2)) / ((x0 - x1) * (x0 - x2))
    w1 = ((pos - x0) * (pos - x2)) / ((x1 - x0) * (x1 - x2))
    w2 = ((pos - x0) * (pos - x1)) / ((x2 - x0) * (x2 - x1))
    return w0 * y0 + w1 * y1 + w2 * y2


def _nearest(interferogram, lam):
    lam_arr = np.asarray(lam, dtype=float)
    band = interferogram.setup.band
    if np.any(~((lam_arr >= band.lam_min) & (lam_arr <= band.lam_max))):
        raise DomainError("Wavelength outside the band [%g, %g]" %
                          (band.lam_min, band.lam_max))
    grid = interferogram.wavelengths
    right = np.clip(np.searchsorted(grid, lam_arr), 1, grid.size - 1)
    left = right - 1
    nearest = np.where(lam_arr - grid[left] <= grid[right] - lam_arr,
                       left, right)
    return lam_arr, nearest


def sample_at(interferogram, lam):
    """Intensity at wavelength *lam* interpolated with the quadratic
    through the nearest sample and its two neighbours.

    Exact at the sample wavelengths.  *lam* may be an array.
    """
    lam_arr, nearest = _nearest(interferogram, lam)
    grid = interferogram.wavelengths
    values = interferogram.intensities
    centre = np.clip(nearest, 1, grid.size - 2)
    result = _lagrange3(grid[centre - 1], grid[centre], grid[centre + 1],
                        values[centre - 1], values[centre],
                        values[centre + 1], lam_arr)
    if np.ndim(lam) == 0:
        return float(result)
    return result


def interpolation_error(interferogram, lam):
    """Estimated error of :func:`sample_at` at wavelength *lam*.

    The estimate is the distance to the quartic through the five samples
    around the nearest one.  On noisy data it also picks up the noise.
    Zero when the interferogram has fewer than five samples.
    """
    lam_arr, nearest = _nearest(interferogram, lam)
    grid = interferogram.wavelengths
    values = interferogram.intensities
    if grid.size < 5:
        error = np.zeros(lam_arr.shape)
    else:
        centre = np.clip(nearest, 2, grid.size - 3)
        offsets = range(-2, 3)
        quartic = np.zeros(lam_arr.shape)
        for offset in offsets:
            node = centre + offset
            weight = np.ones(lam_arr.shape)
            for other in offsets:
                if other != offset:
                    weight = (weight * (lam_arr - grid[centre + other]) /
                              (grid[node] - grid[centre + other]))
            quartic += weight * values[node]
        error = np.abs(sample_at(interferogram, lam_arr) - quartic)
    if np.ndim(lam) == 0:
        return float(error)
    return error


def _evaluate(interferogram, N, ells, covered, rho, tolerance):
    """Trial checks for the integers *ells* with the boolean mask
    *covered* telling which of them lie in the band.
    """
    setup = interferogram.setup
    band = setup.band
    ells = np.asarray(ells, dtype=np.int64)
    covered = np.asarray(covered, dtype=bool)
    lam_target = ells * setup.x / N
    intensity = np.full(ells.shape, np.nan)
    errors = np.full(ells.shape, np.nan)
    if covered.any():
        # float rounding can put a covered target a hair outside the band
        lam_in = np.clip(lam_target[covered], band.lam_min, band.lam_max)
        intensity[covered] = sample_at(interferogram, lam_in)
        errors[covered] = interpolation_error(interferogram, lam_in)
    ceilings = sumcore.nonfactor_ceilings(setup.cfg, ells)
    thresholds = threshold(ceilings, rho, tolerance)

    checks = []
    for idx, ell in enumerate(ells.tolist()):
        if covered[idx]:
            value = float(intensity[idx])
            verdict = FACTOR if value > thresholds[idx] else NON_FACTOR
            error = float(errors[idx])
        else:
            value = error = None
            verdict = UNCOVERED
        checks.append(TrialCheck(N, ell, float(lam_target[idx]), value,
                                 float(ceilings[idx]),
                                 float(thresholds[idx]), N % ell, verdict,
                                 error))
    return checks


def check_trial(interferogram, N, ell, rho=DEFAULT_RHO, tolerance=0.0):
    """Decide whether *ell* divides *N* from the interferogram."""
    N = _check_N(N)
    if int(ell) != ell or ell < 2:
        raise DomainError("Trial factor must be an integer >= 2, got %r" %
                          (ell, ))
    setup = interferogram.setup
    covered = int(ell) in coverage(setup.x, setup.band, N)
    return _evaluate(interferogram, N, [int(ell)], [covered], rho,
                     tolerance)[0]


def scan_trials(interferogram, N, ells, rho=DEFAULT_RHO, tolerance=0.0,
                slack=EDGE_SLACK):
    """Trial checks for the given *ells*, a trial factor counting as
    covered when its target wavelength is in the band up to the relative
    *slack*.
    """
    N = _check_N(N)
    setup = interferogram.setup
    band = setup.band
    ells = np.asarray(list(ells), dtype=np.int64)
    if ells.size and ells.min() < 2:
        raise DomainError("Trial factors must be >= 2")
    lam_target = ells * setup.x / N
    covered = ((lam_target >= band.lam_min * (1 - slack)) &
               (lam_target <= band.lam_max * (1 + slack)))
    return _evaluate(interferogram, N, ells, covered, rho, tolerance)


def factor_scan(interferogram, N, rho=DEFAULT_RHO, tolerance=0.0,
                include_two=False):
    """Check every trial factor covered by the interferogram.

    Trial factor 2 is skipped unless *include_two* is set.  An empty
    coverage is flagged in the report rather than raised.
    """
    N = _check_N(N)
    setup = interferogram.setup
    covered = coverage(setup.x, setup.band, N)
    first = covered.lo if include_two else max(covered.lo, 3)
    scanned = TrialInterval(first, covered.hi)
    if scanned.empty:
        LOGGER.warning("No trial factor of N=%d falls in the band %s with "
                       "x=%g nm", N, setup.band, setup.x)
        return FactorReport(N, covered, [], coverage_warning=True)
    ells = np.arange(scanned.lo, scanned.hi + 1, dtype=np.int64)
    checks = _evaluate(interferogram, N, ells, np.ones(ells.size, bool),
                       rho, tolerance)
    report = FactorReport(N, covered, checks)
    if report.unresolved:
        LOGGER.warning("N=%d: interpolation error between samples %g nm "
                       "apart can flip the verdicts of %s", N, setup.dl,
                       report.unresolved)
    LOGGER.debug("N=%d: %d trial factors checked, factors %s", N,
                 len(checks), report.factors)
    return report


def multi_scan(interferogram, Ns, rho=DEFAULT_RHO, tolerance=0.0,
               include_two=False, workers=None):
    """Factor scans of several integers on the same interferogram, in the
    order given.
    """
    def _scan(N):
        return factor_scan(interferogram, N, rho, tolerance, include_two)

    Ns = list(Ns)
    if workers and workers > 1 and len(Ns) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(_scan, Ns))
    return [_scan(N) for N in Ns]


def locate_maxima(interferogram, N):
    """Local maxima of the interferogram as (xi_N, intensity) pairs, with
    the positions refined by a parabola through the three samples around
    each maximum.
    """
    N = _check_N(N)
    lam = interferogram.wavelengths
    values = interferogram.intensities
    mid = np.nonzero((values[1:-1] > values[:-2]) &
                     (values[1:-1] > values[2:]))[0] + 1
    if not mid.size:
        return []
    x0, x1, x2 = lam[mid - 1], lam[mid], lam[mid + 1]
    y0, y1, y2 = values[mid - 1], values[mid], values[mid + 1]
    num = (x1 - x0) ** 2 * (y1 - y2) - (x1 - x2) ** 2 * (y1 - y0)
    den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0)
    vertex = x1 - 0.5 * num / den
    peak = _lagrange3(x0, x1, x2, y0, y1, y2, vertex)
    scale = N / interferogram.setup.x
    return [(float(pos * scale), float(val))
            for pos, val in zip(vertex, peak)]


def peak_half_width(interferogram, N, ell):
    """Half width at half maximum, in xi_N, of the peak at trial factor
    *ell*.
    """
    N = _check_N(N)
    setup = interferogram.setup
    lam_target = ell * setup.x / N
    if not setup.band.contains(lam_target):
        raise DomainError("Trial factor %d of N=%d is not in the band" %
                          (ell, N))
    lam = interferogram.wavelengths
    values = interferogram.intensities
    half = sample_at(interferogram, lam_target) / 2.0
    centre = int(np.argmin(np.abs(lam - lam_target)))
    if values[centre] < half:
        raise DomainError("No peak at l=%d of N=%d" % (ell, N))

    def _crossing(step):
        idx = centre
        while 0 <= idx + step < lam.size and values[idx] >= half:
            idx += step
        if values[idx] >= half:
            raise DomainError("Peak at l=%d is not resolved within the band"
                              % ell)
        inner = idx - step
        frac = (values[inner] - half) / (values[inner] - values[idx])
        return lam[inner] + frac * (lam[idx] - lam[inner])

    width = (_crossing(1) - _crossing(-1)) / 2.0
    return float(width * N / setup.x)


def robustness_trial(setup, N, expected, seeds, rho=DEFAULT_RHO,
                     tolerance=0.0):
    """Simulate *setup* once per seed and count the runs whose factor
    scan finds exactly the *expected* factors.
    """
    expected = sorted(expected)
    successes = 0
    seeds = list(seeds)
    for seed in seeds:
        report = factor_scan(simulate(setup.with_seed(seed)), N, rho,
                             tolerance)
        if report.factors == expected:
            successes += 1
        else:
            LOGGER.debug("Seed %d: found %s, expected %s", seed,
                         report.factors, expected)
    LOGGER.info("%d of %d noisy runs found the factors of N=%d", successes,
                len(seeds), N)
    return successes
