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

"""The virtual instrument: a multi-path interferometer whose output is
recorded by a spectrometer over a wavelength band.

Path *m* of the interferometer is displaced by (m - 1)**j * x, so the
spectrum seen at wavelength lambda is the sum intensity at u = x / lambda.
Lengths are in nanometres throughout.

Interferograms are stored as plain text: two ``#`` header lines holding the
set-up as JSON, a column header and one ``lambda_nm,intensity`` row per
sample.
"""

import json
import logging
from collections import namedtuple

import numpy as np

from ctesfactor import sumcore
from ctesfactor.sumcore import DomainError, SumConfig

LOGGER = logging.getLogger(__name__)

# Samples evaluated at once in the simulation
BLOCK_SIZE = 2 ** 20

MIN_SAMPLES_PER_FRINGE = 8
INTENSITY_CLAMP = (0.0, 1.2)

FILE_MAGIC = "# ctesfactor interferogram"
COLUMNS = "lambda_nm,intensity"

HARDWARE_SIGMA = 0.01
HARDWARE_DL_CAL = 0.006
HARDWARE_DX_CAL = 10.0


class ConfigurationError(ValueError):
    """The instrument set-up is not valid."""
    pass


class ValidationError(ValueError):
    """Interferogram data break an invariant."""
    pass


class ParseError(IOError):
    """Malformed interferogram file."""

    def __init__(self, message, lineno=None, fname=None):
        self.lineno = lineno
        self.fname = fname
        if lineno is not None:
            message = "%s, line %d: %s" % (fname or "<stream>", lineno,
                                           message)
        super(ParseError, self).__init__(message)


class Band(namedtuple('Band', ['lam_min', 'lam_max'])):
    """Spectrometer wavelength window [lam_min, lam_max] in nm."""
    __slots__ = ()

    def __new__(cls, lam_min, lam_max):
        lam_min, lam_max = float(lam_min), float(lam_max)
        if not (np.isfinite(lam_min) and np.isfinite(lam_max)):
            raise ConfigurationError("Band limits must be finite")
        if not 0 < lam_min < lam_max:
            raise ConfigurationError("Band needs 0 < lam_min < lam_max, got "
                                     "[%g, %g]" % (lam_min, lam_max))
        return super(Band, cls).__new__(cls, lam_min, lam_max)

    @property
    def ratio(self):
        """Band ratio c = lam_max / lam_min."""
        return self.lam_max / self.lam_min

    @property
    def span(self):
        return self.lam_max - self.lam_min

    def contains(self, lam):
        return self.lam_min <= lam <= self.lam_max

    def __str__(self):
        return "%r:%r" % (self.lam_min, self.lam_max)


class NoiseSpec(namedtuple('NoiseSpec', ['sigma', 'dl_cal', 'dx_cal', 'amp',
                                         'seed'])):
    """Noise of the instrument.

    sigma:  gaussian intensity noise, standard deviation
    dl_cal: spectrometer calibration error bound per pixel (nm)
    dx_cal: path displacement error bound per path (nm)
    amp:    relative path amplitudes, None for balanced paths
    seed:   seed of the random generator
    """
    __slots__ = ()

    def __new__(cls, sigma=0.0, dl_cal=0.0, dx_cal=0.0, amp=None, seed=0):
        sigma, dl_cal, dx_cal = float(sigma), float(dl_cal), float(dx_cal)
        for name, value in (('sigma', sigma), ('dl_cal', dl_cal),
                            ('dx_cal', dx_cal)):
            if not np.isfinite(value) or value < 0:
                raise ConfigurationError("Noise level %s must be >= 0, got %r"
                                         % (name, value))
        if amp is not None:
            amp = tuple(float(val) for val in amp)
            if not all(np.isfinite(val) and val > 0 for val in amp):
                raise ConfigurationError("Path amplitudes must be finite and "
                                         "> 0, got %r" % (amp, ))
        return super(NoiseSpec, cls).__new__(cls, sigma, dl_cal, dx_cal, amp,
                                             int(seed))

    @classmethod
    def off(cls, seed=0):
        return cls(seed=seed)

    @classmethod
    def hardware_default(cls, seed=0):
        """Noise levels of the reference hardware."""
        return cls(HARDWARE_SIGMA, HARDWARE_DL_CAL, HARDWARE_DX_CAL, None,
                   seed)

    def with_seed(self, seed):
        return NoiseSpec(self.sigma, self.dl_cal, self.dx_cal, self.amp, seed)

    @property
    def is_off(self):
        balanced = self.amp is None or len(set(self.amp)) == 1
        return (self.sigma == 0 and self.dl_cal == 0 and self.dx_cal == 0 and
                balanced)

    def to_dict(self):
        return {'sigma': self.sigma, 'dl_cal': self.dl_cal,
                'dx_cal': self.dx_cal,
                'amp': list(self.amp) if self.amp is not None else None,
                'seed': self.seed}

    @classmethod
    def from_dict(cls, info):
        return cls(info.get('sigma', 0.0), info.get('dl_cal', 0.0),
                   info.get('dx_cal', 0.0), info.get('amp'),
                   info.get('seed', 0))


def _fringe_period(cfg, x, lam):
    return lam ** 2 / ((cfg.M - 1) ** cfg.j * x)


class SetupSpec(namedtuple('SetupSpec', ['cfg', 'x', 'band', 'dl',
                                         'noise'])):
    """Complete description of one measurement.

    The sampling step *dl* must resolve the fastest fringe in the band with
    at least eight samples per period.
    """
    __slots__ = ()

    def __new__(cls, cfg, x, band, dl, noise=None):
        if not isinstance(cfg, SumConfig):
            cfg = SumConfig(*cfg)
        if not isinstance(band, Band):
            band = Band(*band)
        if noise is None:
            noise = NoiseSpec.off()
        x, dl = float(x), float(dl)
        if not np.isfinite(x) or x <= 0:
            raise ConfigurationError("Displacement x must be positive, got %r"
                                     % x)
        if not np.isfinite(dl) or dl <= 0:
            raise ConfigurationError("Sampling step must be positive, got %r"
                                     % dl)
        bound = _fringe_period(cfg, x, band.lam_min) / MIN_SAMPLES_PER_FRINGE
        if dl > bound:
            raise ConfigurationError(
                "Sampling step %g nm is too coarse: need dl <= %.6g nm for %d "
                "samples per fringe at %g nm" %
                (dl, bound, MIN_SAMPLES_PER_FRINGE, band.lam_min))
        if noise.amp is not None and len(noise.amp) != cfg.M:
            raise ConfigurationError("Got %d path amplitudes for %d paths" %
                                     (len(noise.amp), cfg.M))
        return super(SetupSpec, cls).__new__(cls, cfg, x, band, dl, noise)

    def with_seed(self, seed):
        return SetupSpec(self.cfg, self.x, self.band, self.dl,
                         self.noise.with_seed(seed))

    def to_dict(self):
        return {'M': self.cfg.M, 'j': self.cfg.j, 'x_nm': self.x,
                'band_nm': [self.band.lam_min, self.band.lam_max],
                'dl_nm': self.dl, 'noise': self.noise.to_dict()}

    @classmethod
    def from_dict(cls, info):
        return cls(SumConfig(info['M'], info['j']), info['x_nm'],
                   Band(*info['band_nm']), info['dl_nm'],
                   NoiseSpec.from_dict(info.get('noise', {})))


def path_offsets(setup):
    """Displacement of each path, (m - 1)**j * x for m = 1..M."""
    return [order * setup.x for order in sumcore.phase_orders(setup.cfg)]


def fringe_period(setup, lam):
    """Wavelength period of the fastest fringe at *lam*."""
    if not setup.band.contains(lam):
        raise DomainError("%g nm is outside the band [%g, %g]" %
                          (lam, setup.band.lam_min, setup.band.lam_max))
    return _fringe_period(setup.cfg, setup.x, lam)


def samples_per_fringe(setup):
    """Samples per fastest fringe at the short end of the band."""
    return fringe_period(setup, setup.band.lam_min) / setup.dl


def wavelength_grid(band, dl):
    """Sampling wavelengths lam_min + k dl, with the last one pinned to
    lam_max.  The step count is span / dl rounded.  Bands narrower than
    two steps get three evenly spaced samples.
    """
    steps = int(round(band.span / dl))
    if steps < 2:
        return np.linspace(band.lam_min, band.lam_max, 3)
    grid = band.lam_min + dl * np.arange(steps + 1, dtype=float)
    grid[-1] = band.lam_max
    if np.any(np.diff(grid) <= 0):
        raise ConfigurationError("Sampling step %g nm does not fit the band"
                                 % dl)
    return grid


class Interferogram(object):
    """Sampled spectrum of one set-up.

    The wavelengths increase strictly and span the band of the set-up.
    """

    def __init__(self, setup, wavelengths, intensities):
        self.setup = setup
        wavelengths = np.array(wavelengths, dtype=float)
        intensities = np.array(intensities, dtype=float)
        self._validate(wavelengths, intensities)
        wavelengths.flags.writeable = False
        intensities.flags.writeable = False
        self.wavelengths = wavelengths
        self.intensities = intensities

    def _validate(self, wavelengths, intensities):
        if wavelengths.ndim != 1 or wavelengths.shape != intensities.shape:
            raise ValidationError("Wavelengths and intensities must be 1-d "
                                  "and of equal length")
        if wavelengths.size < 3:
            raise ValidationError("At least three samples are needed, got %d"
                                  % wavelengths.size)
        if not (np.all(np.isfinite(wavelengths)) and
                np.all(np.isfinite(intensities))):
            raise ValidationError("Samples must be finite")
        steps = np.diff(wavelengths)
        if np.any(steps <= 0):
            bad = int(np.argmax(steps <= 0))
            raise ValidationError("Wavelengths must increase strictly, "
                                  "sample %d is at %r after %r" %
                                  (bad + 1, wavelengths[bad + 1],
                                   wavelengths[bad]))
        band = self.setup.band
        if not (np.isclose(wavelengths[0], band.lam_min, rtol=1e-12) and
                np.isclose(wavelengths[-1], band.lam_max, rtol=1e-12)):
            raise ValidationError("Samples span [%r, %r], expected the band "
                                  "[%r, %r]" % (wavelengths[0],
                                                wavelengths[-1],
                                                band.lam_min, band.lam_max))

    def __len__(self):
        return self.wavelengths.size

    @property
    def samples(self):
        """(lambda, intensity) pairs."""
        return list(zip(self.wavelengths.tolist(), self.intensities.tolist()))

    def xi(self, N):
        """Rescaled abscissa xi_N = N lambda / x of every sample."""
        return N * self.wavelengths / self.setup.x

    def __eq__(self, other):
        if not isinstance(other, Interferogram):
            return NotImplemented
        return (self.setup == other.setup and
                np.array_equal(self.wavelengths, other.wavelengths) and
                np.array_equal(self.intensities, other.intensities))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return "<Interferogram %s x=%g nm, %d samples in [%g, %g] nm>" % (
            self.setup.cfg, self.setup.x, len(self), self.setup.band.lam_min,
            self.setup.band.lam_max)


def simulate(setup):
    """Simulate the interferogram of *setup*.

    The random draws are taken in a fixed order from a generator seeded
    with ``setup.noise.seed``: one path error per path, then one
    calibration error per pixel, then the intensity noise.  The recorded
    wavelengths are the nominal grid, the light actually reaching pixel k
    has wavelength lambda_k - eta_k.
    """
    noise = setup.noise
    cfg = setup.cfg
    rng = np.random.default_rng(noise.seed)
    grid = wavelength_grid(setup.band, setup.dl)
    path_errors = rng.uniform(-noise.dx_cal, noise.dx_cal, size=cfg.M)
    cal_errors = rng.uniform(-noise.dl_cal, noise.dl_cal, size=grid.size)
    shot_noise = rng.normal(0.0, noise.sigma, size=grid.size)

    if noise.dl_cal:
        true_lam = grid - cal_errors
    else:
        true_lam = grid
    weights = noise.amp if noise.amp is not None else np.ones(cfg.M)

    LOGGER.debug("Simulating %s, x=%g nm, %d samples", cfg, setup.x,
                 grid.size)
    intensities = np.empty_like(grid)
    for start in range(0, grid.size, BLOCK_SIZE):
        stop = min(start + BLOCK_SIZE, grid.size)
        lam = true_lam[start:stop]
        offsets = None
        if noise.dx_cal:
            offsets = np.multiply.outer(path_errors, 1.0 / lam)
        field = sumcore.field_amplitude(cfg, setup.x / lam, offsets=offsets,
                                        weights=weights)
        intensities[start:stop] = field.real ** 2 + field.imag ** 2

    if noise.sigma:
        intensities += shot_noise
    np.clip(intensities, INTENSITY_CLAMP[0], INTENSITY_CLAMP[1],
            out=intensities)
    return Interferogram(setup, grid, intensities)


def write_interferogram(interferogram, fname):
    """Write *interferogram* to *fname* losslessly."""
    meta = json.dumps(interferogram.setup.to_dict(), sort_keys=True)
    with open(fname, 'w', encoding="utf-8") as fid:
        fid.write(FILE_MAGIC + "\n")
        fid.write("# " + meta + "\n")
        fid.write(COLUMNS + "\n")
        for lam, intensity in interferogram.samples:
            fid.write("%r,%r\n" % (lam, intensity))
    LOGGER.info("Wrote %d samples to %s", len(interferogram), fname)


def read_interferogram(fname):
    """Read an interferogram written by :func:`write_interferogram`.

    Raises ParseError on malformed content and ValidationError when the
    data break an interferogram invariant.
    """
    try:
        with open(fname, encoding="utf-8") as fid:
            lines = fid.read().splitlines()
    except UnicodeDecodeError as err:
        raise ParseError("not a text file: %s" % err, fname=fname)

    if not lines or lines[0].strip() != FILE_MAGIC:
        raise ParseError("missing metadata header", 1, fname)
    if len(lines) < 2 or not lines[1].startswith("#"):
        raise ParseError("missing set-up metadata", 2, fname)
    try:
        meta = json.loads(lines[1][1:])
    except ValueError as err:
        raise ParseError("bad set-up metadata: %s" % err, 2, fname)
    if len(lines) < 3 or lines[2].strip() != COLUMNS:
        raise ParseError("expected column header %r" % COLUMNS, 3, fname)

    try:
        setup = SetupSpec.from_dict(meta)
    except KeyError as err:
        raise ParseError("set-up metadata lacks %s" % err, 2, fname)
    except (ValueError, TypeError) as err:
        raise ValidationError("%s: invalid set-up: %s" % (fname, err))

    wavelengths = []
    intensities = []
    for lineno, line in enumerate(lines[3:], 4):
        if not line.strip():
            continue
        fields = line.split(',')
        if len(fields) != 2:
            raise ParseError("expected 2 columns, got %d" % len(fields),
                             lineno, fname)
        try:
            wavelengths.append(float(fields[0]))
            intensities.append(float(fields[1]))
        except ValueError:
            raise ParseError("not a number in %r" % line, lineno, fname)

    LOGGER.debug("Read %d samples from %s", len(wavelengths), fname)
    return Interferogram(setup, wavelengths, intensities)
