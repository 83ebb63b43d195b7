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

"""Continuous truncated exponential sums.

The normalised sum over *M* paths of order *j* is

    S(u) = 1/M * sum_{m=1..M} exp(2 pi i (m - 1)**j u)

and its intensity I(u) = |S(u)|**2 is 1-periodic in u.  All phases are
reduced modulo one turn *before* being multiplied by the path orders, so
the intensity stays accurate for large arguments.  When the argument is
a rational N/l the phases are computed in integer arithmetic instead.
"""

import logging
from collections import namedtuple
from functools import lru_cache
import numbers

import numpy as np

LOGGER = logging.getLogger(__name__)

CONFIG_NAMES = {1: 'CTFS', 2: 'CTGS', 3: 'CTKS'}


class DomainError(ValueError):
    """An argument is outside the domain of the operation."""
    pass


class SumConfig(namedtuple('SumConfig', ['M', 'j'])):
    """Number of interfering paths *M* (>= 2) and truncation order *j*
    (>= 1) of the sum.
    """
    __slots__ = ()

    def __new__(cls, M, j):
        M = _as_int(M, 'M')
        j = _as_int(j, 'j')
        if M < 2:
            raise DomainError("At least two paths are needed, got M=%d" % M)
        if j < 1:
            raise DomainError("The order must be at least 1, got j=%d" % j)
        return super(SumConfig, cls).__new__(cls, M, j)

    @property
    def name(self):
        """Conventional name of the sum, eg. CTGS for j=2."""
        return CONFIG_NAMES.get(self.j, 'CTES')

    def __str__(self):
        return "%s(M=%d, j=%d)" % (self.name, self.M, self.j)


def _as_int(value, name):
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    try:
        return int(str(value))
    except ValueError:
        raise DomainError("%s must be an integer, got %r" % (name, value))


def phase_orders(cfg):
    """Integer path orders (m - 1)**j for m = 1..M."""
    return tuple((m - 1) ** cfg.j for m in range(1, cfg.M + 1))


def _weights(cfg, weights):
    if weights is None:
        weights = np.ones(cfg.M)
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (cfg.M, ):
            raise DomainError("Expected %d path amplitudes, got %s" %
                              (cfg.M, weights.shape))
        if np.any(~(weights > 0)) or not np.all(np.isfinite(weights)):
            raise DomainError("Path amplitudes must be finite and > 0")
    return weights / weights.sum()


def _sum_turns(weights, turns):
    """Weighted sum of unit phasors, *turns* has the paths on axis 0."""
    phasors = np.exp(2j * np.pi * turns)
    return (weights.reshape((-1, ) + (1, ) * (turns.ndim - 1)) *
            phasors).sum(axis=0)


def field_amplitude(cfg, u, offsets=None, weights=None):
    """Complex sum S(u) for scalar or array *u*.

    *offsets* are extra per path phases in turns, either of shape (M,) or
    broadcastable to (M,) + u.shape.  *weights* are relative path
    amplitudes, normalised to sum to one.
    """
    u_arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u_arr)):
        raise DomainError("Sum argument must be finite")
    frac = u_arr - np.floor(u_arr)
    orders = np.array(phase_orders(cfg), dtype=float)
    turns = np.multiply.outer(orders, frac)
    turns -= np.floor(turns)
    if offsets is not None:
        offsets = np.asarray(offsets, dtype=float)
        if offsets.ndim == 1:
            offsets = offsets.reshape((-1, ) + (1, ) * frac.ndim)
        turns = turns + offsets
    field = _sum_turns(_weights(cfg, weights), turns)
    if np.ndim(u) == 0:
        return complex(field)
    return field


def ctes_intensity(cfg, u):
    """Intensity I(u) = |S(u)|**2 in [0, 1]."""
    field = field_amplitude(cfg, u)
    return field.real ** 2 + field.imag ** 2


def intensity_at_wavelength(cfg, x, lam):
    """Intensity of a path displacement *x* seen at wavelength *lam*.

    Both lengths are in the same unit (nm).
    """
    if not np.isfinite(x) or x <= 0:
        raise DomainError("Displacement must be positive, got %r" % (x, ))
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(~np.isfinite(lam_arr)) or np.any(lam_arr <= 0):
        raise DomainError("Wavelength must be positive")
    return ctes_intensity(cfg, x / lam_arr if lam_arr.ndim else x / float(lam))


def residue_intensity(cfg, r, ell):
    """Intensity at u = r / ell with the phases in exact integer arithmetic.

    *r* may be an integer array.
    """
    ell = _as_int(ell, 'ell')
    if ell < 1:
        raise DomainError("Trial factor must be positive, got %d" % ell)
    res = np.asarray(r, dtype=np.int64) % ell
    orders = np.array([order % ell for order in phase_orders(cfg)],
                      dtype=np.int64)
    turns = (np.multiply.outer(orders, res) % ell) / float(ell)
    field = _sum_turns(_weights(cfg, None), turns)
    intensity = field.real ** 2 + field.imag ** 2
    if np.ndim(r) == 0:
        return float(intensity)
    return intensity


def _is_integral(value):
    if isinstance(value, numbers.Integral):
        return True
    return isinstance(value, float) and value.is_integer()


def rescaled_intensity(cfg, N, xi):
    """Intensity of the rescaled interferogram I(N / xi) of the integer *N*.

    Integral *xi* use the exact residue N mod xi.
    """
    N = _as_int(N, 'N')
    if N < 1:
        raise DomainError("N must be positive, got %d" % N)
    if not np.isfinite(xi) or xi <= 0:
        raise DomainError("Rescaled variable must be positive, got %r" %
                          (xi, ))
    if _is_integral(xi):
        ell = int(xi)
        return residue_intensity(cfg, N % ell, ell)
    return ctes_intensity(cfg, N / float(xi))


@lru_cache(maxsize=None)
def worst_residue(cfg, ell):
    """Non-zero residue r with the largest intensity at r / ell, and that
    intensity.  Ties resolve to the smallest r.
    """
    ell = _as_int(ell, 'ell')
    if ell < 2:
        raise DomainError("Trial factor must be at least 2, got %d" % ell)
    values = residue_intensity(cfg, np.arange(1, ell, dtype=np.int64), ell)
    idx = int(np.argmax(values))
    return idx + 1, float(values[idx])


def nonfactor_ceiling(cfg, ell):
    """Largest intensity a non-factor *ell* can produce, that is the
    maximum of I(r / ell) over r = 1..ell-1.
    """
    return worst_residue(cfg, ell)[1]


def nonfactor_ceilings(cfg, ells):
    """Ceilings for a sequence of trial factors, as an array."""
    return np.array([worst_residue(cfg, int(ell))[1] for ell in ells],
                    dtype=float)
