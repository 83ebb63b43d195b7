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

"""Ground truth for the optical factoring: trial division and a brute force
evaluation of the non-factor ceilings.

Nothing in here uses the sum kernel, so the results can be held against
it in the tests.
"""

import logging
from collections import namedtuple
from math import isqrt

import numpy as np

from ctesfactor.sumcore import DomainError

LOGGER = logging.getLogger(__name__)

INT64_MAX = 2 ** 63 - 1


def _checked_mul(first, second):
    product = first * second
    if product > INT64_MAX:
        raise OverflowError("%d * %d does not fit in 64 bits" %
                            (first, second))
    return product


class Factorization(namedtuple('Factorization', ['N', 'prime_powers'])):
    """Prime factorisation of *N* as ((p1, e1), (p2, e2), ...) with
    increasing primes.
    """
    __slots__ = ()

    @property
    def value(self):
        """Product of the prime powers."""
        result = 1
        for prime, exponent in self.prime_powers:
            for _ in range(exponent):
                result = _checked_mul(result, prime)
        return result

    def is_prime(self):
        return self.prime_powers == ((self.N, 1), )

    def divisors(self):
        """All divisors of N in increasing order."""
        divs = [1]
        for prime, exponent in self.prime_powers:
            divs = [div * prime ** power
                    for div in divs for power in range(exponent + 1)]
        return sorted(divs)

    def __str__(self):
        return " * ".join("%d^%d" % (prime, exponent) if exponent > 1
                          else str(prime)
                          for prime, exponent in self.prime_powers)


def _reduce(n, i):
    count = 0
    while n % i == 0:
        count += 1
        n //= i
    return n, count


def trial_division(N):
    """Factorise *N* >= 2 by trial division on a 6k +- 1 wheel."""
    N = int(N)
    if N < 2:
        raise DomainError("Can only factorise integers >= 2, got %d" % N)
    if N > INT64_MAX:
        raise OverflowError("%d does not fit in 64 bits" % N)
    powers = []
    rest = N
    for small in (2, 3):
        rest, count = _reduce(rest, small)
        if count:
            powers.append((small, count))
    i = 5
    while i * i <= rest:
        for cand in (i, i + 2):
            rest, count = _reduce(rest, cand)
            if count:
                powers.append((cand, count))
        i += 6
    if rest > 1:
        powers.append((rest, 1))
    result = Factorization(N, tuple(powers))
    LOGGER.debug("%d = %s", N, result)
    return result


def is_prime(N):
    """Primality by trial division, False for N < 2."""
    if N < 2:
        return False
    return trial_division(N).is_prime()


def divisors_in(N, lo, hi):
    """Divisors of *N* in [lo, hi], ascending."""
    N = int(N)
    if N < 1:
        raise DomainError("N must be positive, got %d" % N)
    if lo > hi:
        return []
    found = set()
    for small in range(1, isqrt(N) + 1):
        if N % small == 0:
            for div in (small, N // small):
                if lo <= div <= hi:
                    found.add(div)
    return sorted(found)


def residue_max_intensity(cfg, ell):
    """Brute force non-factor ceiling for trial factor *ell*.

    Uses the pairwise cosine form
    I(r/l) = 1/M**2 sum_{m,m'} cos(2 pi (p_m - p_m') r / l) with the phase
    differences reduced in integers.  Returns (r, intensity) for the first
    maximising residue.
    """
    ell = int(ell)
    if ell < 2:
        raise DomainError("Trial factor must be at least 2, got %d" % ell)
    orders = [(m - 1) ** cfg.j for m in range(1, cfg.M + 1)]
    diffs = np.array([(first - second) % ell
                      for first in orders for second in orders],
                     dtype=np.int64)
    residues = np.arange(1, ell, dtype=np.int64)
    angles = 2 * np.pi * ((np.multiply.outer(diffs, residues) % ell) / ell)
    values = np.cos(angles).sum(axis=0) / cfg.M ** 2
    idx = int(np.argmax(values))
    return int(residues[idx]), float(values[idx])
