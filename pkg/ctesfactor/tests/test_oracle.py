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

"""Test the trial division oracle, and hold the sum kernel against it.
"""

import unittest

import numpy as np

from ctesfactor import oracle, sumcore
from ctesfactor.sumcore import DomainError, SumConfig


class TestTrialDivision(unittest.TestCase):

    def test_examples(self):
        """Test known factorisations"""
        self.assertEqual(oracle.trial_division(207911).prime_powers,
                         ((11, 1), (41, 1), (461, 1)))
        self.assertEqual(oracle.trial_division(1308567).prime_powers,
                         ((3, 1), (13, 2), (29, 1), (89, 1)))
        self.assertEqual(oracle.trial_division(1306349).prime_powers,
                         ((11, 1), (103, 1), (1153, 1)))
        self.assertEqual(oracle.trial_division(207912).prime_powers,
                         ((2, 3), (3, 1), (8663, 1)))

    def test_primes(self):
        """Test prime detection"""
        self.assertTrue(oracle.trial_division(999983).is_prime())
        self.assertTrue(oracle.is_prime(97))
        self.assertTrue(oracle.is_prime(2))
        self.assertFalse(oracle.is_prime(1))
        self.assertFalse(oracle.is_prime(8633))

    def test_product(self):
        """Test that the prime powers multiply back to N"""
        for N in (2, 12, 97, 1024, 8633, 207911, 999983, 2 ** 40 + 1):
            self.assertEqual(oracle.trial_division(N).value, N)

    def test_domain(self):
        """Test the domain of the factorisation"""
        self.assertRaises(DomainError, oracle.trial_division, 1)
        self.assertRaises(DomainError, oracle.trial_division, -7)
        self.assertRaises(OverflowError, oracle.trial_division, 2 ** 64)


class TestDivisors(unittest.TestCase):

    def test_divisors_in(self):
        """Test divisors in a window"""
        self.assertEqual(oracle.divisors_in(207911, 450, 462), [451, 461])
        self.assertEqual(oracle.divisors_in(1306349, 1151, 1158), [1153])
        self.assertEqual(oracle.divisors_in(1308567, 1151, 1158), [1157])
        self.assertEqual(oracle.divisors_in(207912, 451, 461), [])
        self.assertEqual(oracle.divisors_in(8633, 3, 8633), [89, 97, 8633])
        self.assertEqual(oracle.divisors_in(10, 5, 4), [])

    def test_against_factorisation(self):
        """Test divisors_in against the full divisor list"""
        for N in (360, 1001, 207911, 1308567):
            divs = oracle.trial_division(N).divisors()
            self.assertEqual(oracle.divisors_in(N, 2, N),
                             [div for div in divs if div >= 2])


class TestCeilingOracle(unittest.TestCase):

    def test_examples(self):
        """Test the brute force ceilings"""
        residue, value = oracle.residue_max_intensity(SumConfig(2, 1), 5)
        self.assertIn(residue, (1, 4))
        self.assertAlmostEqual(value, 0.6545084971874737, delta=1e-12)
        residue, value = oracle.residue_max_intensity(SumConfig(3, 2), 2)
        self.assertEqual(residue, 1)
        self.assertAlmostEqual(value, 1.0 / 9, delta=1e-12)

    def test_against_kernel(self):
        """Test the kernel ceilings against the pairwise cosine form"""
        rng = np.random.default_rng(8)
        for _ in range(100):
            cfg = SumConfig(int(rng.integers(2, 6)), int(rng.integers(1, 4)))
            ell = int(rng.integers(2, 10001))
            _, expected = oracle.residue_max_intensity(cfg, ell)
            self.assertAlmostEqual(sumcore.nonfactor_ceiling(cfg, ell),
                                   expected, delta=1e-12)

    def test_exhaustive(self):
        """Test every trial factor up to 2000 for the common sums"""
        for M in (2, 3):
            for j in (1, 2, 3):
                cfg = SumConfig(M, j)
                ells = range(2, 2001)
                expected = [oracle.residue_max_intensity(cfg, ell)[1]
                            for ell in ells]
                np.testing.assert_allclose(
                    sumcore.nonfactor_ceilings(cfg, ells), expected,
                    rtol=0, atol=1e-12)


def suite():
    """The suite for test_oracle
    """
    loader = unittest.TestLoader()
    mysuite = unittest.TestSuite()
    mysuite.addTest(loader.loadTestsFromTestCase(TestTrialDivision))
    mysuite.addTest(loader.loadTestsFromTestCase(TestDivisors))
    mysuite.addTest(loader.loadTestsFromTestCase(TestCeilingOracle))

    return mysuite

if __name__ == "__main__":
    unittest.TextTestRunner(verbosity=2).run(suite())
