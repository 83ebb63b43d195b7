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

"""Test the sum kernel.
"""

import math
import unittest

import numpy as np

from ctesfactor import sumcore
from ctesfactor.sumcore import (DomainError, SumConfig, ctes_intensity,
                                intensity_at_wavelength, nonfactor_ceiling,
                                rescaled_intensity, residue_intensity)

CTGS = SumConfig(3, 2)
EPS = 1e-12


class TestSumConfig(unittest.TestCase):

    def test_valid(self):
        """Test building configurations"""
        cfg = SumConfig(3, 2)
        self.assertEqual((cfg.M, cfg.j), (3, 2))
        self.assertEqual(cfg.name, 'CTGS')
        self.assertEqual(SumConfig(2, 1).name, 'CTFS')
        self.assertEqual(SumConfig(3, 3).name, 'CTKS')
        self.assertEqual(SumConfig(4, 5).name, 'CTES')
        self.assertEqual(SumConfig("3", 2.0), cfg)

    def test_invalid(self):
        """Test the domain of the configuration"""
        self.assertRaises(DomainError, SumConfig, 1, 1)
        self.assertRaises(DomainError, SumConfig, 3, 0)
        self.assertRaises(DomainError, SumConfig, 2.5, 1)

    def test_phase_orders(self):
        """Test the path orders"""
        self.assertEqual(sumcore.phase_orders(SumConfig(3, 2)), (0, 1, 4))
        self.assertEqual(sumcore.phase_orders(SumConfig(4, 3)),
                         (0, 1, 8, 27))


class TestIntensity(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(20170301)

    def test_examples(self):
        """Test known values of the intensity"""
        self.assertAlmostEqual(ctes_intensity(CTGS, 7), 1.0, delta=EPS)
        self.assertAlmostEqual(ctes_intensity(CTGS, 4.5), 1.0 / 9,
                               delta=EPS)
        self.assertAlmostEqual(ctes_intensity(SumConfig(2, 1), 3.5), 0.0,
                               delta=EPS)

    def test_bounds(self):
        """Test that the intensity stays in [0, 1]"""
        for M in (2, 3, 5):
            for j in (1, 2, 3):
                values = ctes_intensity(SumConfig(M, j),
                                        self.rng.uniform(-1e4, 1e4, 2000))
                self.assertTrue(np.all(values >= 0))
                self.assertTrue(np.all(values <= 1 + 4 * np.finfo(float).eps))

    def test_periodicity(self):
        """Test I(u + 1) == I(u)"""
        u = self.rng.uniform(-50, 50, 1000)
        for M, j in ((2, 1), (3, 2), (3, 3), (4, 2)):
            cfg = SumConfig(M, j)
            np.testing.assert_allclose(ctes_intensity(cfg, u + 1),
                                       ctes_intensity(cfg, u), rtol=0,
                                       atol=EPS)

    def test_integer_rule(self):
        """Test I(k) == 1 for integer k"""
        for k in (0, 1, -3, 461, 10 ** 6):
            self.assertAlmostEqual(ctes_intensity(CTGS, k), 1.0, delta=EPS)

    def test_two_paths(self):
        """Test that two paths give cos**2 for every order"""
        u = self.rng.uniform(0, 20, 500)
        expected = np.cos(np.pi * u) ** 2
        for j in (1, 2, 3):
            np.testing.assert_allclose(ctes_intensity(SumConfig(2, j), u),
                                       expected, rtol=0, atol=EPS)

    def test_scalar_and_array(self):
        """Test that scalar input gives a float"""
        self.assertIsInstance(ctes_intensity(CTGS, 0.3), float)
        values = ctes_intensity(CTGS, np.array([0.3, 0.7]))
        self.assertEqual(values.shape, (2, ))
        self.assertAlmostEqual(values[0], ctes_intensity(CTGS, 0.3),
                               delta=EPS)

    def test_not_finite(self):
        """Test that infinite arguments are refused"""
        self.assertRaises(DomainError, ctes_intensity, CTGS, float('inf'))
        self.assertRaises(DomainError, ctes_intensity, CTGS,
                          np.array([0.1, np.nan]))

    def test_weights(self):
        """Test that uniform weights are normalised away"""
        u = self.rng.uniform(0, 5, 100)
        plain = sumcore.field_amplitude(CTGS, u)
        weighted = sumcore.field_amplitude(CTGS, u, weights=[2, 2, 2])
        self.assertTrue(np.array_equal(plain, weighted))
        self.assertRaises(DomainError, sumcore.field_amplitude, CTGS, u,
                          weights=[1, 1])
        self.assertRaises(DomainError, sumcore.field_amplitude, CTGS, u,
                          weights=[0, 0, 0])
        self.assertRaises(DomainError, sumcore.field_amplitude, CTGS, u,
                          weights=[1, 0, 1])


class TestWavelength(unittest.TestCase):

    def test_factors_of_207911(self):
        """Test full peaks at the factor wavelengths"""
        self.assertAlmostEqual(intensity_at_wavelength(CTGS, 207911, 451),
                               1.0, delta=EPS)
        self.assertAlmostEqual(intensity_at_wavelength(CTGS, 207911, 461),
                               1.0, delta=EPS)

    def test_non_factor(self):
        """Test a non-factor wavelength against the closed form"""
        expected = math.cos(math.pi * 431 / 456) ** 2
        self.assertAlmostEqual(
            intensity_at_wavelength(SumConfig(2, 1), 207911, 456), expected,
            delta=1e-11)

    def test_domain(self):
        """Test the wavelength domain"""
        self.assertRaises(DomainError, intensity_at_wavelength, CTGS, 207911,
                          0)
        self.assertRaises(DomainError, intensity_at_wavelength, CTGS, 0, 450)
        self.assertRaises(DomainError, intensity_at_wavelength, CTGS, 207911,
                          np.array([450.0, -1.0]))


class TestRescaled(unittest.TestCase):

    def test_factor(self):
        """Test that a factor gives exactly one"""
        self.assertAlmostEqual(rescaled_intensity(CTGS, 207911, 451), 1.0,
                               delta=EPS)
        self.assertAlmostEqual(rescaled_intensity(CTGS, 1, 1), 1.0,
                               delta=EPS)

    def test_matches_wavelength(self):
        """Test xi = N lambda / x against the wavelength form"""
        self.assertAlmostEqual(rescaled_intensity(CTGS, 207911, 456),
                               intensity_at_wavelength(CTGS, 207911, 456),
                               delta=EPS)

    def test_scaling_law(self):
        """Test I(x / lambda) == I(N / xi_N) on random configurations"""
        rng = np.random.default_rng(5)
        for _ in range(10000):
            cfg = SumConfig(int(rng.integers(2, 5)), int(rng.integers(1, 4)))
            lam = rng.uniform(400, 800)
            x = lam * rng.uniform(0.5, 5.0)
            N = int(rng.integers(1, 10 ** 6 + 1))
            xi = N * lam / x
            self.assertAlmostEqual(intensity_at_wavelength(cfg, x, lam),
                                   rescaled_intensity(cfg, N, xi),
                                   delta=EPS)

    def test_domain(self):
        """Test the domain of the rescaled intensity"""
        self.assertRaises(DomainError, rescaled_intensity, CTGS, 0, 3)
        self.assertRaises(DomainError, rescaled_intensity, CTGS, 10, 0)
        self.assertRaises(DomainError, rescaled_intensity, CTGS, 10,
                          float('nan'))


class TestCeiling(unittest.TestCase):

    def test_examples(self):
        """Test known ceilings"""
        self.assertAlmostEqual(nonfactor_ceiling(SumConfig(2, 1), 5),
                               math.cos(math.pi / 5) ** 2, delta=EPS)
        self.assertAlmostEqual(nonfactor_ceiling(SumConfig(2, 1), 5),
                               0.6545084971874737, delta=EPS)
        self.assertAlmostEqual(nonfactor_ceiling(CTGS, 2), 1.0 / 9,
                               delta=EPS)
        self.assertAlmostEqual(nonfactor_ceiling(SumConfig(2, 1), 2), 0.0,
                               delta=EPS)

    def test_below_one(self):
        """Test that non-factors never reach a full peak"""
        for ell in (3, 17, 451, 1155):
            self.assertLess(nonfactor_ceiling(CTGS, ell), 1.0)

    def test_residues_below_ceiling(self):
        """Test I(r / l) <= ceiling(l) for every residue"""
        for ell in (7, 30, 461):
            ceiling = nonfactor_ceiling(CTGS, ell)
            values = residue_intensity(CTGS, np.arange(1, ell), ell)
            self.assertTrue(np.all(values <= ceiling + EPS))
            self.assertAlmostEqual(residue_intensity(CTGS, 0, ell), 1.0,
                                   delta=EPS)

    def test_worst_residue(self):
        """Test the maximising residue"""
        residue, value = sumcore.worst_residue(SumConfig(2, 1), 5)
        self.assertIn(residue, (1, 4))
        self.assertAlmostEqual(value, 0.6545084971874737, delta=EPS)

    def test_cached(self):
        """Test that ceilings are computed once"""
        cfg = SumConfig(3, 3)
        nonfactor_ceiling(cfg, 997)
        before = sumcore.worst_residue.cache_info().hits
        nonfactor_ceiling(cfg, 997)
        self.assertEqual(sumcore.worst_residue.cache_info().hits, before + 1)

    def test_domain(self):
        """Test the domain of the ceiling"""
        self.assertRaises(DomainError, nonfactor_ceiling, CTGS, 1)
        self.assertRaises(DomainError, nonfactor_ceiling, CTGS, 0)


def suite():
    """The suite for test_sumcore
    """
    loader = unittest.TestLoader()
    mysuite = unittest.TestSuite()
    mysuite.addTest(loader.loadTestsFromTestCase(TestSumConfig))
    mysuite.addTest(loader.loadTestsFromTestCase(TestIntensity))
    mysuite.addTest(loader.loadTestsFromTestCase(TestWavelength))
    mysuite.addTest(loader.loadTestsFromTestCase(TestRescaled))
    mysuite.addTest(loader.loadTestsFromTestCase(TestCeiling))

    return mysuite

if __name__ == "__main__":
    unittest.TextTestRunner(verbosity=2).run(suite())
