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

"""The tests package.
"""

import unittest

from ctesfactor.tests import (test_helper_functions,
                              test_sumcore,
                              test_oracle,
                              test_instrument,
                              test_analysis,
                              test_planner,
                              test_cli)


def suite():
    """The global test suite.
    """
    mysuite = unittest.TestSuite()
    mysuite.addTests(test_helper_functions.suite())
    mysuite.addTests(test_sumcore.suite())
    mysuite.addTests(test_oracle.suite())
    mysuite.addTests(test_instrument.suite())
    mysuite.addTests(test_analysis.suite())
    mysuite.addTests(test_planner.suite())
    mysuite.addTests(test_cli.suite())

    return mysuite
