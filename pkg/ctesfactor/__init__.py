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

"""ctesfactor package - simulation and analysis of optical factoring with
continuous truncated exponential sums.

The modules are layered bottom-up:

 - :mod:`ctesfactor.sumcore`: the exact sum and the non-factor ceilings
 - :mod:`ctesfactor.instrument`: the virtual interferometer and spectrometer
 - :mod:`ctesfactor.analysis`: rescaling and trial factor classification
 - :mod:`ctesfactor.planner`: interferogram sequences for ranges of integers
 - :mod:`ctesfactor.oracle`: trial division ground truth
 - :mod:`ctesfactor.cli`: the command line surface
"""

from ctesfactor.version import __version__
