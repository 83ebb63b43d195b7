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

"""Simulate interferograms and factor integers from them.
./ctes_processor.py -c ctes_config.ini -C reference simulate -o ref.csv
./ctes_processor.py factor ref.csv --N 207911
"""

import sys

from ctesfactor.cli import main

if __name__ == '__main__':
    sys.exit(main())
