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

"""Setup for ctesfactor.
"""
from runpy import run_path

from setuptools import setup

version = run_path('ctesfactor/version.py')['__version__']

setup(name="ctesfactor",
      version=version,
      description='Simulation and analysis of optical factoring with '
      'continuous truncated exponential sums',
      author='ctesfactor developers',
      classifiers=["Development Status :: 3 - Alpha",
                   "Intended Audience :: Science/Research",
                   "License :: OSI Approved :: GNU General Public License v3 " +
                   "or later (GPLv3+)",
                   "Operating System :: OS Independent",
                   "Programming Language :: Python",
                   "Programming Language :: Python :: 3",
                   "Topic :: Scientific/Engineering :: Physics"],
      packages=['ctesfactor', 'ctesfactor.tests'],
      scripts=['bin/ctes_processor.py', ],
      data_files=[('etc', ['etc/ctes_config.ini_template'])],
      zip_safe=False,
      python_requires='>=3.8',
      install_requires=['numpy>=1.17', 'matplotlib>=3.1', 'trollsift'],
      tests_require=['mock'],
      test_suite='ctesfactor.tests.suite',
      )
