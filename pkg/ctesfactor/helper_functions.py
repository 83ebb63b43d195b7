# -*- coding: utf-8 -*-
#
# Copyright (c) 2016, 2017
#
# Author(s):
#
#   ctesfactor developers
#
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

'''Helper functions for ctesfactor
'''

import os
import logging
from configparser import ConfigParser, MissingSectionHeaderError
from fractions import Fraction
import numbers

from trollsift import compose

LOGGER = logging.getLogger(__name__)


def read_config_file(fname, config_item=None):
    '''Read config file to dictionary.

    Files with sections are read from *config_item* (the DEFAULT section
    when None).  Flat ``key = value`` files without any section header are
    read as if they were the DEFAULT section.
    '''

    if not os.path.exists(fname):
        raise IOError("Config file %s does not exist" % fname)

    endswith = os.path.splitext(fname)[1]
    if endswith not in ['.ini', '.cfg', '.conf', '.ini_template']:
        raise NotImplementedError("Can only parse .ini style config files "
                                  "for now")

    config = ConfigParser(interpolation=None)
    config.optionxform = str
    try:
        config.read(fname)
    except MissingSectionHeaderError:
        LOGGER.debug("No section header in %s, reading it flat", fname)
        with open(fname) as fid:
            config.read_string("[DEFAULT]\n" + fid.read(), source=fname)

    if config_item is None or config_item == config.default_section:
        conf_dict = dict(config.defaults())
    else:
        if not config.has_section(config_item):
            raise KeyError("No section %s in config file %s" %
                           (config_item, fname))
        conf_dict = dict(config.items(config_item))
    conf_dict["config_file"] = fname
    conf_dict["config_item"] = config_item
    return conf_dict


def to_fraction(value):
    '''Exact rational value of *value* as it is written.

    Floats go through their shortest decimal representation so that
    ``400.1`` means 4001/10 and not the nearest binary float.
    '''
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    return Fraction(repr(float(value)))


def parse_band(text):
    '''Parse a wavelength band given as ``"lmin:lmax"`` in nanometres.
    '''
    parts = str(text).replace(',', ':').split(':')
    if len(parts) != 2:
        raise ValueError("Band must be given as lmin:lmax, got %r" % text)
    return float(parts[0]), float(parts[1])


def parse_range(text):
    '''Parse an integer range ``"lo:hi"`` or a single integer ``"n"``.
    '''
    parts = str(text).split(':')
    if len(parts) == 1:
        value = int(parts[0])
        return value, value
    if len(parts) == 2:
        low, high = int(parts[0]), int(parts[1])
        if low > high:
            raise ValueError("Empty range %s" % text)
        return low, high
    raise ValueError("Range must be given as lo:hi, got %r" % text)


def parse_amplitudes(text):
    '''Parse comma separated path amplitudes, eg. ``"1,1,0.9"``.
    '''
    if text is None:
        return None
    if not isinstance(text, str):
        return tuple(float(item) for item in text)
    return tuple(float(item) for item in text.split(',') if item.strip())


def compose_filename(pattern, info):
    '''Compose an output filename from a trollsift *pattern*.
    '''
    fname = compose(pattern, info)
    dirname = os.path.dirname(fname)
    if dirname and not os.path.isdir(dirname):
        LOGGER.info("Creating directory %s", dirname)
        os.makedirs(dirname)
    return fname
