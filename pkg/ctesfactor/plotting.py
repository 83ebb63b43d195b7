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

"""Plots of interferograms against the rescaled variable xi_N.

The SVG output is byte reproducible: ids are salted with a constant and
no date is written.
"""

import logging

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from ctesfactor.analysis import FACTOR, NON_FACTOR

LOGGER = logging.getLogger(__name__)

SVG_RC = {'svg.hashsalt': 'ctesfactor', 'svg.fonttype': 'path',
          'path.simplify': False}

LINE_STYLES = {FACTOR: '-', NON_FACTOR: '--'}


def _figure(height):
    fig = Figure(figsize=(8, height))
    FigureCanvasSVG(fig)
    return fig


def _save(fig, fname):
    fig.savefig(fname, format='svg', metadata={'Date': None})
    LOGGER.info("Saved plot to %s", fname)


def _draw(axes, interferogram, N, report=None):
    if N is None:
        axes.plot(interferogram.wavelengths, interferogram.intensities,
                  color='k', linewidth=0.6)
        axes.set_xlabel("wavelength (nm)")
    else:
        axes.plot(interferogram.xi(N), interferogram.intensities, color='k',
                  linewidth=0.6)
        axes.set_xlabel(r"$\xi_N$, N = %d" % N)
    axes.set_ylabel("intensity")
    axes.set_ylim(0.0, 1.05)
    if report is None:
        return
    for check in report.checks:
        style = LINE_STYLES.get(check.verdict)
        if style is None:
            continue
        axes.axvline(check.ell, linestyle=style, linewidth=0.5,
                     color='C3' if check.verdict == FACTOR else 'C0')


def plot_interferogram(interferogram, fname, N=None):
    """Plot the samples, against xi_N when *N* is given."""
    with matplotlib.rc_context(SVG_RC):
        fig = _figure(3)
        _draw(fig.add_subplot(1, 1, 1), interferogram, N)
        fig.tight_layout()
        _save(fig, fname)


def plot_reports(interferogram, reports, fname):
    """Plot the interferogram once per report, marking factors with solid
    lines and non-factors with dashed ones.
    """
    reports = list(reports)
    with matplotlib.rc_context(SVG_RC):
        fig = _figure(3 * max(1, len(reports)))
        for idx, report in enumerate(reports):
            axes = fig.add_subplot(len(reports), 1, idx + 1)
            _draw(axes, interferogram, report.N, report)
            axes.set_title("N = %d, factors %s" % (report.N, report.factors),
                           fontsize='small')
        fig.tight_layout()
        _save(fig, fname)
