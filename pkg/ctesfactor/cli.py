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

"""Command line interface.

./ctes_processor.py simulate --M 3 --j 2 --x 207911 \
    --band 450.173:461.934 --dl 0.01 -o reference.csv
./ctes_processor.py factor reference.csv --N 207911
./ctes_processor.py -c ctes_config.ini -C reference simulate -o reference.csv

Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
3 impossible configuration or plan, 4 coverage violation or incomplete
sequence.
"""

import argparse
import configparser
import csv
import json
import logging
import logging.config
import os
import sys

from ctesfactor import analysis, planner, plotting, sumcore
from ctesfactor.helper_functions import (parse_amplitudes, parse_band,
                                         parse_range, read_config_file)
from ctesfactor.instrument import (Band, ConfigurationError, NoiseSpec,
                                   ParseError, SetupSpec, ValidationError,
                                   fringe_period, read_interferogram,
                                   samples_per_fringe, simulate,
                                   write_interferogram)
from ctesfactor.sumcore import DomainError, SumConfig
from ctesfactor.version import __version__

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_COVERAGE = 4

SEED_ENV = "CTES_SEED"
DEFAULT_DL = 0.01
BOOLEAN_KEYS = set(["include_two"])
BOOLEAN_TRUE = ("1", "yes", "true", "on")


class _Parser(argparse.ArgumentParser):
    """Argument parser exiting with the usage error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not a number" % text)
    if not value > 0:
        raise argparse.ArgumentTypeError("%r must be positive" % text)
    return value


def _non_negative_float(text):
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError("%r must be >= 0" % text)
    return value


def _band(text):
    try:
        return Band(*parse_band(text))
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def _int_at_least(minimum):
    def _convert(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError("%r is not an integer" % text)
        if value < minimum:
            raise argparse.ArgumentTypeError("%d must be >= %d" %
                                             (value, minimum))
        return value
    return _convert


def _add_sum_args(parser):
    parser.add_argument("--M", dest="M", type=_int_at_least(2), default=3,
                        help="Number of interfering paths (default 3)")
    parser.add_argument("--j", dest="j", type=_int_at_least(1), default=2,
                        help="Order of the sum (default 2)")


def _add_noise_args(parser):
    parser.add_argument("--noise", choices=("off", "default"), default="off",
                        help="Noise preset, 'default' are the reference "
                        "hardware levels")
    parser.add_argument("--sigma", type=_non_negative_float, default=None,
                        help="Gaussian intensity noise")
    parser.add_argument("--dl-cal", dest="dl_cal", type=_non_negative_float,
                        default=None,
                        help="Spectrometer calibration error bound (nm)")
    parser.add_argument("--dx-cal", dest="dx_cal", type=_non_negative_float,
                        default=None,
                        help="Path displacement error bound (nm)")
    parser.add_argument("--amp", default=None,
                        help="Comma separated relative path amplitudes")
    parser.add_argument("--seed", type=int, default=None,
                        help="Random seed, defaults to $%s or 0" % SEED_ENV)


def _add_decision_args(parser):
    parser.add_argument("--rho", type=float, default=analysis.DEFAULT_RHO,
                        help="Threshold position between ceiling and one")
    parser.add_argument("--tolerance", type=_non_negative_float,
                        default=0.0, help="Noise margin taken off the "
                        "threshold")
    parser.add_argument("--include-two", dest="include_two",
                        action="store_true", help="Also check trial factor 2")


def _add_output_arg(parser, what):
    parser.add_argument("-o", "--output", default=None,
                        help="Output %s, stdout when omitted" % what)


def build_parser():
    """Parser of the command line."""
    parser = _Parser(prog="ctes_processor.py",
                     description="Optical factoring with continuous "
                     "truncated exponential sums.")
    parser.add_argument("-c", "--config_file", dest="config_file",
                        default='',
                        help="The file containing configuration parameters.")
    parser.add_argument("-C", "--config_item", dest="config_item",
                        default=None,
                        help="The item in the file with configuration.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="More log output, repeat for debug")
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    sim = subparsers.add_parser("simulate", help="Simulate an interferogram")
    _add_sum_args(sim)
    sim.add_argument("--x", type=_positive_float, default=None,
                     help="Unit path displacement (nm)")
    sim.add_argument("--band", type=_band, default=None,
                     help="Wavelength band lmin:lmax (nm)")
    sim.add_argument("--dl", type=_positive_float, default=DEFAULT_DL,
                     help="Sampling step (nm)")
    _add_noise_args(sim)
    sim.add_argument("-o", "--output", default="interferogram.csv",
                     help="Interferogram file to write")

    fac = subparsers.add_parser("factor", help="Factor integers from an "
                                "interferogram")
    fac.add_argument("interferogram", help="Interferogram file")
    fac.add_argument("--N", dest="Ns", type=_int_at_least(1),
                     action="append", default=None,
                     help="Integer to factor, may be repeated")
    _add_decision_args(fac)
    fac.add_argument("--plot", default=None,
                     help="Also plot the scans to this SVG file")
    _add_output_arg(fac, "JSON report")

    pln = subparsers.add_parser("plan", help="Plan an interferogram sequence")
    pln.add_argument("--method", type=planner.MethodKind.parse, default=None,
                     help="1 for trial factors up to sqrt(N), 2 for the "
                     "cofactors")
    pln.add_argument("--nmin", type=_int_at_least(1), default=1,
                     help="Smallest integer to cover")
    pln.add_argument("--nmax", type=_int_at_least(1), default=None,
                     help="Largest integer to cover")
    pln.add_argument("--band", type=_band, default=None,
                     help="Wavelength band lmin:lmax (nm)")
    pln.add_argument("--x0", type=_positive_float, default=None,
                     help="First displacement (nm), the method minimum by "
                     "default")
    _add_output_arg(pln, "JSON plan")

    ver = subparsers.add_parser("verify", help="Verify the coverage of a "
                                "plan")
    ver.add_argument("plan", help="JSON plan file")
    ver.add_argument("--N", dest="Ns", type=_int_at_least(1),
                     action="append", default=None,
                     help="Integer to verify, may be repeated")
    _add_output_arg(ver, "JSON coverage proofs")

    bnd = subparsers.add_parser("bound", help="Tabulate non-factor "
                                "ceilings")
    _add_sum_args(bnd)
    bnd.add_argument("--l", dest="ells", type=parse_range, default=None,
                     help="Trial factor or range lo:hi")
    bnd.add_argument("--rho", type=float, default=analysis.DEFAULT_RHO)
    bnd.add_argument("--tolerance", type=_non_negative_float, default=0.0)
    _add_output_arg(bnd, "CSV table")

    seq = subparsers.add_parser("sequence", help="Simulate and scan a "
                                "planned sequence")
    seq.add_argument("plan", help="JSON plan file")
    seq.add_argument("--N", dest="Ns", type=_int_at_least(1),
                     action="append", default=None,
                     help="Integer to factor, may be repeated")
    _add_sum_args(seq)
    seq.add_argument("--dl", type=_positive_float, default=DEFAULT_DL,
                     help="Sampling step (nm)")
    _add_noise_args(seq)
    _add_decision_args(seq)
    seq.add_argument("--save-pattern", dest="save_pattern", default=None,
                     help="Save each interferogram, eg. "
                     "'seq_{index:02d}.csv'")
    _add_output_arg(seq, "JSON reports")

    plo = subparsers.add_parser("plot", help="Plot an interferogram")
    plo.add_argument("interferogram", help="Interferogram file")
    plo.add_argument("--N", type=_int_at_least(1), default=None,
                     help="Plot against xi_N of this integer")
    plo.add_argument("-o", "--output", default="interferogram.svg",
                     help="SVG file to write")

    return parser, subparsers


def parse_args(argv=None):
    """Parse command line arguments, with defaults from the config file.

    Values given on the command line override the config file.
    """
    parser, subparsers = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("-c", "--config_file", default='')
    pre.add_argument("-C", "--config_item", default=None)
    known, _ = pre.parse_known_args(argv)

    config = {}
    if known.config_file:
        if 'template' in known.config_file:
            parser.error("Template file given as config, aborting!")
        try:
            config = read_config_file(known.config_file, known.config_item)
        except (IOError, KeyError, NotImplementedError, ValueError,
                configparser.Error) as err:
            parser.error(str(err))
        defaults = dict((key, value) for key, value in config.items()
                        if key not in ('config_file', 'config_item', "Ns"))
        for key in BOOLEAN_KEYS.intersection(defaults):
            defaults[key] = defaults[key].strip().lower() in BOOLEAN_TRUE
        for subparser in subparsers.choices.values():
            subparser.set_defaults(**defaults)

    args = parser.parse_args(argv)
    args.config = config
    return parser, args


def setup_logging(config, verbosity=0):
    """Setup logging"""
    log_config = config.get("log_config")
    if log_config:
        logging.config.fileConfig(log_config,
                                  disable_existing_loggers=False)
    else:
        level = [logging.WARNING, logging.INFO,
                 logging.DEBUG][min(verbosity, 2)]
        logging.basicConfig(level=level,
                            format="[%(levelname)s: %(asctime)s : "
                            "%(name)s] %(message)s")
    logging.debug("Logging setup completed.")


def _converted(parser, args, name, convert):
    # config file values are strings when the flag has no type
    value = getattr(args, name, None)
    if isinstance(value, str):
        try:
            value = convert(value)
        except (ValueError, argparse.ArgumentTypeError) as err:
            parser.error("bad value for %s: %s" % (name, err))
    return value


def _seed(parser, args):
    if args.seed is not None:
        return int(args.seed)
    text = os.environ.get(SEED_ENV, "0")
    try:
        return int(text)
    except ValueError:
        parser.error("$%s must be an integer, got %r" % (SEED_ENV, text))


def _noise(parser, args):
    if args.noise == "default":
        noise = NoiseSpec.hardware_default()
    else:
        noise = NoiseSpec.off()
    sigma = _converted(parser, args, "sigma", float)
    dl_cal = _converted(parser, args, "dl_cal", float)
    dx_cal = _converted(parser, args, "dx_cal", float)
    amp = parse_amplitudes(args.amp)
    return NoiseSpec(noise.sigma if sigma is None else sigma,
                     noise.dl_cal if dl_cal is None else dl_cal,
                     noise.dx_cal if dx_cal is None else dx_cal,
                     amp if amp is not None else noise.amp,
                     _seed(parser, args))


def _require(parser, args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            parser.error("--%s is required (command line or config file)" %
                         name)


def _emit_json(obj, output):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if output:
        with open(output, 'w') as fid:
            fid.write(text + "\n")
        LOGGER.info("Wrote %s", output)
    else:
        sys.stdout.write(text + "\n")


def _warn_unresolved(reports):
    for report in reports:
        if report.unresolved:
            sys.stderr.write("warning: N=%d, the sampling cannot support "
                             "the verdicts of %s\n" % (report.N,
                                                       report.unresolved))


def _ns(parser, args):
    Ns = getattr(args, "Ns", None)
    if not Ns:
        Ns = args.config.get("Ns")
    if isinstance(Ns, str):
        Ns = [int(item) for item in Ns.replace(',', ' ').split()]
    if not Ns:
        parser.error("at least one --N is required")
    return Ns


def cmd_simulate(parser, args):
    """Simulate one interferogram to a file."""
    _require(parser, args, "x", "band")
    setup = SetupSpec(SumConfig(args.M, args.j), args.x, args.band, args.dl,
                      _noise(parser, args))
    interferogram = simulate(setup)
    write_interferogram(interferogram, args.output)
    print("%s, x=%r nm, band %s nm, %d samples written to %s" %
          (setup.cfg, setup.x, setup.band, len(interferogram), args.output))
    print("fringe period at %g nm: %.6g nm, %.1f samples per fringe" %
          (setup.band.lam_min, fringe_period(setup, setup.band.lam_min),
           samples_per_fringe(setup)))
    if setup.noise.is_off:
        print("noise: off")
    else:
        print("noise: sigma %g, dl_cal %g nm, dx_cal %g nm, seed %d" %
              (setup.noise.sigma, setup.noise.dl_cal, setup.noise.dx_cal,
               setup.noise.seed))
    return EXIT_OK


def cmd_factor(parser, args):
    """Factor integers from one interferogram."""
    Ns = _ns(parser, args)
    interferogram = read_interferogram(args.interferogram)
    reports = analysis.multi_scan(interferogram, Ns, args.rho, args.tolerance,
                                  args.include_two)
    for report in reports:
        if report.coverage_warning:
            sys.stderr.write("warning: no trial factor of N=%d is in the "
                             "band\n" % report.N)
    _warn_unresolved(reports)
    _emit_json({'reports': [report.to_dict() for report in reports]},
               args.output)
    if args.plot:
        plotting.plot_reports(interferogram, reports, args.plot)
    return EXIT_OK


def cmd_plan(parser, args):
    """Plan a sequence and write it as JSON."""
    _require(parser, args, "method", "nmax", "band")
    result = planner.plan(args.nmin, args.nmax, args.band, args.method,
                          args.x0)
    _emit_json(result.to_dict(), args.output)
    sys.stderr.write("n=%d, x_0=%.10g nm\n" % (result.n, result.x0))
    sys.stderr.write("single interferograms valid up to x=%.10g nm\n" %
                     planner.max_displacement(result.band, result.method))
    return EXIT_OK


def _read_plan(fname):
    try:
        with open(fname) as fid:
            info = json.load(fid)
        return planner.SequencePlan.from_dict(info)
    except ValueError as err:
        if isinstance(err, planner.PlanningError):
            raise
        raise ParseError("bad plan file: %s" % err, fname=fname)
    except KeyError as err:
        raise ParseError("plan lacks %s" % err, fname=fname)


def cmd_verify(parser, args):
    """Verify the coverage of a plan for some integers."""
    Ns = _ns(parser, args)
    seq_plan = _read_plan(args.plan)
    status = EXIT_OK
    proofs = []
    for N in Ns:
        try:
            proof = planner.verify_coverage(seq_plan, N)
        except planner.CoverageViolation as err:
            print("N=%d: %s" % (N, err))
            proofs.append({'N': N, 'covered': False,
                           'gaps': [list(gap) for gap in err.gaps],
                           'uncovered': [list(part)
                                         for part in err.uncovered]})
            status = EXIT_COVERAGE
            continue
        proofs.append(dict(proof.to_dict(), covered=True))
        print("N=%d: covered, no gaps" % N)
        for idx, (interval, owned) in enumerate(zip(proof.intervals,
                                                    proof.owned)):
            print("  x_%d = %.10g nm: [%.6f, %.6f] owns %s" %
                  (idx, seq_plan.xs[idx], interval[0], interval[1],
                   "[%d, %d]" % owned if not owned.empty else "nothing"))
    if args.output:
        _emit_json({'proofs': proofs}, args.output)
    return status


def cmd_bound(parser, args):
    """Tabulate the non-factor ceilings of a range of trial factors."""
    _require(parser, args, "ells")
    cfg = SumConfig(args.M, args.j)
    low, high = args.ells
    if low < 2:
        parser.error("trial factors start at 2")
    rows = []
    for ell in range(low, high + 1):
        residue, ceiling = sumcore.worst_residue(cfg, ell)
        rows.append((ell, residue, "%.12g" % ceiling,
                     "%.12g" % analysis.threshold(ceiling, args.rho,
                                                  args.tolerance)))
    fid = open(args.output, 'w', newline='') if args.output else sys.stdout
    try:
        writer = csv.writer(fid, lineterminator="\n")
        writer.writerow(("ell", "worst_residue", "ceiling", "threshold"))
        writer.writerows(rows)
    finally:
        if args.output:
            fid.close()
    return EXIT_OK


def cmd_sequence(parser, args):
    """Run a planned sequence and report every integer."""
    Ns = _ns(parser, args)
    seq_plan = _read_plan(args.plan)
    reports = planner.run_sequence(seq_plan, Ns, _noise(parser, args),
                                   args.dl, SumConfig(args.M, args.j),
                                   args.rho, args.tolerance,
                                   args.include_two, args.save_pattern)
    _warn_unresolved(reports)
    _emit_json({'reports': [report.to_dict() for report in reports]},
               args.output)
    if all(report.complete for report in reports):
        return EXIT_OK
    return EXIT_COVERAGE


def cmd_plot(parser, args):
    """Plot an interferogram."""
    interferogram = read_interferogram(args.interferogram)
    plotting.plot_interferogram(interferogram, args.output, args.N)
    return EXIT_OK


COMMANDS = {'simulate': cmd_simulate, 'factor': cmd_factor,
            'plan': cmd_plan, 'verify': cmd_verify, 'bound': cmd_bound,
            'sequence': cmd_sequence, 'plot': cmd_plot}


def main(argv=None):
    """Main()"""
    try:
        parser, args = parse_args(argv)
    except SystemExit as err:
        return err.code

    setup_logging(args.config, args.verbose)
    try:
        return COMMANDS[args.command](parser, args)
    except SystemExit as err:
        return err.code
    except (IOError, OSError, ValidationError) as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_INPUT
    except (ConfigurationError, planner.PlanningError, DomainError) as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
