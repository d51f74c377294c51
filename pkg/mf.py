#!/usr/bin/env python3
# ============================================================
# mf -- a workbench for Moufang loops
#
# This is the main program, which just parses command-line
# options, figures out what to build or check, and invokes
# the library proper.  Exit status is 0 when everything
# passed, 1 when a check or construction failed and 2 on
# usage errors.
# ============================================================

import argparse
import logging
import os
import sys

from mf_config import settings
from mf_errors import (MoufangError, DescriptorError, UnknownSuite, SuiteNotApplicable, TooLarge, TooLargeToDecide,
                       error, errors_reported, clear_errors, subscribe_errors)
from mf_extensions import from_construction, is_minimal, is_nontrivial, survey_small
from mf_loop import (LoopTable, is_moufang, is_associative, materialize, read_loop_file, write_table,
                     write_handle)
from mf_products import Construction
from mf_sema import build
from mf_suites import SUITES, Target, run_suites
from mf_triality import check_triality

log = logging.getLogger('mf')

OK, FAILED, USAGE = 0, 1, 2


class Workbench:
    """ This object encapsulates the library and serves as a facade for the
        command-line verbs.  Every verb returns an exit status.
    """

    def __init__(self, cl_args):
        self.args = cl_args
        self.out = sys.stdout

    def say(self, line):
        self.out.write(line + '\n')

    def _construct(self, target) -> Construction:
        """ A loop file, a loop-handle file or a descriptor. """
        if os.path.isfile(target):
            t = read_loop_file(target)
            if isinstance(t, LoopTable):
                return Construction('file:%s' % target, t)
            descriptor, order = t
            c = build(descriptor, self.args.allow_failing)
            if c.loop.order != order:
                raise MoufangError("%s rebuilt with order %d, the handle says %d" % (descriptor, c.loop.order, order))
            return c
        return build(target, self.args.allow_failing)

    def _save(self, c: Construction, path):
        if c.loop.order <= settings.table_cap:
            write_table(materialize(c.loop), path)
            self.say('wrote table of order %d to %s' % (c.loop.order, path))
        else:
            write_handle(path, c.name, c.loop.order)
            self.say('wrote handle for %s (order %d) to %s' % (c.name, c.loop.order, path))

    # Verbs
    def do_build(self):
        c = self._construct(self.args.target)
        self.say('%s order %d' % (c.name, c.loop.order))
        moufang = is_moufang(c.loop, budget=settings.budget, seed=settings.seed)
        assoc = is_associative(c.loop, budget=settings.budget, seed=settings.seed)
        self.say('moufang: %s' % _verdict(moufang))
        self.say('associative: %s' % _verdict(assoc))
        if self.args.out:
            self._save(c, self.args.out)
        return OK if moufang else FAILED

    def do_export(self):
        if not self.args.out:
            error("export needs --out")
            return USAGE
        c = self._construct(self.args.target)
        self._save(c, self.args.out)
        return OK

    def do_check(self):
        names = [s.strip() for s in self.args.suite.split(',') if s.strip()]
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            raise UnknownSuite("unknown suite %s (known: %s)" % (unknown[0], ', '.join(SUITES)))
        c = self._construct(self.args.target)
        results = run_suites(Target.from_construction(c), names, settings.budget, settings.seed, settings.jobs)
        for r in results:
            self.say(r.line())
        return OK if all(results) else FAILED

    def do_check_triality(self):
        c = self._construct(self.args.target)
        if c.group is None:
            raise SuiteNotApplicable("%s is not a group with triality" % c.name)
        verdict = check_triality(c.group, settings.budget, settings.seed)
        self.say('triality: %s' % _verdict(verdict))
        if verdict.detail:
            self.say(verdict.detail)
        return OK if verdict else FAILED

    def do_minimal(self):
        c = self._construct(self.args.target)
        if c.kernel is None:
            raise SuiteNotApplicable("%s has no abelian kernel to test" % c.name)
        x = from_construction(c, settings.seed)
        verdict = is_minimal(x, self.args.method, settings.seed)
        try:
            nontrivial = 'yes' if is_nontrivial(x, settings.seed) else 'no'
        except (TooLarge, TooLargeToDecide):
            nontrivial = 'undecided'
        self.say('%s |E| = %d |U| = %d' % (x.name, x.order, len(x.U)))
        self.say('nontrivial: %s' % nontrivial)
        if verdict:
            self.say('minimal: yes (%s)' % verdict.detail)
        else:
            self.say('minimal: no (%s) invariant subgroup {%s}'
                     % (verdict.detail, ','.join(str(s) for s in verdict.witness)))
        return OK if verdict else FAILED

    def do_survey(self):
        qs = tuple(int(q) for q in self.args.q.split(',') if q.strip())
        lines = survey_small(self.args.bound, qs, settings.seed, settings.jobs)
        text = ''.join(line + '\n' for line in lines)
        if self.args.out:
            with open(self.args.out, 'w') as f:
                f.write(text)
        self.out.write(text)
        return OK

    def run(self):
        verb = getattr(self, 'do_' + self.args.verb.replace('-', '_'))
        clear_errors()
        with subscribe_errors(lambda msg: sys.stderr.write(msg + "\n")):
            try:
                status = verb()
            except (DescriptorError, UnknownSuite, SuiteNotApplicable) as e:
                if not errors_reported():
                    error(e)
                return USAGE
            except MoufangError as e:
                error('%s: %s' % (type(e).__name__, e))
                if e.witness is not None:
                    error('witness: %s' % (e.witness,))
                return FAILED
            except OSError as e:
                error(e)
                return USAGE
        return status


def _verdict(v):
    mode = 'exhaustive' if v.exhaustive else 'sampled'
    if v:
        return 'PASS (%s)' % mode
    return 'FAIL (%s) witness=%s' % (mode, v.witness)


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", "--debug", help="log debug information to stderr", action='store_true')
    common.add_argument("--seed", type=int, help="seed of every sampled check")
    common.add_argument("--budget", type=int, help="number of sampled tuples per check")
    common.add_argument("--jobs", type=int, help="worker threads")
    common.add_argument("--cap", type=int, help="largest loop order written as a table")
    common.add_argument("--allow-failing", help="build module groups whose triality fails", action='store_true')

    parser = argparse.ArgumentParser(prog='mf', description='Moufang loops from triality and Zorn matrices')
    verbs = parser.add_subparsers(dest='verb', required=True)

    p = verbs.add_parser('build', parents=[common], help="build a construction and report its laws")
    p.add_argument("target", help="descriptor or loop file")
    p.add_argument("-o", "--out", help="write the table (or a handle) here")

    p = verbs.add_parser('export', parents=[common], help="write a construction as a loop table")
    p.add_argument("target")
    p.add_argument("-o", "--out")

    p = verbs.add_parser('check', parents=[common], help="run property suites")
    p.add_argument("target")
    p.add_argument("-s", "--suite", default='moufang', help="comma separated: %s" % ', '.join(SUITES))

    p = verbs.add_parser('check-triality', parents=[common], help="check the triality axiom of a group")
    p.add_argument("target")

    p = verbs.add_parser('minimal', parents=[common], help="decide minimality of an extension")
    p.add_argument("target")
    p.add_argument("-m", "--method", choices=['spinning', 'enumeration'])

    p = verbs.add_parser('survey', parents=[common], help="nontriviality and minimality of the small catalog")
    p.add_argument("--bound", type=int, default=10 ** 4)
    p.add_argument("--q", default='2,3', help="comma separated field sizes")
    p.add_argument("-o", "--out")
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING,
                        format='%(name)s: %(message)s', stream=sys.stderr)
    saved = dict(settings)
    for key in ('seed', 'budget', 'jobs'):
        if getattr(args, key) is not None:
            settings[key] = getattr(args, key)
    if args.cap is not None:
        settings['table_cap'] = args.cap
    try:
        return Workbench(args).run()
    finally:
        settings.update(saved)


if __name__ == '__main__':
    sys.exit(main())
