import argparse
import sys

from .covers import build_cover_ball, cutoff_closure, delta_closure
from .errors import CovspecError, UnknownVertex
from .files import (ExperimentConfig, grid_to_file, load, load_family, load_graph, save,
                    write_table)
from .gh import EXPERIMENTS, run_sequence
from .graphs import MetricGraph, path_through
from .homotopy import find_grid_homotopy
from .numbers import COSET_BUDGET, GRID_STATES, MAX_CLASSES, format_rational, to_rational
from .spectra import (TruncationFamily, covering_spectrum, cutoff_spectrum, length_spectrum,
                      r_cutoff_spectrum)
from .zoo import RECIPES, build


EXIT_OK = 0
EXIT_UNKNOWN = 2
EXIT_VIOLATION = 3
EXIT_ERROR = 1


def _vertex(g, text):
    if text is None:
        return None
    if text in g.vertices:
        return text
    try:
        v = int(text)
    except ValueError:
        v = None
    if v is not None and v in g.vertices:
        return v
    raise UnknownVertex('unknown vertex `{}`'.format(text))


def _param(text):
    if text == 'None':
        return None
    if ',' in text:
        return [_param(x) for x in text.split(',') if x]
    try:
        return int(text)
    except ValueError:
        return text


def _params(pairs):
    out = {}
    for pair in pairs or []:
        if '=' not in pair:
            raise CovspecError('parameters look like key=value, got `{}`'.format(pair))
        key, value = pair.split('=', 1)
        out[key.replace('-', '_')] = _param(value)
    return out


def _emit(args, s):
    header = '# kind={} cap={}{} budget={}\n'.format(
        s.kind, format_rational(s.cap), '' if s.R is None else ' R={}'.format(
            format_rational(s.R)), s.budget)
    df = s.without_artifacts().to_dataframe() if args.no_artifacts else s.to_dataframe()
    text = header + write_table(df, fmt=args.format)
    if args.out:
        with open(args.out, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_UNKNOWN if s.has_unknown() else EXIT_OK


def _cmd_covspec(args):
    g = load_graph(args.graph)
    s = covering_spectrum(g, args.cap, budget=args.budget, max_classes=args.max_classes,
                          cores=args.cores, verbose=args.verbose)
    return _emit(args, s)


def _cmd_length_spec(args):
    g = load_graph(args.graph)
    return _emit(args, length_spectrum(g, args.cap, max_classes=args.max_classes,
                                       verbose=args.verbose))


def _cmd_cutoff(args):
    obj = load(args.input)
    if isinstance(obj, MetricGraph) and args.R is not None:
        basepoint = _vertex(obj, args.basepoint)
        s = r_cutoff_spectrum(obj, basepoint, args.R, args.cap, budget=args.budget,
                              max_classes=args.max_classes, cores=args.cores,
                              verbose=args.verbose)
        return _emit(args, s)
    if isinstance(obj, MetricGraph):
        g = obj.with_basepoint(_vertex(obj, args.basepoint)) if args.basepoint else obj
        if args.ladder:
            fam = TruncationFamily([g] * len(args.ladder), args.ladder, name=g.name)
        else:
            fam = load_family(args.input)
    else:
        fam = obj
    s = cutoff_spectrum(fam, args.cap, budget=args.budget, max_classes=args.max_classes,
                        cores=args.cores, verbose=args.verbose)
    code = _emit(args, s)
    if args.format == 'text' and not args.out:
        sys.stdout.write(write_table(s.ladder, fmt='text'))
        sys.stdout.write('stabilized: {}\n'.format(s.stabilized))
    return code


def _cmd_cover(args):
    g = load_graph(args.graph)
    basepoint = _vertex(g, args.basepoint)
    g = g.with_basepoint(basepoint) if basepoint is not None else g
    if args.R is None:
        p = delta_closure(g, args.delta, max_classes=args.max_classes)
    else:
        p = cutoff_closure(g, args.delta, args.R, max_classes=args.max_classes)
    ball = build_cover_ball(p, args.radius, center=_vertex(g, args.center),
                            budget=args.budget, verbose=args.verbose)
    violations = ball.check_local_isometry()
    sys.stdout.write('vertices: {}\nedges: {}\ncycle rank: {}\nlocal isometry violations: '
                     '{}\n'.format(len(ball), len(ball.edges), ball.cycle_rank(),
                                   len(violations)))
    if args.out:
        save(ball.to_graph(), args.out)
    return EXIT_VIOLATION if violations else EXIT_OK


def _cmd_oracle(args):
    g = load_graph(args.graph)
    vertices = [_vertex(g, v) for v in args.loop.split(',') if v]
    loop = path_through(g, vertices + [vertices[0]])
    result = find_grid_homotopy(g, loop, args.delta, max_states=args.max_states,
                                verbose=args.verbose)
    if not result:
        sys.stdout.write('not found: {} after {} states\n'.format(result.reason,
                                                                 result.explored))
        return EXIT_UNKNOWN
    sys.stdout.write('found: {}\n'.format(result))
    if args.out:
        save(grid_to_file(result, args.delta), args.out)
    return EXIT_OK


def _cmd_ghrun(args):
    if args.config:
        config = load(args.config)
        if not isinstance(config, ExperimentConfig):
            raise CovspecError('`{}` is not an experiment config'.format(args.config))
    else:
        config = ExperimentConfig(experiment=args.experiment)
    if config.experiment not in EXPERIMENTS:
        raise CovspecError('unknown experiment `{}`; known: {}'.format(
            config.experiment, ', '.join(EXPERIMENTS)))
    kwargs = {}
    if config.schedule is not None:
        key = 'lengths' if config.experiment == 'identity' else 'schedule'
        kwargs[key] = [_param(x) if '/' not in x else to_rational(x) for x in config.schedule]
    for key in ('R1', 'R2', 'cap'):
        if getattr(config, key) is not None:
            kwargs[key] = to_rational(getattr(config, key))
    report = run_sequence(EXPERIMENTS[config.experiment](**kwargs), budget=args.budget,
                          cores=args.cores, verbose=args.verbose)
    out = args.out or config.out
    text = write_table(report.table, path=out, fmt=args.format)
    if not out:
        sys.stdout.write(text)
    for check, passed in report.checks.items():
        sys.stdout.write('{}: {}\n'.format(check, 'pass' if passed else 'FAIL'))
    for note in report.notes:
        sys.stdout.write('note: {}\n'.format(note))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_zoo(args):
    if args.name == 'list':
        for name, recipe in RECIPES.items():
            sys.stdout.write('{} ({}): {}\n'.format(name, recipe.kind, recipe.defaults))
        return EXIT_OK
    obj = build(args.name, **_params(args.params))
    if isinstance(obj, list):
        for k, g in enumerate(obj):
            path = '{}.{}.json'.format(args.out or args.name, k)
            save(g, path)
            sys.stdout.write('{}\n'.format(path))
        return EXIT_OK
    path = args.out or '{}.json'.format(args.name)
    save(obj, path)
    sys.stdout.write('{}\n'.format(path))
    return EXIT_OK


def _common(p, budget=True):
    p.add_argument('--format', choices=['text', 'csv'], default='text')
    p.add_argument('--out', type=str, default=None)
    p.add_argument('--verbose', action='store_true')
    p.add_argument('--cores', type=int, default=1)
    p.add_argument('--max-classes', type=int, default=MAX_CLASSES)
    if budget:
        p.add_argument('--budget', type=int, default=COSET_BUDGET)


def build_parser():
    parser = argparse.ArgumentParser(prog='covspec',
                                     description='Covering spectra of metric graphs')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('covspec', help='covering spectrum of a graph file')
    p.add_argument('graph')
    p.add_argument('--cap', type=to_rational, required=True)
    p.add_argument('--no-artifacts', action='store_true')
    _common(p)
    p.set_defaults(func=_cmd_covspec)

    p = sub.add_parser('length-spec', help='length spectrum of a graph file')
    p.add_argument('graph')
    p.add_argument('--cap', type=to_rational, required=True)
    p.add_argument('--no-artifacts', action='store_true')
    _common(p, budget=False)
    p.set_defaults(func=_cmd_length_spec, budget=None)

    p = sub.add_parser('cutoff', help='R cut-off or cut-off spectrum of a graph or family')
    p.add_argument('input')
    p.add_argument('--cap', type=to_rational, required=True)
    p.add_argument('--basepoint', type=str, default=None)
    p.add_argument('--R', type=to_rational, default=None)
    p.add_argument('--ladder', type=lambda s: [to_rational(x) for x in s.split(',') if x],
                   default=None)
    p.add_argument('--no-artifacts', action='store_true')
    _common(p)
    p.set_defaults(func=_cmd_cutoff)

    p = sub.add_parser('cover', help='ball in the delta (or cut-off) cover')
    p.add_argument('graph')
    p.add_argument('--delta', type=to_rational, required=True)
    p.add_argument('--radius', type=to_rational, required=True)
    p.add_argument('--R', type=to_rational, default=None)
    p.add_argument('--basepoint', type=str, default=None)
    p.add_argument('--center', type=str, default=None)
    _common(p)
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser('oracle', help='search a grid homotopy for a loop')
    p.add_argument('graph')
    p.add_argument('--loop', type=str, required=True,
                   help='comma separated vertices; the loop closes back to the first')
    p.add_argument('--delta', type=to_rational, required=True)
    p.add_argument('--max-states', type=int, default=GRID_STATES)
    _common(p, budget=False)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser('ghrun', help='run a convergence experiment')
    p.add_argument('config', nargs='?', default=None)
    p.add_argument('--experiment', choices=sorted(EXPERIMENTS), default='identity')
    _common(p)
    p.set_defaults(func=_cmd_ghrun)

    p = sub.add_parser('zoo', help='write a zoo space (or `list` the recipes)')
    p.add_argument('name')
    p.add_argument('--params', nargs='*', default=[], help='key=value pairs')
    p.add_argument('--out', type=str, default=None)
    p.set_defaults(func=_cmd_zoo)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except CovspecError as e:
        sys.stderr.write('error: {}\n'.format(e))
        return EXIT_ERROR


if __name__ == '__main__':
    raise SystemExit(main())
