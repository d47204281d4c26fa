import math

import pandas as pd

from .covers import compare_covers, cutoff_closure
from .errors import ParameterError
from .free_group import multiply, invert_word, normal_closure_member
from .graphs import geodesic, loop_to_word, map_path, spanning_tree, word_to_loop
from .numbers import COSET_BUDGET, LANDMARKS, format_rational, to_rational
from .spectra import cutoff_spectrum, r_cutoff_spectrum, rescale_spectrum, spectrum_value
from .utils import YES, UNKNOWN, DIFFER, EQUAL, parallel_map, _vertex_key
from . import zoo


class EpsApproximation:
    """
    A vertex map between pointed metric graphs with its measured distortion.

    ``distortion`` is the largest ``|d2(f(a), f(b)) - d1(a, b)|`` over source vertices within
    ``scope`` of the basepoint and ``defect`` the largest distance from a target vertex within
    ``scope`` to the image. ``epsilon`` is the larger of the two.
    """

    def __init__(self, source, target, mapping, scope, distortion, defect):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        self.scope = scope
        self.distortion = distortion
        self.defect = defect

    def __repr__(self):
        return '<EpsApproximation> {} -> {} epsilon={}'.format(self.source.name,
                                                              self.target.name, self.epsilon)

    def __call__(self, v):
        return self.mapping[v]

    @property
    def epsilon(self):
        return max(self.distortion, self.defect)


def _within(g, radius):
    dist = g.distances(g.basepoint)
    return [v for v in g.vertices if radius is None or dist[v] <= radius]


def _landmarks(g, vertices, count):
    chosen = [g.basepoint]
    ordered = sorted(vertices, key=_vertex_key)
    while len(chosen) < min(count, len(ordered)):
        far = max((v for v in ordered if v not in chosen),
                  key=lambda v: min(g.distance(c, v) for c in chosen))
        chosen.append(far)
    return chosen


def build_approximation(g1, g2, scope=None, landmarks=LANDMARKS):
    """
    Map ``g1`` to ``g2`` greedily against landmark distances and measure the result.

    Basepoint goes to basepoint. Landmarks (farthest-point order) are placed one at a time to
    best match their distances to the landmarks already placed; every other vertex is then
    placed against all landmarks. Ties prefer a vertex with the same id.

    Parameters
    ----------
    g1, g2 : MetricGraph
        Pointed by their basepoints.
    scope : rational or None
        Radius about the basepoints over which distortion and defect are measured. ``None``
        measures everything.
    landmarks : int

    Returns
    -------
    EpsApproximation

    Examples
    --------
    >>> build_approximation(cycle(6), cycle(6)).epsilon
    Fraction(0, 1)
    """
    scope = None if scope is None else to_rational(scope)
    targets = sorted(g2.vertices, key=_vertex_key)
    marks = _landmarks(g1, g1.vertices, landmarks)
    mapping = {g1.basepoint: g2.basepoint}

    def place(v, against):
        def score(t):
            worst = max((abs(g2.distance(mapping[m], t) - g1.distance(m, v))
                         for m in against), default=0)
            return (worst, t != v, _vertex_key(t))
        return min(targets, key=score)

    for m in marks[1:]:
        mapping[m] = place(m, [x for x in marks if x in mapping])
    for v in g1.vertices:
        if v not in mapping:
            mapping[v] = place(v, marks)

    domain = _within(g1, scope)
    distortion = max((abs(g2.distance(mapping[a], mapping[b]) - g1.distance(a, b))
                      for a in domain for b in domain), default=0)
    image = set(mapping[v] for v in domain)
    defect = max((min(g2.distance(t, u) for u in image) for t in _within(g2, scope)),
                 default=0)
    return EpsApproximation(g1, g2, mapping, scope, to_rational(distortion),
                            to_rational(defect))


def identity_approximation(g):
    return EpsApproximation(g, g, {v: v for v in g.vertices}, None, to_rational(0),
                            to_rational(0))


class PhiReport:
    """
    The induced map on generators with its homomorphism and surjectivity checks.

    ``images`` maps each source letter to a target word, ``preimages`` each target letter to
    a source word whose image agrees with it modulo the target closure.
    """

    def __init__(self, images, kernel, preimages, unresolved):
        self.images = images
        self.kernel = kernel
        self.preimages = preimages
        self.unresolved = unresolved

    def __repr__(self):
        return '<PhiReport> homomorphism={} surjective={}'.format(self.homomorphism,
                                                                 self.surjective)

    @property
    def homomorphism(self):
        return all(v == YES for v in self.kernel.values())

    @property
    def surjective(self):
        return not self.unresolved


def _based(g, path):
    if path.start == g.basepoint:
        return path
    there = geodesic(g, g.basepoint, path.start)
    return there.concat(path, g).concat(there.inverse(g), g)


def _push_word(approx, w):
    g1, g2 = approx.source, approx.target
    loop = word_to_loop(g1, w)
    return loop_to_word(g2, _based(g2, map_path(g1, loop, g2, approx, strict=False)))


def _pull_vertex(approx, t):
    g1, g2 = approx.source, approx.target
    return min(g1.vertices, key=lambda v: (g2.distance(approx(v), t), _vertex_key(v)))


def _pull_word(approx, w):
    g1, g2 = approx.source, approx.target
    back = {t: _pull_vertex(approx, t) for t in g2.vertices}
    pulled = map_path(g2, word_to_loop(g2, w), g1, back.__getitem__, strict=False)
    return loop_to_word(g1, _based(g1, pulled))


def induced_phi(approx, delta1, delta2, s1, s2, budget=COSET_BUDGET):
    """
    The map from the ``(delta1, s1)`` cut-off closure of the source to the ``(delta2, s2)``
    closure of the target induced by an approximation.

    Letters are pushed forward edge by edge: an edge goes to the target edge of its length
    between the images of its ends, any other edge to a geodesic between them. The image of
    every source closure generator must lie in the target closure; every target letter must
    have a preimage modulo the target closure.

    Raises
    ------
    ParameterError
        Unless ``delta1 > 10 eps``, ``delta2 > delta1 + 10 eps`` and ``s2 < s1 - 5 eps``.
    """
    delta1, delta2 = to_rational(delta1), to_rational(delta2)
    s1, s2 = to_rational(s1), to_rational(s2)
    eps = approx.epsilon
    if not (delta1 > 10 * eps and delta2 > delta1 + 10 * eps and s2 < s1 - 5 * eps):
        raise ParameterError('need delta1 > 10 eps, delta2 > delta1 + 10 eps and '
                             's2 < s1 - 5 eps with eps={}'.format(eps))
    g1, g2 = approx.source, approx.target
    source = cutoff_closure(g1, delta1, s1)
    target = cutoff_closure(g2, delta2, s2)
    targets = target.words()

    images = {k: _push_word(approx, (k,)) for k in range(1, spanning_tree(g1).rank + 1)}

    def push(w):
        out = ()
        for x in w:
            out = multiply(out, images[x] if x > 0 else invert_word(images[-x]))
        return out

    kernel = {}
    for gen in source.generators:
        kernel[gen.cyclic] = normal_closure_member(push(gen.word), targets, budget=budget)

    preimages = {}
    unresolved = []
    for k in range(1, spanning_tree(g2).rank + 1):
        w = _pull_word(approx, (k,))
        if normal_closure_member(multiply(push(w), invert_word((k,))), targets,
                                 budget=budget) == YES:
            preimages[k] = w
        else:
            unresolved.append(k)
    return PhiReport(images, kernel, preimages, unresolved)


def spectrum_hausdorff(a, b):
    """
    The Hausdorff distance between two finite sets of values; ``inf`` when exactly one is
    empty.

    Examples
    --------
    >>> spectrum_hausdorff({1, 3}, {1, 2})
    Fraction(1, 1)
    """
    a = set(to_rational(x) for x in a)
    b = set(to_rational(x) for x in b)
    if not a and not b:
        return to_rational(0)
    if not a or not b:
        return math.inf
    return max(max(min(abs(x - y) for y in b) for x in a),
               max(min(abs(x - y) for x in a) for y in b))


class SequenceExperiment:
    """
    Pointed terms converging to a declared limit, tested at two cut-off radii.

    ``expect`` is one of ``'disappear'``, ``'appear-with-R2'``, ``'snap-open'``,
    ``'converge'`` or ``'stable'``.
    """

    EXPECTATIONS = ('disappear', 'appear-with-R2', 'snap-open', 'converge', 'stable')

    def __init__(self, name, terms, limit, R1, R2, cap, expect='stable', tail=2):
        if expect not in self.EXPECTATIONS:
            raise ParameterError('expect must be one of {}'.format(self.EXPECTATIONS))
        self.name = name
        self.terms = list(terms)
        self.limit = limit
        self.R1 = to_rational(R1)
        self.R2 = to_rational(R2)
        self.cap = to_rational(cap)
        if not self.R1 < self.R2:
            raise ParameterError('need R1 < R2')
        if not self.terms:
            raise ParameterError('an experiment needs at least one term')
        self.expect = expect
        self.tail = max(1, min(tail, len(self.terms)))

    def __repr__(self):
        return '<SequenceExperiment {}> {} terms, R1={}, R2={}, expect {}'.format(
            self.name, len(self.terms), self.R1, self.R2, self.expect)


class SequenceReport:
    def __init__(self, name, table, limit_r1, limit_r2, checks, notes):
        self.name = name
        self.table = table
        self.limit_r1 = limit_r1
        self.limit_r2 = limit_r2
        self.checks = checks
        self.notes = notes

    def __repr__(self):
        return '<SequenceReport {}> {}'.format(self.name, 'pass' if self.passed else 'FAIL')

    @property
    def passed(self):
        return all(self.checks.values())


def _fmt(values):
    return ' '.join(format_rational(v) for v in sorted(values))


def _near(x, values, tol):
    return any(abs(x - y) <= tol for y in values)


def run_sequence(exp, budget=COSET_BUDGET, cores=1, verbose=False):
    """
    Compute the cut-off spectra of every term and of the limit at ``R1`` and ``R2``, then
    check that values persisting along the tail survive in the limit and that limit values
    are approximated by the terms at ``R2``.

    Values are matched up to a per-term tolerance: the epsilon of the approximation from the
    term to the limit within ``R2`` of the basepoints. A value persists along the tail when
    every tail term has a value within its tolerance.

    Parameters
    ----------
    exp : SequenceExperiment
    budget : int
    cores : int
        If 1, runs on a single core / process. If greater than 1, will run on a multiprocessing
        pool with that many cores / processes.
    verbose : bool
        If True, will print out statements on computational progress.

    Returns
    -------
    SequenceReport
    """
    def spectra(g):
        s1 = r_cutoff_spectrum(g, g.basepoint, exp.R1, exp.cap, budget=budget)
        s2 = r_cutoff_spectrum(g, g.basepoint, exp.R2, exp.cap, budget=budget)
        return s1.without_artifacts().certain(), s2.without_artifacts().certain()

    def tolerance(g):
        return build_approximation(g, exp.limit, scope=exp.R2).epsilon

    if verbose:
        print('Running {}...'.format(exp.name))
    results = parallel_map(spectra, exp.terms + [exp.limit], cores=cores, verbose=verbose)
    limit_r1, limit_r2 = results[-1]
    terms = results[:-1]
    tols = parallel_map(tolerance, exp.terms, cores=cores)

    rows = []
    for i, ((r1, r2), tol) in enumerate(zip(terms, tols)):
        rows.append({'term': i,
                     'R1_values': _fmt(r1),
                     'R2_values': _fmt(r2),
                     'hausdorff_R1': spectrum_hausdorff(r1, limit_r1),
                     'tolerance': tol})
    table = pd.DataFrame(rows, columns=['term', 'R1_values', 'R2_values', 'hausdorff_R1',
                                        'tolerance'])

    tail = list(zip(terms, tols))[-exp.tail:]
    (last_r1, _), last_tol = tail[-1]
    persistent = set(x for x in last_r1 if all(_near(x, r1, tol) for (r1, _), tol in tail))
    checks = {'tail values survive in the limit':
              all(_near(x, limit_r1, last_tol) for x in persistent),
              'limit values approximated at R2':
              all(_near(x, r2, tol) for x in limit_r1 for (_, r2), tol in tail)}
    notes = []
    if exp.expect == 'disappear':
        gone = set().union(*[r1 for r1, _ in terms]) - limit_r1
        checks['tail matches the limit'] = all(r1 == limit_r1 for (r1, _), _ in tail)
        if gone:
            notes.append('values {} slid out of the R1 ball'.format(_fmt(gone)))
    elif exp.expect == 'appear-with-R2':
        checks['limit values missing at R1'] = all(not (limit_r1 & r1) for r1, _ in terms)
        checks['limit values present at R2'] = all(limit_r1 <= r2 for _, r2 in terms)
    elif exp.expect == 'snap-open':
        checks['no bounded values in the tail'] = not persistent
        checks['limit spectrum empty'] = not limit_r1
        seen = [_fmt(r1) for r1, _ in terms if r1]
        notes.append('term values {} leave [0, {}]'.format(seen, exp.cap))
    elif exp.expect == 'converge':
        distances = [spectrum_hausdorff(r1, limit_r1) for r1, _ in terms]
        checks['distances to the limit shrink'] = all(
            b <= a for a, b in zip(distances, distances[1:]))
        checks['last term within tolerance'] = distances[-1] <= last_tol
    else:
        checks['every term matches the limit'] = all(r1 == limit_r1 for r1, _ in terms)
    if verbose:
        print('...{}'.format('pass' if all(checks.values()) else 'FAIL'))
    return SequenceReport(exp.name, table, limit_r1, limit_r2, checks, notes)


def sliding_handle_experiment(schedule=(1, 2, 4, 8), R1=2, R2=3, cap=4):
    terms = zoo.sliding_handle_family(schedule)
    limit = zoo.sliding_handle(None, ray=max(schedule) + 4)
    return SequenceExperiment('sliding handle', terms, limit, R1, R2, cap, expect='disappear')


def snapping_circle_experiment(schedule=(8, 12, 16, 24), R1=2, R2=4, cap=5):
    terms = zoo.snapping_circle_family(schedule)
    return SequenceExperiment('snapping circle', terms, zoo.snapping_limit(), R1, R2, cap,
                              expect='snap-open')


def converging_circle_experiment(schedule=(2, 4, 8), R1=2, R2=4, cap=5):
    terms = zoo.converging_circle_family(schedule)
    return SequenceExperiment('converging circle', terms, zoo.cycle(6), R1, R2, cap,
                              expect='converge')


def r_boundary_experiment(schedule=(1, 2, 3, 4), R1=2, R2=3, cap=4):
    terms = zoo.r_boundary_sequence(schedule, R1=R1)
    return SequenceExperiment('r boundary', terms, zoo.r_boundary_graph(R1), R1, R2, cap,
                              expect='appear-with-R2')


def identity_experiment(lengths=(6, 10), count=3, R1=2, R2=4, cap=6):
    g = zoo.wedge_of_circles(list(lengths))
    return SequenceExperiment('identity', [g] * count, g, R1, R2, cap, expect='stable')


EXPERIMENTS = {
    'sliding-handle': sliding_handle_experiment,
    'snapping-circle': snapping_circle_experiment,
    'converging-circle': converging_circle_experiment,
    'r-boundary': r_boundary_experiment,
    'identity': identity_experiment,
}


class TangentConeReport:
    def __init__(self, table, decays, consistent):
        self.table = table
        self.decays = decays
        self.consistent = consistent

    def __repr__(self):
        return '<TangentConeReport> decays={} consistent={}'.format(self.decays,
                                                                    self.consistent)


def tangent_cone_experiment(fam, scales, cap, budget=COSET_BUDGET, verbose=False):
    """
    Cut-off spectra of a family rescaled by each of ``scales``.

    Each rescaled spectrum is recomputed from the rescaled graphs and compared with the
    original spectrum divided by the scale. ``decays`` says whether the largest value shrinks
    as the scale grows.
    """
    scales = [to_rational(r) for r in scales]
    if any(b <= a for a, b in zip(scales, scales[1:])) or scales[0] <= 0:
        raise ParameterError('scales must be positive and increasing')
    cap = to_rational(cap)
    base = cutoff_spectrum(fam, cap, budget=budget, verbose=verbose)
    rows = []
    consistent = True
    for r in scales:
        computed = cutoff_spectrum(fam.rescale(r), cap / r, budget=budget, verbose=verbose)
        expected = rescale_spectrum(base, r)
        same = computed.value_set() == expected.value_set()
        consistent = consistent and same
        values = computed.without_artifacts().value_set()
        rows.append({'scale': format_rational(r),
                     'values': _fmt(values),
                     'max_value': max(values) if values else to_rational(0),
                     'matches_rescaled': same})
    table = pd.DataFrame(rows, columns=['scale', 'values', 'max_value', 'matches_rescaled'])
    maxima = list(table['max_value'])
    decays = all(b <= a for a, b in zip(maxima, maxima[1:]))
    return TangentConeReport(table, decays, consistent)


def r_variation_report(g, basepoint, delta, R1, budget=COSET_BUDGET):
    """
    How far ``R`` may move from ``R1`` without changing the cut-off cover at ``delta``.

    The outside of the closed ball only changes when ``R`` crosses a vertex distance, so the
    thresholds are the gaps to the neighbouring distance levels.

    Returns
    -------
    dict
        ``above``, ``below`` (thresholds, ``inf`` past the last level), ``equal_within``
        (covers at ``R1`` and ``R1 + above / 2`` compare ``Equal``) and ``verdict_at_next``.
    """
    delta, R1 = to_rational(delta), to_rational(R1)
    basepoint = g.basepoint if basepoint is None else basepoint
    levels = sorted(set(g.distances(basepoint).values()))
    higher = [d for d in levels if d > R1]
    lower = [d for d in levels if d <= R1]
    above = higher[0] - R1 if higher else math.inf
    below = R1 - lower[-1] if lower else math.inf
    step = above / 2 if higher else to_rational(1)
    near = cutoff_closure(g, delta, R1 + step, basepoint)
    at = cutoff_closure(g, delta, R1, basepoint)
    equal = compare_covers(near, at, budget=budget).verdict == EQUAL
    verdict_next = None
    if higher:
        beyond = cutoff_closure(g, delta, higher[0], basepoint)
        verdict_next = compare_covers(beyond, at, budget=budget).verdict
    return {'above': above, 'below': below, 'equal_within': equal,
            'verdict_at_next': verdict_next}


def nontrivial_jump_check(g, basepoint, delta, R0, R1, budget=COSET_BUDGET):
    """
    If ``delta`` is a cut-off value at ``R1`` but not at ``R0 < R1``, the cut-off covers at
    the two radii must differ.

    Returns
    -------
    dict
        ``gained`` (the hypothesis holds), ``verdict`` of comparing the closures and
        ``holds`` (the implication is satisfied; ``Unknown`` never counts as a violation).
    """
    delta, R0, R1 = to_rational(delta), to_rational(R0), to_rational(R1)
    if not R0 < R1:
        raise ParameterError('need R0 < R1')
    basepoint = g.basepoint if basepoint is None else basepoint
    at0 = spectrum_value(g, delta, R=R0, basepoint=basepoint, budget=budget)
    at1 = spectrum_value(g, delta, R=R1, basepoint=basepoint, budget=budget)
    gained = at1 is not None and at1.level != UNKNOWN and at0 is None
    verdict = compare_covers(cutoff_closure(g, delta, R1, basepoint),
                             cutoff_closure(g, delta, R0, basepoint), budget=budget).verdict
    holds = not gained or verdict in (DIFFER, UNKNOWN)
    return {'gained': gained, 'verdict': verdict, 'holds': holds}
