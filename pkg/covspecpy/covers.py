import heapq

from fractions import Fraction

from .errors import DeckTransformationError, LoopOutsideBall, ParameterError, UnresolvedQuotient
from .free_group import (ClassLength, canonical_class, cyclic_reduce, enumerate_classes,
                         resolve_quotient, normal_closure_member, abelian_witness, reduce_word,
                         find_closure_witness, multiply)
from .graphs import (EdgePath, MetricGraph, ball, complement_subgraph, spanning_tree,
                     loop_to_word, word_to_loop, loop_in_ball)
from .numbers import COSET_BUDGET, MAX_CLASSES, to_rational
from .utils import YES, NO, UNKNOWN, EQUAL, DIFFER, _vertex_key, _init_tqdm, _tick_tqdm, \
    _flush_tqdm


BALL_CLASS = 'ball-class'
OUTSIDE_LOOP = 'outside-loop'


class NormalGenerator:
    def __init__(self, word, cls, origin):
        self.word = reduce_word(word)
        self.cyclic = canonical_class(self.word)
        self.cls = cls
        self.length = cls.length
        self.origin = origin

    def __repr__(self):
        return '<NormalGenerator {}> {} length {}'.format(self.origin, list(self.word),
                                                         self.length)


class ClosurePresentation:
    """
    Normal generators presenting ``pi_1(X, delta)`` (or its cut-off version) in the free
    fundamental group of a graph.

    ``inclusive`` closures use the classes of length ``<= 2 delta`` and present the cover for
    every ``delta'`` just above ``delta``.
    """

    def __init__(self, graph, generators, delta, R=None, basepoint=None, inclusive=False):
        self.graph = graph
        self.rank = spanning_tree(graph).rank
        self.generators = list(generators)
        self.delta = delta
        self.R = R
        self.basepoint = graph.basepoint if basepoint is None else basepoint
        self.inclusive = inclusive
        self._classes = set(gen.cyclic for gen in self.generators)

    def __repr__(self):
        return '<ClosurePresentation> delta={}{} rank {} with {} generators'.format(
            self.delta, '' if self.R is None else ' R={}'.format(self.R), self.rank,
            len(self.generators))

    def __contains__(self, word):
        return canonical_class(word) in self._classes

    def words(self):
        return [gen.word for gen in self.generators]

    def ball_generators(self):
        return [gen for gen in self.generators if gen.origin == BALL_CLASS]

    def outside_generators(self):
        return [gen for gen in self.generators if gen.origin == OUTSIDE_LOOP]

    def quotient(self, budget=COSET_BUDGET):
        return resolve_quotient(self.rank, self.words(), budget=budget)


class CoverComparison:
    """
    The verdict of ``compare_covers``.

    ``level`` names the evidence: ``'identical'`` (same generators), ``'exact'`` (a resolved
    quotient model), ``'homology'`` (an exponent-sum obstruction) or ``'membership'`` (per
    generator normal-closure membership). ``products`` maps generators that only a bounded
    search placed in the closure to their ``ClosureWitness``.
    """

    def __init__(self, verdict, witness=None, level=None, budget=None, checked=0,
                 products=None):
        self.verdict = verdict
        self.witness = witness
        self.level = level
        self.budget = budget
        self.checked = checked
        self.products = dict(products or {})

    def __repr__(self):
        return '<CoverComparison {}> level={} witness={}'.format(
            self.verdict, self.level, None if self.witness is None else list(self.witness))


def _ball_generators(g, delta, inclusive, classes, max_classes, verbose):
    bound = 2 * delta
    if classes is None:
        classes = enumerate_classes(g, bound, strict=not inclusive, max_classes=max_classes,
                                    verbose=verbose)
    keep = [c for c in classes if (c.length <= bound if inclusive else c.length < bound)]
    return [NormalGenerator(c.cyclic, c, BALL_CLASS) for c in keep]


def delta_closure(g, delta, inclusive=False, classes=None, max_classes=MAX_CLASSES,
                  verbose=False):
    """
    Present ``pi_1(X, delta)`` as the normal closure of all classes with ``L(g) < 2 delta``.

    Parameters
    ----------
    g : MetricGraph
    delta : rational
    inclusive : bool
        Use ``L(g) <= 2 delta`` instead.
    classes : list of ClassLength or None
        Pre-enumerated classes covering lengths up to ``2 delta``.
    max_classes : int
    verbose : bool

    Returns
    -------
    ClosurePresentation

    Examples
    --------
    >>> len(delta_closure(cycle(6), 2).generators)
    0
    >>> len(delta_closure(cycle(6), '7/2').generators)
    1
    """
    delta = to_rational(delta)
    if delta <= 0:
        raise ParameterError('delta must be positive')
    generators = _ball_generators(g, delta, inclusive, classes, max_classes, verbose)
    return ClosurePresentation(g, generators, delta, inclusive=inclusive)


def outside_generators(g, R, basepoint=None):
    """
    A free basis of loops for each component of the complement of the closed ball
    ``B(basepoint, R)``, read as ambient words.

    Each component is rooted at its vertex nearest the basepoint (ties by vertex id).
    """
    basepoint = g.basepoint if basepoint is None else basepoint
    fragment = complement_subgraph(g, ball(g, basepoint, R, closed=True))
    dist = g.distances(basepoint)
    out = []
    for k, component in enumerate(fragment.components):
        root = min(component.vertices, key=lambda v: (dist[v], _vertex_key(v)))
        sub, edge_map = fragment.component_graph(k, basepoint=root)
        tree = spanning_tree(sub)
        for letter in range(1, tree.rank + 1):
            local = word_to_loop(sub, (letter,), tree)
            loop = EdgePath(root, [(edge_map[i], d) for i, d in local.steps])
            reduced = loop.cyclically_reduced(g)
            word = loop_to_word(g, loop)
            out.append(NormalGenerator(word, ClassLength(word, reduced.length(g), reduced),
                                       OUTSIDE_LOOP))
    return out


def cutoff_closure(g, delta, R, basepoint=None, inclusive=False, classes=None,
                   max_classes=MAX_CLASSES, verbose=False):
    """
    Present ``pi_1(X, delta, R)``: the ball classes of ``delta_closure`` together with every
    loop lying outside the closed ball ``B(basepoint, R)``.

    Examples
    --------
    >>> p = cutoff_closure(cylinder(6, 10), '1/2', 2)
    >>> len(p.ball_generators())
    0
    """
    delta = to_rational(delta)
    R = to_rational(R)
    if delta <= 0 or R <= 0:
        raise ParameterError('delta and R must be positive')
    basepoint = g.basepoint if basepoint is None else basepoint
    generators = _ball_generators(g, delta, inclusive, classes, max_classes, verbose)
    seen = set(gen.cyclic for gen in generators)
    for gen in outside_generators(g, R, basepoint):
        if gen.cyclic not in seen:
            seen.add(gen.cyclic)
            generators.append(gen)
    return ClosurePresentation(g, generators, delta, R=R, basepoint=basepoint,
                               inclusive=inclusive)


def compare_covers(p1, p2, budget=COSET_BUDGET):
    """
    Compare the normal closures of two presentations, the first contained in the second.

    Parameters
    ----------
    p1, p2 : ClosurePresentation
    budget : int
        Coset budget for every enumeration involved.

    Returns
    -------
    CoverComparison
        ``Differ`` when some generator of ``p2`` is certified outside the closure of ``p1``,
        ``Equal`` when all are certified inside, otherwise ``Unknown``.
    """
    extra = [gen for gen in p2.generators if gen.cyclic not in p1._classes]
    if not extra:
        return CoverComparison(EQUAL, level='identical', budget=budget)
    rank = max(p1.rank, p2.rank)
    try:
        model = resolve_quotient(rank, p1.words(), budget=budget)
    except UnresolvedQuotient:
        model = None

    if model is not None:
        for gen in extra:
            if not model.is_trivial(gen.word):
                return CoverComparison(DIFFER, witness=gen.word, level='exact', budget=budget,
                                       checked=len(extra))
        return CoverComparison(EQUAL, level='exact', budget=budget, checked=len(extra))

    witness = abelian_witness([gen.word for gen in extra], p1.words(), rank)
    if witness is not None:
        return CoverComparison(DIFFER, witness=witness, level='homology', budget=budget,
                               checked=len(extra))
    unknown = None
    witnesses = {}
    for gen in extra:
        verdict = normal_closure_member(gen.word, p1.words(), budget=budget)
        if verdict == NO:
            return CoverComparison(DIFFER, witness=gen.word, level='membership',
                                   budget=budget, checked=len(extra))
        if verdict == UNKNOWN:
            found = find_closure_witness(gen.word, p1.words())
            if found is not None:
                witnesses[gen.word] = found
            elif unknown is None:
                unknown = gen.word
    if unknown is not None:
        return CoverComparison(UNKNOWN, witness=unknown, level='membership', budget=budget,
                               checked=len(extra))
    return CoverComparison(EQUAL, level='membership', budget=budget, checked=len(extra),
                           products=witnesses)


class CoverBall:
    """
    A ball in the cover of a graph determined by a closure presentation.

    Lifted vertices are pairs ``(vertex, label)`` where ``label`` is an element of the
    quotient ``pi_1 / N`` in the canonical form of its ``QuotientModel``.
    """

    def __init__(self, presentation, model, center, radius, distances, edges):
        self.presentation = presentation
        self.graph = presentation.graph
        self.model = model
        self.center = center
        self.radius = radius
        self.distances = distances
        self.edges = edges

    def __repr__(self):
        return '<CoverBall> radius {} with {} vertices and {} edges'.format(
            self.radius, len(self.distances), len(self.edges))

    def __len__(self):
        return len(self.distances)

    def nodes(self):
        return sorted(self.distances, key=lambda n: (self.distances[n], _vertex_key(n[0]),
                                                     str(n[1])))

    def cycle_rank(self):
        return len(self.edges) - len(self.distances) + 1

    def lifts_closed(self, loop):
        """Whether the lift of a closed path is closed."""
        word = loop if isinstance(loop, tuple) else loop_to_word(self.graph, loop)
        return self.model.is_trivial(word)

    def _upstairs_distances(self, source, limit):
        adjacency = {}
        for i, tail, head in self.edges:
            adjacency.setdefault(tail, []).append((head, self.graph.length(i)))
            adjacency.setdefault(head, []).append((tail, self.graph.length(i)))
        dist = {source: Fraction(0)}
        heap = [(Fraction(0), 0, source)]
        counter = 1
        while heap:
            d, _, node = heapq.heappop(heap)
            if d > dist[node]:
                continue
            for other, length in adjacency.get(node, []):
                nd = d + length
                if nd < limit and (other not in dist or nd < dist[other]):
                    dist[other] = nd
                    heapq.heappush(heap, (nd, counter, other))
                    counter += 1
        return dist

    def check_local_isometry(self):
        """
        Check that projection is an isometry on every ball of radius ``delta / 2`` around an
        interior lift, and onto the ball downstairs. Returns a list of violations.
        """
        half = self.presentation.delta / 2
        violations = []
        for node, d in self.distances.items():
            if d + half > self.radius:
                continue
            up = self._upstairs_distances(node, half)
            down = self.graph.distances(node[0])
            reached = set()
            for other, du in up.items():
                reached.add(other[0])
                if down[other[0]] != du:
                    violations.append((node, other, du, down[other[0]]))
            for v, dv in down.items():
                if dv < half and v not in reached:
                    violations.append((node, v, None, dv))
        return violations

    def deck_check(self, samples=3):
        """
        Translate the ball by a few deck transformations and check that lifted edges map to
        lifted edges. Returns the number of edges checked.
        """
        letters = self.model.presentation.letters[:samples]
        tree = spanning_tree(self.graph)
        checked = 0
        for x in letters:
            h = self.model.label((x,))
            for i, tail, head in self.edges:
                k = tree.letter(i)
                moved_tail = self._translate(h, tail[1])
                expected = moved_tail if k is None else self.model.step(moved_tail, k)
                if expected != self._translate(h, head[1]):
                    raise DeckTransformationError('deck translation does not preserve edge {}'
                                                   .format(i))
                checked += 1
        return checked

    def _translate(self, h, label):
        model = self.model
        if model.kind == 'free':
            return reduce_word(h + label)
        if model.kind == 'abelian':
            return model.lattice.reduce([a + b for a, b in zip(h, label)])
        if not hasattr(self, '_coset_words'):
            self._coset_words = model.table.spanning_words(model.presentation.letters)
        return model.table.trace(h, self._coset_words[label], create=False)

    def to_graph(self):
        """
        Export as a ``MetricGraph`` with vertex ids ``'<vertex>@<k>'``; ``labels`` maps each id
        to its quotient label.
        """
        order = self.nodes()
        label_index = {}
        for node in order:
            label_index.setdefault(node[1], len(label_index))
        ids = {node: '{}@{}'.format(node[0], label_index[node[1]]) for node in order}
        edges = [(ids[tail], ids[head], self.graph.length(i)) for i, tail, head in self.edges]
        labels = {ids[n]: str(list(n[1]) if isinstance(n[1], tuple) else n[1]) for n in order}
        return MetricGraph([ids[n] for n in order], edges, basepoint=ids[self.center],
                           name='cover', labels=labels)


def build_cover_ball(p, radius, center=None, budget=COSET_BUDGET, verbose=False):
    """
    Build the closed ball of the given radius in the cover presented by ``p``.

    Parameters
    ----------
    p : ClosurePresentation
    radius : rational
    center : vertex id or None
        The vertex whose identity lift is the center; defaults to the basepoint.
    budget : int
    verbose : bool

    Returns
    -------
    CoverBall

    Raises
    ------
    UnresolvedQuotient
        When no exact quotient model is available.

    Examples
    --------
    >>> len(build_cover_ball(delta_closure(cycle(6), 2), 9))
    19
    """
    radius = to_rational(radius)
    g = p.graph
    model = p.quotient(budget=budget)
    tree = spanning_tree(g)
    center = (g.basepoint if center is None else center, model.identity())
    if verbose:
        print('Lifting ball of radius {}...'.format(radius))
    pbar = _init_tqdm(verbose=verbose)
    dist = {center: Fraction(0)}
    heap = [(Fraction(0), 0, center)]
    counter = 1
    while heap:
        d, _, node = heapq.heappop(heap)
        if d > dist[node]:
            continue
        _tick_tqdm(pbar)
        v, label = node
        for i, direction, other in g.incident(v):
            k = tree.letter(i)
            new_label = label if k is None else model.step(label, k * direction)
            nd = d + g.length(i)
            target = (other, new_label)
            if nd <= radius and (target not in dist or nd < dist[target]):
                dist[target] = nd
                heapq.heappush(heap, (nd, counter, target))
                counter += 1
    _flush_tqdm(pbar)

    edges = []
    for node in dist:
        v, label = node
        for i, direction, other in g.incident(v):
            if direction != 1:
                continue
            k = tree.letter(i)
            head = (other, label if k is None else model.step(label, k))
            if head in dist:
                edges.append((i, node, head))
    edges.sort(key=lambda e: (e[0], dist[e[1]], str(e[1][1])))
    if verbose:
        print('...Lifted {} vertices!'.format(len(dist)))
    return CoverBall(p, model, center, radius, dist, edges)


def ball_loop_decompose(g, loop, center, delta):
    """
    Split a loop lying in the open ball ``B(center, delta)`` into loops shorter than
    ``2 delta``, each in the same ball, whose ordered product is conjugate to the input.

    Each piece is a thin triangle: a shortest path out from ``center``, one edge of the loop,
    and a shortest path back.

    Returns
    -------
    list of EdgePath
        Loops based at ``center``; pieces with trivial word are dropped.
    """
    delta = to_rational(delta)
    if not loop_in_ball(g, loop, center, delta):
        raise LoopOutsideBall('loop is not inside the open ball of radius {} at {}'.format(
            delta, center))
    if loop.length(g) < 2 * delta:
        return [loop]
    if not loop_to_word(g, loop):
        return []
    tree = spanning_tree(g, root=center)
    vertices = loop.vertices(g)
    pieces = []
    for k, step in enumerate(loop.steps):
        out = tree.path_from_root(vertices[k])
        back = tree.path_to_root(vertices[k + 1])
        piece = EdgePath(center, out.steps + (step,) + back.steps).reduced()
        if loop_to_word(g, piece):
            pieces.append(piece)
    return pieces


def decomposition_matches(g, loop, pieces):
    """Whether the product of the pieces' words is conjugate to the loop's word."""
    product = multiply(*[loop_to_word(g, piece) for piece in pieces])
    word = loop_to_word(g, loop)
    u, v = cyclic_reduce(product), cyclic_reduce(word)
    return len(u) == len(v) and (not u or any(v[k:] + v[:k] == u for k in range(len(v))))


def is_cut_trivial(g, loop, delta, R, basepoint=None, budget=COSET_BUDGET):
    """
    Whether a loop's class lies in ``pi_1(X, delta, R)``.

    Parameters
    ----------
    g : MetricGraph
    loop : EdgePath or tuple
        A closed path, or directly its word.
    delta, R : rational
    basepoint : vertex id or None
    budget : int

    Returns
    -------
    str
        ``'Yes'``, ``'No'`` or ``'Unknown'``.
    """
    word = loop if isinstance(loop, tuple) else loop_to_word(g, loop)
    p = cutoff_closure(g, delta, R, basepoint=basepoint)
    try:
        model = p.quotient(budget=budget)
    except UnresolvedQuotient:
        return normal_closure_member(word, p.words(), budget=budget)
    return YES if model.is_trivial(word) else NO
