from fractions import Fraction

from .errors import InvalidGraph, ParameterError
from .graphs import EdgePath, MetricGraph
from .numbers import DEFAULT_MESH, to_rational
from .spectra import SymbolicChain, TruncationFamily


class _Builder:
    def __init__(self):
        self.vertices = []
        self.edges = []
        self.faces = []
        self._known = set()

    def vertex(self, v):
        if v not in self._known:
            self._known.add(v)
            self.vertices.append(v)
        return v

    def edge(self, u, v, length):
        self.vertex(u)
        self.vertex(v)
        self.edges.append((u, v, to_rational(length)))
        return len(self.edges) - 1

    def face(self, start, steps):
        self.faces.append(EdgePath(start, steps))

    def circle(self, prefix, length, mesh, anchor):
        """A circle of ``mesh`` equal segments through ``anchor``; returns its vertices."""
        length = to_rational(length)
        if length <= 0:
            raise ParameterError('circle lengths must be positive')
        if mesh < 1:
            raise ParameterError('a circle needs at least one segment')
        ring = [anchor] + ['{}.{}'.format(prefix, k) for k in range(1, mesh)]
        for k in range(mesh):
            self.edge(ring[k], ring[(k + 1) % mesh], length / mesh)
        return ring

    def path(self, vertices, length=1):
        for u, v in zip(vertices, vertices[1:]):
            self.edge(u, v, length)

    def rings(self, prefix, heights, m, girth, shared=None, rung=1):
        """
        Stack rings of ``m`` vertices at the given heights, joined by rungs, with a square
        face between consecutive rings. ``girth(h)`` is the length of ring ``h``.
        """
        if m < 3:
            raise ParameterError('rings need at least 3 vertices')

        def vid(h, a):
            if shared is not None and (h, a) == (heights[0], 0):
                return shared
            return '{}{}.{}'.format(prefix, h, a)

        ring_edge = {}
        for h in heights:
            length = to_rational(girth(h)) / m
            for a in range(m):
                ring_edge[(h, a)] = self.edge(vid(h, a), vid(h, (a + 1) % m), length)
        for h, up in zip(heights, heights[1:]):
            rung_edge = {a: self.edge(vid(h, a), vid(up, a), rung) for a in range(m)}
            for a in range(m):
                self.face(vid(h, a), [(ring_edge[(h, a)], 1), (rung_edge[(a + 1) % m], 1),
                                      (ring_edge[(up, a)], -1), (rung_edge[a], -1)])
        return vid

    def graph(self, basepoint, name):
        return MetricGraph(self.vertices, self.edges, basepoint=basepoint, faces=self.faces,
                           name=name)


def loop_through(g, vertices):
    """
    The closed edge path visiting ``vertices`` in order and returning to the first, along the
    shortest edge between each consecutive pair (which must be adjacent).

    Examples
    --------
    >>> loop_through(cycle(3), ['c0', 'c1', 'c2']).length(cycle(3))
    Fraction(3, 1)
    """
    vertices = list(vertices)
    steps = []
    for u, v in zip(vertices, vertices[1:] + vertices[:1]):
        i = g.shortest_edge(u, v)
        if i is None:
            raise InvalidGraph('`{}` and `{}` are not adjacent'.format(u, v))
        steps.append((i, 1 if g.edges[i][0] == u else -1))
    return EdgePath(vertices[0], steps)


def ring_loop(g, prefix, h, m=6, shared=None):
    """The loop once around ring ``h`` of a ring stack, from its vertex 0."""
    ids = [shared if shared is not None and a == 0 else '{}{}.{}'.format(prefix, h, a)
           for a in range(m)]
    return loop_through(g, ids)


def circle_loop(g, prefix, anchor, mesh=DEFAULT_MESH):
    """The loop once around a circle built with ``prefix`` through ``anchor``."""
    return loop_through(g, [anchor] + ['{}.{}'.format(prefix, k) for k in range(1, mesh)])


def cycle(n, length=None, name=None):
    """
    A cycle on ``n`` vertices ``c0 .. c{n-1}``, unit edges unless a total ``length`` is given.

    Examples
    --------
    >>> cycle(6).diameter()
    Fraction(3, 1)
    """
    if n < 1:
        raise ParameterError('a cycle needs at least one vertex')
    total = Fraction(n) if length is None else to_rational(length)
    b = _Builder()
    ids = ['c{}'.format(k) for k in range(n)]
    for v in ids:
        b.vertex(v)
    for k in range(n):
        b.edge(ids[k], ids[(k + 1) % n], total / n)
    return b.graph('c0', name or 'C{}'.format(n))


def line(a, b, name=None):
    """The path ``l{a} .. l{b}`` with unit edges, based at its first vertex."""
    if b < a:
        raise ParameterError('need a <= b')
    builder = _Builder()
    ids = ['l{}'.format(j) for j in range(a, b + 1)]
    builder.vertex(ids[0])
    builder.path(ids)
    return builder.graph(ids[0], name or 'P[{},{}]'.format(a, b))


def wedge_of_circles(lengths, mesh=DEFAULT_MESH, name=None):
    """
    Circles of the given lengths joined at the vertex ``w``.

    Circle ``i`` has vertices ``c{i}.1 .. c{i}.{mesh-1}``. Its covering spectrum is the set of
    half lengths.

    Examples
    --------
    >>> wedge_of_circles([6, 10]).betti_number()
    2
    """
    b = _Builder()
    b.vertex('w')
    for i, length in enumerate(lengths):
        b.circle('c{}'.format(i), length, mesh, 'w')
    return b.graph('w', name or 'wedge')


HAWAII_RULES = {
    '2/j': lambda j: Fraction(2, j),
    '2+2/j': lambda j: 2 + Fraction(2, j),
    '2-2/j': lambda j: 2 - Fraction(2, j),
}


def hawaii_truncation(n, rule='2+2/j', mesh=DEFAULT_MESH):
    """
    The first ``n`` circles of a Hawaiian ring, lengths given by ``rule``; zero lengths are
    skipped.

    Examples
    --------
    >>> hawaii_truncation(4, '2-2/j').betti_number()
    3
    """
    if rule not in HAWAII_RULES:
        raise ParameterError('rule must be one of {}'.format(sorted(HAWAII_RULES)))
    lengths = [HAWAII_RULES[rule](j) for j in range(1, n + 1)]
    return wedge_of_circles([x for x in lengths if x > 0], mesh=mesh,
                            name='hawaii {} n={}'.format(rule, n))


def product(g1, g2, name=None):
    """
    The Cartesian product graph with the path-sum metric.

    Vertex ``(u, v)`` is named ``'u|v'``. Every pair of edges spans a square face.
    """
    b = _Builder()

    def vid(u, v):
        return '{}|{}'.format(u, v)

    for u in g1.vertices:
        for v in g2.vertices:
            b.vertex(vid(u, v))
    first = {}
    for i, (u, u2, length) in enumerate(g1.edges):
        for v in g2.vertices:
            first[(i, v)] = b.edge(vid(u, v), vid(u2, v), length)
    second = {}
    for j, (v, v2, length) in enumerate(g2.edges):
        for u in g1.vertices:
            second[(j, u)] = b.edge(vid(u, v), vid(u, v2), length)
    for i, (u, u2, _) in enumerate(g1.edges):
        for j, (v, v2, _) in enumerate(g2.edges):
            b.face(vid(u, v), [(first[(i, v)], 1), (second[(j, u2)], 1),
                               (first[(i, v2)], -1), (second[(j, u)], -1)])
    return b.graph(vid(g1.basepoint, g2.basepoint),
                   name or '{} x {}'.format(g1.name, g2.name))


def grid_torus(a, b):
    """
    The product of cycles of ``a`` and ``b`` unit edges, with its square faces.

    Its systoles have lengths ``a`` and ``b``; the faces add the mesh value 2.
    """
    return product(cycle(a), cycle(b), name='torus {}x{}'.format(a, b))


def cylinder(m, n, girth=None, basepoint=None):
    """
    ``n`` rings of ``m`` vertices (``r{h}.{a}``, ``h < n``) joined by unit rungs.

    Parameters
    ----------
    m : int
        Vertices per ring.
    n : int
        Number of rings.
    girth : rational or None
        Ring length, ``m`` by default.
    basepoint : str or None
        Defaults to the middle ring.
    """
    if n < 1:
        raise ParameterError('need at least one ring')
    girth = m if girth is None else girth
    b = _Builder()
    b.rings('r', list(range(n)), m, lambda h: girth)
    basepoint = 'r{}.0'.format(n // 2) if basepoint is None else basepoint
    return b.graph(basepoint, 'cylinder {}x{}'.format(m, n))


def capped_cylinder(m, n, girth=None, basepoint=None):
    """A ``cylinder`` whose ring 0 is coned off to the vertex ``cap`` by triangle faces."""
    if n < 1:
        raise ParameterError('need at least one ring')
    girth = m if girth is None else girth
    b = _Builder()
    vid = b.rings('r', list(range(n)), m, lambda h: girth)
    _cone_off(b, 'cap', [vid(0, a) for a in range(m)])
    basepoint = 'r{}.0'.format(n // 2) if basepoint is None else basepoint
    return b.graph(basepoint, 'capped cylinder {}x{}'.format(m, n))


def _cone_off(b, apex, ring):
    spokes = [b.edge(apex, v, 1) for v in ring]
    m = len(ring)
    for a in range(m):
        rim = None
        for k, (u, v, _) in enumerate(b.edges):
            if (u, v) == (ring[a], ring[(a + 1) % m]):
                rim = k
                break
        b.face(apex, [(spokes[a], 1), (rim, 1), (spokes[(a + 1) % m], -1)])


def cylinder_family(m=6, depth=4):
    """
    Truncations of the two-sided infinite cylinder: level ``n`` has rings ``-(n+2) .. n+2``
    and scope radius ``n + 1`` about ``r0.0``.
    """
    levels = []
    for n in range(depth):
        b = _Builder()
        b.rings('r', list(range(-(n + 2), n + 3)), m, lambda h: m)
        levels.append(b.graph('r0.0', 'cylinder level {}'.format(n)))
    return TruncationFamily(levels, [n + 1 for n in range(depth)], name='cylinder',
                            slipping_limit=m)


def capped_cylinder_family(m=6, depth=4):
    """
    Capped cylinders whose cap drifts off: level ``n`` is capped beyond ring ``-(n+2)`` and
    open beyond ring ``n+2``, based at ``r0.0`` with scope radius ``n + 1``.
    """
    levels = []
    for n in range(depth):
        b = _Builder()
        vid = b.rings('r', list(range(-(n + 2), n + 3)), m, lambda h: m)
        _cone_off(b, 'cap', [vid(-(n + 2), a) for a in range(m)])
        levels.append(b.graph('r0.0', 'capped cylinder level {}'.format(n)))
    return TruncationFamily(levels, [n + 1 for n in range(depth)], name='capped cylinder')


def capped_cylinder_sequence(m=6, schedule=(2, 4, 6)):
    """Pointed capped cylinders with the basepoint ``d`` rings from the cap, ``d`` in
    ``schedule``."""
    out = []
    for d in schedule:
        out.append(capped_cylinder(m, 2 * d + 1, basepoint='r{}.0'.format(d)))
    return out


def line_with_circles(depth, rule='2+2/j', mesh=DEFAULT_MESH):
    """
    The integer points ``l{-depth} .. l{depth}`` of a line, with a circle of length
    ``rule(|j|)`` attached at every ``j != 0``. Based at ``l0``.
    """
    if rule not in HAWAII_RULES:
        raise ParameterError('rule must be one of {}'.format(sorted(HAWAII_RULES)))
    b = _Builder()
    ids = ['l{}'.format(j) for j in range(-depth, depth + 1)]
    b.vertex(ids[0])
    b.path(ids)
    for j in range(-depth, depth + 1):
        length = HAWAII_RULES[rule](abs(j)) if j else 0
        if length > 0:
            b.circle('c{}'.format(j), length, mesh, 'l{}'.format(j))
    return b.graph('l0', 'line with circles {}'.format(depth))


def line_with_circles_family(depth=4, rule='2+2/j', mesh=DEFAULT_MESH):
    """
    Level ``n`` is ``line_with_circles(n + 2)`` with scope radius ``n + 1``. For the default
    rule the values ``1 + 1/j`` form a decreasing chain whose infimum 1 is declared.
    """
    levels = [line_with_circles(n + 2, rule=rule, mesh=mesh) for n in range(depth)]
    chains = [SymbolicChain(1, 1)] if rule == '2+2/j' else []
    return TruncationFamily(levels, [n + 1 for n in range(depth)], chains=chains,
                            name='line with circles')


def wedge_with_ray(lengths, ray=4, mesh=DEFAULT_MESH):
    """``wedge_of_circles`` with a ray ``y1 .. y{ray}`` of unit edges leaving ``w``."""
    b = _Builder()
    b.vertex('w')
    for i, length in enumerate(lengths):
        b.circle('c{}'.format(i), length, mesh, 'w')
    b.path(['w'] + ['y{}'.format(k) for k in range(1, ray + 1)])
    return b.graph('w', 'wedge with ray')


def wedge_with_ray_family(lengths=(6,), depth=4, mesh=DEFAULT_MESH):
    levels = [wedge_with_ray(lengths, ray=n + 2, mesh=mesh) for n in range(depth)]
    return TruncationFamily(levels, [n + 1 for n in range(depth)], name='wedge with ray')


def two_ended_figure(m=6, depth=4):
    """
    Two half-cylinders (rings ``a{h}.*`` and ``b{h}.*``) sharing the vertex ``x`` on their
    first rings. Level ``n`` keeps rings ``0 .. n+2`` of each, scope radius ``n + 1``.

    Filling the faces leaves a free group on the two end circles, and their product cannot be
    pushed into either end.
    """
    levels = []
    for n in range(depth):
        b = _Builder()
        b.rings('a', list(range(n + 3)), m, lambda h: m, shared='x')
        b.rings('b', list(range(n + 3)), m, lambda h: m, shared='x')
        levels.append(b.graph('x', 'two ended level {}'.format(n)))
    return TruncationFamily(levels, [n + 1 for n in range(depth)], name='two ended')


def cusp_girth(h):
    """Ring ``h`` of a cusp has length ``3 + 3/(h+1)``, decreasing to 3."""
    return 3 + Fraction(3, h + 1)


def cusp_family(m=6, depth=4):
    """
    A half-cylinder whose rings shrink toward girth 3: level ``n`` has rings ``0 .. n+2``,
    based at ``r0.0`` with scope radius ``n + 1``. The declared slipping limit is 3.
    """
    levels = []
    for n in range(depth):
        b = _Builder()
        b.rings('r', list(range(n + 3)), m, cusp_girth)
        levels.append(b.graph('r0.0', 'cusp level {}'.format(n)))
    return TruncationFamily(levels, [n + 1 for n in range(depth)], name='cusp',
                            slipping_limit=3)


def cone_with_handle_family(depth=4, handle=2, mesh=4):
    """
    Two rays ``p*`` and ``q*`` leaving the apex ``o`` (a cone over two points) with one handle
    circle of length ``handle`` at the apex. Level ``n`` has rays of length ``n + 2``.
    """
    levels = []
    for n in range(depth):
        b = _Builder()
        b.vertex('o')
        b.circle('h', handle, mesh, 'o')
        b.path(['o'] + ['p{}'.format(k) for k in range(1, n + 3)])
        b.path(['o'] + ['q{}'.format(k) for k in range(1, n + 3)])
        levels.append(b.graph('o', 'cone with handle level {}'.format(n)))
    return TruncationFamily(levels, [n + 1 for n in range(depth)], name='cone with handle')


def _waist_and_ray(b, ray):
    b.vertex('w0')
    for k in range(6):
        b.edge('w{}'.format(k), 'w{}'.format((k + 1) % 6), 1)
    b.path(['w0'] + ['x{}'.format(k) for k in range(1, ray + 1)])


def sliding_handle(distance, ray=None):
    """
    A waist circle ``w0 .. w5`` of length 6 with a ray ``x1, x2, ..`` leaving ``w0`` and a
    handle circle of length 2 attached at ``x{distance}``. ``distance=None`` gives the limit
    without a handle.
    """
    ray = (distance or 0) + 4 if ray is None else ray
    b = _Builder()
    _waist_and_ray(b, ray)
    if distance is not None:
        if not 1 <= distance <= ray:
            raise ParameterError('the handle must sit on the ray')
        b.circle('h', 2, 4, 'x{}'.format(distance))
    return b.graph('w0', 'sliding handle {}'.format(distance))


def sliding_handle_family(schedule=(1, 2, 4, 8)):
    """The handle slides off along the ray: one pointed graph per distance, all with the same
    ray length so the terms share vertex ids."""
    ray = max(schedule) + 4
    return [sliding_handle(d, ray=ray) for d in schedule]


def snapping_circle(length, ray=3, mesh=None):
    """
    ``x`` joined by a unit edge to ``a`` on a circle of ``length``; a ray leaves the point
    of the circle opposite ``a``. As ``length`` grows the circle snaps open.
    """
    length = to_rational(length)
    mesh = max(6, 2 * int(length // 2)) if mesh is None else mesh
    if mesh % 2:
        raise ParameterError('mesh must be even so the antipode is a vertex')
    b = _Builder()
    b.edge('x', 'a', 1)
    ring = b.circle('s', length, mesh, 'a')
    b.path([ring[mesh // 2]] + ['y{}'.format(k) for k in range(1, ray + 1)])
    return b.graph('x', 'snapping circle {}'.format(length))


def snapping_circle_family(schedule=(8, 12, 16, 24), ray=3):
    """One snapping circle per circumference in ``schedule``."""
    return [snapping_circle(length, ray=ray) for length in schedule]


def converging_circle_family(schedule=(2, 4, 8), n=6, length=6):
    """Cycles of total length ``length + length / i`` for ``i`` in ``schedule``."""
    length = to_rational(length)
    return [cycle(n, length=length + length / to_rational(i),
                  name='C{} of length {}'.format(n, length + length / to_rational(i)))
            for i in schedule]


def snapping_limit(arm=6, ray=3):
    """The snapped limit: a tree with arms of length ``arm`` on both sides of ``a``."""
    b = _Builder()
    b.edge('x', 'a', 1)
    b.path(['a'] + ['s{}'.format(k) for k in range(1, arm + 1)])
    b.path(['a'] + ['t{}'.format(k) for k in range(1, arm + 1)])
    b.path(['s{}'.format(arm)] + ['y{}'.format(k) for k in range(1, ray + 1)])
    return b.graph('x', 'snapped limit')


def r_boundary_graph(r, ray=3):
    """
    ``x`` joined by an edge of length ``r`` to ``s`` on a unit 6-cycle, with a ray leaving the
    antipode of ``s``.
    """
    b = _Builder()
    b.edge('x', 's', r)
    ring = b.circle('c', 6, 6, 's')
    b.path([ring[3]] + ['y{}'.format(k) for k in range(1, ray + 1)])
    return b.graph('x', 'r boundary {}'.format(to_rational(r)))


def r_boundary_sequence(schedule=(1, 2, 3, 4), R1=2):
    """Terms with ``r_i = R1 + 1/i`` decreasing to ``R1``, the limit's circle distance."""
    return [r_boundary_graph(to_rational(R1) + Fraction(1, i)) for i in schedule]


class ZooRecipe:
    """
    A named constructor with default parameters and expected spectra.

    ``expected`` maps a spectrum kind to ``(values, provenance)`` where provenance is
    ``'known'`` or ``'derived'``; ``kind`` says whether the builder returns a ``'graph'``, a
    ``'family'`` or a ``'sequence'``.
    """

    def __init__(self, name, builder, defaults, kind='graph', expected=None, description=''):
        self.name = name
        self.builder = builder
        self.defaults = dict(defaults)
        self.kind = kind
        self.expected = dict(expected or {})
        self.description = description

    def __repr__(self):
        return '<ZooRecipe {}> {} {}'.format(self.name, self.kind, self.defaults)

    def build(self, **params):
        unknown = set(params) - set(self.defaults)
        if unknown:
            raise ParameterError('unknown parameters for {}: {}'.format(self.name,
                                                                      sorted(unknown)))
        merged = dict(self.defaults)
        merged.update(params)
        return self.builder(**merged)


def _values(*xs):
    return [to_rational(x) for x in xs]


RECIPES = {
    'wedge': ZooRecipe('wedge', wedge_of_circles, {'lengths': [6, 10], 'mesh': DEFAULT_MESH},
                       expected={'covering': (_values(3, 5), 'known')},
                       description='circles joined at a point'),
    'hawaii': ZooRecipe('hawaii', hawaii_truncation, {'n': 4, 'rule': '2+2/j',
                                                      'mesh': DEFAULT_MESH},
                        expected={'covering': (_values(2, '3/2', '4/3', '5/4'), 'known')},
                        description='truncated Hawaiian ring'),
    'cycle': ZooRecipe('cycle', cycle, {'n': 6},
                       expected={'covering': (_values(3), 'known')}),
    'line': ZooRecipe('line', line, {'a': 0, 'b': 6},
                      expected={'covering': ([], 'known')}, description='a tree'),
    'torus': ZooRecipe('torus', grid_torus, {'a': 6, 'b': 8},
                       expected={'covering': (_values(2, 3, 4), 'derived')},
                       description='grid torus; 2 is a mesh value'),
    'cylinder': ZooRecipe('cylinder', cylinder, {'m': 6, 'n': 20},
                          expected={'covering': (_values(2, 3), 'derived'),
                                    'r-cutoff': ([], 'known')},
                          description='finite cylinder; 2 is a mesh value'),
    'capped-cylinder': ZooRecipe('capped-cylinder', capped_cylinder, {'m': 6, 'n': 10},
                                 expected={'covering': ([], 'derived')},
                                 description='all values are mesh values'),
    'line-with-circles': ZooRecipe('line-with-circles', line_with_circles,
                                   {'depth': 6, 'rule': '2+2/j', 'mesh': DEFAULT_MESH},
                                   description='circles attached at the integers'),
    'wedge-with-ray': ZooRecipe('wedge-with-ray', wedge_with_ray,
                                {'lengths': [6], 'ray': 4, 'mesh': DEFAULT_MESH},
                                expected={'covering': (_values(3), 'known')}),
    'sliding-handle': ZooRecipe('sliding-handle', sliding_handle,
                                {'distance': 3, 'ray': None}),
    'snapping-circle': ZooRecipe('snapping-circle', snapping_circle,
                                 {'length': 12, 'ray': 3, 'mesh': None}),
    'r-boundary': ZooRecipe('r-boundary', r_boundary_graph, {'r': 2, 'ray': 3}),
    'cylinder-family': ZooRecipe('cylinder-family', cylinder_family, {'m': 6, 'depth': 4},
                                 kind='family', expected={'cutoff': ([], 'known')}),
    'capped-cylinder-family': ZooRecipe('capped-cylinder-family', capped_cylinder_family,
                                        {'m': 6, 'depth': 4}, kind='family',
                                        expected={'cutoff': ([], 'known')}),
    'line-with-circles-family': ZooRecipe('line-with-circles-family',
                                          line_with_circles_family,
                                          {'depth': 4, 'rule': '2+2/j',
                                           'mesh': DEFAULT_MESH},
                                          kind='family',
                                          expected={'cutoff': (_values(1, '5/4', '4/3', '3/2',
                                                                       2), 'known')}),
    'two-ended': ZooRecipe('two-ended', two_ended_figure, {'m': 6, 'depth': 3},
                           kind='family'),
    'cusp': ZooRecipe('cusp', cusp_family, {'m': 6, 'depth': 4}, kind='family'),
    'cone-with-handle': ZooRecipe('cone-with-handle', cone_with_handle_family,
                                  {'depth': 4, 'handle': 2, 'mesh': 4}, kind='family',
                                  expected={'cutoff': (_values(1), 'derived')}),
    'wedge-with-ray-family': ZooRecipe('wedge-with-ray-family', wedge_with_ray_family,
                                       {'lengths': [6], 'depth': 4, 'mesh': DEFAULT_MESH},
                                       kind='family'),
    'sliding-handle-sequence': ZooRecipe('sliding-handle-sequence', sliding_handle_family,
                                         {'schedule': [1, 2, 4, 8]}, kind='sequence'),
    'r-boundary-sequence': ZooRecipe('r-boundary-sequence', r_boundary_sequence,
                                     {'schedule': [1, 2, 3, 4], 'R1': 2}, kind='sequence'),
    'capped-cylinder-sequence': ZooRecipe('capped-cylinder-sequence',
                                          capped_cylinder_sequence,
                                          {'m': 6, 'schedule': [2, 4, 6]}, kind='sequence'),
}


def build(name, **params):
    """
    Build a zoo space by recipe name.

    Examples
    --------
    >>> build('wedge', lengths=[8]).betti_number()
    1
    """
    if name not in RECIPES:
        raise ParameterError('unknown zoo space `{}`; known: {}'.format(name,
                                                                        ', '.join(RECIPES)))
    return RECIPES[name].build(**params)
