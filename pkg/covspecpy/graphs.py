import networkx as nx

from fractions import Fraction

from .errors import InvalidGraph, UnknownVertex, ParameterError, CovspecError
from .numbers import to_rational
from .rng import _get_rng
from .utils import _vertex_key


class EdgePath:
    """
    A walk in a metric graph: a start vertex and a sequence of ``(edge index, direction)`` steps.

    Direction ``+1`` traverses an edge ``(u, v, length)`` from ``u`` to ``v`` and ``-1`` from
    ``v`` to ``u``. Paths do not hold a reference to their graph, so the derived quantities
    take the graph as an argument.
    """

    def __init__(self, start, steps=()):
        self.start = start
        self.steps = tuple((int(i), int(d)) for i, d in steps)
        for _, d in self.steps:
            if d not in (1, -1):
                raise ParameterError('step directions must be 1 or -1, got {}'.format(d))

    def __repr__(self):
        return '<EdgePath> start={} steps={}'.format(self.start, list(self.steps))

    def __eq__(self, other):
        return (isinstance(other, EdgePath) and self.start == other.start and
                self.steps == other.steps)

    def __hash__(self):
        return hash((self.start, self.steps))

    def __len__(self):
        return len(self.steps)

    def vertices(self, g):
        out = [self.start]
        for step in self.steps:
            out.append(g.traverse(out[-1], step))
        return out

    def end(self, g):
        return self.vertices(g)[-1]

    def length(self, g):
        return sum((g.length(i) for i, _ in self.steps), Fraction(0))

    def is_loop(self, g):
        return self.end(g) == self.start

    def inverse(self, g):
        return EdgePath(self.end(g), [(i, -d) for i, d in reversed(self.steps)])

    def concat(self, other, g):
        if self.end(g) != other.start:
            raise CovspecError('cannot join a path ending at {} to one starting at {}'.format(
                self.end(g), other.start))
        return EdgePath(self.start, self.steps + other.steps)

    def reduced(self):
        """Remove every immediate backtrack ``e e^-1``."""
        stack = []
        for i, d in self.steps:
            if stack and stack[-1] == (i, -d):
                stack.pop()
            else:
                stack.append((i, d))
        return EdgePath(self.start, stack)

    def cyclically_reduced(self, g):
        """Reduce a closed path and strip inverse first/last steps, moving the start."""
        path = self.reduced()
        start = path.start
        steps = list(path.steps)
        while len(steps) >= 2 and steps[0] == (steps[-1][0], -steps[-1][1]):
            start = g.traverse(start, steps[0])
            steps = steps[1:-1]
        return EdgePath(start, steps)


class MetricGraph:
    """
    A finite connected graph with exact positive rational edge lengths.

    Parameters
    ----------
    vertices : list
        Vertex ids (ints or strings), all distinct.
    edges : list
        ``(u, v, length)`` triples. Lengths are parsed with ``to_rational``. Parallel edges and
        self-loops are allowed; the position in this list is the stable edge index.
    basepoint : vertex id or None
        Defaults to the first vertex.
    faces : list or None
        Closed ``EdgePath`` loops marking 2-cells of a discretized surface. They never change
        the graph's own fundamental group; spectra use them to flag mesh artifacts.
    name : str or None
        A label used in reports.
    labels : dict or None
        Optional per-vertex strings, used by exported cover balls for coset labels.

    Examples
    --------
    >>> g = MetricGraph([0, 1, 2], [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    >>> g.distance(0, 2)
    Fraction(1, 1)
    """

    def __init__(self, vertices, edges, basepoint=None, faces=None, name=None, labels=None):
        self.vertices = list(vertices)
        if len(self.vertices) == 0:
            raise InvalidGraph('a metric graph needs at least one vertex')
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraph('vertex ids must be distinct')
        for v in self.vertices:
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise InvalidGraph('vertex ids must be ints or strings, got `{}`'.format(v))
        known = set(self.vertices)

        self.edges = []
        for u, v, length in edges:
            if u not in known or v not in known:
                raise UnknownVertex('edge ({}, {}) uses an unknown vertex'.format(u, v))
            length = to_rational(length)
            if length <= 0:
                raise InvalidGraph('edge lengths must be positive, got {}'.format(length))
            self.edges.append((u, v, length))

        self.basepoint = self.vertices[0] if basepoint is None else basepoint
        if self.basepoint not in known:
            raise UnknownVertex('unknown basepoint `{}`'.format(self.basepoint))
        self.name = name
        self.labels = dict(labels or {})

        self._nx = nx.MultiGraph()
        self._nx.add_nodes_from(self.vertices)
        self._adjacency = {v: [] for v in self.vertices}
        for i, (u, v, length) in enumerate(self.edges):
            self._nx.add_edge(u, v, key=i, length=length)
            self._adjacency[u].append((i, 1, v))
            self._adjacency[v].append((i, -1, u))
        for v in self.vertices:
            self._adjacency[v].sort(key=lambda t: (t[0], t[1]))
        if not nx.is_connected(self._nx):
            raise InvalidGraph('metric graphs must be connected')

        self.faces = []
        for face in (faces or []):
            if not isinstance(face, EdgePath):
                face = EdgePath(face[0], face[1])
            self._check_path(face)
            if not face.is_loop(self):
                raise InvalidGraph('faces must be closed paths')
            self.faces.append(face)

        self._distance_cache = {}
        self._geodesic_cache = {}
        self._tree_cache = {}

    def __repr__(self):
        return '<MetricGraph{}> {} vertices, {} edges, basepoint={}'.format(
            ' ' + self.name if self.name else '', len(self.vertices), len(self.edges),
            self.basepoint)

    def __eq__(self, other):
        return (isinstance(other, MetricGraph) and self.vertices == other.vertices and
                self.edges == other.edges and self.basepoint == other.basepoint and
                self.faces == other.faces and self.labels == other.labels)

    def __hash__(self):
        return hash((tuple(self.vertices), tuple(self.edges), self.basepoint))

    def _check_vertex(self, v):
        if v not in self._adjacency:
            raise UnknownVertex('unknown vertex `{}`'.format(v))

    def _check_path(self, path):
        self._check_vertex(path.start)
        path.vertices(self)

    def length(self, i):
        return self.edges[i][2]

    def incident(self, v):
        """List ``(edge index, direction, other endpoint)`` for every edge end at ``v``."""
        self._check_vertex(v)
        return self._adjacency[v]

    def traverse(self, v, step):
        i, d = step
        if i < 0 or i >= len(self.edges):
            raise InvalidGraph('unknown edge index {}'.format(i))
        u, w, _ = self.edges[i]
        tail, head = (u, w) if d == 1 else (w, u)
        if tail != v:
            raise InvalidGraph('edge {} in direction {} does not leave `{}`'.format(i, d, v))
        return head

    def distances(self, source):
        self._check_vertex(source)
        if source not in self._distance_cache:
            raw = nx.single_source_dijkstra_path_length(self._nx, source, weight='length')
            self._distance_cache[source] = {v: Fraction(d) for v, d in raw.items()}
        return self._distance_cache[source]

    def distance(self, u, v):
        self._check_vertex(v)
        return self.distances(u)[v]

    def diameter(self):
        return max(max(self.distances(v).values()) for v in self.vertices)

    def betti_number(self):
        return len(self.edges) - len(self.vertices) + 1

    def edge_farthest(self, center, i):
        """Distance from ``center`` to the farthest point of edge ``i``."""
        u, v, length = self.edges[i]
        dist = self.distances(center)
        return (dist[u] + dist[v] + length) / 2

    def shortest_edge(self, u, v):
        best = None
        for i, _, other in self.incident(u):
            if other == v and (best is None or (self.length(i), i) < (self.length(best), best)):
                best = i
        return best

    def with_basepoint(self, basepoint):
        return MetricGraph(self.vertices, self.edges, basepoint=basepoint, faces=self.faces,
                           name=self.name, labels=self.labels)


class BallSubgraph:
    def __init__(self, center, radius, closed, vertices, edges):
        self.center = center
        self.radius = radius
        self.closed = closed
        self.vertices = frozenset(vertices)
        self.edges = tuple(edges)

    def __repr__(self):
        return '<BallSubgraph> {} ball at {} radius {} ({} vertices)'.format(
            'closed' if self.closed else 'open', self.center, self.radius, len(self.vertices))

    def __contains__(self, v):
        return v in self.vertices


class FragmentComponent:
    def __init__(self, tag, vertices, edges):
        self.tag = tag
        self.vertices = frozenset(vertices)
        self.edges = tuple(edges)

    def __repr__(self):
        return '<FragmentComponent {}> {} vertices, {} edges'.format(
            self.tag, len(self.vertices), len(self.edges))


class GraphFragment:
    """A possibly empty, possibly disconnected induced subgraph, split into components."""

    def __init__(self, g, vertices, edges, components):
        self.graph = g
        self.vertices = frozenset(vertices)
        self.edges = tuple(edges)
        self.components = list(components)

    def __repr__(self):
        return '<GraphFragment> {} vertices in {} components'.format(len(self.vertices),
                                                                     len(self.components))

    def is_empty(self):
        return len(self.vertices) == 0

    def component_graph(self, k, basepoint=None):
        return induced_subgraph(self.graph, self.components[k].vertices, basepoint=basepoint)


class SpanningTree:
    """
    Deterministic shortest-path spanning tree with its ordered co-tree edges.

    Each non-root vertex hangs from the neighbour ``u`` on a shortest path to the root that
    minimises ``(vertex key of u, edge index)``. Co-tree edges are sorted by index, and the
    co-tree edge in position ``k`` is the free generator ``k + 1``.
    """

    def __init__(self, g, root=None):
        self.graph = g
        self.root = g.basepoint if root is None else root
        dist = g.distances(self.root)
        self.parent = {}
        for v in sorted(g.vertices, key=lambda v: (dist[v], _vertex_key(v))):
            if v == self.root:
                continue
            best = None
            for i, d, other in g.incident(v):
                if other == v or dist[other] + g.length(i) != dist[v]:
                    continue
                candidate = (_vertex_key(other), i)
                if best is None or candidate < best[0]:
                    best = (candidate, other, (i, -d))
            self.parent[v] = (best[1], best[2])
        tree_edges = set(step[0] for _, step in self.parent.values())
        self.cotree = tuple(i for i in range(len(g.edges)) if i not in tree_edges)
        self._letters = {i: k + 1 for k, i in enumerate(self.cotree)}
        self._paths = {self.root: ()}

    @property
    def rank(self):
        return len(self.cotree)

    def letter(self, i):
        return self._letters.get(i)

    def path_from_root(self, v):
        if v not in self._paths:
            up, step = self.parent[v]
            self._paths[v] = self.path_from_root(up).steps + (step,)
        return EdgePath(self.root, self._paths[v])

    def path_to_root(self, v):
        return self.path_from_root(v).inverse(self.graph)


def shortest_distances(g, source):
    """
    Exact shortest-path distances from ``source``.

    Parameters
    ----------
    g : MetricGraph
    source : vertex id

    Returns
    -------
    dict
        Vertex id to ``Fraction``.

    Examples
    --------
    >>> shortest_distances(cycle(4), 'c0')
    {'c0': Fraction(0, 1), 'c1': Fraction(1, 1), 'c3': Fraction(1, 1), 'c2': Fraction(2, 1)}
    """
    return dict(g.distances(source))


def ball(g, center, radius, closed=False):
    """
    The open (or closed) ball of vertices around ``center``.

    An edge belongs to the ball subgraph iff both of its endpoints do.

    Parameters
    ----------
    g : MetricGraph
    center : vertex id
    radius : rational
        Must be positive.
    closed : bool
        Use ``<=`` instead of ``<``.

    Returns
    -------
    BallSubgraph
    """
    radius = to_rational(radius)
    if radius <= 0:
        raise ParameterError('ball radius must be positive')
    dist = g.distances(center)
    if closed:
        vertices = [v for v in g.vertices if dist[v] <= radius]
    else:
        vertices = [v for v in g.vertices if dist[v] < radius]
    inside = set(vertices)
    edges = [i for i, (u, v, _) in enumerate(g.edges) if u in inside and v in inside]
    return BallSubgraph(center, radius, closed, vertices, edges)


def loop_in_ball(g, loop, center, radius):
    """
    Whether every point of ``loop`` lies in the open metric ball ``B(center, radius)``.

    Edge interiors count: a traversed edge ``(u, v)`` of length ``l`` reaches out to
    ``(d(c, u) + d(c, v) + l) / 2``.
    """
    radius = to_rational(radius)
    dist = g.distances(center)
    if dist[loop.start] >= radius:
        return False
    return all(g.edge_farthest(center, i) < radius for i, _ in loop.steps)


def complement_subgraph(g, closed_ball):
    """
    The subgraph induced on vertices outside a closed ball, split into tagged components.

    Parameters
    ----------
    g : MetricGraph
    closed_ball : BallSubgraph
        Must be closed.

    Returns
    -------
    GraphFragment
        Components are tagged ``0, 1, ...`` in order of their smallest vertex.
    """
    if not closed_ball.closed:
        raise ParameterError('the complement is taken of a closed ball')
    outside = [v for v in g.vertices if v not in closed_ball.vertices]
    outside_set = set(outside)
    edges = [i for i, (u, v, _) in enumerate(g.edges) if u in outside_set and v in outside_set]
    sub = nx.MultiGraph()
    sub.add_nodes_from(outside)
    for i in edges:
        u, v, _ = g.edges[i]
        sub.add_edge(u, v, key=i)
    parts = sorted((sorted(c, key=_vertex_key) for c in nx.connected_components(sub)),
                   key=lambda c: _vertex_key(c[0]))
    components = []
    for tag, part in enumerate(parts):
        members = set(part)
        component_edges = [i for i in edges if g.edges[i][0] in members]
        components.append(FragmentComponent(tag, part, component_edges))
    return GraphFragment(g, outside, edges, components)


def spanning_tree(g, root=None):
    """
    The deterministic shortest-path spanning tree rooted at the basepoint (or ``root``).

    Trees are cached on the graph, which is immutable.

    Examples
    --------
    >>> len(spanning_tree(cycle(6)).cotree)
    1
    """
    root = g.basepoint if root is None else root
    if root not in g._tree_cache:
        g._check_vertex(root)
        g._tree_cache[root] = SpanningTree(g, root)
    return g._tree_cache[root]


def loop_to_word(g, loop, tree=None):
    """
    Read a closed edge path as a freely reduced word in the co-tree generators.

    Tree edges contribute nothing; a loop based away from the root is read as its conjugate
    along the tree path.

    Examples
    --------
    >>> g = cycle(6)
    >>> loop_to_word(g, EdgePath('c0', [(i, 1) for i in range(6)]))
    (1,)
    """
    tree = spanning_tree(g) if tree is None else tree
    g._check_path(loop)
    if not loop.is_loop(g):
        raise CovspecError('can only read a word from a closed path')
    letters = []
    for i, d in loop.steps:
        k = tree.letter(i)
        if k is not None:
            if letters and letters[-1] == -k * d:
                letters.pop()
            else:
                letters.append(k * d)
    return tuple(letters)


def word_to_loop(g, w, tree=None):
    """The reduced edge loop at the tree root that spells ``w``."""
    tree = spanning_tree(g) if tree is None else tree
    steps = []
    for x in w:
        i = tree.cotree[abs(x) - 1]
        u, v, _ = g.edges[i]
        tail, head = (u, v) if x > 0 else (v, u)
        steps.extend(tree.path_from_root(tail).steps)
        steps.append((i, 1 if x > 0 else -1))
        steps.extend(tree.path_to_root(head).steps)
    return EdgePath(tree.root, steps).reduced()


def geodesic(g, u, v):
    """
    A shortest edge path from ``u`` to ``v``.

    The choice is canonical for the unordered pair: ``geodesic(g, v, u)`` is the inverse of
    ``geodesic(g, u, v)``.
    """
    if u == v:
        g._check_vertex(u)
        return EdgePath(u)
    if _vertex_key(u) > _vertex_key(v):
        return geodesic(g, v, u).inverse(g)
    key = (u, v)
    if key not in g._geodesic_cache:
        hops = nx.dijkstra_path(g._nx, u, v, weight='length')
        g._geodesic_cache[key] = path_through(g, hops)
    return g._geodesic_cache[key]


def path_through(g, vertices):
    """
    Join a vertex sequence into an edge path.

    Adjacent vertices use their shortest connecting edge; repeated vertices are skipped and
    non-adjacent ones are joined by ``geodesic``.
    """
    vertices = list(vertices)
    if len(vertices) == 0:
        raise ParameterError('need at least one vertex')
    steps = []
    current = vertices[0]
    g._check_vertex(current)
    for nxt in vertices[1:]:
        if nxt == current:
            continue
        i = g.shortest_edge(current, nxt)
        if i is not None and g.length(i) == g.distance(current, nxt):
            steps.append((i, 1 if g.edges[i][0] == current else -1))
        else:
            steps.extend(geodesic(g, current, nxt).steps)
        current = nxt
    return EdgePath(vertices[0], steps)


def _parallel_edges(g, u, v, length):
    return sorted(set(i for i, _, other in g.incident(u) if other == v and g.length(i) == length))


def map_path(source, path, target, vertex_map, strict=True):
    """
    Push an edge path of ``source`` through a vertex map into ``target``, edge by edge.

    An edge goes to a target edge of the same length between the images of its endpoints;
    parallel edges of equal length keep their order, so distinct parallel edges stay
    distinct. An edge whose endpoints collapse to one vertex is dropped.

    Parameters
    ----------
    source, target : MetricGraph
    path : EdgePath
        A path of ``source``.
    vertex_map : callable
        Source vertex to target vertex.
    strict : bool
        If True, an edge with no image edge raises ``InvalidGraph``. If False it is replaced by
        a geodesic between the images of its ends.

    Returns
    -------
    EdgePath
        Starting at ``vertex_map(path.start)``.
    """
    steps = []
    tail = path.start
    for i, d in path.steps:
        head = source.traverse(tail, (i, d))
        u, v, length = source.edges[i]
        fu, fv = vertex_map(u), vertex_map(v)
        if u != v and fu == fv:
            tail = head
            continue
        rank = _parallel_edges(source, u, v, length).index(i)
        images = _parallel_edges(target, fu, fv, length)
        if rank < len(images):
            j = images[rank]
            same = u == v or target.edges[j][0] == fu
            steps.append((j, d if same else -d))
        elif strict:
            raise InvalidGraph('edge {} has no image edge in {}'.format(i, target.name))
        elif vertex_map(tail) != vertex_map(head):
            steps.extend(geodesic(target, vertex_map(tail), vertex_map(head)).steps)
        tail = head
    return EdgePath(vertex_map(path.start), steps)


def induced_subgraph(g, vertices, basepoint=None):
    """
    The connected subgraph induced on ``vertices``, with its own length metric.

    Returns
    -------
    tuple
        ``(MetricGraph, edge_map)`` where ``edge_map[k]`` is the index in ``g`` of the
        subgraph's edge ``k``. Faces whose edges all survive are carried over.
    """
    members = set(vertices)
    ordered = [v for v in g.vertices if v in members]
    edge_map = [i for i, (u, v, _) in enumerate(g.edges) if u in members and v in members]
    back = {old: new for new, old in enumerate(edge_map)}
    faces = []
    for face in g.faces:
        if all(i in back for i, _ in face.steps) and face.start in members:
            faces.append(EdgePath(face.start, [(back[i], d) for i, d in face.steps]))
    if basepoint is None:
        basepoint = g.basepoint if g.basepoint in members else ordered[0]
    sub = MetricGraph(ordered, [g.edges[i] for i in edge_map], basepoint=basepoint,
                      faces=faces, name=g.name)
    return sub, edge_map


def ball_graph(g, center, radius):
    """The open ball ``B(center, radius)`` as a metric graph with its induced length metric."""
    inside = ball(g, center, radius)
    sub, _ = induced_subgraph(g, inside.vertices, basepoint=center)
    return sub


def rescale_graph(g, r):
    """
    Divide every edge length by ``r``.

    Examples
    --------
    >>> rescale_graph(cycle(6), 2).length(0)
    Fraction(1, 2)
    """
    r = to_rational(r)
    if r <= 0:
        raise ParameterError('scale must be positive')
    return MetricGraph(g.vertices, [(u, v, length / r) for u, v, length in g.edges],
                       basepoint=g.basepoint, faces=g.faces, name=g.name)


def random_loop(g, steps, start=None):
    """
    A random closed path: a non-backtracking random walk of ``steps`` steps, closed up by a
    geodesic back to the start. Seed with ``set_seed``.
    """
    rng = _get_rng()
    start = g.basepoint if start is None else start
    current = start
    walk = []
    for _ in range(steps):
        options = [(i, d, other) for i, d, other in g.incident(current)
                   if not walk or walk[-1] != (i, -d)]
        if not options:
            break
        i, d, other = options[int(rng.integers(len(options)))]
        walk.append((i, d))
        current = other
    walk.extend(geodesic(g, current, start).steps)
    return EdgePath(start, walk).reduced()
