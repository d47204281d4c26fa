import networkx as nx

from collections import deque
from fractions import Fraction

from .covers import delta_closure
from .errors import (CovspecError, InvalidHomotopy, LoopOutsideBall, MalformedGrid,
                     PreconditionError, VerificationError)
from .free_group import normal_closure_member
from .graphs import EdgePath, geodesic, induced_subgraph, loop_to_word, path_through, \
    spanning_tree, word_to_loop
from .numbers import COSET_BUDGET, GRID_STATES, to_rational
from .utils import NO, _vertex_key


class GridHomotopy:
    """
    A discrete homotopy of a loop to its basepoint.

    ``columns[x][y]`` is the image of grid vertex ``(x, y)``. Column 0 traces the loop, the
    last column and rows ``0`` and ``M`` sit at the loop's start. Vertical sides of column 0
    follow the loop's own edges; every other grid side is mapped to ``path_through`` its
    endpoints. ``centers[(x, y)]`` certifies square ``(x, y)`` (lower left corner) with a
    ball center.
    """

    def __init__(self, loop, columns, centers=None):
        self.loop = loop
        self.columns = [tuple(c) for c in columns]
        self.centers = dict(centers or {})

    def __repr__(self):
        return '<GridHomotopy> {} x {} grid'.format(self.width, self.height)

    @property
    def width(self):
        return len(self.columns) - 1

    @property
    def height(self):
        return len(self.columns[0]) - 1 if self.columns else 0

    def image(self, x, y):
        return self.columns[x][y]

    def squares(self):
        return [(x, y) for x in range(self.width) for y in range(self.height)]


class NotFound:
    """``find_grid_homotopy`` gave up: ``reason`` is ``'exhausted'`` or ``'state cap'``."""

    def __init__(self, explored, reason):
        self.explored = explored
        self.reason = reason

    def __repr__(self):
        return '<NotFound> {} after {} states'.format(self.reason, self.explored)

    def __bool__(self):
        return False


class ChopResult:
    """
    Boundary loops left by ``chop``.

    ``verified`` is True when the input loop was contracted, inside the region, against the
    tethered boundary loops, False when that comparison loop cannot be formed inside the
    region, and None when the search gave up or was skipped. ``check`` holds the search result.
    """

    def __init__(self, loops, corners, components, kept, verified=None, check=None):
        self.loops = loops
        self.corners = corners
        self.components = components
        self.kept = kept
        self.verified = verified
        self.check = check

    def __repr__(self):
        return '<ChopResult> {} boundary loops, {} squares kept'.format(len(self.loops),
                                                                       len(self.kept))

    def __len__(self):
        return len(self.loops)

    def satisfies_tubular(self, g, region, delta):
        """Every boundary corner is in ``region`` and within ``2 delta`` of its outside."""
        delta = to_rational(delta)
        outside = [v for v in g.vertices if v not in region]
        for corners in self.corners:
            for v in corners:
                if v not in region:
                    return False
                if not any(g.distance(v, u) < 2 * delta for u in outside):
                    return False
        return True


class ShortRepresentative:
    def __init__(self, loop, length, centers, rho, transcript):
        self.loop = loop
        self.length = length
        self.centers = centers
        self.rho = rho
        self.bound = 5 * len(centers) * rho
        self.transcript = transcript

    def __repr__(self):
        return '<ShortRepresentative> length {} <= {} (N={})'.format(self.length, self.bound,
                                                                     len(self.centers))


class EdgePoint:
    """The point at distance ``offset`` from the first endpoint of edge ``edge``."""

    def __init__(self, edge, offset):
        self.edge = edge
        self.offset = to_rational(offset)

    def __repr__(self):
        return '<EdgePoint> edge {} at {}'.format(self.edge, self.offset)

    def __eq__(self, other):
        return isinstance(other, EdgePoint) and (self.edge, self.offset) == (other.edge,
                                                                             other.offset)

    def __hash__(self):
        return hash(('edge point', self.edge, self.offset))


def _reach_lines(g, vertices, edges, i):
    # Distance from the point at offset t on edge i to each target is the minimum of the
    # lines alpha + beta * t in its list.
    a, b, length = g.edges[i]
    da, db = g.distances(a), g.distances(b)
    targets = [[(da[v], 1), (length + db[v], -1)] for v in vertices]
    for j in edges:
        if j == i:
            half = (da[b] + length) / 2
            targets.append([(half, 0), (length, -1)])
            targets.append([(half, 0), (Fraction(0), 1)])
            continue
        x, y, span = g.edges[j]
        near_x = [(da[x], 1), (length + db[x], -1)]
        near_y = [(da[y], 1), (length + db[y], -1)]
        targets.append([((ax + ay + span) / 2, Fraction(bx + by, 2))
                        for ax, bx in near_x for ay, by in near_y])
    return targets


def _reach_at(targets, t):
    return max(min(alpha + beta * t for alpha, beta in lines) for lines in targets)


def _best_on_edge(g, vertices, edges, i):
    length = g.length(i)
    targets = _reach_lines(g, vertices, edges, i)
    lines = set(line for lines in targets for line in lines)
    offsets = set()
    for a1, b1 in lines:
        for a2, b2 in lines:
            if b1 > b2:
                t = (a2 - a1) / (b1 - b2)
                if 0 < t < length:
                    offsets.add(t)
    best = None
    for t in sorted(offsets):
        r = _reach_at(targets, t)
        if best is None or r < best[0]:
            best = (r, t)
    return best


def square_radius(g, vertices, edges, center):
    """
    How far a square image (vertices and traversed edges) reaches from ``center``, a vertex
    or an ``EdgePoint``.
    """
    if isinstance(center, EdgePoint):
        if not vertices and not edges:
            return Fraction(0)
        return _reach_at(_reach_lines(g, vertices, edges, center.edge), center.offset)
    dist = g.distances(center)
    reach = [dist[v] for v in vertices] + [g.edge_farthest(center, i) for i in edges]
    return max(reach) if reach else Fraction(0)


def enclosing_radius(g, vertices, edges):
    """
    The smallest ``square_radius`` over all points of ``g``, vertices and edge interiors.

    Returns
    -------
    tuple
        ``(radius, center)``; ties go to vertex centers, then to the least vertex key, then
        to the lowest edge index and offset.

    Examples
    --------
    >>> enclosing_radius(cycle(6), {'c0', 'c1'}, {0})
    (Fraction(1, 2), <EdgePoint> edge 0 at 1/2)
    """
    best = None
    for c in sorted(g.vertices, key=_vertex_key):
        r = square_radius(g, vertices, edges, c)
        if best is None or r < best[0]:
            best = (r, c)
    if not vertices:
        return best
    for i, (a, b, _) in enumerate(g.edges):
        da, db = g.distances(a), g.distances(b)
        if max(min(da[v], db[v]) for v in vertices) >= best[0]:
            continue
        found = _best_on_edge(g, vertices, edges, i)
        if found is not None and found[0] < best[0]:
            best = (found[0], EdgePoint(i, found[1]))
    return best


def _vertical_steps(g, loop, column, x, y):
    if x == 0:
        return [loop.steps[y]]
    return list(path_through(g, [column[y], column[y + 1]]).steps)


def _square_image(g, loop, left, right, x, y):
    edges = set()
    for i, _ in _vertical_steps(g, loop, left, x, y):
        edges.add(i)
    for i, _ in _vertical_steps(g, loop, right, x + 1, y):
        edges.add(i)
    for row in (y, y + 1):
        for i, _ in path_through(g, [left[row], right[row]]).steps:
            edges.add(i)
    vertices = {left[y], left[y + 1], right[y], right[y + 1]}
    for i in edges:
        u, v, _ = g.edges[i]
        vertices.update((u, v))
    return vertices, edges


def _check_shape(g, loop, columns):
    if not loop.is_loop(g):
        raise MalformedGrid('the homotopy must start from a closed path')
    if len(columns) == 0:
        raise MalformedGrid('a grid needs at least one column')
    first = tuple(loop.vertices(g))
    if any(len(c) != len(first) for c in columns):
        raise MalformedGrid('all columns must have {} entries'.format(len(first)))
    known = set(g.vertices)
    if any(v not in known for c in columns for v in c):
        raise MalformedGrid('grid maps to an unknown vertex')


def _check_center(g, center):
    if isinstance(center, EdgePoint):
        if not 0 <= center.edge < len(g.edges):
            raise MalformedGrid('center on unknown edge {}'.format(center.edge))
        if not 0 <= center.offset <= g.length(center.edge):
            raise MalformedGrid('center offset {} is off edge {}'.format(center.offset,
                                                                         center.edge))
    elif center not in set(g.vertices):
        raise MalformedGrid('center at unknown vertex {}'.format(center))


def grid_from_columns(g, loop, columns):
    """Build a ``GridHomotopy`` with the best vertex center for every square."""
    _check_shape(g, loop, columns)
    columns = [tuple(c) for c in columns]
    centers = {}
    for x in range(len(columns) - 1):
        for y in range(len(columns[0]) - 1):
            vertices, edges = _square_image(g, loop, columns[x], columns[x + 1], x, y)
            centers[(x, y)] = enclosing_radius(g, vertices, edges)[1]
    return GridHomotopy(loop, columns, centers)


def validate_grid(H, g, delta):
    """
    Check the boundary conditions and that every square's image lies in an open ``delta``
    ball about its certified center (or about its best center when none is given).

    Raises ``MalformedGrid`` when the grid does not even have the shape of a homotopy of
    ``H.loop``.

    Examples
    --------
    >>> loop = EdgePath('c0')
    >>> validate_grid(GridHomotopy(loop, [('c0',)]), cycle(6), 1)
    True
    """
    delta = to_rational(delta)
    _check_shape(g, H.loop, H.columns)
    start = H.loop.start
    if H.columns[0] != tuple(H.loop.vertices(g)):
        return False
    if any(v != start for v in H.columns[-1]):
        return False
    if any(c[0] != start or c[-1] != start for c in H.columns):
        return False
    for x, y in H.squares():
        vertices, edges = _square_image(g, H.loop, H.columns[x], H.columns[x + 1], x, y)
        if (x, y) in H.centers:
            _check_center(g, H.centers[(x, y)])
            radius = square_radius(g, vertices, edges, H.centers[(x, y)])
        else:
            radius = enclosing_radius(g, vertices, edges)[0]
        if radius >= delta:
            return False
    return True


def _squeeze(column):
    out = [column[0]]
    for v in column[1:]:
        if v != out[-1]:
            out.append(v)
    return tuple(out)


def _moves(g, loop, column, first, delta):
    m = len(column) - 1
    windows = sorted(((a, b) for a in range(m) for b in range(a + 2, m + 1)),
                     key=lambda t: (t[0] - t[1], t[0]))
    for a, b in windows:
        hops = geodesic(g, column[a], column[b]).vertices(g)
        if len(hops) > b - a + 1:
            continue
        window = list(hops) + [hops[-1]] * (b - a + 1 - len(hops))
        new = column[:a] + tuple(window) + column[b + 1:]
        if new == column:
            continue
        x = 0 if first else 1
        ok = True
        for y in range(m):
            if not first and column[y] == new[y] and column[y + 1] == new[y + 1]:
                continue
            vertices, edges = _square_image(g, loop, column, new, x, y)
            if enclosing_radius(g, vertices, edges)[0] >= delta:
                ok = False
                break
        if ok:
            yield new


def find_grid_homotopy(g, loop, delta, max_states=GRID_STATES, verbose=False):
    """
    Search for a grid homotopy contracting ``loop`` through open ``delta`` balls.

    Each step replaces a window of the current column by a geodesic between its ends, padded
    by repeating its last vertex, and keeps the step only if every new square fits in an open
    ``delta`` ball. Breadth first over columns, identifying columns that differ only by
    stationary repeats.

    Parameters
    ----------
    g : MetricGraph
    loop : EdgePath
        A closed path.
    delta : rational
    max_states : int
        The number of columns to expand before giving up.
    verbose : bool
        If True, will print out statements on computational progress.

    Returns
    -------
    GridHomotopy or NotFound

    Examples
    --------
    >>> g = cycle(6)
    >>> loop = EdgePath('c0', [(i, 1) for i in range(6)])
    >>> bool(find_grid_homotopy(g, loop, '7/2'))
    True
    >>> find_grid_homotopy(g, loop, 3)
    <NotFound> exhausted after ... states
    """
    delta = to_rational(delta)
    if not loop.is_loop(g):
        raise MalformedGrid('can only contract a closed path')
    start_column = tuple(loop.vertices(g))
    goal = tuple(loop.start for _ in start_column)
    if start_column == goal:
        return grid_from_columns(g, loop, [start_column])

    parent = {_squeeze(start_column): None}
    queue = deque([start_column])
    explored = 0
    while queue:
        column = queue.popleft()
        explored += 1
        if explored > max_states:
            if verbose:
                print('...Gave up after {} states'.format(max_states))
            return NotFound(max_states, 'state cap')
        for new in _moves(g, loop, column, column == start_column, delta):
            key = _squeeze(new)
            if key in parent:
                continue
            parent[key] = column
            if new == goal:
                columns = [new]
                back = column
                while back is not None:
                    columns.append(back)
                    back = parent[_squeeze(back)]
                if verbose:
                    print('...Found a {}-column grid after {} states'.format(len(columns),
                                                                            explored))
                return grid_from_columns(g, loop, columns[::-1])
            queue.append(new)
    return NotFound(explored, 'exhausted')


def tighten(H, g, delta):
    """
    The largest enclosing radius over the squares of a valid grid.

    The grid is valid at every ``delta'`` above the result, which is strictly below ``delta``.
    """
    if not validate_grid(H, g, delta):
        raise InvalidHomotopy('grid is not a valid homotopy at delta={}'.format(delta))
    radii = [enclosing_radius(g, *_square_image(g, H.loop, H.columns[x], H.columns[x + 1],
                                                  x, y))[0]
             for x, y in H.squares()]
    return max(radii) if radii else Fraction(0)


def _fill_holes(component, width, height):
    inside = set(component)
    others = [(x, y) for x in range(width) for y in range(height) if (x, y) not in inside]
    frame = nx.Graph()
    frame.add_node('outside')
    frame.add_nodes_from(others)
    for x, y in others:
        if x in (0, width - 1) or y in (0, height - 1):
            frame.add_edge('outside', (x, y))
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in frame and nb != 'outside' and nb not in inside:
                frame.add_edge((x, y), nb)
    reachable = nx.node_connected_component(frame, 'outside')
    return inside | set(s for s in others if s not in reachable)


def _lattice_image(g, H, p, q):
    (x1, y1), (x2, y2) = p, q
    if x1 == x2 == 0:
        step = H.loop.steps[min(y1, y2)]
        return [step] if y2 > y1 else [(step[0], -step[1])]
    return list(path_through(g, [H.image(x1, y1), H.image(x2, y2)]).steps)


def _boundary_loop(g, H, squares):
    arcs = nx.MultiDiGraph()
    directed = []
    for x, y in squares:
        corners = [(x, y), (x, y + 1), (x + 1, y + 1), (x + 1, y)]
        directed.extend(zip(corners, corners[1:] + corners[:1]))
    present = set(directed)
    for p, q in directed:
        if (q, p) not in present:
            arcs.add_edge(p, q)
    source = min(arcs.nodes, key=lambda t: (t[1], t[0]))
    steps = []
    corners = [H.image(*source)]
    for p, q in nx.eulerian_circuit(arcs, source=source):
        steps.extend(_lattice_image(g, H, p, q))
        corners.append(H.image(*q))
    return EdgePath(H.image(*source), steps).reduced(), corners


def _comparison_loops(g, loop, boundary, region):
    sub, edge_map = induced_subgraph(g, region, basepoint=loop.start)
    back = {old: new for new, old in enumerate(edge_map)}

    def local(path):
        if any(i not in back for i, _ in path.steps):
            raise LoopOutsideBall('a boundary loop leaves the region')
        return EdgePath(path.start, [(back[i], d) for i, d in path.steps])

    tethered = []
    for ell in boundary:
        tether = geodesic(sub, loop.start, ell.start)
        around = tether.concat(local(ell).inverse(sub), sub)
        tethered.append(around.concat(tether.inverse(sub), sub))
    orders = [tethered, tethered[::-1]] if len(tethered) > 1 else [tethered]
    candidates = []
    for order in orders:
        path = local(loop)
        for t in order:
            path = path.concat(t, sub)
        candidates.append(path.reduced())
    return sub, candidates


def verify_chop(H, g, delta, region, loops, max_states=GRID_STATES):
    """
    Check that ``H.loop`` is ``delta`` homotopic, inside ``region``, to the product of the
    boundary loops ``loops``, each tethered to the loop's start by a geodesic.

    Both the given component order and its reverse are tried.

    Returns
    -------
    tuple
        ``(verified, check)`` as stored on ``ChopResult``.
    """
    try:
        sub, candidates = _comparison_loops(g, H.loop, loops, region)
    except CovspecError:
        return False, None
    check = None
    for path in candidates:
        check = find_grid_homotopy(sub, path, delta, max_states=max_states)
        if check:
            return True, check
    return None, check


def chop(H, g, delta, region, verify=True, max_states=GRID_STATES):
    """
    Cut a grid homotopy along a vertex region.

    Squares with a corner mapped outside ``region`` are removed. Removed squares are grouped
    into side-adjacent components (holes filled) and each component contributes its boundary
    loop, traced clockwise from its lowest corner. Components are ordered by their lowest
    square ``(y, x)``.

    Parameters
    ----------
    H : GridHomotopy
    g : MetricGraph
    delta : rational
    region : collection of vertices
        Must contain the homotopy's input loop.
    verify : bool
        If True, search for a ``delta`` homotopy inside ``region`` from the input loop to the
        product of the boundary loops and record the outcome on ``ChopResult.verified``.
    max_states : int
        State cap for that search.

    Returns
    -------
    ChopResult
    """
    region = set(region)
    delta = to_rational(delta)
    if any(v not in region for v in H.loop.vertices(g)):
        raise LoopOutsideBall('the input loop leaves the region')
    removed = set()
    for x, y in H.squares():
        corners = (H.image(x, y), H.image(x, y + 1), H.image(x + 1, y), H.image(x + 1, y + 1))
        if any(v not in region for v in corners):
            removed.add((x, y))
    adjacency = nx.Graph()
    adjacency.add_nodes_from(removed)
    for x, y in removed:
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in removed:
                adjacency.add_edge((x, y), nb)
    parts = sorted((_fill_holes(c, H.width, H.height)
                    for c in nx.connected_components(adjacency)),
                   key=lambda c: min((y, x) for x, y in c))
    traced = [_boundary_loop(g, H, part) for part in parts]
    taken = set().union(*parts) if parts else set()
    kept = [s for s in H.squares() if s not in taken]
    loops = [t[0] for t in traced]
    verified, check = None, None
    if verify:
        verified, check = verify_chop(H, g, delta, region, loops, max_states=max_states)
    return ChopResult(loops, [t[1] for t in traced], parts, kept, verified=verified,
                      check=check)


def greedy_packing(g, vertices, rho):
    """Centers of disjoint open ``rho`` balls, picked greedily in vertex key order."""
    centers = []
    for v in sorted(vertices, key=_vertex_key):
        if all(g.distance(c, v) >= 2 * rho for c in centers):
            centers.append(v)
    return centers


def short_nonmember_representative(g, region, delta, forbidden=(), witness=None,
                                   budget=COSET_BUDGET):
    """
    Shorten a loop that is not ``delta`` homotopic, within a region, to a product of the
    forbidden classes.

    With ``rho = delta / 5`` and ``N`` disjoint ``rho`` balls in the region, the witness is
    pushed to the ball centers and split at repeated centers, keeping a piece that stays
    outside the closure, until each center is visited once. The result is checked against
    the length bound ``5 N rho``.

    Parameters
    ----------
    g : MetricGraph
    region : collection of vertices
        Induces a connected subgraph.
    delta : rational
    forbidden : list of EdgePath
        Loops of the region, read as words there.
    witness : EdgePath or None
        Defaults to the first free generator of the region outside the closure.
    budget : int

    Returns
    -------
    ShortRepresentative
    """
    delta = to_rational(delta)
    rho = delta / 5
    sub, edge_map = induced_subgraph(g, region)
    back = {old: new for new, old in enumerate(edge_map)}
    transcript = ['region of {} vertices, rho={}'.format(len(sub.vertices), rho)]
    if sub.betti_number() == 0:
        raise PreconditionError('the region is a tree, so every loop contracts in it')

    def local(loop):
        if any(i not in back for i, _ in loop.steps):
            raise LoopOutsideBall('loop leaves the region')
        return EdgePath(loop.start, [(back[i], d) for i, d in loop.steps])

    tree = spanning_tree(sub)
    closure = delta_closure(sub, delta).words()
    closure += [loop_to_word(sub, local(f)) for f in forbidden]

    def outside(word):
        return normal_closure_member(word, closure, budget=budget) == NO

    if witness is None:
        candidates = [(k,) for k in range(1, tree.rank + 1)]
        candidates = [w for w in candidates if outside(w)]
        if not candidates:
            raise PreconditionError('every generator of the region is in the closure')
        word = candidates[0]
        path = word_to_loop(sub, word)
    else:
        path = local(witness)
        word = loop_to_word(sub, path)
        if not outside(word):
            raise PreconditionError('the witness is not certified outside the closure')
    transcript.append('witness word {}'.format(list(word)))

    centers = greedy_packing(sub, sub.vertices, rho)
    transcript.append('packing of N={} centers'.format(len(centers)))

    def nearest(v):
        return min(centers, key=lambda c: (sub.distance(c, v), _vertex_key(c)))

    hops = [nearest(v) for v in path.vertices(sub)]
    sequence = [c for k, c in enumerate(hops) if k == 0 or c != hops[k - 1]]
    if len(sequence) > 1 and sequence[-1] == sequence[0]:
        sequence = sequence[:-1]
    current = path_through(sub, sequence + [sequence[0]])
    if not outside(loop_to_word(sub, current)):
        raise VerificationError('pushing to centers changed the class', transcript)
    transcript.append('center loop through {}'.format(sequence))

    while len(set(sequence)) < len(sequence):
        seen = {}
        for j, c in enumerate(sequence):
            if c in seen:
                i = seen[c]
                break
            seen[c] = j
        inner = sequence[i:j]
        outer = sequence[j:] + sequence[:i]
        pieces = []
        for piece in (inner, outer):
            loop = path_through(sub, piece + [piece[0]])
            pieces.append((piece, loop, outside(loop_to_word(sub, loop))))
        chosen = next((p for p in pieces if p[2]), None)
        if chosen is None:
            transcript.append('neither piece at {} is certified outside'.format(sequence[i]))
            raise VerificationError('could not split at a repeated center', transcript)
        sequence, current = chosen[0], chosen[1]
        transcript.append('split at {}, kept {}'.format(sequence[0], sequence))

    current = current.cyclically_reduced(sub)
    length = current.length(sub)
    result = ShortRepresentative(EdgePath(current.start, [(edge_map[i], d)
                                                          for i, d in current.steps]),
                                 length, centers, rho, transcript)
    transcript.append('length {} against bound {}'.format(length, result.bound))
    if length > result.bound:
        raise VerificationError('representative exceeds 5 N rho', transcript)
    return result
