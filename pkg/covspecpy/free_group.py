import heapq
import numpy as np

from fractions import Fraction
from itertools import combinations
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .errors import (EnumerationCapExceeded, CosetBudgetExceeded, UnresolvedQuotient,
                     ParameterError)
from .graphs import EdgePath, spanning_tree, loop_to_word, word_to_loop
from .numbers import COSET_BUDGET, MAX_CLASSES, ELIMINATION_LENGTH, WITNESS_STATES, to_rational
from .rng import _get_rng
from .utils import YES, NO, UNKNOWN, DIFFER, _vertex_key


INCONCLUSIVE = 'Inconclusive'

_covspecpy_internal_quotient_caches = {}


def reduce_word(w):
    """
    Freely reduce a word.

    Words are tuples of nonzero ints; ``-k`` is the inverse of generator ``k``.

    Examples
    --------
    >>> reduce_word([1, -1])
    ()
    >>> reduce_word([2, 1, -1, 3])
    (2, 3)
    """
    out = []
    for x in w:
        if x == 0:
            raise ParameterError('0 is not a generator')
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(int(x))
    return tuple(out)


def cyclic_reduce(w):
    """
    Cyclically reduce a word: freely reduce, then strip inverse first/last letters.

    Examples
    --------
    >>> cyclic_reduce([2, 1, -2])
    (1,)
    """
    w = reduce_word(w)
    start, end = 0, len(w)
    while end - start >= 2 and w[start] == -w[end - 1]:
        start += 1
        end -= 1
    return w[start:end]


def invert_word(w):
    return tuple(-x for x in reversed(w))


def multiply(*words):
    out = ()
    for w in words:
        out = reduce_word(out + tuple(w))
    return out


def canonical_class(w):
    """
    A canonical representative of the conjugacy class of ``w`` together with ``w^-1``.

    This is the lexicographically least rotation of the cyclic reduction of ``w`` or of its
    inverse, so two words get the same representative iff they are conjugate up to inversion.
    """
    u = cyclic_reduce(w)
    if not u:
        return ()
    best = None
    for v in (u, invert_word(u)):
        for k in range(len(v)):
            rotation = v[k:] + v[:k]
            if best is None or rotation < best:
                best = rotation
    return best


def word_rank(words):
    return max((abs(x) for w in words for x in w), default=0)


def abelian_vector(w, rank):
    """
    The exponent-sum vector of ``w`` over ``rank`` generators.

    Examples
    --------
    >>> abelian_vector([1, 2, -1, 2], 3)
    array([0, 2, 0])
    """
    vec = np.zeros(rank, dtype=np.int64)
    if len(w):
        letters = np.asarray(w, dtype=np.int64)
        np.add.at(vec, np.abs(letters) - 1, np.sign(letters))
    return vec


def random_word(rank, length):
    """A random freely reduced word of the given length. Seed with ``set_seed``."""
    rng = _get_rng()
    out = []
    while len(out) < length:
        x = int(rng.integers(1, rank + 1)) * (1 if rng.random() < 0.5 else -1)
        if not out or out[-1] != -x:
            out.append(x)
    return tuple(out)


class ClassLength:
    """
    The length ``L(g)`` of a conjugacy class in the fundamental group of a metric graph.

    ``loop`` is the unique cyclically reduced edge loop in the class, whose weighted length is
    ``length``.
    """

    def __init__(self, word, length, loop):
        self.word = reduce_word(word)
        self.cyclic = canonical_class(word)
        self.length = length
        self.loop = loop

    def __repr__(self):
        return '<ClassLength> {} length {}'.format(list(self.cyclic), self.length)

    def __eq__(self, other):
        return (isinstance(other, ClassLength) and self.cyclic == other.cyclic and
                self.length == other.length)

    def __hash__(self):
        return hash((self.cyclic, self.length))


def class_length(g, w, tree=None):
    """
    The length of the shortest edge loop freely homotopic to ``w``.

    Parameters
    ----------
    g : MetricGraph
    w : tuple
        A word in the co-tree generators of ``spanning_tree(g)``.
    tree : SpanningTree or None

    Returns
    -------
    ClassLength

    Examples
    --------
    >>> class_length(wedge_of_circles([6, 10]), [1, 2]).length
    Fraction(16, 1)
    """
    tree = spanning_tree(g) if tree is None else tree
    loop = word_to_loop(g, reduce_word(w), tree).cyclically_reduced(g)
    return ClassLength(w, loop.length(g), loop)


def enumerate_classes(g, bound, strict=False, tree=None, max_classes=MAX_CLASSES,
                      verbose=False):
    """
    All nontrivial conjugacy classes (up to inversion) whose length is at most ``bound``.

    Every such class has exactly one cyclically reduced edge loop, a closed non-backtracking
    walk. The walks are enumerated by depth-first search, each rooted at its least vertex and
    pruned as soon as the walk cannot close within ``bound``.

    Parameters
    ----------
    g : MetricGraph
    bound : rational
    strict : bool
        Use ``< bound`` instead of ``<= bound``.
    tree : SpanningTree or None
    max_classes : int
        Raise ``EnumerationCapExceeded`` rather than return a truncated list.
    verbose : bool
        If True, will print out statements on computational progress.

    Returns
    -------
    list of ClassLength
        Sorted by length, then by canonical word.
    """
    bound = to_rational(bound)
    tree = spanning_tree(g) if tree is None else tree
    order = sorted(g.vertices, key=_vertex_key)
    position = {v: k for k, v in enumerate(order)}
    found = {}

    def within(length):
        return length < bound if strict else length <= bound

    if verbose:
        print('Enumerating classes up to length {}...'.format(bound))

    for start in order:
        home = g.distances(start)
        floor = position[start]
        stack = [(start, Fraction(0), ())]
        while stack:
            current, length, steps = stack.pop()
            for i, d, other in g.incident(current):
                if position[other] < floor:
                    continue
                if steps and steps[-1] == (i, -d):
                    continue
                new_length = length + g.length(i)
                if not within(new_length + home[other]):
                    continue
                new_steps = steps + ((i, d),)
                if other == start and new_steps[0] != (i, -d):
                    loop = EdgePath(start, new_steps)
                    word = loop_to_word(g, loop, tree)
                    key = canonical_class(word)
                    if key and key not in found:
                        found[key] = ClassLength(word, new_length, loop)
                        if len(found) > max_classes:
                            raise EnumerationCapExceeded(
                                'more than {} classes up to length {}'.format(max_classes,
                                                                              bound))
                stack.append((other, new_length, new_steps))

    if verbose:
        print('...Enumerated {} classes!'.format(len(found)))
    return sorted(found.values(), key=lambda c: (c.length, len(c.cyclic), c.cyclic))


class CosetTable:
    """
    A partial coset table with union-find coincidence handling.

    Cosets are ints; ``neighbors[c][x]`` is the coset reached from ``c`` by letter ``x``
    (inverse letters are stored explicitly). With relators this runs Todd-Coxeter
    enumeration; with none it folds subgroup generators into a Stallings graph.

    Parameters
    ----------
    relators : list of tuple
    budget : int
        Maximum number of cosets ever defined. Exceeding it raises ``CosetBudgetExceeded``.
    """

    def __init__(self, relators=(), budget=COSET_BUDGET):
        self.relators = [tuple(r) for r in relators if len(r)]
        self.budget = budget
        self.parent = []
        self.neighbors = []
        self.complete = False
        self.start = self._new_coset()

    def __len__(self):
        return len(self.live())

    def _new_coset(self):
        if len(self.parent) >= self.budget:
            raise CosetBudgetExceeded('coset budget of {} exhausted'.format(self.budget))
        c = len(self.parent)
        self.parent.append(c)
        self.neighbors.append({})
        return c

    def find(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self):
        return [c for c in range(len(self.parent)) if self.parent[c] == c]

    def step(self, c, x, create=True):
        c = self.find(c)
        n = self.neighbors[c].get(x)
        if n is None:
            if not create:
                return None
            n = self._new_coset()
            self.neighbors[c][x] = n
            self.neighbors[n][-x] = c
        return self.find(n)

    def trace(self, c, word, create=True):
        for x in word:
            c = self.step(c, x, create=create)
            if c is None:
                return None
        return c

    def unify(self, a, b):
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            for x, n in self.neighbors[b].items():
                m = self.neighbors[a].get(x)
                if m is None:
                    self.neighbors[a][x] = n
                else:
                    pending.append((m, n))
            self.neighbors[b] = {}

    def add_subgroup(self, words):
        for w in words:
            self.unify(self.trace(self.start, w), self.start)
        return self

    def enumerate(self, stop=None):
        """
        Run HLT enumeration until the table closes, or ``stop(self)`` returns True.

        Returns True when the enumeration completed, in which case the table (extended by free
        trees wherever an entry is missing) is a genuine action of the presented group.
        """
        letters = sorted(set(s * abs(x) for r in self.relators for x in r for s in (1, -1)))
        visit = 0
        while visit < len(self.parent):
            if self.find(visit) == visit:
                for r in self.relators:
                    self.unify(self.trace(visit, r), visit)
                # complete the row so a finished table is a genuine action
                for x in letters:
                    if self.find(visit) != visit:
                        break
                    self.step(visit, x)
                if stop is not None and stop(self):
                    return False
            visit += 1
        self.complete = True
        return True

    def is_closed(self, letters):
        letters = [s * x for x in letters for s in (1, -1)]
        return all(x in self.neighbors[c] for c in self.live() for x in letters)

    def spanning_words(self, letters):
        """A word leading from the start coset to each live coset (breadth first)."""
        words = {self.find(self.start): ()}
        frontier = [self.find(self.start)]
        while frontier:
            nxt = []
            for c in frontier:
                for x in sorted((s * y for y in letters for s in (1, -1)), key=lambda x: (abs(x),
                                                                                        -x)):
                    n = self.step(c, x, create=False)
                    if n is not None and n not in words:
                        words[n] = words[c] + (x,)
                        nxt.append(n)
            frontier = nxt
        return words


class SubgroupFolding:
    """
    The Stallings folding of a finitely generated subgroup of a free group.

    Examples
    --------
    >>> fold = SubgroupFolding([(1, 1)])
    >>> fold.contains((1, 1, 1, 1))
    True
    """

    def __init__(self, words, budget=COSET_BUDGET):
        self.words = [reduce_word(w) for w in words]
        self.table = CosetTable(budget=budget).add_subgroup([w for w in self.words if w])

    def __repr__(self):
        return '<SubgroupFolding> {} generators, {} states'.format(len(self.words),
                                                                  len(self.table))

    def contains(self, w):
        table = self.table
        return table.trace(table.start, reduce_word(w), create=False) == table.find(table.start)

    def states(self):
        return self.table.live()


def conjugate_into_subgroup(w, fold):
    """
    Whether ``w`` is conjugate into the subgroup folded in ``fold``.

    True iff the cyclic reduction of ``w`` reads as a closed path from some state.

    Examples
    --------
    >>> conjugate_into_subgroup((1,), SubgroupFolding([(2,)]))
    False
    """
    u = cyclic_reduce(w)
    if not u:
        return True
    table = fold.table
    return any(table.trace(s, u, create=False) == s for s in table.live())


class AbelianLattice:
    """
    The integer lattice spanned by exponent-sum vectors, kept in Hermite normal form.

    ``reduce`` maps every vector to a canonical representative of its coset, so membership
    and equality in the quotient group are exact.
    """

    def __init__(self, vectors, dim):
        self.dim = dim
        columns = [[int(x) for x in v] for v in vectors if np.any(np.asarray(v))]
        self.basis = []
        if columns and dim:
            hnf = hermite_normal_form(Matrix(dim, len(columns), lambda i, j: columns[j][i]))
            for j in range(hnf.cols):
                col = [int(hnf[i, j]) for i in range(dim)]
                rows = [i for i, x in enumerate(col) if x != 0]
                if rows:
                    self.basis.append((rows[-1], col))
        self.basis.sort(key=lambda t: -t[0])

    def __repr__(self):
        return '<AbelianLattice> rank {} in dimension {}'.format(len(self.basis), self.dim)

    def reduce(self, vector):
        v = [int(x) for x in vector]
        for pivot, col in self.basis:
            q = v[pivot] // col[pivot]
            if q:
                v = [a - q * b for a, b in zip(v, col)]
        return tuple(v)

    def contains(self, vector):
        return not any(self.reduce(vector))


def abelian_certificate(new_gens, old_gens, rank=None):
    """
    ``Differ`` if some new generator's exponent-sum vector lies outside the lattice spanned by
    the old generators' vectors, else ``Inconclusive``.

    ``Differ`` soundly certifies that the normal closures differ.

    Examples
    --------
    >>> abelian_certificate([(1, 1)], [(1,)])
    'Inconclusive'
    >>> abelian_certificate([(2,)], [(1,)])
    'Differ'
    """
    return DIFFER if abelian_witness(new_gens, old_gens, rank) is not None else INCONCLUSIVE


def abelian_witness(new_gens, old_gens, rank=None):
    new_gens = [reduce_word(w) for w in new_gens]
    old_gens = [reduce_word(w) for w in old_gens]
    rank = word_rank(new_gens + old_gens) if rank is None else rank
    lattice = AbelianLattice([abelian_vector(w, rank) for w in old_gens], rank)
    for w in new_gens:
        if not lattice.contains(abelian_vector(w, rank)):
            return w
    return None


def _substitute(w, letter, value):
    out = []
    inverse = invert_word(value)
    for x in w:
        if x == letter:
            out.extend(value)
        elif x == -letter:
            out.extend(inverse)
        else:
            out.append(x)
    return reduce_word(out)


class Presentation:
    """
    A group presentation obtained from ``<x_1..x_rank | relators>`` by Tietze eliminations.

    ``substitutions`` maps each eliminated generator to a word in the surviving ``letters``,
    so ``rewrite`` transports words of the original free group into this presentation.
    """

    def __init__(self, rank, letters, relators, substitutions):
        self.rank = rank
        self.letters = tuple(letters)
        self.relators = tuple(relators)
        self.substitutions = dict(substitutions)

    def __repr__(self):
        return '<Presentation> {} generators, {} relators (from rank {})'.format(
            len(self.letters), len(self.relators), self.rank)

    def rewrite(self, w):
        out = []
        for x in w:
            value = self.substitutions.get(abs(x))
            if value is None:
                out.append(x)
            else:
                out.extend(value if x > 0 else invert_word(value))
        return reduce_word(out)


def _dedupe_relators(relators):
    seen = {}
    for r in relators:
        key = canonical_class(r)
        if key and key not in seen:
            seen[key] = key
    return sorted(seen.values(), key=lambda r: (len(r), r))


def simplify_presentation(rank, relators, max_length=ELIMINATION_LENGTH):
    """
    Eliminate generators that occur exactly once in a short relator.

    A relator ``x^e u`` with ``x`` absent from ``u`` lets ``x`` be replaced by a word in the
    other generators; the resulting presentation defines an isomorphic group.

    Parameters
    ----------
    rank : int
    relators : list of tuple
    max_length : int
        Only relators at most this long are used for eliminations.

    Returns
    -------
    Presentation
    """
    relators = _dedupe_relators(relators)
    substitutions = {}
    limit = max(4 * sum(len(r) for r in relators), 200)
    while True:
        choice = None
        for r in relators:
            if len(r) > max_length:
                break
            counts = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = sorted(x for x, n in counts.items() if n == 1)
            if once:
                choice = (r, once[0])
                break
        if choice is None:
            break
        r, letter = choice
        k = [abs(x) for x in r].index(letter)
        rotated = r[k:] + r[:k]
        rest = rotated[1:]
        value = invert_word(rest) if rotated[0] > 0 else rest
        remaining = [cyclic_reduce(_substitute(s, letter, value)) for s in relators if s != r]
        remaining = _dedupe_relators(remaining)
        if sum(len(s) for s in remaining) > limit:
            break
        relators = remaining
        for key in list(substitutions):
            substitutions[key] = _substitute(substitutions[key], letter, value)
        substitutions[letter] = value
    letters = [x for x in range(1, rank + 1) if x not in substitutions]
    return Presentation(rank, letters, relators, substitutions)


class QuotientModel:
    """
    An exact model of ``F / N`` where ``N`` is the normal closure of finitely many words.

    ``kind`` is ``'free'`` (the simplified presentation has no relators), ``'abelian'``
    (every commutator was proven trivial; labels are Hermite-reduced exponent vectors) or
    ``'finite'`` (coset enumeration of the trivial subgroup closed). Labels are hashable and
    ``label(u) == label(v)`` iff ``u`` and ``v`` have the same image in the quotient.
    """

    def __init__(self, kind, presentation, lattice=None, table=None):
        self.kind = kind
        self.presentation = presentation
        self.lattice = lattice
        self.table = table
        self._conjugators = None

    def __repr__(self):
        return '<QuotientModel {}> {}'.format(self.kind, self.presentation)

    @property
    def rank(self):
        return self.presentation.rank

    def identity(self):
        return self.label(())

    def label(self, w):
        word = self.presentation.rewrite(w)
        if self.kind == 'free':
            return word
        if self.kind == 'abelian':
            return self.lattice.reduce(abelian_vector(word, self.rank))
        return self.table.trace(self.table.start, word, create=False)

    def step(self, label, letter):
        word = self.presentation.rewrite((letter,))
        if self.kind == 'free':
            return reduce_word(label + word)
        if self.kind == 'abelian':
            return self.lattice.reduce(np.asarray(label) + abelian_vector(word, self.rank))
        return self.table.trace(label, word, create=False)

    def is_trivial(self, w):
        return self.label(w) == self.identity()

    def conjugate(self, u, v):
        """Whether ``u`` and ``v`` are conjugate in the quotient."""
        if self.kind == 'free':
            return cyclic_reduce(self.label(u)) in _rotations(self.label(v))
        if self.kind == 'abelian':
            return self.label(u) == self.label(v)
        if self._conjugators is None:
            self._conjugators = list(self.table.spanning_words(self.presentation.letters)
                                     .values())
        target = self.label(v)
        word = self.presentation.rewrite(u)
        for h in self._conjugators:
            if self.label(multiply(h, word, invert_word(h))) == target:
                return True
        return False


def _rotations(w):
    u = cyclic_reduce(w)
    return set(u[k:] + u[:k] for k in range(len(u))) or {()}


def resolve_quotient(rank, gens, budget=COSET_BUDGET):
    """
    Build an exact ``QuotientModel`` of the free group of ``rank`` modulo the normal closure
    of ``gens``, or raise ``UnresolvedQuotient``.

    Results are cached in-process by ``(rank, classes of gens)``.

    Examples
    --------
    >>> resolve_quotient(2, [(1,)]).kind
    'free'
    >>> resolve_quotient(2, [(1, 2, -1, -2)]).kind
    'abelian'
    """
    relators = _dedupe_relators(gens)
    key = (rank, tuple(relators))
    cached = _covspecpy_internal_quotient_caches.get(key)
    if isinstance(cached, QuotientModel):
        return cached
    if cached is not None and cached >= budget:
        raise UnresolvedQuotient('quotient of rank {} by {} relators not resolved'.format(
            rank, len(relators)))

    presentation = simplify_presentation(rank, relators)
    letters = presentation.letters
    model = None
    if not presentation.relators:
        model = QuotientModel('free', presentation)
    elif len(letters) <= 1:
        model = _abelian_model(presentation)
    else:
        commutators = [(a, b, -a, -b) for a, b in combinations(letters, 2)]
        table = CosetTable(presentation.relators, budget=budget)

        def all_commute(t):
            start = t.find(t.start)
            return all(t.trace(start, c, create=False) == start for c in commutators)

        try:
            table.enumerate(stop=all_commute)
            if all_commute(table):
                model = _abelian_model(presentation)
            elif table.complete and table.is_closed(letters):
                model = QuotientModel('finite', presentation, table=table)
        except CosetBudgetExceeded:
            model = None

    if model is None:
        _covspecpy_internal_quotient_caches[key] = budget
        raise UnresolvedQuotient('quotient of rank {} by {} relators not resolved'.format(
            rank, len(relators)))
    _covspecpy_internal_quotient_caches[key] = model
    return model


def _abelian_model(presentation):
    rank = presentation.rank
    lattice = AbelianLattice([abelian_vector(r, rank) for r in presentation.relators], rank)
    return QuotientModel('abelian', presentation, lattice=lattice)


class ClosureWitness:
    """
    A word written as a product of conjugates of generators.

    ``factors`` lists ``(conjugator, index, exponent)``, each standing for
    ``c gens[index]^exponent c^-1``. Their product, freely reduced, is ``word``.
    """

    def __init__(self, word, gens, factors):
        self.word = reduce_word(word)
        self.gens = [reduce_word(g) for g in gens]
        self.factors = list(factors)

    def __repr__(self):
        return '<ClosureWitness> {} as {} conjugates'.format(list(self.word), len(self.factors))

    def __len__(self):
        return len(self.factors)

    def product(self):
        out = ()
        for c, k, e in self.factors:
            g = self.gens[k] if e > 0 else invert_word(self.gens[k])
            out = multiply(out, c, g, invert_word(c))
        return out

    def verify(self):
        return self.product() == self.word


def find_closure_witness(w, gens, max_states=WITNESS_STATES):
    """
    Search for ``w`` as a product of conjugates of ``gens``.

    Best-first over reduced words, shortest first: each move inserts a rotation of a generator
    or its inverse at some position, which multiplies by a conjugate of it. Reaching the empty
    word gives the product.

    Returns
    -------
    ClosureWitness or None
        None when ``max_states`` words were seen without reaching the identity.

    Examples
    --------
    >>> find_closure_witness((2, 1, -2), [(1,)]).factors
    [((2,), 0, 1)]
    """
    w = reduce_word(w)
    gens = [reduce_word(g) for g in gens]
    moves = {}
    for k, g in enumerate(gens):
        for e, base in ((1, g), (-1, invert_word(g))):
            for s in range(len(base)):
                moves.setdefault(base[s:] + base[:s], (base[:s], k, e))
    longest = max((len(g) for g in gens), default=0)
    limit = len(w) + 2 * longest
    parent = {w: None}
    heap = [(len(w), 0, w)]
    counter = 1
    while heap and () not in parent and len(parent) < max_states:
        _, _, u = heapq.heappop(heap)
        for p in range(len(u) + 1):
            a, b = u[:p], u[p:]
            for rotation, (s, k, e) in moves.items():
                nxt = reduce_word(a + rotation + b)
                if len(nxt) > limit or nxt in parent:
                    continue
                parent[nxt] = (u, a, s, k, e)
                heapq.heappush(heap, (len(nxt), counter, nxt))
                counter += 1
                if not nxt:
                    break
            if () in parent:
                break
    if () not in parent:
        return None
    steps = []
    u = ()
    while parent[u] is not None:
        prev, a, s, k, e = parent[u]
        steps.append((multiply(a, invert_word(s)), k, -e))
        u = prev
    return ClosureWitness(w, gens, list(reversed(steps)))


def normal_closure_member(w, gens, budget=COSET_BUDGET, return_reason=False,
                          return_witness=False, witness_states=WITNESS_STATES):
    """
    Decide whether ``w`` lies in the normal closure of ``gens``.

    The answer is ``Yes`` when a coset enumeration (or an exact rewriting) shows ``w`` is
    trivial, ``No`` only with a certificate (an exponent-sum obstruction, a free quotient or
    a completed enumeration), and ``Unknown`` when ``budget`` cosets did not settle it.

    Parameters
    ----------
    w : tuple
    gens : list of tuple
    budget : int
        Maximum number of cosets to define.
    return_reason : bool
        If True, return ``(verdict, reason)``.
    return_witness : bool
        If True, also return a ``ClosureWitness`` for a ``Yes`` found within
        ``witness_states`` words of ``find_closure_witness``, else None. With both flags the
        result is ``(verdict, reason, witness)``.
    witness_states : int

    Returns
    -------
    str
        ``'Yes'``, ``'No'`` or ``'Unknown'``.

    Examples
    --------
    >>> normal_closure_member((1,), [(2,)])
    'No'
    >>> normal_closure_member((1, 2, -1, -2), [(1,)])
    'Yes'
    """
    given = [reduce_word(g) for g in gens]

    def answer(verdict, reason):
        out = (verdict,)
        if return_reason:
            out += (reason,)
        if return_witness:
            out += (find_closure_witness(w, given, max_states=witness_states)
                    if verdict == YES else None,)
        return out if len(out) > 1 else verdict

    w = reduce_word(w)
    gens = [g for g in given if g]
    if not w:
        return answer(YES, 'trivial word')
    if not gens:
        return answer(NO, 'nontrivial word in a free group')
    classes = set(canonical_class(g) for g in gens)
    if canonical_class(w) in classes:
        return answer(YES, 'conjugate of a generator')

    rank = word_rank(gens + [w])
    lattice = AbelianLattice([abelian_vector(g, rank) for g in gens], rank)
    if not lattice.contains(abelian_vector(w, rank)):
        return answer(NO, 'exponent sums outside the relator lattice')

    presentation = simplify_presentation(rank, gens)
    target = presentation.rewrite(w)
    if not target:
        return answer(YES, 'rewrites to the identity')
    if not presentation.relators:
        return answer(NO, 'nontrivial in a free quotient')

    table = CosetTable(presentation.relators, budget=budget)

    def closes(t):
        start = t.find(t.start)
        return t.trace(start, target, create=False) == start

    try:
        table.enumerate(stop=closes)
    except CosetBudgetExceeded:
        return answer(UNKNOWN, 'coset budget of {} exhausted'.format(budget))
    if closes(table):
        return answer(YES, 'coset enumeration')
    used = set(abs(x) for r in presentation.relators for x in r)
    if table.is_closed(sorted(used)) and all(abs(x) in used for x in target):
        return answer(NO, 'completed coset enumeration')
    return answer(UNKNOWN, 'enumeration closed without covering every letter')
