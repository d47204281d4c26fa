import pandas as pd

from fractions import Fraction

from .covers import (ClosurePresentation, NormalGenerator, BALL_CLASS, outside_generators,
                     compare_covers)
from .errors import InvalidGraph, ParameterError, UnresolvedQuotient
from .free_group import (AbelianLattice, SubgroupFolding, abelian_vector,
                         class_length, conjugate_into_subgroup, enumerate_classes,
                         invert_word, normal_closure_member, resolve_quotient)
from .graphs import (ball, ball_graph, complement_subgraph, loop_to_word, map_path,
                     rescale_graph, spanning_tree, word_to_loop)
from .numbers import COSET_BUDGET, MAX_CLASSES, format_rational, to_rational
from .utils import (YES, NO, UNKNOWN, EQUAL, CERTIFIED, HOMOLOGY_ONLY, parallel_map,
                    _vertex_key)


_LEVEL_STRENGTH = {CERTIFIED: 2, HOMOLOGY_ONLY: 1, UNKNOWN: 0}


class SpectrumValue:
    """
    One value of a spectrum with its evidence.

    ``witness`` is a word whose class changes the cover at this value (``None`` for values
    only added by lower semiclosure). ``mesh_artifact`` is set when every witness dies once the
    graph's declared faces are filled in.
    """

    def __init__(self, value, level=CERTIFIED, mesh_artifact=False, witness=None,
                 semiclosure=False):
        self.value = Fraction(value)
        self.level = level
        self.mesh_artifact = mesh_artifact
        self.witness = witness
        self.semiclosure = semiclosure

    def __repr__(self):
        flags = []
        if self.mesh_artifact:
            flags.append('mesh')
        if self.semiclosure:
            flags.append('semiclosure')
        return '<SpectrumValue {}> {}{}'.format(self.value, self.level,
                                                 ' ({})'.format(', '.join(flags)) if flags
                                                 else '')

    def __eq__(self, other):
        return (isinstance(other, SpectrumValue) and self.value == other.value and
                self.level == other.level and self.mesh_artifact == other.mesh_artifact and
                self.semiclosure == other.semiclosure)

    def __hash__(self):
        return hash((self.value, self.level, self.mesh_artifact, self.semiclosure))

    def rescaled(self, r):
        return SpectrumValue(self.value / r, self.level, self.mesh_artifact, self.witness,
                             self.semiclosure)


class Spectrum:
    """
    A finite set of exact positive values with certificate levels and mesh flags.

    Parameters
    ----------
    values : list of SpectrumValue
    kind : str
        ``'covering'``, ``'r-cutoff'``, ``'cutoff'`` or ``'length'``.
    cap : Fraction
        Values were searched up to ``cap``.
    R : Fraction or None
    budget : int or None
    marking : dict or None
        For length spectra, the canonical class words realising each value.
    """

    def __init__(self, values, kind, cap, R=None, budget=None, marking=None):
        merged = {}
        for v in values:
            merged[v.value] = v
        self.values = [merged[k] for k in sorted(merged)]
        self.kind = kind
        self.cap = cap
        self.R = R
        self.budget = budget
        self.marking = marking or {}
        self.ladder = None
        self.stabilized = None

    def __repr__(self):
        return '<Spectrum {}> {{{}}}'.format(self.kind, ', '.join(str(v.value)
                                                                 for v in self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, value):
        return Fraction(value) in self.value_set()

    def __getitem__(self, value):
        for v in self.values:
            if v.value == Fraction(value):
                return v
        raise KeyError(value)

    def value_set(self):
        return set(v.value for v in self.values)

    def certain(self):
        """Values with a Certified or Homology-only certificate."""
        return set(v.value for v in self.values if v.level != UNKNOWN)

    def has_unknown(self):
        return any(v.level == UNKNOWN for v in self.values)

    def without_artifacts(self):
        out = Spectrum([v for v in self.values if not v.mesh_artifact], self.kind, self.cap,
                       R=self.R, budget=self.budget, marking=self.marking)
        out.ladder = self.ladder
        out.stabilized = self.stabilized
        return out

    def to_dataframe(self):
        rows = []
        for v in self.values:
            if v.witness is None:
                witness = ''
            elif isinstance(v.witness, tuple):
                witness = ' '.join(str(x) for x in v.witness)
            else:
                witness = str(v.witness)
            rows.append({'numerator': v.value.numerator,
                         'denominator': v.value.denominator,
                         'certificate': v.level,
                         'mesh_artifact': v.mesh_artifact,
                         'semiclosure': v.semiclosure,
                         'witness': witness})
        return pd.DataFrame(rows, columns=['numerator', 'denominator', 'certificate',
                                           'mesh_artifact', 'semiclosure', 'witness'])


class SymbolicChain:
    """
    A one-parameter family of values ``offset + scale / (j + shift)`` for ``j >= start``.

    Its infimum is ``offset`` when ``scale > 0`` (a decreasing chain) and its first term
    otherwise.

    Examples
    --------
    >>> chain = SymbolicChain(1, 1)
    >>> chain.term(2)
    Fraction(3, 2)
    >>> chain.limit
    Fraction(1, 1)
    """

    def __init__(self, offset, scale, shift=0, start=1):
        self.offset = to_rational(offset)
        self.scale = to_rational(scale)
        self.shift = to_rational(shift)
        self.start = int(start)
        if self.start + self.shift <= 0:
            raise ParameterError('chain terms must have positive denominators')

    def __repr__(self):
        return '<SymbolicChain> {} + {}/(j + {}), j >= {}'.format(self.offset, self.scale,
                                                                 self.shift, self.start)

    def __eq__(self, other):
        return (isinstance(other, SymbolicChain) and
                (self.offset, self.scale, self.shift, self.start) ==
                (other.offset, other.scale, other.shift, other.start))

    def __hash__(self):
        return hash((self.offset, self.scale, self.shift, self.start))

    def term(self, j):
        return self.offset + self.scale / (j + self.shift)

    def terms(self, n):
        return [self.term(j) for j in range(self.start, self.start + n)]

    @property
    def decreasing(self):
        return self.scale > 0

    @property
    def limit(self):
        return self.offset

    def observed(self, values, n=None):
        """How many leading terms appear in ``values``."""
        values = set(values)
        count = 0
        j = self.start
        while self.term(j) in values and (n is None or count < n):
            count += 1
            j += 1
        return count

    def rescaled(self, r):
        r = to_rational(r)
        return SymbolicChain(self.offset / r, self.scale / r, self.shift, self.start)


def lower_semiclosure(values, chains=()):
    """
    Add the infimum of every declared decreasing chain to a finite set of values.

    Finite sets are already lower semiclosed; limits of decreasing sequences can only come
    from chains declared symbolically. Increasing chains add nothing.

    Parameters
    ----------
    values : iterable of rational
    chains : list of SymbolicChain

    Returns
    -------
    set of Fraction

    Examples
    --------
    >>> sorted(lower_semiclosure({2, Fraction(3, 2)}, [SymbolicChain(1, 1)]))
    [Fraction(1, 1), Fraction(3, 2), Fraction(2, 1)]
    """
    out = set(to_rational(v) for v in values)
    for chain in chains:
        if chain.decreasing and chain.limit > 0:
            out.add(chain.limit)
    return out


class TruncationFamily:
    """
    Nested finite graphs modelling a complete noncompact space.

    Level ``n`` is exact within its scope radius: distances from its basepoint below
    ``scope_radii[n]`` are final. ``inclusions[n]`` maps vertices of level ``n`` into level
    ``n + 1`` (identity on ids when omitted).

    Parameters
    ----------
    levels : list of MetricGraph
    scope_radii : list of rational
        Strictly increasing.
    chains : list of SymbolicChain
        Decreasing chains of cut-off values known to occur, used for the lower semiclosure.
    inclusions : list of dict or None
    name : str or None
    slipping_limit : rational or None
        Declared infimum of slipping lengths, reported next to computed profiles.
    """

    def __init__(self, levels, scope_radii, chains=(), inclusions=None, name=None,
                 slipping_limit=None):
        self.levels = list(levels)
        self.scope_radii = [to_rational(r) for r in scope_radii]
        if len(self.levels) == 0:
            raise ParameterError('a family needs at least one level')
        if len(self.scope_radii) != len(self.levels):
            raise ParameterError('need one scope radius per level')
        if any(b <= a for a, b in zip(self.scope_radii, self.scope_radii[1:])):
            raise ParameterError('scope radii must strictly increase')
        if inclusions is None:
            inclusions = [{v: v for v in g.vertices} for g in self.levels[:-1]]
        self.inclusions = [dict(m) for m in inclusions]
        if len(self.inclusions) != len(self.levels) - 1:
            raise ParameterError('need one inclusion map between consecutive levels')
        for k, (small, big, f) in enumerate(zip(self.levels, self.levels[1:],
                                                 self.inclusions)):
            known = set(big.vertices)
            if set(f) != set(small.vertices) or any(v not in known for v in f.values()):
                raise InvalidGraph('inclusion {} is not defined on all vertices'.format(k))
            if len(set(f.values())) != len(f):
                raise InvalidGraph('inclusion {} is not injective'.format(k))
            if f[small.basepoint] != big.basepoint:
                raise InvalidGraph('inclusion {} does not preserve the basepoint'.format(k))
        self.chains = list(chains)
        self.name = name
        self.slipping_limit = None if slipping_limit is None else to_rational(slipping_limit)

    def __repr__(self):
        return '<TruncationFamily{}> {} levels, scope radii {}'.format(
            ' ' + self.name if self.name else '', len(self.levels),
            [str(r) for r in self.scope_radii])

    def __len__(self):
        return len(self.levels)

    def embed(self, v, from_level, to_level):
        if to_level < from_level:
            raise ParameterError('inclusions only go up')
        for k in range(from_level, to_level):
            v = self.inclusions[k][v]
        return v

    def transport(self, w, from_level, to_level, strict=False):
        """
        Carry a word of level ``from_level`` into the generators of ``to_level``.

        Every edge of the loop goes to its image edge, so parallel and non-geodesic edges keep
        their class. An edge with no image (a cap that drifts outward between levels) is
        replaced by a geodesic, or raises ``InvalidGraph`` when ``strict``.
        """
        source = self.levels[from_level]
        target = self.levels[to_level]
        loop = word_to_loop(source, w)
        image = map_path(source, loop, target, lambda v: self.embed(v, from_level, to_level),
                         strict=strict)
        return loop_to_word(target, image)

    def check_inclusions(self):
        """List ``(level, vertex)`` pairs whose distance from the basepoint is not preserved."""
        violations = []
        for k, (small, big) in enumerate(zip(self.levels, self.levels[1:])):
            d_small = small.distances(small.basepoint)
            d_big = big.distances(big.basepoint)
            for v in small.vertices:
                if d_small[v] < self.scope_radii[k] and \
                        d_big[self.inclusions[k][v]] != d_small[v]:
                    violations.append((k, v))
        return violations

    def rescale(self, r):
        r = to_rational(r)
        return TruncationFamily([rescale_graph(g, r) for g in self.levels],
                                [rho / r for rho in self.scope_radii],
                                chains=[c.rescaled(r) for c in self.chains],
                                inclusions=self.inclusions, name=self.name,
                                slipping_limit=None if self.slipping_limit is None
                                else self.slipping_limit / r)


def length_spectrum(g, cap, max_classes=MAX_CLASSES, verbose=False):
    """
    The lengths of all nontrivial classes up to ``cap``, each marked by its classes.

    Examples
    --------
    >>> sorted(length_spectrum(wedge_of_circles([6, 10]), 17).value_set())
    [Fraction(6, 1), Fraction(10, 1), Fraction(12, 1), Fraction(16, 1)]
    """
    cap = to_rational(cap)
    if cap <= 0:
        raise ParameterError('cap must be positive')
    classes = enumerate_classes(g, cap, max_classes=max_classes, verbose=verbose)
    marking = {}
    for c in classes:
        marking.setdefault(c.length, []).append(c.cyclic)
    values = [SpectrumValue(length, CERTIFIED, witness=words[0])
              for length, words in marking.items()]
    return Spectrum(values, 'length', cap, marking=marking)


def _face_words(g):
    return [loop_to_word(g, face) for face in g.faces]


def _dies_with_faces(g, rank, old_words, witnesses, budget):
    faces = _face_words(g)
    if not faces:
        return False
    try:
        model = resolve_quotient(rank, old_words + faces, budget=budget)
        return all(model.is_trivial(w) for w in witnesses)
    except UnresolvedQuotient:
        return all(normal_closure_member(w, old_words + faces, budget=budget) == YES
                   for w in witnesses)


def _decide_value(g, delta, classes, outside, budget):
    below = [NormalGenerator(c.cyclic, c, BALL_CLASS) for c in classes if c.length < 2 * delta]
    at = [NormalGenerator(c.cyclic, c, BALL_CLASS) for c in classes if c.length == 2 * delta]
    p1 = ClosurePresentation(g, below + outside, delta)
    p2 = ClosurePresentation(g, below + at + outside, delta, inclusive=True)
    comparison = compare_covers(p1, p2, budget=budget)
    if comparison.verdict == EQUAL:
        return None
    if comparison.verdict == UNKNOWN:
        return SpectrumValue(delta, UNKNOWN, witness=comparison.witness)
    level = HOMOLOGY_ONLY if comparison.level == 'homology' else CERTIFIED
    old = p1.words()
    try:
        model = resolve_quotient(p1.rank, old, budget=budget)
        witnesses = [gen.word for gen in at if not model.is_trivial(gen.word)]
    except UnresolvedQuotient:
        witnesses = [comparison.witness]
    artifact = _dies_with_faces(g, p1.rank, old, witnesses, budget)
    return SpectrumValue(delta, level, mesh_artifact=artifact, witness=comparison.witness)


def _spectrum(g, cap, R, basepoint, kind, budget, max_classes, cores, verbose):
    cap = to_rational(cap)
    if cap <= 0:
        raise ParameterError('cap must be positive')
    classes = enumerate_classes(g, 2 * cap, max_classes=max_classes, verbose=verbose)
    outside = [] if R is None else outside_generators(g, R, basepoint)
    candidates = sorted(set(c.length / 2 for c in classes))
    if verbose:
        print('Checking {} candidate values...'.format(len(candidates)))

    def decide(delta):
        return _decide_value(g, delta, classes, outside, budget)

    decided = parallel_map(decide, candidates, cores=cores, verbose=verbose)
    return Spectrum([v for v in decided if v is not None], kind, cap, R=R, budget=budget)


def covering_spectrum(g, cap, budget=COSET_BUDGET, max_classes=MAX_CLASSES, cores=1,
                      verbose=False):
    """
    The covering spectrum up to ``cap``.

    ``delta`` is in the spectrum iff adding the classes of length exactly ``2 delta`` changes
    the normal closure of the classes shorter than ``2 delta``. Candidates are half lengths of
    classes, so the search is exhaustive up to ``cap``.

    Parameters
    ----------
    g : MetricGraph
    cap : rational
    budget : int
        Coset budget for each undecided comparison.
    max_classes : int
    cores : int
        If 1, runs on a single core / process. If greater than 1, will run on a multiprocessing
        pool with that many cores / processes.
    verbose : bool
        If True, will print out statements on computational progress.

    Returns
    -------
    Spectrum

    Examples
    --------
    >>> sorted(covering_spectrum(wedge_of_circles([6, 10]), 6).value_set())
    [Fraction(3, 1), Fraction(5, 1)]
    """
    return _spectrum(g, cap, None, g.basepoint, 'covering', budget, max_classes, cores,
                     verbose)


def r_cutoff_spectrum(g, basepoint, R, cap, budget=COSET_BUDGET, max_classes=MAX_CLASSES,
                      cores=1, verbose=False):
    """
    The R cut-off covering spectrum up to ``cap``: as ``covering_spectrum`` with every loop
    outside the closed ball ``B(basepoint, R)`` added to both closures.

    Examples
    --------
    >>> len(r_cutoff_spectrum(cylinder(6, 20), 'r10.0', 3, 4).without_artifacts())
    0
    """
    R = to_rational(R)
    if R <= 0:
        raise ParameterError('R must be positive')
    basepoint = g.basepoint if basepoint is None else basepoint
    return _spectrum(g, cap, R, basepoint, 'r-cutoff', budget, max_classes, cores, verbose)


def spectrum_value(g, delta, R=None, basepoint=None, budget=COSET_BUDGET,
                   max_classes=MAX_CLASSES):
    """
    Decide a single value: the ``SpectrumValue`` at ``delta``, or ``None`` when ``delta`` is
    not in the (R cut-off) covering spectrum.
    """
    delta = to_rational(delta)
    basepoint = g.basepoint if basepoint is None else basepoint
    classes = enumerate_classes(g, 2 * delta, max_classes=max_classes)
    if not any(c.length == 2 * delta for c in classes):
        return None
    outside = [] if R is None else outside_generators(g, to_rational(R), basepoint)
    return _decide_value(g, delta, classes, outside, budget)


def _merge(values):
    best = {}
    for v in values:
        current = best.get(v.value)
        if current is None:
            best[v.value] = SpectrumValue(v.value, v.level, v.mesh_artifact, v.witness)
        else:
            if _LEVEL_STRENGTH[v.level] > _LEVEL_STRENGTH[current.level]:
                current.level = v.level
                current.witness = v.witness
            current.mesh_artifact = current.mesh_artifact and v.mesh_artifact
    return list(best.values())


def cutoff_spectrum(fam, cap, budget=COSET_BUDGET, max_classes=MAX_CLASSES, cores=1,
                    verbose=False):
    """
    The cut-off covering spectrum of a truncation family up to ``cap``.

    Level ``n`` contributes its R cut-off spectrum at ``R = scope_radii[n]``. The union is
    lower semiclosed using the family's declared chains (only chains with at least two terms
    present). ``ladder`` on the result is a table of the per-level sets and ``stabilized``
    says whether the last level added nothing.

    Parameters
    ----------
    fam : TruncationFamily
    cap : rational
    budget : int
    max_classes : int
    cores : int
    verbose : bool

    Returns
    -------
    Spectrum
    """
    cap = to_rational(cap)

    def level_spectrum(n):
        g = fam.levels[n]
        return r_cutoff_spectrum(g, g.basepoint, fam.scope_radii[n], cap, budget=budget,
                                 max_classes=max_classes, verbose=verbose)

    spectra = parallel_map(level_spectrum, list(range(len(fam))), cores=cores,
                           verbose=verbose)
    rows = []
    union = []
    seen = set()
    for n, s in enumerate(spectra):
        new = s.value_set() - seen
        seen |= s.value_set()
        union.extend(s.values)
        rows.append({'level': n,
                     'R': format_rational(fam.scope_radii[n]),
                     'values': ' '.join(format_rational(v) for v in sorted(s.value_set())),
                     'new_values': ' '.join(format_rational(v) for v in sorted(new)),
                     'changed': bool(new) and n > 0})

    values = _merge(union)
    present = set(v.value for v in values if not v.mesh_artifact)
    chains = [c for c in fam.chains if c.observed(present) >= 2]
    for limit in sorted(lower_semiclosure(set(), chains)):
        if limit <= cap and limit not in present:
            values = [v for v in values if v.value != limit]
            values.append(SpectrumValue(limit, CERTIFIED, semiclosure=True,
                                        witness='infimum of decreasing chain'))
    out = Spectrum(values, 'cutoff', cap, R=fam.scope_radii[-1], budget=budget)
    out.ladder = pd.DataFrame(rows, columns=['level', 'R', 'values', 'new_values', 'changed'])
    out.stabilized = len(rows) >= 2 and not rows[-1]['changed']
    return out


def rescale_spectrum(s, r):
    """
    Divide every value of a spectrum by ``r``.

    Examples
    --------
    >>> s = Spectrum([SpectrumValue(3), SpectrumValue(5)], 'covering', Fraction(6))
    >>> sorted(rescale_spectrum(s, 2).value_set())
    [Fraction(3, 2), Fraction(5, 2)]
    """
    r = to_rational(r)
    if r <= 0:
        raise ParameterError('scale must be positive')
    marking = {k / r: v for k, v in s.marking.items()}
    return Spectrum([v.rescaled(r) for v in s.values], s.kind, s.cap / r,
                    R=None if s.R is None else s.R / r, budget=s.budget, marking=marking)


def _component_words(g, R, basepoint):
    fragment = complement_subgraph(g, ball(g, basepoint, R, closed=True))
    gens = outside_generators(g, R, basepoint)
    return [[gen.word for gen in gens if _in_component(g, gen, component.vertices)]
            for component in fragment.components]


def _in_component(g, gen, vertices):
    return all(v in vertices for v in gen.cls.loop.vertices(g))


def _conjugate_into(g, w, subgroup_words, budget):
    faces = _face_words(g)
    if not faces:
        return YES if conjugate_into_subgroup(w, SubgroupFolding(subgroup_words)) else NO
    rank = spanning_tree(g).rank
    try:
        model = resolve_quotient(rank, faces, budget=budget)
    except UnresolvedQuotient:
        return UNKNOWN
    if model.kind == 'free':
        fold = SubgroupFolding([model.label(h) for h in subgroup_words])
        return YES if conjugate_into_subgroup(model.label(w), fold) else NO
    if model.kind == 'abelian':
        vectors = [abelian_vector(r, rank) for r in faces]
        vectors += [abelian_vector(h, rank) for h in subgroup_words]
        return YES if AbelianLattice(vectors, rank).contains(abelian_vector(w, rank)) else NO
    return UNKNOWN


def loops_to_infinity(fam, w, level=None, budget=COSET_BUDGET, return_radius=False):
    """
    Whether the class of ``w`` can be pushed outside every tested compact ball.

    At level ``level`` the class is tested against each scope radius up to that level's: it
    must be freely homotopic (through the declared faces, if any) into one component of the
    complement of the closed ball.

    Parameters
    ----------
    fam : TruncationFamily
    w : tuple
        A word in the generators of ``fam.levels[level]``.
    level : int or None
        Defaults to the last level.
    budget : int
    return_radius : bool
        If True, return ``(verdict, blocking radius or None)``.

    Returns
    -------
    str
        ``'Yes'``, ``'No'`` or ``'Unknown'``.
    """
    level = len(fam) - 1 if level is None else level
    g = fam.levels[level]
    verdict, blocking = YES, None
    for R in fam.scope_radii[:level + 1]:
        answers = [_conjugate_into(g, w, words, budget)
                   for words in _component_words(g, R, g.basepoint)]
        if YES in answers:
            continue
        verdict, blocking = (UNKNOWN if UNKNOWN in answers else NO), R
        break
    return (verdict, blocking) if return_radius else verdict


def slipping_length_profile(fam, w, from_level=0, budget=COSET_BUDGET,
                            max_classes=MAX_CLASSES):
    """
    The shortest length of a loop freely homotopic to ``w`` at each level.

    Free homotopies may pass through the declared faces. The profile is non-increasing since
    each level contains the previous one.

    Returns
    -------
    list of tuple
        ``(level, length)`` pairs.
    """
    profile = []
    for n in range(from_level, len(fam)):
        g = fam.levels[n]
        word = fam.transport(w, from_level, n)
        bound = class_length(g, word).length
        faces = _face_words(g)
        if not faces:
            profile.append((n, bound))
            continue
        model = resolve_quotient(spanning_tree(g).rank, faces, budget=budget)
        inverse = invert_word(word)
        best = bound
        for c in enumerate_classes(g, bound, max_classes=max_classes):
            if c.length >= best:
                break
            if model.conjugate(c.cyclic, word) or model.conjugate(c.cyclic, inverse):
                best = c.length
                break
        if profile and best > profile[-1][1]:
            best = profile[-1][1]
        profile.append((n, best))
    return profile


def _ball_signature(g, center, r):
    sub = ball_graph(g, center, r)
    dist = sub.distances(center)
    vertices = sorted(((v, dist[v]) for v in sub.vertices), key=lambda t: _vertex_key(t[0]))
    edges = sorted((tuple(sorted((u, v), key=_vertex_key)) + (length,)
                    for u, v, length in sub.edges), key=lambda t: (_vertex_key(t[0]),
                                                                   _vertex_key(t[1]), t[2]))
    return vertices, edges


def localization_report(g1, x1, g2, x2, R, D, r, budget=COSET_BUDGET,
                        max_classes=MAX_CLASSES):
    """
    Compare the R cut-off spectra of two pointed spaces below ``D``.

    When the balls of radius ``r`` are isometric and ``3 (R + 2 D) <= r`` the two sets must
    agree; below that bound disagreement is allowed and only recorded.

    Returns
    -------
    dict
        ``values1``, ``values2`` (certain values up to ``D``), ``agree``, ``balls_isometric``,
        ``bound_holds``.
    """
    R, D, r = to_rational(R), to_rational(D), to_rational(r)
    s1 = r_cutoff_spectrum(g1, x1, R, D, budget=budget, max_classes=max_classes)
    s2 = r_cutoff_spectrum(g2, x2, R, D, budget=budget, max_classes=max_classes)
    values1 = sorted(v for v in s1.certain() if v <= D)
    values2 = sorted(v for v in s2.certain() if v <= D)
    return {'values1': values1,
            'values2': values2,
            'agree': values1 == values2,
            'balls_isometric': _ball_signature(g1, x1, r) == _ball_signature(g2, x2, r),
            'bound_holds': 3 * (R + 2 * D) <= r}


def ball_roundtrip(g, basepoint, R, delta, r, budget=COSET_BUDGET):
    """
    Whether ``delta`` is in the R cut-off spectrum of ``g`` and of the ball ``B(basepoint, r)``
    taken with its induced length metric. Returns the pair of booleans.
    """
    inner = ball_graph(g, basepoint, r)
    whole = spectrum_value(g, delta, R=R, basepoint=basepoint, budget=budget)
    local = spectrum_value(inner, delta, R=R, basepoint=basepoint, budget=budget)
    return whole is not None, local is not None
