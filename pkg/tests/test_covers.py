import pytest

from fractions import Fraction
from ..covspecpy import covers
from ..covspecpy.covers import (delta_closure, cutoff_closure, outside_generators,
                                compare_covers, build_cover_ball, ball_loop_decompose,
                                decomposition_matches, is_cut_trivial, OUTSIDE_LOOP, BALL_CLASS,
                                ClosurePresentation, NormalGenerator)
from ..covspecpy.free_group import (canonical_class, class_length, enumerate_classes,
                                    normal_closure_member)
from ..covspecpy.graphs import EdgePath, word_to_loop, loop_to_word, loop_in_ball, random_loop
from ..covspecpy.zoo import (cycle, wedge_of_circles, cylinder, line_with_circles, grid_torus,
                             loop_through)
from ..covspecpy.errors import (DeckTransformationError, ParameterError, LoopOutsideBall,
                                UnresolvedQuotient)
from ..covspecpy.rng import set_seed


def _around(n):
    return EdgePath('c0', [(i, 1) for i in range(n)])


def test_delta_closure_cycle():
    assert len(delta_closure(cycle(6), 2).generators) == 0
    assert len(delta_closure(cycle(6), 3).generators) == 0
    assert len(delta_closure(cycle(6), 3, inclusive=True).generators) == 1
    assert len(delta_closure(cycle(6), '7/2').generators) == 1


def test_delta_closure_contains():
    p = delta_closure(wedge_of_circles([6, 10]), 4)
    assert (1,) in p
    assert (2,) not in p
    assert (-1,) in p


def test_delta_closure_needs_positive_delta():
    with pytest.raises(ParameterError):
        delta_closure(cycle(6), 0)


def test_cutoff_closure_small_delta_only_outside_loops():
    p = cutoff_closure(cylinder(6, 10), '1/2', 2)
    assert len(p.ball_generators()) == 0
    assert len(p.outside_generators()) > 0
    assert all(gen.origin == OUTSIDE_LOOP for gen in p.generators)


def test_cutoff_closure_needs_positive_radius():
    with pytest.raises(ParameterError):
        cutoff_closure(cycle(6), 1, 0)


def test_outside_generators_none_for_cycle():
    assert outside_generators(cycle(6), 1) == []


def test_outside_generators_line_with_circles():
    gens = outside_generators(line_with_circles(3), 1)
    assert sorted(gen.length for gen in gens) == [Fraction(8, 3), Fraction(8, 3), 3, 3]


def test_compare_covers_differ():
    g = wedge_of_circles([6, 10])
    comparison = compare_covers(delta_closure(g, 4), delta_closure(g, 6))
    assert comparison.verdict == 'Differ'
    assert comparison.level == 'exact'
    assert canonical_class(comparison.witness) == canonical_class((2,))


def test_compare_covers_identical():
    g = wedge_of_circles([6, 10])
    comparison = compare_covers(delta_closure(g, 4), delta_closure(g, 5))
    assert comparison.verdict == 'Equal'
    assert comparison.level == 'identical'


def test_cover_ball_universal_cover_of_cycle():
    ball = build_cover_ball(delta_closure(cycle(6), 2), 9)
    assert len(ball) == 19
    assert ball.cycle_rank() == 0
    assert ball.check_local_isometry() == []


def test_cover_ball_trivial_cover_of_cycle():
    ball = build_cover_ball(delta_closure(cycle(6), '7/2'), 6)
    assert len(ball) == 6
    assert ball.cycle_rank() == 1
    assert ball.lifts_closed(_around(6))
    assert ball.check_local_isometry() == []


def test_cover_ball_wedge_cycle_rank():
    g = wedge_of_circles([6, 10])
    assert build_cover_ball(delta_closure(g, 4), 25).cycle_rank() == 5
    assert build_cover_ball(delta_closure(g, '29/10'), 25).cycle_rank() == 0


def test_cover_ball_lifts_open_in_universal_cover():
    ball = build_cover_ball(delta_closure(cycle(6), 2), 9)
    assert not ball.lifts_closed(_around(6))


def test_cover_ball_deck_check():
    ball = build_cover_ball(delta_closure(wedge_of_circles([6, 10]), 4), 12)
    assert ball.deck_check() > 0


def test_cover_ball_deck_check_flags_broken_translation(mocker):
    ball = build_cover_ball(delta_closure(wedge_of_circles([6, 10]), 4), 12)
    mocker.patch.object(ball.model, 'step', return_value='nowhere')
    with pytest.raises(DeckTransformationError):
        ball.deck_check()


def test_cover_ball_to_graph():
    ball = build_cover_ball(delta_closure(cycle(6), 2), 9)
    g = ball.to_graph()
    assert len(g.vertices) == 19
    assert g.basepoint == 'c0@0'
    assert g.betti_number() == 0
    assert set(g.labels) == set(g.vertices)


def test_cover_ball_verbose(capsys):
    build_cover_ball(delta_closure(cycle(6), 2), 3, verbose=True)
    out = capsys.readouterr().out
    assert 'Lifting ball of radius 3' in out
    assert 'Lifted 7 vertices' in out


def test_ball_loop_decompose_short_loop_kept():
    g = cycle(6)
    assert ball_loop_decompose(g, _around(6), 'c0', '7/2') == [_around(6)]


def test_ball_loop_decompose_pieces():
    g = wedge_of_circles([2, 2, 2])
    loop = word_to_loop(g, (1, 2, 3))
    pieces = ball_loop_decompose(g, loop, 'w', 2)
    assert len(pieces) == 3
    assert all(piece.length(g) < 4 for piece in pieces)
    assert decomposition_matches(g, loop, pieces)


def test_ball_loop_decompose_outside():
    with pytest.raises(LoopOutsideBall):
        ball_loop_decompose(cycle(6), _around(6), 'c0', 2)


def test_is_cut_trivial():
    g = wedge_of_circles([6, 10])
    assert is_cut_trivial(g, (1,), 4, 1) == 'Yes'
    assert is_cut_trivial(g, (2,), 4, 1) == 'No'


def _generators(g, words):
    return [NormalGenerator(w, class_length(g, w), BALL_CLASS) for w in words]


def test_torus_faces_and_a_rectangle_present_the_same_cover():
    g = grid_torus(3, 3)
    faces = _generators(g, [loop_to_word(g, f) for f in g.faces])
    rectangle = loop_through(g, ['c0|c0', 'c1|c0', 'c2|c0', 'c2|c1', 'c1|c1', 'c0|c1'])
    assert rectangle.length(g) == 6
    extra = _generators(g, [loop_to_word(g, rectangle)])
    p1 = ClosurePresentation(g, faces, 2)
    p2 = ClosurePresentation(g, faces + extra, 2)
    assert extra[0].word not in p1
    assert compare_covers(p1, p2).verdict == 'Equal'


def test_compare_covers_falls_back_on_a_closure_witness(mocker):
    g = wedge_of_circles([6, 10])
    p1 = delta_closure(g, 4)
    p2 = ClosurePresentation(g, p1.generators + _generators(g, [(1, 2, 1, -2)]), 4)
    mocker.patch.object(covers, 'resolve_quotient', side_effect=UnresolvedQuotient('mocked'))
    mocker.patch.object(covers, 'normal_closure_member', return_value='Unknown')
    comparison = compare_covers(p1, p2)
    assert comparison.verdict == 'Equal'
    assert comparison.level == 'membership'
    assert comparison.products[(1, 2, 1, -2)].verify()


def test_compare_covers_unknown_without_witness(mocker):
    g = wedge_of_circles([6, 10])
    p1 = delta_closure(g, 4)
    p2 = ClosurePresentation(g, p1.generators + _generators(g, [(1, 2, 1, -2)]), 4)
    mocker.patch.object(covers, 'resolve_quotient', side_effect=UnresolvedQuotient('mocked'))
    mocker.patch.object(covers, 'normal_closure_member', return_value='Unknown')
    mocker.patch.object(covers, 'find_closure_witness', return_value=None)
    comparison = compare_covers(p1, p2)
    assert comparison.verdict == 'Unknown'
    assert comparison.witness == (1, 2, 1, -2)


def test_delta_closure_grows_with_delta():
    g = wedge_of_circles([6, 10])
    deltas = [Fraction(k, 4) for k in range(2, 48)]
    closures = [delta_closure(g, d) for d in deltas]
    for small, large in zip(closures, closures[1:]):
        assert all(w in large for w in small.words())


def test_delta_closure_gap_property():
    g = wedge_of_circles([6, 10])
    lengths = [c.length for c in enumerate_classes(g, 24)]
    deltas = [Fraction(k, 4) for k in range(2, 48)]
    equal = 0
    for d1, d0 in zip(deltas, deltas[1:]):
        if not any(d1 <= length / 2 < d0 for length in lengths):
            assert compare_covers(delta_closure(g, d1), delta_closure(g, d0)).verdict == 'Equal'
            equal += 1
    assert equal > 30
    assert compare_covers(delta_closure(g, Fraction(11, 4)),
                          delta_closure(g, Fraction(13, 4))).verdict == 'Differ'


def test_cutoff_closure_shrinks_with_radius():
    g = line_with_circles(4)
    for R1, R2 in [(1, 2), (2, 3), (1, 3)]:
        small = cutoff_closure(g, '1/2', R2)
        large = cutoff_closure(g, '1/2', R1)
        assert len(small.outside_generators()) <= len(large.outside_generators())
        for w in small.words():
            assert normal_closure_member(w, large.words()) == 'Yes'


def test_cutoff_closure_grows_with_delta():
    g = line_with_circles(4)
    for d1, d0 in [('1/2', 2), (2, 3)]:
        small = cutoff_closure(g, d1, 2)
        large = cutoff_closure(g, d0, 2)
        for w in small.words():
            assert normal_closure_member(w, large.words()) == 'Yes'


@pytest.mark.parametrize('g,delta,radius', [(cycle(6), 2, 9), (cycle(6), 4, 9),
                                            (wedge_of_circles([6, 10]), 2, 10),
                                            (wedge_of_circles([6, 10]), 4, 12)])
def test_cover_ball_projects_onto_the_graph(g, delta, radius):
    ball = build_cover_ball(delta_closure(g, delta), radius)
    for (v, _), d in ball.distances.items():
        assert g.distance(g.basepoint, v) <= d <= radius
    for i, tail, head in ball.edges:
        assert (tail[0], head[0]) == tuple(g.edges[i][:2])
        assert abs(ball.distances[tail] - ball.distances[head]) <= g.length(i)
    below = set(v for v in g.vertices if g.distance(g.basepoint, v) <= radius)
    assert set(v for v, _ in ball.distances) == below
    assert ball.check_local_isometry() == []


def test_ball_loop_decompose_double_loop_on_c8():
    g = cycle(8)
    loop = EdgePath('c0', [(i % 8, 1) for i in range(16)])
    pieces = ball_loop_decompose(g, loop, 'c0', '9/2')
    assert pieces
    assert all(piece.length(g) < 9 for piece in pieces)
    assert all(loop_in_ball(g, piece, 'c0', '9/2') for piece in pieces)
    assert decomposition_matches(g, loop, pieces)
    assert ball_loop_decompose(g, _around(8), 'c0', '9/2') == [_around(8)]


@pytest.mark.parametrize('g', [cycle(8), wedge_of_circles([6, 10]), grid_torus(3, 3),
                               line_with_circles(2)])
def test_ball_loop_decompose_random_loops(g):
    set_seed(17)
    delta = g.diameter() + max(length for _, _, length in g.edges)
    center = g.basepoint
    for _ in range(20):
        loop = random_loop(g, 24)
        assert loop_in_ball(g, loop, center, delta)
        pieces = ball_loop_decompose(g, loop, center, delta)
        for piece in pieces:
            assert piece.length(g) < 2 * delta
            assert loop_in_ball(g, piece, center, delta)
        if pieces:
            assert decomposition_matches(g, loop, pieces)
        else:
            assert loop_to_word(g, loop) == ()
