import pytest

from fractions import Fraction
from ..covspecpy.zoo import (RECIPES, build, loop_through, ring_loop, circle_loop, cycle, line,
                             wedge_of_circles, hawaii_truncation, product, grid_torus, cylinder,
                             capped_cylinder, line_with_circles, cylinder_family,
                             capped_cylinder_sequence, two_ended_figure, cusp_girth, cusp_family,
                             sliding_handle, sliding_handle_family, snapping_circle,
                             snapping_circle_family, snapping_limit, r_boundary_graph,
                             converging_circle_family,
                             r_boundary_sequence)
from ..covspecpy.graphs import loop_to_word
from ..covspecpy.spectra import TruncationFamily
from ..covspecpy.errors import InvalidGraph, ParameterError


def test_cycle_and_line():
    assert cycle(6).betti_number() == 1
    assert cycle(4, length=2).diameter() == 1
    assert line(0, 4).betti_number() == 0
    assert line(-2, 2).basepoint == 'l-2'
    with pytest.raises(ParameterError):
        line(3, 1)


def test_wedge_of_circles():
    g = wedge_of_circles([6, 10])
    assert g.betti_number() == 2
    assert g.basepoint == 'w'
    assert circle_loop(g, 'c1', 'w').length(g) == 10


def test_hawaii_truncation():
    assert hawaii_truncation(4).betti_number() == 4
    assert hawaii_truncation(4, '2-2/j').betti_number() == 3
    with pytest.raises(ParameterError):
        hawaii_truncation(4, '1/j')


def test_product_and_torus():
    g = grid_torus(5, 5)
    assert len(g.vertices) == 25
    assert len(g.edges) == 50
    assert len(g.faces) == 25
    assert g.betti_number() == 26
    assert len(product(line(0, 1), line(0, 1)).faces) == 1


def test_cylinder():
    g = cylinder(6, 8)
    assert g.basepoint == 'r4.0'
    assert len(g.faces) == 42
    assert ring_loop(g, 'r', 3).length(g) == 6


def test_capped_cylinder():
    g = capped_cylinder(6, 4)
    assert 'cap' in g.vertices
    assert len(g.faces) == 18 + 6


def test_capped_cylinder_sequence():
    terms = capped_cylinder_sequence(schedule=[2, 4])
    assert [g.basepoint for g in terms] == ['r2.0', 'r4.0']


def test_line_with_circles():
    g = line_with_circles(3)
    assert g.basepoint == 'l0'
    assert g.betti_number() == 6
    assert circle_loop(g, 'c2', 'l2').length(g) == 3


def test_cylinder_family_levels():
    fam = cylinder_family(depth=3)
    assert isinstance(fam, TruncationFamily)
    assert fam.scope_radii == [1, 2, 3]
    assert fam.slipping_limit == 6
    assert fam.check_inclusions() == []


def test_two_ended_figure_shares_x():
    fam = two_ended_figure(depth=2)
    g = fam.levels[0]
    assert g.basepoint == 'x'
    assert ring_loop(g, 'a', 0, shared='x').start == 'x'
    assert ring_loop(g, 'b', 0, shared='x').is_loop(g)


def test_cusp_rings_shrink():
    assert cusp_girth(0) == 6
    assert cusp_girth(2) == 4
    g = cusp_family(depth=1).levels[0]
    assert ring_loop(g, 'r', 2).length(g) == 4


def test_sliding_handle():
    g = sliding_handle(3)
    assert g.betti_number() == 2
    assert sliding_handle(None).betti_number() == 1
    with pytest.raises(ParameterError):
        sliding_handle(9, ray=4)
    terms = sliding_handle_family([1, 2])
    assert [len(t.vertices) for t in terms] == [len(terms[0].vertices)] * 2


def test_snapping_circle():
    g = snapping_circle(12)
    assert g.basepoint == 'x'
    assert circle_loop(g, 's', 'a', mesh=12).length(g) == 12
    with pytest.raises(ParameterError):
        snapping_circle(12, mesh=7)
    assert snapping_limit().betti_number() == 0
    terms = snapping_circle_family([8, 12])
    assert [t.betti_number() for t in terms] == [1, 1]
    assert terms[1].name == snapping_circle(12).name


def test_r_boundary():
    g = r_boundary_graph(2)
    assert g.distance('x', 's') == 2
    terms = r_boundary_sequence([1, 2])
    assert [t.distance('x', 's') for t in terms] == [3, Fraction(5, 2)]


def test_loop_through_needs_adjacent_vertices():
    g = cycle(6)
    assert loop_to_word(g, loop_through(g, ['c{}'.format(k) for k in range(6)])) == (1,)
    with pytest.raises(InvalidGraph):
        loop_through(g, ['c0', 'c2', 'c4'])


def test_recipes_build_with_defaults():
    for name, recipe in RECIPES.items():
        obj = build(name)
        if recipe.kind == 'family':
            assert isinstance(obj, TruncationFamily)
        elif recipe.kind == 'sequence':
            assert isinstance(obj, list)


def test_recipe_expected_provenance():
    for recipe in RECIPES.values():
        for values, provenance in recipe.expected.values():
            assert provenance in ('known', 'derived')
            assert all(isinstance(v, Fraction) for v in values)


def test_build_with_params():
    assert build('wedge', lengths=[8]).betti_number() == 1
    assert build('cycle', n=4).diameter() == 2


def test_build_rejects_unknown():
    with pytest.raises(ParameterError):
        build('moebius')
    with pytest.raises(ParameterError) as execinfo:
        build('wedge', radius=3)
    assert 'radius' in str(execinfo.value)


def test_converging_circle_family():
    terms = converging_circle_family([2, 4])
    assert [t.diameter() for t in terms] == [Fraction(9, 2), Fraction(15, 4)]
    assert terms[0].basepoint == 'c0'


@pytest.mark.parametrize('g', [cycle(5), wedge_of_circles([6, 10]), grid_torus(3, 4),
                               capped_cylinder(6, 3), line_with_circles(2),
                               sliding_handle(2), snapping_circle(8)],
                         ids=lambda g: g.name)
def test_zoo_spaces_are_metric(g):
    d = {v: g.distances(v) for v in g.vertices}
    for u in g.vertices:
        assert d[u][u] == 0
        for v in g.vertices:
            assert d[u][v] == d[v][u]
            assert u == v or d[u][v] > 0
            for w in g.vertices:
                assert d[u][w] <= d[u][v] + d[v][w]
    for u, v, length in g.edges:
        assert d[u][v] <= length
