import pytest

from systems.errors import EmptyDims, InvalidVertex, NonPositiveDim
from systems.polytope import (
    FacetId,
    VertexId,
    facet_list,
    facets_at_vertex,
    h_vector,
    make_product,
    sr_generators,
    vertices,
)


def test_make_product_rejects_bad_dims():
    with pytest.raises(EmptyDims):
        make_product([])
    with pytest.raises(NonPositiveDim):
        make_product([2, 0])
    with pytest.raises(NonPositiveDim):
        make_product([1, -3])


def test_counts():
    P = make_product([2, 1])
    assert (P.m, P.n) == (2, 3)
    assert P.facet_count == 5
    assert P.vertex_count == 6


def test_canonical_facet_order():
    P = make_product([2, 1])
    assert [f.as_tuple() for f in facet_list(P)] == [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1)]
    assert str(FacetId(2, 1)) == "F2_1"


def test_facets_at_vertex_miss_one_facet_per_factor():
    P = make_product([2, 1])
    at = facets_at_vertex(P, VertexId((1, 0)))
    assert [f.as_tuple() for f in at] == [(1, 0), (1, 2), (2, 1)]
    for v in vertices(P):
        assert len(facets_at_vertex(P, v)) == P.n


def test_invalid_vertex():
    P = make_product([2, 1])
    with pytest.raises(InvalidVertex):
        facets_at_vertex(P, VertexId((3, 0)))
    with pytest.raises(InvalidVertex):
        facets_at_vertex(P, VertexId((1,)))


def test_vertices_lexicographic():
    P = make_product([1, 2])
    assert [v.choices for v in vertices(P)] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert str(VertexId((1, 2))) == "v12"


def test_sr_generators_are_factor_facet_sets():
    P = make_product([1, 2])
    gens = sr_generators(P)
    assert gens == [
        frozenset({FacetId(1, 0), FacetId(1, 1)}),
        frozenset({FacetId(2, 0), FacetId(2, 1), FacetId(2, 2)}),
    ]


@pytest.mark.parametrize("dims, expected", [
    ([2], [1, 1, 1]),
    ([1, 1], [1, 2, 1]),
    ([2, 1], [1, 2, 2, 1]),
    ([3, 3], [1, 2, 3, 4, 3, 2, 1]),
])
def test_h_vector(dims, expected):
    P = make_product(dims)
    assert h_vector(P) == expected
    assert sum(expected) == P.vertex_count


def test_block_offsets_and_permuted():
    P = make_product([2, 1, 3])
    assert P.block_offsets() == (0, 2, 3)
    assert P.permuted((2, 0, 1)).dims == (3, 2, 1)
