import pytest
from hypothesis import given, settings, strategies as st

from melonlab import core
from melonlab.sampler import make_rng, sample_uniform_tree, sample_simple_melon


def test_elementary_tree():
    for D in (2, 3, 4):
        t = core.elementary_tree(D)
        assert t.n == 1 and t.dim == D
        assert t.colors == [0]
        assert all(c == -1 for c in t.children[0])


def test_grow_at_is_pure():
    t = core.elementary_tree(2)
    t2 = core.grow_at(t, 0, 1)
    assert t.n == 1 and t2.n == 2
    assert t2.colors == [0, 1]
    assert t2.parents[1] == 0


def test_grow_at_occupied_slot():
    t = core.grow_at(core.elementary_tree(2), 0, 1)
    with pytest.raises(core.SlotOccupiedError):
        core.grow_at(t, 0, 1)
    with pytest.raises(core.NoSuchNodeError):
        core.grow_at(t, 5, 0)


def test_word_of_root():
    t = core.elementary_tree(3)
    w = core.word_of(t, 0)
    assert w.root_letter == 0 and w.letters == ()
    assert w.alphabet == (0, 1, 2, 3)


def test_counts_small_values():
    # Fuss-Catalan with k = D + 1 for general trees, k = D for simple ones
    assert [core.count_colored_trees(2, n) for n in range(1, 5)] == [1, 3, 12, 55]
    assert [core.count_simple_melons(2, p) for p in range(1, 5)] == [1, 2, 5, 14]
    assert core.count_colored_trees(3, 2) == 4


def test_enumeration_matches_counts():
    for D in (2, 3):
        for n in range(1, 5):
            trees = core.enumerate_trees(D, n)
            assert len(trees) == core.count_colored_trees(D, n)
            assert len(set(core.serialize_tree(t) for t in trees)) == len(trees)
            simple = core.enumerate_simple_melons(D, n)
            assert len(simple) == core.count_simple_melons(D, n)
            assert all(t.is_simple() for t in simple)


def test_invalid_dimension():
    with pytest.raises(core.InvalidDimensionError):
        core.elementary_tree(1)
    with pytest.raises(core.InvalidDimensionError):
        core.count_colored_trees(0, 3)


@st.composite
def random_tree(draw, max_n=40, dims=(2, 3, 4)):
    dim = draw(st.sampled_from(dims))
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**31))
    return sample_uniform_tree(dim, n, make_rng(seed))


@given(random_tree())
@settings(max_examples=60, deadline=None)
def test_serialize_round_trip(t):
    line = core.serialize_tree(t)
    t2 = core.parse_tree(line)
    assert t2.dim == t.dim and t2.n == t.n
    assert t2.colors == t.colors and t2.parents == t.parents
    assert core.serialize_tree(t2) == line


@given(random_tree())
@settings(max_examples=60, deadline=None)
def test_contour_round_trip(t):
    walk = core.defoliate_and_contour(t)
    assert len(walk) == 2 * t.n + 1
    assert walk[0] == 0 and walk[-1] == 0
    assert all(abs(a - b) == 1 for a, b in zip(walk, walk[1:]))
    assert core.contour_to_shape(walk) == core.defoliated_shape(t)


@given(random_tree())
@settings(max_examples=40, deadline=None)
def test_closed_graph_regular_bipartite(t):
    D = t.dim
    g = core.build_melon_graph(t, closed=True)
    assert g.n_vertices == 2 * t.n
    deg = [0] * g.n_vertices
    cols = [set() for _ in range(g.n_vertices)]
    for u, v, c in g.edges:
        assert u % 2 == 0 and v % 2 == 1  # white-to-black only
        deg[u] += 1
        deg[v] += 1
        assert c not in cols[u] and c not in cols[v]
        cols[u].add(c)
        cols[v].add(c)
    assert all(d == D + 1 for d in deg)


@given(random_tree())
@settings(max_examples=40, deadline=None)
def test_open_graph_externals(t):
    g = core.build_melon_graph(t, closed=False)
    assert g.n_vertices == 2 * t.n + 2
    deg = [0] * g.n_vertices
    for u, v, c in g.edges:
        deg[u] += 1
        deg[v] += 1
    assert deg[g.ext_in] == 1 and deg[g.ext_out] == 1
    assert all(deg[v] == t.dim + 1
               for v in range(g.n_vertices) if v not in (g.ext_in, g.ext_out))


@given(random_tree())
@settings(max_examples=40, deadline=None)
def test_graph_export_round_trip(t):
    g = core.build_melon_graph(t, closed=True)
    g2 = core.parse_graph(core.export_graph(g))
    assert g2.n_vertices == g.n_vertices
    assert sorted(g2.edges) == sorted(g.edges)


@given(random_tree())
@settings(max_examples=40, deadline=None)
def test_ball_skeleton_shape(t):
    D = t.dim
    sk = core.build_ball_skeleton(t)
    assert sk.n_vertices == t.n + D
    n_edges = sum(len(a) for a in sk.adj) // 2
    assert n_edges == D * (D + 1) // 2 + D * (t.n - 1)


def test_parse_tree_rejects_garbage():
    for bad in ("", "2", "2 1", "2 2 0", "2 1 1", "x y z"):
        with pytest.raises(core.FormatError):
            core.parse_tree(bad)


def test_simple_melon_is_simple():
    rng = make_rng(5)
    for _ in range(30):
        t = sample_simple_melon(3, int(rng.integers(1, 30)), rng)
        assert t.is_simple()
