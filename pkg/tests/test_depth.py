from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from melonlab import core, depth
from melonlab.core import ColoredWord
from melonlab.sampler import make_rng, sample_uniform_tree


@st.composite
def random_word(draw, max_len=80, max_dim=6):
    dim = draw(st.integers(2, max_dim))
    root = draw(st.integers(0, dim))
    n = draw(st.integers(0, max_len))
    letters = draw(st.lists(st.integers(0, dim), min_size=n, max_size=n))
    return ColoredWord(root, tuple(letters), tuple(range(dim + 1)))


@given(random_word())
@settings(max_examples=150, deadline=None)
def test_array_equals_subword_division(w):
    assert depth.depth_via_array(w) == depth.depth_via_subwords(w).depth


@given(random_word())
@settings(max_examples=100, deadline=None)
def test_depth_monotone_in_prefixes(w):
    # non-decreasing; a letter revisiting the unique minimum direction can
    # raise the depth by 2
    prev = 0
    for p in w.prefixes():
        d = depth.depth_via_array(p)
        assert d in (prev, prev + 1, prev + 2)
        prev = d


@given(random_word())
@settings(max_examples=100, deadline=None)
def test_stack_at_most_depth(w):
    assert depth.stack_depth(w) <= depth.depth_via_array(w)


@given(random_word())
@settings(max_examples=80, deadline=None)
def test_array_entries_are_tight(w):
    # every entry is within 1 of the minimum and >= the depth - 1
    arr = depth.initial_distance_array(w)
    for c in w.letters:
        arr = depth.update_distance_array(arr, c)
    vals = arr.entries
    assert max(vals) - min(vals) <= 1


def test_empty_word():
    w = ColoredWord.standard((), 3)
    assert depth.depth_via_array(w) == 0
    assert depth.depth_via_subwords(w).depth == 0
    assert depth.stack_depth(w) == 0


def test_subword_blocks_partition_word():
    w = ColoredWord.standard((1, 0, 1, 3, 2, 1, 2, 0, 3, 1, 2), 3)
    div = depth.depth_via_subwords(w)
    flat = [c for block in div.blocks() for c in block]
    assert flat == [w.root_letter] + list(w.letters)


def _bfs(adj, src, nv):
    dist = [-1] * nv
    dist[src] = 0
    q = deque([src])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if dist[u] == -1:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


@given(st.integers(2, 4), st.integers(1, 60), st.integers(0, 2**31))
@settings(max_examples=50, deadline=None)
def test_tree_depth_matches_bfs(dim, n, seed):
    t = sample_uniform_tree(dim, n, make_rng(seed))
    sk = core.build_ball_skeleton(t)
    bd = depth.bfs_depths(sk)
    assert bd == _bfs(sk.adj, 0, sk.n_vertices)
    for v in range(t.n):
        assert bd[sk.node_vertex[v]] == depth.depth_via_array(core.word_of(t, v))


@given(st.integers(2, 3), st.integers(2, 60), st.integers(0, 2**31))
@settings(max_examples=40, deadline=None)
def test_pair_bracket_contains_bfs_distance(dim, n, seed):
    rng = make_rng(seed)
    t = sample_uniform_tree(dim, n, rng)
    sk = core.build_ball_skeleton(t)
    a, b = (int(x) for x in rng.choice(n, 2, replace=False))
    est, lo, hi = depth.pair_distance_bracket(t, a, b)
    assert (lo, hi) == (est - 2, est + 6)
    d = _bfs(sk.adj, sk.node_vertex[a], sk.n_vertices)[sk.node_vertex[b]]
    assert lo <= d <= hi


def test_pair_bracket_rejects_equal_nodes():
    t = sample_uniform_tree(2, 5, make_rng(0))
    with pytest.raises(ValueError):
        depth.pair_distance_bracket(t, 2, 2)
