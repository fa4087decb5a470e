"""Depth of a vertex read off from its colored word.

Three equivalent/related readings are implemented:

* a distance array updated letter by letter (the depth is the entry at the
  last letter),
* a division of the word into sub-words, each ending just before the letter
  that would complete the alphabet (the depth is the number of sub-words),
* a "stack" variant whose counter advances one letter later: a block is
  closed by the letter completing the alphabet instead of before it.

The stack variant reproduces the known vectors for D = 2; for D > 2 it is a
natural generalization and is marked experimental in CLI output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import ColoredWord, MelonTree, BallSkeleton, FormatError


@dataclass(frozen=True)
class DistanceArray:
    """Distances from the current cell's frame vertices to the root, indexed
    by the alphabet."""

    alphabet: tuple
    entries: tuple

    def __getitem__(self, letter: int) -> int:
        return self.entries[self.alphabet.index(letter)]


def initial_distance_array(word: ColoredWord) -> DistanceArray:
    entries = tuple(0 if a == word.root_letter else 1 for a in word.alphabet)
    return DistanceArray(word.alphabet, entries)


def update_distance_array(arr: DistanceArray, letter: int) -> DistanceArray:
    """Replace the entry at `letter` by 1 + min of the other entries."""
    if letter not in arr.alphabet:
        raise FormatError(f"letter {letter} not in alphabet {arr.alphabet}")
    i = arr.alphabet.index(letter)
    new = 1 + min(e for j, e in enumerate(arr.entries) if j != i)
    entries = arr.entries[:i] + (new,) + arr.entries[i + 1 :]
    return DistanceArray(arr.alphabet, entries)


def depth_via_array(word: ColoredWord, trace: bool = False):
    """Depth of the vertex labelled by the word; with ``trace`` also return
    the successive arrays (initial one included)."""
    arr = initial_distance_array(word)
    arrs = [arr]
    depth = 0
    for u in word.letters:
        arr = update_distance_array(arr, u)
        arrs.append(arr)
        depth = arr[u]
    if trace:
        return depth, arrs
    return depth


@dataclass(frozen=True)
class SubwordDivision:
    """Division w = t_0 t_1 ... t_k; ``starts[r-1]`` is the index in
    ``word.letters`` where t_r begins (t_0 is the root letter, t_1 may be
    empty)."""

    word: ColoredWord
    starts: tuple

    @property
    def depth(self) -> int:
        return len(self.starts)

    def blocks(self) -> list:
        out = [(self.word.root_letter,)]
        bounds = list(self.starts) + [len(self.word.letters)]
        for a, b in zip(bounds, bounds[1:]):
            out.append(tuple(self.word.letters[a:b]))
        return out


def depth_via_subwords(word: ColoredWord) -> SubwordDivision:
    """Scan the word closing a block just before each alphabet completion.

    The first block collects the letters before the first root letter; every
    later block starts at the letter that completed the previous one.
    """
    full = frozenset(word.alphabet)
    if not word.letters:
        return SubwordDivision(word, ())
    starts = [0]
    seen = set(word.alphabet) - {word.root_letter}
    for i, u in enumerate(word.letters):
        if len(seen | {u}) == len(full):
            starts.append(i)
            seen = {u}
        else:
            seen.add(u)
    return SubwordDivision(word, tuple(starts))


def stack_depth(word: ColoredWord) -> int:
    """Depth counter that advances one letter after each alphabet completion:
    the completing letter still belongs to the block it closes."""
    if not word.letters:
        return 0
    full = len(word.alphabet)
    k = 1
    in_first = True
    seen = set(word.alphabet) - {word.root_letter}
    for u in word.letters:
        if in_first:
            if len(seen | {u}) == full:
                k += 1
                seen = {u}
                in_first = False
        else:
            seen.add(u)
            if len(seen) == full:
                # block closes on this letter; the counter moves afterwards
                k += 1
                seen = set()
    if not in_first and not seen and k > 1:
        # the word ended exactly on a completion: the last letter belongs to
        # the block just closed, and no new block has started yet
        k -= 1
    return k


def tree_depth(word: ColoredWord) -> int:
    return len(word.letters)


def bfs_depths(skeleton: BallSkeleton) -> list:
    """Graph distance from the root vertex for every skeleton vertex."""
    dist = [-1] * skeleton.n_vertices
    dist[skeleton.root_vertex] = 0
    q = deque([skeleton.root_vertex])
    while q:
        v = q.popleft()
        for w in skeleton.adj[v]:
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def _subpath_depth(dim: int, letters: list) -> int:
    """Depth contribution of a path segment, its first letter acting as the
    root letter of the sub-word."""
    if not letters:
        return 0
    word = ColoredWord(letters[0], tuple(letters[1:]), tuple(range(dim + 1)))
    return depth_via_array(word)


def pair_distance_bracket(tree: MelonTree, a: int, b: int):
    """Bracket [lower, upper] for the skeleton distance between the cells of
    two tree nodes, from the depth machinery applied on either side of their
    last common ancestor.  Returns (estimate, lower, upper)."""
    tree._check_node(a)
    tree._check_node(b)
    if a == b:
        raise ValueError("pair distance needs two distinct nodes")

    def path_up(v):
        out = []
        while v != 0:
            out.append(v)
            v = tree.parents[v]
        out.append(0)
        return out[::-1]  # root .. v

    pa, pb = path_up(a), path_up(b)
    k = 0
    while k < min(len(pa), len(pb)) and pa[k] == pb[k]:
        k += 1
    # colors along the two branches below the split
    la = [tree.colors[v] for v in pa[k:]]
    lb = [tree.colors[v] for v in pb[k:]]
    est = _subpath_depth(tree.dim, la) + _subpath_depth(tree.dim, lb)
    return est, est - 2, est + 6
