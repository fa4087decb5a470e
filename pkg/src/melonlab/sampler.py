"""Exact-uniform and Galton-Watson samplers for colored trees.

Uniformity is obtained by the cycle-lemma construction: place the internal
marks uniformly among all positions of the preorder mark sequence, then take
the unique cyclic rotation that is a valid preorder encoding.  Every tree
corresponds to the same number of mark arrangements, so the result is an
exact uniform draw; no rejection is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .core import MelonTree, _check_dim


def make_rng(seed: int, stream: tuple = ()) -> np.random.Generator:
    """Deterministic generator for a (seed, stream-id) pair; string stream
    components are hashed to stable integers."""
    import zlib

    key = tuple(
        s if isinstance(s, int) else zlib.crc32(str(s).encode()) for s in stream
    )
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _cycle_lemma_marks(n: int, width: int, rng: np.random.Generator) -> np.ndarray:
    """Rotated mark sequence: width*n + 1 slots, n internal marks, rotated so
    that the sequence is a valid preorder encoding."""
    m = width * n + 1
    marks = np.zeros(m, dtype=np.uint8)
    marks[rng.choice(m, size=n, replace=False)] = 1
    steps = np.where(marks == 1, width - 1, -1).astype(np.int64)
    r = _kernels.rotation_start(steps)
    if r:
        marks = np.roll(marks, -r)
    return marks


def sample_uniform_tree_arrays(dim: int, n: int, rng):
    """(colors, parents, children) arrays of a uniform colored tree."""
    _check_dim(dim)
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _as_rng(rng)
    marks = _cycle_lemma_marks(n, dim + 1, rng)
    return _kernels.decode_preorder(marks, dim + 1, False)


def sample_uniform_tree(dim: int, n: int, rng) -> MelonTree:
    """Exact uniform draw from the colored trees with n nodes."""
    colors, parents, children = sample_uniform_tree_arrays(dim, n, rng)
    return MelonTree.from_arrays(dim, colors, parents, children)


def sample_simple_melon_arrays(dim: int, p: int, rng):
    """(colors, parents, children) of a uniform simple tree with p nodes
    (children indexed by the full color range, repeated-color slots empty)."""
    _check_dim(dim)
    if p < 1:
        raise ValueError("p must be >= 1")
    rng = _as_rng(rng)
    marks = _cycle_lemma_marks(p, dim, rng)
    return _kernels.decode_preorder(marks, dim, True)


def sample_simple_melon(dim: int, p: int, rng) -> MelonTree:
    """Exact uniform draw from the simple trees (no node has a child in the
    slot of its own color) with p nodes."""
    colors, parents, children = sample_simple_melon_arrays(dim, p, rng)
    return MelonTree.from_arrays(dim, colors, parents, children)


@dataclass
class GWSample:
    """Outcome of one unconditioned critical Galton-Watson draw.

    ``tree`` is None when the realization is the bare line (the initiator
    itself is a leaf, size 0) or when the node cap was exceeded.
    """

    tree: Optional[MelonTree]
    size: int
    overflow: bool


def offspring_law(dim: int):
    """(values, probabilities) of the critical offspring distribution: 0
    children with weight D/(D+1), D+1 children with weight 1/(D+1)."""
    _check_dim(dim)
    return (0, dim + 1), (dim / (dim + 1), 1 / (dim + 1))


def sample_gw_tree(dim: int, rng, cap: int = 1_000_000) -> GWSample:
    """Unconditioned critical Galton-Watson tree; leaves become empty slots.

    The initiator is itself subject to the offspring law, so the bare line
    (size 0) occurs with probability D/(D+1).
    """
    _check_dim(dim)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    rng = _as_rng(rng)
    p_leaf = dim / (dim + 1)
    if rng.random() < p_leaf:
        return GWSample(None, 0, False)
    tree = MelonTree(dim)
    # frontier of slots still to resolve, depth-first
    stack = [(0, slot) for slot in range(dim, -1, -1)]
    while stack:
        node, slot = stack.pop()
        if rng.random() < p_leaf:
            continue
        if tree.n >= cap:
            return GWSample(None, tree.n, True)
        u = tree._grow(node, slot)
        stack.extend((u, s) for s in range(dim, -1, -1))
    return GWSample(tree, tree.n, False)
