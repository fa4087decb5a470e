"""Rooted colored trees and the graphs built from them.

The basic object is a rooted tree whose nodes carry a color in {0, ..., D}
and whose child slots are indexed by the same colors.  Every such tree
encodes a 2-point graph obtained by nested insertions of an elementary
pattern (two vertices joined by D parallel colored edges), and a simplicial
ball whose 1-skeleton starts from a complete graph on D+1 vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional


class InvalidDimensionError(ValueError):
    pass


class NoSuchNodeError(KeyError):
    pass


class SlotOccupiedError(ValueError):
    pass


class FormatError(ValueError):
    pass


def _check_dim(dim: int) -> None:
    if not isinstance(dim, int) or dim < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {dim!r}")


@dataclass(frozen=True)
class ColoredWord:
    """A root letter followed by a string of letters from a finite alphabet.

    The default alphabet is (0, 1, ..., D) with root letter 0; other root
    letters and alphabets are allowed so that the same machinery applies to
    related colored-word models.
    """

    root_letter: int
    letters: tuple
    alphabet: tuple

    def __post_init__(self):
        alpha = tuple(self.alphabet)
        if len(set(alpha)) != len(alpha) or len(alpha) < 2:
            raise FormatError(f"alphabet must have >= 2 distinct letters: {alpha!r}")
        if self.root_letter not in alpha:
            raise FormatError(f"root letter {self.root_letter} not in alphabet {alpha}")
        for u in self.letters:
            if u not in alpha:
                raise FormatError(f"letter {u} not in alphabet {alpha}")
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "alphabet", alpha)

    @classmethod
    def standard(cls, letters, dim: int) -> "ColoredWord":
        _check_dim(dim)
        return cls(0, tuple(letters), tuple(range(dim + 1)))

    def __len__(self) -> int:
        return len(self.letters)

    def prefixes(self) -> Iterator["ColoredWord"]:
        for k in range(len(self.letters) + 1):
            yield ColoredWord(self.root_letter, self.letters[:k], self.alphabet)


class MelonTree:
    """Rooted (D+1)-ary tree with color-indexed child slots, stored in an
    index arena.  Node 0 is the root and always has color 0; the color of any
    other node equals the slot of its parent it occupies."""

    __slots__ = ("dim", "colors", "parents", "children")

    def __init__(self, dim: int):
        _check_dim(dim)
        self.dim = dim
        self.colors = [0]
        self.parents = [-1]
        self.children = [[-1] * (dim + 1)]

    @property
    def n(self) -> int:
        return len(self.colors)

    def _check_node(self, node: int) -> None:
        if not (0 <= node < self.n):
            raise NoSuchNodeError(node)

    def child(self, node: int, slot: int) -> int:
        """Child id in the given slot, or -1 if the slot is empty."""
        self._check_node(node)
        if not (0 <= slot <= self.dim):
            raise SlotOccupiedError(f"slot {slot} out of range for D={self.dim}")
        return self.children[node][slot]

    def _grow(self, node: int, slot: int) -> int:
        self._check_node(node)
        if not (0 <= slot <= self.dim):
            raise SlotOccupiedError(f"slot {slot} out of range for D={self.dim}")
        if self.children[node][slot] != -1:
            raise SlotOccupiedError(f"slot {slot} of node {node} already occupied")
        new = self.n
        self.colors.append(slot)
        self.parents.append(node)
        self.children.append([-1] * (self.dim + 1))
        self.children[node][slot] = new
        return new

    def copy(self) -> "MelonTree":
        t = MelonTree.__new__(MelonTree)
        t.dim = self.dim
        t.colors = list(self.colors)
        t.parents = list(self.parents)
        t.children = [list(c) for c in self.children]
        return t

    @classmethod
    def from_arrays(cls, dim: int, colors, parents, children) -> "MelonTree":
        _check_dim(dim)
        t = cls.__new__(cls)
        t.dim = dim
        t.colors = [int(c) for c in colors]
        t.parents = [int(p) for p in parents]
        t.children = [[int(x) for x in row] for row in children]
        return t

    def preorder(self) -> Iterator[int]:
        """Nodes in depth-first order, child slots visited in color order."""
        stack = [0]
        while stack:
            v = stack.pop()
            yield v
            row = self.children[v]
            for slot in range(self.dim, -1, -1):
                if row[slot] != -1:
                    stack.append(row[slot])

    def is_simple(self) -> bool:
        """True when no node has a child in the slot matching its own color
        (for the root this means slot 0 is empty)."""
        return all(self.children[v][self.colors[v]] == -1 for v in range(self.n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MelonTree)
            and self.dim == other.dim
            and self.colors == other.colors
            and self.parents == other.parents
            and self.children == other.children
        )

    def __repr__(self) -> str:
        return f"MelonTree(D={self.dim}, n={self.n})"


def elementary_tree(dim: int) -> MelonTree:
    """The one-node tree (root only)."""
    return MelonTree(dim)


def grow_at(tree: MelonTree, node: int, slot: int) -> MelonTree:
    """Return a copy of the tree with a new node attached in the given slot."""
    out = tree.copy()
    out._grow(node, slot)
    return out


def word_of(tree: MelonTree, node: int) -> ColoredWord:
    """Path word of a node: root letter 0 followed by the slot colors along
    the path from the root."""
    tree._check_node(node)
    path = []
    v = node
    while v != 0:
        path.append(tree.colors[v])
        v = tree.parents[v]
    path.reverse()
    return ColoredWord.standard(path, tree.dim)


def lex_order(tree: MelonTree) -> list:
    """Node ids sorted by dictionary order of their words.  This coincides
    with preorder when child slots are visited in increasing color."""
    return list(tree.preorder())


def count_colored_trees(dim: int, n: int) -> int:
    """Number of colored rooted trees with n nodes (Fuss-Catalan)."""
    _check_dim(dim)
    if n < 0:
        raise ValueError("n must be >= 0")
    m = (dim + 1) * n + 1
    return math.comb(m, n) // m


def count_simple_melons(dim: int, p: int) -> int:
    """Number of trees with p nodes in which no child repeats its parent's
    color (root: slot 0 empty); a Fuss-Catalan number with branching D."""
    _check_dim(dim)
    if p < 0:
        raise ValueError("p must be >= 0")
    m = dim * p + 1
    return math.comb(m, p) // m


# ---------------------------------------------------------------------------
# contour walk of the defoliated tree


def defoliated_shape(tree: MelonTree) -> tuple:
    """Plane-tree shape of the tree with empty slots dropped, as nested
    tuples (children kept in slot order)."""

    def build(v: int) -> tuple:
        return tuple(
            build(u) for u in tree.children[v] if u != -1
        )

    return build(0)


def defoliate_and_contour(tree: MelonTree) -> list:
    """Height sequence of the contour walk around the tree.

    The walk has 2n+1 values for a tree with n nodes, starts and ends at 0,
    stays positive in between, and each step changes the height by 1; the
    height at a visit of node v is its tree depth plus one.
    """
    vals = [0]

    # iterative DFS; (node, height, entered) frames
    stack = [(0, 1, False)]
    while stack:
        v, h, entered = stack.pop()
        vals.append(h)
        if entered:
            continue
        kids = [u for u in tree.children[v] if u != -1]
        # after the last child returns we re-append our own height, so push
        # a re-entry frame between consecutive children
        for u in reversed(kids):
            stack.append((v, h, True))
            stack.append((u, h + 1, False))
    vals.append(0)
    # drop duplicate re-entry values: the scheme above appends height once per
    # re-entry, which is exactly the contour; but the first frame already
    # appended the entry value, so nothing else to fix.
    return vals


def contour_to_shape(walk: list) -> tuple:
    """Decode a contour walk back into a plane-tree shape (nested tuples)."""
    if len(walk) < 3 or walk[0] != 0 or walk[-1] != 0:
        raise FormatError("contour walk must start and end at 0 with >= 3 values")
    for a, b in zip(walk, walk[1:]):
        if abs(a - b) != 1:
            raise FormatError("contour walk steps must be +-1")
    if any(v <= 0 for v in walk[1:-1]):
        raise FormatError("contour walk must stay positive between endpoints")
    root: list = []
    path = [root]
    for a, b in zip(walk[1:], walk[2:]):
        if b > a:
            node: list = []
            path[-1].append(node)
            path.append(node)
        else:
            path.pop()

    def freeze(x: list) -> tuple:
        return tuple(freeze(c) for c in x)

    return freeze(root)


# ---------------------------------------------------------------------------
# ball skeleton


@dataclass
class BallSkeleton:
    """1-skeleton of the simplicial ball encoded by a tree.

    Vertex 0 is the root vertex; vertices 1..D are the boundary vertices of
    the initial complete graph; each further tree node contributes one
    vertex.  ``frames[t]`` is the (D+1)-tuple of skeleton vertices, indexed
    by color, spanning the cell in which tree node t was inserted.
    """

    dim: int
    colors: list
    is_boundary: list
    adj: list
    frames: dict
    node_vertex: dict
    root_vertex: int = 0

    @property
    def n_vertices(self) -> int:
        return len(self.colors)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2


def build_ball_skeleton(tree: MelonTree) -> BallSkeleton:
    D = tree.dim
    colors = [0] + list(range(1, D + 1))
    is_boundary = [False] + [True] * D
    adj = [[] for _ in range(D + 1)]
    for u in range(D + 1):
        for v in range(u + 1, D + 1):
            adj[u].append(v)
            adj[v].append(u)
    frames = {0: tuple(range(D + 1))}
    node_vertex = {0: 0}
    for t in tree.preorder():
        if t == 0:
            continue
        q = tree.parents[t]
        j = tree.colors[t]
        v = len(colors)
        colors.append(j)
        is_boundary.append(False)
        adj.append([])
        for k in range(D + 1):
            if k == j:
                continue
            w = frames[q][k]
            adj[v].append(w)
            adj[w].append(v)
        fr = list(frames[q])
        fr[j] = v
        frames[t] = tuple(fr)
        node_vertex[t] = v
    return BallSkeleton(D, colors, is_boundary, adj, frames, node_vertex)


# ---------------------------------------------------------------------------
# 2-point graphs (open) and their closures


@dataclass
class MelonGraph:
    """Edge-colored bipartite (multi)graph encoded by a tree.

    Closed graphs have 2n vertices, all of degree D+1.  Open graphs add two
    marked degree-1 vertices ``ext_in`` and ``ext_out`` attached by
    color-0 edges where the closing edge would go.
    """

    dim: int
    closed: bool
    n_vertices: int
    white: list           # parity flag per vertex
    edges: list           # (u, v, color) with u white, v black
    ext_in: Optional[int] = None
    ext_out: Optional[int] = None
    node_pair: dict = field(default_factory=dict)

    def degrees(self) -> list:
        deg = [0] * self.n_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _chain_bottoms(tree: MelonTree) -> list:
    """bottom[t]: black vertex ending the same-color chain below node t."""
    n = tree.n
    bottom = [-1] * n
    order = list(tree.preorder())
    for t in reversed(order):
        s = tree.children[t][tree.colors[t]]
        bottom[t] = 2 * t + 1 if s == -1 else bottom[s]
    return bottom


def build_melon_graph(tree: MelonTree, closed: bool = True) -> MelonGraph:
    """Expand a tree into its graph by nested insertions.

    Node t owns a white vertex 2t and a black vertex 2t+1.  A child in slot
    k != color(t) splits the internal color-k edge of t; a child in slot
    color(t) extends the chain that carries t's external color.
    """
    D = tree.dim
    n = tree.n
    bottom = _chain_bottoms(tree)
    edges = []
    for t in range(n):
        c = tree.colors[t]
        w, b = 2 * t, 2 * t + 1
        for k in range(D + 1):
            u = tree.children[t][k]
            if k == c:
                if u != -1:
                    edges.append((2 * u, b, c))
                continue
            if u == -1:
                edges.append((w, b, k))
            else:
                edges.append((w, bottom[u], k))
                edges.append((2 * u, b, k))
    white = [t % 2 == 0 for t in range(2 * n)]
    node_pair = {t: (2 * t, 2 * t + 1) for t in range(n)}
    if closed:
        edges.append((0, bottom[0], 0))
        return MelonGraph(D, True, 2 * n, white, edges, node_pair=node_pair)
    ext_in, ext_out = 2 * n, 2 * n + 1
    white += [True, False]
    edges.append((0, ext_in, 0))
    edges.append((ext_out, bottom[0], 0))
    return MelonGraph(
        D, False, 2 * n + 2, white, edges, ext_in=ext_in, ext_out=ext_out,
        node_pair=node_pair,
    )


# ---------------------------------------------------------------------------
# text formats


def _word_token(word: ColoredWord) -> str:
    out = []
    for u in (word.root_letter,) + word.letters:
        out.append(str(u) if u < 10 else f"[{u}]")
    return "".join(out)


def _parse_word_token(tok: str) -> list:
    letters = []
    i = 0
    while i < len(tok):
        ch = tok[i]
        if ch == "[":
            j = tok.index("]", i)
            letters.append(int(tok[i + 1 : j]))
            i = j + 1
        elif ch.isdigit():
            letters.append(int(ch))
            i += 1
        else:
            raise FormatError(f"bad character {ch!r} in word token {tok!r}")
    if not letters:
        raise FormatError("empty word token")
    return letters


def serialize_tree(tree: MelonTree) -> str:
    """One-line format: ``D n w1 w2 ... wn`` with node words (root letter
    included) in dictionary order, letters written as digits and colors >= 10
    bracketed."""
    toks = [str(tree.dim), str(tree.n)]
    for v in lex_order(tree):
        toks.append(_word_token(word_of(tree, v)))
    return " ".join(toks)


def parse_tree(line: str) -> MelonTree:
    toks = line.split()
    if len(toks) < 3:
        raise FormatError(f"tree line needs at least 'D n w1': {line!r}")
    try:
        dim, n = int(toks[0]), int(toks[1])
    except ValueError as exc:
        raise FormatError(f"bad header in tree line: {line!r}") from exc
    _check_dim(dim)
    words = [_parse_word_token(t) for t in toks[2:]]
    if len(words) != n:
        raise FormatError(f"expected {n} words, got {len(words)}")
    if words[0] != [0]:
        raise FormatError("first word must be the bare root '0'")
    tree = MelonTree(dim)
    at = {(0,): 0}
    for w in words[1:]:
        if any(not 0 <= u <= dim for u in w):
            raise FormatError(f"letter out of range in word {w} for D={dim}")
        parent = at.get(tuple(w[:-1]))
        if parent is None:
            raise FormatError(f"word {w} has no parent in the line (not prefix-closed)")
        node = tree._grow(parent, w[-1])
        at[tuple(w)] = node
    return tree


def export_graph(graph: MelonGraph) -> str:
    """Edge-list text format: header ``closed D`` or ``open D`` then one
    ``u v color`` line per edge."""
    head = ("closed" if graph.closed else "open") + f" {graph.dim}"
    lines = [head]
    for u, v, c in sorted(graph.edges):
        lines.append(f"{u} {v} {c}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> MelonGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty graph text")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("closed", "open"):
        raise FormatError(f"bad graph header: {lines[0]!r}")
    closed = head[0] == "closed"
    dim = int(head[1])
    _check_dim(dim)
    edges = []
    top = -1
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad edge line: {ln!r}")
        u, v, c = (int(x) for x in parts)
        if not 0 <= c <= dim:
            raise FormatError(f"edge color {c} out of range for D={dim}")
        edges.append((u, v, c))
        top = max(top, u, v)
    nv = top + 1
    white = [False] * nv
    for u, _, _ in edges:
        white[u] = True
    g = MelonGraph(dim, closed, nv, white, edges)
    if not closed:
        deg = g.degrees()
        ones = [v for v in range(nv) if deg[v] == 1]
        if len(ones) == 2:
            a, b = ones
            g.ext_in, g.ext_out = (a, b) if white[a] else (b, a)
    return g


# ---------------------------------------------------------------------------
# exhaustive enumeration (reference oracle for the closed-form counts)


def _shapes(dim: int, n: int, width: int):
    """All nested-tuple shapes of width-slot trees with n nodes; empty slots
    are None.  Deterministic order."""
    if n == 0:
        yield None
        return

    def comps(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in comps(total - first, parts - 1):
                yield (first,) + rest

    for sizes in comps(n - 1, width):
        pools = [list(_shapes(dim, k, width)) for k in sizes]

        def product(i):
            if i == len(pools):
                yield ()
                return
            for head in pools[i]:
                for tail in product(i + 1):
                    yield (head,) + tail

        for kids in product(0):
            yield kids


def _shape_to_tree(dim: int, shape, simple: bool) -> MelonTree:
    tree = MelonTree(dim)

    def attach(node: int, kids) -> None:
        c = tree.colors[node]
        if simple:
            slots = [k for k in range(dim + 1) if k != c]
        else:
            slots = list(range(dim + 1))
        for slot, sub in zip(slots, kids):
            if sub is None:
                continue
            u = tree._grow(node, slot)
            attach(u, sub)

    attach(0, shape)
    return tree


def enumerate_trees(dim: int, n: int, budget: int = 200_000) -> list:
    """All colored trees with exactly n nodes.  Raises if the closed-form
    count exceeds the budget."""
    _check_dim(dim)
    if n < 1:
        raise ValueError("n must be >= 1")
    total = count_colored_trees(dim, n)
    if total > budget:
        raise ValueError(f"enumeration of {total} trees exceeds budget {budget}")
    out = [
        _shape_to_tree(dim, shape, simple=False)
        for shape in _shapes(dim, n, dim + 1)
    ]
    assert len(out) == total
    return out


def enumerate_simple_melons(dim: int, p: int, budget: int = 200_000) -> list:
    """All simple trees (no color repeats along edges) with exactly p nodes."""
    _check_dim(dim)
    if p < 1:
        raise ValueError("p must be >= 1")
    total = count_simple_melons(dim, p)
    if total > budget:
        raise ValueError(f"enumeration of {total} trees exceeds budget {budget}")
    out = [
        _shape_to_tree(dim, shape, simple=True)
        for shape in _shapes(dim, p, dim)
    ]
    assert len(out) == total
    return out
