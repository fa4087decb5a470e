"""Hot loops for the Monte Carlo drivers, compiled with numba.

Everything here operates on flat integer arrays; the readable reference
implementations live in the regular modules and the test suite checks the
two against each other.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def decode_preorder(marks, width, skip_own_color):
    """Rebuild a tree from its preorder internal/leaf marks.

    ``marks`` is the rotated mark sequence of length width*n + 1 with n
    entries set; every internal vertex has ``width`` child slots visited in
    order.  With ``skip_own_color`` the j-th slot of a node of color c maps
    to color j if j < c else j + 1 (width = D); otherwise slot j is color j
    (width = D + 1).

    Returns (colors, parents, children) with children indexed by color
    (D + 1 columns, -1 for empty).
    """
    m = marks.shape[0]
    n = 0
    for i in range(m):
        if marks[i]:
            n += 1
    ncolors = width + 1 if skip_own_color else width
    colors = np.zeros(n, dtype=np.int32)
    parents = np.full(n, -1, dtype=np.int32)
    children = np.full((n, ncolors), -1, dtype=np.int32)
    if n == 0:
        return colors, parents, children
    stack_node = np.empty(n + 1, dtype=np.int32)
    stack_slot = np.empty(n + 1, dtype=np.int32)
    top = 0
    stack_node[0] = 0
    stack_slot[0] = 0
    nxt = 1
    for pos in range(1, m):
        t = stack_node[top]
        s = stack_slot[top]
        stack_slot[top] = s + 1
        if marks[pos]:
            u = nxt
            nxt += 1
            parents[u] = t
            if skip_own_color:
                c = colors[t]
                col = s if s < c else s + 1
            else:
                col = s
            colors[u] = col
            children[t, col] = u
            top += 1
            stack_node[top] = u
            stack_slot[top] = 0
        while top >= 0 and stack_slot[top] == width:
            top -= 1
    return colors, parents, children


@njit(cache=True, nogil=True)
def rotation_start(steps):
    """Index of the unique cyclic rotation of a +-step sequence with total -1
    whose proper prefix sums are all >= 0 (first minimum of the prefix sums)."""
    m = steps.shape[0]
    best = steps[0]
    arg = 0
    s = steps[0]
    for i in range(1, m):
        s += steps[i]
        if s < best:
            best = s
            arg = i
    return (arg + 1) % m


@njit(cache=True, nogil=True)
def word_depths_of_vertex(parents, colors, v, D):
    """(tree depth, array depth) of one node from its path word.

    The array depth is computed by the alphabet-completion scan with a
    bitmask for the letters seen in the current block.
    """
    # collect path colors root -> v
    length = 0
    u = v
    while parents[u] != -1:
        length += 1
        u = parents[u]
    if length == 0:
        return 0, 0
    path = np.empty(length, dtype=np.int32)
    u = v
    for i in range(length):
        path[length - 1 - i] = colors[u]
        u = parents[u]
    full = (1 << (D + 1)) - 1
    seen = full & ~1  # alphabet minus the root letter 0
    k = 1
    for i in range(length):
        bit = 1 << path[i]
        if (seen | bit) == full:
            k += 1
            seen = bit
        else:
            seen |= bit
    return length, k


@njit(cache=True, nogil=True)
def letters_block_depth(letters, D):
    """Alphabet-completion depth of an explicit letter sequence (root 0)."""
    full = (1 << (D + 1)) - 1
    seen = full & ~1
    k = 1 if letters.shape[0] > 0 else 0
    for i in range(letters.shape[0]):
        bit = 1 << letters[i]
        if (seen | bit) == full:
            k += 1
            seen = bit
        else:
            seen |= bit
    return k


@njit(cache=True, nogil=True)
def closed_neighbors(colors, children, D):
    """Neighbor table of the closed graph of a tree: shape (2n, D+1), each
    row listing the D+1 neighbors of a vertex with multiplicity."""
    n = colors.shape[0]
    # bottoms of the same-color chains; children always have larger preorder
    # index than parents, so a reverse sweep suffices
    bottom = np.empty(n, dtype=np.int64)
    for t in range(n - 1, -1, -1):
        s = children[t, colors[t]]
        if s == -1:
            bottom[t] = 2 * t + 1
        else:
            bottom[t] = bottom[s]
    nbr = np.empty((2 * n, D + 1), dtype=np.int64)
    deg = np.zeros(2 * n, dtype=np.int64)
    for t in range(n):
        c = colors[t]
        w = 2 * t
        b = 2 * t + 1
        for k in range(D + 1):
            u = children[t, k]
            if k == c:
                if u != -1:
                    x = 2 * u
                    nbr[b, deg[b]] = x
                    deg[b] += 1
                    nbr[x, deg[x]] = b
                    deg[x] += 1
            elif u == -1:
                nbr[w, deg[w]] = b
                deg[w] += 1
                nbr[b, deg[b]] = w
                deg[b] += 1
            else:
                x = bottom[u]
                nbr[w, deg[w]] = x
                deg[w] += 1
                nbr[x, deg[x]] = w
                deg[x] += 1
                y = 2 * u
                nbr[y, deg[y]] = b
                deg[y] += 1
                nbr[b, deg[b]] = y
                deg[b] += 1
    x = bottom[0]
    nbr[0, deg[0]] = x
    deg[0] += 1
    nbr[x, deg[x]] = 0
    deg[x] += 1
    return nbr


@njit(cache=True, nogil=True)
def walk_return_hits(nbr, starts, rsteps, hits):
    """Count walker returns to their start vertex at even times.

    ``rsteps[w, t]`` picks one of the D+1 incident edges uniformly; ``hits``
    (length t_max + 1) is incremented in place.
    """
    walkers = starts.shape[0]
    t_max = rsteps.shape[1]
    for w in range(walkers):
        s = starts[w]
        pos = s
        for t in range(1, t_max + 1):
            pos = nbr[pos, rsteps[w, t - 1]]
            if pos == s and (t & 1) == 0:
                hits[t] += 1
    hits[0] += walkers
