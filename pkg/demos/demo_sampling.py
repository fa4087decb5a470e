"""Uniform sampling of colored trees and the structures built from them."""

from collections import Counter

from melonlab import (
    build_melon_graph, count_colored_trees, count_simple_melons, make_rng,
    sample_gw_tree, sample_simple_melon, sample_uniform_tree, serialize_tree,
)

rng = make_rng(0)

t = sample_uniform_tree(2, 8, rng)
print("a uniform 8-node tree:", serialize_tree(t))
g = build_melon_graph(t, closed=True)
print(f"its closed graph: {g.n_vertices} vertices, {len(g.edges)} edges, 3-regular")

s = sample_simple_melon(3, 6, rng)
print("a uniform simple melon (D=3, p=6):", serialize_tree(s))
print("is_simple:", s.is_simple())

# uniformity: every one of the 12 trees with (D=2, n=3) shows up equally often
counts = Counter(serialize_tree(sample_uniform_tree(2, 3, rng)) for _ in range(12000))
print(f"\n{count_colored_trees(2, 3)} trees at D=2, n=3; draw frequencies:")
for key, c in sorted(counts.items()):
    print(f"  {key}: {c}")

# the unconditioned critical branching process produces the same trees,
# but with random size (often 0: the initiator itself is a leaf)
sizes = Counter(sample_gw_tree(2, rng, cap=10_000).size for _ in range(10_000))
print("\nbranching-process size frequencies (head):")
for n in range(5):
    print(f"  size {n}: {sizes[n]}")
print("simple-melon count check:", count_simple_melons(2, 4), "= Catalan(4)")
