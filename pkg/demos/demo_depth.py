"""Depth of a word three ways: distance arrays, sub-word completion blocks,
and BFS on the ball skeleton of a matching tree."""

from melonlab import (
    ColoredWord, bfs_depths, build_ball_skeleton, depth_via_array,
    depth_via_subwords, make_rng, sample_uniform_tree, stack_depth, word_of,
)

word = ColoredWord.standard((1, 0, 1, 3, 2, 1, 2, 0, 3, 1, 2), 3)
print(f"word: {word.root_letter};{''.join(map(str, word.letters))}")

d, trace = depth_via_array(word, trace=True)
print(f"depth via arrays: {d}")
for arr, prefix_len in zip(trace, range(len(trace))):
    print(f"  after {prefix_len} letters: {arr.entries}")

div = depth_via_subwords(word)
print(f"depth via completion blocks: {div.depth}")
print("  blocks:", " ".join("(" + "".join(map(str, b)) + ")" for b in div.blocks()))

print(f"stack depth (lags by pending completions): {stack_depth(word)}")

# the same number appears as a graph distance
tree = sample_uniform_tree(2, 40, make_rng(7))
sk = build_ball_skeleton(tree)
bd = bfs_depths(sk)
agree = all(
    bd[sk.node_vertex[v]] == depth_via_array(word_of(tree, v))
    for v in range(tree.n)
)
print(f"array depth == BFS depth on a random 40-node tree: {agree}")
