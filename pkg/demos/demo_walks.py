"""Exact random-walk algebra on open graphs: first-return matrices vs a
transfer-matrix oracle, plus the scalar identities of simple melons."""

from melonlab import (
    build_melon_graph, elementary_return_matrix, exact_walk_distribution,
    first_return_matrix, h_value, lambda_simple, make_rng, return_matrix,
    sample_simple_melon, sample_uniform_tree, TruncatedSeries,
)

D = 2
p1 = elementary_return_matrix(D, 8)
print("elementary melon, first-return series in the step weight y:")
print("  oo:", p1.oo.coeffs)
print("  ob:", p1.ob.coeffs)

tree = sample_uniform_tree(D, 5, make_rng(3))
P = return_matrix(first_return_matrix(tree, 12))
g = build_melon_graph(tree, closed=False)
dist = exact_walk_distribution(g, 12, g.ext_in, exact=True)
match = all(P.oo[t] == dist[t][g.ext_in] and P.ob[t] == dist[t][g.ext_out]
            for t in range(13))
print(f"\nrandom 5-node tree: matrix recursion == transfer matrix: {match}")
print("  return probabilities:", [str(P.oo[t]) for t in range(0, 13, 2)])

melon = sample_simple_melon(D, 7, make_rng(5))
q1 = first_return_matrix(melon, 10)
print(f"\nsimple melon (p=7): matrix is a + b*sigma "
      f"(oo==bb: {q1.oo == q1.bb}, ob==bo: {q1.ob == q1.bo})")
lam = lambda_simple(melon, TruncatedSeries.x(10))
print("  eigenvalue lambda == oo + ob:", lam == q1.oo + q1.ob)
print(f"  h(1) = {h_value(melon)} = (D+1)p+1 = {(D + 1) * 7 + 1}")
