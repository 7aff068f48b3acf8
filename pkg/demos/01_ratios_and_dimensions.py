"""
Contraction ratios and dimensions of Sierpinski n-gons
======================================================

How big each copy must be so that neighbours touch without crossing, and
what Hausdorff dimension that gives.
"""

from polyflake import canonical_m, contraction_ratio, ngon_dimension
from polyflake.dimension import asymptote_check

# the ratio depends on which star {n/m} we inscribe; only m near n/4 works
for m in range(1, 5):
    print(f"P(9, {m}) = {contraction_ratio(9, m):.6f}")
print("canonical m for n=9:", canonical_m(9))

# when 4 divides n two choices of m give the same ratio
print("n=12:", canonical_m(12), contraction_ratio(12, 3), contraction_ratio(12, 4))

# dimension of the n-gon attractor is -ln n / ln P
print()
print(" n   m   P         dim")
for n in (3, 4, 5, 6, 7, 8, 12, 24):
    m = canonical_m(n)
    m = m[0] if isinstance(m, tuple) else m
    print(f"{n:2d}  {m:2d}  {contraction_ratio(n, m):.6f}  {ngon_dimension(n, m).value:.16f}")

# a wrong m still gives a number, but it only bounds the true dimension
r = ngon_dimension(9, 2)
print()
print(f"{{9/2}}: {r.value:.6f} ({r.description})")

# the dimension drifts down to 1 as n grows
for n, d in asymptote_check("ngon", [10, 100, 10 ** 4, 10 ** 8, 1e308]):
    print(f"n = {n:g}: {d:.6f}")
