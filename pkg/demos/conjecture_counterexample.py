"""chain 2 packed into chain 3: a packing whose outer algebra is not δ[A_a].

For a finite algebra A, δ[A_a] is isomorphic to A itself, so whenever A is
packed into a strictly larger B the two cannot be isomorphic. The smallest
such case is printed here, check by check.

Run: python demos/conjecture_counterexample.py
"""
from heytingkit import chain
from heytingkit.core import AlgebraEmbedding
from heytingkit.enrichment import EPair, TauExpansion, check_packing, tilde_from_pair
from heytingkit.stone import delta_algebra
from heytingkit.variety import verify_conjecture

A, B = chain(2), chain(3)
e = AlgebraEmbedding(A, B, (0, 2))  # 0 -> 0, 1 -> 1, skipping the middle a
outer = TauExpansion(B, 0, tilde_from_pair(EPair(B, 0, 1)))
print("A = {0, 1} inside B = {0, a, 1}, with τ = 0 and a* = a in B")
print("packed:", check_packing(TauExpansion(A, 0), outer, e))

D, _ = delta_algebra(A, [0])
print(f"|δ[A_0]| = {D.n}, |B| = {B.n}")

report = verify_conjecture(e, "0", "a")
for c in report.checks:
    print(f"  {c.status:<5} {c.name}" + (f"  ({c.detail})" if c.detail else ""))
