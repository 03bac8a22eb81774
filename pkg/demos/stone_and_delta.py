"""Walk through the prime-filter spectrum of chain 2 x chain 3 and the δ operator.

Run: python demos/stone_and_delta.py
"""
from heytingkit import chain, product
from heytingkit.core import find_isomorphism
from heytingkit.enrichment import box_operator, e_pairs, enrichment, tilde_from_pair
from heytingkit.stone import delta_algebra, delta_h_bits, stone_embed

A = product(chain(2), chain(3))
print(f"A = chain 2 x chain 3, {A.n} elements: {' '.join(A.labels)}")

sd = stone_embed(A)
S = sd.spectrum
print(f"\n{len(S)} prime filters:")
for i, F in enumerate(S.filters):
    print(f"  F{i} = {F}")

print("\nh(x) collects the prime filters containing x; δh(x) adds the maximal ones avoiding x.")
for x in range(A.n):
    h = S.points(sd.h_bits(x))
    dh = S.points(delta_h_bits(sd, x))
    print(f"  {A.labels[x]:<6} h = {h!s:<14} δh = {dh}")

D, h = delta_algebra(A)
print(f"\nδ[A] has {D.n} elements; isomorphic to A: {find_isomorphism(A, D) is not None}")

print("\nEnrichments a -> a* and the box operator:")
box = box_operator(A)
for a in range(A.n):
    print(f"  {A.labels[a]:<6} a* = {A.labels[enrichment(A, a)]:<6} box = {A.labels[box[a]]}")

print("\nA ~-negation for every E-pair (a, a*):")
for p in e_pairs(A):
    t = tilde_from_pair(p)
    table = " ".join(f"{A.labels[x]}->{A.labels[t.t[x]]}" for x in range(A.n))
    print(f"  ({A.labels[p.a]}, {A.labels[p.a_star]}): {table}")
