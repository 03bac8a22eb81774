"""Purify a KM_τ derivation stage by stage and re-check the result in Int_τ.

Run: python demos/purify_walkthrough.py
"""
from heytingkit.calculus import purification_trace
from heytingkit.corpus import corpus
from heytingkit.formula import to_text
from heytingkit.hilbert import Calculus, check_derivation

for entry in corpus():
    D = entry.derivation
    stages = purification_trace(D)
    pure = stages[-1].derivation
    ok = check_derivation(pure, Calculus.INT_TAU, pure.premise).valid
    print(f"{entry.name}: {entry.description}")
    print(f"  goal {to_text(entry.goal)}")
    for s in stages:
        step = "" if s.replaced is None else f", replace {to_text(s.replaced)}"
        print(f"  rank {s.rank}: {len(s.derivation)} steps{step}")
    print(f"  Int_tau check: {'valid' if ok else 'INVALID'}\n")
