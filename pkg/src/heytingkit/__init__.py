"""Finite Heyting algebras: prime filters, the δ operator, enrichments and
~-negations, variety comparison, and a checker and purifier for KM_τ
derivations."""

__version__ = "0.1.0"

from .core import (
    AlgebraEmbedding, HeytingAlgebra, boolean, build_algebra, chain, closure, find_isomorphism, fixture,
    fixture_corpus, format_algebra, identity_embedding, parse_algebra, pre_top, product, subalgebra_generated,
    subalgebras,
)
from .enrichment import (
    EPair, TauExpansion, TildeTable, box_operator, canonical_packing, check_packing, check_tilde, e_pairs,
    enriches, enrichment, pair_from_tilde, tilde_expansion, tilde_from_pair,
)
from .errors import *  # noqa: F401,F403
from .filters import Filter, PrimeFilterPoset, pair_spectrum_maps, prime_filters, special_filters
from .formula import Formula, parse_formula, to_text
from .hilbert import Calculus, Derivation, check_derivation, format_derivation, parse_derivation
from .calculus import purification_trace, purify, purify_step, rank, sound_in
from .stone import ALL, delta_algebra, delta_h, stone_embed, tower
from .variety import separating_identity, variety_contains, verify_conjecture, verify_main_theorem
