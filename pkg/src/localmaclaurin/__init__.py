"""Verification toolkit for localised graph Maclaurin inequalities."""

__version__ = "0.1.0"

from .certified import CertifiedValue
from .graph import (
    Graph,
    clique_number,
    complete_multipartite_decomposition,
    encode_graph6,
    enumerate_cliques,
    parse_edge_list,
    parse_graph6,
    s_clique_support,
    sigma,
    sigma_map,
)
from .weights import Verdict, f_poly, h_poly, rho, verify_chain, verify_localised, verify_zykov
from .structure import canonical_cliques, diagnose_equality, reduce
from .blowup import BlowupSpec, blowup, check_blowup_equivalence
from .optimizer import descend_support, maximize, normalize, partial_h, symmetrize_shift
from .oracle import brute_sigma, brute_verify, survey
from .estimators import CliquePolynomialMaximizer, EqualityPredictor, LocalisedMaclaurinVerifier

__all__ = [
    "BlowupSpec",
    "CertifiedValue",
    "CliquePolynomialMaximizer",
    "EqualityPredictor",
    "Graph",
    "LocalisedMaclaurinVerifier",
    "Verdict",
    "blowup",
    "brute_sigma",
    "brute_verify",
    "canonical_cliques",
    "check_blowup_equivalence",
    "clique_number",
    "complete_multipartite_decomposition",
    "descend_support",
    "diagnose_equality",
    "encode_graph6",
    "enumerate_cliques",
    "f_poly",
    "h_poly",
    "maximize",
    "normalize",
    "parse_edge_list",
    "parse_graph6",
    "partial_h",
    "reduce",
    "rho",
    "s_clique_support",
    "sigma",
    "sigma_map",
    "survey",
    "symmetrize_shift",
    "verify_chain",
    "verify_localised",
    "verify_zykov",
]
