"""Exact computations in the hyperalgebra U_r of the r-th Frobenius kernel of
SL2 over F_p: multiplication, idempotents, simple modules and the Jacobson
radical."""

from .algebra import (
    AlgebraCtx,
    Element,
    basis,
    embed,
    format_element,
    fr,
    fr_prime,
    gen_mu,
    gen_x,
    gen_y,
    identity,
    inject_fault,
    lift,
    mul,
    parse_element,
    restrict,
    t1,
    t2,
)
from .belements import Pair, b1, b_shifted, b_tuple, enumerate_p_set, enumerate_tuples
from .linalg import Subspace, ideal_closure, left_socle, nilpotency_index, span
from .simples import claimed_radical_basis, oracle_radical, simples, v_set
from .verify import VERSION as __version__
from .verify import CheckReport, run_suites

__all__ = [
    "AlgebraCtx", "Element", "basis", "embed", "format_element", "fr", "fr_prime", "gen_mu", "gen_x",
    "gen_y", "identity", "inject_fault", "lift", "mul", "parse_element", "restrict", "t1", "t2",
    "Pair", "b1", "b_shifted", "b_tuple", "enumerate_p_set", "enumerate_tuples",
    "Subspace", "ideal_closure", "left_socle", "nilpotency_index", "span",
    "claimed_radical_basis", "oracle_radical", "simples", "v_set",
    "CheckReport", "run_suites", "__version__",
]
