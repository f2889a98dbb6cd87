"""Exact computation in the finite simple Moufang loops M*(q).

Finite fields, Zorn vector matrices, the loops M*(q) of unit matrices
modulo signs, the embedded copies of PSL(2,q), a catalog of generating
sets, and an engine that verifies generation claims by orbit and exact
closure computation.
"""

from .gf import Field, FieldElement, field, field_of_order
from .zorn import Vec3, ZornMatrix
from .paige import (
    LoopContext,
    PaigeElement,
    canonical,
    embed_psl,
    embedded_psl2,
    enumerate_loop,
    loop_context,
)
from .psl2 import (
    Mat2,
    PslElement,
    albert_thompson_gens,
    coxeter_moser_gens,
    dickson_gens,
    group_closure,
    psl2_elements,
    sl2_elements,
    sl2_even_gens,
)
from .gensets import GenSet, generating_set, verify_proof_identities
from .engine import (
    GenerationReport,
    SweepResult,
    associativity_witness,
    diassociativity_check,
    identity_orbit,
    moufang_check,
    subloop_closure,
    verify_generates,
)

__version__ = "0.1.0"
