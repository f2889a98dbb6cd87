"""Catalog of generating sets for M*(q) and the proof-identity suite.

Every named set is reproduced exactly from its defining matrices, with
lambda the canonical primitive element unless overridden.  Identity
checks evaluate each equation twice: sign-exact on vector matrices, and
on +-classes where signs are absorbed.  Displayed products are read
with "." as the outermost split and remaining adjacencies associated
left to right; the two lambda identities of the Dickson-variant set are
additionally checked under both bracketings, since their value is
independent of evaluation order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .gf import Field, FieldElement, field_of_order
from .paige import PaigeElement, embed_psl, embedded_psl2
from .psl2 import (
    Mat2,
    PslElement,
    _resolve_lambda,
    albert_thompson_gens,
    sl2_even_gens,
)
from .zorn import Vec3, ZornMatrix

SET_NAMES = (
    "theorem-main",
    "prime",
    "dickson-variant",
    "even",
    "paige",
    "g1g2",
    "g1g2g3",
)


@dataclass(frozen=True)
class GenSet:
    name: str
    q: int
    elements: tuple[PaigeElement, ...]
    provenance: str

    def __post_init__(self):
        if not self.elements:
            raise ValueError("generating set must be nonempty")
        f = self.elements[0].field
        if f.q != self.q:
            raise ValueError("declared q does not match element field")
        keys = set()
        for x in self.elements:
            if x.field != f:
                raise ValueError("generating set mixes fields")
            if x.key in keys:
                raise ValueError("generating set contains duplicates")
            keys.add(x.key)

    @property
    def field(self) -> Field:
        return self.elements[0].field

    def __len__(self):
        return len(self.elements)


def _zm(a, alpha, beta, b) -> ZornMatrix:
    return ZornMatrix(a, alpha, beta, b)


def _vec(c1, c2, c3) -> Vec3:
    return Vec3(c1, c2, c3)


# ---------------------------------------------------------------------------
# Named sets
# ---------------------------------------------------------------------------

def genset_theorem_main(field: Field, lam=None) -> GenSet:
    """{phi1(C), phi2(C), B}: three elements generating M*(q) for q > 2."""
    if field.q <= 2:
        raise ValueError("theorem-main requires q > 2; use the prime set for q = 2")
    lam = _resolve_lambda(field, lam)
    b_mat, c_mat = albert_thompson_gens(field, lam)
    elements = (
        embed_psl(1, c_mat),
        embed_psl(2, c_mat),
        embed_psl(1, b_mat),  # diagonal, identical under every embedding
    )
    return GenSet(
        "theorem-main", field.q, elements,
        "Albert-Thompson pair embedded through the first two PSL(2,q) copies",
    )


def genset_prime(field: Field) -> GenSet:
    """{U1, U2, X}: generates M*(p) for prime p."""
    if field.r != 1:
        raise ValueError(f"prime set requires a prime field, got q={field.q}")
    one, zero = field.one, field.zero
    z = Vec3.zero(field)
    e1, e2, e3 = (Vec3.basis(field, i) for i in (1, 2, 3))
    elements = (
        PaigeElement.from_matrix(_zm(one, e1, z, one)),
        PaigeElement.from_matrix(_zm(one, e2, z, one)),
        PaigeElement.from_matrix(_zm(zero, e3, -e3, one)),
    )
    return GenSet(
        "prime", field.q, elements,
        "unit-vector transvections plus one off-diagonal element",
    )


def genset_dickson_variant(field: Field, lam=None) -> GenSet:
    """{U1, U2, [0|le3|-l^-1 e3|1]} for q odd != 9 or q = 2."""
    q = field.q
    if q == 9 or (q % 2 == 0 and q != 2):
        raise ValueError(
            f"dickson-variant requires q odd and q != 9, or q = 2; got q={q}"
        )
    lam = _resolve_lambda(field, lam)
    one, zero = field.one, field.zero
    z = Vec3.zero(field)
    e1, e2, e3 = (Vec3.basis(field, i) for i in (1, 2, 3))
    elements = (
        PaigeElement.from_matrix(_zm(one, e1, z, one)),
        PaigeElement.from_matrix(_zm(one, e2, z, one)),
        PaigeElement.from_matrix(
            _zm(zero, e3.scale(lam), e3.scale(-lam.inverse()), one)
        ),
    )
    return GenSet(
        "dickson-variant", field.q, elements,
        "Dickson-style transvections with a primitive-weighted third element",
    )


def genset_even(field: Field, lam=None) -> GenSet:
    """{phi1(D1), phi2(D1), D2} for q = 2^r, r > 1."""
    d1, d2 = sl2_even_gens(field, _resolve_lambda(field, lam))
    elements = (
        embed_psl(1, d1),
        embed_psl(2, d1),
        embed_psl(1, d2),  # diagonal, identical under every embedding
    )
    return GenSet(
        "even", field.q, elements,
        "even-characteristic SL(2,2^r) pair embedded twice plus its diagonal",
    )


def genset_paige(field: Field) -> GenSet:
    """All triangular elements [1|0|beta|1], [1|beta|0|1], beta != 0."""
    q = field.q
    one = field.one
    z = Vec3.zero(field)
    lower, upper = [], []
    for v in range(1, q ** 3):
        beta = Vec3.from_indices(field, (v % q, (v // q) % q, v // (q * q)))
        lower.append(PaigeElement.from_matrix(_zm(one, z, beta, one)))
        upper.append(PaigeElement.from_matrix(_zm(one, beta, z, one)))
    return GenSet(
        "paige", field.q, tuple(lower + upper),
        "full family of unipotent triangular elements over nonzero vectors",
    )


def _union_of_copies(field: Field, which) -> tuple[PaigeElement, ...]:
    seen = set()
    out = []
    for i in which:
        for x in embedded_psl2(i, field):
            if x.key not in seen:
                seen.add(x.key)
                out.append(x)
    return tuple(out)


def genset_g1g2(field: Field) -> GenSet:
    return GenSet(
        "g1g2", field.q, _union_of_copies(field, (1, 2)),
        "union of the first two embedded PSL(2,q) copies",
    )


def genset_g1g2g3(field: Field) -> GenSet:
    return GenSet(
        "g1g2g3", field.q, _union_of_copies(field, (1, 2, 3)),
        "union of all three embedded PSL(2,q) copies",
    )


def generating_set(name: str, field: Field, lam=None) -> GenSet:
    """Catalog dispatch by CLI name."""
    if name == "theorem-main":
        return genset_theorem_main(field, lam)
    if name == "prime":
        return genset_prime(field)
    if name == "dickson-variant":
        return genset_dickson_variant(field, lam)
    if name == "even":
        return genset_even(field, lam)
    if name == "paige":
        return genset_paige(field)
    if name == "g1g2":
        return genset_g1g2(field)
    if name == "g1g2g3":
        return genset_g1g2g3(field)
    raise ValueError(f"unknown generating set {name!r}; known: {', '.join(SET_NAMES)}")


# ---------------------------------------------------------------------------
# Generator-set files: line 1 "q=<q> name=<name>", one element per line,
# '#' starts a comment.
# ---------------------------------------------------------------------------

def write_genset(gs: GenSet, stream) -> None:
    stream.write(f"q={gs.q} name={gs.name}\n")
    stream.write(f"# {gs.provenance}\n")
    for x in gs.elements:
        stream.write(x.notation() + "\n")


_HEADER_RE = re.compile(r"^q=(\d+) name=(\S+)$")


def read_genset(stream) -> GenSet:
    header = stream.readline().strip()
    m = _HEADER_RE.match(header)
    if not m:
        raise ValueError(f"bad generator-file header: {header!r}")
    q, name = int(m.group(1)), m.group(2)
    f = field_of_order(q)
    elements = []
    for line in stream:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        elements.append(PaigeElement.from_matrix(ZornMatrix.parse(line, f)))
    return GenSet(name, q, tuple(elements), "read from file")


# ---------------------------------------------------------------------------
# Proof-identity suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityResult:
    label: str
    description: str
    cases: int
    matrix_ok: bool
    class_ok: bool

    @property
    def passed(self) -> bool:
        return self.matrix_ok and self.class_ok


@dataclass(frozen=True)
class IdentityReport:
    q: int
    lam_index: int
    results: tuple[IdentityResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)


def _zorn_case(lhs: ZornMatrix, rhs: ZornMatrix):
    """(sign-exact equality, +-class equality) for one instantiation."""
    exact = lhs == rhs
    classes = PaigeElement.from_matrix(lhs) == PaigeElement.from_matrix(rhs)
    return exact, classes


def _mat2_case(lhs: Mat2, rhs: Mat2):
    exact = lhs == rhs
    classes = PslElement.from_matrix(lhs) == PslElement.from_matrix(rhs)
    return exact, classes


def verify_proof_identities(field: Field, lam=None) -> IdentityReport:
    """Evaluate every displayed product identity over GF(q).

    Each identity is swept over its full nonzero-parameter range and
    reported separately at matrix level (signs kept) and class level
    (signs absorbed).
    """
    f = field
    lam = _resolve_lambda(f, lam)
    one, zero = f.one, f.zero
    z = Vec3.zero(f)
    e1, e2, e3 = (Vec3.basis(f, i) for i in (1, 2, 3))
    results = []

    def record(label, description, cases):
        matrix_ok = all(c[0] for c in cases)
        class_ok = all(c[1] for c in cases)
        results.append(
            IdentityResult(label, description, len(cases), matrix_ok, class_ok)
        )

    # (a) two nonzero coordinates from two single-coordinate elements
    cases = []
    for a in f.nonzero_elements():
        for b in f.nonzero_elements():
            p1 = _zm(one, e1.scale(a), z, one)
            p2 = _zm(one, e2.scale(b), z, one)
            p3 = _zm(one, z, e3.scale(-(a * b)), one)
            lhs = (p1 * p2) * p3
            rhs = _zm(one, _vec(a, b, zero), z, one)
            cases.append(_zorn_case(lhs, rhs))
    record("a", "upper-triangular element with two nonzero coordinates", cases)

    # (b) three nonzero coordinates from a two-coordinate element
    cases = []
    for a in f.nonzero_elements():
        for b in f.nonzero_elements():
            for c in f.nonzero_elements():
                p1 = _zm(one, _vec(a, b, zero), z, one)
                p2 = _zm(one, _vec(zero, zero, c), z, one)
                p3 = _zm(one, z, _vec(-(b * c), a * c, zero), one)
                lhs = (p1 * p2) * p3
                rhs = _zm(one, _vec(a, b, c), z, one)
                cases.append(_zorn_case(lhs, rhs))
    record("b", "upper-triangular element with three nonzero coordinates", cases)

    # (c) the two equations pulling the third PSL copy out of the first two
    mat_a = _zm(zero, e2, -e2, zero)
    mat_b = _zm(one, e1.scale(lam), e1.scale(-lam.inverse()), zero)
    mat_c = _zm(one, e2, -e2, zero)
    c1_lhs = _zm(one, z, e3.scale(lam), one)
    c1_rhs = -((mat_a * mat_b) * (mat_c * mat_b))
    v1 = _zm(zero, e1, -e1, zero)
    v2_neg = _zm(zero, -e2, e2, zero)
    c2_lhs = _zm(zero, e3, -e3, zero)
    c2_rhs = v1 * v2_neg
    record("c", "third embedded copy reached from the first two",
           [_zorn_case(c1_lhs, c1_rhs), _zorn_case(c2_lhs, c2_rhs)])

    # (d) lower lambda-transvection times V gives the C generator
    m_lower = Mat2(one, zero, lam, one)
    m_v = Mat2(zero, one, -one, zero)
    m_c = Mat2(zero, one, -one, lam)
    record("d", "lambda-transvection times rotation equals the C generator",
           [_mat2_case(m_lower * m_v, m_c)])

    # (e) conjugating the inverse upper transvection by V
    m_u = Mat2(one, one, zero, one)
    lhs_e = (m_v * m_u.inverse()) * m_v.inverse()
    record("e", "lower transvection as a conjugate of the upper one",
           [_mat2_case(lhs_e, Mat2(one, zero, one, one))])

    # (f) the embedded rotations recovered from the prime generating set
    u1 = _zm(one, e1, z, one)
    u2 = _zm(one, e2, z, one)
    x_el = _zm(zero, e3, -e3, one)
    v1_el = _zm(zero, e1, -e1, zero)
    v2_el = _zm(zero, e2, -e2, zero)
    f1_rhs = -(((x_el * u1) * (x_el * u2)) * (x_el.inverse() * u1))
    f2_rhs = -((u1 * u2) * (v2_el * (u1 * x_el)))
    record("f", "embedded rotations from the prime set",
           [_zorn_case(v2_el, f1_rhs), _zorn_case(v1_el, f2_rhs)])

    # (g) lambda lower-triangulars from the dickson-variant set, checked
    # under both bracketings of the three-factor product
    w = _zm(zero, e3.scale(lam), e3.scale(-lam.inverse()), one)
    w2 = w * w
    g1_lhs = _zm(one, z, e1.scale(lam), one)
    g2_lhs = _zm(one, z, e2.scale(lam), one).inverse()
    cases = []
    for mid, lhs in ((u2, g1_lhs), (u1, g2_lhs)):
        cases.append(_zorn_case(lhs, -((w2 * mid) * w)))
        cases.append(_zorn_case(lhs, -(w2 * (mid * w))))
    record("g", "lambda lower-triangulars from the dickson-variant set", cases)

    return IdentityReport(f.q, lam.index, tuple(results))
