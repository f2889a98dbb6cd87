"""2x2 matrix groups SL(2,q) and PSL(2,q) with the classical generators.

Carries every generating family the verification suite needs:

* Dickson's pair [1 1; 0 1], [1 0; lambda 1] for SL(2,q), valid for odd
  prime powers q != 9 and for q = 2;
* the Albert-Thompson pair B = diag(lambda, lambda^-1), C = [0 1; -1 lambda]
  generating PSL(2,q) for q > 2;
* the Coxeter-Moser pair [1 0; 1 1], [0 1; -1 0] for PSL(2,p), p prime;
* the even-characteristic pair D1 = [1 1; 1 0], D2 = diag(lambda, lambda^-1)
  for SL(2,2^r), r > 1.

lambda is always the canonical primitive element of GF(q).  Projective
elements are +-classes with the lexicographically least representative
over the entry order (a, b, c, d).
"""

from __future__ import annotations

from .gf import Field, FieldElement, is_prime


class Mat2:
    """Row-major 2x2 matrix [a b; c d] over a common field."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: FieldElement, b: FieldElement,
                 c: FieldElement, d: FieldElement):
        f = a.field
        if b.field != f or c.field != f or d.field != f:
            raise ValueError("matrix entries from mixed fields")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, field: Field) -> "Mat2":
        one, zero = field.one, field.zero
        return cls(one, zero, zero, one)

    @classmethod
    def from_indices(cls, field: Field, indices) -> "Mat2":
        a, b, c, d = (field.element(i) for i in indices)
        return cls(a, b, c, d)

    @property
    def field(self) -> Field:
        return self.a.field

    @property
    def indices(self):
        return (self.a.index, self.b.index, self.c.index, self.d.index)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("mixed fields in matrix product")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det:
            raise ValueError("matrix is singular")
        s = det.inverse()
        return Mat2(s * self.d, s * (-self.b), s * (-self.c), s * self.a)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.field == other.field and self.indices == other.indices

    def __hash__(self):
        return hash((self.field.q, self.indices))

    def __repr__(self):
        return "[{} {}; {} {}]@GF({})".format(*self.indices, self.field.q)


class PslElement:
    """+-class of a determinant-1 Mat2, canonicalized lexicographically."""

    __slots__ = ("rep",)

    def __init__(self, rep: Mat2):
        self.rep = rep

    @classmethod
    def from_matrix(cls, m: Mat2) -> "PslElement":
        if m.det().index != 1:
            raise ValueError("projective class requires determinant 1")
        neg = -m
        return cls(neg if neg.indices < m.indices else m)

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def indices(self):
        return self.rep.indices

    def __mul__(self, other: "PslElement") -> "PslElement":
        if not isinstance(other, PslElement):
            return NotImplemented
        return PslElement.from_matrix(self.rep * other.rep)

    def inverse(self) -> "PslElement":
        return PslElement.from_matrix(self.rep.inverse())

    def __eq__(self, other):
        if not isinstance(other, PslElement):
            return NotImplemented
        return self.field == other.field and self.indices == other.indices

    def __hash__(self):
        return hash((self.field.q, self.indices, "psl"))

    def __repr__(self):
        return "+-" + repr(self.rep)


# ---------------------------------------------------------------------------
# Direct enumeration (the comparison oracle for closures)
# ---------------------------------------------------------------------------

def sl2_elements(field: Field) -> list[Mat2]:
    """All determinant-1 matrices, iterating (a, b, c) and solving for d."""
    q = field.q
    out = []
    mul, inv, neg = field.mul_table, field.inv_table, field.neg_table
    add = field.add_table
    for a in range(q):
        if a:
            ia = inv[a]
            for b in range(q):
                for c in range(q):
                    d = mul[ia][add[1][mul[b][c]]]
                    out.append(Mat2.from_indices(field, (a, b, c, d)))
        else:
            # a = 0 forces b*c = -1.
            for b in range(1, q):
                c = neg[inv[b]]
                for d in range(q):
                    out.append(Mat2.from_indices(field, (0, b, c, d)))
    out.sort(key=lambda m: m.indices)
    return out


def psl2_elements(field: Field) -> list[PslElement]:
    """All +-classes of SL(2,q), sorted by representative entries."""
    seen = set()
    out = []
    for m in sl2_elements(field):
        x = PslElement.from_matrix(m)
        if x.indices not in seen:
            seen.add(x.indices)
            out.append(x)
    out.sort(key=lambda x: x.indices)
    return out


# ---------------------------------------------------------------------------
# Generator families
# ---------------------------------------------------------------------------

def _resolve_lambda(field: Field, lam) -> FieldElement:
    if lam is None:
        return field.primitive_element()
    if isinstance(lam, int):
        lam = field.element(lam)
    if lam.index == 0 or lam.order() != field.q - 1:
        raise ValueError(
            f"index {lam.index} is not a primitive element of GF({field.q})"
        )
    return lam


def dickson_gens(field: Field, lam=None) -> tuple[Mat2, Mat2]:
    """[1 1; 0 1] and [1 0; lambda 1]; q must be odd and != 9, or q = 2."""
    q = field.q
    if q == 9 or (q % 2 == 0 and q != 2):
        raise ValueError(
            f"Dickson generators require q odd and q != 9, or q = 2; got q={q}"
        )
    one, zero = field.one, field.zero
    lam = _resolve_lambda(field, lam)
    return (
        Mat2(one, one, zero, one),
        Mat2(one, zero, lam, one),
    )


def albert_thompson_gens(field: Field, lam=None) -> tuple[Mat2, Mat2]:
    """B = diag(lambda, lambda^-1) and C = [0 1; -1 lambda]; q > 2 only."""
    q = field.q
    if q <= 2:
        raise ValueError(f"Albert-Thompson generators require q > 2, got q={q}")
    one, zero = field.one, field.zero
    lam = _resolve_lambda(field, lam)
    return (
        Mat2(lam, zero, zero, lam.inverse()),
        Mat2(zero, one, -one, lam),
    )


def coxeter_moser_gens(field: Field) -> tuple[Mat2, Mat2]:
    """[1 0; 1 1] and [0 1; -1 0]; prime fields only."""
    if field.r != 1:
        raise ValueError(
            f"Coxeter-Moser generators are stated for primes, got q={field.q}"
        )
    one, zero = field.one, field.zero
    return (
        Mat2(one, zero, one, one),
        Mat2(zero, one, -one, zero),
    )


def sl2_even_gens(field: Field, lam=None) -> tuple[Mat2, Mat2]:
    """D1 = [1 1; 1 0] and D2 = diag(lambda, lambda^-1); q = 2^r, r > 1."""
    if field.p != 2 or field.r < 2:
        raise ValueError(
            f"even-characteristic generators require q = 2^r with r > 1, got q={field.q}"
        )
    one, zero = field.one, field.zero
    lam = _resolve_lambda(field, lam)
    return (
        Mat2(one, one, one, zero),
        Mat2(lam, zero, zero, lam.inverse()),
    )


GENERATOR_FAMILIES = {
    "dickson": (dickson_gens, "sl"),
    "albert-thompson": (albert_thompson_gens, "psl"),
    "coxeter-moser": (coxeter_moser_gens, "psl"),
    "even": (sl2_even_gens, "sl"),
}


def group_closure(gens, projective: bool = False):
    """Subgroup generated by det-1 matrices, as a breadth-first word orbit.

    In a finite group the set of words in the generators is already a
    subgroup (finiteness supplies inverses), so the orbit of the
    identity under left multiplication by generators is exact.  With
    ``projective`` set the walk runs on +-classes.
    """
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    for g in gens:
        if g.det().index != 1:
            raise ValueError("group closure requires determinant-1 generators")
    if projective:
        seeds = [PslElement.from_matrix(g) for g in gens]
        start = PslElement.from_matrix(Mat2.identity(field))
    else:
        seeds = list(gens)
        start = Mat2.identity(field)

    seen = {start}
    out = [start]
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for g in seeds:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    new.append(y)
        frontier = new
    return out
