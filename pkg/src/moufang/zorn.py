"""Zorn vector matrices over GF(q).

A vector matrix is a 2x2 array with scalars a, b on the diagonal and
3-vectors alpha, beta off it.  The product combines scalar, dot, and
cross products:

    [a alpha; beta b] * [c gamma; delta d] =
        [ a*c + alpha.delta        a*gamma + d*alpha - beta x delta ]
        [ c*beta + b*delta + alpha x gamma        beta.gamma + b*d  ]

with determinant a*b - alpha.beta.  Unit-determinant matrices form the
split-octonion norm-one loop; the Paige loop identifies M with -M on
top of this (see :mod:`moufang.paige`).

Entry storage order for encoding, canonicalization and files is
(a, alpha1, alpha2, alpha3, beta1, beta2, beta3, b).  The text notation
is ``[a|x1,x2,x3|y1,y2,y3|b]`` with canonical indices and no spaces.
"""

from __future__ import annotations

from .gf import Field, FieldElement


class Vec3:
    """Triple of field elements with dot and cross products."""

    __slots__ = ("x1", "x2", "x3")

    def __init__(self, x1: FieldElement, x2: FieldElement, x3: FieldElement):
        if x2.field != x1.field or x3.field != x1.field:
            raise ValueError("vector components from mixed fields")
        self.x1 = x1
        self.x2 = x2
        self.x3 = x3

    @classmethod
    def zero(cls, field: Field) -> "Vec3":
        z = field.zero
        return cls(z, z, z)

    @classmethod
    def basis(cls, field: Field, i: int) -> "Vec3":
        """Canonical basis vector e_i, i in {1, 2, 3}."""
        if i not in (1, 2, 3):
            raise ValueError(f"basis index must be 1, 2 or 3, got {i}")
        comps = [field.zero, field.zero, field.zero]
        comps[i - 1] = field.one
        return cls(*comps)

    @classmethod
    def from_indices(cls, field: Field, indices) -> "Vec3":
        i1, i2, i3 = indices
        return cls(field.element(i1), field.element(i2), field.element(i3))

    @property
    def field(self) -> Field:
        return self.x1.field

    @property
    def indices(self):
        return (self.x1.index, self.x2.index, self.x3.index)

    def dot(self, other: "Vec3") -> FieldElement:
        return self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3

    def cross(self, other: "Vec3") -> "Vec3":
        u, v = self, other
        return Vec3(
            u.x2 * v.x3 - u.x3 * v.x2,
            u.x3 * v.x1 - u.x1 * v.x3,
            u.x1 * v.x2 - u.x2 * v.x1,
        )

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x1, -self.x2, -self.x3)

    def scale(self, s: FieldElement) -> "Vec3":
        return Vec3(s * self.x1, s * self.x2, s * self.x3)

    def __rmul__(self, s: FieldElement) -> "Vec3":
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, Vec3):
            return NotImplemented
        return (
            self.x1 == other.x1 and self.x2 == other.x2 and self.x3 == other.x3
        )

    def __hash__(self):
        return hash((self.field.q,) + self.indices)

    def __repr__(self):
        return "({},{},{})".format(*self.indices)


class ZornMatrix:
    """Vector matrix [a alpha; beta b]; determinant is unconstrained here."""

    __slots__ = ("a", "alpha", "beta", "b")

    def __init__(self, a: FieldElement, alpha: Vec3, beta: Vec3, b: FieldElement):
        f = a.field
        if alpha.field != f or beta.field != f or b.field != f:
            raise ValueError("matrix entries from mixed fields")
        self.a = a
        self.alpha = alpha
        self.beta = beta
        self.b = b

    @classmethod
    def identity(cls, field: Field) -> "ZornMatrix":
        one = field.one
        return cls(one, Vec3.zero(field), Vec3.zero(field), one)

    @classmethod
    def from_entries(cls, field: Field, entries) -> "ZornMatrix":
        """Build from the 8 canonical indices in storage order."""
        a, a1, a2, a3, b1, b2, b3, b = entries
        return cls(
            field.element(a),
            Vec3.from_indices(field, (a1, a2, a3)),
            Vec3.from_indices(field, (b1, b2, b3)),
            field.element(b),
        )

    @property
    def field(self) -> Field:
        return self.a.field

    @property
    def entries(self):
        """The 8 canonical indices (a, alpha, beta, b) in storage order."""
        return (self.a.index,) + self.alpha.indices + self.beta.indices + (self.b.index,)

    def __mul__(self, other: "ZornMatrix") -> "ZornMatrix":
        if not isinstance(other, ZornMatrix):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("mixed fields in vector-matrix product")
        a, alpha, beta, b = self.a, self.alpha, self.beta, self.b
        c, gamma, delta, d = other.a, other.alpha, other.beta, other.b
        return ZornMatrix(
            a * c + alpha.dot(delta),
            gamma.scale(a) + alpha.scale(d) - beta.cross(delta),
            beta.scale(c) + delta.scale(b) + alpha.cross(gamma),
            beta.dot(gamma) + b * d,
        )

    def det(self) -> FieldElement:
        return self.a * self.b - self.alpha.dot(self.beta)

    def inverse(self) -> "ZornMatrix":
        """[b -alpha; -beta a]; valid only on determinant-1 matrices."""
        if self.det().index != 1:
            raise ValueError("inverse formula requires determinant 1")
        return ZornMatrix(self.b, -self.alpha, -self.beta, self.a)

    def __neg__(self) -> "ZornMatrix":
        return ZornMatrix(-self.a, -self.alpha, -self.beta, -self.b)

    def __eq__(self, other):
        if not isinstance(other, ZornMatrix):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash((self.field.q, self.entries))

    # -- text notation ------------------------------------------------------

    def notation(self) -> str:
        e = self.entries
        return "[{}|{},{},{}|{},{},{}|{}]".format(*e)

    @classmethod
    def parse(cls, text: str, field: Field) -> "ZornMatrix":
        """Parse ``[a|x1,x2,x3|y1,y2,y3|b]`` notation."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"malformed element notation: {text!r}")
        parts = s[1:-1].split("|")
        if len(parts) != 4:
            raise ValueError(f"malformed element notation: {text!r}")
        try:
            a = int(parts[0])
            alpha = tuple(int(x) for x in parts[1].split(","))
            beta = tuple(int(x) for x in parts[2].split(","))
            b = int(parts[3])
        except ValueError:
            raise ValueError(f"malformed element notation: {text!r}") from None
        if len(alpha) != 3 or len(beta) != 3:
            raise ValueError(f"malformed element notation: {text!r}")
        entries = (a,) + alpha + beta + (b,)
        if not all(0 <= x < field.q for x in entries):
            raise ValueError(
                f"entry out of range for GF({field.q}): {text!r}"
            )
        return cls.from_entries(field, entries)

    def __repr__(self):
        return self.notation() + f"@GF({self.field.q})"


# ---------------------------------------------------------------------------
# Fixed-width integer keys.  Entries are packed big-endian in storage
# order, so numeric key order equals lexicographic order on the entry
# tuple; q <= 121 keeps every key under 2^56.
# ---------------------------------------------------------------------------

def entries_to_key(entries, q: int) -> int:
    key = 0
    for x in entries:
        key = key * q + x
    return key


def key_to_entries(key: int, q: int):
    out = []
    for _ in range(8):
        key, digit = divmod(key, q)
        out.append(digit)
    return tuple(reversed(out))
