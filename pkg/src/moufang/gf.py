"""Exact arithmetic in small Galois fields GF(p^r).

Elements are represented by their canonical index: an element with
coefficient vector (c0, c1, ..., c_{r-1}) against the power basis
1, t, ..., t^{r-1} has index sum(c_i * p^i).  All field operations are
table driven, which keeps the hot enumeration loops elsewhere in the
package branch free.

The extension modulus is the lexicographically least monic irreducible
polynomial of degree r over GF(p), ordering candidates by their
coefficient tuple with the constant term first.  For r = 1 the modulus
is the polynomial t and arithmetic is plain arithmetic mod p.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

# Largest supported field order.  Keeps every dense table and every
# downstream closure comfortably in memory.
FIELD_ORDER_CAP = 121


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p).  A polynomial is a tuple of residues,
# constant term first; the zero polynomial is the empty tuple.
# ---------------------------------------------------------------------------

def _poly_trim(poly):
    i = len(poly)
    while i > 0 and poly[i - 1] == 0:
        i -= 1
    return tuple(poly[:i])


def _poly_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_mod(f, m, p):
    """Remainder of f divided by the monic polynomial m over GF(p)."""
    rem = list(f)
    dm = len(m) - 1
    while len(rem) - 1 >= dm and rem:
        lead = rem[-1] % p
        if lead:
            shift = len(rem) - 1 - dm
            for i, c in enumerate(m):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
        rem.pop()
    return _poly_trim(rem)


def _is_irreducible(f, p):
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = tail + (1,)
            if not _poly_mod(f, divisor, p):
                return False
    # Degree <= 3 reduces to the root test, which the d = 1 pass covers.
    return True


def _least_irreducible(p: int, r: int):
    """Lex-least monic irreducible of degree r, coefficient tuple order."""
    if r == 1:
        return (0, 1)  # the polynomial t
    for tail in product(range(p), repeat=r):
        candidate = tail + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise AssertionError(f"no irreducible polynomial of degree {r} over GF({p})")


# ---------------------------------------------------------------------------
# Field and FieldElement
# ---------------------------------------------------------------------------

class Field:
    """GF(p^r) with dense addition/multiplication/negation/inverse tables.

    Construct via :func:`field` or :func:`field_of_order`, which cache
    instances so element operations can rely on object identity.
    """

    __slots__ = (
        "p", "r", "q", "modulus",
        "add_table", "mul_table", "neg_table", "inv_table",
        "_elements", "_primitive",
    )

    def __init__(self, p: int, r: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if r < 1:
            raise ValueError(f"extension degree must be >= 1, got {r}")
        q = p ** r
        if q > FIELD_ORDER_CAP:
            raise ValueError(f"field order {q} exceeds the cap {FIELD_ORDER_CAP}")
        self.p = p
        self.r = r
        self.q = q
        self.modulus = _least_irreducible(p, r)
        self._build_tables()
        self._elements = tuple(FieldElement(self, i) for i in range(q))
        self._primitive = None

    def _index_to_poly(self, i):
        coeffs = []
        for _ in range(self.r):
            coeffs.append(i % self.p)
            i //= self.p
        return _poly_trim(coeffs)

    def _poly_to_index(self, poly):
        idx = 0
        for c in reversed(poly):
            idx = idx * self.p + c
        return idx

    def _build_tables(self):
        p, q = self.p, self.q
        polys = [self._index_to_poly(i) for i in range(q)]
        add = []
        mul = []
        for i in range(q):
            fi = polys[i]
            add_row = []
            mul_row = []
            for j in range(q):
                fj = polys[j]
                s = [0] * max(len(fi), len(fj), 1)
                for k, c in enumerate(fi):
                    s[k] = (s[k] + c) % p
                for k, c in enumerate(fj):
                    s[k] = (s[k] + c) % p
                add_row.append(self._poly_to_index(_poly_trim(s)))
                prod = _poly_mod(_poly_mul(fi, fj, p), self.modulus, p)
                mul_row.append(self._poly_to_index(prod))
            add.append(add_row)
            mul.append(mul_row)
        neg = [0] * q
        for i in range(q):
            neg[i] = self._poly_to_index(tuple((-c) % p for c in polys[i]))
        inv = [None] * q
        for i in range(1, q):
            for j in range(1, q):
                if mul[i][j] == 1:
                    inv[i] = j
                    break
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv

    # -- element access -----------------------------------------------------

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for GF({self.q})")
        return self._elements[index]

    def from_coeffs(self, coeffs) -> "FieldElement":
        if len(coeffs) != self.r:
            raise ValueError(f"expected {self.r} coefficients, got {len(coeffs)}")
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + c % self.p
        return self._elements[idx]

    @property
    def zero(self) -> "FieldElement":
        return self._elements[0]

    @property
    def one(self) -> "FieldElement":
        return self._elements[1]

    def elements(self):
        return iter(self._elements)

    def nonzero_elements(self):
        return iter(self._elements[1:])

    def primitive_element(self) -> "FieldElement":
        """Element of least index whose multiplicative order is q - 1."""
        if self._primitive is None:
            for x in self._elements[1:]:
                if x.order() == self.q - 1:
                    self._primitive = x
                    break
        return self._primitive

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


class FieldElement:
    """Immutable element of a :class:`Field`, identified by its index."""

    __slots__ = ("field", "index")

    def __init__(self, field: Field, index: int):
        self.field = field
        self.index = index

    @property
    def coeffs(self):
        i, out = self.index, []
        for _ in range(self.field.r):
            out.append(i % self.field.p)
            i //= self.field.p
        return tuple(out)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise ValueError(f"mixed fields: {self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return self.field._elements[self.field.add_table[self.index][other.index]]

    def __sub__(self, other):
        other = self._check(other)
        f = self.field
        return f._elements[f.add_table[self.index][f.neg_table[other.index]]]

    def __neg__(self):
        return self.field._elements[self.field.neg_table[self.index]]

    def __mul__(self, other):
        other = self._check(other)
        return self.field._elements[self.field.mul_table[self.index][other.index]]

    def inverse(self) -> "FieldElement":
        if self.index == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        return self.field._elements[self.field.inv_table[self.index]]

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def order(self) -> int:
        """Least n >= 1 with x^n = 1; divides q - 1."""
        if self.index == 0:
            raise ValueError("zero has no multiplicative order")
        n, x = 1, self
        while x.index != 1:
            x = x * self
            n += 1
        return n

    def __bool__(self):
        return self.index != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.index == other.index and (
            self.field is other.field or self.field == other.field
        )

    def __hash__(self):
        return hash((self.field.q, self.index))

    def __repr__(self):
        return f"{self.index}@GF({self.field.q})"


# ---------------------------------------------------------------------------
# Cached constructors
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def field(p: int, r: int = 1) -> Field:
    """GF(p^r) with the canonical (lex-least) modulus; instances are cached."""
    return Field(p, r)


def _factor_prime_power(q: int):
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1  # q itself is prime
    r = 0
    n = q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, r


def field_of_order(q: int) -> Field:
    """The field GF(q) for a prime power q <= the cap."""
    p, r = _factor_prime_power(q)
    return field(p, r)
