"""The simple Moufang loops M*(q) of unit Zorn matrices modulo signs.

M*(q) consists of the vector matrices of determinant 1 over GF(q), with
M and -M identified.  The class representative is the lexicographically
least of {M, -M} under the fixed 8-entry storage order, which in
characteristic 2 is M itself.  Each element carries a fixed-width key
(entries packed big-endian base q), so key order is representative
lexicographic order and the element table of an enumerated loop is
simply its sorted key array.

Enumeration solves the determinant constraint per (alpha, beta, a)
instead of filtering q^8 tuples: a*b = 1 + alpha.beta fixes b for
a != 0, and a = 0 forces alpha.beta = -1 with b free.
"""

from __future__ import annotations

import numpy as np

from . import batch
from .gf import Field, FieldElement
from .zorn import Vec3, ZornMatrix, entries_to_key

# Loop orders grow like q^7; beyond this the element table stops being
# a reasonable in-memory object.
ENUMERATION_CAP = 11


class PaigeElement:
    """Canonical representative of {M, -M} for a unit vector matrix M."""

    __slots__ = ("rep", "key")

    def __init__(self, rep: ZornMatrix, key: int):
        self.rep = rep
        self.key = key

    @classmethod
    def from_matrix(cls, m: ZornMatrix) -> "PaigeElement":
        if m.det().index != 1:
            raise ValueError(
                f"matrix {m.notation()} has determinant {m.det().index}, not 1"
            )
        q = m.field.q
        neg = -m
        if entries_to_key(neg.entries, q) < entries_to_key(m.entries, q):
            m = neg
        return cls(m, entries_to_key(m.entries, q))

    @classmethod
    def identity(cls, field: Field) -> "PaigeElement":
        return cls.from_matrix(ZornMatrix.identity(field))

    @property
    def field(self) -> Field:
        return self.rep.field

    @property
    def entries(self):
        return self.rep.entries

    def __mul__(self, other: "PaigeElement") -> "PaigeElement":
        if not isinstance(other, PaigeElement):
            return NotImplemented
        return PaigeElement.from_matrix(self.rep * other.rep)

    def inverse(self) -> "PaigeElement":
        return PaigeElement.from_matrix(self.rep.inverse())

    def notation(self) -> str:
        return self.rep.notation()

    def __eq__(self, other):
        if not isinstance(other, PaigeElement):
            return NotImplemented
        return self.key == other.key and self.field == other.field

    def __hash__(self):
        return hash((self.field.q, self.key))

    def __repr__(self):
        return self.notation() + f"@M*({self.field.q})"


def canonical(m: ZornMatrix) -> PaigeElement:
    """The +-class representative of a determinant-1 vector matrix."""
    return PaigeElement.from_matrix(m)


class LoopContext:
    """A fully enumerated M*(q): sorted key table plus entry rows.

    Immutable once built; index positions in the sorted key array are
    the element indices used by the engine and the Cayley file format.
    """

    def __init__(self, field: Field, keys: np.ndarray, entries: np.ndarray):
        self.field = field
        self.keys = keys
        self.entries = entries
        self.order = len(keys)
        self._kernel = batch.kernel(field)
        self._cayley = None
        self._units = None
        self.identity_index = self.index_of_key(
            entries_to_key(ZornMatrix.identity(field).entries, field.q)
        )

    def index_of_key(self, key: int) -> int:
        pos = int(np.searchsorted(self.keys, key))
        if pos >= self.order or self.keys[pos] != key:
            raise KeyError(f"key {key} is not an element of M*({self.field.q})")
        return pos

    def index_of(self, x: PaigeElement) -> int:
        return self.index_of_key(x.key)

    def indices_of_keys(self, keys: np.ndarray) -> np.ndarray:
        """Vectorized key -> element index lookup; keys must be members."""
        pos = np.minimum(np.searchsorted(self.keys, keys), self.order - 1)
        if not np.array_equal(self.keys[pos], keys):
            raise KeyError("key array contains non-members")
        return pos

    def element(self, index: int) -> PaigeElement:
        row = self.entries[index]
        m = ZornMatrix.from_entries(self.field, tuple(int(x) for x in row))
        return PaigeElement(m, int(self.keys[index]))

    def iter_elements(self):
        for i in range(self.order):
            yield self.element(i)

    def cayley_table(self) -> np.ndarray:
        """Dense (n, n) table of product element indices; q <= 3 only."""
        if self.field.q > 3:
            raise ValueError(
                f"Cayley table permitted only for q <= 3, not q={self.field.q}"
            )
        if self._cayley is None:
            k = self._kernel
            n = self.order
            table = np.empty((n, n), dtype=np.int32)
            for i in range(n):
                keys = k.pmul_keys(self.entries[i], self.entries)
                table[i] = np.searchsorted(self.keys, keys)
            self._cayley = table
        return self._cayley

    def unit_tables(self) -> "UnitTables":
        """O(1) unit-matrix indexing against this element table.

        Unit matrices biject with [0, q^3(q^4-1)): for a != 0 the pair
        (alpha, beta) is free and b is determined, giving index
        (a-1)*q^6 + v(alpha)*q^3 + v(beta); for a = 0 the pairs with
        alpha.beta = -1 are ranked and b is free.  ``position`` maps a
        unit index to the element index of its +-class, which lets bulk
        consumers avoid key searches entirely.
        """
        if self._units is None:
            self._units = UnitTables(self)
        return self._units

    def unit_index_of_entries(self, entries: np.ndarray) -> np.ndarray:
        """Unit-matrix indices of determinant-1 entry rows."""
        return self.unit_tables().index_of_entries(entries)


def _vector_components(q: int):
    """Components of all q^3 vectors by vector index v = x1 + x2*q + x3*q^2."""
    vs = np.arange(q ** 3)
    return (
        (vs % q).astype(np.int16),
        ((vs // q) % q).astype(np.int16),
        (vs // (q * q)).astype(np.int16),
    )


def _pair_dot(field: Field):
    """Per (alpha, beta) pair components and dot products over all q^6 pairs.

    Pairs are ordered alpha-index major, beta-index minor.
    """
    q = field.q
    k = batch.kernel(field)
    c1, c2, c3 = _vector_components(q)
    n3 = q ** 3
    a1, a2, a3 = (np.repeat(c, n3) for c in (c1, c2, c3))
    b1, b2, b3 = (np.tile(c, n3) for c in (c1, c2, c3))
    return (a1, a2, a3, b1, b2, b3), k.dot(a1, a2, a3, b1, b2, b3)


class UnitTables:
    """Closed-form indexing of all determinant-1 vector matrices."""

    def __init__(self, ctx: LoopContext):
        field = ctx.field
        q = field.q
        self.q = q
        self.q3 = q ** 3
        self.q6 = q ** 6
        self.zero_offset = (q - 1) * self.q6
        self.size = q ** 3 * (q ** 4 - 1)

        _, d = _pair_dot(field)
        mask = d == field.neg_table[1]
        # Rank of each alpha.beta = -1 pair among such pairs; other slots
        # hold garbage that the a != 0 branch never selects.
        self.zero_rank = (np.cumsum(mask, dtype=np.int64) - 1).astype(np.int32)

        pos = np.full(self.size, -1, dtype=np.int32)
        idx = np.arange(ctx.order, dtype=np.int32)
        pos[self.index_of_entries(ctx.entries)] = idx
        pos[self.index_of_entries(ctx._kernel.neg[ctx.entries])] = idx
        if not (pos >= 0).all():
            raise AssertionError("unit index table has unreachable slots")
        self.position = pos

    def index_of_entries(self, entries: np.ndarray) -> np.ndarray:
        e = entries.astype(np.int64)
        q, q3, q6 = self.q, self.q3, self.q6
        va = e[..., 1] + e[..., 2] * q + e[..., 3] * (q * q)
        vb = e[..., 4] + e[..., 5] * q + e[..., 6] * (q * q)
        pair = va * q3 + vb
        nonzero = (e[..., 0] - 1) * q6 + pair
        zero = self.zero_offset + self.zero_rank[pair] * q + e[..., 7]
        return np.where(e[..., 0] != 0, nonzero, zero)


def enumerate_loop(field: Field) -> LoopContext:
    """Enumerate all of M*(q) by solving a*b = 1 + alpha.beta per block."""
    q = field.q
    if q > ENUMERATION_CAP:
        raise ValueError(
            f"enumeration cap is q <= {ENUMERATION_CAP}, got q={q}"
        )
    k = batch.kernel(field)
    qpow = k.qpow

    (a1, a2, a3, b1, b2, b3), d = _pair_dot(field)
    one_plus_d = k.add[1, d]

    # Big-endian partial keys of the six middle digits, and of their
    # negations, computed once per block.
    mid = (
        a1.astype(np.int64) * qpow[1] + a2.astype(np.int64) * qpow[2]
        + a3.astype(np.int64) * qpow[3] + b1.astype(np.int64) * qpow[4]
        + b2.astype(np.int64) * qpow[5] + b3.astype(np.int64) * qpow[6]
    )
    neg = k.neg
    nmid = (
        neg[a1].astype(np.int64) * qpow[1] + neg[a2].astype(np.int64) * qpow[2]
        + neg[a3].astype(np.int64) * qpow[3] + neg[b1].astype(np.int64) * qpow[4]
        + neg[b2].astype(np.int64) * qpow[5] + neg[b3].astype(np.int64) * qpow[6]
    )

    chunks = []
    inv = field.inv_table
    for a in range(1, q):
        b = k.mul[inv[a]][one_plus_d]
        keys = int(a) * qpow[0] + mid + b.astype(np.int64)
        nkeys = int(neg[a]) * qpow[0] + nmid + neg[b].astype(np.int64)
        chunks.append(np.minimum(keys, nkeys))
    # a = 0: determinant 1 requires alpha.beta = -1; b is then free.
    minus_one = field.neg_table[1]
    sel = d == minus_one
    mid0, nmid0 = mid[sel], nmid[sel]
    for b in range(q):
        keys = mid0 + b
        nkeys = nmid0 + int(neg[b])
        chunks.append(np.minimum(keys, nkeys))

    stream = np.concatenate(chunks)
    assert len(stream) == q ** 3 * (q ** 4 - 1)
    keys = np.unique(stream)
    entries = k.keys_to_entries(keys)
    return LoopContext(field, keys, entries)


_CONTEXTS: dict[Field, LoopContext] = {}


def loop_context(field: Field) -> LoopContext:
    """Cached enumeration of M*(q); contexts are immutable and shared."""
    ctx = _CONTEXTS.get(field)
    if ctx is None:
        ctx = enumerate_loop(field)
        _CONTEXTS[field] = ctx
    return ctx


# ---------------------------------------------------------------------------
# The three embedded copies of PSL(2,q)
# ---------------------------------------------------------------------------

def embed_psl(i: int, m) -> PaigeElement:
    """Image of a determinant-1 2x2 matrix [a b; c d] as [a b*e_i; c*e_i d].

    Products of two such images involve no cross terms, so each of the
    three maps is a monomorphism of PSL(2,q) into M*(q); i selects the
    basis vector e_i carrying the off-diagonal entries.
    """
    if i not in (1, 2, 3):
        raise ValueError(f"embedding index must be 1, 2 or 3, got {i}")
    a, b, c, d = m.a, m.b, m.c, m.d
    field = a.field
    if m.det().index != 1:
        raise ValueError("embedding requires determinant 1")
    e = Vec3.basis(field, i)
    return PaigeElement.from_matrix(ZornMatrix(a, e.scale(b), e.scale(c), d))


def embedded_psl2(i: int, field: Field) -> list[PaigeElement]:
    """The subgroup G_i: image of every +-class of SL(2,q) under embed_psl."""
    from .psl2 import psl2_elements

    return [embed_psl(i, x.rep) for x in psl2_elements(field)]
