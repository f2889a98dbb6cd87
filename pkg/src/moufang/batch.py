"""Vectorized kernels for bulk work on Zorn-matrix entry arrays.

The object layer in :mod:`moufang.zorn` is convenient but too slow for
loop enumeration, orbit/closure runs, and million-triple identity
sweeps.  Those paths operate on numpy arrays instead: a batch of m
matrices is an (m, 8) int16 array of canonical entry indices in storage
order, and field arithmetic becomes fancy indexing into dense tables.

Keys pack entries big-endian into int64 (see :mod:`moufang.zorn`), so
comparing keys compares entry tuples lexicographically and the
canonical representative of {M, -M} is simply the smaller key.
"""

from __future__ import annotations

import numpy as np

from .gf import Field

_KERNELS: dict[Field, "ZornKernel"] = {}


def kernel(field: Field) -> "ZornKernel":
    k = _KERNELS.get(field)
    if k is None:
        k = ZornKernel(field)
        _KERNELS[field] = k
    return k


class ZornKernel:
    """Field tables as numpy arrays plus batched Zorn-matrix operations."""

    def __init__(self, field: Field):
        self.field = field
        q = field.q
        self.q = q
        self.add = np.array(field.add_table, dtype=np.int16)
        self.mul = np.array(field.mul_table, dtype=np.int16)
        self.neg = np.array(field.neg_table, dtype=np.int16)
        # sub[x, y] = x - y
        self.sub = self.add[:, self.neg]
        # Powers of q for big-endian key packing.
        self.qpow = np.array([q ** (7 - i) for i in range(8)], dtype=np.int64)

    # -- scalar helpers on index arrays --------------------------------------

    def dot(self, u1, u2, u3, v1, v2, v3):
        m = self.mul
        return self.add[self.add[m[u1, v1], m[u2, v2]], m[u3, v3]]

    def cross(self, u1, u2, u3, v1, v2, v3):
        m, s = self.mul, self.sub
        return (
            s[m[u2, v3], m[u3, v2]],
            s[m[u3, v1], m[u1, v3]],
            s[m[u1, v2], m[u2, v1]],
        )

    # -- batched matrix operations -------------------------------------------

    def zmul(self, X, Y):
        """Product of entry arrays, either of which may broadcast.

        X and Y are (..., 8) integer arrays in storage order; a single
        matrix may be passed as a length-8 row and broadcasts against a
        batch.  Returns an (..., 8) int16 array.
        """
        a, a1, a2, a3, b1, b2, b3, b = (X[..., i] for i in range(8))
        c, c1, c2, c3, d1, d2, d3, d = (Y[..., i] for i in range(8))
        add, mul, sub = self.add, self.mul, self.sub

        ra = add[mul[a, c], self.dot(a1, a2, a3, d1, d2, d3)]
        rb = add[self.dot(b1, b2, b3, c1, c2, c3), mul[b, d]]
        x1, x2, x3 = self.cross(b1, b2, b3, d1, d2, d3)
        ra1 = sub[add[mul[a, c1], mul[a1, d]], x1]
        ra2 = sub[add[mul[a, c2], mul[a2, d]], x2]
        ra3 = sub[add[mul[a, c3], mul[a3, d]], x3]
        y1, y2, y3 = self.cross(a1, a2, a3, c1, c2, c3)
        rb1 = add[add[mul[b1, c], mul[b, d1]], y1]
        rb2 = add[add[mul[b2, c], mul[b, d2]], y2]
        rb3 = add[add[mul[b3, c], mul[b, d3]], y3]

        out = np.empty(np.broadcast(X, Y).shape[:-1] + (8,), dtype=np.int16)
        for i, col in enumerate((ra, ra1, ra2, ra3, rb1, rb2, rb3, rb)):
            out[..., i] = col
        return out

    def negate(self, X):
        return self.neg[X]

    def keys(self, X) -> np.ndarray:
        """Big-endian base-q packing of entry rows into int64 keys."""
        return (X.astype(np.int64) @ self.qpow)

    def keys_to_entries(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        out = np.empty(keys.shape + (8,), dtype=np.int16)
        rem = keys
        for i in range(7, -1, -1):
            rem, digit = np.divmod(rem, self.q)
            out[..., i] = digit
        return out

    def canonical(self, X):
        """Entry rows and keys of the +-canonical class representatives."""
        kx = self.keys(X)
        Xn = self.neg[X]
        kn = self.keys(Xn)
        take_neg = kn < kx
        entries = np.where(take_neg[..., None], Xn, X)
        return entries, np.where(take_neg, kn, kx)

    def canonical_keys(self, X) -> np.ndarray:
        return np.minimum(self.keys(X), self.keys(self.neg[X]))

    def pmul(self, X, Y):
        """Canonicalized product: batch analogue of the loop operation."""
        return self.canonical(self.zmul(X, Y))

    def pmul_keys(self, X, Y) -> np.ndarray:
        return self.canonical_keys(self.zmul(X, Y))
