"""Generation verification for M*(q): orbits, exact closures, sweeps.

Two methods certify generation:

* the orbit of the identity under left and right translation by the
  generators, O(order x #generators), contained in the generated
  subloop, so reaching the full loop order is a proof of generation
  (an orbit short of full order proves nothing);
* exact subloop closure by a pairwise worklist, feasible for q <= 3,
  whose verdict is exact in both directions.

Sampled sweeps draw from a fixed 64-bit linear congruential generator
(multiplier 6364136223846793005, increment 1442695040888963407, modulus
2^64; an index draw advances the state once and reduces the high 32
bits of the new state modulo the table size).  Runs are therefore
reproducible bit-exactly from the seed, independent of thread count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import batch
from .gf import Field
from .paige import LoopContext, PaigeElement, loop_context
from .zorn import ZornMatrix

# Exact pairwise closure is quadratic in the subloop order; q = 3
# (order 1080) is the default ceiling.
CLOSURE_CAP = 3

VERDICT_GENERATES = "GENERATES"
VERDICT_PROPER = "PROPER-SUBLOOP"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE-ORBIT"


# ---------------------------------------------------------------------------
# Reproducible sampling
# ---------------------------------------------------------------------------

LCG_MULT = 6364136223846793005
LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1
_LCG_BLOCK = 1 << 14


class Lcg:
    """Scalar form of the documented 64-bit linear congruential generator."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_index(self, n: int) -> int:
        self.state = (LCG_MULT * self.state + LCG_INC) & _MASK64
        return (self.state >> 32) % n


def lcg_states(seed: int, count: int) -> np.ndarray:
    """The first `count` states after seeding, as uint64."""
    if count <= 0:
        return np.empty(0, dtype=np.uint64)
    block = min(count, _LCG_BLOCK)
    first = np.empty(block, dtype=np.uint64)
    s = seed & _MASK64
    for i in range(block):
        s = (LCG_MULT * s + LCG_INC) & _MASK64
        first[i] = s
    if count <= block:
        return first[:count]
    # Jump a whole block at once: s[i+B] = A*s[i] + C with
    # A = mult^B and C = inc * sum(mult^j, j < B), both mod 2^64.
    jump_mult = pow(LCG_MULT, block, 1 << 64)
    acc, term = 0, 1
    for _ in range(block):
        acc = (acc + term) & _MASK64
        term = (term * LCG_MULT) & _MASK64
    jump_inc = (acc * LCG_INC) & _MASK64
    blocks = [first]
    produced = block
    prev = first
    with np.errstate(over="ignore"):
        while produced < count:
            prev = prev * np.uint64(jump_mult) + np.uint64(jump_inc)
            blocks.append(prev)
            produced += block
    return np.concatenate(blocks)[:count]


def lcg_indices(seed: int, count: int, n: int) -> np.ndarray:
    """`count` successive index draws in [0, n)."""
    states = lcg_states(seed, count)
    return ((states >> np.uint64(32)) % np.uint64(n)).astype(np.int64)


# ---------------------------------------------------------------------------
# Orbit and closure
# ---------------------------------------------------------------------------

def _generator_list(gens) -> list[PaigeElement]:
    elems = list(gens.elements) if hasattr(gens, "elements") else list(gens)
    if not elems:
        raise ValueError("need at least one generator")
    field = elems[0].field
    for g in elems:
        if g.field != field:
            raise ValueError("generators from mixed fields")
    return elems


class _EntryTranslation:
    """x -> g*x (or x*g) evaluated columnwise on batches of entry rows.

    Zorn multiplication is bilinear, so translation by a fixed element
    is a GF(q)-linear map on the 8 entries; its matrix is read off by
    multiplying g against the 8 entry-basis matrices with the object
    layer.  Catalog generators are sparse, so each output entry is a
    short chain of multiplication-row lookups folded with an addition
    table.  Also computes the closed-form unit-matrix index of every
    product, which is what the orbit needs.
    """

    def __init__(self, g: PaigeElement, left: bool, units):
        field = g.field
        q = field.q
        self.q = np.int32(q)
        self.q3 = np.int32(q ** 3)
        self.q6 = np.int32(units.q6)
        self.zero_offset = np.int32(units.zero_offset)
        self.zero_rank = units.zero_rank
        mul = np.array(field.mul_table, dtype=np.int32)
        self.addflat = np.array(field.add_table, dtype=np.int32).ravel()
        plan = []
        for j in range(8):
            plan.append([])
        for k in range(8):
            basis_entries = [0] * 8
            basis_entries[k] = 1
            basis = ZornMatrix.from_entries(field, basis_entries)
            prod = g.rep * basis if left else basis * g.rep
            for j, coeff in enumerate(prod.entries):
                if coeff:
                    plan[j].append((k, mul[coeff]))
        self.plan = plan

    def _column(self, rows, terms):
        k0, row0 = terms[0]
        acc = row0[rows[:, k0]]
        for k, row in terms[1:]:
            acc = self.addflat[acc * self.q + row[rows[:, k]]]
        return acc

    def unit_indices(self, rows) -> np.ndarray:
        """Unit-matrix indices of the translated entry rows."""
        o = [self._column(rows, terms) for terms in self.plan]
        va = (o[3] * self.q + o[2]) * self.q + o[1]
        vb = (o[6] * self.q + o[5]) * self.q + o[4]
        pair = va * self.q3 + vb
        return np.where(
            o[0] != 0,
            (o[0] - np.int32(1)) * self.q6 + pair,
            self.zero_offset + self.zero_rank[pair] * self.q + o[7],
        )


_ORBIT_CHUNK = 1 << 18


def identity_orbit(gens, ctx: LoopContext, side: str = "both") -> np.ndarray:
    """Orbit of the identity under translation by the generators.

    Element indices into ``ctx``, in deterministic breadth-first order:
    wave k holds the elements first reached by k translations, recorded
    in ascending index order within each processing chunk.  Candidates
    per element are g*x and x*g for every generator; the orbit is
    contained in the generated subloop, so reaching the full loop order
    certifies generation.  ``side`` restricts to one-sided translations
    for symmetry diagnostics; one-sided orbits can fall well short of
    the generated subloop (the default cannot do worse).

    Signs never need canonicalizing along the walk: both unit matrices
    of a class map to the same element index.
    """
    if side not in ("both", "left", "right"):
        raise ValueError(f"side must be 'both', 'left' or 'right', got {side!r}")
    elems = _generator_list(gens)
    field = ctx.field
    if elems[0].field != field:
        raise ValueError("generator field differs from context field")
    units = ctx.unit_tables()
    position = units.position

    maps = []
    for g in elems:
        if side != "right":
            maps.append(_EntryTranslation(g, True, units))
        if side != "left":
            maps.append(_EntryTranslation(g, False, units))

    seen = np.zeros(ctx.order, dtype=bool)
    start = ctx.identity_index
    seen[start] = True
    parts = [np.array([start], dtype=np.int64)]
    frontier = parts[0]

    while len(frontier):
        collected = []
        for lo in range(0, len(frontier), _ORBIT_CHUNK):
            rows = ctx.entries[frontier[lo:lo + _ORBIT_CHUNK]]
            cand = np.stack(
                [position[t.unit_indices(rows)] for t in maps], axis=1
            ).ravel()
            ids = cand[~seen[cand]]
            if not len(ids):
                continue
            new_ids = np.unique(ids).astype(np.int64)
            seen[new_ids] = True
            parts.append(new_ids)
            collected.append(new_ids)
        frontier = (np.concatenate(collected) if collected
                    else np.empty(0, dtype=np.int64))
    return np.concatenate(parts)


def subloop_closure(gens, max_q: int = CLOSURE_CAP) -> list[PaigeElement]:
    """Exact subloop generated by ``gens``, in deterministic worklist order.

    Each popped element is multiplied against every member present at
    pop time, on both sides (n*m then m*n, members in insertion order).
    Finiteness and diassociativity make inverses automatic, so the
    fixpoint is the generated subloop.
    """
    elems = _generator_list(gens)
    field = elems[0].field
    if field.q > max_q:
        raise ValueError(
            f"exact closure is capped at q <= {max_q} (got q={field.q}); "
            "use the orbit method for larger fields"
        )
    kern = batch.kernel(field)

    buf = np.empty((1024, 8), dtype=np.int16)
    keys: list[int] = []
    slot: dict[int, int] = {}

    def add(row, key: int):
        nonlocal buf
        if key in slot:
            return
        if len(keys) == len(buf):
            grown = np.empty((2 * len(buf), 8), dtype=np.int16)
            grown[: len(buf)] = buf
            buf = grown
        buf[len(keys)] = row
        slot[key] = len(keys)
        keys.append(key)

    for g in elems:
        add(np.array(g.entries, dtype=np.int16), g.key)

    i = 0
    while i < len(keys):
        row = buf[i]
        m = len(keys)
        members = buf[:m]
        left_e, left_k = kern.pmul(row, members)
        right_e, right_k = kern.pmul(members, row)
        lk, rk = left_k.tolist(), right_k.tolist()
        for j in range(m):
            add(left_e[j], lk[j])
            add(right_e[j], rk[j])
        i += 1

    out = []
    for j, key in enumerate(keys):
        m = ZornMatrix.from_entries(field, tuple(int(x) for x in buf[j]))
        out.append(PaigeElement(m, key))
    return out


# ---------------------------------------------------------------------------
# Generation reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenerationReport:
    set_name: str
    q: int
    method: str
    size: int
    order: int
    verdict: str
    elapsed: float
    seed: int | None = None


def verify_generates(set_name: str, field: Field, method: str = "auto",
                     ctx: LoopContext | None = None, lam=None) -> GenerationReport:
    """Check whether a named catalog set generates M*(q).

    ``auto`` runs the orbit first and falls back to exact closure when
    the orbit is short of the full order and q is within the closure
    cap; ``orbit`` and ``closure`` force one method.
    """
    from .gensets import generating_set

    if method not in ("auto", "orbit", "closure"):
        raise ValueError(f"unknown method {method!r}")
    t0 = time.perf_counter()
    gs = generating_set(set_name, field, lam=lam)
    if ctx is None:
        ctx = loop_context(field)

    if method in ("auto", "orbit"):
        orbit = identity_orbit(gs.elements, ctx)
        size = len(orbit)
        if size == ctx.order:
            return GenerationReport(set_name, field.q, "orbit", size,
                                    ctx.order, VERDICT_GENERATES,
                                    time.perf_counter() - t0)
        if method == "orbit" or field.q > CLOSURE_CAP:
            return GenerationReport(set_name, field.q, "orbit", size,
                                    ctx.order, VERDICT_INCONCLUSIVE,
                                    time.perf_counter() - t0)

    closure = subloop_closure(gs.elements)
    size = len(closure)
    verdict = VERDICT_GENERATES if size == ctx.order else VERDICT_PROPER
    return GenerationReport(set_name, field.q, "closure", size, ctx.order,
                            verdict, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Identity sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    passed: bool
    checked: int
    witness: tuple[PaigeElement, PaigeElement, PaigeElement] | None
    seed: int | None = None


def _element_at(ctx: LoopContext, index: int) -> PaigeElement:
    return ctx.element(int(index))


def _moufang_table_range(table, x_lo, x_hi):
    """Earliest violating (x, y, z) with x in [x_lo, x_hi), else None."""
    for x in range(x_lo, x_hi):
        xz = table[x]
        lhs = table[x][table[:, xz]]
        v = table[table[x], x]
        rhs = table[v]
        if not np.array_equal(lhs, rhs):
            ys, zs = np.nonzero(lhs != rhs)
            return (x, int(ys[0]), int(zs[0]))
    return None


def moufang_check(ctx: LoopContext, exhaustive: bool = False,
                  samples: int | None = None, seed: int | None = None,
                  threads: int = 1, force: bool = False) -> SweepResult:
    """Sweep x(y(xz)) = ((xy)x)z over all triples or a seeded sample.

    Exhaustive mode walks the Cayley table and is allowed by default
    only for q = 2 (pass ``force`` to unlock q = 3).  Sample mode draws
    three element indices per triple from the documented generator.
    Thread workers split the sweep into contiguous ranges and the
    earliest witness wins, so results are independent of ``threads``.
    """
    if exhaustive == (samples is not None):
        raise ValueError("choose exactly one of exhaustive or samples")

    if exhaustive:
        if ctx.field.q > 2 and not force:
            raise ValueError(
                f"exhaustive sweep at q={ctx.field.q} needs force=True (default cap is q=2)"
            )
        table = ctx.cayley_table()
        n = ctx.order
        hit = _parallel_earliest(
            lambda lo, hi: _moufang_table_range(table, lo, hi), n, threads)
        if hit is None:
            return SweepResult(True, n ** 3, None)
        x, y, z = hit
        return SweepResult(False, x * n * n + y * n + z,
                           (ctx.element(x), ctx.element(y), ctx.element(z)))

    if samples <= 0:
        raise ValueError("samples must be positive")
    if seed is None:
        raise ValueError("sampled sweep requires a seed")
    draws = lcg_indices(seed, 3 * samples, ctx.order)
    xs, ys, zs = draws[0::3], draws[1::3], draws[2::3]
    kern = batch.kernel(ctx.field)

    def run_range(lo, hi, chunk=1 << 17):
        for c0 in range(lo, hi, chunk):
            c1 = min(c0 + chunk, hi)
            X = ctx.entries[xs[c0:c1]]
            Y = ctx.entries[ys[c0:c1]]
            Z = ctx.entries[zs[c0:c1]]
            xz, _ = kern.pmul(X, Z)
            yxz, _ = kern.pmul(Y, xz)
            lhs = kern.pmul_keys(X, yxz)
            xy, _ = kern.pmul(X, Y)
            xyx, _ = kern.pmul(xy, X)
            rhs = kern.pmul_keys(xyx, Z)
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                return int(c0 + bad[0])
        return None

    hit = _parallel_earliest(run_range, samples, threads)
    if hit is None:
        return SweepResult(True, samples, None, seed)
    i = hit
    witness = (ctx.element(int(xs[i])), ctx.element(int(ys[i])),
               ctx.element(int(zs[i])))
    return SweepResult(False, i, witness, seed)


def _parallel_earliest(run_range, total, threads):
    """Run ``run_range(lo, hi)`` over a partition; earliest hit wins."""
    if threads <= 1 or total < 2 * threads:
        return run_range(0, total)
    bounds = np.linspace(0, total, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(run_range, int(lo), int(hi))
                   for lo, hi in zip(bounds[:-1], bounds[1:])]
        hits = [f.result() for f in futures]
    hits = [h for h in hits if h is not None]
    return min(hits) if hits else None


def associativity_witness(ctx: LoopContext, elements=None):
    """First triple in index order with (xy)z != x(yz), or None.

    ``elements`` restricts the scan to a sublist of loop elements (for
    example one of the embedded PSL copies, which is associative).
    """
    kern = batch.kernel(ctx.field)
    if elements is None:
        rows = ctx.entries
        def materialize(i):
            return ctx.element(int(i))
    else:
        elems = list(elements)
        if not elems:
            return None
        rows = np.array([e.entries for e in elems], dtype=np.int16)
        def materialize(i):
            return elems[int(i)]

    m = len(rows)
    for i in range(m):
        xi = rows[i]
        for j in range(m):
            yj = rows[j]
            xy, _ = kern.pmul(xi, yj)
            lhs = kern.pmul_keys(xy, rows)
            yz, _ = kern.pmul(yj, rows)
            rhs = kern.pmul_keys(xi, yz)
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                k = int(bad[0])
                return (materialize(i), materialize(j), materialize(k))
    return None


def diassociativity_check(x: PaigeElement, y: PaigeElement,
                          max_q: int = CLOSURE_CAP) -> bool:
    """Closure of {x, y} computed exactly, then all its triples tested.

    Two elements of a Moufang loop generate a group; this checks that
    statement mechanically for one pair.
    """
    members = subloop_closure([x, y], max_q=max_q)
    field = x.field
    kern = batch.kernel(field)
    s = len(members)
    ent = np.array([e.entries for e in members], dtype=np.int16)
    keys = np.array([e.key for e in members], dtype=np.int64)
    sorter = np.argsort(keys)
    sorted_keys = keys[sorter]

    table = np.empty((s, s), dtype=np.int32)
    for i in range(s):
        pk = kern.pmul_keys(ent[i], ent)
        pos = np.searchsorted(sorted_keys, pk)
        if not np.array_equal(sorted_keys[np.minimum(pos, s - 1)], pk):
            raise AssertionError("closure not closed under products")
        table[i] = sorter[pos]

    for i in range(s):
        lhs = table[table[i]]
        rhs = table[i][table]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def random_pairs(ctx: LoopContext, pairs: int, seed: int):
    """Seeded element pairs (x, y) drawn as consecutive index pairs."""
    draws = lcg_indices(seed, 2 * pairs, ctx.order)
    return [(ctx.element(int(draws[2 * i])), ctx.element(int(draws[2 * i + 1])))
            for i in range(pairs)]
