"""Partition of GR(4^delta)\\{0} into triples {a, 2a, 3a} and sixtuples
{+-a, +-b, +-(a+b)}, invariant under multiplication by xi.

The 2^delta - 1 triples are the Teichmuller lines {xi^i, 2xi^i, 3xi^i}.  The
sixtuples come from (2^delta - 2)/6 seed pairs (A, B): every nonzero j is the
j-coordinate of exactly one of +-A, +-B, +-(A+B) over all seeds, and the full
sixtuple family is the Teichmuller orbit {xi^t A, xi^t B} of the seeds.

Seeds are found per coset size s.  When s is not divisible by 3, the +- classes
of size-s cosets are grouped in threes and a pair is solved for each group,
then pushed through Frobenius to cover all doubling levels.  When 3 divides s,
each +- class is self-sufficient: the pair is built inside the coset's own
power chain j -> 2^(s/3) j -> 2^(2s/3) j.  Both routes reduce to solving
T^2 + T = (alpha + gamma)(beta + gamma) in the residue field, shifting one or
two of the field values by 1 (which flips the coset of the corresponding
j-coordinate to its negation partner) whenever the trace obstruction demands.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from pathlib import Path

import numpy as np

from .cyclotomic import CosetMatching, CosetTable, build_cosets, build_matching, coset_of
from .galois_ring import BasicPoly, RingContext, RingElement

# Roles of the six elements of a sixtuple, in storage order.
ROLE_NAMES = ("A", "-A", "B", "-B", "A+B", "-A-B")


class ConstructionError(RuntimeError):
    """An invariant that the construction guarantees failed to hold."""


@dataclass(frozen=True)
class SeedOrigin:
    """Provenance of a seed pair: which cosets it serves and how it was solved."""

    size: int
    route: str  # "three_class" (distinct +- classes) or "power_chain" (3 | s)
    cosets: tuple[int, ...]
    shift: str  # which field values got the +1 shift: "none", "b", "bc" or "c"
    level: int  # Frobenius level within the seed family


@dataclass(frozen=True)
class SeedPair:
    A: RingElement
    B: RingElement
    origin: SeedOrigin


@dataclass(frozen=True)
class Triple:
    exponent: int


@dataclass(frozen=True)
class Sixtuple:
    seed: int
    mult: int


def _solve_quadratic_seed(
    ctx: RingContext,
    jA: int,
    alpha: int,
    beta_eff: int,
    gamma_eff: int,
) -> tuple[RingElement, RingElement, RingElement]:
    """Common core of both seed routes.

    Solves T^2 + T = (alpha + gamma)(beta + gamma) by the half trace, recovers
    x with B = x(1 + 2 teich(beta)), and returns (A, B, A+B) where
    A = 1 + 2 xi^jA.  The caller guarantees the trace of the constant is 0.
    """
    c = ctx.field_mul(alpha ^ gamma_eff, beta_eff ^ gamma_eff)
    if c == 0 or ctx.trace(c) != 0:
        raise ConstructionError(
            f"quadratic for jA={jA} unsolvable (constant {c}); trace dispatch broken"
        )
    t = ctx.half_trace(c)
    denom = beta_eff ^ gamma_eff
    xbar = ctx.field_mul(ctx.field_mul(t, t), ctx.field_inv(ctx.field_mul(denom, denom)))
    if xbar in (0, 1):
        raise ConstructionError(f"degenerate x={xbar} for jA={jA}")
    a_elem = ctx.from_ij(0, jA)
    b_elem = ctx.from_ij(ctx.field_log(xbar), ctx.field_log(beta_eff))
    s_elem = ctx.add(a_elem, b_elem)
    i_s, j_s = ctx.ij_coords(s_elem)  # raises if A+B degenerates into T/2T/3T
    if j_s != ctx.field_log(gamma_eff):
        raise ConstructionError(
            f"j(A+B)={j_s} does not match the solved target {ctx.field_log(gamma_eff)}"
        )
    return a_elem, b_elem, s_elem


def solve_pair(ctx: RingContext, jA: int, jB: int, jC: int) -> SeedPair:
    """Seed pair with j(A) in the coset of jA, j(B) in +-coset(jB),
    j(A+B) in +-coset(jC).

    The three j's must come from three distinct +- classes of equal size.
    Tries the four trace cases in a fixed order; the first solvable one wins,
    shifting beta and/or gamma by 1 as that case requires.
    """
    n = ctx.n
    alpha = ctx.field_pow(jA)
    beta = ctx.field_pow(jB)
    gamma = ctx.field_pow(jC)
    for shift, sb, sc in (("none", 0, 0), ("b", 1, 0), ("bc", 1, 1), ("c", 0, 1)):
        beta_eff = beta ^ sb
        gamma_eff = gamma ^ sc
        c = ctx.field_mul(alpha ^ gamma_eff, beta_eff ^ gamma_eff)
        if ctx.trace(c) == 0:
            break
    else:
        raise ConstructionError(
            f"all four trace cases failed for j=({jA},{jB},{jC}); impossible"
        )
    a_elem, b_elem, s_elem = _solve_quadratic_seed(ctx, jA, alpha, beta_eff, gamma_eff)
    # j-coordinates must land in the promised +- classes
    _, j_b = ctx.ij_coords(b_elem)
    _, j_s = ctx.ij_coords(s_elem)
    cosA = set(coset_of(n, jA))
    pmB = set(coset_of(n, jB)) | set(coset_of(n, _neg_j(ctx, jB)))
    pmC = set(coset_of(n, jC)) | set(coset_of(n, _neg_j(ctx, jC)))
    if jA not in cosA or j_b not in pmB or j_s not in pmC:
        raise ConstructionError(
            f"seed for j=({jA},{jB},{jC}) landed outside its classes: "
            f"j(B)={j_b}, j(A+B)={j_s}"
        )
    s = len(cosA)
    origin = SeedOrigin(
        size=s, route="three_class", cosets=(jA, jB, jC), shift=shift, level=0
    )
    return SeedPair(A=a_elem, B=b_elem, origin=origin)


def _neg_j(ctx: RingContext, j: int) -> int:
    """j-coordinate of -E for any E with j-coordinate j."""
    return ctx.field_log(ctx.field_pow(j) ^ 1)


def _frobenius_seed(ctx: RingContext, seed: SeedPair, level: int) -> SeedPair:
    if level == 0:
        return seed
    a, b = seed.A, seed.B
    for _ in range(level):
        a = ctx.frobenius(a)
        b = ctx.frobenius(b)
    origin = SeedOrigin(
        size=seed.origin.size,
        route=seed.origin.route,
        cosets=seed.origin.cosets,
        shift=seed.origin.shift,
        level=level,
    )
    return SeedPair(A=a, B=b, origin=origin)


def seed_j_values(ctx: RingContext, seed: SeedPair) -> tuple[int, ...]:
    """j-coordinates of (A, -A, B, -B, A+B, -A-B), in role order."""
    s_elem = ctx.add(seed.A, seed.B)
    out = []
    for e in (seed.A, seed.B, s_elem):
        _, j = ctx.ij_coords(e)
        out.append(j)
        out.append(_neg_j(ctx, j))
    return tuple(out)


def seeds_for_size_nondiv3(
    ctx: RingContext, table: CosetTable, matching: CosetMatching, s: int
) -> list[SeedPair]:
    """All seeds for the size-s cosets when s is odd, > 1 and not divisible by 3.

    Groups the +- classes three at a time by ascending canonical id, solves a
    base pair per group, and expands it through Frobenius levels 0..s-1.
    """
    if s <= 1 or s % 2 == 0:
        raise ValueError(f"coset size {s} must be odd and > 1")
    if s % 3 == 0:
        raise ValueError(f"coset size {s} is divisible by 3; wrong route")
    reps = matching.class_reps(table.by_size[s])
    if len(reps) % 3 != 0:
        raise ConstructionError(
            f"{len(reps)} +- classes of size {s}: not divisible by 3"
        )
    seeds = []
    for k in range(0, len(reps), 3):
        jA, jB, jC = reps[k : k + 3]
        base = solve_pair(ctx, jA, jB, jC)
        family = [_frobenius_seed(ctx, base, l) for l in range(s)]
        expected: set[int] = set()
        for i in (jA, jB, jC):
            expected.update(table.coset(i))
            expected.update(table.coset(matching.partner[i]))
        _check_family_tiling(ctx, family, expected)
        seeds.extend(family)
    return seeds


def seeds_for_class_div3(
    ctx: RingContext, table: CosetTable, matching: CosetMatching, coset_id: int
) -> list[SeedPair]:
    """Seeds covering the +- class of one coset whose size is divisible by 3.

    With d = s/3, the pair is solved inside the coset's own doubling chain:
    j(B) = 2^d j(A) and j(A+B) or j(-A-B) = 2^(2d) j(A).  Frobenius levels
    0..d-1 then tile the class.
    """
    s = len(table.coset(coset_id))
    if s % 3 != 0 or s % 2 == 0:
        raise ValueError(f"coset size {s} must be odd and divisible by 3")
    if matching.class_rep(coset_id) != coset_id:
        raise ValueError(f"coset {coset_id} is not the canonical class representative")
    n = ctx.n
    d = s // 3
    j = coset_id
    jB = j * pow(2, d, n) % n
    jC = j * pow(2, 2 * d, n) % n
    alpha = ctx.field_pow(j)
    beta = ctx.field_pow(jB)
    gamma = ctx.field_pow(jC)
    t0 = ctx.trace(ctx.field_mul(beta ^ gamma, alpha ^ gamma))
    shift = "none" if t0 == 0 else "c"
    gamma_eff = gamma if t0 == 0 else gamma ^ 1
    a_elem, b_elem, s_elem = _solve_quadratic_seed(ctx, j, alpha, beta, gamma_eff)
    _, j_b = ctx.ij_coords(b_elem)
    _, j_s = ctx.ij_coords(s_elem)
    if j_b != jB:
        raise ConstructionError(f"j(B)={j_b}, expected the chain value {jB}")
    if j_s != jC and _neg_j(ctx, j_s) != jC:
        raise ConstructionError(
            f"neither j(A+B)={j_s} nor j(-A-B) matches the chain value {jC}"
        )
    origin = SeedOrigin(
        size=s, route="power_chain", cosets=(coset_id,), shift=shift, level=0
    )
    base = SeedPair(A=a_elem, B=b_elem, origin=origin)
    family = [_frobenius_seed(ctx, base, l) for l in range(d)]
    _check_family_tiling(
        ctx,
        family,
        expected=set(table.coset(coset_id))
        | set(table.coset(matching.partner[coset_id])),
    )
    return family


def _check_family_tiling(ctx: RingContext, family: list[SeedPair], expected: set[int]):
    claimed: list[int] = []
    for seed in family:
        claimed.extend(seed_j_values(ctx, seed))
    if len(claimed) != len(set(claimed)) or set(claimed) != expected:
        raise ConstructionError(
            f"seed family claims j-values {sorted(claimed)}, "
            f"expected exactly {sorted(expected)}"
        )


class RingPartition:
    """The assembled partition: triples, seed-generated sixtuples, and a locator.

    Block ids: triples are 0..n-1 (id = Teichmuller exponent); the sixtuple for
    seed p and multiplier t is n + p*n + t.  The locator maps a nonzero element
    to (block id, role), where triple roles are the scalar c in {1,2,3} of
    c*xi^i and sixtuple roles index ROLE_NAMES.
    """

    def __init__(
        self,
        ctx: RingContext,
        seeds: list[SeedPair],
        triples: list[int] | None = None,
        with_locator: bool = True,
    ):
        self.ctx = ctx
        self.delta = ctx.delta
        self.n = ctx.n
        self.seeds = list(seeds)
        self.triples = list(range(self.n)) if triples is None else list(triples)
        self.num_sixtuples = len(self.seeds) * self.n
        self.num_blocks = len(self.triples) + self.num_sixtuples
        self._seed_logs = self._pack_seed_logs()
        self._block_id = None
        self._role = None
        if with_locator:
            self.build_locator()

    # -- construction ---------------------------------------------------------

    def _pack_seed_logs(self) -> np.ndarray:
        """(P, 6, 2) array of Teichmuller log pairs, roles in ROLE_NAMES order.

        Degenerate seeds (elements inside T, 2T or 3T, possible only in
        hand-edited files) are stored as-is with sentinel logs; the verifier
        reports them rather than this method raising.
        """
        ctx, n = self.ctx, self.n
        out = np.empty((len(self.seeds), 6, 2), dtype=np.int64)
        for p, seed in enumerate(self.seeds):
            s_elem = ctx.add(seed.A, seed.B)
            for slot, e in enumerate((seed.A, seed.B, s_elem)):
                x, y = ctx.logs(e)
                x = n if x is None else x
                y = n if y is None else y
                yneg = int(ctx.neg_ylogs(x, y))
                out[p, 2 * slot] = (x, y)
                out[p, 2 * slot + 1] = (x, yneg)
        return out

    def build_locator(self):
        if self._block_id is not None:
            return
        ctx, n = self.ctx, self.n
        size = (n + 1) * (n + 1)
        block_id = np.full(size, -1, dtype=np.int64)
        role = np.zeros(size, dtype=np.int8)
        exps = np.asarray(self.triples, dtype=np.int64)
        bids = np.arange(len(self.triples), dtype=np.int64)
        for c, idx in (
            (1, ctx.pair_index(exps, np.int64(n))),  # xi^i
            (2, ctx.pair_index(np.int64(n), exps)),  # 2 xi^i
            (3, ctx.pair_index(exps, exps)),  # 3 xi^i
        ):
            block_id[idx] = bids
            role[idx] = c
        t = np.arange(n, dtype=np.int64)
        base = len(self.triples)
        for p in range(len(self.seeds)):
            xs = ctx.shift_logs(self._seed_logs[p, :, 0:1], t)
            ys = ctx.shift_logs(self._seed_logs[p, :, 1:2], t)
            idx = ctx.pair_index(xs, ys)
            block_id[idx] = base + p * n + t
            role[idx] = np.arange(6, dtype=np.int8)[:, None]
        uncovered = int((block_id < 0).sum()) - 1  # the zero element stays -1
        if uncovered != 0 or block_id[ctx.pair_index(n, n)] != -1:
            bad = int(np.flatnonzero(block_id < 0)[0])
            raise ConstructionError(
                f"partition does not cover the nonzero elements; "
                f"{uncovered} gaps, first at log-pair index {bad}"
            )
        self._block_id = block_id
        self._role = role

    @property
    def has_locator(self) -> bool:
        return self._block_id is not None

    # -- queries --------------------------------------------------------------

    def locate(self, elem: RingElement) -> tuple[int, int]:
        """(block id, role) of a nonzero element."""
        if self._block_id is None:
            raise RuntimeError("locator was not built for this partition")
        x, y = self.ctx.logs(elem)
        n = self.n
        idx = self.ctx.pair_index(n if x is None else x, n if y is None else y)
        bid = int(self._block_id[idx])
        if bid < 0:
            raise ValueError(f"{elem} is not covered (zero element?)")
        return bid, int(self._role[idx])

    def block(self, block_id: int) -> Triple | Sixtuple:
        if block_id < len(self.triples):
            return Triple(exponent=self.triples[block_id])
        k = block_id - len(self.triples)
        return Sixtuple(seed=k // self.n, mult=k % self.n)

    def block_elements(self, block_id: int) -> list[RingElement]:
        ctx, n = self.ctx, self.n
        b = self.block(block_id)
        if isinstance(b, Triple):
            e = ctx.teich(b.exponent)
            return [e, ctx.scalar_mul(2, e), ctx.scalar_mul(3, e)]
        logs = self._seed_logs[b.seed]
        out = []
        for x, y in logs:
            x, y = int(ctx.shift_logs(x, b.mult)), int(ctx.shift_logs(y, b.mult))
            out.append(ctx.from_logs(None if x == n else x, None if y == n else y))
        return out

    def seed_logs(self) -> np.ndarray:
        """Read-only (P, 6, 2) log pairs of the seed sixtuples at multiplier 0."""
        return self._seed_logs

    def __repr__(self):
        return (
            f"RingPartition(delta={self.delta}, triples={len(self.triples)}, "
            f"sixtuples={self.num_sixtuples})"
        )


def assemble_partition(ctx: RingContext, with_locator: bool = True) -> RingPartition:
    """Build the full partition for the context's delta."""
    table = build_cosets(ctx.delta)
    matching = build_matching(ctx, table)
    seeds: list[SeedPair] = []
    for s in table.sizes():
        if s % 3 != 0:
            seeds.extend(seeds_for_size_nondiv3(ctx, table, matching, s))
        else:
            for rep in matching.class_reps(table.by_size[s]):
                seeds.extend(seeds_for_class_div3(ctx, table, matching, rep))
    expected = (2**ctx.delta - 2) // 6
    if len(seeds) != expected:
        raise ConstructionError(f"{len(seeds)} seeds, expected {expected}")
    claimed: list[int] = []
    for seed in seeds:
        claimed.extend(seed_j_values(ctx, seed))
    if sorted(claimed) != list(range(1, ctx.n)):
        raise ConstructionError("seed j-values do not tile 1..2^delta-2")
    return RingPartition(ctx, seeds, with_locator=with_locator)


# ---------------------------------------------------------------------------
# on-disk format


def partition_to_dict(partition: RingPartition, include_blocks: bool = False) -> dict:
    ctx = partition.ctx
    doc = {
        "delta": partition.delta,
        "poly": list(ctx.poly.coeffs),
        "triples": list(partition.triples),
        "seeds": [
            {
                "A": list(seed.A.coeffs),
                "B": list(seed.B.coeffs),
                "origin": {**asdict(seed.origin), "cosets": list(seed.origin.cosets)},
            }
            for seed in partition.seeds
        ],
    }
    if include_blocks:
        doc["blocks"] = [
            [list(e.coeffs) for e in partition.block_elements(b)]
            for b in range(partition.num_blocks)
        ]
    return doc


def save_partition(partition: RingPartition, path, include_blocks: bool = False):
    doc = partition_to_dict(partition, include_blocks=include_blocks)
    Path(path).write_text(_render_json(doc), encoding="utf-8")


def _render_json(doc: dict) -> str:
    # geometry-heavy lists stay on one line each; top-level keys get their own
    out = ["{"]
    out.append(f'  "delta": {doc["delta"]},')
    out.append(f'  "poly": {json.dumps(doc["poly"])},')
    out.append(f'  "triples": {json.dumps(doc["triples"])},')
    seed_lines = ",\n".join(
        "    " + json.dumps(s, separators=(", ", ": ")) for s in doc["seeds"]
    )
    tail = "," if "blocks" in doc else ""
    out.append(f'  "seeds": [\n{seed_lines}\n  ]{tail}')
    if "blocks" in doc:
        block_lines = ",\n".join(
            "    " + json.dumps(b, separators=(",", ":")) for b in doc["blocks"]
        )
        out.append(f'  "blocks": [\n{block_lines}\n  ]')
    out.append("}")
    return "\n".join(out) + "\n"


def load_partition(path, ctx: RingContext | None = None) -> RingPartition:
    """Load a partition file; rebuilds the context from the stored polynomial.

    No construction invariants are re-derived here: a tampered file loads fine
    and is caught by the verifier.
    """
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    delta = doc["delta"]
    poly = BasicPoly(delta=delta, coeffs=tuple(int(c) for c in doc["poly"]))
    if ctx is None:
        ctx = RingContext(poly)
    elif tuple(ctx.poly.coeffs) != poly.coeffs:
        raise ValueError("partition file was built for a different polynomial")
    seeds = []
    for rec in doc["seeds"]:
        origin = SeedOrigin(
            size=rec["origin"]["size"],
            route=rec["origin"]["route"],
            cosets=tuple(rec["origin"]["cosets"]),
            shift=rec["origin"]["shift"],
            level=rec["origin"]["level"],
        )
        seeds.append(
            SeedPair(A=ctx.element(rec["A"]), B=ctx.element(rec["B"]), origin=origin)
        )
    return RingPartition(ctx, seeds, triples=list(doc["triples"]), with_locator=False)
