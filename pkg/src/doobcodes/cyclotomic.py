"""2-cyclotomic cosets modulo 2^delta - 1 and the negation matching on them.

The coset of j is its orbit {j, 2j, 4j, ...} under doubling mod 2^delta - 1.
Negation of ring elements induces an involution on the nonzero cosets: the
partner of the coset of j is the coset of log(1 + xibar^j), which is
independent of the chosen representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .galois_ring import RingContext


def coset_of(n: int, j: int) -> tuple[int, ...]:
    """Sorted orbit of j under doubling mod n."""
    j %= n
    orbit = []
    cur = j
    while True:
        orbit.append(cur)
        cur = cur * 2 % n
        if cur == j:
            break
    return tuple(sorted(orbit))


@dataclass
class CosetTable:
    """All 2-cyclotomic cosets mod 2^delta - 1, keyed by minimal element."""

    delta: int
    modulus: int
    cosets: dict[int, tuple[int, ...]]  # id (minimal element) -> sorted coset
    member_of: dict[int, int] = field(repr=False)  # residue -> coset id
    by_size: dict[int, list[int]] = field(repr=False)  # size -> ids, {0} excluded

    def coset(self, coset_id: int) -> tuple[int, ...]:
        return self.cosets[coset_id]

    def id_of(self, residue: int) -> int:
        return self.member_of[residue % self.modulus]

    def size_of(self, residue: int) -> int:
        return len(self.cosets[self.id_of(residue)])

    def ids(self) -> list[int]:
        """Ids of the cosets in Cos (all except {0}), ascending."""
        return [i for i in sorted(self.cosets) if i != 0]

    def sizes(self) -> list[int]:
        return sorted(self.by_size)


def build_cosets(delta: int) -> CosetTable:
    if delta < 3 or delta % 2 == 0:
        raise ValueError("delta must be odd and at least 3")
    n = (1 << delta) - 1
    cosets: dict[int, tuple[int, ...]] = {}
    member_of: dict[int, int] = {}
    by_size: dict[int, list[int]] = {}
    for j in range(n):
        if j in member_of:
            continue
        orbit = coset_of(n, j)
        cosets[j] = orbit
        for r in orbit:
            member_of[r] = j
        if j != 0:
            by_size.setdefault(len(orbit), []).append(j)
    for ids in by_size.values():
        ids.sort()
    return CosetTable(
        delta=delta, modulus=n, cosets=cosets, member_of=member_of, by_size=by_size
    )


@dataclass
class CosetMatching:
    """The negation involution on Cos; partner[id] is the id of the matched coset."""

    partner: dict[int, int]

    def class_rep(self, coset_id: int) -> int:
        """Canonical representative of the +- class: the smaller of the two ids."""
        return min(coset_id, self.partner[coset_id])

    def class_reps(self, ids) -> list[int]:
        return sorted({self.class_rep(i) for i in ids})


def neg_partner(ctx: RingContext, table: CosetTable, coset_id: int) -> int:
    """Id of the coset holding the j-coordinates of negated elements.

    For any j in the coset, the negation of an element with j-coordinate j has
    j-coordinate log(1 + xibar^j); representative independence is rechecked.
    """
    if coset_id == 0:
        raise ValueError("the coset {0} has no negation partner")
    ids = set()
    for j in table.coset(coset_id):
        u = ctx.field_pow(j) ^ 1
        ids.add(table.id_of(ctx.field_log(u)))
    if len(ids) != 1:
        raise ValueError(f"negation partner of coset {coset_id} is not well defined")
    return ids.pop()


def build_matching(ctx: RingContext, table: CosetTable) -> CosetMatching:
    partner = {i: neg_partner(ctx, table, i) for i in table.ids()}
    for a, b in partner.items():
        if b == a:
            raise ValueError(f"coset {a} matched to itself")
        if partner[b] != a:
            raise ValueError(f"matching not an involution at coset {a}")
        if len(table.coset(a)) != len(table.coset(b)):
            raise ValueError(f"matching does not preserve size at coset {a}")
    return CosetMatching(partner=partner)


def size_census(delta: int) -> dict[int, int]:
    """N_s for each coset size s, without building the cosets explicitly.

    Works for any delta (odd or even); only modular arithmetic on residues.
    """
    n = (1 << delta) - 1
    j = np.arange(1, n, dtype=np.int64)
    size = np.zeros(n - 1, dtype=np.int64)
    cur = j.copy()
    for s in range(1, delta + 1):
        cur = cur * 2 % n
        hit = (cur == j) & (size == 0)
        size[hit] = s
    assert (size > 0).all()
    census = {}
    for s in np.unique(size):
        count = int((size == s).sum())
        assert count % s == 0
        census[int(s)] = count // int(s)
    return census


def check_prop1(table_or_delta) -> dict:
    """Check that 3 divides N_s * s for every coset size s > 2.

    Accepts a CosetTable or a bare delta; returns a report dict with the
    per-size table and any violations.
    """
    if isinstance(table_or_delta, CosetTable):
        delta = table_or_delta.delta
        census = {s: len(ids) for s, ids in table_or_delta.by_size.items()}
    else:
        delta = int(table_or_delta)
        census = size_census(delta)
    rows = sorted(census.items())
    violations = [(s, ns) for s, ns in rows if s > 2 and ns > 0 and (ns * s) % 3 != 0]
    return {"delta": delta, "rows": rows, "violations": violations, "ok": not violations}
