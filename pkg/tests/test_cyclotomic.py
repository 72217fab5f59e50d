"""Coset table, negation matching, and the divisibility census."""

import pytest

from doobcodes.cyclotomic import (
    build_cosets,
    build_matching,
    check_prop1,
    coset_of,
    neg_partner,
    size_census,
)


def brute_cosets(delta: int) -> set[tuple[int, ...]]:
    n = (1 << delta) - 1
    return {tuple(sorted({j * (1 << k) % n for k in range(delta)})) for j in range(n)}


@pytest.mark.parametrize("delta", [3, 5, 7, 9, 11, 13])
def test_cosets_match_brute_force(delta):
    table = build_cosets(delta)
    assert set(table.cosets.values()) == brute_cosets(delta)
    n = table.modulus
    covered = [r for coset in table.cosets.values() for r in coset]
    assert sorted(covered) == list(range(n))
    for cid, coset in table.cosets.items():
        assert cid == min(coset)
        if cid != 0:
            assert delta % len(coset) == 0
    assert sum(len(table.coset(i)) for i in table.ids()) == n - 1


def test_known_coset_structures():
    t3 = build_cosets(3)
    assert t3.cosets == {0: (0,), 1: (1, 2, 4), 3: (3, 5, 6)}
    assert t3.by_size == {3: [1, 3]}
    t5 = build_cosets(5)
    assert len(t5.by_size[5]) == 6 and t5.sizes() == [5]
    t9 = build_cosets(9)
    assert t9.sizes() == [3, 9]
    assert len(t9.by_size[3]) == 2
    assert t9.by_size[3] == [73, 219]  # multiples of 511/7


def test_build_cosets_rejects_bad_delta():
    with pytest.raises(ValueError):
        build_cosets(4)
    with pytest.raises(ValueError):
        build_cosets(1)


def test_coset_of_helper():
    assert coset_of(7, 3) == (3, 5, 6)
    assert coset_of(7, 6) == (3, 5, 6)


def test_neg_partner_delta3(ctx_for):
    ctx = ctx_for(3)
    table = build_cosets(3)
    assert neg_partner(ctx, table, 1) == 3  # 1 + xbar = xbar^3
    assert neg_partner(ctx, table, 3) == 1
    with pytest.raises(ValueError):
        neg_partner(ctx, table, 0)


@pytest.mark.parametrize("delta", [3, 5, 7, 9])
def test_matching_invariants(ctx_for, delta):
    ctx = ctx_for(delta)
    table = build_cosets(delta)
    matching = build_matching(ctx, table)  # validates involution/fpf/size inside
    for cid in table.ids():
        partner = matching.partner[cid]
        assert partner != cid
        assert matching.partner[partner] == cid
        assert len(table.coset(partner)) == len(table.coset(cid))
        # representative independence, re-derived per element
        for j in table.coset(cid):
            u = ctx.field_pow(j) ^ 1
            assert table.id_of(ctx.field_log(u)) == partner


def test_class_reps(ctx_for):
    table = build_cosets(5)
    matching = build_matching(ctx_for(5), table)
    reps = matching.class_reps(table.by_size[5])
    assert len(reps) == 3
    for r in reps:
        assert r < matching.partner[r]


@pytest.mark.parametrize("delta", [3, 5, 7, 9, 11, 13])
def test_size_census_matches_tables(delta):
    table = build_cosets(delta)
    assert size_census(delta) == {s: len(ids) for s, ids in table.by_size.items()}


def test_check_prop1_small():
    rep = check_prop1(3)
    assert rep["ok"] and rep["rows"] == [(3, 2)]
    rep5 = check_prop1(build_cosets(5))
    assert rep5["ok"] and rep5["rows"] == [(5, 6)]
    rep9 = check_prop1(9)
    assert rep9["ok"] and dict(rep9["rows"]) == {3: 2, 9: 56}


@pytest.mark.parametrize("delta", list(range(3, 24, 2)))
def test_check_prop1_divisibility_up_to_23(delta):
    rep = check_prop1(delta)
    assert rep["ok"], rep["violations"]
    for s, ns in rep["rows"]:
        if s > 2 and ns > 0:
            assert (ns * s) % 3 == 0


def test_census_counts_are_consistent():
    # sizes weighted by counts account for every nonzero residue
    for delta in (3, 5, 7, 9, 11, 13, 15, 17):
        census = size_census(delta)
        assert sum(s * ns for s, ns in census.items()) == (1 << delta) - 2
