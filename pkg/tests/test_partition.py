"""Seed construction, partition assembly, and the on-disk format."""

import json
from pathlib import Path

import pytest

from doobcodes.cyclotomic import build_cosets, build_matching, coset_of
from doobcodes.partition import (
    ConstructionError,
    RingPartition,
    Sixtuple,
    Triple,
    assemble_partition,
    load_partition,
    partition_to_dict,
    save_partition,
    seed_j_values,
    seeds_for_class_div3,
    seeds_for_size_nondiv3,
    solve_pair,
)

GOLDEN = Path(__file__).parent / "golden"


def test_delta3_seed_frozen_values(ctx_for, partition_for):
    # worked out by hand from the construction: A = 1+2xi, B = xi^2+2xi^4,
    # A+B = xi^6+2xi^4, with the gamma-shifted trace case
    ctx = ctx_for(3)
    part = partition_for(3)
    assert len(part.seeds) == 1
    seed = part.seeds[0]
    assert seed.A.coeffs == (1, 2, 0)
    assert seed.B.coeffs == (0, 2, 3)
    assert ctx.add(seed.A, seed.B).coeffs == (1, 0, 3)
    assert seed.origin.route == "power_chain"
    assert seed.origin.shift == "c"
    assert seed_j_values(ctx, seed) == (1, 3, 2, 6, 5, 4)


@pytest.mark.parametrize(
    "delta,triples,sixtuples",
    [(3, 7, 7), (5, 31, 155), (7, 127, 2667), (9, 511, 43435)],
)
def test_block_counts(partition_for, delta, triples, sixtuples):
    part = partition_for(delta)
    assert len(part.triples) == triples
    assert part.num_sixtuples == sixtuples
    assert len(part.seeds) == (2**delta - 2) // 6


@pytest.mark.parametrize("delta", [3, 5, 7, 9])
def test_seed_j_values_tile_all_residues(ctx_for, partition_for, delta):
    ctx = ctx_for(delta)
    part = partition_for(delta)
    claimed = []
    for seed in part.seeds:
        claimed.extend(seed_j_values(ctx, seed))
    assert sorted(claimed) == list(range(1, ctx.n))


@pytest.mark.parametrize("delta", [3, 5, 7])
def test_locator_total_and_consistent(ctx_for, partition_for, delta):
    ctx = ctx_for(delta)
    part = partition_for(delta)
    seen = {}
    for bid in range(part.num_blocks):
        els = part.block_elements(bid)
        assert len(els) == len(set(els))
        for role, e in enumerate(els):
            got_bid, got_role = part.locate(e)
            assert got_bid == bid
            if bid < len(part.triples):
                assert got_role == role + 1  # scalar 1, 2, 3
            else:
                assert got_role == role
            assert e not in seen
            seen[e] = bid
    assert len(seen) == 4**delta - 1


def test_block_kinds(partition_for):
    part = partition_for(3)
    assert part.block(0) == Triple(exponent=0)
    assert part.block(6) == Triple(exponent=6)
    assert part.block(7) == Sixtuple(seed=0, mult=0)
    assert part.block(13) == Sixtuple(seed=0, mult=6)
    ctx = part.ctx
    assert part.block_elements(0) == [ctx.one, ctx.element([2, 0, 0]), ctx.element([3, 0, 0])]


def test_solve_pair_postconditions_delta5(ctx_for):
    ctx = ctx_for(5)
    table = build_cosets(5)
    matching = build_matching(ctx, table)
    reps = matching.class_reps(table.by_size[5])
    jA, jB, jC = reps
    seed = solve_pair(ctx, jA, jB, jC)
    jv = seed_j_values(ctx, seed)
    assert jv[0] == jA
    pmB = set(coset_of(31, jB)) | set(table.coset(matching.partner[jB]))
    pmC = set(coset_of(31, jC)) | set(table.coset(matching.partner[jC]))
    assert jv[2] in pmB
    assert jv[4] in pmC


def test_seeds_nondiv3_tiling_delta7(ctx_for):
    ctx = ctx_for(7)
    table = build_cosets(7)
    matching = build_matching(ctx, table)
    seeds = seeds_for_size_nondiv3(ctx, table, matching, 7)
    assert len(seeds) == 21  # 18 cosets of size 7 -> 3 base pairs * 7 levels
    claimed = []
    for s in seeds:
        jv = seed_j_values(ctx, s)
        assert len(set(jv)) == 6
        claimed.extend(jv)
    assert sorted(claimed) == list(range(1, 127))


def test_seeds_nondiv3_rejects_wrong_size(ctx_for):
    ctx = ctx_for(9)
    table = build_cosets(9)
    matching = build_matching(ctx, table)
    with pytest.raises(ValueError):
        seeds_for_size_nondiv3(ctx, table, matching, 9)  # divisible by 3
    rep = matching.class_reps(table.by_size[9])[0]
    with pytest.raises(ValueError):
        seeds_for_class_div3(ctx, table, matching, matching.partner[rep])


def test_seeds_div3_chain_relation_delta9(ctx_for):
    # j(B) = 2^d j(A) and j(A+B) or j(-A-B) = 2^2d j(A), preserved by Frobenius
    ctx = ctx_for(9)
    table = build_cosets(9)
    matching = build_matching(ctx, table)
    n = ctx.n
    for rep in matching.class_reps(table.by_size[9]):
        d = 3
        seeds = seeds_for_class_div3(ctx, table, matching, rep)
        assert len(seeds) == d
        for seed in seeds:
            jv = seed_j_values(ctx, seed)
            jA, jB = jv[0], jv[2]
            assert jB == jA * pow(2, d, n) % n
            target = jA * pow(2, 2 * d, n) % n
            assert target in (jv[4], jv[5])


def test_seeds_div3_delta3_single_class(ctx_for):
    ctx = ctx_for(3)
    table = build_cosets(3)
    matching = build_matching(ctx, table)
    seeds = seeds_for_class_div3(ctx, table, matching, 1)
    assert len(seeds) == 1
    assert sorted(seed_j_values(ctx, seeds[0])) == [1, 2, 3, 4, 5, 6]


def test_assemble_partition_seed_count_formula(partition_for):
    for delta in (3, 5, 7, 9):
        part = partition_for(delta)
        bysize = {}
        for seed in part.seeds:
            bysize.setdefault(seed.origin.size, []).append(seed)
        table = build_cosets(delta)
        for s, seeds in bysize.items():
            assert len(seeds) == len(table.by_size[s]) * s // 6


# ---------------------------------------------------------------------------
# file format


def test_save_load_round_trip(tmp_path, ctx_for, partition_for):
    part = partition_for(5)
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    save_partition(part, p1)
    loaded = load_partition(p1)
    save_partition(loaded, p2)
    assert p1.read_text() == p2.read_text()
    assert [s.A for s in loaded.seeds] == [s.A for s in part.seeds]
    assert [s.origin for s in loaded.seeds] == [s.origin for s in part.seeds]
    assert loaded.triples == part.triples


def test_golden_partition_files(partition_for):
    for delta in (3, 5):
        doc = partition_to_dict(partition_for(delta))
        golden = json.loads((GOLDEN / f"partition_delta{delta}.json").read_text())
        assert doc == golden


def test_golden_partition_bytes(tmp_path, partition_for):
    # bit-for-bit reproducibility of the rendered file
    for delta in (3, 5):
        out = tmp_path / "p.json"
        save_partition(partition_for(delta), out)
        assert out.read_text() == (GOLDEN / f"partition_delta{delta}.json").read_text()


def test_key_order_and_blocks_field(tmp_path, partition_for):
    out = tmp_path / "p.json"
    save_partition(partition_for(3), out, include_blocks=True)
    doc = json.loads(out.read_text())
    assert list(doc) == ["delta", "poly", "triples", "seeds", "blocks"]
    assert len(doc["blocks"]) == 14
    assert doc["blocks"][0] == [[1, 0, 0], [2, 0, 0], [3, 0, 0]]
    for b in doc["blocks"][7:]:
        assert len(b) == 6


def test_load_rejects_mismatched_context(tmp_path, ctx_for, partition_for):
    out = tmp_path / "p.json"
    save_partition(partition_for(3), out)
    with pytest.raises(ValueError):
        load_partition(out, ctx=ctx_for(5))


def test_loaded_partition_supports_locator(tmp_path, partition_for):
    out = tmp_path / "p.json"
    save_partition(partition_for(3), out)
    loaded = load_partition(out)
    assert not loaded.has_locator
    loaded.build_locator()
    ctx = loaded.ctx
    bid, role = loaded.locate(ctx.element([1, 2, 0]))
    assert bid == 7 and role == 0


def test_corrupt_partition_fails_locator_build(tmp_path, partition_for):
    out = tmp_path / "p.json"
    save_partition(partition_for(3), out)
    doc = json.loads(out.read_text())
    doc["seeds"][0]["B"] = [1, 1, 1]
    out.write_text(json.dumps(doc))
    loaded = load_partition(out)
    with pytest.raises(ConstructionError):
        loaded.build_locator()
