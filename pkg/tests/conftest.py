import pytest

from doobcodes.doob import CheckMatrix, build_check_matrix
from doobcodes.galois_ring import RingContext, build_context
from doobcodes.partition import RingPartition, assemble_partition

_ctx_cache: dict[int, RingContext] = {}
_part_cache: dict[int, RingPartition] = {}
_code_cache: dict[int, CheckMatrix] = {}


@pytest.fixture
def ctx_for():
    def get(delta: int) -> RingContext:
        if delta not in _ctx_cache:
            _ctx_cache[delta] = build_context(delta)
        return _ctx_cache[delta]

    return get


@pytest.fixture
def partition_for(ctx_for):
    def get(delta: int) -> RingPartition:
        if delta not in _part_cache:
            _part_cache[delta] = assemble_partition(
                ctx_for(delta), with_locator=delta <= 11
            )
        return _part_cache[delta]

    return get


@pytest.fixture
def code_for(partition_for):
    def get(delta: int) -> CheckMatrix:
        if delta not in _code_cache:
            _code_cache[delta] = build_check_matrix(partition_for(delta))
        return _code_cache[delta]

    return get
