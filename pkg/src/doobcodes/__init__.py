"""Quasi-cyclic additive 1-perfect codes in Doob graphs.

For every odd delta >= 3 this package partitions the nonzero elements of the
Galois ring GR(4^delta) into triples {a, 2a, 3a} and sixtuples
{+-a, +-b, +-(a+b)} invariant under multiplication by the Teichmuller unit
xi, builds the resulting check matrix of a 1-perfect code in the Doob graph
D((2^delta-1)(2^delta-2)/6, 2^delta-1), and verifies and decodes it.
"""

from .cyclotomic import (
    CosetMatching,
    CosetTable,
    build_cosets,
    build_matching,
    check_prop1,
    neg_partner,
    size_census,
)
from .doob import (
    CheckMatrix,
    DoobParams,
    build_check_matrix,
    decode,
    doob_distance,
    frobenius_permutation,
    load_matrix,
    params_for_delta,
    random_codeword,
    save_matrix,
    syndrome,
    xi_permutation,
)
from .galois_ring import (
    BasicPoly,
    RingContext,
    RingElement,
    build_context,
    lift_basic_primitive,
)
from .partition import (
    RingPartition,
    SeedPair,
    assemble_partition,
    load_partition,
    save_partition,
    seeds_for_class_div3,
    seeds_for_size_nondiv3,
    solve_pair,
)
from .verifier import VerifyReport, verify_all, weight3_census

__version__ = "0.1.0"
