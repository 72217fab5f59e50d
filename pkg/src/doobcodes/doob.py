"""Doob-graph metric, check matrix, syndrome decoding and coordinate symmetry.

The Doob graph D(m, n) is the Cartesian product of m Shrikhande graphs and n
copies of K4; its vertices are Z4 vectors of length L = 2m + n whose first 2m
entries pair up into Shrikhande coordinates.  The check matrix built from a
ring partition has one column pair (xi^t A_p, xi^t B_p) per sixtuple and the
Teichmuller column xi^i per triple, which makes the code's syndrome land in
GR(4^delta) and every weight-1 error pattern recoverable from the partition
block of its syndrome.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .galois_ring import RingContext, RingElement
from .partition import ROLE_NAMES, RingPartition, Sixtuple, Triple

# Connecting set of the Shrikhande graph as a Cayley graph on Z4 x Z4.
SH_CONNECTING = ((0, 1), (3, 0), (3, 3), (0, 3), (1, 0), (1, 1))

# Distance within one Shrikhande coordinate as a function of the difference.
SH_DIST = np.full((4, 4), 2, dtype=np.int8)
SH_DIST[0, 0] = 0
for _d in SH_CONNECTING:
    SH_DIST[_d] = 1

# Correction subtracted on a column pair, indexed like ROLE_NAMES.
ROLE_PATTERNS = ((1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3))


@dataclass(frozen=True)
class DoobParams:
    delta: int
    m: int  # Shrikhande coordinates (column pairs)
    n: int  # K4 coordinates
    length: int  # Z4 length, 2m + n

    @property
    def ball_size(self) -> int:
        return 1 + 6 * self.m + 3 * self.n


def params_for_delta(delta: int) -> DoobParams:
    n = (1 << delta) - 1
    m = n * (n - 1) // 6
    p = DoobParams(delta=delta, m=m, n=n, length=2 * m + n)
    assert p.ball_size == 4**delta  # radius-1 ball matches the syndrome space
    return p


class CheckMatrix:
    """delta x L check matrix over Z4 with the quasi-cyclic column layout.

    Columns 2k, 2k+1 for k = p*n + t hold (xi^t A_p, xi^t B_p); the last n
    columns hold xi^0 ... xi^(n-1).  Column k is also kept as a Teichmuller
    log pair in col_logs[k].
    """

    def __init__(self, partition: RingPartition):
        ctx = partition.ctx
        self.partition = partition
        self.ctx = ctx
        self.params = params_for_delta(ctx.delta)
        if len(partition.seeds) * ctx.n != self.params.m:
            raise ValueError("partition does not have the expected sixtuple count")
        n, m = self.params.n, self.params.m
        seed_logs = partition.seed_logs()
        t = np.arange(n, dtype=np.int64)
        col_logs = np.empty((self.params.length, 2), dtype=np.int64)
        for p in range(len(partition.seeds)):
            base = 2 * p * n
            for slot, role in ((0, 0), (1, 2)):  # roles "A" and "B"
                xs = (seed_logs[p, role, 0] + t) % n
                ys = (seed_logs[p, role, 1] + t) % n
                col_logs[base + 2 * t + slot, 0] = xs
                col_logs[base + 2 * t + slot, 1] = ys
        col_logs[2 * m :, 0] = t
        col_logs[2 * m :, 1] = n  # Teichmuller columns have no 2T part
        self.col_logs = col_logs
        pow_ext = np.vstack(
            [ctx.pow_coeffs, np.zeros((1, ctx.delta), dtype=np.uint8)]
        )
        cols = (pow_ext[col_logs[:, 0]] + 2 * pow_ext[col_logs[:, 1]].astype(np.int16)) % 4
        self.matrix = np.ascontiguousarray(cols.T.astype(np.uint8))
        self._mat64_cache: np.ndarray | None = None

    @property
    def _mat64(self) -> np.ndarray:
        if self._mat64_cache is None:
            self._mat64_cache = self.matrix.astype(np.int64)
        return self._mat64_cache

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def column(self, k: int) -> RingElement:
        x, y = self.col_logs[k]
        n = self.ctx.n
        return self.ctx.from_logs(
            None if x == n else int(x), None if y == n else int(y)
        )

    def __repr__(self):
        p = self.params
        return f"CheckMatrix(delta={p.delta}, D({p.m},{p.n}), {p.delta}x{p.length})"


def build_check_matrix(partition: RingPartition) -> CheckMatrix:
    if not partition.has_locator:
        partition.build_locator()
    return CheckMatrix(partition)


def _as_vertex(code_or_params, v) -> np.ndarray:
    params = code_or_params.params if isinstance(code_or_params, CheckMatrix) else code_or_params
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (params.length,):
        raise ValueError(f"vertex must have length {params.length}")
    if ((v < 0) | (v > 3)).any():
        raise ValueError("vertex entries must be in 0..3")
    return v


def syndrome(code: CheckMatrix, v) -> RingElement:
    v = _as_vertex(code, v)
    coeffs = code._mat64 @ v % 4
    return RingElement(tuple(int(c) for c in coeffs))


def syndromes_of_rows(code: CheckMatrix, vs: np.ndarray) -> np.ndarray:
    """Syndrome coefficient rows for a batch of vertices (N, L) -> (N, delta)."""
    return vs.astype(np.int64) @ code._mat64.T % 4


def decode(code: CheckMatrix, v) -> np.ndarray:
    """The unique codeword at Doob distance <= 1 from v."""
    v = _as_vertex(code, v)
    s = syndrome(code, v)
    w = v.astype(np.uint8).copy()
    if not any(s.coeffs):
        return w
    bid, role = code.partition.locate(s)
    block = code.partition.block(bid)
    if isinstance(block, Triple):
        k = 2 * code.params.m + block.exponent
        w[k] = (int(w[k]) - role) % 4
    else:
        base = 2 * (block.seed * code.params.n + block.mult)
        p0, p1 = ROLE_PATTERNS[role]
        w[base] = (int(w[base]) - p0) % 4
        w[base + 1] = (int(w[base + 1]) - p1) % 4
    return w


def doob_distance(params: DoobParams, u, v) -> int:
    u = _as_vertex(params, u)
    v = _as_vertex(params, v)
    d = (u - v) % 4
    sh = d[: 2 * params.m]
    k4 = d[2 * params.m :]
    return int(SH_DIST[sh[0::2], sh[1::2]].sum()) + int((k4 != 0).sum())


def random_vertex(params: DoobParams, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 4, params.length, dtype=np.uint8)


def random_codeword(code: CheckMatrix, rng: np.random.Generator) -> np.ndarray:
    """Uniform codeword: free coordinates random, pivots cancel the syndrome.

    The pivots are the K4 coordinates for exponents 0..delta-1, whose columns
    are the standard basis of the coefficient space.
    """
    params = code.params
    v = random_vertex(params, rng)
    piv = 2 * params.m
    v[piv : piv + params.delta] = 0
    s = syndrome(code, v)
    for i, c in enumerate(s.coeffs):
        v[piv + i] = (-c) % 4
    return v


def weight1_pattern_matrix(params: DoobParams) -> np.ndarray:
    """All 6m + 3n weight-1 error patterns as rows, in a fixed order.

    Shrikhande patterns first (pair-major, SH_CONNECTING order), then K4
    patterns (coordinate-major, values 1, 2, 3).
    """
    count = 6 * params.m + 3 * params.n
    mat = np.zeros((count, params.length), dtype=np.uint8)
    r = 0
    for p in range(params.m):
        for d1, d2 in SH_CONNECTING:
            mat[r, 2 * p] = d1
            mat[r, 2 * p + 1] = d2
            r += 1
    for i in range(params.n):
        for c in (1, 2, 3):
            mat[r, 2 * params.m + i] = c
            r += 1
    return mat


def weight1_coordinates(params: DoobParams) -> np.ndarray:
    """Coordinate tag of each weight-1 pattern row: pair index, or m + K4 index."""
    tags = np.empty(6 * params.m + 3 * params.n, dtype=np.int64)
    tags[: 6 * params.m] = np.repeat(np.arange(params.m), 6)
    tags[6 * params.m :] = params.m + np.repeat(np.arange(params.n), 3)
    return tags


def weight1_syndrome_logs(code: CheckMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Teichmuller log pairs of the syndromes of all weight-1 patterns.

    Row order matches weight1_pattern_matrix.  Computed from the column log
    pairs, not via the matrix product.
    """
    ctx = code.ctx
    m, n = code.params.m, code.params.n
    ax, ay = code.col_logs[0 : 2 * m : 2, 0], code.col_logs[0 : 2 * m : 2, 1]
    bx, by = code.col_logs[1 : 2 * m : 2, 0], code.col_logs[1 : 2 * m : 2, 1]
    sx, sy = ctx.add_logs(ax, ay, bx, by)
    xs = np.empty(6 * m + 3 * n, dtype=np.int64)
    ys = np.empty_like(xs)
    # SH_CONNECTING order: (0,1)->b, (3,0)->-a, (3,3)->-(a+b), (0,3)->-b,
    # (1,0)->a, (1,1)->a+b
    for k, (px, py) in enumerate(
        (
            (bx, by),
            (ax, ctx.neg_ylogs(ax, ay)),
            (sx, ctx.neg_ylogs(sx, sy)),
            (bx, ctx.neg_ylogs(bx, by)),
            (ax, ay),
            (sx, sy),
        )
    ):
        xs[k : 6 * m : 6] = px
        ys[k : 6 * m : 6] = py
    t = np.arange(n, dtype=np.int64)
    base = 6 * m
    for k, (px, py) in enumerate(((t, np.full(n, n)), (np.full(n, n), t), (t, t))):
        xs[base + k : base + 3 * n : 3] = px
        ys[base + k : base + 3 * n : 3] = py
    return xs, ys


# ---------------------------------------------------------------------------
# coordinate permutations


def _column_index(code: CheckMatrix) -> dict[int, int]:
    ctx = code.ctx
    idx = ctx.pair_index(code.col_logs[:, 0], code.col_logs[:, 1])
    return {int(key): k for k, key in enumerate(idx)}


def xi_permutation(code: CheckMatrix) -> np.ndarray:
    """Permutation pi with column(pi[k]) = xi * column(k).

    Exists because the column multiset is closed under multiplication by xi;
    all its cycles have length 2^delta - 1 and it maps codewords to codewords.
    """
    ctx = code.ctx
    index = _column_index(code)
    xs = ctx.shift_logs(code.col_logs[:, 0], 1)
    ys = ctx.shift_logs(code.col_logs[:, 1], 1)
    keys = ctx.pair_index(xs, ys)
    pi = np.empty(code.params.length, dtype=np.int64)
    for k, key in enumerate(keys):
        target = index.get(int(key))
        if target is None:
            raise ValueError(f"column set not closed under xi at column {k}")
        pi[k] = target
    return pi


def frobenius_permutation(code: CheckMatrix) -> np.ndarray | None:
    """Permutation induced by the ring automorphism, or None if the column
    multiset is not closed under it (possible when 3 divides delta)."""
    ctx = code.ctx
    index = _column_index(code)
    xs = ctx.frob_logs(code.col_logs[:, 0])
    ys = ctx.frob_logs(code.col_logs[:, 1])
    keys = ctx.pair_index(xs, ys)
    pi = np.empty(code.params.length, dtype=np.int64)
    for k, key in enumerate(keys):
        target = index.get(int(key))
        if target is None:
            return None
        pi[k] = target
    return pi


def apply_permutation(pi: np.ndarray, v) -> np.ndarray:
    """Move the value at coordinate k to coordinate pi[k]."""
    v = np.asarray(v)
    w = np.empty_like(v)
    w[pi] = v
    return w


def permutation_cycles(pi: np.ndarray) -> list[list[int]]:
    seen = np.zeros(len(pi), dtype=bool)
    cycles = []
    for start in range(len(pi)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        k = int(pi[start])
        while k != start:
            cyc.append(k)
            seen[k] = True
            k = int(pi[k])
        cycles.append(cyc)
    return cycles


def cycles_to_str(pi: np.ndarray) -> str:
    """One-line cycle notation, fixed points omitted."""
    return "".join(
        "(" + " ".join(map(str, c)) + ")" for c in permutation_cycles(pi) if len(c) > 1
    )


# ---------------------------------------------------------------------------
# text formats


def save_matrix(code: CheckMatrix, path):
    lines = [f"{code.params.delta} {code.params.length}"]
    for row in code.matrix:
        lines.append(" ".join(str(int(c)) for c in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_matrix(path) -> tuple[int, np.ndarray]:
    text = Path(path).read_text(encoding="utf-8").strip().split("\n")
    delta, length = map(int, text[0].split())
    if len(text) != delta + 1:
        raise ValueError(f"expected {delta} matrix rows, found {len(text) - 1}")
    rows = [list(map(int, line.split())) for line in text[1:]]
    mat = np.array(rows, dtype=np.uint8)
    if mat.shape != (delta, length):
        raise ValueError(f"matrix body {mat.shape} does not match header")
    return delta, mat


def vertex_from_string(s: str, params: DoobParams) -> np.ndarray:
    if len(s) != params.length or not set(s) <= set("0123"):
        raise ValueError(
            f"vertex must be {params.length} digits 0-3, got {len(s)} characters"
        )
    return np.frombuffer(s.encode(), dtype=np.uint8) - ord("0")


def vertex_to_string(v) -> str:
    return "".join(str(int(c)) for c in v)
