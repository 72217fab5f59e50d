"""Exact arithmetic in the Galois ring GR(4^delta) and its residue field.

The ring is Z4[x]/(h(x)) for a basic primitive polynomial h of odd degree
delta.  Elements are coefficient vectors over Z4 in the basis
1, xi, ..., xi^(delta-1), where xi is the class of x.  The Teichmuller set
T = {0, 1, xi, ..., xi^(2^delta-2)} gives every element a unique 2-adic
decomposition A = X + 2Y with X, Y in T, so internally the context works
with pairs of Teichmuller exponents ("log pairs"):

    A  <->  (xlog, ylog),   A = xi^xlog + 2*xi^ylog

with the sentinel value n = 2^delta - 1 standing for the zero Teichmuller
component.  All ring operations then reduce to exponent arithmetic mod n
plus exp/log table lookups in the residue field F_{2^delta}, so the tables
are O(2^delta) rather than O(4^delta).

Field elements are plain ints: bit k is the coefficient of xibar^k, where
xibar is the image of xi mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

# Teichmuller exponents are ints in [0, 2^delta - 2]; None denotes the zero
# element of the Teichmuller set.
TeichExp = Optional[int]

DEFAULT_DELTA_CAP = 13


@dataclass(frozen=True)
class BasicPoly:
    """Monic degree-delta polynomial over Z4, constant term first."""

    delta: int
    coeffs: tuple[int, ...]  # length delta+1, leading coefficient 1


@dataclass(frozen=True)
class RingElement:
    """Element of GR(4^delta) as a tuple of delta coefficients in Z4."""

    coeffs: tuple[int, ...]


# ---------------------------------------------------------------------------
# polynomials over F2 (packed as ints, bit k = coefficient of x^k)


def _f2_polymulmod(a: int, b: int, mod: int, degree: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= mod
    return r


def _f2_is_primitive(f: int, degree: int) -> bool:
    """True iff the class of x has multiplicative order 2^degree - 1 mod f."""
    order = (1 << degree) - 1
    cur = 2  # the polynomial x
    for k in range(1, order + 1):
        if cur == 1:
            return k == order
        cur <<= 1
        if cur >> degree & 1:
            cur ^= f
    return cur == 1


def smallest_primitive_poly(degree: int) -> int:
    """Lexicographically smallest primitive polynomial over F2 (packed bits)."""
    top = 1 << degree
    for f in range(top + 1, 2 * top, 2):  # monic, nonzero constant term
        if _f2_is_primitive(f, degree):
            return f
    raise ValueError(f"no primitive polynomial of degree {degree}")  # unreachable


def lift_basic_primitive(delta: int, cap: int = DEFAULT_DELTA_CAP) -> BasicPoly:
    """Canonical basic primitive polynomial over Z4 of odd degree delta.

    Takes the lexicographically smallest primitive polynomial f over F2 and
    lifts it to Z4 via h(x^2) = -f(x)*f(-x) mod 4, which is the unique monic
    lift whose root has multiplicative order 2^delta - 1.
    """
    if delta % 2 == 0:
        raise ValueError("delta must be odd")
    if delta < 3:
        raise ValueError("delta must be at least 3")
    if delta > cap:
        raise ValueError(
            f"delta={delta} above cap {cap}; pass a larger cap explicitly "
            f"(partition tables at delta={delta} need roughly "
            f"{5 * 4**delta / 2**20:.0f} MiB)"
        )
    f = smallest_primitive_poly(delta)
    fc = [(f >> k) & 1 for k in range(delta + 1)]
    # f(x) * f(-x) over Z4; the product has even-degree terms only.
    prod = [0] * (2 * delta + 1)
    for i, ci in enumerate(fc):
        for j, cj in enumerate(fc):
            sign = 3 if j % 2 else 1
            prod[i + j] = (prod[i + j] + ci * cj * sign) % 4
    assert all(c == 0 for c in prod[1::2])
    h = tuple((-prod[2 * k]) % 4 for k in range(delta + 1))
    assert h[delta] == 1
    return BasicPoly(delta=delta, coeffs=h)


# ---------------------------------------------------------------------------
# ring context


class RingContext:
    """Precomputed structure of GR(4^delta) for a fixed basic primitive poly.

    Immutable after construction; all operations are pure functions of the
    context and their inputs, so a context is safe to share across threads.
    """

    def __init__(self, poly: BasicPoly):
        self.poly = poly
        self.delta = poly.delta
        self.n = (1 << poly.delta) - 1  # order of xi; also the zero sentinel
        self.q = 1 << poly.delta  # size of the residue field
        self._build_field_tables()
        self._build_ring_tables()

    # -- construction -------------------------------------------------------

    def _build_field_tables(self):
        d, n = self.delta, self.n
        fbar = 0
        for k, c in enumerate(self.poly.coeffs):
            fbar |= (c & 1) << k
        self.poly_mod2 = fbar
        fexp = np.zeros(n + 1, dtype=np.int64)  # fexp[n] = 0 is the zero slot
        flog = np.full(self.q, n, dtype=np.int64)
        cur = 1
        for k in range(n):
            fexp[k] = cur
            if flog[cur] != n:
                raise ValueError("polynomial is not primitive mod 2")
            flog[cur] = k
            cur <<= 1
            if cur >> d & 1:
                cur ^= fbar
        if cur != 1:
            raise ValueError("xi mod 2 does not have order 2^delta - 1")
        self.fexp = fexp
        self.flog = flog
        # trace of xibar^k, plus a direct table indexed by field element
        tr = np.zeros(self.q, dtype=np.int8)
        for k in range(n):
            u = int(fexp[k])
            acc = u
            v = u
            for _ in range(d - 1):
                v = self._fmul_int(v, v)
                acc ^= v
            ok = acc in (0, 1)
            if not ok:
                raise ValueError("trace did not land in the prime field")
            tr[u] = acc
        self._trace_table = tr

    def _fmul_int(self, a: int, b: int) -> int:
        # carryless multiply mod poly_mod2 (used only while bootstrapping)
        d = self.delta
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> d & 1:
                a ^= self.poly_mod2
        return r

    def _build_ring_tables(self):
        d, n = self.delta, self.n
        h = self.poly.coeffs
        pow_coeffs = np.zeros((n, d), dtype=np.uint8)
        cur = [0] * d
        cur[0] = 1
        for k in range(n):
            if k > 0 and cur[0] == 1 and not any(cur[1:]):
                raise ValueError(f"xi has order {k} < 2^delta - 1; not basic primitive")
            pow_coeffs[k] = cur
            # multiply by xi: shift up, reduce x^d = -(h_0 + ... + h_{d-1}x^{d-1})
            lead = cur[d - 1]
            cur = [0] + cur[: d - 1]
            if lead:
                for i in range(d):
                    cur[i] = (cur[i] - lead * h[i]) % 4
        if not (cur[0] == 1 and not any(cur[1:])):
            raise ValueError("xi^(2^delta - 1) != 1; not basic primitive")
        self.pow_coeffs = pow_coeffs
        self._half = pow(2, d - 1, n)  # sqrt on T halves the exponent

    # -- element constructors ------------------------------------------------

    @property
    def zero(self) -> RingElement:
        return RingElement((0,) * self.delta)

    @property
    def one(self) -> RingElement:
        return RingElement((1,) + (0,) * (self.delta - 1))

    @property
    def xi(self) -> RingElement:
        return self.teich(1 % self.n)

    def element(self, coeffs: Iterable[int]) -> RingElement:
        c = tuple(int(v) for v in coeffs)
        if len(c) != self.delta or any(v not in (0, 1, 2, 3) for v in c):
            raise ValueError(f"need {self.delta} coefficients in 0..3")
        return RingElement(c)

    def teich(self, exp: TeichExp) -> RingElement:
        """The Teichmuller element xi^exp (None gives 0)."""
        if exp is None:
            return self.zero
        return RingElement(tuple(int(v) for v in self.pow_coeffs[exp % self.n]))

    def teich_log(self, elem: RingElement) -> TeichExp:
        """Inverse of teich() on the Teichmuller set; errors off it."""
        x, y = self.logs(elem)
        if y is not None:
            raise ValueError(f"{elem} is not in the Teichmuller set")
        return x

    # -- log-pair representation ---------------------------------------------

    def logs(self, elem: RingElement) -> tuple[TeichExp, TeichExp]:
        """Teichmuller log pair (xlog, ylog) of A = xi^xlog + 2*xi^ylog."""
        n = self.n
        bits_x = 0
        for k, c in enumerate(elem.coeffs):
            bits_x |= (c & 1) << k
        x = int(self.flog[bits_x])
        xc = self.pow_coeffs[x] if x < n else np.zeros(self.delta, dtype=np.uint8)
        bits_y = 0
        for k, c in enumerate(elem.coeffs):
            diff = (c - int(xc[k])) % 4
            bits_y |= (diff >> 1) << k
        y = int(self.flog[bits_y])
        return (x if x < n else None, y if y < n else None)

    def from_logs(self, x: TeichExp, y: TeichExp) -> RingElement:
        c = [0] * self.delta
        if x is not None:
            for k in range(self.delta):
                c[k] = int(self.pow_coeffs[x % self.n][k])
        if y is not None:
            for k in range(self.delta):
                c[k] = (c[k] + 2 * int(self.pow_coeffs[y % self.n][k])) % 4
        return RingElement(tuple(c))

    # -- ring arithmetic -----------------------------------------------------

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        return RingElement(
            tuple((u + v) % 4 for u, v in zip(a.coeffs, b.coeffs))
        )

    def neg(self, a: RingElement) -> RingElement:
        return RingElement(tuple((-u) % 4 for u in a.coeffs))

    def sub(self, a: RingElement, b: RingElement) -> RingElement:
        return self.add(a, self.neg(b))

    def scalar_mul(self, c: int, a: RingElement) -> RingElement:
        return RingElement(tuple((c * u) % 4 for u in a.coeffs))

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        """(X1+2Y1)(X2+2Y2) = X1X2 + 2(X1Y2 + X2Y1), all on Teichmuller logs."""
        n = self.n
        x1, y1 = self.logs(a)
        x2, y2 = self.logs(b)
        x3 = (x1 + x2) % n if x1 is not None and x2 is not None else None
        ybits = 0
        if x1 is not None and y2 is not None:
            ybits ^= int(self.fexp[(x1 + y2) % n])
        if x2 is not None and y1 is not None:
            ybits ^= int(self.fexp[(x2 + y1) % n])
        y3 = int(self.flog[ybits])
        return self.from_logs(x3, y3 if y3 < n else None)

    def frobenius(self, a: RingElement) -> RingElement:
        """The ring automorphism X + 2Y -> X^2 + 2Y^2."""
        n = self.n
        x, y = self.logs(a)
        return self.from_logs(
            None if x is None else 2 * x % n,
            None if y is None else 2 * y % n,
        )

    def teich_decompose(self, a: RingElement) -> tuple[TeichExp, TeichExp]:
        """Unique (X, Y) in T x T with A = teich(X) + 2*teich(Y)."""
        return self.logs(a)

    def yamada_sum(self, c1: TeichExp, c2: TeichExp) -> tuple[TeichExp, TeichExp]:
        """Decompose teich(c1) + teich(c2) as teich(a) + 2*teich(b) in closed form.

        a = c1 + c2 + 2*sqrt(c1*c2) and b = sqrt(c1*c2), where sqrt is the
        square root within the Teichmuller set.
        """
        if c1 is None:
            return (c2, None)
        if c2 is None:
            return (c1, None)
        n = self.n
        abits = int(self.fexp[c1 % n]) ^ int(self.fexp[c2 % n])
        a = int(self.flog[abits])
        b = (c1 + c2) % n * self._half % n
        return (a if a < n else None, b)

    def teich_sqrt(self, c: TeichExp) -> TeichExp:
        """Unique element of T whose square is teich(c)."""
        if c is None:
            return None
        return c % self.n * self._half % self.n

    # -- residue field -------------------------------------------------------

    def reduce_mod2(self, a: RingElement) -> int:
        bits = 0
        for k, c in enumerate(a.coeffs):
            bits |= (c & 1) << k
        return bits

    def field_add(self, u: int, v: int) -> int:
        return u ^ v

    def field_mul(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        return int(self.fexp[(int(self.flog[u]) + int(self.flog[v])) % self.n])

    def field_inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("0 has no inverse in the residue field")
        return int(self.fexp[-int(self.flog[u]) % self.n])

    def field_log(self, u: int) -> int:
        if u == 0:
            raise ValueError("field_log(0) is undefined")
        return int(self.flog[u])

    def field_pow(self, k: int) -> int:
        return int(self.fexp[k % self.n])

    def field_sqrt(self, u: int) -> int:
        """Square root in F_{2^delta} (squaring is a bijection)."""
        if u == 0:
            return 0
        return int(self.fexp[int(self.flog[u]) * self._half % self.n])

    def trace(self, u: int) -> int:
        """Absolute trace of u over F2."""
        return int(self._trace_table[u])

    def half_trace(self, u: int) -> int:
        """Sum of u^(4^i) for i = 0..(delta-1)/2; solves x^2+x=u when Tr(u)=0."""
        acc = u
        v = u
        for _ in range((self.delta - 1) // 2):
            v = self.field_mul(v, v)
            v = self.field_mul(v, v)
            acc ^= v
        return acc

    def solve_artin_schreier(self, a: int) -> list[int]:
        """All x with x^2 + x = a: empty when Tr(a)=1, else half-trace root first."""
        if self.trace(a) == 1:
            return []
        x0 = self.half_trace(a)
        assert self.field_mul(x0, x0) ^ x0 == a
        return [x0, x0 ^ 1]

    # -- i/j coordinates -----------------------------------------------------

    def ij_coords(self, a: RingElement) -> tuple[int, int]:
        """(i, j) with A = xi^i * (1 + 2*xi^j); defined off T, 2T and 3T."""
        x, y = self.logs(a)
        if x is None or y is None or x == y:
            raise ValueError(f"{a} lies in T, 2T or 3T; no (i, j) coordinates")
        return (x, (y - x) % self.n)

    def from_ij(self, i: int, j: int) -> RingElement:
        n = self.n
        if not (0 <= i < n):
            raise ValueError(f"i={i} out of range [0, {n - 1}]")
        if not (1 <= j < n):
            raise ValueError(f"j={j} out of range [1, {n - 1}]")
        return self.from_logs(i, (i + j) % n)

    # -- vectorized kernels on log arrays -------------------------------------
    #
    # These operate on numpy arrays of Teichmuller exponents where the value
    # n encodes the zero component, matching fexp[n] = 0 and flog[0] = n.

    def pair_index(self, xs, ys):
        """Dense index in [0, 4^delta) of the log pair; zero maps to 4^delta-1."""
        return xs * (self.n + 1) + ys

    def pair_logs(self, idx):
        return idx // (self.n + 1), idx % (self.n + 1)

    def neg_ylogs(self, xs, ys):
        """ylog of -A for A with logs (xs, ys); xlog is unchanged by negation."""
        return self.flog[self.fexp[xs] ^ self.fexp[ys]]

    def frob_logs(self, xs):
        return np.where(xs == self.n, self.n, 2 * xs % self.n)

    def shift_logs(self, xs, t):
        """Logs of xi^t * A componentwise; the zero sentinel is preserved."""
        return np.where(xs == self.n, self.n, (xs + t) % self.n)

    def add_logs(self, x1, y1, x2, y2):
        """Vectorized ring addition on log pairs."""
        n = self.n
        abits = self.fexp[x1] ^ self.fexp[x2]
        a = self.flog[abits]
        b = np.where(
            (x1 == n) | (x2 == n), n, (x1 + x2) % n * self._half % n
        )
        ybits = self.fexp[b] ^ self.fexp[y1] ^ self.fexp[y2]
        return a, self.flog[ybits]

    def mul_logs(self, x1, y1, x2, y2):
        """Vectorized ring multiplication on log pairs."""
        n = self.n
        x3 = np.where((x1 == n) | (x2 == n), n, (x1 + x2) % n)
        t1 = np.where((x1 == n) | (y2 == n), 0, self.fexp[(x1 + y2) % n])
        t2 = np.where((x2 == n) | (y1 == n), 0, self.fexp[(x2 + y1) % n])
        return x3, self.flog[t1 ^ t2]

    def __repr__(self):
        return f"RingContext(delta={self.delta}, poly={list(self.poly.coeffs)})"


def build_context(delta: int, cap: int = DEFAULT_DELTA_CAP) -> RingContext:
    """Context for the canonical basic primitive polynomial of degree delta."""
    return RingContext(lift_basic_primitive(delta, cap=cap))
