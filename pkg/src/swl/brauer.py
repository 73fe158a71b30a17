"""Brauer-character oracle for the Grothendieck group of GL2(F_q), q = p^f.

This is an independent cross-check of ``groth.reduce``: it never applies the
rewriting relation.  Semisimple classes are described by the exponents (a, b)
of their eigenvalues relative to a generator g of F_{q^2}^x, so F_q^x is the
subgroup of multiples of q+1.  Brauer characters take values in roots of unity
of order N = q^2 - 1; we lift them to an auxiliary prime ell = 1 mod N where
all arithmetic is exact.  For an element with eigenvalues g^a, g^b

    chi(det^e Sym^{n_0}_{[0]} ... Sym^{n_{f-1}}_{[f-1]}) = z^{(a+b)e} prod_i H(n_i, a p^i, b p^i),
    H(n, x, y) = (z^{x(n+1)} - z^{y(n+1)}) / (z^x - z^y),

which is also the right value for negative n under the usual conventions.
Characters are split by central character; each block is a small square
system that we invert once and cache.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod

from sympy import factorint, isprime

from .arith import PlaceStructure
from .groth import SymbolicClass, VirtualClass
from .weights import SerreWeight

DEFAULT_CAP = 10 ** 4
_MIN_AUX = 2 ** 62
_LIFT_BOUND = 2 ** 40


class OracleCapExceeded(ValueError):
    pass


@lru_cache(maxsize=None)
def auxiliary_prime(N: int) -> tuple[int, int]:
    """Smallest prime ell = 1 mod N above 2^62, with an element of exact order N."""
    k = -(-_MIN_AUX // N)
    while not isprime(k * N + 1):
        k += 1
    ell = k * N + 1
    primes = list(factorint(N))
    rng = random.Random(N)
    while True:
        z = pow(rng.randrange(2, ell - 1), (ell - 1) // N, ell)
        if all(pow(z, N // r, ell) != 1 for r in primes):
            return ell, z


@dataclass
class _Block:
    rows: list[tuple[int, int]]
    cols: list[tuple[tuple[int, ...], int]]
    inverse: list[list[int]]
    all_rows: list[tuple[int, int]]


class LocalOracle:
    """Exact Brauer-character decomposition for a single GL2(F_{p^f})."""

    def __init__(self, p: int, f: int, cap: int = DEFAULT_CAP):
        if p ** (2 * f) > cap:
            raise OracleCapExceeded(f"p^(2f) = {p ** (2 * f)} exceeds the oracle cap {cap}")
        self.p, self.f = p, f
        self.q = q = p ** f
        self.N = N = q * q - 1
        self.ell, z = auxiliary_prime(N)
        self.zpow = [1] * N
        for i in range(1, N):
            self.zpow[i] = self.zpow[i - 1] * z % self.ell
        self.classes = self._classes()
        irr = [(tuple(x - 2 for x in b), D) for b in product(range(2, p + 2), repeat=f) for D in range(q - 1)]
        if len(self.classes) != q * (q - 1) or len(irr) != q * (q - 1):
            raise AssertionError("class count does not match the number of irreducibles")
        self.irreducibles = irr
        self._blocks: dict[int, _Block] = {}

    def _classes(self) -> list[tuple[int, int]]:
        q, N = self.q, self.N
        out = [((q + 1) * i, (q + 1) * i) for i in range(q - 1)]
        out += [((q + 1) * i, (q + 1) * j) for i in range(q - 1) for j in range(i + 1, q - 1)]
        seen = set()
        for a in range(N):
            if a % (q + 1) == 0 or a in seen:
                continue
            b = a * q % N
            seen.update((a, b))
            out.append((a, b))
        return out

    def central(self, n: tuple[int, ...], e: int) -> int:
        return (2 * e + sum(x * self.p ** i for i, x in enumerate(n))) % (self.q - 1)

    def _H(self, n: int, x: int, y: int) -> int:
        N, ell, zp = self.N, self.ell, self.zpow
        x %= N
        y %= N
        if x == y:
            return (n + 1) * zp[x * n % N] % ell
        num = zp[x * (n + 1) % N] - zp[y * (n + 1) % N]
        den = zp[x] - zp[y]
        return num * pow(den, -1, ell) % ell

    def character(self, n: tuple[int, ...], e: int, cls: tuple[int, int]) -> int:
        a, b = cls
        val = self.zpow[(a + b) * e % self.N]
        for i, x in enumerate(n):
            val = val * self._H(x, a * self.p ** i, b * self.p ** i) % self.ell
        return val

    def _block(self, c: int) -> _Block:
        if c in self._blocks:
            return self._blocks[c]
        q, ell = self.q, self.ell
        cols = [w for w in self.irreducibles if self.central(*w) == c]
        # classes up to multiplication by the centre, which only rescales characters in the block
        reps, seen = [], set()
        for a, b in self.classes:
            key = min(tuple(sorted(((a + s) % self.N, (b + s) % self.N))) for s in range(0, self.N, q + 1))
            if key in seen:
                continue
            seen.add(key)
            reps.append((a, b))
        mat = [[self.character(n, e, r) for n, e in cols] for r in reps]
        rows = _independent_rows(mat, len(cols), ell)
        if rows is None:
            raise ArithmeticError("singular Brauer character matrix")
        square = [mat[i] for i in rows]
        block = _Block([reps[i] for i in rows], cols, _invert(square, ell), reps)
        self._blocks[c] = block
        return block

    def decompose(self, n: tuple[int, ...], e: int) -> dict[tuple[tuple[int, ...], int], int]:
        """det^e Sym^n -> {(degrees, D): multiplicity}."""
        e %= self.q - 1
        block = self._block(self.central(n, e))
        ell = self.ell
        vec = [self.character(n, e, r) for r in block.rows]
        out = {}
        for col, row in zip(block.cols, block.inverse):
            m = sum(a * v for a, v in zip(row, vec)) % ell
            if m > ell // 2:
                m -= ell
            if abs(m) > _LIFT_BOUND:
                raise ArithmeticError("multiplicity outside the liftable range")
            if m:
                out[col] = m
        # the solution must reproduce the character on every class orbit
        for r in block.all_rows:
            lhs = self.character(n, e, r)
            rhs = sum(m * self.character(cn, ce, r) for (cn, ce), m in out.items()) % ell
            if lhs != rhs:
                raise ArithmeticError("character is not in the span of its central block")
        return out


def _independent_rows(mat, ncols, ell):
    rows = [list(r) for r in mat]
    chosen = []
    basis: list[tuple[int, list[int]]] = []
    for idx, r in enumerate(rows):
        v = r[:]
        for piv, bv in basis:
            if v[piv]:
                t = v[piv]
                v = [(x - t * y) % ell for x, y in zip(v, bv)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, ell)
        v = [x * inv % ell for x in v]
        basis = [(pj, [(x - bj[piv] * y) % ell for x, y in zip(bj, v)]) for pj, bj in basis]
        basis.append((piv, v))
        chosen.append(idx)
        if len(chosen) == ncols:
            return chosen
    return None


def _invert(m, ell):
    n = len(m)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular Brauer character matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, ell)
        a[col] = [x * inv % ell for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                t = a[r][col]
                a[r] = [(x - t * y) % ell for x, y in zip(a[r], a[col])]
    # inverse maps character values (rows) to multiplicities (cols)
    inv_m = [row[n:] for row in a]
    return inv_m


@lru_cache(maxsize=32)
def local_oracle(p: int, f: int, cap: int = DEFAULT_CAP) -> LocalOracle:
    return LocalOracle(p, f, cap)


def brauer_decompose(s: SymbolicClass, cap: int = DEFAULT_CAP) -> VirtualClass:
    """Decompose a symbolic class by solving for its Brauer character."""
    st: PlaceStructure = s.structure
    oracles = [local_oracle(st.p, f, cap) for f in st.degrees]
    acc: dict[SerreWeight, int] = defaultdict(int)
    for sym, coef in s.terms.items():
        local = [oracles[v].decompose(sym.n[v], sym.e[v]) for v in range(st.num_places)]
        for combo in product(*(d.items() for d in local)):
            b = tuple(tuple(x + 2 for x in deg) for (deg, _), _ in combo)
            D = tuple(d for (_, d), _ in combo)
            acc[SerreWeight(b, D)] += coef * prod(m for _, m in combo)
    return VirtualClass(st, acc)
