"""Grothendieck group of mod p representations of prod_v GL2(F_{p^f_v}).

A *symbol* is an unreduced tensor product det^e (x) (x)_tau Sym^{n_tau}_{[tau]}
with arbitrary integers n_tau.  Negative degrees follow the conventions
[Sym^{-1}] = 0 and [Sym^n] = -[det^{n+1} Sym^{-n-2}] for n < -1.  ``reduce``
rewrites a formal combination of symbols into Serre weights using the
periodic relation

    [Sym^n_t Sym^m_s] - [det_t Sym^{n-1}_t Sym^{m-p}_s]
        = [Sym^{n+1}_t Sym^{m-p}_s] - [det_t Sym^n_t Sym^{m-2p}_s],   s = Fr^{-1} o t.

With a single embedding (f = 1) the two factors sit in the same GL2(F_p);
there the relation at n = 0 combined with [Sym^1 Sym^j] = [Sym^{j+1}] + [det Sym^{j-1}]
gives [Sym^m] = [Sym^{m-p+1}] + [det Sym^{m-p-1}] - [det Sym^{m-2p}].
"""
from __future__ import annotations

import os
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod
from typing import Iterable, Mapping, Sequence

from .arith import PlaceStructure, pack
from .weights import SerreWeight, Weight, serre_weight_dimension, twist_serre_weight

DEFAULT_FUEL = 10 ** 6


class FuelExhausted(RuntimeError):
    """Rewriting ran past its step budget; indicates a bug, not bad input."""


def default_fuel() -> int:
    raw = os.environ.get("SWL_FUEL")
    if raw is None:
        return DEFAULT_FUEL
    try:
        fuel = int(raw)
    except ValueError:
        raise ValueError(f"SWL_FUEL must be an integer, got {raw!r}") from None
    if fuel <= 0:
        raise ValueError("SWL_FUEL must be positive")
    return fuel


@dataclass(frozen=True, order=True)
class Symbol:
    """det^{e_v} (x) Sym^{n_v} per place; e_v is a canonical residue mod p^{f_v}-1."""

    n: tuple[tuple[int, ...], ...]
    e: tuple[int, ...]

    @classmethod
    def make(cls, structure: PlaceStructure, n: Sequence[Sequence[int]], e: Sequence[int]) -> "Symbol":
        if len(n) != structure.num_places or len(e) != structure.num_places:
            raise ValueError("symbol does not match the place structure")
        for v, f in structure.iter_places():
            if len(n[v]) != f:
                raise ValueError(f"place {v} expects {f} Sym degrees, got {len(n[v])}")
        return cls(tuple(tuple(int(x) for x in nv) for nv in n),
                   tuple(int(x) % structure.modulus(v) for v, x in enumerate(e)))

    @classmethod
    def of_weight(cls, structure: PlaceStructure, w: Weight) -> "Symbol":
        """The symbol of V_{k,l} = (x)_tau det^{l_tau} Sym^{k_tau - 2}."""
        ks = structure.split_vector(w.k)
        ls = structure.split_vector(w.l)
        n = [tuple(x - 2 for x in kv) for kv in ks]
        e = [pack(structure.p, lv, structure.modulus(v)) for v, lv in enumerate(ls)]
        return cls.make(structure, n, e)

    @classmethod
    def of_serre_weight(cls, w: SerreWeight) -> "Symbol":
        return cls(tuple(tuple(x - 2 for x in bv) for bv in w.b), w.D)

    def signed_dimension(self) -> int:
        return prod(x + 1 for nv in self.n for x in nv)


class SymbolicClass:
    """A formal integer combination of symbols (not yet reduced)."""

    def __init__(self, structure: PlaceStructure, terms: Mapping[Symbol, int] | Iterable[tuple[Symbol, int]] = ()):
        self.structure = structure
        acc: dict[Symbol, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for sym, c in items:
            acc[sym] += c
        self.terms = {s: c for s, c in acc.items() if c}

    @classmethod
    def of(cls, structure: PlaceStructure, sym: Symbol, coef: int = 1) -> "SymbolicClass":
        return cls(structure, {sym: coef})

    @classmethod
    def of_weight(cls, structure: PlaceStructure, w: Weight) -> "SymbolicClass":
        return cls.of(structure, Symbol.of_weight(structure, w))

    def _combine(self, other: "SymbolicClass", sign: int) -> "SymbolicClass":
        if other.structure != self.structure:
            raise ValueError("symbolic classes over different place structures")
        acc = dict(self.terms)
        for s, c in other.terms.items():
            acc[s] = acc.get(s, 0) + sign * c
        return SymbolicClass(self.structure, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SymbolicClass(self.structure, {s: -c for s, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SymbolicClass) and self.structure == other.structure and self.terms == other.terms

    def signed_dimension(self) -> int:
        return sum(c * s.signed_dimension() for s, c in self.terms.items())

    def twisted(self, c: Sequence[int]) -> "SymbolicClass":
        st = self.structure
        return SymbolicClass(st, {Symbol(s.n, tuple((e + cv) % st.modulus(v) for v, (e, cv) in enumerate(zip(s.e, c)))): k
                                  for s, k in self.terms.items()})

    def __str__(self):
        return format_combination(sorted(self.terms.items()), format_symbol)

    __repr__ = __str__


class VirtualClass:
    """An element of the Grothendieck group: Serre weight -> nonzero multiplicity."""

    def __init__(self, structure: PlaceStructure, terms: Mapping[SerreWeight, int] | Iterable[tuple[SerreWeight, int]] = ()):
        self.structure = structure
        acc: dict[SerreWeight, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            acc[w] += c
        self.terms = {w: c for w, c in sorted(acc.items()) if c}

    @classmethod
    def zero(cls, structure: PlaceStructure) -> "VirtualClass":
        return cls(structure)

    def _check(self, other: "VirtualClass"):
        if not isinstance(other, VirtualClass):
            raise TypeError("expected a VirtualClass")
        if other.structure != self.structure:
            raise ValueError(f"mismatched place structures: {self.structure.label()} vs {other.structure.label()}")

    def __add__(self, other: "VirtualClass") -> "VirtualClass":
        self._check(other)
        return VirtualClass(self.structure, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "VirtualClass") -> "VirtualClass":
        self._check(other)
        return VirtualClass(self.structure, list(self.terms.items()) + [(w, -c) for w, c in other.terms.items()])

    def __neg__(self):
        return VirtualClass(self.structure, {w: -c for w, c in self.terms.items()})

    def scale(self, k: int) -> "VirtualClass":
        return VirtualClass(self.structure, {w: k * c for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, VirtualClass) and self.structure == other.structure and self.terms == other.terms

    def __hash__(self):
        return hash((self.structure, frozenset(self.terms.items())))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, w: SerreWeight) -> int:
        return self.terms.get(w, 0)

    def support(self) -> list[SerreWeight]:
        return list(self.terms)

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def dimension(self) -> int:
        return sum(c * serre_weight_dimension(w) for w, c in self.terms.items())

    def twisted(self, c: Sequence[int]) -> "VirtualClass":
        return VirtualClass(self.structure, {twist_serre_weight(self.structure, w, c): m for w, m in self.terms.items()})

    def to_json(self) -> list[dict]:
        return [{"weight": w.to_json(), "mult": c} for w, c in self.terms.items()]

    @classmethod
    def from_json(cls, structure: PlaceStructure, data: list[dict]) -> "VirtualClass":
        return cls(structure, [(SerreWeight.from_json(r["weight"]), int(r["mult"])) for r in data])

    def __str__(self):
        return format_combination(self.terms.items(), format_serre_weight)

    __repr__ = __str__


# -- formatting ---------------------------------------------------------------

def format_local(e: int, n: Sequence[int]) -> str:
    parts = [f"e^{e}"] if e else []
    parts += [f"Sym[{i}]^{x}" for i, x in enumerate(n)]
    return " ".join(parts)


def format_symbol(s: Symbol) -> str:
    return " | ".join(format_local(e, nv) for e, nv in zip(s.e, s.n))


def format_serre_weight(w: SerreWeight) -> str:
    return " | ".join(format_local(d, [x - 2 for x in bv]) for d, bv in zip(w.D, w.b))


def format_combination(items, fmt) -> str:
    out = []
    for obj, c in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = fmt(obj)
        out.append((sign, f"{mag} {body}" if mag != 1 else body))
    if not out:
        return "0"
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- reduction ----------------------------------------------------------------

def _violations(p: int, n: tuple[int, ...]) -> list[int]:
    return [i for i, x in enumerate(n) if x < 0 or x >= p]


def _rewrite(p: int, f: int, n: tuple[int, ...], e: int, i: int, m: int):
    """One rewriting step at embedding i; yields (n', e', sign)."""
    x = n[i]
    if x == -1:
        return
    if x < -1:
        nn = list(n)
        nn[i] = -x - 2
        yield tuple(nn), (e + (x + 1) * p ** i) % m, -1
        return
    # x >= p
    if f == 1:
        yield (x - p + 1,), e, 1
        yield (x - p - 1,), (e + 1) % m, 1
        yield (x - 2 * p,), (e + 1) % m, -1
        return
    t = (i + 1) % f          # the embedding with Fr^{-1} o t = i
    det_t = p ** t
    y = n[t]
    for dt, dx, dd, sign in ((-1, -p, 1, 1), (1, -p, 0, 1), (0, -2 * p, 1, -1)):
        nn = list(n)
        nn[t] = y + dt
        nn[i] = x + dx
        yield tuple(nn), (e + dd * det_t) % m, sign


def reduce_local(p: int, f: int, n: Sequence[int], e: int = 0, *, fuel: int | None = None,
                 rng: random.Random | None = None) -> dict[tuple[tuple[int, ...], int], int]:
    """Decompose det^e Sym^n over GL2(F_{p^f}) into (degrees, D) -> multiplicity.

    The default strategy always rewrites the first offending embedding; pass
    ``rng`` to pick among offending embeddings at random instead.
    """
    n = tuple(int(x) for x in n)
    m = p ** f - 1
    if rng is None and fuel is None:
        base = _reduce_local_cached(p, f, n)
        return {(deg, (d + e) % m): c for (deg, d), c in base}
    return _reduce_local(p, f, n, e % m, default_fuel() if fuel is None else fuel, rng)


@lru_cache(maxsize=200_000)
def _reduce_local_cached(p: int, f: int, n: tuple[int, ...]):
    return tuple(sorted(_reduce_local(p, f, n, 0, default_fuel(), None).items()))


def _reduce_local(p, f, n, e, fuel, rng):
    m = p ** f - 1
    work: dict[tuple[tuple[int, ...], int], int] = {(n, e): 1}
    out: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
    steps = 0
    while work:
        key = next(iter(work))
        coef = work.pop(key)
        if not coef:
            continue
        deg, d = key
        bad = _violations(p, deg)
        if not bad:
            out[key] += coef
            continue
        steps += 1
        if steps > fuel:
            raise FuelExhausted(f"reduction exceeded {fuel} rewriting steps (p={p}, f={f}, n={n})")
        i = bad[0] if rng is None else rng.choice(bad)
        for nn, ee, sign in _rewrite(p, f, deg, d, i, m):
            k2 = (nn, ee)
            work[k2] = work.get(k2, 0) + sign * coef
    return {k: c for k, c in out.items() if c}


def reduce(s: SymbolicClass, *, fuel: int | None = None, rng: random.Random | None = None) -> VirtualClass:
    """Jordan-Hoelder decomposition of a symbolic class in the Grothendieck group."""
    st = s.structure
    acc: dict[SerreWeight, int] = defaultdict(int)
    for sym, coef in s.terms.items():
        local = [reduce_local(st.p, st.degrees[v], sym.n[v], sym.e[v], fuel=fuel, rng=rng)
                 for v in range(st.num_places)]
        for combo in product(*(lst.items() for lst in local)):
            b = tuple(tuple(x + 2 for x in deg) for (deg, _), _ in combo)
            D = tuple(d for (_, d), _ in combo)
            acc[SerreWeight(b, D)] += coef * prod(c for _, c in combo)
    return VirtualClass(st, acc)


def decompose_weight(structure: PlaceStructure, w: Weight) -> VirtualClass:
    """The class of V_{k,l}; k may be any integer vector (conventions apply)."""
    return reduce(SymbolicClass.of_weight(structure, w))


def is_subquotient(a: VirtualClass, b: VirtualClass) -> bool:
    """a <= b: b - a is the class of an honest representation."""
    a._check(b)
    return all(c >= 0 for c in (b - a).terms.values())


def jh_set(structure: PlaceStructure, w: Weight) -> list[SerreWeight]:
    """Jordan-Hoelder constituents of V_{k,l} (k_tau >= 2), sorted."""
    if any(x < 2 for x in w.k):
        raise ValueError(f"V_(k,l) is a representation only for k >= 2, got k={w.k}")
    cls = decompose_weight(structure, w)
    if not cls.is_effective():
        raise AssertionError(f"negative multiplicity in the class of a representation: {cls}")
    return cls.support()
