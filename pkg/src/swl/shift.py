"""Weight bookkeeping for partial Hasse invariants and Theta operators."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import PlaceStructure
from .weights import Weight

CONE_FUEL = 10 ** 4


class ConeReductionError(RuntimeError):
    pass


class DivisibilityFlag(enum.Enum):
    ALWAYS_DIVISIBLE = "always_divisible_by_ha"
    CONDITIONAL = "divisible_iff_input_divisible"


@dataclass(frozen=True)
class HasseWeight:
    tau: int
    vector: tuple[int, ...]


def hasse_weight(structure: PlaceStructure, tau: int) -> HasseWeight:
    vec = [0] * structure.d
    prev = structure.frob_inv(tau)
    if prev == tau:
        vec[tau] = structure.p - 1
    else:
        vec[tau] = -1
        vec[prev] = structure.p
    return HasseWeight(tau, tuple(vec))


def theta_shift(structure: PlaceStructure, w: Weight, tau: int) -> Weight:
    k, l = list(w.k), list(w.l)
    _check_len(structure, k)
    prev = structure.frob_inv(tau)
    if prev == tau:
        k[tau] += structure.p + 1
    else:
        k[tau] += 1
        k[prev] += structure.p
    l[tau] -= 1
    return Weight(tuple(k), tuple(l))


def hasse_shift(structure: PlaceStructure, w: Weight, tau: int) -> Weight:
    """Weight of Ha_tau * f; l is unchanged."""
    _check_len(structure, w.k)
    h = hasse_weight(structure, tau).vector
    return Weight(tuple(a + b for a, b in zip(w.k, h)), w.l)


def _check_len(structure: PlaceStructure, k: Sequence[int]):
    if len(k) != structure.d:
        raise ValueError(f"expected a vector of length {structure.d}, got {len(k)}")


def in_minimal_cone(structure: PlaceStructure, k: Sequence[int], positive: bool = False) -> bool:
    _check_len(structure, k)
    p = structure.p
    if positive and any(x < 1 for x in k):
        return False
    return all(p * k[t] >= k[structure.frob_inv(t)] for t in range(structure.d))


def in_liftable_cone(structure: PlaceStructure, k: Sequence[int]) -> bool:
    _check_len(structure, k)
    p = structure.p
    return all(p * (k[t] - 2) > k[structure.frob_inv(t)] - 2 for t in range(structure.d))


@lru_cache(maxsize=64)
def _hasse_inverse(structure: PlaceStructure) -> tuple[tuple[Fraction, ...], ...]:
    d = structure.d
    # columns are the Hasse weight vectors
    m = [[Fraction(hasse_weight(structure, t).vector[r]) for t in range(d)] for r in range(d)]
    a = [row + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(m)]
    for c in range(d):
        piv = next(r for r in range(c, d) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(d):
            if r != c and a[r][c] != 0:
                t = a[r][c]
                a[r] = [x - t * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[d:]) for row in a)


def le_ha(structure: PlaceStructure, k1: Sequence[int], k2: Sequence[int]) -> tuple[bool, tuple[int, ...] | None]:
    """k1 <=_Ha k2, with the unique witness n such that k2 - k1 = sum n_tau k_{Ha_tau}."""
    _check_len(structure, k1)
    _check_len(structure, k2)
    diff = [b - a for a, b in zip(k1, k2)]
    inv = _hasse_inverse(structure)
    sol = [sum(row[j] * diff[j] for j in range(structure.d)) for row in inv]
    if any(x.denominator != 1 or x < 0 for x in sol):
        return False, None
    return True, tuple(int(x) for x in sol)


def cone_reduce(structure: PlaceStructure, k: Sequence[int], *, fuel: int = CONE_FUEL,
                rng: random.Random | None = None) -> tuple[int, ...]:
    """Strip Hasse weights while some tau has p k_tau < k_{Fr^-1 tau}."""
    _check_len(structure, k)
    p = structure.p
    cur = list(k)
    for _ in range(fuel):
        bad = [t for t in range(structure.d) if p * cur[t] < cur[structure.frob_inv(t)]]
        if not bad:
            return tuple(cur)
        t = bad[0] if rng is None else rng.choice(bad)
        h = hasse_weight(structure, t).vector
        cur = [a - b for a, b in zip(cur, h)]
    raise ConeReductionError(f"cone reduction of {tuple(k)} did not converge within {fuel} steps")


def twist_weight(w: Weight, lp: Sequence[int]) -> Weight:
    if len(lp) != len(w.l):
        raise ValueError("twist vector has the wrong length")
    return Weight(w.k, tuple(a + b for a, b in zip(w.l, lp)))


def stratum_weight(p: int, k0: int, k1: int) -> Weight:
    """Quaternionic weight ((2, p k0 - k1 + 2), (-1, k1 - 1)) attached to (k0, k1)."""
    if not (k1 >= k0 >= 2 and p * k0 >= k1):
        raise ValueError(f"stratum weight needs k1 >= k0 >= 2 and p*k0 >= k1, got ({k0}, {k1})")
    return Weight((2, p * k0 - k1 + 2), (-1, k1 - 1))


def theta_divisibility_flag(structure: PlaceStructure, w: Weight, tau: int) -> DivisibilityFlag:
    _check_len(structure, w.k)
    structure.locate(tau)
    if w.k[tau] % structure.p == 0:
        return DivisibilityFlag.ALWAYS_DIVISIBLE
    return DivisibilityFlag.CONDITIONAL
