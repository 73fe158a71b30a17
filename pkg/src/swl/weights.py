"""Weights (k, l) and normalized Serre weights V_{b,D}."""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .arith import PlaceStructure, pack


@dataclass(frozen=True)
class Weight:
    """A pair (k, l) of integer vectors over Sigma, place-major."""

    k: tuple[int, ...]
    l: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if len(self.k) != len(self.l):
            raise ValueError("k and l must have the same length")

    def to_json(self) -> dict:
        return {"k": list(self.k), "l": list(self.l)}

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        return cls(tuple(data["k"]), tuple(data["l"]))

    def __str__(self):
        return f"(({','.join(map(str, self.k))}),({','.join(map(str, self.l))}))"


@dataclass(frozen=True, order=True)
class SerreWeight:
    """An irreducible representation of prod_v GL2(F_{p^f_v}).

    ``b[v]`` is the vector of b_tau in [2, p+1] over Sigma_v and ``D[v]`` the
    packed determinant twist modulo p^{f_v} - 1.  The local factor at v is
    det_{[tau_0]}^{D_v} (x) (x)_i Sym^{b_i - 2}_{[tau_i]}.
    """

    b: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]

    @property
    def flat_b(self) -> tuple[int, ...]:
        return tuple(x for bv in self.b for x in bv)

    def to_json(self) -> list[dict]:
        return [{"place": v, "b": list(bv), "D": d} for v, (bv, d) in enumerate(zip(self.b, self.D))]

    @classmethod
    def from_json(cls, data: list[dict]) -> "SerreWeight":
        parts = sorted(data, key=lambda r: r["place"])
        return cls(tuple(tuple(r["b"]) for r in parts), tuple(r["D"] for r in parts))

    def is_trivial_twist(self, place: int) -> bool:
        """True when the local factor at ``place`` is a character (all b = 2)."""
        return all(x == 2 for x in self.b[place])


def validate_serre_weight(structure: PlaceStructure, w: SerreWeight) -> None:
    p = structure.p
    if len(w.b) != structure.num_places or len(w.D) != structure.num_places:
        raise ValueError("Serre weight does not match the place structure")
    for v, f in structure.iter_places():
        if len(w.b[v]) != f:
            raise ValueError(f"place {v} expects {f} entries of b")
        if any(not 2 <= x <= p + 1 for x in w.b[v]):
            raise ValueError(f"b must lie in [2, {p + 1}], got {w.b[v]}")
        if not 0 <= w.D[v] < structure.modulus(v):
            raise ValueError("twist D is not a canonical residue")


def normalize_serre_weight(structure: PlaceStructure, k: Sequence[int], l: Sequence[int]) -> SerreWeight:
    """V_{k,l} with 2 <= k_tau <= p+1 as a canonical (b, D).

    Two such weights are isomorphic exactly when the k agree and the packed
    twists sum_i l_{tau_i} p^i agree modulo p^{f_v} - 1.
    """
    p = structure.p
    ks = structure.split_vector(k)
    ls = structure.split_vector(l)
    for kv in ks:
        if any(not 2 <= x <= p + 1 for x in kv):
            raise ValueError(f"k must lie in [2, {p + 1}] for a Serre weight, got {kv}")
    D = tuple(pack(p, lv, structure.modulus(v)) for v, lv in enumerate(ls))
    return SerreWeight(ks, D)


def serre_weight_dimension(w: SerreWeight) -> int:
    return prod(x - 1 for x in w.flat_b)


def twist_serre_weight(structure: PlaceStructure, w: SerreWeight, c: Sequence[int]) -> SerreWeight:
    """Tensor with det^{c_v} at each place (c already packed)."""
    if len(c) != structure.num_places:
        raise ValueError("one twist exponent per place is required")
    D = tuple((d + int(cv)) % structure.modulus(v) for v, (d, cv) in enumerate(zip(w.D, c)))
    return SerreWeight(w.b, D)


def serre_weight_as_weight(w: SerreWeight) -> Weight:
    """A representative (k, l) with l concentrated on each place's tau_0."""
    l = []
    for bv, d in zip(w.b, w.D):
        l.extend([d] + [0] * (len(bv) - 1))
    return Weight(w.flat_b, tuple(l))
