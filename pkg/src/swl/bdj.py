"""The Buzzard-Diamond-Jarvis weight recipe on inertial characters.

Types are recorded by exponents of fundamental characters of the place's
first embedding.  A reducible type (chi_1, chi_2) has niveau-f exponents
e1, e2; an irreducible type has a niveau-2f exponent orbit {a, q a}.
Extension classes are not computed: the ``ExtensionFlag`` records what is
known, and every candidate whose membership would depend on the actual
class is tagged ``conditional``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .arith import CharExponent, PlaceStructure, pack
from .weights import SerreWeight


class ExtensionFlag(enum.Enum):
    SPLIT = "split"
    GENERIC = "generic"
    PEU = "peu_ramifiee"
    TRES = "tres_ramifiee"
    UNKNOWN = "unknown"


class Certainty(enum.IntEnum):
    CONDITIONAL = 0
    CERTAIN = 1

    @property
    def label(self) -> str:
        return "certain" if self is Certainty.CERTAIN else "conditional_on_extension_class"


@dataclass(frozen=True)
class InertialType:
    structure: PlaceStructure
    place: int
    kind: str
    e1: CharExponent | None = None
    e2: CharExponent | None = None
    ext: ExtensionFlag | None = None
    orbit: CharExponent | None = None

    @classmethod
    def reducible(cls, structure: PlaceStructure, e1: int, e2: int,
                  ext: ExtensionFlag | str = ExtensionFlag.GENERIC, place: int = 0) -> "InertialType":
        f = structure.degrees[place]
        ext = ExtensionFlag(ext)
        t = cls(structure, place, "reducible",
                CharExponent(structure.p, place, f, e1), CharExponent(structure.p, place, f, e2), ext)
        if ext in (ExtensionFlag.PEU, ExtensionFlag.TRES):
            cyc = (structure.p ** f - 1) // (structure.p - 1)
            if (t.e1.exponent - t.e2.exponent - cyc) % t.e1.modulus:
                raise ValueError("peu/tres ramifiee types need chi_1 chi_2^-1 = cyclotomic on inertia")
        return t

    @classmethod
    def irreducible(cls, structure: PlaceStructure, a: int, place: int = 0) -> "InertialType":
        f = structure.degrees[place]
        q = structure.p ** f
        m = q * q - 1
        a %= m
        b = a * q % m
        if a == b:
            raise ValueError(f"exponent {a} has niveau dividing f; it does not define an irreducible type")
        return cls(structure, place, "irreducible", orbit=CharExponent(structure.p, place, 2 * f, min(a, b)))

    @property
    def f(self) -> int:
        return self.structure.degrees[self.place]

    def orbit_pair(self) -> tuple[int, int]:
        q = self.structure.p ** self.f
        a = self.orbit.exponent
        b = a * q % self.orbit.modulus
        return (a, b) if a <= b else (b, a)

    def to_json(self) -> dict:
        out = {"place": self.place, "kind": self.kind}
        if self.kind == "reducible":
            out.update(e1=self.e1.exponent, e2=self.e2.exponent, ext=self.ext.value)
        else:
            out["orbit"] = list(self.orbit_pair())
        return out


@dataclass(frozen=True, order=True)
class WeightCandidate:
    weight: SerreWeight
    J: tuple[int, ...]
    certainty: Certainty

    def to_json(self) -> dict:
        return {"weight": self.weight.to_json(), "J": list(self.J), "certainty": self.certainty.label}


def _subsets(n: int) -> Iterable[tuple[int, ...]]:
    for r in range(n + 1):
        yield from combinations(range(n), r)


def _local_weight(structure: PlaceStructure, place: int, b: Sequence[int], D: int) -> SerreWeight:
    """A single-place weight, stored with one place."""
    return SerreWeight((tuple(b),), (D % structure.modulus(place),))


def _reducible_matches(t: InertialType):
    p, f = t.structure.p, t.f
    m = p ** f - 1
    full = tuple(range(f))
    for J in _subsets(f):
        for b in product(range(2, p + 2), repeat=f):
            cJ = sum((b[i] - 1) * p ** i for i in J)
            cN = sum((b[i] - 1) * p ** i for i in full if i not in J)
            D = (t.e2.exponent - cN) % m
            if (cJ + D - t.e1.exponent) % m == 0:
                yield J, b, D


def bdj_candidates(t: InertialType) -> list[WeightCandidate]:
    """All (weight, J) pairs of the recipe with a certainty tag, sorted."""
    st, place = t.structure, t.place
    p, f = st.p, t.f
    out = set()
    if t.kind == "irreducible":
        q = p ** f
        m = q * q - 1
        targets = set(t.orbit_pair())
        for choice in product((0, 1), repeat=f - 1):
            Jp = (0,) + tuple(i + 1 + f * c for i, c in enumerate(choice))
            for b in product(range(2, p + 2), repeat=f):
                s = sum((b[j % f] - 1) * p ** j for j in Jp)
                for D in range(q - 1):
                    if (D * (1 + q) + s) % m in targets:
                        out.add(WeightCandidate(_local_weight(st, place, b, D), tuple(sorted(Jp)), Certainty.CERTAIN))
        return sorted(out)

    full = tuple(range(f))
    ext = t.ext
    for J, b, D in _reducible_matches(t):
        trivial = all(x == 2 for x in b)
        whole = J == full
        if ext is ExtensionFlag.SPLIT:
            cert = Certainty.CERTAIN
        elif ext is ExtensionFlag.GENERIC:
            cert = Certainty.CONDITIONAL if (whole and trivial) else Certainty.CERTAIN
        elif ext is ExtensionFlag.PEU:
            cert = Certainty.CERTAIN if whole else Certainty.CONDITIONAL
        elif ext is ExtensionFlag.TRES:
            if any(x != p + 1 for x in b):
                continue
            cert = Certainty.CERTAIN
        else:
            cert = Certainty.CERTAIN if (whole and not trivial) else Certainty.CONDITIONAL
        out.add(WeightCandidate(_local_weight(st, place, b, D), J, cert))
    return sorted(out)


def candidate_weights(t: InertialType) -> dict[SerreWeight, Certainty]:
    """Weights of the local set, each with the best certainty over its J."""
    best: dict[SerreWeight, Certainty] = {}
    for c in bdj_candidates(t):
        best[c.weight] = max(best.get(c.weight, Certainty.CONDITIONAL), c.certainty)
    return dict(sorted(best.items()))


def bdj_product(structure: PlaceStructure, types: Sequence[InertialType]) -> dict[SerreWeight, Certainty]:
    """W^BDJ as a product over places; certainty of a product is the minimum."""
    if len(types) != structure.num_places:
        raise ValueError(f"need one inertial type per place ({structure.num_places}), got {len(types)}")
    for v, t in enumerate(types):
        if t.place != v or t.structure != structure:
            raise ValueError(f"type #{v} is not attached to place {v} of this structure")
    local = [candidate_weights(t) for t in types]
    out = {}
    for combo in product(*(lst.items() for lst in local)):
        w = SerreWeight(tuple(c[0].b[0] for c in combo), tuple(c[0].D[0] for c in combo))
        out[w] = min(c[1] for c in combo)
    return dict(sorted(out.items()))


def twist_inertial(t: InertialType, lp: Sequence[int]) -> InertialType:
    """Twist by prod eps_tau^{-lp_tau}."""
    st, f = t.structure, t.f
    if len(lp) != f:
        raise ValueError(f"twist vector must have length {f}")
    c = pack(st.p, lp, st.modulus(t.place))
    if t.kind == "reducible":
        return InertialType(st, t.place, "reducible", t.e1.shift(-c), t.e2.shift(-c), t.ext)
    q = st.p ** f
    return InertialType.irreducible(st, t.orbit.exponent - (1 + q) * c, t.place)


def swap(t: InertialType) -> InertialType:
    if t.kind != "reducible":
        raise ValueError("only reducible types have an ordered pair of characters")
    return InertialType(t.structure, t.place, "reducible", t.e2, t.e1, t.ext)


def ordinary_type(structure: PlaceStructure, k: Sequence[int], place: int = 0,
                  ext: ExtensionFlag = ExtensionFlag.GENERIC) -> InertialType:
    """chi_1 = prod eps_tau^{k_tau - 1}, chi_2 = 1 on inertia."""
    e1 = pack(structure.p, [x - 1 for x in k], structure.modulus(place))
    return InertialType.reducible(structure, e1, 0, ext, place)


def induced_character_weights(p: int, structure: str) -> set[tuple[int, ...]]:
    """Weights allowed for the induction of a character of a ramified quadratic extension.

    ``structure`` is ``split`` (one embedding; weights Sym^{k-2} with no
    twist) or ``inert`` (two embeddings; weights V_{k,-k}).  The induced
    family is closed under twisting, so the result does not depend on the
    twist convention.
    """
    if structure == "split":
        f = 1
    elif structure == "inert":
        f = 2
    else:
        raise ValueError(f"unsupported structure {structure!r}; use 'split' or 'inert'")
    st = PlaceStructure.single(p, f)
    q = p ** f
    m = q - 1
    forced = set()
    for n in range(2 * m):
        if n % 2 == 0:
            x, y = n // 2, (n // 2 + m // 2) % m
            types = [InertialType.reducible(st, x, y, ExtensionFlag.UNKNOWN),
                     InertialType.reducible(st, y, x, ExtensionFlag.UNKNOWN)]
        else:
            types = [InertialType.irreducible(st, n * (q + 1) // 2)]
        for t in types:
            for c in bdj_candidates(t):
                b = c.weight.b[0]
                want = 0 if f == 1 else -pack(p, b, m) % m
                if c.weight.D[0] == want:
                    forced.add(b)
    return forced
