"""Exponent arithmetic for tame inertial characters and the embedding combinatorics.

Every character of inertia at a place v is a power of the fundamental
character attached to the place's first embedding tau_0.  Because
eps_{Fr o tau} = eps_tau^p, a product prod_i eps_{tau_i}^{a_i} is the single
power eps_{tau_0}^{sum a_i p^i}.  We use the convention that the product of
all eps_tau over Sigma_v is the mod p cyclotomic character (some references
use its inverse; translate inputs accordingly).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from sympy import isprime


@dataclass(frozen=True)
class PlaceStructure:
    """The prime p and the residue degrees f_v of the places above it.

    Embeddings are indexed globally, place-major: place 0 owns indices
    0..f_0-1, place 1 the next f_1, and so on.  Inside a place the order is
    the Frobenius order, so Fr(tau_i) = tau_{i+1 mod f_v}.
    """

    p: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(f) for f in self.degrees))
        if not isinstance(self.p, int) or self.p < 3 or not isprime(self.p):
            raise ValueError(f"p must be a prime >= 3, got {self.p}")
        if not self.degrees:
            raise ValueError("at least one place is required")
        if any(f < 1 for f in self.degrees):
            raise ValueError(f"residue degrees must be >= 1, got {self.degrees}")

    @classmethod
    def single(cls, p: int, f: int) -> "PlaceStructure":
        return cls(p, (f,))

    @property
    def d(self) -> int:
        return sum(self.degrees)

    @property
    def num_places(self) -> int:
        return len(self.degrees)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for f in self.degrees:
            out.append(acc)
            acc += f
        return tuple(out)

    def modulus(self, place: int, n: int = 1) -> int:
        """p^(n f_v) - 1, the order of the niveau-n f_v fundamental character."""
        return self.p ** (n * self.degrees[place]) - 1

    def embeddings(self, place: int) -> range:
        off = self.offsets[place]
        return range(off, off + self.degrees[place])

    def locate(self, tau: int) -> tuple[int, int]:
        """Global embedding index -> (place, index inside the place)."""
        if not 0 <= tau < self.d:
            raise ValueError(f"embedding index {tau} out of range 0..{self.d - 1}")
        for v, off in enumerate(self.offsets):
            if tau < off + self.degrees[v]:
                return v, tau - off
        raise AssertionError("unreachable")

    def frob(self, tau: int) -> int:
        v, i = self.locate(tau)
        return self.offsets[v] + (i + 1) % self.degrees[v]

    def frob_inv(self, tau: int) -> int:
        v, i = self.locate(tau)
        return self.offsets[v] + (i - 1) % self.degrees[v]

    def split_vector(self, vec: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """Cut a vector over Sigma into its per-place pieces."""
        if len(vec) != self.d:
            raise ValueError(f"expected a vector of length {self.d}, got {len(vec)}")
        return tuple(tuple(int(x) for x in vec[off:off + f])
                     for off, f in zip(self.offsets, self.degrees))

    def iter_places(self) -> Iterator[tuple[int, int]]:
        yield from enumerate(self.degrees)

    def label(self) -> str:
        return f"p={self.p} places={','.join(map(str, self.degrees))}"


def pack(p: int, a: Sequence[int], modulus: int) -> int:
    return sum(int(x) * p ** i for i, x in enumerate(a)) % modulus


def pack_exponents(structure: PlaceStructure, place: int, a: Sequence[int]) -> "CharExponent":
    """prod_i eps_{tau_i}^{a_i} as a single exponent of eps_{tau_0} (niveau f_v)."""
    f = structure.degrees[place]
    if len(a) != f:
        raise ValueError(f"place {place} has {f} embeddings, got a vector of length {len(a)}")
    m = structure.modulus(place)
    return CharExponent(structure.p, place, f, pack(structure.p, a, m))


@dataclass(frozen=True, order=True)
class CharExponent:
    """eps^exponent for the fundamental character eps of the given niveau.

    ``niveau`` is the absolute degree (a multiple n f_v of the residue
    degree), so the exponent lives in Z/(p^niveau - 1).
    """

    p: int
    place: int
    niveau: int
    exponent: int

    def __post_init__(self):
        if self.niveau < 1:
            raise ValueError("niveau must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p ** self.niveau - 1

    def __add__(self, other: "CharExponent") -> "CharExponent":
        self._check(other)
        return CharExponent(self.p, self.place, self.niveau, self.exponent + other.exponent)

    def __sub__(self, other: "CharExponent") -> "CharExponent":
        self._check(other)
        return CharExponent(self.p, self.place, self.niveau, self.exponent - other.exponent)

    def __neg__(self) -> "CharExponent":
        return CharExponent(self.p, self.place, self.niveau, -self.exponent)

    def shift(self, c: int) -> "CharExponent":
        return CharExponent(self.p, self.place, self.niveau, self.exponent + c)

    def _check(self, other: "CharExponent"):
        if (self.p, self.place, self.niveau) != (other.p, other.place, other.niveau):
            raise ValueError("character exponents live in different groups")


def frobenius_twist(e: CharExponent, times: int = 1) -> CharExponent:
    """eps_tau -> eps_{Fr o tau}: multiply the exponent by p."""
    return CharExponent(e.p, e.place, e.niveau, e.exponent * pow(e.p, times, e.modulus))


def rebase(e: CharExponent, to_index: int, f: int) -> int:
    """Exponent of the same character in terms of eps_{tau_j}, j = to_index.

    eps_{tau_j} = eps_{tau_0}^{p^j}, so eps_{tau_0} = eps_{tau_j}^{p^(niveau-j)}.
    ``f`` is the residue degree; j is read modulo the niveau.
    """
    if e.niveau % f:
        raise ValueError("niveau must be a multiple of the residue degree")
    j = to_index % e.niveau
    return e.exponent * pow(e.p, (e.niveau - j) % e.niveau, e.modulus) % e.modulus


def frobenius_orbit(e: CharExponent, f: int) -> tuple[int, int]:
    """The unordered pair {a, p^f a} for a niveau-2f exponent, smaller first."""
    if e.niveau != 2 * f:
        raise ValueError("orbits are taken for niveau 2f exponents")
    a = e.exponent
    b = a * e.p ** f % e.modulus
    return (a, b) if a <= b else (b, a)
