"""Data-driven checks of explicit identities, inequalities and case lists.

A fixture file is JSON: ``{"suite": name, "claims": [claim, ...]}``.  Every
claim has an ``id``, a ``kind``, an ``anchor`` (a label and the formula it
encodes), the residue degrees ``places`` of the structure it lives on, a prime
range ``p_min``/``p_max``, and optionally

* ``grid``: ordered ``[name, lo, hi]`` inclusive ranges (bounds may use
  earlier names and ``p``),
* ``let``: ordered ``[name, expr]`` derived values,
* ``where``: boolean expressions that filter grid points.

Kinds:

``identity``     ``lhs`` and ``rhs`` reduce to the same class.
``subquotient``  reduce(lhs) <= reduce(rhs).
``intersection`` named ``sets`` of weights (each entry one irreducible
                 symbol, optionally gated by ``when`` and twisted by
                 ``twist``) and ``checks``: ``contains``, ``disjoint``,
                 ``meets`` (with ``jh_of``) and ``any_of``.
``forcing``      ``induced_character_weights`` equals ``expected``.
``poset``        ``hasse_implies_subquotient`` over a weight box.
``stratum``      the stratum weight's class is a subquotient of V_{k,0}.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterator

from sympy import isprime

from .arith import PlaceStructure
from .bdj import induced_character_weights
from .groth import VirtualClass, decompose_weight, is_subquotient, reduce
from .notation import NotationError, _split_terms, eval_int, parse_class
from .shift import in_minimal_cone, le_ha, stratum_weight
from .weights import SerreWeight, Weight

KINDS = ("identity", "subquotient", "intersection", "forcing", "poset", "stratum")


class ConfigError(ValueError):
    """Malformed fixture, unknown claim, or invalid prime."""


@dataclass
class Claim:
    id: str
    kind: str
    anchor: dict
    places: tuple[int, ...]
    p_min: int
    p_max: int | None
    body: dict
    source: str = "printed"

    @classmethod
    def from_json(cls, data: dict) -> "Claim":
        try:
            kind = data["kind"]
            if kind not in KINDS:
                raise ConfigError(f"claim {data.get('id')!r}: unknown kind {kind!r}")
            anchor = data["anchor"]
            if not anchor.get("label") or not anchor.get("formula"):
                raise ConfigError(f"claim {data['id']!r} lacks an anchor label and formula")
            return cls(data["id"], kind, anchor, tuple(data.get("places", [1])),
                       int(data.get("p_min", 3)), data.get("p_max"), data, data.get("source", "printed"))
        except KeyError as exc:
            raise ConfigError(f"claim is missing field {exc}") from None

    def applies(self, p: int) -> bool:
        return p >= self.p_min and (self.p_max is None or p <= self.p_max)


@dataclass
class ClaimReport:
    id: str
    p: int
    status: str
    checked: int = 0
    witness: dict | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        out = {"id": self.id, "p": self.p, "status": self.status, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    reports: list[ClaimReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {"passed": self.passed, "reports": [r.to_json() for r in self.reports]}


def load_claims(path: str | Path | None = None) -> list[Claim]:
    """Load a fixture file; the packaged suite when ``path`` is None."""
    try:
        if path is None:
            text = resources.files("swl").joinpath("fixtures/claims.json").read_text()
        else:
            text = Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read fixtures: {exc}") from None
    claims = [Claim.from_json(c) for c in data.get("claims", [])]
    ids = [c.id for c in claims]
    if len(set(ids)) != len(ids):
        raise ConfigError("duplicate claim ids in fixture file")
    return claims


def _points(claim: Claim, p: int) -> Iterator[dict]:
    body = claim.body

    def rec(i: int, env: dict):
        grid = body.get("grid", [])
        if i == len(grid):
            env = dict(env)
            for name, expr in body.get("let", []):
                env[name] = eval_int(str(expr), env)
            if all(eval_int(str(w), env) for w in body.get("where", [])):
                yield env
            return
        name, lo, hi = grid[i]
        for x in range(eval_int(str(lo), env), eval_int(str(hi), env) + 1):
            yield from rec(i + 1, {**env, name: x})

    yield from rec(0, {"p": p})


def _single_weight(structure: PlaceStructure, text: str, env: dict) -> SerreWeight:
    cls = reduce(parse_class(structure, text, env))
    if len(cls) != 1 or next(iter(cls.terms.values())) != 1:
        raise ConfigError(f"set entry {text!r} is not a single Serre weight (reduces to {cls})")
    return cls.support()[0]


def _witness(env: dict, extra: dict | None = None) -> dict:
    out = {k: v for k, v in env.items() if k != "p"}
    if extra:
        out.update(extra)
    return out


def _check_point(claim: Claim, st: PlaceStructure, env: dict) -> dict | None:
    """None when the claim holds at this point, otherwise a witness."""
    b = claim.body
    kind = claim.kind
    if kind in ("identity", "subquotient"):
        lhs = reduce(parse_class(st, b["lhs"], env))
        rhs = reduce(parse_class(st, b["rhs"], env))
        ok = lhs == rhs if kind == "identity" else is_subquotient(lhs, rhs)
        if ok:
            return None
        return _witness(env, {"lhs": str(lhs), "rhs": str(rhs), "rhs_minus_lhs": str(rhs - lhs)})
    if kind == "intersection":
        twist = [eval_int(str(b["twist"]), env)] + [0] * (st.num_places - 1) if "twist" in b else None
        sets = {}
        for name, spec in b["sets"].items():
            if isinstance(spec, dict):
                if "when" in spec and not eval_int(str(spec["when"]), env):
                    continue
                entries = spec["weights"]
            else:
                entries = spec
            ws = {_single_weight(st, e, env) for e in entries}
            if twist is not None:
                ws = set(VirtualClass(st, {w: 1 for w in ws}).twisted(twist).support())
            sets[name] = ws
        for chk in b["checks"]:
            targets = chk.get("sets", list(sets)) if "set" not in chk else [chk["set"]]
            for name in targets:
                if name not in sets:
                    continue
                if not _set_check(st, sets[name], chk, env):
                    return _witness(env, {"set": name, "check": chk.get("op")})
        return None
    if kind == "stratum":
        k0, k1 = env["k0"], env["k1"]
        sw = stratum_weight(st.p, k0, k1)
        a = decompose_weight(st, sw)
        full = decompose_weight(st, Weight((k0, k1), (0, 0)))
        if is_subquotient(a, full):
            return None
        return _witness(env, {"stratum_weight": str(sw), "difference": str(full - a)})
    raise ConfigError(f"kind {kind!r} is not evaluated pointwise")


def _set_check(st: PlaceStructure, W: set, chk: dict, env: dict) -> bool:
    op = chk["op"]
    if op == "any_of":
        return any(_set_check(st, W, sub, env) for sub in chk["checks"])
    if op == "contains":
        return _single_weight(st, chk["element"], env) in W
    if op in ("disjoint", "meets"):
        jh = reduce(parse_class(st, chk["jh_of"], env))
        if not jh.is_effective():
            raise ConfigError(f"{chk['jh_of']!r} is not the class of a representation")
        hit = bool(set(jh.support()) & W)
        return hit if op == "meets" else not hit
    raise ConfigError(f"unknown set check {op!r}")


def run_claim(claim: Claim, p: int) -> ClaimReport:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise ConfigError(f"{p} is not an odd prime")
    if not claim.applies(p):
        return ClaimReport(claim.id, p, "skipped", detail="prime outside the declared range")
    st = PlaceStructure(p, claim.places)
    b = claim.body
    try:
        if claim.kind == "forcing":
            got = sorted(induced_character_weights(p, b["structure"]))
            env = {"p": p}
            want = sorted(tuple(eval_int(str(x), env) for x in w) for w in b["expected"])
            if got == want:
                return ClaimReport(claim.id, p, "pass", 1)
            return ClaimReport(claim.id, p, "fail", 1, {"expected": want, "got": got})
        if claim.kind == "poset":
            return _run_poset(claim, st)
        checked = 0
        for env in _points(claim, p):
            checked += 1
            wit = _check_point(claim, st, env)
            if wit is not None:
                return ClaimReport(claim.id, p, "fail", checked, wit)
        return ClaimReport(claim.id, p, "pass", checked)
    except (NotationError, KeyError, TypeError) as exc:
        raise ConfigError(f"claim {claim.id!r}: {exc}") from None


def _run_poset(claim: Claim, st: PlaceStructure) -> ClaimReport:
    b = claim.body
    if b.get("relation") != "hasse_implies_subquotient":
        raise ConfigError(f"claim {claim.id!r}: unknown poset relation {b.get('relation')!r}")
    env = {"p": st.p}
    lo, hi = eval_int(str(b["box"][0]), env), eval_int(str(b["box"][1]), env)
    exclude = {tuple(x) for x in b.get("exclude_lower", [])}
    box = [k for k in product(range(lo, hi + 1), repeat=st.d) if in_minimal_cone(st, k, positive=True)]
    classes = {k: decompose_weight(st, Weight(k, (0,) * st.d)) for k in box}
    checked = 0
    for k_low in box:
        if k_low in exclude:
            continue
        for k in box:
            ok, _ = le_ha(st, k_low, k)
            if not ok:
                continue
            checked += 1
            if not is_subquotient(classes[k_low], classes[k]):
                return ClaimReport(claim.id, st.p, "fail", checked, {"k_lower": list(k_low), "k": list(k)})
    return ClaimReport(claim.id, st.p, "pass", checked)


def run_suite(primes: list[int], claims: list[Claim] | None = None, only: list[str] | None = None) -> SuiteReport:
    for p in primes:
        if not isinstance(p, int) or p < 3 or not isprime(p):
            raise ConfigError(f"{p} is not an odd prime")
    claims = load_claims() if claims is None else claims
    if only:
        known = {c.id for c in claims}
        missing = [i for i in only if i not in known]
        if missing:
            raise ConfigError(f"unknown claim id(s): {', '.join(missing)}")
        claims = [c for c in claims if c.id in only]
    report = SuiteReport()
    for claim in sorted(claims, key=lambda c: c.id):
        for p in primes:
            report.reports.append(run_claim(claim, p))
    return report


def find_claim(claims: list[Claim], claim_id: str) -> Claim:
    for c in claims:
        if c.id == claim_id:
            return c
    raise ConfigError(f"unknown claim id {claim_id!r}")


# -- mutation ------------------------------------------------------------------

def identity_terms(claim: Claim) -> list[tuple[str, int]]:
    """(side, index) of every term of an identity claim."""
    if claim.kind != "identity":
        raise ValueError("only identity claims have terms to mutate")
    return [(side, i) for side in ("lhs", "rhs") for i in range(len(_split_terms(claim.body[side])))]


def _coefficient(text: str) -> tuple[int, str]:
    text = text.strip()
    j = 0
    while j < len(text) and text[j].isdigit():
        j += 1
    if j == 0:
        return 1, text
    return int(text[:j]), text[j:].lstrip(" *")


def mutate_multiplicity(claim: Claim, side: str, index: int, delta: int = 1) -> Claim:
    """Copy of an identity claim with one term's multiplicity shifted by ``delta``."""
    if delta == 0:
        raise ValueError("a mutation must change the multiplicity")
    terms = []
    for sign, text in _split_terms(claim.body[side]):
        c, rest = _coefficient(text)
        terms.append([sign * c, rest])
    terms[index][0] += delta
    out = ""
    for i, (c, rest) in enumerate(terms):
        mag = f"{abs(c)} " if abs(c) != 1 else ""
        if i == 0:
            out = f"{'-' if c < 0 else ''}{mag}{rest}"
        else:
            out += f" {'-' if c < 0 else '+'} {mag}{rest}"
    body = copy.deepcopy(claim.body)
    body[side] = out
    body["id"] = f"{claim.id}~{side}{index}{delta:+d}"
    return Claim.from_json(body)
