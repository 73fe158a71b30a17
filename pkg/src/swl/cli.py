"""Command line interface.

Vectors are comma separated in embedding order tau_0, tau_1, ... (place-major
when there are several places).  Negative leading entries need the ``=`` form,
e.g. ``--l=-1,0``.  Exit status: 0 success, 1 domain error or failed
verification, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .arith import PlaceStructure
from .bdj import (ExtensionFlag, InertialType, bdj_candidates, bdj_product, induced_character_weights,
                  twist_inertial)
from .brauer import brauer_decompose
from .groth import SymbolicClass, VirtualClass, format_serre_weight, is_subquotient, jh_set, reduce
from .harness import ConfigError, load_claims, run_suite
from .notation import parse_class
from .shift import (cone_reduce, hasse_shift, hasse_weight, in_liftable_cone, in_minimal_cone, le_ha,
                    stratum_weight, theta_divisibility_flag, theta_shift, twist_weight)
from .weights import Weight


class UsageError(Exception):
    pass


def _vec(text: str | None, name: str) -> tuple[int, ...]:
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"--{name} must be a comma separated list of integers, got {text!r}") from None


def _structure(args) -> PlaceStructure:
    if args.p is None:
        raise UsageError("--p is required")
    if args.f and args.places:
        raise UsageError("use either --places or --f, not both")
    degrees = args.f or (_vec(args.places, "places") if args.places else (1,))
    try:
        return PlaceStructure(args.p, tuple(degrees))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _weight(args, st: PlaceStructure) -> Weight:
    k = _vec(args.k, "k")
    l = _vec(args.l, "l") if args.l is not None else (0,) * len(k)
    if len(k) != st.d or len(l) != st.d:
        raise UsageError(f"--k and --l need {st.d} entries for this structure")
    return Weight(k, l)


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _class_text(c: VirtualClass) -> str:
    return str(c)


def _source_class(args, st) -> SymbolicClass:
    if args.expr is not None:
        return parse_class(st, args.expr)
    return SymbolicClass.of_weight(st, _weight(args, st))


def _header(st: PlaceStructure) -> dict:
    return {"p": st.p, "places": list(st.degrees)}


def cmd_decompose(args):
    st = _structure(args)
    cls = reduce(_source_class(args, st))
    _emit(args, {**_header(st), "class": cls.to_json()}, _class_text(cls))


def cmd_oracle(args):
    st = _structure(args)
    cls = brauer_decompose(_source_class(args, st), cap=args.cap)
    _emit(args, {**_header(st), "class": cls.to_json()}, _class_text(cls))


def cmd_jh(args):
    st = _structure(args)
    ws = jh_set(st, _weight(args, st))
    _emit(args, {**_header(st), "weights": [w.to_json() for w in ws]},
          "\n".join(format_serre_weight(w) for w in ws))


def cmd_subquotient(args):
    st = _structure(args)
    a = reduce(parse_class(st, args.a))
    b = reduce(parse_class(st, args.b))
    res = is_subquotient(a, b)
    _emit(args, {**_header(st), "subquotient": res, "difference": (b - a).to_json()}, "true" if res else "false")


def _inertial(args, st, place=0) -> InertialType:
    if args.type == "reducible":
        if args.e1 is None or args.e2 is None:
            raise UsageError("reducible types need --e1 and --e2")
        return InertialType.reducible(st, args.e1, args.e2, ExtensionFlag(args.ext), place)
    if args.type == "irreducible":
        if args.orbit is None:
            raise UsageError("irreducible types need --orbit")
        return InertialType.irreducible(st, args.orbit, place)
    raise UsageError("--type must be reducible or irreducible")


def _candidates_text(cands) -> str:
    lines = []
    for c in cands:
        lines.append(f"{format_serre_weight(c.weight)}  J={{{','.join(map(str, c.J))}}}  {c.certainty.label}")
    return "\n".join(lines)


def cmd_bdj(args):
    st = _structure(args)
    t = _inertial(args, st, args.place)
    cands = bdj_candidates(t)
    _emit(args, {**_header(st), "type": t.to_json(), "candidates": [c.to_json() for c in cands]},
          _candidates_text(cands))


def _parse_local(st, v: int, text: str) -> InertialType:
    parts = text.split(":")
    try:
        if parts[0] == "reducible" and len(parts) in (3, 4):
            e1, e2 = int(parts[1]), int(parts[2])
            ext = ExtensionFlag(parts[3] if len(parts) == 4 else "generic")
            return InertialType.reducible(st, e1, e2, ext, v)
        if parts[0] == "irreducible" and len(parts) == 2:
            a = int(parts[1])
            return InertialType.irreducible(st, a, v)
    except (ValueError, IndexError) as exc:
        if "invalid literal" in str(exc) or "ExtensionFlag" in str(exc):
            raise UsageError(f"bad --local {text!r}: {exc}") from None
        raise
    raise UsageError(f"bad --local {text!r}; use reducible:E1:E2[:EXT] or irreducible:A")


def cmd_bdj_product(args):
    st = _structure(args)
    if not args.local:
        raise UsageError("give one --local per place")
    types = [_parse_local(st, v, s) for v, s in enumerate(args.local)]
    prod_ = bdj_product(st, types)
    rows = [{"weight": w.to_json(), "certainty": c.label} for w, c in prod_.items()]
    _emit(args, {**_header(st), "weights": rows},
          "\n".join(f"{format_serre_weight(w)}  {c.label}" for w, c in prod_.items()))


def cmd_cone(args):
    st = _structure(args)
    k = _vec(args.k, "k")
    if len(k) != st.d:
        raise UsageError(f"--k needs {st.d} entries")
    if args.action == "reduce":
        out = cone_reduce(st, k)
        _emit(args, {**_header(st), "k": list(out)}, f"({','.join(map(str, out))})")
    else:
        res = {"minimal": in_minimal_cone(st, k), "minimal_plus": in_minimal_cone(st, k, positive=True),
               "liftable": in_liftable_cone(st, k)}
        _emit(args, {**_header(st), "k": list(k), **res},
              "\n".join(f"{name}: {'true' if v else 'false'}" for name, v in res.items()))


def cmd_le_ha(args):
    st = _structure(args)
    k1, k2 = _vec(args.k1, "k1"), _vec(args.k2, "k2")
    if len(k1) != st.d or len(k2) != st.d:
        raise UsageError(f"--k1 and --k2 need {st.d} entries")
    ok, n = le_ha(st, k1, k2)
    _emit(args, {**_header(st), "le": ok, "n": list(n) if n else None},
          f"true n=({','.join(map(str, n))})" if ok else "false")


def cmd_shift(args):
    st = _structure(args)
    if args.action == "hasse" and args.k is None:
        h = hasse_weight(st, args.tau)
        _emit(args, {**_header(st), "tau": args.tau, "vector": list(h.vector)},
              f"({','.join(map(str, h.vector))})")
        return
    w = _weight(args, st)
    if args.action == "divisibility":
        flag = theta_divisibility_flag(st, w, args.tau)
        _emit(args, {**_header(st), "flag": flag.value}, flag.value)
        return
    out = theta_shift(st, w, args.tau) if args.action == "theta" else hasse_shift(st, w, args.tau)
    _emit(args, {**_header(st), "weight": out.to_json()}, str(out))


def cmd_stratum(args):
    if args.p is None:
        raise UsageError("--p is required")
    w = stratum_weight(args.p, args.k0, args.k1)
    _emit(args, {"p": args.p, "weight": w.to_json()}, str(w))


def cmd_induced(args):
    if args.p is None:
        raise UsageError("--p is required")
    ks = sorted(induced_character_weights(args.p, args.structure))
    _emit(args, {"p": args.p, "structure": args.structure, "k": [list(k) for k in ks]},
          "\n".join(f"({','.join(map(str, k))})" for k in ks))


def cmd_twist(args):
    st = _structure(args)
    lp = _vec(args.lp, "lp")
    if args.type:
        t = twist_inertial(_inertial(args, st, args.place), lp)
        _emit(args, {**_header(st), "type": t.to_json()}, json.dumps(t.to_json()))
        return
    w = twist_weight(_weight(args, st), lp)
    _emit(args, {**_header(st), "weight": w.to_json()}, str(w))


def cmd_verify(args):
    if args.suite != "paper" and args.fixtures is None:
        raise ConfigError(f"unknown suite {args.suite!r}")
    claims = load_claims(args.fixtures)
    report = run_suite(list(args.p or []), claims, args.claim)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for r in report.reports:
            line = f"{r.status.upper():7} {r.id} p={r.p} checked={r.checked}"
            if r.witness:
                line += f" witness={json.dumps(r.witness)}"
            print(line)
        print("all claims passed" if report.passed else "FAILURES")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swl", description="Serre weight combinatorics for mod p GL2.")
    parser.add_argument("--version", action="version", version=f"swl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, structure=True):
        sp.add_argument("--p", type=int)
        if structure:
            sp.add_argument("--places", help="residue degrees, e.g. 2 or 1,1,1")
            sp.add_argument("--f", type=int, action="append", help="residue degree of the next place")
        sp.add_argument("--json", action="store_true")

    def weight_args(sp, required=False):
        sp.add_argument("--k", required=required)
        sp.add_argument("--l")

    sp = sub.add_parser("decompose", help="Jordan-Hoelder class by rewriting")
    common(sp); weight_args(sp)
    sp.add_argument("--expr", help="symbolic class, e.g. 'e^(-p) Sym[0]^(p-1) Sym[1]^(p+1)'")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("oracle-decompose", help="Jordan-Hoelder class from Brauer characters")
    common(sp); weight_args(sp)
    sp.add_argument("--expr")
    sp.add_argument("--cap", type=int, default=10 ** 4)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("jh", help="Jordan-Hoelder constituents of V_(k,l)")
    common(sp); weight_args(sp, required=True)
    sp.set_defaults(func=cmd_jh)

    sp = sub.add_parser("subquotient", help="is [A] <= [B] in the Grothendieck group")
    common(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_subquotient)

    def type_args(sp, required=True):
        sp.add_argument("--type", choices=["reducible", "irreducible"], required=required)
        sp.add_argument("--e1", type=int)
        sp.add_argument("--e2", type=int)
        sp.add_argument("--ext", default="generic", choices=[f.value for f in ExtensionFlag])
        sp.add_argument("--orbit", type=int)
        sp.add_argument("--place", type=int, default=0)

    sp = sub.add_parser("bdj", help="weight candidates for one inertial type")
    common(sp); type_args(sp)
    sp.set_defaults(func=cmd_bdj)

    sp = sub.add_parser("bdj-product", help="product of local weight sets")
    common(sp)
    sp.add_argument("--local", action="append", help="reducible:E1:E2[:EXT] or irreducible:A, one per place")
    sp.set_defaults(func=cmd_bdj_product)

    sp = sub.add_parser("cone", help="cone membership or reduction")
    sp.add_argument("action", choices=["member", "reduce"])
    common(sp)
    sp.add_argument("--k", required=True)
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("le-ha", help="k1 <=_Ha k2 with witness")
    common(sp)
    sp.add_argument("--k1", required=True)
    sp.add_argument("--k2", required=True)
    sp.set_defaults(func=cmd_le_ha)

    sp = sub.add_parser("shift", help="Theta / Hasse weight shifts")
    sp.add_argument("action", choices=["theta", "hasse", "divisibility"])
    common(sp); weight_args(sp)
    sp.add_argument("--tau", type=int, required=True)
    sp.set_defaults(func=cmd_shift)

    sp = sub.add_parser("stratum-weight", help="quaternionic weight attached to (k0, k1)")
    common(sp, structure=False)
    sp.add_argument("--k0", type=int, required=True)
    sp.add_argument("--k1", type=int, required=True)
    sp.set_defaults(func=cmd_stratum)

    sp = sub.add_parser("induced", help="weights forced for induced ramified characters")
    common(sp, structure=False)
    sp.add_argument("--structure", choices=["split", "inert"], required=True)
    sp.set_defaults(func=cmd_induced)

    sp = sub.add_parser("twist", help="twist a weight (or an inertial type) by l'")
    common(sp); weight_args(sp); type_args(sp, required=False)
    sp.add_argument("--lp", required=True)
    sp.set_defaults(func=cmd_twist)

    sp = sub.add_parser("verify", help="run the claim registry")
    sp.add_argument("--suite", default="paper")
    sp.add_argument("--fixtures", help="path to a fixture JSON file")
    sp.add_argument("--p", type=int, action="append")
    sp.add_argument("--claim", action="append", help="restrict to these claim ids")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"swl: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"swl: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
