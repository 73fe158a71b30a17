"""Text notation for symbolic classes.

A class is a signed sum of terms such as ``2 e^(1-p) Sym[0]^(p-2) Sym[1]^1``.
``e`` (or ``det``) is det of the place's first embedding, ``Sym[i]^n`` the
symmetric power through embedding i (``Sym^n`` means ``Sym[0]^n``), and
places are separated by ``|``.  Missing Sym factors have degree 0.
Exponents are integers, names bound in the environment (``p`` is always
bound), or parenthesized integer expressions using + - * // % ** and exact /.
"""
from __future__ import annotations

import ast
import operator
from typing import Mapping

from .arith import PlaceStructure
from .groth import Symbol, SymbolicClass


class NotationError(ValueError):
    pass


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}


_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def eval_int(text: str, env: Mapping[str, int]) -> int:
    """Evaluate an integer expression without ``eval``; comparisons give 0 or 1."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise NotationError(f"bad integer expression {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise NotationError(f"unbound name {node.id!r} in {text!r}")
            return int(env[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                fn = _CMPOPS.get(type(op))
                if fn is None:
                    raise NotationError(f"unsupported comparison in {text!r}")
                if not fn(left, right):
                    return 0
                left = right
            return 1
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return int(all(vals) if isinstance(node.op, ast.And) else any(vals))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
            return int(not ev(node.operand))
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                if b == 0 or a % b:
                    raise NotationError(f"inexact division in {text!r}")
                return a // b
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise NotationError(f"unsupported operator in {text!r}")
            if isinstance(node.op, ast.Pow) and (b < 0 or b > 64):
                raise NotationError(f"exponent out of range in {text!r}")
            return op(a, b)
        raise NotationError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms, depth, start, sign = [], 0, 0, 1
    prev = ""
    i = 0
    s = text.strip()
    if not s:
        raise NotationError("empty class expression")
    while i < len(s):
        ch = s[i]
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch in "+-" and depth == 0 and prev != "^":
            chunk = s[start:i].strip()
            if chunk:
                terms.append((sign, chunk))
            elif i != 0:
                raise NotationError(f"dangling sign in {text!r}")
            sign = 1 if ch == "+" else -1
            start = i + 1
        if not ch.isspace():
            prev = ch
        i += 1
    chunk = s[start:].strip()
    if not chunk:
        raise NotationError(f"expression ends with an operator: {text!r}")
    terms.append((sign, chunk))
    if depth:
        raise NotationError(f"unbalanced brackets in {text!r}")
    return terms


class _Scanner:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def done(self) -> bool:
        self.skip()
        return self.i >= len(self.s)

    def peek(self, prefix: str) -> bool:
        self.skip()
        return self.s.startswith(prefix, self.i)

    def take(self, prefix: str):
        if not self.peek(prefix):
            raise NotationError(f"expected {prefix!r} at position {self.i} in {self.s!r}")
        self.i += len(prefix)

    def integer(self) -> int | None:
        self.skip()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            return None
        val = int(self.s[self.i:j])
        self.i = j
        return val

    def exponent(self) -> str:
        self.skip()
        if self.i < len(self.s) and self.s[self.i] in "({":
            close = ")" if self.s[self.i] == "(" else "}"
            depth, j = 0, self.i
            while j < len(self.s):
                if self.s[j] in "({":
                    depth += 1
                elif self.s[j] in ")}":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j >= len(self.s) or self.s[j] != close:
                raise NotationError(f"unbalanced exponent in {self.s!r}")
            body = self.s[self.i + 1:j]
            self.i = j + 1
            return body
        j = self.i
        if j < len(self.s) and self.s[j] in "+-":
            j += 1
        k = j
        while k < len(self.s) and (self.s[k].isalnum() or self.s[k] == "_"):
            k += 1
        if k == j:
            raise NotationError(f"missing exponent at position {self.i} in {self.s!r}")
        body = self.s[self.i:k]
        self.i = k
        return body


def parse_term(structure: PlaceStructure, text: str, env: Mapping[str, int]) -> tuple[int, Symbol]:
    sc = _Scanner(text)
    coef = 1
    val = sc.integer()
    if val is not None:
        coef = val
        if sc.peek("*"):
            sc.take("*")
    place = 0
    n = [[0] * f for f in structure.degrees]
    seen = [set() for _ in structure.degrees]
    e = [0] * structure.num_places
    while not sc.done():
        if sc.peek("|"):
            sc.take("|")
            place += 1
            if place >= structure.num_places:
                raise NotationError(f"too many places in {text!r}")
            continue
        if sc.peek("Sym"):
            sc.take("Sym")
            idx = 0
            if sc.peek("["):
                sc.take("[")
                idx = sc.integer()
                if idx is None:
                    raise NotationError(f"bad Sym index in {text!r}")
                sc.take("]")
            if not 0 <= idx < structure.degrees[place]:
                raise NotationError(f"Sym index {idx} out of range at place {place}")
            if idx in seen[place]:
                raise NotationError(f"repeated Sym[{idx}] in one term: {text!r}")
            seen[place].add(idx)
            sc.take("^")
            n[place][idx] = eval_int(sc.exponent(), env)
            continue
        if sc.peek("det") or sc.peek("e"):
            sc.take("det" if sc.peek("det") else "e")
            sc.take("^")
            e[place] += eval_int(sc.exponent(), env)
            continue
        if sc.peek("*"):
            sc.take("*")
            continue
        raise NotationError(f"unexpected input at position {sc.i} in {text!r}")
    return coef, Symbol.make(structure, n, e)


def parse_class(structure: PlaceStructure, text: str, env: Mapping[str, int] | None = None) -> SymbolicClass:
    """Parse a signed sum of symbols; ``p`` is bound automatically."""
    scope = {"p": structure.p}
    if env:
        scope.update(env)
    if text.strip() == "0":
        return SymbolicClass(structure)
    terms = []
    for sign, chunk in _split_terms(text):
        coef, sym = parse_term(structure, chunk, scope)
        terms.append((sym, sign * coef))
    return SymbolicClass(structure, terms)
