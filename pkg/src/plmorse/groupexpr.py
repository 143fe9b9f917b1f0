"""Symbolic group expressions and the rewrite rules used on them.

"Isomorphic" here means "equal after :func:`simplify`"; nothing deeper is
attempted. Wreath products are opaque constructors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import BadPieceKind, GroupExprError, NotAnnulusAtom
from .surf import PieceKind, PieceTag

Param = Union[int, str]

TIMES = " × "


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class Z:
    power: int = 1


@dataclass(frozen=True)
class Zn:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise GroupExprError(f"Z_{self.m} is not a valid cyclic factor")


@dataclass(frozen=True)
class Atom:
    label: str


@dataclass(frozen=True)
class Product:
    factors: tuple["GroupExpr", ...]

    def __init__(self, factors: Iterable["GroupExpr"]):
        object.__setattr__(self, "factors", tuple(factors))


@dataclass(frozen=True)
class Wreath2:
    inner: "GroupExpr"
    a: Param
    b: Param


@dataclass(frozen=True)
class Wreath1:
    inner: "GroupExpr"
    k: Param


GroupExpr = Union[Trivial, Z, Zn, Atom, Product, Wreath2, Wreath1]


def st(i: int | str) -> Atom:
    return Atom(f"ST(Y_{i})")


# --- canonical form ----------------------------------------------------------

_RANK = {Z: 0, Zn: 1, Atom: 2, Wreath1: 3, Wreath2: 4, Product: 5, Trivial: 6}


def _natural(s: str) -> tuple:
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", s))


def sort_key(e: GroupExpr) -> tuple:
    if isinstance(e, Zn):
        return (_RANK[Zn], (e.m,))
    return (_RANK[type(e)], _natural(render(e)))


def simplify(e: GroupExpr) -> GroupExpr:
    if isinstance(e, Product):
        flat: list[GroupExpr] = []
        stack = list(reversed(e.factors))
        while stack:
            x = stack.pop()
            if isinstance(x, Product):
                stack.extend(reversed(x.factors))
                continue
            x = simplify(x)
            if isinstance(x, Product):
                stack.extend(reversed(x.factors))
            elif not isinstance(x, Trivial):
                flat.append(x)
        zpow = sum(x.power for x in flat if isinstance(x, Z))
        rest = sorted((x for x in flat if not isinstance(x, Z)), key=sort_key)
        factors = ([Z(zpow)] if zpow else []) + rest
        if not factors:
            return Trivial()
        if len(factors) == 1:
            return factors[0]
        return Product(factors)
    if isinstance(e, Wreath1):
        return Wreath1(simplify(e.inner), e.k)
    if isinstance(e, Wreath2):
        return Wreath2(simplify(e.inner), e.a, e.b)
    return e


def isomorphic(x: GroupExpr, y: GroupExpr) -> bool:
    return simplify(x) == simplify(y)


# --- rendering and parsing ---------------------------------------------------


def render(e: GroupExpr) -> str:
    if isinstance(e, Trivial):
        return "trivial"
    if isinstance(e, Z):
        return "Z" if e.power == 1 else f"Z^{e.power}"
    if isinstance(e, Zn):
        return f"Z_{e.m}"
    if isinstance(e, Atom):
        return e.label
    if isinstance(e, Product):
        return TIMES.join(_wrap(f) for f in e.factors) if e.factors else "trivial"
    if isinstance(e, Wreath1):
        return f"{_wrap(e.inner, True)} wr[{e.k}] Z"
    if isinstance(e, Wreath2):
        return f"{_wrap(e.inner, True)} wr[{e.a},{e.b}] Z^2"
    raise TypeError(f"not a group expression: {e!r}")


def _wrap(e: GroupExpr, strict: bool = False) -> str:
    compound = isinstance(e, (Wreath1, Wreath2)) or (isinstance(e, Product) and len(e.factors) > 1)
    if strict and isinstance(e, Product) and len(e.factors) == 1:
        compound = True
    return f"({render(e)})" if compound else render(e)


_WR = re.compile(r" wr\[([^\],]+)(?:,([^\]]+))?\] Z(\^2)?$")


def parse(text: str) -> GroupExpr:
    """Inverse of :func:`render`."""
    text = text.strip()
    if not text:
        raise GroupExprError("empty expression")
    parts = _split_top(text, TIMES)
    if len(parts) > 1:
        return Product(parse(p) for p in parts)
    m = _WR.search(text)
    if m and _depth_ok(text[: m.start()]):
        inner = parse(_unwrap(text[: m.start()]))
        first, second, sq = m.groups()
        if (second is None) != (sq is None):
            raise GroupExprError(f"malformed wreath suffix in {text!r}")
        if second is None:
            return Wreath1(inner, _param(first))
        return Wreath2(inner, _param(first), _param(second))
    if _is_wrapped(text):
        return parse(text[1:-1])
    if text in ("trivial", "1"):
        return Trivial()
    if text == "Z":
        return Z()
    if m := re.fullmatch(r"Z\^(\d+)", text):
        return Z(int(m.group(1)))
    if m := re.fullmatch(r"Z_(\d+)", text):
        return Zn(int(m.group(1)))
    return Atom(text)


def _param(s: str) -> Param:
    s = s.strip()
    return int(s) if s.isdigit() else s


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def _depth_ok(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += (ch in "([") - (ch in ")]")
        if depth < 0:
            return False
    return depth == 0


def _is_wrapped(text: str) -> bool:
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += (ch == "(") - (ch == ")")
        if depth == 0 and i < len(text) - 1:
            return False
    return True


def _unwrap(text: str) -> str:
    return text[1:-1] if _is_wrapped(text) else text


# --- structure formulas ------------------------------------------------------


def kernel_factors(n: int, leaves: dict[int, GroupExpr] | None = None) -> list[GroupExpr]:
    """``Z`` followed by one leaf per piece Y_0..Y_n (n + 2 factors)."""
    leaves = leaves or {}
    return [Z(), *(leaves.get(i, st(i)) for i in range(n + 1))]


def kernel_group(n: int, leaves: dict[int, GroupExpr] | None = None) -> GroupExpr:
    """Kernel of the action on signed disks: Z times the ST groups of Y_0..Y_n."""
    return simplify(Product(kernel_factors(n, leaves)))


_ANNULUS_ATOM = re.compile(r"π0 S\(f\|(?P<x>[^,()]+),∂(?P=x)\)")


def annulus_atom(piece: str) -> Atom:
    return Atom(f"π0 S(f|{piece},∂{piece})")


def annulus_split(e: GroupExpr, inner: GroupExpr | None = None) -> GroupExpr:
    """``π0 S(f|C,∂C)`` is Z (the Dehn twist) times ``π0 S_id(f|C,∂C)``.

    Pass ``inner`` to substitute a known value for the identity-component part.
    """
    if not isinstance(e, Atom) or not (m := _ANNULUS_ATOM.fullmatch(e.label)):
        raise NotAnnulusAtom(f"{render(e)!r} is not an annulus stabilizer atom")
    x = m.group("x")
    rest = inner if inner is not None else Atom(f"π0 S_id(f|{x},∂{x})")
    return simplify(Product([Z(), rest]))


_NEG_CHI_KINDS = {PieceTag.DISK, PieceTag.ANNULUS, PieceTag.MOEBIUS}


def reduce_negative_chi(pieces: Sequence[tuple[PieceKind | PieceTag | str, GroupExpr]]) -> GroupExpr:
    """Product of the piece groups, for a surface of negative Euler characteristic."""
    exprs = []
    for kind, expr in pieces:
        tag = kind.tag if isinstance(kind, PieceKind) else PieceTag(kind)
        if tag not in _NEG_CHI_KINDS:
            raise BadPieceKind(f"piece of kind {tag.value} cannot appear here")
        exprs.append(expr)
    return simplify(Product(exprs))


def torus_rule(
    tree_case: bool,
    inner: GroupExpr | Sequence[GroupExpr],
    a: Param = "a",
    b: Param = "b",
    k: Param = "k",
) -> GroupExpr:
    """Wreath forms on the torus: tree-like Reeb graph or one with a cycle."""
    if not isinstance(inner, (Trivial, Z, Zn, Atom, Product, Wreath1, Wreath2)):
        inner = Product(inner)
    for p in (a, b, k):
        if isinstance(p, int) and p < 1:
            raise GroupExprError(f"wreath parameter must be positive, got {p}")
    if tree_case:
        return simplify(Wreath2(inner, a, b))
    return simplify(Wreath1(inner, k))
