"""Symmetries of the cell structure and their action on signed disks.

An automorphism is a permutation of flags commuting with the three
involutions, preserving sides, saddle levels and face labels, and mapping
the boundary face Y_0 to itself with its orientation. Because the flag graph
is connected, the image of one flag of Y_0 fixes everything; trying each
flag of the orientation class of Y_0 is therefore a complete search.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import product

from .decomp import CWPartition, SignedComponentSet, signed_components
from .groupexpr import Atom, GroupExpr, Product, Trivial, Zn, simplify


@dataclass(frozen=True)
class CellAutomorphism:
    flags: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.flags[x]

    def compose(self, other: "CellAutomorphism") -> "CellAutomorphism":
        """``self`` after ``other``."""
        return CellAutomorphism(tuple(self.flags[y] for y in other.flags))

    def inverse(self) -> "CellAutomorphism":
        inv = [0] * len(self.flags)
        for x, y in enumerate(self.flags):
            inv[y] = x
        return CellAutomorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.flags))


def _extend(xi: CWPartition, base: int, image: int) -> CellAutomorphism | None:
    n = xi.n_flags
    phi = [-1] * n
    phi[base] = image
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for i in range(3):
            y, target = xi.alpha(i, x), xi.alpha(i, phi[x])
            if phi[y] < 0:
                phi[y] = target
                queue.append(y)
            elif phi[y] != target:
                return None
    if -1 in phi or len(set(phi)) != n:
        return None
    for x in range(n):
        y = phi[x]
        if (x ^ y) & 1:
            return None
        if xi.levels[xi.vertex_of_flag(x)] != xi.levels[xi.vertex_of_flag(y)]:
            return None
        if xi.faces[xi.face_of_flag[x]].label != xi.faces[xi.face_of_flag[y]].label:
            return None
    return CellAutomorphism(tuple(phi))


def enumerate_automorphisms(xi: CWPartition) -> list[CellAutomorphism]:
    """All admissible automorphisms, identity first, then by flag images."""
    y0 = xi.faces[xi.y0]
    base = y0.flags[0]
    found = []
    for image in sorted(y0.plus_class):
        a = _extend(xi, base, image)
        if a is not None:
            found.append(a)
    found.sort(key=lambda a: (not a.is_identity, a.flags))
    return found


def is_group(auts: list[CellAutomorphism]) -> bool:
    s = set(auts)
    return all(a.compose(b) in s for a in auts for b in auts) and all(a.inverse() in s for a in auts)


# --- action on signed disks ----------------------------------------------------


def signed_image(xi: CWPartition, a: CellAutomorphism, k: int, s: int) -> tuple[int, int]:
    face = xi.faces[xi.disks[k - 1]]
    y = a(face.flags[0])
    target = xi.face_of_flag[y]
    delta = 1 if y in xi.faces[target].plus_class else -1
    return xi.disks.index(target) + 1, s * delta


def signed_permutation(xi: CWPartition, a: CellAutomorphism, sc: SignedComponentSet) -> tuple[int, ...]:
    return tuple(sc.index(*signed_image(xi, a, k, s)) for k, s in sc.elements)


@dataclass(frozen=True)
class QuotientAction:
    signed: SignedComponentSet
    elements: tuple[tuple[int, ...], ...]  # permutations of signed elements; identity first
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of elements[i] * elements[j]
    representatives: tuple[CellAutomorphism, ...]
    kernel: tuple[CellAutomorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbits(self) -> list[list[tuple[int, int]]]:
        els = self.signed.elements
        seen: set[int] = set()
        out = []
        for i in range(len(els)):
            if i in seen:
                continue
            orbit = sorted({p[i] for p in self.elements})
            seen.update(orbit)
            out.append([els[j] for j in orbit])
        return out


def action_on_signed(xi: CWPartition, auts: list[CellAutomorphism]) -> QuotientAction:
    sc = signed_components(xi)
    perms: dict[tuple[int, ...], CellAutomorphism] = {}
    kernel = []
    ident = tuple(range(len(sc)))
    for a in auts:
        p = signed_permutation(xi, a, sc)
        perms.setdefault(p, a)
        if p == ident:
            kernel.append(a)
    elements = sorted(perms, key=lambda p: (p != ident, p))
    pos = {p: i for i, p in enumerate(elements)}
    table = tuple(
        tuple(pos[tuple(p[q[x]] for x in range(len(sc)))] for q in elements) for p in elements
    )
    return QuotientAction(
        sc, tuple(elements), table, tuple(perms[p] for p in elements), tuple(kernel)
    )


@dataclass(frozen=True)
class FreeActionCertificate:
    passed: bool
    orbit_sizes: tuple[int, ...]
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "orbit_sizes": list(self.orbit_sizes), "witness": self.witness}


def check_free_action(q: QuotientAction) -> FreeActionCertificate:
    els = q.signed.elements
    sizes = tuple(len(o) for o in q.orbits())
    for i, p in enumerate(q.elements[1:], start=1):
        fixed = [els[x] for x in range(len(p)) if p[x] == x]
        if fixed:
            return FreeActionCertificate(False, sizes, {"element": i, "fixes": fixed})
    if any(s != q.order for s in sizes):
        return FreeActionCertificate(False, sizes, {"orbit_sizes": list(sizes)})
    return FreeActionCertificate(True, sizes)


# --- invariant cells -------------------------------------------------------------


@dataclass(frozen=True)
class InvariantCells:
    count: int  # fixed 0-cells plus orientation-preserved fixed 1- and 2-cells
    total: int
    lefschetz: int  # alternating sum with orientation signs
    count_local: int  # as ``count`` but 0-cells need preserved local orientation

    @property
    def dichotomy(self) -> bool:
        return self.count in (1, self.total)

    @property
    def dichotomy_local(self) -> bool:
        return self.count_local in (1, self.total)


def invariant_cell_count(a: CellAutomorphism, xi: CWPartition) -> InvariantCells:
    count = local = 0
    lef = 0
    for v in range(len(xi.cells0)):
        ring = xi.vertex_flags(v)
        x = ring[0]
        if xi.vertex_of_flag(a(x)) != v:
            continue
        count += 1
        lef += 1
        if a(x) in ring[::2]:
            local += 1
    for r1, r2 in xi.cells1:
        img = {a(2 * r1) // 2, a(2 * r2) // 2}
        if img != {r1, r2}:
            continue
        same = a(2 * r1) // 2 == r1
        lef -= 1 if same else -1
        count += same
        local += same
    for face in xi.faces:
        y = a(face.flags[0])
        if y not in face.flags:
            continue
        same = y in face.plus_class
        lef += 1 if same else -1
        count += same
        local += same
    return InvariantCells(count, sum(xi.counts), lef, local)


# --- naming the quotient -----------------------------------------------------------


def _power(table, i: int, k: int) -> int:
    r = 0
    for _ in range(k):
        r = table[r][i]
    return r


def element_order(table, i: int) -> int:
    k, r = 1, i
    while r != 0:
        r = table[r][i]
        k += 1
    return k


def identify_group(q: QuotientAction | tuple[tuple[int, ...], ...]) -> GroupExpr:
    """Name a small group from its multiplication table (identity at index 0).

    Recognizes the trivial group, cyclic groups and finite abelian groups
    (as products of cyclic factors in invariant-factor form); anything else
    becomes an opaque atom.
    """
    table = q.table if isinstance(q, QuotientAction) else q
    n = len(table)
    if n == 1:
        return Trivial()
    if any(element_order(table, i) == n for i in range(n)):
        return Zn(n)
    abelian = all(table[i][j] == table[j][i] for i in range(n) for j in range(n))
    if not abelian:
        return Atom(f"G({n})")
    factors: list[list[int]] = []  # per prime, cyclic p-power factor orders
    rest = n
    p = 2
    primes = []
    while rest > 1:
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    for p in primes:
        e = 0
        while n % p ** (e + 1) == 0:
            e += 1
        # x^(p^k) = 1 picks out the p-part elements of order dividing p^k
        logs = [0] + [
            round(math.log(sum(1 for i in range(n) if _power(table, i, p**k) == 0), p))
            for k in range(1, e + 1)
        ]
        # number of cyclic factors of order >= p^k is logs[k] - logs[k-1]
        at_least = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        orders = []
        for k in range(e, 0, -1):
            exact = at_least[k - 1] - (at_least[k] if k < e else 0)
            orders += [p**k] * exact
        factors.append(sorted(orders, reverse=True))
    width = max(len(f) for f in factors)
    inv = []
    for j in range(width):
        m = 1
        for f in factors:
            if j < len(f):
                m *= f[j]
        inv.append(m)
    return simplify(Product(Zn(m) for m in sorted(inv)))


def cyclic_table(m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple((i + j) % m for j in range(m)) for i in range(m))


def direct_product_table(*orders: int) -> tuple[tuple[int, ...], ...]:
    """Table of Z_{m1} x Z_{m2} x ... with lexicographic element order."""
    els = list(product(*(range(m) for m in orders)))
    pos = {e: i for i, e in enumerate(els)}
    return tuple(
        tuple(pos[tuple((a + b) % m for a, b, m in zip(x, y, orders))] for y in els) for x in els
    )


@dataclass(frozen=True)
class SymmetryReport:
    automorphisms: tuple[CellAutomorphism, ...]
    quotient: QuotientAction
    group: GroupExpr
    free: FreeActionCertificate
    invariant: tuple[InvariantCells, ...]

    def orbit_json(self) -> list[list[str]]:
        return [[f"Y_{k}{'+' if s > 0 else '-'}" for k, s in o] for o in self.quotient.orbits()]


def analyze_symmetry(xi: CWPartition) -> SymmetryReport:
    auts = enumerate_automorphisms(xi)
    q = action_on_signed(xi, auts)
    return SymmetryReport(
        tuple(auts),
        q,
        identify_group(q),
        check_free_action(q),
        tuple(invariant_cell_count(a, xi) for a in auts),
    )


__all__ = [
    "CellAutomorphism",
    "FreeActionCertificate",
    "InvariantCells",
    "QuotientAction",
    "SymmetryReport",
    "action_on_signed",
    "analyze_symmetry",
    "check_free_action",
    "cyclic_table",
    "direct_product_table",
    "element_order",
    "enumerate_automorphisms",
    "identify_group",
    "invariant_cell_count",
    "is_group",
]
