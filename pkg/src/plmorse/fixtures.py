"""Named test surfaces and a seeded generator of random fields on a Moebius band.

Most Moebius fixtures are assembled from a ribbon description of the critical
component K: the sector signs around each saddle and a pairing of the rays
into arcs. Each saddle becomes a small star, each arc a band two rungs long,
each disk face a cone over its boundary polygon (a maximum on the + side, a
minimum on the - side) and the face holding the boundary a collar out to the
boundary circle. Because the band sides are glued by sign, twists come out
of the pairing automatically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .decomp import CWPartition, build_partition
from .errors import UnknownFixture, ValidationError
from .field import validate_field
from .surf import SurfaceMesh, build_surface


@dataclass(frozen=True)
class Fixture:
    name: str
    mesh: SurfaceMesh
    values: tuple[float, ...]
    coords: tuple | None = None


@dataclass(frozen=True)
class RibbonSpec:
    degrees: tuple[int, ...]
    partner: tuple[int, ...]  # ray -> ray, rays numbered saddle by saddle
    y0: int  # face index (in the partition built by :func:`ribbon_partition`)
    boundary: float = -1.0
    level: float = 0.0
    apex: dict[int, float] = field(default_factory=dict)  # face index -> extremum value
    band_length: int = 2


def ribbon_partition(spec: RibbonSpec) -> CWPartition:
    signs = [[1 if i % 2 == 0 else -1 for i in range(d)] for d in spec.degrees]
    return build_partition(
        list(range(len(spec.degrees))),
        [spec.level] * len(spec.degrees),
        signs,
        list(spec.partner),
        lambda r, s: ((s,), None),
        spec.y0,
    )


def assemble(spec: RibbonSpec) -> tuple[SurfaceMesh, tuple[float, ...]]:
    xi = ribbon_partition(spec)
    y0 = xi.faces[spec.y0]
    if (spec.boundary < spec.level) != (y0.sign < 0):
        raise ValidationError("boundary face is on the wrong side of the critical level")
    c = spec.level
    values: list[float] = []

    def new(v: float) -> int:
        values.append(v)
        return len(values) - 1

    # stars: sector i sits between ray i and ray i + 1
    offset, ray_at = [], []
    center, sector = [], []
    for v, d in enumerate(spec.degrees):
        offset.append(len(ray_at))
        center.append(new(c))
        sector.append([new(c + (0.2 if i % 2 == 0 else -0.2)) for i in range(d)])
        ray_at.extend((v, i) for i in range(d))
    tris = []
    for v, d in enumerate(spec.degrees):
        for i in range(d):
            tris.append((center[v], sector[v][i], sector[v][(i + 1) % d]))

    def rung(r: int) -> tuple[int, int]:
        """(plus, minus) endpoints of the link edge a ray crosses."""
        v, i = ray_at[r]
        a, b = sector[v][(i - 1) % spec.degrees[v]], sector[v][i]
        return (a, b) if values[a] > c else (b, a)

    rows: dict[tuple[int, int], list[int]] = {}  # (ray, sign) -> row towards partner
    for r1, r2 in xi.cells1:
        p0, m0 = rung(r1)
        p3, m3 = rung(r2)
        ps = [new(c + 0.2 + 0.05 * (k + 1)) for k in range(spec.band_length)]
        ms = [new(c - 0.2 - 0.05 * (k + 1)) for k in range(spec.band_length)]
        prow, mrow = [p0, *ps, p3], [m0, *ms, m3]
        for k in range(len(prow) - 1):
            tris.append((prow[k], mrow[k], mrow[k + 1]))
            tris.append((prow[k], mrow[k + 1], prow[k + 1]))
        rows[(r1, 1)], rows[(r1, -1)] = ps, ms
        rows[(r2, 1)], rows[(r2, -1)] = ps[::-1], ms[::-1]

    for fi, face in enumerate(xi.faces):
        polygon = []
        fl = face.flags
        for j in range(0, len(fl), 2):
            x, y = fl[j], fl[j + 1]  # corner step x -> alpha1(x) = y
            r = x // 2
            plus, minus = rung(r)
            polygon.append(plus if face.sign > 0 else minus)
            polygon.extend(rows[(y // 2, face.sign)])
        k = len(polygon)
        if fi == spec.y0:
            ring = [new(spec.boundary) for _ in range(k)]
            for j in range(k):
                a, b = polygon[j], polygon[(j + 1) % k]
                tris.append((a, b, ring[(j + 1) % k]))
                tris.append((a, ring[(j + 1) % k], ring[j]))
        else:
            top = spec.apex.get(fi, c + face.sign * 1.0)
            apex = new(top)
            for j in range(k):
                tris.append((polygon[j], polygon[(j + 1) % k], apex))
    return build_surface(tris, len(values)), tuple(values)


# --- ribbon descriptions -----------------------------------------------------------

# one ordinary saddle whose two arcs cross: the figure-eight in the band
_FIG8 = RibbonSpec((4,), (2, 3, 0, 1), y0=1)

RIBBONS: dict[str, RibbonSpec] = {
    "mb-min": _FIG8,
    # same component, boundary at the top and the disk around a minimum
    "mb-case-a": RibbonSpec((4,), (2, 3, 0, 1), y0=0, boundary=1.0),
    "mb-case-b": RibbonSpec((4, 4), (4, 5, 7, 6, 0, 1, 3, 2), y0=1),
    "mb-case-c": RibbonSpec((4, 4, 4), (1, 0, 4, 5, 2, 3, 8, 10, 6, 11, 7, 9), y0=1),
    "mb-case-d": RibbonSpec(
        (4, 4, 6), (4, 8, 3, 2, 0, 13, 7, 6, 1, 11, 12, 9, 10, 5), y0=4
    ),
}


def _from_ribbon(name: str) -> Fixture:
    mesh, values = assemble(RIBBONS[name])
    return Fixture(name, mesh, values)


def _rp2() -> Fixture:
    """The figure-eight fixture with the boundary collar replaced by a minimum."""
    mesh, values = assemble(_FIG8)
    ring = sorted(mesh.boundary_cycles[0])
    # collapse the collar ring into one apex: rebuild with a cone instead
    keep = {v: i for i, v in enumerate(v for v in range(mesh.n_vertices) if v not in set(ring))}
    apex = len(keep)
    tris = []
    ring_set = set(ring)
    for t in mesh.triangles:
        mapped = tuple(apex if v in ring_set else keep[v] for v in t)
        if len(set(mapped)) == 3:
            tris.append(mapped)
    vals = [values[v] for v in range(mesh.n_vertices) if v not in ring_set] + [-1.0]
    return Fixture("rp2", build_surface(tris, apex + 1), tuple(vals))


def _disk_cone(k: int = 6) -> Fixture:
    tris = [(0, 1 + i, 1 + (i + 1) % k) for i in range(k)]
    coords = [(0.0, 0.0, 1.0)] + [
        (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k), 0.0) for i in range(k)
    ]
    return Fixture("disk-cone", build_surface(tris, k + 1, coords), (1.0,) + (0.0,) * k)


def _annulus_linear(k: int = 8) -> Fixture:
    tris = []
    for i in range(k):
        j = (i + 1) % k
        tris += [(i, j, k + j), (i, k + j, k + i)]
    return Fixture("annulus-linear", build_surface(tris, 2 * k), (0.0,) * k + (1.0,) * k)


def _sphere_octa() -> Fixture:
    # 0 top, 1 bottom, 2..5 equator
    eq = [2, 3, 4, 5]
    tris = []
    for i in range(4):
        a, b = eq[i], eq[(i + 1) % 4]
        tris += [(0, a, b), (1, b, a)]
    coords = [(0, 0, 1), (0, 0, -1), (1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    return Fixture(
        "sphere-octa", build_surface(tris, 6, coords), (1.0, -1.0, 0.1, 0.2, 0.3, 0.4)
    )


def _torus_height(nu: int = 12, nv: int = 8, big: float = 2.0, small: float = 0.7) -> Fixture:
    """A standing torus sampled on a grid, height along the symmetry-breaking axis."""
    def vid(i, j):
        return (i % nu) * nv + (j % nv)

    tris, coords, values = [], [], []
    for i in range(nu):
        for j in range(nv):
            tris += [(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)), (vid(i, j), vid(i + 1, j + 1), vid(i, j + 1))]
    for i in range(nu):
        u = 2 * math.pi * (i + 0.25) / nu
        for j in range(nv):
            w = 2 * math.pi * (j + 0.3) / nv
            x = (big + small * math.cos(w)) * math.cos(u)
            y = (big + small * math.cos(w)) * math.sin(u)
            z = small * math.sin(w)
            coords.append((x, y, z))
            values.append(x + 1e-3 * y + 1e-4 * z)
    return Fixture("torus-height", build_surface(tris, nu * nv, coords), tuple(values))


_BUILDERS = {
    "mb-min": lambda: _from_ribbon("mb-min"),
    "mb-case-a": lambda: _from_ribbon("mb-case-a"),
    "mb-case-b": lambda: _from_ribbon("mb-case-b"),
    "mb-case-c": lambda: _from_ribbon("mb-case-c"),
    "mb-case-d": lambda: _from_ribbon("mb-case-d"),
    "disk-cone": _disk_cone,
    "annulus-linear": _annulus_linear,
    "sphere-octa": _sphere_octa,
    "rp2": _rp2,
    "torus-height": _torus_height,
}

FIXTURE_NAMES = tuple(_BUILDERS)
MOEBIUS_FIXTURES = ("mb-min", "mb-case-a", "mb-case-b", "mb-case-c", "mb-case-d")


def fixture(name: str) -> Fixture:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None


# --- random fields on a Moebius band -------------------------------------------------


def moebius_grid(width: int, height: int) -> SurfaceMesh:
    """Strip of ``width`` x ``height`` squares whose ends are glued with a flip.

    Vertex ``(i, j)`` has id ``i * (height + 1) + j``; column ``width`` is
    identified with column 0 upside down.
    """
    def vid(i, j):
        return i * (height + 1) + j

    tris = []
    for i in range(width):
        for j in range(height):
            a, d = vid(i, j), vid(i, j + 1)
            if i < width - 1:
                b, c = vid(i + 1, j), vid(i + 1, j + 1)
            else:
                b, c = vid(0, height - j), vid(0, height - j - 1)
            tris += [(a, b, c), (a, c, d)]
    return build_surface(tris, width * (height + 1))


def _bump_field(rng: random.Random, width: int, height: int, bumps: int) -> list[float]:
    """Sum of Gaussian bumps lifted to the annulus double cover and symmetrized,
    so the result is a genuine function on the band. Boundary is 0."""
    centers = [
        (rng.uniform(0, 2 * math.pi), rng.uniform(0.15, 0.85), rng.uniform(0.3, 1.0), rng.uniform(0.25, 0.5))
        for _ in range(bumps)
    ]

    def g(phi, t):
        total = 0.0
        for cphi, ct, amp, width_ in centers:
            for p, s in ((phi, t), (phi + math.pi, 1 - t)):
                dphi = (p - cphi + math.pi) % (2 * math.pi) - math.pi
                total += amp * math.exp(-(dphi**2) / width_**2 - ((s - ct) ** 2) / 0.03)
        return total

    values = []
    for i in range(width):
        for j in range(height + 1):
            if j in (0, height):
                values.append(0.0)
                continue
            phi, t = math.pi * i / width, j / height
            values.append(1.0 + g(phi, t) + 1e-6 * rng.random())
    return values


def random_moebius(saddles: int, seed: int, width: int = 14, height: int = 6, max_tries: int = 5000) -> Fixture:
    """Rejection-sample a valid field with exactly ``saddles`` saddle vertices.

    Seeded and deterministic. Odd seeds put the boundary at the top level.
    """
    if not 1 <= saddles <= 6:
        raise ValidationError(f"saddle budget must be in 1..6, got {saddles}")
    mesh = moebius_grid(width, height)
    rng = random.Random(f"plmorse:{saddles}:{seed}")
    flip = seed % 2 == 1
    for _ in range(max_tries):
        bumps = rng.randint(max(1, saddles - 1), saddles + 1)
        values = _bump_field(rng, width, height, bumps)
        if flip:
            values = [-x for x in values]
        values = [round(x, 9) for x in values]
        try:
            f = validate_field(mesh, values)
        except ValidationError:
            continue
        if len(f.saddles()) == saddles:
            return Fixture(f"random-s{saddles}-seed{seed}", mesh, tuple(values))
    raise ValidationError(f"no field with {saddles} saddles after {max_tries} tries")


def _connected(xi: CWPartition) -> bool:
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for i in range(3):
            y = xi.alpha(i, x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == xi.n_flags


def random_ribbon(saddles: int, seed: int, max_tries: int = 20000) -> Fixture:
    """A band whose only saddles all sit on one level, with a random ribbon graph.

    Extremum values are drawn from a two-element set per side so that equal
    labels, and with them nontrivial symmetries, show up often.
    """
    if not 1 <= saddles <= 6:
        raise ValidationError(f"saddle budget must be in 1..6, got {saddles}")
    rng = random.Random(f"plmorse-ribbon:{saddles}:{seed}")
    flip = seed % 2 == 1
    for _ in range(max_tries):
        degrees = tuple(6 if rng.random() < 0.2 else 4 for _ in range(saddles))
        rays = list(range(sum(degrees)))
        rng.shuffle(rays)
        partner = [0] * len(rays)
        for a, b in zip(rays[::2], rays[1::2]):
            partner[a], partner[b] = b, a
        xi = ribbon_partition(RibbonSpec(degrees, tuple(partner), 0))
        if xi.euler != 1 or not _connected(xi):
            continue
        side = 1 if flip else -1
        y0 = rng.choice([i for i, face in enumerate(xi.faces) if face.sign == side])
        apex = {i: face.sign * rng.choice((1.0, 1.5)) for i, face in enumerate(xi.faces) if i != y0}
        spec = RibbonSpec(degrees, tuple(partner), y0, boundary=float(side), apex=apex)
        try:
            mesh, values = assemble(spec)
            f = validate_field(mesh, values)
        except ValidationError:
            continue
        if len(f.saddles()) == saddles:
            return Fixture(f"ribbon-s{saddles}-seed{seed}", mesh, values)
    raise ValidationError(f"no ribbon band with {saddles} saddles after {max_tries} tries")


def corpus(per_budget: int = 34, budgets: Sequence[int] = range(1, 7)) -> list[Fixture]:
    """The standard random corpus: ``per_budget`` seeds for each saddle budget."""
    return [random_moebius(s, seed) for s in budgets for seed in range(per_budget)]


def ribbon_corpus(per_budget: int = 10, budgets: Sequence[int] = range(1, 7)) -> list[Fixture]:
    """Random single-level ribbon bands, the multi-saddle complement to :func:`corpus`."""
    return [random_ribbon(s, seed) for s in budgets for seed in range(per_budget)]
