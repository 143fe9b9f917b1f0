"""Regular neighborhood of the distinguished component and the pieces around it.

The cell structure of the capped surface is stored as a generalized map.
A flag is a pair (ray, side): a ray is one of the ``2k + 2`` directions in
which the critical level leaves a saddle, and the side says whether we look
at the part of the neighborhood above (+) or below (-) the level. Flag ``x``
has id ``2 * ray + (0 if side is + else 1)`` and three involutions act on
flags:

* ``alpha0``: other end of the same arc, same side;
* ``alpha1``: other ray bounding the sector on this side of the ray;
* ``alpha2``: the other side (``x ^ 1``).

Faces are the orbits of <alpha0, alpha1>, arcs those of <alpha0, alpha2>,
vertices those of <alpha1, alpha2>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import EpsilonCollapse, PieceMismatch, TheoremViolation
from .field import MorseField
from .levelset import slab_components, trace_level_curves
from .reeb import ReebGraph
from .surf import Edge, PieceKind, PieceTag, SurfaceMesh, classify_piece, cut_along_curves, edge_key


def epsilon_for(values: Sequence[float], c: float, factor: float = 0.5) -> float:
    """``factor`` times the distance from ``c`` to the nearest other vertex value."""
    gaps = [abs(x - c) for x in values if x != c]
    if not gaps or min(gaps) == 0:
        raise EpsilonCollapse(f"no room around level {c}")
    if not 0 < factor <= 0.5:
        raise EpsilonCollapse(f"epsilon factor {factor} outside (0, 1/2]")
    return factor * min(gaps)


# --- regular neighborhood and pieces ------------------------------------------


@dataclass(frozen=True)
class Piece:
    index: int  # 0 for the annulus at the boundary, 1..n for the disks
    component: int  # component id in the cut mesh
    kind: PieceKind
    critical: tuple[tuple[str, float], ...]  # (kind, value) of the critical points inside

    def to_json(self) -> dict:
        return {
            "index": self.index,
            **self.kind.to_json(),
            "critical": [[k, v] for k, v in self.critical],
        }


@dataclass(frozen=True)
class Decomposition:
    field: MorseField
    vertex: int  # Reeb vertex of K
    level: float
    epsilon: float
    saddles: tuple[int, ...]  # critical vertices of K
    cut_mesh: SurfaceMesh  # M cut along the boundary of N
    cut_values: tuple[float, ...]
    face_parent: tuple[int, ...]  # cut-mesh triangle -> original triangle
    neighborhood: int  # component of N in the cut mesh
    chi_neighborhood: int
    pieces: tuple[Piece, ...]  # Y_0, Y_1, ..., Y_n

    @property
    def n(self) -> int:
        return len(self.pieces) - 1

    def piece_of_vertex(self, v: int) -> int | None:
        comp = self.cut_mesh.vertex_component[v]
        for p in self.pieces:
            if p.component == comp:
                return p.index
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "level": self.level,
            "epsilon": self.epsilon,
            "saddles": list(self.saddles),
            "chi_N": self.chi_neighborhood,
            "pieces": [p.to_json() for p in self.pieces],
        }


@dataclass(frozen=True)
class Neighborhood:
    level: float
    epsilon: float
    saddles: tuple[int, ...]
    faces: frozenset[int]
    lower: tuple  # level curves at c - eps bounding N
    upper: tuple  # level curves at c + eps bounding N


def regular_neighborhood(
    f: MorseField, g: ReebGraph, vertex: int, eps_factor: float = 0.5
) -> Neighborhood:
    rv = g.vertices[vertex]
    if not rv.critical_vertices:
        raise TheoremViolation(f"Reeb vertex {vertex} is not a critical component")
    m, values = f.mesh, f.values
    c = rv.level
    eps = epsilon_for(values, c, eps_factor)
    if any(abs(b - c) <= eps for b in f.boundary_levels):
        raise EpsilonCollapse(f"boundary level within {eps} of {c}")
    slab = slab_components(m, values, c - eps, c + eps)
    comp = slab.vertex_comp[rv.critical_vertices[0]]
    faces = frozenset(slab.faces(comp))
    crit = f.critical
    inside = [v for v, k in slab.vertex_comp.items() if k == comp]
    stray = [v for v in inside if v in crit and v not in rv.critical_vertices]
    if stray:
        raise TheoremViolation(f"critical vertices {stray} in the neighborhood but not in K")

    def bounding(level):
        return tuple(cv for cv in trace_level_curves(m, values, level) if cv.triangles[0] in faces)

    return Neighborhood(c, eps, rv.critical_vertices, faces, bounding(c - eps), bounding(c + eps))


def decompose(f: MorseField, g: ReebGraph, vertex: int, eps_factor: float = 0.5) -> Decomposition:
    """Cut M along the boundary of N and classify what is left.

    The two boundary levels of N are cut one after the other, because a
    single triangle may meet both.
    """
    m, values = f.mesh, f.values
    nb = regular_neighborhood(f, g, vertex, eps_factor)
    c, eps = nb.level, nb.epsilon

    cut1 = cut_along_curves(m, nb.lower, values)
    wanted = {frozenset(cv.triangles) for cv in nb.upper}
    upper1 = [
        cv
        for cv in trace_level_curves(cut1.mesh, cut1.values, c + eps)
        if frozenset(cut1.face_parent[t] for t in cv.triangles) in wanted
    ]
    if len(upper1) != len(nb.upper):
        raise TheoremViolation("upper boundary of N lost track after the first cut")
    cut2 = cut_along_curves(cut1.mesh, upper1, cut1.values)
    cm = cut2.mesh
    parent = tuple(cut1.face_parent[p] for p in cut2.face_parent)

    n_comp = cm.vertex_component[nb.saddles[0]]
    y0_comp = cm.vertex_component[m.boundary_cycles[0][0]]
    if n_comp == y0_comp:
        raise PieceMismatch("the neighborhood touches the boundary")

    crit = f.critical
    content: dict[int, list] = {}
    for v, kind in sorted(crit.items()):
        content.setdefault(cm.vertex_component[v], []).append((str(kind), values[v]))
    others = sorted(
        (k for k in range(cm.n_components) if k not in (n_comp, y0_comp)),
        key=lambda k: min(cm.component_vertices(k)),
    )
    pieces = []
    for i, k in enumerate([y0_comp, *others]):
        kind = classify_piece(cm, k)
        want = PieceTag.ANNULUS if i == 0 else PieceTag.DISK
        if kind.tag is not want:
            raise PieceMismatch(f"piece Y_{i} is {kind.tag.value}, expected {want.value}")
        pieces.append(Piece(i, k, kind, tuple(sorted(content.get(k, [])))))
    chi_n = cm.euler_characteristic(n_comp)
    if chi_n != -(len(pieces) - 1):
        raise PieceMismatch(f"chi(N) = {chi_n} but there are {len(pieces) - 1} disks")
    return Decomposition(
        f, vertex, c, eps, nb.saddles, cm, cut2.values, parent, n_comp, chi_n, tuple(pieces)
    )


# --- the cell structure of the capped surface ---------------------------------


@dataclass(frozen=True)
class Face:
    flags: tuple[int, ...]  # boundary walk, alternating alpha1 / alpha0 steps, min flag first
    sign: int
    label: tuple
    piece: int | None

    @property
    def plus_class(self) -> frozenset[int]:
        """Flags inducing the chosen orientation: those at even positions."""
        return frozenset(self.flags[::2])

    @property
    def length(self) -> int:
        return len(self.flags) // 2


@dataclass(frozen=True)
class CWPartition:
    cells0: tuple[int, ...]  # saddle ids
    levels: tuple[float, ...]  # level of each 0-cell
    ray_vertex: tuple[int, ...]  # ray -> index into cells0
    alpha0: tuple[int, ...]
    alpha1: tuple[int, ...]
    cells1: tuple[tuple[int, int], ...]  # arcs as pairs of rays
    faces: tuple[Face, ...]
    face_of_flag: tuple[int, ...]
    y0: int  # face holding the boundary (capped)
    disks: tuple[int, ...]  # faces of Y_1..Y_n in order

    @property
    def n_flags(self) -> int:
        return len(self.alpha0)

    @property
    def counts(self) -> tuple[int, int, int]:
        return (len(self.cells0), len(self.cells1), len(self.faces))

    @property
    def euler(self) -> int:
        v, e, f = self.counts
        return v - e + f

    def alpha(self, i: int, x: int) -> int:
        return (self.alpha0, self.alpha1)[i][x] if i < 2 else x ^ 1

    def vertex_of_flag(self, x: int) -> int:
        return self.ray_vertex[x // 2]

    def edge_of_flag(self, x: int) -> int:
        r = x // 2
        for i, arc in enumerate(self.cells1):
            if r in arc:
                return i
        raise KeyError(x)

    def vertex_flags(self, v: int) -> tuple[int, ...]:
        """Flags around a 0-cell, alternating alpha1 / alpha2, min flag first."""
        start = min(x for x in range(self.n_flags) if self.vertex_of_flag(x) == v)
        return _cycle(start, self.alpha1, [y ^ 1 for y in range(self.n_flags)])

    def boundary_words(self) -> list[list[tuple[int, int]]]:
        """Per face, the cyclic word of (arc, direction) it runs along."""
        words = []
        for face in self.faces:
            word = []
            fl = face.flags
            for i in range(1, len(fl), 2):
                a, b = fl[i], fl[(i + 1) % len(fl)]
                arc = self.edge_of_flag(a)
                word.append((arc, 1 if self.cells1[arc][0] == a // 2 else -1))
                assert self.alpha0[a] == b
            words.append(word)
        return words

    def to_json(self) -> list[int]:
        return list(self.counts)


def _cycle(start: int, first: Sequence[int], second: Sequence[int]) -> tuple[int, ...]:
    out = [start]
    x, use_first = start, True
    while True:
        x = first[x] if use_first else second[x]
        use_first = not use_first
        if x == start and use_first:
            break
        out.append(x)
    return tuple(out)


def build_partition(
    saddle_ids: Sequence[int],
    levels: Sequence[float],
    sector_signs: Sequence[Sequence[int]],
    partner: Sequence[int],
    face_info: Callable[[int, int], tuple[tuple, int | None]],
    y0: int | Callable[[list[Face]], int],
) -> CWPartition:
    """Assemble the generalized map from sector signs and the arc pairing.

    ``sector_signs[v][i]`` is the sign of the sector between rays ``i`` and
    ``i + 1`` at saddle ``v`` (rays numbered consecutively over all saddles).
    ``face_info(ray, sign)`` gives the label and the piece index of the face
    on that side of the ray. ``y0`` is a face index or a chooser.
    """
    ray_vertex, local, offset = [], [], []
    for v, signs in enumerate(sector_signs):
        d = len(signs)
        if d < 4 or d % 2 or any(signs[i] == signs[(i + 1) % d] for i in range(d)):
            raise TheoremViolation(f"saddle {saddle_ids[v]} has bad sector signs {signs}")
        offset.append(len(ray_vertex))
        for i in range(d):
            ray_vertex.append(v)
            local.append(i)
    n_rays = len(ray_vertex)
    if sorted(partner) != list(range(n_rays)) or any(
        partner[partner[r]] != r or partner[r] == r for r in range(n_rays)
    ):
        raise TheoremViolation("arc pairing is not a fixed-point-free involution")

    alpha0 = [0] * (2 * n_rays)
    alpha1 = [0] * (2 * n_rays)
    for r in range(n_rays):
        v, i = ray_vertex[r], local[r]
        d = len(sector_signs[v])
        for s, bit in ((1, 0), (-1, 1)):
            x = 2 * r + bit
            alpha0[x] = 2 * partner[r] + bit
            # ray i sits between sector i - 1 and sector i
            j = (i + 1) % d if sector_signs[v][i] == s else (i - 1) % d
            alpha1[x] = 2 * (offset[v] + j) + bit

    faces, face_of_flag = [], [-1] * (2 * n_rays)
    for x in range(2 * n_rays):
        if face_of_flag[x] >= 0:
            continue
        cyc = _cycle(x, alpha1, alpha0)
        sign = 1 if x % 2 == 0 else -1
        label, piece = face_info(x // 2, sign)
        for y in cyc:
            face_of_flag[y] = len(faces)
        faces.append(Face(cyc, sign, label, piece))

    arcs = tuple(sorted({tuple(sorted((r, partner[r]))) for r in range(n_rays)}))
    y0_index = y0 if isinstance(y0, int) else y0(faces)
    disks = tuple(
        sorted(
            (i for i in range(len(faces)) if i != y0_index),
            key=lambda i: (faces[i].piece if faces[i].piece is not None else 0, faces[i].flags[0]),
        )
    )
    return CWPartition(
        tuple(saddle_ids),
        tuple(levels),
        tuple(ray_vertex),
        tuple(alpha0),
        tuple(alpha1),
        arcs,
        tuple(faces),
        tuple(face_of_flag),
        y0_index,
        disks,
    )


def saddle_rays(
    m: SurfaceMesh, values: Sequence[float], v: int
) -> tuple[list[int], list[tuple[Edge, int, int]]]:
    """Sector signs around a saddle and, per ray, its link edge together with
    the link vertices just before and just after it."""
    link = m.link(v)
    k = len(link)
    s = [1 if values[u] > values[v] else -1 for u in link]
    cuts = [t for t in range(k) if s[t] != s[(t + 1) % k]]
    signs, rays = [], []
    for t in cuts:
        before, after = link[t], link[(t + 1) % k]
        rays.append((edge_key(before, after), before, after))
        signs.append(s[(t + 1) % k])
    return signs, rays


def trace_arc(m: SurfaceMesh, values: Sequence[float], c: float, start: int, link_edge: Edge) -> tuple[int, Edge]:
    """Follow the level ``c`` from saddle ``start`` out through ``link_edge``
    until it reaches a critical vertex; return that vertex and its link edge."""
    def other_face(e, t):
        fs = m.edge_faces(e)
        if len(fs) != 2:
            raise TheoremViolation(f"critical level reaches the boundary at {e}")
        return fs[0] if fs[1] == t else fs[1]

    def crossed(a, b):
        return (values[a] - c) * (values[b] - c) < 0

    t = m.triangle_with(start, *link_edge)
    e = link_edge
    for _ in range(4 * m.n_faces + 4):
        t = other_face(e, t)
        (x,) = set(m.triangles[t]) - set(e)
        if values[x] == c:
            if not m.link_is_cycle(x):
                raise TheoremViolation(f"critical level touches boundary vertex {x}")
            link = m.link(x)
            k = len(link)
            s = [values[u] > c for u in link]
            changes = [(link[i], link[(i + 1) % k]) for i in range(k) if s[i] != s[(i + 1) % k]]
            if len(changes) != 2:  # another saddle: the arc ends here
                return x, e
            e = edge_key(*(changes[1] if edge_key(*changes[0]) == e else changes[0]))
            t = m.triangle_with(x, *e)
            continue
        a, b = e
        e = edge_key(x, a) if crossed(x, a) else edge_key(x, b)
    raise TheoremViolation("arc tracing did not terminate")


def cw_partition(d: Decomposition) -> CWPartition:
    f = d.field
    m, values, c = f.mesh, f.values, d.level
    saddles = list(d.saddles)
    all_signs, ray_data = [], []
    for v in saddles:
        signs, rays = saddle_rays(m, values, v)
        all_signs.append(signs)
        ray_data.extend((v, e, before, after) for e, before, after in rays)
    index = {(v, e): r for r, (v, e, _, _) in enumerate(ray_data)}

    partner = [-1] * len(ray_data)
    for r, (v, e, _, _) in enumerate(ray_data):
        w, e2 = trace_arc(m, values, c, v, e)
        if (w, e2) not in index:
            raise TheoremViolation(f"arc from saddle {v} ends at {w} outside K")
        partner[r] = index[(w, e2)]

    def face_info(ray: int, sign: int):
        _, _, before, after = ray_data[ray]
        sample = after if (values[after] > c) == (sign > 0) else before
        piece = d.piece_of_vertex(sample)
        if piece is None:
            raise TheoremViolation(f"sector vertex {sample} lies inside N")
        return (sign, d.pieces[piece].critical), piece

    xi = build_partition(
        saddles,
        [c] * len(saddles),
        all_signs,
        partner,
        face_info,
        lambda faces: next(i for i, fc in enumerate(faces) if fc.piece == 0),
    )
    pieces_seen = sorted(fc.piece for fc in xi.faces)
    if pieces_seen != list(range(len(d.pieces))):
        raise PieceMismatch(f"faces map to pieces {pieces_seen}, expected 0..{d.n}")
    if xi.euler != 1:
        raise TheoremViolation(f"capped surface has Euler count {xi.euler}, expected 1")
    return xi


@dataclass(frozen=True)
class SignedComponentSet:
    n: int

    @property
    def elements(self) -> tuple[tuple[int, int], ...]:
        return tuple((k, s) for k in range(1, self.n + 1) for s in (1, -1))

    def index(self, k: int, s: int) -> int:
        return 2 * (k - 1) + (0 if s > 0 else 1)

    def __len__(self) -> int:
        return 2 * self.n


def signed_components(d: Decomposition | CWPartition) -> SignedComponentSet:
    n = d.n if isinstance(d, Decomposition) else len(d.disks)
    return SignedComponentSet(n)
