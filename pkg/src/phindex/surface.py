"""Combinatorial closed surfaces.

A surface is a bare face list: no coordinates, no embedding. Everything
downstream (Euler characteristic, the 1885 vertex identity, the discrete
index sum) is exact integer counting, so validation is strict: every edge
must carry exactly two faces and every vertex link must close into a
single cycle.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import (
    Degenerate,
    ChiMismatch,
    MeshFormatError,
    NotClosed,
    NotManifold,
    RangeError,
)

Face = tuple[int, int, int]


@dataclass(frozen=True)
class Triangulation:
    vertex_count: int
    faces: tuple[Face, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise MeshFormatError("vertex count must be nonnegative",
                                  vertex_count=self.vertex_count)
        faces = []
        for f in self.faces:
            if len(f) != 3:
                raise MeshFormatError("faces must have three vertices", face=f)
            for v in f:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise MeshFormatError("vertex indices must be integers",
                                          face=f)
                if not 0 <= v < self.vertex_count:
                    raise MeshFormatError("vertex index out of range",
                                          face=f, index=v)
            faces.append(tuple(f))
        object.__setattr__(self, "faces", tuple(faces))

    @property
    def sigma0(self) -> int:
        return self.vertex_count

    @property
    def sigma1(self) -> int:
        return len(self.edge_faces())

    @property
    def sigma2(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.sigma0 - self.sigma1 + self.sigma2

    def edge_faces(self) -> dict[frozenset, list[int]]:
        """Map of undirected edge to the indices of the faces touching it."""
        incidence: dict[frozenset, list[int]] = defaultdict(list)
        for k, (a, b, c) in enumerate(self.faces):
            for e in ((a, b), (b, c), (c, a)):
                incidence[frozenset(e)].append(k)
        return dict(incidence)

    def degrees(self) -> tuple[int, ...]:
        """Number of faces at each vertex (equals the edge degree once the
        triangulation validates as a closed surface)."""
        nu = [0] * self.vertex_count
        for f in self.faces:
            for v in f:
                nu[v] += 1
        return tuple(nu)


@dataclass(frozen=True)
class ValidationReport:
    sigma0: int
    sigma1: int
    sigma2: int
    chi: int
    orientable: bool


def oriented_faces(t: Triangulation) -> tuple[Face, ...] | None:
    """Coherent orientation of every face, or None when no such choice
    exists. Orientations propagate across shared edges; within each
    connected component the first face keeps its stored order."""
    edge_faces = t.edge_faces()
    chosen: dict[int, Face] = {}
    for seed in range(len(t.faces)):
        if seed in chosen:
            continue
        chosen[seed] = t.faces[seed]
        queue = [seed]
        while queue:
            k = queue.pop()
            a, b, c = chosen[k]
            for e in ((a, b), (b, c), (c, a)):
                neighbours = edge_faces.get(frozenset(e), ())
                for m in neighbours:
                    if m == k:
                        continue
                    p, q, r = t.faces[m]
                    # The neighbour must traverse the shared edge in the
                    # opposite direction.
                    want = (e[1], e[0])
                    induced = (p, q, r) if want in _arcs((p, q, r)) \
                        else (p, r, q)
                    if m in chosen:
                        if _arcs(chosen[m]) != _arcs(induced):
                            return None
                    else:
                        chosen[m] = induced
                        queue.append(m)
    return tuple(chosen[k] for k in range(len(t.faces)))


def _arcs(f: Face) -> frozenset:
    a, b, c = f
    return frozenset(((a, b), (b, c), (c, a)))


def validate_triangulation(t: Triangulation) -> ValidationReport:
    seen_sets: dict[frozenset, Face] = {}
    for f in t.faces:
        if len(set(f)) != 3:
            raise Degenerate("face repeats a vertex", face=f)
        key = frozenset(f)
        if key in seen_sets:
            raise NotManifold("face appears twice", face=f)
        seen_sets[key] = f

    edge_faces = t.edge_faces()
    for edge, at in edge_faces.items():
        if len(at) == 1:
            raise NotClosed("boundary edge", edge=tuple(sorted(edge)))
        if len(at) > 2:
            raise NotManifold("edge lies on more than two faces",
                              edge=tuple(sorted(edge)), count=len(at))

    for v in range(t.vertex_count):
        _check_link(t, v)

    oriented = oriented_faces(t)
    return ValidationReport(
        sigma0=t.sigma0,
        sigma1=t.sigma1,
        sigma2=t.sigma2,
        chi=t.euler_characteristic,
        orientable=oriented is not None,
    )


def _check_link(t: Triangulation, v: int):
    """The faces around v must close into one cycle of link edges."""
    link: dict[int, list[int]] = defaultdict(list)
    edges = 0
    for f in t.faces:
        if v not in f:
            continue
        others = [w for w in f if w != v]
        a, b = others
        link[a].append(b)
        link[b].append(a)
        edges += 1
    if edges == 0:
        raise NotManifold("vertex lies on no face", vertex=v)
    for w, nbrs in link.items():
        if len(nbrs) != 2:
            raise NotManifold("vertex link is not a single cycle",
                              vertex=v, at=w)
    start = next(iter(link))
    prev, cur = None, start
    visited = 1
    while True:
        a, b = link[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        if cur == start:
            break
        visited += 1
    if visited != len(link):
        raise NotManifold("vertex link is not a single cycle", vertex=v)


# ------------------------------------------------------------------ fixtures

TETRAHEDRON_FACES: tuple[Face, ...] = (
    (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

# Möbius-Kantor torus on Z_7: faces {i, i+1, i+3} and {i, i+2, i+3}.
TORUS7_FACES: tuple[Face, ...] = tuple(
    [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)])

# Antipodal quotient of the icosahedron: the smallest projective plane.
RP6_FACES: tuple[Face, ...] = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3))


def tetrahedron() -> Triangulation:
    return Triangulation(4, TETRAHEDRON_FACES)


def seven_vertex_torus() -> Triangulation:
    return Triangulation(7, TORUS7_FACES)


def projective_plane() -> Triangulation:
    return Triangulation(6, RP6_FACES)


def connected_sum(left: Triangulation, right: Triangulation) -> Triangulation:
    """Remove the first face of each summand and identify the two rims.

    When both summands admit coherent orientations the rims are glued
    orientation-reversingly, so the sum of orientable surfaces stays
    orientable.
    """
    lf = oriented_faces(left) or left.faces
    rf = oriented_faces(right) or right.faces
    (a, b, c), lrest = lf[0], lf[1:]
    (d, e, f), rrest = rf[0], rf[1:]

    relabel: dict[int, int] = {d: b, e: a, f: c}
    fresh = left.vertex_count
    for v in range(right.vertex_count):
        if v not in relabel:
            relabel[v] = fresh
            fresh += 1

    faces = list(lrest)
    faces.extend(tuple(relabel[v] for v in face) for face in rrest)
    return Triangulation(fresh, tuple(faces))


def generate_surface(*, genus: int | None = None,
                     crosscaps: int | None = None) -> Triangulation:
    """Closed surface of the requested topological type.

    Exactly one of genus (orientable, 0..8) and crosscaps (non-orientable,
    1..8) must be given; the fixtures are iterated connected sums of the
    seven-vertex torus resp. the six-vertex projective plane.
    """
    if (genus is None) == (crosscaps is None):
        raise RangeError("give exactly one of genus and crosscaps")
    if genus is not None:
        if not 0 <= genus <= 8:
            raise RangeError("genus must lie in 0..8", genus=genus)
        if genus == 0:
            return tetrahedron()
        t = seven_vertex_torus()
        for _ in range(genus - 1):
            t = connected_sum(t, seven_vertex_torus())
        return t
    if not 1 <= crosscaps <= 8:
        raise RangeError("crosscaps must lie in 1..8", crosscaps=crosscaps)
    t = projective_plane()
    for _ in range(crosscaps - 1):
        t = connected_sum(t, projective_plane())
    return t


# ------------------------------------------------------- index-sum identities

@dataclass(frozen=True)
class VertexCountReport:
    sigma0: int
    sigma1: int
    sigma2: int
    chi: int
    vertex_sum: int         # sum over vertices of (2 - degree)
    edge_identity: int      # 2*sigma0 - 3*sigma2
    total: int              # sigma2 + vertex_sum/2
    degrees: tuple[int, ...] = field(repr=False)


def poincare_1885_check(t: Triangulation) -> VertexCountReport:
    """Per-vertex tangency count against the simplex counts.

    Edge contacts cancel in pairs, so the surviving quantity is
    sum(2 - degree) over the vertices; it must equal 2*sigma0 - 3*sigma2,
    and adding one contact per face must reproduce chi.
    """
    validate_triangulation(t)
    degrees = t.degrees()
    vertex_sum = sum(2 - d for d in degrees)
    edge_identity = 2 * t.sigma0 - 3 * t.sigma2
    if vertex_sum != edge_identity:
        raise ChiMismatch("vertex identity failed",
                          vertex_sum=vertex_sum, expected=edge_identity)
    total = t.sigma2 + vertex_sum // 2
    if total != t.euler_characteristic:
        raise ChiMismatch("index total differs from chi",
                          total=total, chi=t.euler_characteristic)
    return VertexCountReport(
        sigma0=t.sigma0, sigma1=t.sigma1, sigma2=t.sigma2,
        chi=t.euler_characteristic, vertex_sum=vertex_sum,
        edge_identity=edge_identity, total=total, degrees=degrees)


@dataclass(frozen=True)
class BarycentricReport:
    sigma0: int
    sigma1: int
    sigma2: int
    chi: int
    singularities: tuple[tuple[str, int, int], ...]
    total: int


def discrete_ph_sum(t: Triangulation) -> BarycentricReport:
    """Index sum of the barycentric pattern: a source at every vertex, a
    saddle on every edge midpoint, a sink in every face."""
    validate_triangulation(t)
    singularities = (
        ("vertex", +1, t.sigma0),
        ("edge-midpoint", -1, t.sigma1),
        ("face-barycenter", +1, t.sigma2),
    )
    total = sum(index * count for _, index, count in singularities)
    if total != t.euler_characteristic:
        raise ChiMismatch("barycentric sum differs from chi",
                          total=total, chi=t.euler_characteristic)
    return BarycentricReport(
        sigma0=t.sigma0, sigma1=t.sigma1, sigma2=t.sigma2,
        chi=t.euler_characteristic, singularities=singularities, total=total)


# ----------------------------------------------------------------- file format

def parse_triangulation(text: str) -> Triangulation:
    """Text format: a "tri" header, one "nv N" line, then "f a b c" lines
    with 0-based vertex indices."""
    lines = text.splitlines()
    significant = [(k + 1, line.strip()) for k, line in enumerate(lines)
                   if line.strip()]
    if not significant or significant[0][1] != "tri":
        raise MeshFormatError('missing "tri" header')
    if len(significant) < 2 or not significant[1][1].startswith("nv"):
        raise MeshFormatError('missing "nv <count>" line')
    lineno, nv_line = significant[1]
    parts = nv_line.split()
    if len(parts) != 2 or not _is_int(parts[1]):
        raise MeshFormatError("malformed vertex count", line=lineno)
    nv = int(parts[1])
    faces = []
    for lineno, line in significant[2:]:
        parts = line.split()
        if parts[0] != "f" or len(parts) != 4:
            raise MeshFormatError("expected f <a> <b> <c>", line=lineno)
        if not all(_is_int(p) for p in parts[1:]):
            raise MeshFormatError("vertex indices must be integers",
                                  line=lineno)
        a, b, c = (int(p) for p in parts[1:])
        for v in (a, b, c):
            if not 0 <= v < nv:
                raise MeshFormatError("vertex index out of range",
                                      line=lineno, index=v)
        faces.append((a, b, c))
    return Triangulation(nv, tuple(faces))


def _is_int(token: str) -> bool:
    return token.lstrip("-").isdigit()


def format_triangulation(t: Triangulation) -> str:
    lines = ["tri", f"nv {t.vertex_count}"]
    lines.extend(f"f {a} {b} {c}" for a, b, c in t.faces)
    return "\n".join(lines) + "\n"


def load_mesh_file(path) -> Triangulation:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_triangulation(handle.read())
