"""Lattice polytopes in ambient dimension <= 3.

Provides exactly the geometry the period pipeline needs: vertex hulls,
faces with unimodular planar charts, lattice-point enumeration,
reflexivity and admissibility checks, polar duality, normalized volume,
affine lattices, and lattice Minkowski decompositions of polygons.  All
computations use exact integer/rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .errors import ParseError
from .linalg import (
    functional_kernel_basis,
    hermite_row_form,
    lattice_basis,
    lattice_equal,
    primitive_vector,
)


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Vertices of the convex hull in counterclockwise order.

    Monotone chain on integer points; collinear boundary points are not
    vertices and are dropped.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _affine_rank(points):
    if not points:
        return -1
    base = points[0]
    diffs = [list(_sub(p, base)) for p in points[1:]]
    return len(lattice_basis(diffs)) if diffs else 0


def _facets_3d(points):
    """Supporting planes of conv(points) in R^3 (full-dimensional input).

    Brute force over point triples; returns a list of
    ``(normal, offset, vertex_tuple)`` with primitive inward normals, so
    that ``<normal, x> >= offset`` for all points with equality exactly
    on the facet.
    """
    pts = sorted(set(points))
    seen = {}
    m = len(pts)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                normal = _cross3(_sub(pts[j], pts[i]), _sub(pts[k], pts[i]))
                if normal == (0, 0, 0):
                    continue
                normal = primitive_vector(normal)
                offset = _dot(normal, pts[i])
                values = [_dot(normal, p) - offset for p in pts]
                if all(v >= 0 for v in values):
                    pass
                elif all(v <= 0 for v in values):
                    normal = tuple(-x for x in normal)
                    offset = -offset
                    values = [-v for v in values]
                else:
                    continue
                if (normal, offset) not in seen:
                    on = tuple(
                        p for p, v in zip(pts, values) if v == 0
                    )
                    seen[(normal, offset)] = on
    return [(n, c, v) for (n, c), v in sorted(seen.items())]


def _saturated_plane_basis(normal):
    """Canonical basis of ``{x in Z^3 : <normal, x> = 0}``."""
    basis = functional_kernel_basis(normal)
    return [row for row in hermite_row_form(basis) if any(row)]


class LatticePolytope:
    """Convex hull of a finite set of points of Z^n, n <= 3.

    The stored vertex list is exactly the vertex set of the hull, in
    sorted order.  Instances are immutable; derived data (facets, lattice
    points, charts) is cached lazily.
    """

    __slots__ = (
        "_n",
        "_vertices",
        "_dim",
        "_id",
        "_facets",
        "_points",
        "_chart",
    )

    def __init__(self, points, id=None):
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of mixed dimensions")
        if not 1 <= n <= 3:
            raise NotImplementedError(
                "polytope geometry is implemented for ambient dimension <= 3"
            )
        self._n = n
        self._id = id
        self._dim = _affine_rank(pts)
        self._vertices = tuple(sorted(self._extract_vertices(pts)))
        self._facets = None
        self._points = None
        self._chart = None

    def _extract_vertices(self, pts):
        d = self._dim
        if d == 0:
            return {pts[0]}
        if d == 1:
            direction = None
            base = pts[0]
            for p in pts[1:]:
                if p != base:
                    direction = primitive_vector(_sub(p, base))
                    break
            heights = [(_dot(direction, p), p) for p in pts]
            return {min(heights)[1], max(heights)[1]}
        if self._n == 2:
            return set(_hull_2d(pts))
        if d == 3:
            verts = set()
            facets = _facets_3d(pts)
            active = {p: [] for p in pts}
            for normal, offset, on in facets:
                for p in on:
                    active[p].append(normal)
            for p, normals in active.items():
                if len(normals) >= 3 and len(lattice_basis(
                        [list(v) for v in normals])) == 3:
                    verts.add(p)
            return verts
        # planar polytope inside Z^3: work in a chart of its plane
        base = pts[0]
        others = [_sub(p, base) for p in pts]
        normal = None
        for i in range(1, len(others)):
            for j in range(i + 1, len(others)):
                c = _cross3(others[i], others[j])
                if c != (0, 0, 0):
                    normal = primitive_vector(c)
                    break
            if normal:
                break
        basis = _saturated_plane_basis(normal)
        flat = [_plane_coords(basis, _sub(p, base)) for p in pts]
        hull = _hull_2d(flat)
        return {
            _add(base, _combine(basis, q)) for q in hull
        }

    # -- basic queries --------------------------------------------------

    @property
    def ambient_dimension(self) -> int:
        return self._n

    @property
    def id(self):
        return self._id

    def with_id(self, id) -> "LatticePolytope":
        p = LatticePolytope(self._vertices, id=id)
        return p

    def dim(self) -> int:
        return self._dim

    @property
    def vertices(self):
        return self._vertices

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self._n == other._n and self._vertices == other._vertices

    def __hash__(self):
        return hash((self._n, self._vertices))

    def __repr__(self):
        return f"LatticePolytope({list(self._vertices)!r})"

    def translate(self, shift) -> "LatticePolytope":
        return LatticePolytope(
            [_add(v, shift) for v in self._vertices], id=self._id
        )

    def normalize_translation(self) -> "LatticePolytope":
        """Translate the lexicographically smallest vertex to the origin."""
        v0 = min(self._vertices)
        return self.translate(tuple(-x for x in v0))

    def apply_matrix(self, u) -> "LatticePolytope":
        return LatticePolytope(
            [
                tuple(
                    sum(u[i][j] * v[j] for j in range(self._n))
                    for i in range(self._n)
                )
                for v in self._vertices
            ],
            id=self._id,
        )

    # -- facets and membership -------------------------------------------

    def facet_inequalities(self):
        """Inequalities ``<a, x> >= c`` cutting out a full-dimensional P.

        Normals are primitive and inward; the list is sorted.
        """
        if self._dim != self._n:
            raise ValueError("facet inequalities need a full-dimensional polytope")
        if self._facets is None:
            if self._n == 1:
                lo = min(v[0] for v in self._vertices)
                hi = max(v[0] for v in self._vertices)
                self._facets = [((1,), lo, (lo,)), ((-1,), -hi, (hi,))]
                self._facets = [
                    (n, c, tuple(v for v in self._vertices if _dot(n, v) == c))
                    for n, c, _ in self._facets
                ]
            elif self._n == 2:
                cycle = _hull_2d(self._vertices)
                facets = []
                for i, v in enumerate(cycle):
                    w = cycle[(i + 1) % len(cycle)]
                    t = _sub(w, v)
                    normal = primitive_vector((-t[1], t[0]))
                    offset = _dot(normal, v)
                    facets.append((normal, offset, tuple(sorted((v, w)))))
                self._facets = sorted(facets)
            else:
                self._facets = _facets_3d(self._vertices)
        return [(n, c) for n, c, _ in self._facets]

    def _facet_data(self):
        self.facet_inequalities()
        return self._facets

    def contains_point(self, point) -> bool:
        """Membership test for integer points."""
        point = tuple(int(x) for x in point)
        if self._dim == self._n:
            return all(
                _dot(a, point) >= c for a, c in self.facet_inequalities()
            )
        chart = self._chart_data()
        coords = chart.to_chart(point)
        if coords is None:
            return False
        if self._dim == 0:
            return True
        return chart.polytope.contains_point(coords)

    def relative_interior_contains(self, point) -> bool:
        point = tuple(int(x) for x in point)
        if self._dim == self._n:
            return all(
                _dot(a, point) > c for a, c in self.facet_inequalities()
            )
        chart = self._chart_data()
        coords = chart.to_chart(point)
        if coords is None:
            return False
        if self._dim == 0:
            return True
        return chart.polytope.relative_interior_contains(coords)

    # -- charts for lower-dimensional polytopes ---------------------------

    def _chart_data(self):
        """Unimodular affine coordinates on the affine hull.

        Maps the lattice points of the affine hull bijectively onto
        Z^dim; the identity for full-dimensional polytopes.
        """
        if self._chart is None:
            self._chart = _Chart.for_points(self._vertices, self._dim)
        return self._chart

    def chart_image(self) -> "LatticePolytope":
        """The polytope in its chart coordinates (full-dimensional there)."""
        if self._dim == self._n:
            return self
        if self._dim == 0:
            raise ValueError("a point has no meaningful chart image")
        return self._chart_data().polytope

    # -- lattice points ----------------------------------------------------

    def lattice_points(self):
        """All points of P cap Z^n in lexicographic order."""
        if self._points is None:
            los = [min(v[i] for v in self._vertices) for i in range(self._n)]
            his = [max(v[i] for v in self._vertices) for i in range(self._n)]
            pts = []
            for p in product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
                if self.contains_point(p):
                    pts.append(p)
            self._points = tuple(pts)
        return self._points

    def interior_lattice_points(self):
        if self._dim != self._n:
            raise ValueError("interior of a non-full-dimensional polytope is empty")
        return tuple(
            p
            for p in self.lattice_points()
            if self.relative_interior_contains(p)
        )

    def relative_interior_lattice_points(self):
        return tuple(
            p
            for p in self.lattice_points()
            if self.relative_interior_contains(p)
        )

    def boundary_lattice_points(self):
        rel = set(self.relative_interior_lattice_points())
        return tuple(p for p in self.lattice_points() if p not in rel)

    # -- the definitions from the glossary ---------------------------------

    def is_admissible(self) -> bool:
        """No lattice points in the relative interior."""
        return not self.relative_interior_lattice_points()

    def polar(self):
        """Vertices of the polar polytope, as rational vectors.

        Requires the origin in the interior.  One polar vertex per facet
        of P, in sorted order.
        """
        ineqs = self.facet_inequalities()
        if any(c >= 0 for _, c in ineqs):
            raise ValueError("polar polytope needs the origin in the interior")
        verts = [
            tuple(Fraction(a_i, -c) for a_i in a) for a, c in ineqs
        ]
        return tuple(sorted(verts))

    def polar_polytope(self) -> "LatticePolytope":
        verts = self.polar()
        if any(x.denominator != 1 for v in verts for x in v):
            raise ValueError("polar polytope is not a lattice polytope")
        return LatticePolytope([tuple(int(x) for x in v) for v in verts])

    def is_reflexive(self) -> bool:
        if self._dim != self._n:
            return False
        if self.interior_lattice_points() != ((0,) * self._n,):
            return False
        try:
            return all(
                x.denominator == 1 for v in self.polar() for x in v
            )
        except ValueError:
            return False

    def normalized_volume(self) -> int:
        """n! times the Euclidean volume; an integer."""
        if self._dim != self._n:
            raise ValueError("normalized volume needs a full-dimensional polytope")
        if self._n == 1:
            return max(v[0] for v in self._vertices) - min(
                v[0] for v in self._vertices
            )
        if self._n == 2:
            cycle = _hull_2d(self._vertices)
            return abs(
                sum(
                    cycle[i][0] * cycle[(i + 1) % len(cycle)][1]
                    - cycle[(i + 1) % len(cycle)][0] * cycle[i][1]
                    for i in range(len(cycle))
                )
            )
        origin = self._vertices[0]
        total = 0
        for face in self.faces(2):
            cycle = face.vertex_cycle()
            sub = 0
            for i in range(1, len(cycle) - 1):
                sub += _det3(
                    _sub(cycle[0], origin),
                    _sub(cycle[i], origin),
                    _sub(cycle[i + 1], origin),
                )
            total += abs(sub)
        return total

    # -- faces --------------------------------------------------------------

    def faces(self, d: int):
        """All d-dimensional faces, 0 <= d < dim."""
        if not 0 <= d < self._dim:
            raise ValueError(f"no faces of dimension {d}")
        if self._dim != self._n:
            raise ValueError("faces are computed for full-dimensional polytopes")
        if d == 0:
            return [Face(self, 0, (v,)) for v in self._vertices]
        if self._n == 2:
            edges = [verts for _, _, verts in self._facet_data()]
            return [Face(self, 1, v) for v in sorted(edges)]
        if d == 2:
            return [
                Face(self, 2, tuple(sorted(verts)), normal=n, offset=c)
                for n, c, verts in self._facet_data()
            ]
        edges = set()
        for n_, c_, verts in self._facet_data():
            face = Face(self, 2, tuple(sorted(verts)), normal=n_, offset=c_)
            cycle = face.vertex_cycle()
            for i, v in enumerate(cycle):
                w = cycle[(i + 1) % len(cycle)]
                edges.add(tuple(sorted((v, w))))
        return [Face(self, 1, e) for e in sorted(edges)]

    def canonical_key(self):
        """Canonical form under GL_n(Z): the minimum, over orderings of
        the vertices, of the Hermite form of the vertex matrix.

        Adequate at desk scale (vertex counts <= 8 or so)."""
        verts = self._vertices
        best = None
        for perm in permutations(verts):
            mat = [[v[i] for v in perm] for i in range(self._n)]
            key = tuple(map(tuple, hermite_row_form(mat)))
            if best is None or key < best:
                best = key
        return best


def _det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _plane_coords(basis, vec):
    """Coordinates of ``vec`` in a 2-row integer basis (must be exact)."""
    cols = len(vec)
    u, w = basis
    for i in range(cols):
        for j in range(i + 1, cols):
            det = u[i] * w[j] - u[j] * w[i]
            if det:
                s_num = vec[i] * w[j] - vec[j] * w[i]
                t_num = u[i] * vec[j] - u[j] * vec[i]
                if s_num % det or t_num % det:
                    return None
                s, t = s_num // det, t_num // det
                if all(
                    s * u[k] + t * w[k] == vec[k] for k in range(cols)
                ):
                    return (s, t)
                return None
    return None


def _combine(basis, coords):
    n = len(basis[0])
    return tuple(
        sum(c * b[i] for c, b in zip(coords, basis)) for i in range(n)
    )


class _Chart:
    """Affine unimodular map from a d-dimensional affine sublattice of
    Z^n onto Z^d."""

    __slots__ = ("base", "basis", "polytope")

    def __init__(self, base, basis, polytope):
        self.base = base
        self.basis = basis
        self.polytope = polytope

    @classmethod
    def for_points(cls, vertices, dim):
        base = min(vertices)
        if dim == 0:
            return cls(base, (), None)
        diffs = [list(_sub(v, base)) for v in vertices]
        if dim == 1:
            direction = primitive_vector(
                next(d for d in diffs if any(d))
            )
            basis = (direction,)
        else:
            # dim == 2 inside Z^3
            normal = None
            for i in range(len(diffs)):
                for j in range(i + 1, len(diffs)):
                    c = _cross3(diffs[i], diffs[j])
                    if c != (0, 0, 0):
                        normal = primitive_vector(c)
                        break
                if normal:
                    break
            basis = tuple(map(tuple, _saturated_plane_basis(normal)))
        chart = cls(base, basis, None)
        image = [chart.to_chart(v) for v in vertices]
        chart_poly = LatticePolytope(image)
        return cls(base, basis, chart_poly)

    def to_chart(self, point):
        vec = _sub(point, self.base)
        if not self.basis:
            return () if not any(vec) else None
        if len(self.basis) == 1:
            u = self.basis[0]
            for i in range(len(vec)):
                if u[i]:
                    if vec[i] % u[i]:
                        return None
                    s = vec[i] // u[i]
                    if all(s * u[k] == vec[k] for k in range(len(vec))):
                        return (s,)
                    return None
            return None
        return _plane_coords(self.basis, vec)

    def from_chart(self, coords):
        return _add(self.base, _combine(self.basis, coords))


class Face:
    """A face of a lattice polytope.

    Two-dimensional faces of a 3-tope carry a canonical unimodular
    planar chart (Hermite-normalized basis of the face plane's lattice,
    base point the smallest vertex), so all the polygon machinery
    applies to them.
    """

    __slots__ = ("parent", "dim", "vertices", "normal", "offset", "_poly")

    def __init__(self, parent, dim, vertices, normal=None, offset=None):
        self.parent = parent
        self.dim = dim
        self.vertices = tuple(sorted(tuple(v) for v in vertices))
        self.normal = normal
        self.offset = offset
        self._poly = None

    def as_polytope(self) -> LatticePolytope:
        if self._poly is None:
            self._poly = LatticePolytope(self.vertices)
        return self._poly

    def contains_point(self, point) -> bool:
        return self.as_polytope().contains_point(point)

    def lattice_points(self):
        return self.as_polytope().lattice_points()

    def vertex_cycle(self):
        """Vertices in boundary order (2-faces only)."""
        if self.dim != 2:
            raise ValueError("vertex_cycle is for 2-faces")
        poly = self.as_polytope()
        chart = poly._chart_data() if poly.dim() != poly.ambient_dimension else None
        if chart is None:
            return _hull_2d(self.vertices)
        flat = _hull_2d([chart.to_chart(v) for v in self.vertices])
        return [chart.from_chart(q) for q in flat]

    def to_chart(self, point):
        coords = self.as_polytope()._chart_data().to_chart(point)
        if coords is None:
            raise ValueError(f"{point} is not on the face plane lattice")
        return coords

    def from_chart(self, coords):
        return self.as_polytope()._chart_data().from_chart(coords)

    def chart_polygon(self) -> LatticePolytope:
        """The face as a full-dimensional polytope in chart coordinates."""
        poly = self.as_polytope()
        if poly.dim() == poly.ambient_dimension:
            return poly
        return poly.chart_image()

    def __eq__(self, other):
        if not isinstance(other, Face):
            return NotImplemented
        return (
            self.parent == other.parent
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={list(self.vertices)})"


@dataclass(frozen=True)
class AffineLattice:
    """Affine lattice generated by the lattice points of a polytope."""

    base: tuple
    basis: tuple  # rows; Hermite form, hence canonical

    @property
    def rank(self) -> int:
        return len(self.basis)


def affine_lattice(p: LatticePolytope) -> AffineLattice:
    """Base point and (canonical) basis of Lat(P), the lattice generated
    by differences of the lattice points of P."""
    pts = p.lattice_points()
    if not pts:
        raise ValueError("polytope has no lattice points")
    base = pts[0]
    gens = [list(_sub(q, base)) for q in pts[1:]]
    basis = tuple(map(tuple, lattice_basis(gens))) if gens else ()
    return AffineLattice(base=base, basis=basis)


def lattice_points(p: LatticePolytope):
    return p.lattice_points()


def is_admissible(p: LatticePolytope) -> bool:
    return p.is_admissible()


def polar(p: LatticePolytope):
    return p.polar()


def is_reflexive(p: LatticePolytope) -> bool:
    return p.is_reflexive()


def faces(p: LatticePolytope, d: int):
    return p.faces(d)


def normalized_volume(p: LatticePolytope) -> int:
    return p.normalized_volume()


def minkowski_sum(polytopes):
    """Minkowski sum, via iterated hulls of vertex sums."""
    polys = list(polytopes)
    acc = polys[0]
    for q in polys[1:]:
        acc = LatticePolytope(
            [_add(v, w) for v in acc.vertices for w in q.vertices]
        )
    return acc


# ---------------------------------------------------------------------------
# lattice Minkowski decomposition of polygons


@dataclass(frozen=True)
class MinkowskiDecomposition:
    """An unordered decomposition of a polygon into lattice-irreducible
    Minkowski summands (each summand normalized up to translation)."""

    summands: tuple

    def __len__(self):
        return len(self.summands)

    def key(self):
        return tuple(sorted(s.vertices for s in self.summands))


def _edge_cycle(polygon: LatticePolytope):
    """Counterclockwise edges as (primitive direction, lattice length)."""
    cycle = _hull_2d(polygon.vertices)
    out = []
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        d = _sub(w, v)
        prim = primitive_vector(d)
        length = d[0] // prim[0] if prim[0] else d[1] // prim[1]
        out.append((prim, length))
    return out


def _piece_polytope(piece, directions):
    """Polygon (up to translation) built from edge multiples ``piece``."""
    pos = (0, 0)
    pts = [pos]
    for c, v in zip(piece, directions):
        if c:
            pos = (pos[0] + c * v[0], pos[1] + c * v[1])
            pts.append(pos)
    return LatticePolytope(pts).normalize_translation()


def _closed_subvectors(lengths, directions):
    out = []
    for piece in product(*[range(l + 1) for l in lengths]):
        if not any(piece):
            continue
        sx = sum(c * v[0] for c, v in zip(piece, directions))
        sy = sum(c * v[1] for c, v in zip(piece, directions))
        if sx == 0 and sy == 0:
            out.append(piece)
    return out


def _lat_basis(poly: LatticePolytope):
    return affine_lattice(poly).basis


def _splits_with_lattice_condition(piece, directions, closed):
    """Does the piece admit a binary lattice Minkowski decomposition?"""
    whole = _piece_polytope(piece, directions)
    lat_whole = _lat_basis(whole)
    for sub in closed:
        if sub == piece or not all(s <= c for s, c in zip(sub, piece)):
            continue
        rest = tuple(c - s for c, s in zip(piece, sub))
        if not any(rest):
            continue
        a = _piece_polytope(sub, directions)
        b = _piece_polytope(rest, directions)
        gens = [list(r) for r in _lat_basis(a)] + [
            list(r) for r in _lat_basis(b)
        ]
        if lattice_equal(gens, [list(r) for r in lat_whole]):
            return True
    return False


def lattice_minkowski_decompositions(q: LatticePolytope):
    """All decompositions of a polygon into lattice-irreducible summands.

    A decomposition is a multiset of irreducible polygons/segments that
    Minkowski-sum to Q (up to translation) with
    ``Lat(Q) = sum of Lat(summand)``.  The trivial decomposition ``{Q}``
    appears exactly when Q is irreducible.  Deterministic order.
    """
    if q.ambient_dimension != 2:
        raise ValueError("decomposition expects a polygon in planar coordinates")
    if q.dim() == 1:
        return _decompose_segment(q)
    if q.dim() != 2:
        raise ValueError("decomposition needs a polygon or a segment")
    cycle = _edge_cycle(q)
    directions = [v for v, _ in cycle]
    lengths = [l for _, l in cycle]
    closed = _closed_subvectors(lengths, directions)
    irreducible = [
        piece
        for piece in closed
        if not _splits_with_lattice_condition(piece, directions, closed)
    ]
    irreducible.sort()
    lat_q = [list(r) for r in _lat_basis(q)]
    results = []

    def search(remaining, start, chosen):
        if not any(remaining):
            gens = []
            for piece in chosen:
                gens.extend(
                    list(r) for r in _lat_basis(_piece_polytope(piece, directions))
                )
            if lattice_equal(gens, lat_q):
                results.append(
                    MinkowskiDecomposition(
                        tuple(
                            _piece_polytope(piece, directions)
                            for piece in chosen
                        )
                    )
                )
            return
        for i in range(start, len(irreducible)):
            piece = irreducible[i]
            if all(c <= r for c, r in zip(piece, remaining)):
                search(
                    tuple(r - c for r, c in zip(remaining, piece)),
                    i,
                    chosen + [piece],
                )

    search(tuple(lengths), 0, [])
    uniq = {}
    for dec in results:
        uniq.setdefault(dec.key(), dec)
    return [uniq[k] for k in sorted(uniq)]


def _decompose_segment(q: LatticePolytope):
    a, b = q.vertices
    d = _sub(b, a)
    prim = primitive_vector(d)
    length = d[0] // prim[0] if prim[0] else d[1] // prim[1]
    if length < 0:
        prim = tuple(-x for x in prim)
        length = -length
    unit = LatticePolytope([(0, 0), prim]).normalize_translation()
    if length == 1:
        return [MinkowskiDecomposition((unit,))]
    return [MinkowskiDecomposition(tuple([unit] * length))]


# ---------------------------------------------------------------------------
# text format


def parse_polytope(text, path=None) -> LatticePolytope:
    """Polytope file: ``dim n``, optional ``id <string>``, one vertex per
    line as n integers."""
    n = None
    pid = None
    points = []
    for lineno, line in _iter_content_lines(text):
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError("expected header 'dim n'", path, lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError("bad dimension", path, lineno) from None
            continue
        if parts[0] == "id" and len(parts) == 2 and pid is None and not points:
            pid = parts[1]
            continue
        if len(parts) != n:
            raise ParseError(
                f"expected {n} coordinates, got {len(parts)}", path, lineno
            )
        try:
            points.append(tuple(int(x) for x in parts))
        except ValueError:
            raise ParseError("bad coordinate", path, lineno) from None
    if n is None:
        raise ParseError("missing 'dim n' header", path)
    if not points:
        raise ParseError("no vertices given", path)
    return LatticePolytope(points, id=pid)


def format_polytope(p: LatticePolytope) -> str:
    lines = [f"dim {p.ambient_dimension}"]
    if p.id is not None:
        lines.append(f"id {p.id}")
    for v in p.vertices:
        lines.append(" ".join(str(x) for x in v))
    return "\n".join(lines) + "\n"


def _iter_content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line
