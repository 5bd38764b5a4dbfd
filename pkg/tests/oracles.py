"""Independent brute-force oracles for the test suite.

Each oracle recomputes a quantity by a route deliberately different from
the library's: multinomial expansion for constant terms of powers, a
plain box scan for toric quantum periods, ordered edge-vector
distribution with geometric re-summation for Minkowski decompositions,
and a from-scratch plane-geometry BFS for the reflexive polygon census.
Where bookkeeping is not the point (integer Hermite forms), the library
helpers are reused.
"""

from fractions import Fraction
from math import factorial, gcd

from fanoperiods.linalg import lattice_basis, lattice_equal

# ---------------------------------------------------------------------------
# constant terms by multinomial expansion


def multinomial_constant_term(f, m):
    """c_m = sum over (k_1..k_N), sum k_i = m, sum k_i e_i = 0 of
    m!/(prod k_i!) * prod a_i^k_i."""
    support = list(f.support())
    coeffs = [f.coefficient(e) for e in support]
    n = f.dimension
    total = Fraction(0)

    def recurse(idx, remaining, expo, weight):
        nonlocal total
        if idx == len(support):
            if remaining == 0 and all(x == 0 for x in expo):
                total += weight
            return
        e = support[idx]
        for k in range(remaining + 1):
            recurse(
                idx + 1,
                remaining - k,
                tuple(x + k * y for x, y in zip(expo, e)),
                weight * coeffs[idx] ** k / factorial(k),
            )

    recurse(0, m, (0,) * n, Fraction(factorial(m)))
    return total


def multinomial_period(f, m_max):
    return [multinomial_constant_term(f, m) for m in range(m_max + 1)]


# ---------------------------------------------------------------------------
# toric quantum periods by box scan


def box_scan_quantum_period(weights, nef, m_max):
    """Scan a cube of side 2*m_max+1, filter cone membership, bucket by
    anticanonical degree."""
    b = len(weights)
    r = len(weights[0])
    minus_k = [sum(weights[i][j] for j in range(r)) for i in range(b)]
    out = [Fraction(0)] * (m_max + 1)

    def scan(prefix):
        if len(prefix) == b:
            if all(
                sum(g[i] * prefix[i] for i in range(b)) >= 0 for g in nef
            ):
                deg = sum(minus_k[i] * prefix[i] for i in range(b))
                if 0 <= deg <= m_max:
                    term = Fraction(1)
                    for j in range(r):
                        v = sum(weights[i][j] * prefix[i] for i in range(b))
                        if v < 0:
                            return
                        term /= factorial(v)
                    out[deg] += term
            return
        for x in range(-m_max, m_max + 1):
            scan(prefix + (x,))

    scan(())
    return out


# ---------------------------------------------------------------------------
# small independent plane geometry


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull2(points):
    """Convex hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _edges(cycle):
    return [
        (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    ]


def strictly_inside(cycle, p):
    return all(_cross(a, b, p) > 0 for a, b in _edges(cycle))


def weakly_inside(cycle, p):
    return all(_cross(a, b, p) >= 0 for a, b in _edges(cycle))


def interior_points(cycle):
    xs = [v[0] for v in cycle]
    ys = [v[1] for v in cycle]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if strictly_inside(cycle, (x, y)):
                out.append((x, y))
    return out


def lattice_points2(cycle):
    xs = [v[0] for v in cycle]
    ys = [v[1] for v in cycle]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if weakly_inside(cycle, (x, y)):
                out.append((x, y))
    return out


def is_reflexive_polygon(cycle) -> bool:
    """Interior lattice points == {0} and every edge at lattice height 1
    (primitive inward normal with offset -1), which is exactly polar
    integrality."""
    if interior_points(cycle) != [(0, 0)]:
        return False
    for a, b in _edges(cycle):
        t = (b[0] - a[0], b[1] - a[1])
        normal = (-t[1], t[0])
        g = gcd(abs(normal[0]), abs(normal[1]))
        normal = (normal[0] // g, normal[1] // g)
        if normal[0] * a[0] + normal[1] * a[1] != -1:
            return False
    return True


def enumerate_reflexive_polygons(box=3):
    """BFS over lattice polygons with vertices in [-box, box]^2 that
    contain the origin and have no non-origin interior lattice point;
    returns the vertex sets (sorted tuples) of the reflexive ones.

    Every target polygon is reachable from a vertex triangle containing
    the origin by adding one vertex at a time, because removing a vertex
    of a convex polygon leaves its remaining vertex set in convex
    position and the origin stays inside some triangle of vertices.
    """
    grid = [
        (x, y)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
    ]

    def ok(cycle):
        if not weakly_inside(cycle, (0, 0)):
            return False
        return all(p == (0, 0) for p in interior_points(cycle))

    seen = set()
    queue = []
    m = len(grid)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                tri = hull2([grid[i], grid[j], grid[k]])
                if len(tri) != 3:
                    continue
                key = tuple(sorted(tri))
                if key in seen or not ok(tri):
                    continue
                seen.add(key)
                queue.append(key)
    results = set()
    while queue:
        key = queue.pop()
        cycle = hull2(list(key))
        if is_reflexive_polygon(cycle):
            results.add(key)
        for p in grid:
            if weakly_inside(cycle, p):
                continue
            bigger = hull2(list(key) + [p])
            bkey = tuple(sorted(bigger))
            if bkey in seen or not ok(bigger):
                continue
            seen.add(bkey)
            queue.append(bkey)
    return sorted(results)


# ---------------------------------------------------------------------------
# Minkowski decompositions by ordered edge-vector distribution


def _primitive(v):
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def _edge_vectors(cycle):
    out = []
    for a, b in _edges(cycle):
        d = (b[0] - a[0], b[1] - a[1])
        prim = _primitive(d)
        length = d[0] // prim[0] if prim[0] else d[1] // prim[1]
        out.append((prim, length))
    return out


def _walk(vectors):
    """Polygon from edge vectors taken in cyclic order; vertices then
    normalized so the lexicographic minimum sits at the origin."""
    pos = (0, 0)
    pts = [pos]
    for v, c in vectors:
        if c:
            pos = (pos[0] + c * v[0], pos[1] + c * v[1])
            pts.append(pos)
    verts = hull2(pts) if len(set(pts)) > 2 else sorted(set(pts))
    base = min(verts)
    return tuple(sorted((p[0] - base[0], p[1] - base[1]) for p in verts))


def _mink_sum(vert_sets):
    acc = [(0, 0)]
    for verts in vert_sets:
        acc = [
            (a[0] + b[0], a[1] + b[1]) for a in acc for b in verts
        ]
        h = hull2(acc)
        acc = h if len(h) > 2 else sorted(set(h))
    base = min(acc)
    return tuple(sorted((p[0] - base[0], p[1] - base[1]) for p in acc))


def _lat(verts):
    pts = lattice_points2(hull2(list(verts)) if len(verts) > 2 else list(verts))
    base = pts[0]
    return lattice_basis(
        [[p[0] - base[0], p[1] - base[1]] for p in pts[1:]]
    )


def edge_distribution_decompositions(cycle, _budget=[0]):
    """All decompositions of a polygon into irreducible lattice Minkowski
    summands, by brute force: distribute every edge's primitive multiples
    over k ordered summands, keep assignments whose summands all close
    up, check that the summands geometrically re-sum to the polygon, and
    keep those satisfying the lattice condition with every summand
    irreducible (recursively, by this same oracle)."""
    vectors = _edge_vectors(cycle)
    total_len = sum(l for _, l in vectors)
    base = min(cycle)
    q_key = tuple(
        sorted((p[0] - base[0], p[1] - base[1]) for p in cycle)
    )
    lat_q = _lat(q_key)

    found = set()
    for k in range(1, total_len + 1):
        assignments = [[]]
        for _, length in vectors:
            new = []
            for partial in assignments:
                for comp in _compositions(length, k):
                    new.append(partial + [comp])
            assignments = new
            if len(assignments) > 2_000_000:
                raise RuntimeError("oracle blew up; use a smaller polygon")
        for matrix in assignments:
            summands = []
            good = True
            for j in range(k):
                vecs = [
                    (vectors[i][0], matrix[i][j])
                    for i in range(len(vectors))
                ]
                sx = sum(v[0] * c for v, c in vecs)
                sy = sum(v[1] * c for v, c in vecs)
                if (sx, sy) != (0, 0) or not any(c for _, c in vecs):
                    good = False
                    break
                summands.append(_walk(vecs))
            if not good:
                continue
            if _mink_sum(summands) != q_key:
                continue
            gens = []
            for s in summands:
                gens.extend(list(map(list, _lat(s))))
            if not lattice_equal(gens, list(map(list, lat_q))):
                continue
            if any(not _oracle_irreducible(s) for s in summands):
                continue
            found.add(tuple(sorted(summands)))
    return sorted(found)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _oracle_irreducible(vert_key) -> bool:
    verts = list(vert_key)
    if len(verts) == 1:
        return False  # a point is a unit, not a summand
    if len(verts) == 2:
        a, b = verts
        d = (b[0] - a[0], b[1] - a[1])
        prim = _primitive(d)
        length = d[0] // prim[0] if prim[0] else d[1] // prim[1]
        return abs(length) == 1
    cycle = hull2(verts)
    decs = _binary_splits(cycle)
    return not decs


def _binary_splits(cycle):
    """Does the polygon split as a lattice Minkowski sum of two
    non-points?  Direct search over edge-vector distributions."""
    vectors = _edge_vectors(cycle)
    base = min(cycle)
    q_key = tuple(sorted((p[0] - base[0], p[1] - base[1]) for p in cycle))
    lat_q = _lat(q_key)
    splits = []
    for matrix in _all_assignments(vectors, 2):
        summands = []
        good = True
        for j in range(2):
            vecs = [(vectors[i][0], matrix[i][j]) for i in range(len(vectors))]
            sx = sum(v[0] * c for v, c in vecs)
            sy = sum(v[1] * c for v, c in vecs)
            if (sx, sy) != (0, 0) or not any(c for _, c in vecs):
                good = False
                break
            summands.append(_walk(vecs))
        if not good:
            continue
        if _mink_sum(summands) != q_key:
            continue
        gens = []
        for s in summands:
            gens.extend(list(map(list, _lat(s))))
        if lattice_equal(gens, list(map(list, lat_q))):
            splits.append(tuple(sorted(summands)))
    return splits


def _all_assignments(vectors, k):
    assignments = [[]]
    for _, length in vectors:
        assignments = [
            partial + [comp]
            for partial in assignments
            for comp in _compositions(length, k)
        ]
    return assignments
