"""The Minkowski ansatz.

Builds all Minkowski polynomials supported on a reflexive polygon or
3-tope: binomial coefficients along the edges, facet terms given by
products over the summands of an admissible lattice Minkowski
decomposition of each facet, zero constant term, coefficient 1 on every
vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb

from .errors import AnsatzConflictError
from .laurent import LaurentPolynomial, format_polynomial
from .linalg import primitive_vector
from .polytope import (
    Face,
    LatticePolytope,
    lattice_minkowski_decompositions,
)


@dataclass(frozen=True)
class EdgeTermSpec:
    """An edge [mu, mu + length * nu] with nu primitive."""

    mu: tuple
    nu: tuple
    length: int

    @classmethod
    def from_endpoints(cls, a, b):
        a, b = tuple(a), tuple(b)
        d = tuple(x - y for x, y in zip(b, a))
        nu = primitive_vector(d)
        length = next(dx // nx for dx, nx in zip(d, nu) if nx)
        if length < 0:
            a, nu, length = b, tuple(-x for x in nu), -length
        return cls(mu=a, nu=nu, length=length)

    @classmethod
    def from_edge(cls, edge: Face):
        if edge.dim != 1:
            raise ValueError("expected a 1-dimensional face")
        return cls.from_endpoints(*edge.vertices)


def edge_term(spec: EdgeTermSpec) -> LaurentPolynomial:
    """x^mu (1 + x^nu)^length, i.e. binomial weights along the edge."""
    n = len(spec.mu)
    terms = {}
    for k in range(spec.length + 1):
        e = tuple(m + k * v for m, v in zip(spec.mu, spec.nu))
        terms[e] = comb(spec.length, k)
    return LaurentPolynomial(n, terms)


def _boundary_coeffs(p: LatticePolytope) -> dict:
    """Vertex coefficients 1 plus edge binomials along the boundary of a
    polygon; overlapping assignments are checked for consistency."""
    coeffs = {}
    for v in p.vertices:
        coeffs[v] = 1
    for edge in p.faces(1):
        term = edge_term(EdgeTermSpec.from_edge(edge))
        for e, c in term.items():
            prev = coeffs.get(e)
            if prev is not None and prev != c:
                raise AnsatzConflictError(
                    f"edge terms disagree at {e}", point=e
                )
            coeffs[e] = c
    return coeffs


def boundary_polynomial(p: LatticePolytope) -> LaurentPolynomial:
    """The irreducible-summand polynomial: coefficient 1 on vertices and
    binomial weights along the edges.

    Interior lattice points would be left without a coefficient, so
    summands having any are rejected (they are outside the ansatz's
    stated domain anyway).
    """
    if p.dim() == 0:
        return LaurentPolynomial.one(p.ambient_dimension)
    if p.dim() == 1:
        a, b = p.vertices
        return edge_term(EdgeTermSpec.from_endpoints(a, b))
    if p.relative_interior_lattice_points():
        raise ValueError(
            "summand polygon has interior lattice points; "
            "outside the ansatz's domain"
        )
    return LaurentPolynomial(p.ambient_dimension, _boundary_coeffs(p))


def _admissible_decompositions(polygon: LatticePolytope):
    return [
        dec
        for dec in lattice_minkowski_decompositions(polygon)
        if all(s.is_admissible() for s in dec.summands)
    ]


def face_terms(face: Face):
    """Candidate face terms of a 2-face, one per admissible decomposition.

    Returns a list of ``(polynomial, descriptor)`` in ambient
    coordinates; empty when no admissible decomposition exists (the
    ansatz has nothing to say for this face).
    """
    polygon = face.chart_polygon()
    out = []
    for dec in _admissible_decompositions(polygon):
        term = LaurentPolynomial.one(2)
        for s in dec.summands:
            term = term * boundary_polynomial(s)
        term = _align_to(term, polygon)
        lifted = {}
        for e, c in term.items():
            lifted[face.from_chart(e)] = c
        out.append((LaurentPolynomial(3, lifted), dec.key()))
    return out


def _align_to(term: LaurentPolynomial, polygon: LatticePolytope):
    """Translate a product of summand polynomials so its Newton polygon
    is the target polygon on the nose."""
    newt = term.newton_polytope()
    shift = tuple(
        t - s for t, s in zip(min(polygon.vertices), min(newt.vertices))
    )
    moved = term.translate(shift)
    if moved.newton_polytope() != LatticePolytope(polygon.vertices):
        raise AnsatzConflictError(
            "facet term does not reassemble to the facet"
        )
    return moved


@dataclass(frozen=True)
class AnsatzResult:
    """Minkowski polynomials of a reflexive polytope.

    ``provenance[i]`` lists, for ``polynomials[i]``, every combination of
    per-facet decomposition choices that produced it (duplicates are
    merged).  ``diagnostics`` maps each facet (by its sorted vertex
    tuple) to its number of admissible decompositions.
    """

    polytope: LatticePolytope
    polynomials: tuple
    provenance: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.polynomials)


def minkowski_polynomials(p: LatticePolytope) -> AnsatzResult:
    """All Minkowski polynomials with Newton polytope P.

    For a reflexive polygon the answer is the single polynomial given by
    the edge binomials; for a reflexive 3-tope, one polynomial per
    combination of admissible facet decompositions (deduplicated), with
    overlap consistency between facet terms verified during assembly.
    """
    if not p.is_reflexive():
        raise ValueError("the Minkowski ansatz expects a reflexive polytope")
    if p.dim() == 2:
        # a_0 = 0: the origin (the only interior point) gets no term
        f = LaurentPolynomial(2, _boundary_coeffs(p))
        _validate_output(f, p)
        return AnsatzResult(
            polytope=p,
            polynomials=(f,),
            provenance=(({},),),
            diagnostics={},
        )
    if p.dim() != 3:
        raise ValueError("the ansatz is implemented for dimensions 2 and 3")

    facets = p.faces(2)
    options = []
    diagnostics = {}
    for face in facets:
        terms = face_terms(face)
        diagnostics[face.vertices] = len(terms)
        options.append(terms)
    if any(not opts for opts in options):
        return AnsatzResult(
            polytope=p, polynomials=(), provenance=(), diagnostics=diagnostics
        )

    edge_coeffs = {}
    for edge in p.faces(1):
        term = edge_term(EdgeTermSpec.from_edge(edge))
        for e, c in term.items():
            prev = edge_coeffs.get(e)
            if prev is not None and prev != c:
                raise AnsatzConflictError(
                    f"edge terms disagree at {e}", point=e
                )
            edge_coeffs[e] = c

    found = {}
    for combo in product(*options):
        coeffs = dict(edge_coeffs)
        for term, _ in combo:
            for e, c in term.items():
                prev = coeffs.get(e)
                if prev is not None and prev != c:
                    raise AnsatzConflictError(
                        f"facet terms disagree at {e} "
                        f"({prev} vs {c})",
                        point=e,
                    )
                coeffs[e] = c
        f = LaurentPolynomial(3, coeffs)
        _validate_output(f, p)
        choice = {
            facets[i].vertices: combo[i][1] for i in range(len(facets))
        }
        found.setdefault(f, []).append(choice)

    ordered = sorted(found, key=format_polynomial)
    return AnsatzResult(
        polytope=p,
        polynomials=tuple(ordered),
        provenance=tuple(tuple(found[f]) for f in ordered),
        diagnostics=diagnostics,
    )


def _validate_output(f: LaurentPolynomial, p: LatticePolytope):
    if f.constant_term() != 0:
        raise AnsatzConflictError("assembled polynomial has a constant term")
    if f.newton_polytope() != LatticePolytope(p.vertices):
        raise AnsatzConflictError(
            "assembled polynomial has the wrong Newton polytope"
        )
    for v in p.vertices:
        if f.coefficient(v) != 1:
            raise AnsatzConflictError(
                f"vertex {v} has coefficient {f.coefficient(v)}", point=v
            )
