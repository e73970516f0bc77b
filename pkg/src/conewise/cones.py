"""Rational polyhedral cones with exact dual descriptions.

A cone is stored by two V-descriptions: its own extremal rays plus lineality
basis, and the extremal rays plus lineality basis of its dual.  The latter
doubles as the facet-normal / equation H-description of the cone itself, so
dualizing is a constant-time swap and both descriptions are canonical.

Canonical form: ray representatives are primitive integer vectors reduced
through a fixed quotient chart modulo the lineality lattice and sorted
lexicographically; the lineality basis is the HNF basis of its saturated
lattice.  Cone equality is equality of these tuples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotFullDimensional, NotInCone, NotPointed
from .linalg import (
    IntVec,
    Sublattice,
    dot,
    is_zero_vec,
    primitive_vector,
    quotient_chart,
    right_kernel,
    smith_normal_form,
    span_lattice,
    vec_mat,
    vec_neg,
)


def _halfspaces_to_rays(rows: Sequence[IntVec], n: int):
    """V-description of ``{x : <a, x> >= 0 for every row a}``.

    Returns ``(lineality, rays)``.  Candidate ray lines are found as kernels
    of row subsets of the right corank; this is exhaustive for every
    polyhedral cone and exact, and entirely adequate at the input sizes this
    library meets (tens of constraints, rank <= 4 or so).
    """
    rows = [tuple(r) for r in rows if not is_zero_vec(r)]
    lin = right_kernel(rows, n)
    lin_dim = len(lin)
    k0 = n - lin_dim - 1
    if k0 < 0:
        return lin, ()
    w, v = quotient_chart(lin, n)
    section = w[lin_dim:]
    seen = set()
    for subset in combinations(range(len(rows)), k0):
        ker = right_kernel([rows[i] for i in subset], n)
        if len(ker) != lin_dim + 1:
            continue
        imgs = [vec_mat(k, v)[lin_dim:] for k in ker]
        quot = span_lattice(imgs, n - lin_dim)
        if quot.rank != 1:
            continue
        g = primitive_vector(quot.basis_int[0])
        cand = vec_mat(g, section)
        pairings = [dot(a, cand) for a in rows]
        if all(p >= 0 for p in pairings):
            seen.add(cand)
        elif all(p <= 0 for p in pairings):
            seen.add(vec_neg(cand))
    return lin, tuple(sorted(seen))


class Cone:
    """Immutable rational polyhedral cone.

    ``rays``/``lineality`` describe the cone, ``ineq_rays``/``equations``
    are the extremal rays and lineality basis of the dual cone, i.e. the
    facet normals and the defining equations of the span.
    """

    __slots__ = ("ambient_rank", "rays", "lineality", "ineq_rays",
                 "equations", "_faces")

    def __init__(self, ambient_rank, rays, lineality, ineq_rays, equations):
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "lineality", tuple(lineality))
        object.__setattr__(self, "ineq_rays", tuple(ineq_rays))
        object.__setattr__(self, "equations", tuple(equations))
        object.__setattr__(self, "_faces", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cone is immutable")

    @staticmethod
    def from_generators(generators: Iterable[Sequence], ambient_rank: int | None = None) -> "Cone":
        gens = [primitive_vector(g) for g in generators if not is_zero_vec(g)]
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient rank needed for an empty generator set")
            ambient_rank = len(gens[0])
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError("generators have inconsistent lengths")
        eq, ineq = _halfspaces_to_rays(gens, ambient_rank)
        constraints = list(ineq) + [e for e in eq] + [vec_neg(e) for e in eq]
        lin, rays = _halfspaces_to_rays(constraints, ambient_rank)
        return Cone(ambient_rank, rays, lin, ineq, eq)

    @staticmethod
    def from_inequalities(inequalities: Sequence[Sequence], ambient_rank: int,
                          equations: Sequence[Sequence] = ()) -> "Cone":
        rows = [primitive_vector(r) for r in inequalities if not is_zero_vec(r)]
        rows += [primitive_vector(e) for e in equations if not is_zero_vec(e)]
        rows += [vec_neg(primitive_vector(e)) for e in equations if not is_zero_vec(e)]
        lin, rays = _halfspaces_to_rays(rows, ambient_rank)
        gens = list(rays) + list(lin) + [vec_neg(b) for b in lin]
        return Cone.from_generators(gens, ambient_rank)

    @staticmethod
    def zero(ambient_rank: int) -> "Cone":
        return Cone.from_generators([], ambient_rank)

    # -- canonical identity ------------------------------------------------

    def _key(self):
        return (self.ambient_rank, self.rays, self.lineality)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "Cone(rank=%d, rays=%s, lineality=%s)" % (
            self.ambient_rank, list(self.rays), list(self.lineality))

    # -- basic geometry ----------------------------------------------------

    @property
    def generators(self) -> tuple[IntVec, ...]:
        """Extremal rays plus both signs of the lineality basis."""
        out = list(self.rays)
        for b in self.lineality:
            out.append(b)
            out.append(vec_neg(b))
        return tuple(out)

    @property
    def inequalities(self) -> tuple[IntVec, ...]:
        """Facet normals plus both signs of the span equations."""
        out = list(self.ineq_rays)
        for e in self.equations:
            out.append(e)
            out.append(vec_neg(e))
        return tuple(out)

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def is_pointed(self) -> bool:
        return not self.lineality

    def dual(self) -> "Cone":
        return Cone(self.ambient_rank, self.ineq_rays, self.equations,
                    self.rays, self.lineality)

    def contains(self, p: Sequence) -> bool:
        p = tuple(Fraction(x) for x in p)
        return (all(dot(e, p) == 0 for e in self.equations)
                and all(dot(u, p) >= 0 for u in self.ineq_rays))

    def in_relative_interior(self, p: Sequence) -> bool:
        p = tuple(Fraction(x) for x in p)
        return (all(dot(e, p) == 0 for e in self.equations)
                and all(dot(u, p) > 0 for u in self.ineq_rays))

    def span(self) -> Sublattice:
        """Saturated lattice of the linear span."""
        gens = list(self.rays) + list(self.lineality)
        if not gens:
            return Sublattice.zero(self.ambient_rank)
        return span_lattice(gens, self.ambient_rank).saturation()

    # -- faces ---------------------------------------------------------------

    def _face_from_tight(self, normals: Sequence[IntVec]) -> "Cone":
        tight = [r for r in self.rays
                 if all(dot(u, r) == 0 for u in normals)]
        gens = tight + list(self.lineality) + [vec_neg(b) for b in self.lineality]
        return Cone.from_generators(gens, self.ambient_rank)

    def facets(self) -> tuple["Cone", ...]:
        return tuple(self._face_from_tight([u]) for u in self.ineq_rays)

    def faces(self) -> tuple["Cone", ...]:
        """All faces (including the cone itself), closed under intersection,
        sorted by dimension then canonical key."""
        if self._faces is not None:
            return self._faces
        seen = {self: None}
        frontier = [self]
        while frontier:
            nxt = []
            for c in frontier:
                for f in c.facets():
                    if f not in seen:
                        seen[f] = None
                        nxt.append(f)
            frontier = nxt
        out = tuple(sorted(seen, key=lambda c: (c.dim, c.rays, c.lineality)))
        object.__setattr__(self, "_faces", out)
        return out

    def faces_by_dim(self) -> dict[int, tuple["Cone", ...]]:
        out: dict[int, list[Cone]] = {}
        for f in self.faces():
            out.setdefault(f.dim, []).append(f)
        return {d: tuple(fs) for d, fs in out.items()}

    def smallest_face_containing(self, p: Sequence) -> "Cone":
        if not self.contains(p):
            raise NotInCone("point is not in the cone")
        p = tuple(Fraction(x) for x in p)
        tight = [u for u in self.ineq_rays if dot(u, p) == 0]
        if not tight:
            return self
        return self._face_from_tight(tight)

    def is_face_of(self, other: "Cone") -> bool:
        if self.ambient_rank != other.ambient_rank:
            return False
        if any(not other.contains(g) for g in self.generators):
            return False
        if self.lineality != other.lineality:
            return False
        tight = [u for u in other.ineq_rays
                 if all(dot(u, g) == 0 for g in self.generators)]
        if not tight:
            return self == other
        return self == other._face_from_tight(tight)

    def is_smooth(self) -> bool:
        """Pointed, simplicial, and the ray generators extend to a basis."""
        if not self.is_pointed():
            return False
        if len(self.rays) != self.dim:
            return False
        if not self.rays:
            return True
        d, _, _ = smith_normal_form(self.rays)
        return all(d[i][i] == 1 for i in range(len(self.rays)))


def dual_cone(c: Cone) -> Cone:
    return c.dual()


def intersect(c1: Cone, c2: Cone) -> Cone:
    if c1.ambient_rank != c2.ambient_rank:
        raise ValueError("ambient ranks differ")
    ineqs = list(c1.ineq_rays) + list(c2.ineq_rays)
    eqs = list(c1.equations) + list(c2.equations)
    return Cone.from_inequalities(ineqs, c1.ambient_rank, eqs)


def facet_pairs(c: Cone):
    """Facets of a full-dimensional pointed cone paired with their inward
    primitive normals, i.e. the extremal rays of the dual vanishing on them."""
    if c.dim != c.ambient_rank:
        raise NotFullDimensional("cone does not span the ambient space")
    if not c.is_pointed():
        raise NotPointed("cone has a nontrivial lineality space")
    out = []
    for u in c.ineq_rays:
        out.append((c._face_from_tight([u]), u))
    return out
