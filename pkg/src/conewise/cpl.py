"""Single-valued conewise linear functions on a fan.

A conewise linear function is represented by one linear functional per
maximal cone; continuity is the condition that adjacent functionals agree on
the span of the common face.  The space of these coefficient vectors is
computed exactly over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .cones import intersect
from .errors import InvalidFan, NotComplete, WrongDimension
from .fans import Fan, is_complete, stats, validate
from .linalg import RatVec, dot, span_lattice


def _rational_nullspace(rows: list[list[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Deterministic basis of the right nullspace via reduced row echelon."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][c]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class CPLFunction:
    """Per-maximal-cone linear functionals, one tuple per cone.

    ``witness_ray`` is set on nontrivial functions returned by
    :func:`nontrivial_cpl`: a ray where the function disagrees with every
    global linear functional matching it elsewhere.
    """

    fan: Fan
    functionals: tuple[RatVec, ...]
    witness_ray: int | None = None

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for f in self.functionals for x in f)

    def to_integral(self) -> "CPLFunction":
        dens = [x.denominator for f in self.functionals for x in f]
        d = lcm(*dens) if dens else 1
        return CPLFunction(
            self.fan,
            tuple(tuple(Fraction(int(x * d)) for x in f) for f in self.functionals),
            self.witness_ray)

    def value_on_ray(self, ray_index: int) -> Fraction:
        ray = self.fan.rays[ray_index]
        for k, idx in enumerate(self.fan.maximal_cone_rays):
            if ray_index in idx:
                return dot(self.functionals[k], ray)
        raise ValueError("ray %d lies in no maximal cone" % ray_index)

    def ray_values(self) -> tuple[Fraction, ...]:
        return tuple(self.value_on_ray(i) for i in range(len(self.fan.rays)))


@dataclass(frozen=True)
class CPLSpace:
    fan: Fan
    basis: tuple[CPLFunction, ...]
    dim: int
    trivial_dim: int


def _wall_constraints(fan: Fan) -> list[list[Fraction]]:
    n = fan.ambient_rank
    ncols = n * len(fan.maximal_cones)
    rows = []
    for i, j in combinations(range(len(fan.maximal_cones)), 2):
        meet = intersect(fan.maximal_cones[i], fan.maximal_cones[j])
        gens = list(meet.rays) + list(meet.lineality)
        if not gens:
            continue
        for w in span_lattice(gens, n).basis_int:
            row = [Fraction(0)] * ncols
            for t in range(n):
                row[i * n + t] = Fraction(w[t])
                row[j * n + t] = Fraction(-w[t])
            rows.append(row)
    return rows


def cpl_space(fan: Fan) -> CPLSpace:
    """Exact basis of the continuity solution space.

    One functional per maximal cone avoids any special casing for
    non-simplicial cones; the global linear functionals embed diagonally, so
    the trivial subspace always has dimension equal to the ambient rank.
    """
    if not validate(fan).ok:
        raise InvalidFan("fan does not satisfy the fan axioms")
    n = fan.ambient_rank
    ncols = n * len(fan.maximal_cones)
    null = _rational_nullspace(_wall_constraints(fan), ncols)
    basis = []
    for v in null:
        funcs = tuple(tuple(v[k * n:(k + 1) * n])
                      for k in range(len(fan.maximal_cones)))
        basis.append(CPLFunction(fan, funcs))
    return CPLSpace(fan=fan, basis=tuple(basis), dim=len(basis), trivial_dim=n)


def _solve_global(rays: Sequence[Sequence], values: Sequence[Fraction]):
    """A functional u with <u, ray_i> = values_i for all i, or None."""
    if not rays:
        return ()
    n = len(rays[0])
    m = [[Fraction(x) for x in ray] + [Fraction(values[i])]
         for i, ray in enumerate(rays)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][n] != 0:
            return None
    u = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        u[c] = m[i][n]
    return tuple(u)


def nontrivial_cpl(fan: Fan) -> CPLFunction | None:
    """An integral conewise linear function that is not globally linear.

    Returns None when every conewise linear function on the fan is the
    restriction of a single global functional.  The returned function is the
    first basis vector, in solver order, whose values on the rays cannot be
    matched by any global functional; denominators are cleared.
    """
    space = cpl_space(fan)
    if space.dim <= space.trivial_dim:
        return None
    for cand in space.basis:
        vals = cand.ray_values()
        if _solve_global(fan.rays, vals) is not None:
            continue
        best = _best_global_on_independent_rays(fan, vals)
        witness = next(i for i, v in enumerate(vals)
                       if dot(best, fan.rays[i]) != v)
        integral = cand.to_integral()
        return CPLFunction(fan, integral.functionals, witness_ray=witness)
    return None


def _best_global_on_independent_rays(fan: Fan, values: Sequence[Fraction]):
    """Solve for a global functional on a maximal independent ray subset."""
    n = fan.ambient_rank
    chosen: list[int] = []
    for i in range(len(fan.rays)):
        if span_lattice([fan.rays[j] for j in chosen] + [fan.rays[i]], n).rank > len(chosen):
            chosen.append(i)
        if len(chosen) == n:
            break
    u = _solve_global([fan.rays[i] for i in chosen],
                      [values[i] for i in chosen])
    assert u is not None
    return u


@dataclass(frozen=True)
class CountReport:
    """The ray-neighbour counting certificate for complete rank-3 fans.

    When every ray lies in at least four two-dimensional cones, the chain
    4*f1 <= sum(m_rho) = 2*f2 together with the Euler identity forces
    f2 > 2*f1 - 3, which makes the continuity system underdetermined beyond
    the trivial solutions.
    """

    f1: int
    f2: int
    f3: int
    min_m_rho: int
    all_m_rho_ge_4: bool
    ineq_4f1_le_2f2: bool
    ineq_f2_gt_2f1_minus_3: bool

    @property
    def hypothesis_holds(self) -> bool:
        return self.all_m_rho_ge_4


def counting_certificate(fan: Fan) -> CountReport:
    if fan.ambient_rank != 3:
        raise WrongDimension("counting certificate needs a rank-3 fan")
    if not is_complete(fan):
        raise NotComplete("counting certificate needs a complete fan")
    st = stats(fan)
    f1, f2, f3 = st.f
    report = CountReport(
        f1=f1, f2=f2, f3=f3,
        min_m_rho=st.min_m_rho,
        all_m_rho_ge_4=st.min_m_rho >= 4,
        ineq_4f1_le_2f2=4 * f1 <= 2 * f2,
        ineq_f2_gt_2f1_minus_3=f2 > 2 * f1 - 3,
    )
    if report.all_m_rho_ge_4:
        if not (report.ineq_4f1_le_2f2 and report.ineq_f2_gt_2f1_minus_3):
            raise AssertionError("counting chain failed on a fan satisfying "
                                 "the neighbour hypothesis")
    return report
