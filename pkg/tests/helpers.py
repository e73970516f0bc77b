"""Shared test utilities: random instance generators and independent oracles.

The oracles here deliberately avoid the library's own algorithms: cone
membership goes through independent-subset solves, facet counting through
bounded normal-vector search, Hermite forms through brute-force unimodular
search, and lattice point spans through a flat numpy box enumeration.
"""

from fractions import Fraction
from itertools import combinations, product

from conewise.linalg import Sublattice, dot, fraction_det, mat_identity, span_lattice


def random_int_matrix(rng, rows, cols, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def random_unimodular(rng, n, ops=4, qmax=2):
    m = mat_identity(n)
    for _ in range(ops):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            q = rng.randint(-qmax, qmax)
            m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            m[i] = [-a for a in m[i]]
    assert abs(fraction_det(m)) == 1
    return [tuple(row) for row in m]


def solve_exact(rows, target):
    """Coordinates x with x @ rows == target over Q, or None."""
    if not rows:
        return [] if all(Fraction(t) == 0 for t in target) else None
    n = len(rows[0])
    aug = [[Fraction(rows[i][j]) for i in range(len(rows))] + [Fraction(target[j])]
           for j in range(n)]
    ncols = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


def cone_contains_oracle(generators, point):
    """Membership via independent generating subsets.

    A point of a cone is a nonnegative combination of some linearly
    independent subset of the generators, so testing all of them is an
    exhaustive exact check for small inputs.
    """
    gens = [tuple(g) for g in generators]
    n = len(point)
    if all(Fraction(x) == 0 for x in point):
        return True
    for r in range(1, n + 1):
        for subset in combinations(gens, r):
            if span_lattice(subset, n).rank != r:
                continue
            coeffs = solve_exact(list(subset), point)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                return True
    return False


def facet_count_oracle(generators, box=8):
    """Count facets of a full-dimensional pointed cone by scanning all
    primitive support normals with entries in [-box, box]."""
    n = len(generators[0])
    from math import gcd
    seen = set()
    for u in product(range(-box, box + 1), repeat=n):
        if all(x == 0 for x in u):
            continue
        g = gcd(*[abs(x) for x in u])
        u = tuple(x // g for x in u)
        if u in seen:
            continue
        pairings = [dot(u, gen) for gen in generators]
        if any(p < 0 for p in pairings):
            continue
        tight = [generators[i] for i, p in enumerate(pairings) if p == 0]
        if tight and span_lattice(tight, n).rank == n - 1:
            seen.add(u)
    return len(seen)


def is_canonical_row_hnf(h):
    """Positive pivots strictly moving right, entries above each pivot
    reduced into [0, pivot), zero rows at the bottom."""
    last_pivot = -1
    seen_zero = False
    for row in h:
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        c = nz[0]
        if c <= last_pivot or row[c] <= 0:
            return False
        last_pivot = c
    # above-pivot reduction
    rows = [row for row in h if any(x != 0 for x in row)]
    for i, row in enumerate(rows):
        c = next(j for j, x in enumerate(row) if x != 0)
        for k in range(i):
            if not 0 <= rows[k][c] < row[c]:
                return False
    return True


def hnf_oracle_2x2(a, box=3):
    """All canonical forms U @ A over unimodular 2x2 U with small entries.

    For a correct implementation there is exactly one, and searching the box
    is an independent route to it.
    """
    results = set()
    for entries in product(range(-box, box + 1), repeat=4):
        u = [entries[:2], entries[2:]]
        det = u[0][0] * u[1][1] - u[0][1] * u[1][0]
        if abs(det) != 1:
            continue
        h = tuple(tuple(sum(u[i][k] * a[k][j] for k in range(2))
                        for j in range(2)) for i in range(2))
        if is_canonical_row_hnf(h):
            results.add(h)
    return results


def numpy_span_oracle(polyhedron, lattice, box):
    """Span of the polyhedron's lattice points found by flat enumeration of
    the full integer box.  Exact: all values stay far below 2**63."""
    import numpy as np

    n = polyhedron.ambient_rank
    den = lattice.den
    r = box * den
    axes = [np.arange(-r, r + 1, dtype=np.int64)] * n
    grid = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grid], axis=1)
    mask = np.ones(len(pts), dtype=bool)
    for a, c in polyhedron.inequalities:
        cc = Fraction(c) * den
        k = cc.denominator
        row = np.array([k * x for x in a], dtype=np.int64)
        mask &= (pts @ row) >= int(cc * k)
    pts = pts[mask]
    rows = [tuple(int(x) for x in p) for p in pts]
    standard = den == 1 and lattice.basis_int == Sublattice.standard(n).basis_int
    if not standard:
        from conewise.danilov import _in_scaled_lattice
        rows = [y for y in rows if _in_scaled_lattice(lattice, y)]
    # only the enumeration above is the oracle; folding the point set into
    # a span reuses the library reducer, which the HNF oracle covers
    from conewise.danilov import _span_of_scaled_points
    return _span_of_scaled_points(rows, n, den)


def apply_unimodular(fan, u):
    """The same fan expressed in the coordinates of the unimodular basis u.

    Rays transform by the inverse matrix and stay primitive; degrees on the
    dual side transform by the transpose of u.
    """
    from conewise.fans import Fan
    from conewise.linalg import invert_unimodular, vec_mat, mat_transpose

    uinv = invert_unimodular(u)
    new_rays = [vec_mat(r, uinv) for r in fan.rays]
    new_fan = Fan(fan.ambient_rank, new_rays, fan.maximal_cone_rays,
                  labels=fan.labels)

    def degree_map(m):
        return vec_mat(tuple(Fraction(x) for x in m), mat_transpose(u))

    return new_fan, degree_map
