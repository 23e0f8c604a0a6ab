"""Five points in R^3: the (at most) two triangulations and the quadratic
form separating their Dirichlet energies."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from dfl.delaunay import degeneracy_scan, delaunay_witness
from dfl.errors import DegenerateConfiguration, DimensionMismatch, SingleTriangulation
from dfl.functionals import Evaluator, FunctionalSpec, Kind
from dfl.geometry import SiteSet
from dfl.triangulation import Triangulation, canonical_key, validate


def _as_sites(points) -> SiteSet:
    sites = points if isinstance(points, SiteSet) else SiteSet(points)
    if sites.dim != 3 or len(sites) != 5:
        raise DimensionMismatch("need exactly 5 points in R^3")
    return sites


def two_triangulations_3d(points) -> tuple[Triangulation, ...]:
    """Every triangulation of five points, by testing all subsets of the
    five candidate tetrahedra. Sorted by number of tetrahedra."""
    sites = _as_sites(points)
    if degeneracy_scan(sites).coplanar:
        raise DegenerateConfiguration("four of the five points are coplanar")
    tets = list(itertools.combinations(range(5), 4))
    found = []
    for r in range(1, 6):
        for subset in itertools.combinations(tets, r):
            t = Triangulation(sites, subset, _trusted=True)
            if validate(t).valid:
                found.append(t)
    return tuple(sorted(found, key=lambda t: (len(t), canonical_key(t))))


def _rref(rows):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows) -> list[list[Fraction]]:
    """Exact basis of the right kernel of a rational matrix."""
    n = len(rows[0])
    red, pivots = _rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


@dataclass
class QuadraticFormSummary:
    keys: tuple  # canonical keys of (t1, t2); B(Y) = DF(t1, Y) - DF(t2, Y)
    matrix: list  # exact symmetric matrix, B(Y) = Y^T M Y
    singular_values: list
    rank: int
    constant: Fraction | None  # M = constant * l l^T when rank is 1
    linear_form: list | None
    kernel: list
    kernel_check: bool  # B(v) == 0 exactly for each kernel basis vector
    delaunay: tuple  # Delaunay flag for (t1, t2)

    @property
    def residual(self) -> float:
        s = self.singular_values
        return s[1] / s[0] if s[0] > 0 else float("nan")

    @property
    def favored(self) -> str | None:
        """Key of the triangulation with the smaller energy whenever l(Y) != 0."""
        if self.constant is None or self.constant == 0:
            return None
        return self.keys[1] if self.constant > 0 else self.keys[0]

    def to_dict(self) -> dict:
        return {"keys": list(self.keys),
                "matrix": [[str(x) for x in row] for row in self.matrix],
                "singular_values": self.singular_values,
                "rank1_residual": self.residual,
                "rank": self.rank,
                "constant": None if self.constant is None else str(self.constant),
                "linear_form": None if self.linear_form is None else [str(x) for x in self.linear_form],
                "kernel": [[str(x) for x in v] for v in self.kernel],
                "kernel_check": self.kernel_check,
                "delaunay": list(self.delaunay),
                "favored": self.favored}


def _form_value(m, y):
    return sum(m[i][j] * y[i] * y[j] for i in range(len(y)) for j in range(len(y)))


def energy_difference(t1: Triangulation, t2: Triangulation, heights) -> Fraction:
    spec = FunctionalSpec(Kind.DF, heights=heights)
    return (Evaluator(spec, t1.sites).score(t1).exact
            - Evaluator(spec, t2.sites).score(t2).exact)


def theorem8_form(points, pair=None) -> QuadraticFormSummary:
    """Exact matrix of B(Y) = DF(t1, Y) - DF(t2, Y) and its rank structure."""
    if pair is None:
        found = two_triangulations_3d(points)
        if len(found) < 2:
            raise SingleTriangulation("these five points admit only one triangulation")
        pair = found[:2]
    t1, t2 = pair
    n = len(t1.sites)

    def basis(*idx):
        y = [0] * n
        for i in idx:
            y[i] += 1
        return y

    diag = [energy_difference(t1, t2, basis(i)) for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = diag[i]
        for j in range(i + 1, n):
            off = (energy_difference(t1, t2, basis(i, j)) - diag[i] - diag[j]) / 2
            m[i][j] = m[j][i] = off
    sv = [float(x) for x in np.linalg.svd(np.array(m, dtype=float), compute_uv=False)]
    red, pivots = _rref(m)
    rank = len(pivots)
    constant = form = None
    if rank == 1:
        i = next(i for i in range(n) if m[i][i] != 0)
        constant = m[i][i]
        form = [x / constant for x in m[i]]
        if any(m[a][b] != constant * form[a] * form[b] for a in range(n) for b in range(n)):
            constant = form = None
    kernel = nullspace(m)
    kernel_check = all(energy_difference(t1, t2, v) == 0 for v in kernel)
    flags = tuple(delaunay_witness(t) is None for t in (t1, t2))
    return QuadraticFormSummary((canonical_key(t1), canonical_key(t2)), m, sv, rank,
                                constant, form, kernel, kernel_check, flags)
