"""Two small dense simplex solvers.

``simplex_max_rational`` runs entirely in exact rational arithmetic and is
used where the answer must be an exact fraction (fractional chromatic and
clique-cover numbers). It solves  max c'x  s.t.  Ax <= b, x >= 0  with b >= 0,
so no phase-1 is needed.

``simplex_min_float`` is a floating-point two-phase solver for
min c'x  s.t.  Ax <= b, x >= 0  with arbitrary b sign. Dantzig pricing with a
permanent switch to Bland's rule when the objective stalls, so degenerate
problems terminate. Callers are expected to re-verify solutions against the
original data (see delsarte.py).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from graphcap.errors import GraphcapError


class LPFailure(GraphcapError):
    """The LP was infeasible/unbounded or the solver hit its iteration cap."""


# ---------------------------------------------------------------------------
# exact rational simplex


def simplex_max_rational(
    a_ub: Sequence[Sequence[Fraction]],
    b_ub: Sequence[Fraction],
    c: Sequence[Fraction],
) -> tuple[Fraction, list[Fraction]]:
    """Maximize c'x subject to a_ub x <= b_ub, x >= 0 (all b_ub >= 0)."""
    m = len(a_ub)
    n = len(c)
    if any(b < 0 for b in b_ub):
        raise ValueError("rational solver requires nonnegative right-hand sides")

    # tableau: n structural + m slack columns + rhs; z-row stores -c
    width = n + m + 1
    tableau = []
    for i in range(m):
        row = [Fraction(v) for v in a_ub[i]] + [Fraction(0)] * m + [Fraction(b_ub[i])]
        row[n + i] = Fraction(1)
        tableau.append(row)
    zrow = [-Fraction(v) for v in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))

    bland = False
    stalled = 0
    last_obj = zrow[-1]
    max_iters = 500 * (n + m) + 5000
    for _ in range(max_iters):
        entering = -1
        if bland:
            for j in range(width - 1):
                if zrow[j] < 0:
                    entering = j
                    break
        else:
            best = Fraction(0)
            for j in range(width - 1):
                if zrow[j] < best:
                    best = zrow[j]
                    entering = j
        if entering < 0:
            x = [Fraction(0)] * n
            for i, bv in enumerate(basis):
                if bv < n:
                    x[bv] = tableau[i][-1]
            return zrow[-1], x

        leaving = -1
        best_ratio = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            raise LPFailure("rational LP is unbounded")

        _pivot_exact(tableau, zrow, basis, leaving, entering)

        if zrow[-1] == last_obj:
            stalled += 1
            if stalled > 2 * (n + m):
                bland = True
        else:
            stalled = 0
            last_obj = zrow[-1]
    raise LPFailure("rational simplex hit its iteration cap")


def _pivot_exact(tableau, zrow, basis, row, col):
    pivot = tableau[row][col]
    tableau[row] = [v / pivot for v in tableau[row]]
    prow = tableau[row]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            factor = r[col]
            tableau[i] = [v - factor * p for v, p in zip(r, prow)]
    if zrow[col] != 0:
        factor = zrow[col]
        zrow[:] = [v - factor * p for v, p in zip(zrow, prow)]
    basis[row] = col


# ---------------------------------------------------------------------------
# floating-point two-phase simplex


@dataclass
class FloatLPResult:
    x: np.ndarray
    objective: float
    reduced_costs: np.ndarray  # over structural+slack columns; >= -tol at optimum
    iterations: int


def simplex_min_float(
    c: np.ndarray,
    a_ub: np.ndarray,
    b_ub: np.ndarray,
    *,
    dtype=np.float64,
    tol: float = 1e-9,
) -> FloatLPResult:
    """Minimize c'x subject to a_ub x <= b_ub, x >= 0."""
    c = np.asarray(c, dtype=dtype)
    a = np.asarray(a_ub, dtype=dtype)
    b = np.asarray(b_ub, dtype=dtype).copy()
    m, n = a.shape

    # equality form [A | I] with rows flipped to make rhs nonnegative;
    # artificials only where the flipped slack cannot serve as a basis column
    body = np.hstack([a, np.eye(m, dtype=dtype)])
    art_rows = []
    for i in range(m):
        if b[i] < 0:
            body[i] *= -1
            b[i] *= -1
            art_rows.append(i)
    n_art = len(art_rows)
    cols = n + m + n_art
    tab = np.zeros((m, cols + 1), dtype=dtype)
    tab[:, : n + m] = body
    tab[:, -1] = b
    basis = [n + i for i in range(m)]
    for k, i in enumerate(art_rows):
        tab[i, n + m + k] = 1.0
        basis[i] = n + m + k

    iterations = 0

    def run_phase(zrow: np.ndarray, restrict: int) -> np.ndarray:
        nonlocal iterations
        bland = False
        stalled = 0
        last = zrow[-1]
        limit = 200 * (cols + 1) + 2000
        for _ in range(limit):
            body_z = zrow[:restrict]
            if bland:
                neg = np.nonzero(body_z < -tol)[0]
                entering = int(neg[0]) if neg.size else -1
            else:
                j = int(np.argmin(body_z))
                entering = j if body_z[j] < -tol else -1
            if entering < 0:
                return zrow
            col = tab[:, entering]
            pos = col > tol
            if not np.any(pos):
                raise LPFailure("float LP is unbounded")
            ratios = np.full(m, np.inf, dtype=dtype)
            ratios[pos] = tab[pos, -1] / col[pos]
            best = np.min(ratios)
            thresh = best + max(1e-14, 1e-12 * abs(float(best)))
            candidates = np.nonzero(ratios <= thresh)[0]
            leaving = int(min(candidates, key=lambda i: basis[i]))

            pivot = tab[leaving, entering]
            tab[leaving] /= pivot
            factors = tab[:, entering].copy()
            factors[leaving] = 0.0
            tab[:] -= np.outer(factors, tab[leaving])
            zfac = zrow[entering]
            if zfac != 0.0:
                zrow -= zfac * tab[leaving]
            basis[leaving] = entering
            iterations += 1

            if abs(zrow[-1] - last) <= tol * (1 + abs(last)):
                stalled += 1
                if stalled > 2 * (m + n):
                    bland = True
            else:
                stalled = 0
                last = zrow[-1]
        raise LPFailure("float simplex hit its iteration cap")

    if n_art:
        zrow = np.zeros(cols + 1, dtype=dtype)
        for i in art_rows:
            zrow[: n + m] -= tab[i, : n + m]
            zrow[-1] -= tab[i, -1]
        zrow = run_phase(zrow, restrict=n + m)  # artificials never re-enter
        if -zrow[-1] > 1e-7 * (1 + float(np.abs(b).max(initial=0.0))):
            raise LPFailure(f"float LP infeasible (phase-1 residual {-zrow[-1]:.3e})")
        # drive any basic artificial out of the basis, or drop its row
        for i in range(m):
            if basis[i] >= n + m:
                row = tab[i, : n + m]
                nz = np.nonzero(np.abs(row) > 1e3 * tol)[0]
                if nz.size:
                    entering = int(nz[0])
                    pivot = tab[i, entering]
                    tab[i] /= pivot
                    factors = tab[:, entering].copy()
                    factors[i] = 0.0
                    tab[:] -= np.outer(factors, tab[i])
                    basis[i] = entering
                # else: redundant row, harmless to leave with artificial at zero

    zrow = np.zeros(cols + 1, dtype=dtype)
    zrow[:n] = c
    for i, bv in enumerate(basis):
        if bv < n and c[bv] != 0.0:
            zrow -= c[bv] * tab[i]
    zrow = run_phase(zrow, restrict=n + m)

    x = np.zeros(n, dtype=dtype)
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i, -1]
    objective = float(c @ x)
    return FloatLPResult(
        x=x,
        objective=objective,
        reduced_costs=np.asarray(zrow[: n + m]),
        iterations=iterations,
    )
