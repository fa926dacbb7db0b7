"""Krawtchouk polynomials with a real alphabet parameter and the finite-n
linear-programming upper bound on code size.

The LP minimizes H(0) over nonnegative Krawtchouk expansions H with H_0 = 1
and H(x) <= 0 at every integer x in [d, n]. Multiplying the optimum by
theta^n (theta from the spectral module) upper-bounds the independence number
of the distance-d power graph. Solutions carry a certificate: the returned
coefficients are re-substituted into every constraint with compensated
summation, independently of the solver's tableau arithmetic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from graphcap.errors import GraphcapError
from graphcap.graphs import Graph
from graphcap.simplex import simplex_min_float
from graphcap.spectral import SpectralData, eigenspace_constants

MAX_LP_LENGTH = 128

COEFF_TOL = 1e-12
SLACK_TOL = 1e-9


def _neumaier_sum(terms) -> float:
    total = 0.0
    comp = 0.0
    for t in terms:
        s = total + t
        if abs(total) >= abs(t):
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
    return total + comp


def _binom_real(x: float, j: int) -> float:
    out = 1.0
    for t in range(j):
        out *= (x - t) / (t + 1)
    return out


def krawtchouk(ell: int, x: float, n: int, q_prime: float) -> float:
    """K_ell(x) = sum_j C(x,j) C(n-x, ell-j) (-1)^j (q'-1)^(ell-j).

    Generalized binomials allow real x; summation is compensated so the
    alternating terms stay accurate up to n = 128.
    """
    if not 0 <= ell <= n:
        raise ValueError(f"polynomial degree must lie in [0,{n}], got {ell}")
    if n > MAX_LP_LENGTH:
        raise ValueError(f"length capped at {MAX_LP_LENGTH}, got {n}")
    if q_prime <= 1.0:
        raise ValueError(f"alphabet parameter must exceed 1, got {q_prime}")
    qm1 = q_prime - 1.0
    terms = []
    for j in range(ell + 1):
        sign = -1.0 if j & 1 else 1.0
        terms.append(sign * _binom_real(x, j) * _binom_real(n - x, ell - j) * qm1 ** (ell - j))
    return _neumaier_sum(terms)


@dataclass(frozen=True)
class LPSolution:
    n: int
    d: int
    q_prime: float
    coefficients: tuple[float, ...]  # H_0 .. H_n, H_0 = 1
    objective: float
    slacks: tuple[float, ...]  # H(x) for x = d .. n, all <= 0 up to tolerance

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "d": self.d,
                "q_prime": self.q_prime,
                "coefficients": list(self.coefficients),
                "objective": self.objective,
                "slacks": list(self.slacks),
            },
            indent=2,
        )


def _certify(n: int, d: int, q_prime: float, coeffs: np.ndarray, objective: float) -> tuple[float, ...]:
    """Re-substitute the solution into the raw constraints; raise on violation."""
    if coeffs[0] != 1.0:
        raise GraphcapError("normalization lost: H_0 != 1")
    if np.min(coeffs) < -COEFF_TOL:
        raise GraphcapError(f"negative coefficient in LP solution: {np.min(coeffs)}")
    slacks = []
    for x in range(d, n + 1):
        hx = _neumaier_sum(coeffs[ell] * krawtchouk(ell, float(x), n, q_prime) for ell in range(n + 1))
        if hx > SLACK_TOL:
            raise GraphcapError(f"constraint H({x}) = {hx} > 0 violates the certificate")
        slacks.append(hx)
    h0 = _neumaier_sum(coeffs[ell] * krawtchouk(ell, 0.0, n, q_prime) for ell in range(n + 1))
    if abs(h0 - objective) > SLACK_TOL * max(1.0, abs(objective)):
        raise GraphcapError(f"objective mismatch: recomputed {h0} vs solver {objective}")
    return tuple(slacks)


def a_lp1(n: int, d: int, q_prime: float) -> LPSolution:
    """Finite-n linear-programming bound with integer distance constraints.

    Maintains H_0 = 1 and H(x) <= 0 for every integer x in [d, n]; returns
    the minimized H(0) with a verified certificate.
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    if n > MAX_LP_LENGTH:
        raise ValueError(f"length capped at {MAX_LP_LENGTH}, got {n}")
    if q_prime <= 1.0:
        raise ValueError(f"alphabet parameter must exceed 1, got {q_prime}")

    # Primal (after normalizing each column by K_ell(0)):
    #   min 1'y   s.t.  M y <= -1,  y >= 0,   M[x,ell] = K_ell(x)/K_ell(0).
    # The simplex runs on the dual, which is feasible at zero (no phase-1):
    #   min -1'mu  s.t.  -M' mu <= 1,  mu >= 0,
    # and the primal comes back as the reduced costs of the dual's slacks.
    k0 = np.array([krawtchouk(ell, 0.0, n, q_prime) for ell in range(n + 1)])
    m_scaled = np.array(
        [
            [krawtchouk(ell, float(x), n, q_prime) / k0[ell] for ell in range(1, n + 1)]
            for x in range(d, n + 1)
        ]
    )
    n_rows = m_scaled.shape[0]
    result = simplex_min_float(
        -np.ones(n_rows), -m_scaled.T, np.ones(n), dtype=np.longdouble
    )
    y_scaled = np.asarray(result.reduced_costs[n_rows : n_rows + n], dtype=float)
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    coeffs[1:] = np.maximum(y_scaled, 0.0) / k0[1:]  # clamp dust; certificate re-checks

    objective = float(_neumaier_sum(coeffs[ell] * k0[ell] for ell in range(n + 1)))
    try:
        slacks = _certify(n, d, q_prime, coeffs, objective)
    except GraphcapError as exc:
        raise GraphcapError(
            f"numeric failure certifying A_LP1(n={n}, d={d}, q'={q_prime:g}): {exc}; "
            f"objective scale {objective:.3e} leaves the absolute slack tolerance "
            f"{SLACK_TOL:g} unreachable in double precision at this length"
        ) from exc
    dual_objective = 1.0 - result.objective  # 1 + sum(mu)
    gap = abs(objective - dual_objective)
    if gap > 1e-7 * max(1.0, abs(objective)):
        raise GraphcapError(
            f"primal-dual gap {gap:.3e} too large for objective {objective:.6e}"
        )
    return LPSolution(
        n=n,
        d=d,
        q_prime=float(q_prime),
        coefficients=tuple(float(v) for v in coeffs),
        objective=objective,
        slacks=slacks,
    )


def finite_alpha_upper(g: Graph, n: int, d: int, spectral: SpectralData | None = None) -> float:
    """theta^n times the LP value: an upper bound on the independence number
    of the distance-d power graph. Requires the edge-constant gate to pass."""
    if spectral is None:
        spectral = eigenspace_constants(g)  # propagates NonConstantC
    solution = a_lp1(n, d, spectral.q_prime)
    return spectral.theta_l**n * solution.objective


def lp_rate(n: int, delta: float, q_prime: float) -> float:
    """Empirical finite-n rate (1/n) log A_LP1(n, ceil(delta n)) in nats."""
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must lie in (0,1], got {delta}")
    d = math.ceil(delta * n)
    solution = a_lp1(n, max(d, 1), q_prime)
    return math.log(solution.objective) / n
