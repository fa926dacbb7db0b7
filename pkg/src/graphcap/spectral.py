"""Adjacency spectra and the eigenvalue form of the Lovász number.

Eigenvalues come from a cyclic Jacobi sweep so the package carries no hard
linear-algebra dependency beyond numpy arrays. For an edge-transitive graph
the optimal Lovász matrix is an explicit affine image of the adjacency
matrix, and the converse machinery only needs three spectral constants from
it: the bottom-eigenspace dimension, the off-diagonal projector value on
edges, and the effective alphabet size derived from either.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from graphcap.caps import SPECTRUM_VERTEX_CAP
from graphcap.errors import CapExceeded, GraphcapError, NonConstantC
from graphcap.graphs import Graph


def jacobi_eigh(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, eigenvectors as matching columns).
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)
    if norm == 0.0 or n == 1:
        vals = np.diag(a).copy()
        order = np.argsort(-vals)
        return vals[order], v[:, order]

    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, norm**2 - float(np.sum(np.diag(a) ** 2))))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot_p = a[p, :].copy()
                rot_q = a[q, :].copy()
                a[p, :] = c * rot_p - s * rot_q
                a[q, :] = s * rot_p + c * rot_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = a[q, p] = 0.0
                vec_p = v[:, p].copy()
                v[:, p] = c * vec_p - s * v[:, q]
                v[:, q] = s * vec_p + c * v[:, q]
        norm = math.sqrt(float(np.sum(np.diag(a) ** 2)) + 2.0 * float(np.sum(np.triu(a, 1) ** 2)))
    else:
        raise GraphcapError("jacobi eigensolver failed to converge")

    vals = np.diag(a).copy()
    order = np.argsort(-vals)
    return vals[order], v[:, order]


def adjacency_spectrum(g: Graph) -> list[float]:
    """All adjacency eigenvalues, descending."""
    if g.n > SPECTRUM_VERTEX_CAP:
        raise CapExceeded(f"dense eigensolve capped at {SPECTRUM_VERTEX_CAP} vertices")
    vals, _ = jacobi_eigh(g.adjacency_matrix())
    return [float(x) for x in vals]


def lovasz_theta_edge_transitive(g: Graph) -> float:
    """theta = -lambda_min * |V| / (lambda_max - lambda_min), valid for
    edge-transitive graphs with at least one edge."""
    if g.num_edges == 0:
        raise ValueError("theta formula needs at least one edge")
    vals = adjacency_spectrum(g)
    lam0, lamm = vals[0], vals[-1]
    return -lamm * g.n / (lam0 - lamm)


def lovasz_matrix(g: Graph) -> np.ndarray:
    """The optimal PSD witness matrix |V|/(lam0-lamm) (A - lamm I)."""
    if g.num_edges == 0:
        raise ValueError("needs at least one edge")
    vals = adjacency_spectrum(g)
    lam0, lamm = vals[0], vals[-1]
    a = g.adjacency_matrix()
    return g.n / (lam0 - lamm) * (a - lamm * np.eye(g.n))


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: tuple[float, ...]
    lambda0: float
    lambda_min: float
    theta_l: float
    multiplicity_min: int
    c_const: float
    q_prime: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def eigenspace_constants(
    g: Graph,
    group_tol: float = 1e-8,
    c_tol: float = 1e-7,
) -> SpectralData:
    """Bottom-eigenspace constants of the adjacency matrix.

    Verifies that the projector onto the lambda_min-eigenspace is constant on
    edges (raising NonConstantC with the observed spread otherwise) and that
    the three expressions for the effective alphabet size agree.
    """
    if g.num_edges == 0:
        raise ValueError("constants are defined only for graphs with an edge")
    if g.n > SPECTRUM_VERTEX_CAP:
        raise CapExceeded(f"dense eigensolve capped at {SPECTRUM_VERTEX_CAP} vertices")
    vals, vecs = jacobi_eigh(g.adjacency_matrix())
    lam0 = float(vals[0])
    lamm = float(vals[-1])
    radius = max(abs(lam0), abs(lamm))
    bottom = np.abs(vals - lamm) <= group_tol * radius
    u = vecs[:, bottom]
    p_m = u @ u.T
    d_dim = int(u.shape[1])

    c_values = [-g.n * p_m[v, w] for v, w in g.edges()]
    c_lo, c_hi = min(c_values), max(c_values)
    if c_hi - c_lo > c_tol:
        raise NonConstantC(
            f"projector not constant on edges of {g.label or 'graph'}: "
            f"c ranges over [{c_lo:.9f}, {c_hi:.9f}]",
            values=(c_lo, c_hi),
        )
    c_const = float(np.mean(c_values))
    if c_const <= 0:
        raise GraphcapError(f"expected a positive edge constant, got {c_const}")

    theta = -lamm * g.n / (lam0 - lamm)
    q_prime = 1.0 + d_dim / c_const
    spectral_q = 1.0 - lam0 / lamm
    theta_q = g.n / theta
    if abs(q_prime - spectral_q) > 1e-7 * max(1.0, abs(q_prime)) or abs(
        q_prime - theta_q
    ) > 1e-7 * max(1.0, abs(q_prime)):
        raise GraphcapError(
            f"alphabet-size expressions disagree: {q_prime} vs {spectral_q} vs {theta_q}"
        )
    if abs(d_dim * lamm + c_const * lam0) > 1e-6 * max(1.0, abs(d_dim * lamm)):
        raise GraphcapError("eigenspace trace identity violated beyond tolerance")

    return SpectralData(
        eigenvalues=tuple(float(x) for x in vals),
        lambda0=lam0,
        lambda_min=lamm,
        theta_l=float(theta),
        multiplicity_min=d_dim,
        c_const=c_const,
        q_prime=float(q_prime),
    )
