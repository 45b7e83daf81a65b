"""Matrix-function model of the two-projection free product.

C^2 * C^2 is realized inside continuous functions [0,1] -> M2 with
diagonal endpoint values: the first copy's minimal projection maps to a
constant diagonal projection p(t), the second to a rotating projection
q(t).  Sampling this model gives an independent numeric zero test for
the exact reduced-word arithmetic.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import AlgebraError, Element, OwnerMismatch
from .products import TensorAlgebra
from .qsg import c2star2, composition_qsg_qmap2, cyclic_group, free_product_qsg, group_function_qsg

GOLDEN = (math.sqrt(5) - 1) / 2

_IDENT = np.eye(2, dtype=complex)


def sample_p(t: float) -> np.ndarray:
    """The constant projection diag(0, 1)."""
    if not 0 <= t <= 1:
        raise AlgebraError("t must lie in [0, 1]")
    return np.array([[0, 0], [0, 1]], dtype=complex)


def sample_q(t: float) -> np.ndarray:
    """The rotating projection; diagonal at both endpoints."""
    if not 0 <= t <= 1:
        raise AlgebraError("t must lie in [0, 1]")
    c = math.cos(2 * math.pi * t)
    s = math.sin(2 * math.pi * t)
    return 0.5 * np.array([[1 - c, 1j * s], [-1j * s, 1 + c]], dtype=complex)


def sample_points(count: int) -> np.ndarray:
    """Sample set in [0,1]: endpoints, a uniform grid, and golden-ratio
    offsets that avoid resonance with the trigonometric entries."""
    if count < 2:
        raise AlgebraError("need at least the two endpoints")
    uniform = np.linspace(0.0, 1.0, max(2, count // 2))
    golden = np.mod(np.arange(1, count - len(uniform) + 1) * GOLDEN, 1.0)
    return np.unique(np.concatenate([uniform, golden]))


_MODEL = None


def model_algebra():
    global _MODEL
    if _MODEL is None:
        _MODEL = c2star2()
    return _MODEL


def _word_matrix(word, t: float) -> np.ndarray:
    mats = (sample_p(t), sample_q(t))
    acc = _IDENT
    for (k, _comp) in word:
        acc = acc @ mats[k]
    return acc


def evaluate_element(x: Element, t: float) -> np.ndarray:
    """Evaluate an element of C^2 * C^2 at the point t of the model."""
    if x.owner != model_algebra():
        raise OwnerMismatch("element does not live in C^2 * C^2")
    acc = np.zeros((2, 2), dtype=complex)
    for word, c in x.coords.items():
        acc += complex(c) * _word_matrix(word, t)
    return acc


def max_model_residual(x: Element, samples: int = 200) -> float:
    """max over sampled t of the largest matrix entry of x evaluated in
    the model (entry-wise max as the working norm)."""
    ts = sample_points(samples)
    worst = 0.0
    for t in ts:
        worst = max(worst, float(np.abs(evaluate_element(x, t)).max()))
    return worst


def oracle_is_zero(x: Element, samples: int = 200, tol: float = 1e-9) -> bool:
    return max_model_residual(x, samples) <= tol


def evaluate_pair(x: Element, s: float, t: float) -> np.ndarray:
    """Evaluate an element of (C^2 * C^2) (x) (C^2 * C^2) as a 4x4 matrix,
    first leg at s, second at t."""
    T = x.owner
    if not isinstance(T, TensorAlgebra) or len(T.legs) != 2:
        raise AlgebraError("need a two-leg tensor element")
    acc = np.zeros((4, 4), dtype=complex)
    for (w1, w2), c in x.coords.items():
        acc += complex(c) * np.kron(_word_matrix(w1, s), _word_matrix(w2, t))
    return acc


def verify_model(samples: int = 1000, pairs: int = 100) -> dict:
    """Numeric verification of the model: the generators are self-adjoint
    idempotents, endpoint values are diagonal, and both comultiplication
    images of the first projection are self-adjoint idempotents as 4x4
    matrices at sampled (s, t) pairs."""
    ts = sample_points(samples)
    p_idem = q_idem = p_adj = q_adj = 0.0
    for t in ts:
        p = sample_p(t)
        q = sample_q(t)
        p_idem = max(p_idem, float(np.abs(p @ p - p).max()))
        q_idem = max(q_idem, float(np.abs(q @ q - q).max()))
        p_adj = max(p_adj, float(np.abs(p.conj().T - p).max()))
        q_adj = max(q_adj, float(np.abs(q.conj().T - q).max()))
    endpoint = 0.0
    for t in (0.0, 1.0):
        for m in (sample_p(t), sample_q(t)):
            endpoint = max(
                endpoint, float(abs(m[0, 1])), float(abs(m[1, 0]))
            )

    qsg2, _eps = group_function_qsg(cyclic_group(2))
    delta = free_product_qsg([qsg2, qsg2]).comult
    deltac = composition_qsg_qmap2().comult
    dp = delta.images["e1@1"]
    dcp = deltac.images["e1@1"]
    grid = sample_points(max(2, int(math.isqrt(pairs))))
    d_idem = d_adj = dc_idem = dc_adj = 0.0
    for s in grid:
        for t in grid:
            m1 = evaluate_pair(dp, s, t)
            d_idem = max(d_idem, float(np.abs(m1 @ m1 - m1).max()))
            d_adj = max(d_adj, float(np.abs(m1.conj().T - m1).max()))
            m2 = evaluate_pair(dcp, s, t)
            dc_idem = max(dc_idem, float(np.abs(m2 @ m2 - m2).max()))
            dc_adj = max(dc_adj, float(np.abs(m2.conj().T - m2).max()))
    return {
        "p_idempotent": p_idem,
        "q_idempotent": q_idem,
        "p_selfadjoint": p_adj,
        "q_selfadjoint": q_adj,
        "endpoint_offdiagonal": endpoint,
        "delta_image_idempotent": d_idem,
        "delta_image_selfadjoint": d_adj,
        "composition_image_idempotent": dc_idem,
        "composition_image_selfadjoint": dc_adj,
    }
