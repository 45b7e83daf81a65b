"""Grid-evaluation kernel for scalar relation systems.

The character grid scan is the one hot loop in the package: a polynomial
relation system evaluated on ~10^6 scalar assignments.  The relations are
flattened into term/letter arrays once; evaluation then runs either in
the compiled extension (freeqsg._gridcore, built from Cython) or in the
vectorized numpy fallback.  The backend is chosen at import; set
FREEQSG_NO_EXT=1 to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

try:
    if os.environ.get("FREEQSG_NO_EXT"):
        _gridcore = None
    else:
        from . import _gridcore  # type: ignore[attr-defined]
except ImportError:
    _gridcore = None


def backend_name() -> str:
    return "numpy" if _gridcore is None else "cython"


@dataclass
class FlatSystem:
    """Relation system flattened for array evaluation.

    Complex variable j is coords[:, var_re[j]] + i*coords[:, var_im[j]]
    (var_im[j] = -1 for real variables).  Relation r consists of terms
    rel_ptr[r]..rel_ptr[r+1]; term t has coefficient coeff[t] and letters
    term_ptr[t]..term_ptr[t+1]; letter l multiplies in variable
    let_var[l], conjugated when let_conj[l] is set.
    """

    ncoords: int
    var_re: np.ndarray
    var_im: np.ndarray
    rel_ptr: np.ndarray
    coeff: np.ndarray
    term_ptr: np.ndarray
    let_var: np.ndarray
    let_conj: np.ndarray

    @property
    def nrel(self) -> int:
        return len(self.rel_ptr) - 1


def _variables(flat: FlatSystem, coords: np.ndarray) -> np.ndarray:
    re = coords[:, flat.var_re]
    im = np.zeros_like(re)
    has_im = flat.var_im >= 0
    if has_im.any():
        im[:, has_im] = coords[:, flat.var_im[has_im]]
    return re + 1j * im


def relation_values(flat: FlatSystem, coords: np.ndarray) -> np.ndarray:
    """Complex value of every relation at every point; (N, nrel)."""
    coords = np.ascontiguousarray(coords, dtype=np.float64)
    n = len(coords)
    vars_ = _variables(flat, coords)
    out = np.zeros((n, flat.nrel), dtype=np.complex128)
    for r in range(flat.nrel):
        acc = out[:, r]
        for t in range(flat.rel_ptr[r], flat.rel_ptr[r + 1]):
            term = np.full(n, flat.coeff[t])
            for li in range(flat.term_ptr[t], flat.term_ptr[t + 1]):
                v = vars_[:, flat.let_var[li]]
                term *= np.conj(v) if flat.let_conj[li] else v
            acc += term
    return out


def _max_residuals_numpy(flat: FlatSystem, coords: np.ndarray) -> np.ndarray:
    return np.abs(relation_values(flat, coords)).max(axis=1)


def max_residuals(flat: FlatSystem, coords: np.ndarray,
                  force_numpy: bool = False) -> np.ndarray:
    """max over relations of |relation value|, per point; (N,)."""
    coords = np.ascontiguousarray(coords, dtype=np.float64)
    if _gridcore is not None and not force_numpy:
        return _gridcore.max_residuals(
            coords,
            flat.var_re,
            flat.var_im,
            flat.rel_ptr,
            flat.coeff,
            flat.term_ptr,
            flat.let_var,
            flat.let_conj,
        )
    return _max_residuals_numpy(flat, coords)
