"""Numeric character solver for small presentations.

Characters are scalar *-homomorphisms: generators become complex numbers
(self-adjoint ones real), stars become conjugates, and the relations
become a polynomial system.  The solver scans a coordinate grid, keeps
low-residual points, polishes them with batched Gauss-Newton steps, and
clusters the resulting cloud into connected components by single linkage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from .algebra import AlgebraError, Presentation
from .kernel import FlatSystem, max_residuals, relation_values

MAX_REAL_UNKNOWNS = 6


# ---------------------------------------------------------------------------
# compilation: presentation -> flat scalar system


@dataclass
class CompiledSystem:
    presentation: Presentation
    gen_names: list
    coord_names: list  # one per real unknown
    flat: FlatSystem

    def assignment(self, coords) -> dict:
        """Real coordinate vector -> generator -> complex value."""
        out = {}
        for j, name in enumerate(self.gen_names):
            re = coords[self.flat.var_re[j]]
            imi = self.flat.var_im[j]
            out[name] = complex(re, coords[imi] if imi >= 0 else 0.0)
        return out

    def coords(self, assignment: dict) -> np.ndarray:
        vec = np.zeros(len(self.coord_names))
        for j, name in enumerate(self.gen_names):
            v = complex(assignment[name])
            vec[self.flat.var_re[j]] = v.real
            imi = self.flat.var_im[j]
            if imi >= 0:
                vec[imi] = v.imag
        return vec


def compile_presentation(pres: Presentation) -> CompiledSystem:
    gen_names = [d.name for d in pres.gens]
    var_index = {n: j for j, n in enumerate(gen_names)}
    coord_names = []
    var_re = []
    var_im = []
    for d in pres.gens:
        var_re.append(len(coord_names))
        if d.selfadjoint:
            coord_names.append(d.name)
            var_im.append(-1)
        else:
            coord_names.append(f"{d.name}.re")
            var_im.append(len(coord_names))
            coord_names.append(f"{d.name}.im")

    rel_ptr = [0]
    coeff = []
    term_ptr = [0]
    let_var = []
    let_conj = []
    for rel in pres.relations:
        resolved = pres.resolve(rel)
        for word, c in resolved.sorted_terms():
            coeff.append(complex(c))
            for (name, starred) in word:
                if name not in var_index:
                    raise AlgebraError(f"relation uses unknown generator {name}")
                decl = pres.by_name[name]
                # scalar characters: an adjoint-paired letter never appears
                # starred after resolve; self-adjoint letters are real
                let_var.append(var_index[name])
                let_conj.append(1 if (starred and not decl.selfadjoint) else 0)
            term_ptr.append(len(let_var))
        rel_ptr.append(len(coeff))

    flat = FlatSystem(
        ncoords=len(coord_names),
        var_re=np.asarray(var_re, dtype=np.int32),
        var_im=np.asarray(var_im, dtype=np.int32),
        rel_ptr=np.asarray(rel_ptr, dtype=np.int32),
        coeff=np.asarray(coeff, dtype=np.complex128),
        term_ptr=np.asarray(term_ptr, dtype=np.int32),
        let_var=np.asarray(let_var, dtype=np.int32),
        let_conj=np.asarray(let_conj, dtype=np.uint8),
    )
    return CompiledSystem(pres, gen_names, coord_names, flat)


# ---------------------------------------------------------------------------
# residual and refinement


def residual(pres: Presentation, assignment: dict) -> float:
    """max over relations of |relation value| with generators as scalars
    and star = complex conjugation."""
    missing = [d.name for d in pres.gens if d.name not in assignment]
    if missing:
        raise AlgebraError(f"unassigned generators: {missing}")
    cs = compile_presentation(pres)
    pt = cs.coords(assignment)[None, :]
    return float(max_residuals(cs.flat, pt)[0])


def _real_residuals(cs: CompiledSystem, pts: np.ndarray) -> np.ndarray:
    vals = relation_values(cs.flat, pts)
    return np.concatenate([vals.real, vals.imag], axis=1)


def refine(cs: CompiledSystem, pts: np.ndarray, tol: float = 1e-10,
           iterations: int = 40, fd_step: float = 1e-7):
    """Batched Gauss-Newton polish of candidate points.

    Returns (refined points with residual <= tol, dropped count)."""
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64)).copy()
    n, d = pts.shape
    if n == 0:
        return pts, 0
    eye = np.eye(d) * 1e-12
    for _ in range(iterations):
        F = _real_residuals(cs, pts)  # (N, 2m)
        J = np.empty((n, F.shape[1], d))
        for j in range(d):
            h = np.zeros(d)
            h[j] = fd_step
            J[:, :, j] = (
                _real_residuals(cs, pts + h) - _real_residuals(cs, pts - h)
            ) / (2 * fd_step)
        JT = J.transpose(0, 2, 1)
        A = JT @ J + eye
        b = JT @ F[:, :, None]
        try:
            step = np.linalg.solve(A, b)[:, :, 0]
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(
                J.reshape(-1, d), F.reshape(-1), rcond=None
            )[0][None, :]
        pts = pts - step
        if np.max(np.abs(step)) < 1e-14:
            break
    res = max_residuals(cs.flat, pts)
    keep = res <= tol
    return pts[keep], int(n - keep.sum())


# ---------------------------------------------------------------------------
# grid solve


@dataclass
class SolveResult:
    system: CompiledSystem
    cloud: np.ndarray  # (M, d) refined, deduplicated solutions
    candidates: int
    dropped: int

    def assignments(self):
        return [self.system.assignment(row) for row in self.cloud]


def solve_grid(pres: Presentation, box, step: float, tol: float = 1e-10,
               coarse: float = 0.5, dedup_decimals: int = 4,
               chunk: int = 200_000) -> SolveResult:
    """Grid scan + Gauss-Newton refinement.

    box is one (lo, hi) interval for every real coordinate, or a mapping
    coordinate-name -> (lo, hi).  Rejects systems with more than
    MAX_REAL_UNKNOWNS real unknowns.
    """
    cs = compile_presentation(pres)
    d = len(cs.coord_names)
    if d > MAX_REAL_UNKNOWNS:
        raise AlgebraError(
            f"{d} real unknowns exceed the solver limit of {MAX_REAL_UNKNOWNS}"
        )
    if isinstance(box, dict):
        intervals = [box[name] for name in cs.coord_names]
    else:
        intervals = [box] * d
    axes = [
        np.arange(lo, hi + step / 2, step) for (lo, hi) in intervals
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)

    kept = []
    for start in range(0, len(points), chunk):
        block = np.ascontiguousarray(points[start:start + chunk])
        res = max_residuals(cs.flat, block)
        kept.append(block[res < coarse])
    candidates = np.concatenate(kept) if kept else np.empty((0, d))

    refined, dropped = refine(cs, candidates, tol=tol)

    seen = {}
    for row in refined:
        key = tuple(np.round(row, dedup_decimals))
        if key not in seen:
            seen[key] = row
    cloud = (
        np.array(list(seen.values())) if seen else np.empty((0, d))
    )
    return SolveResult(cs, cloud, int(len(candidates)), dropped)


# ---------------------------------------------------------------------------
# component clustering


@dataclass
class ComponentInfo:
    size: int
    representative: np.ndarray
    diameter: float
    is_isolated: bool


@dataclass
class ComponentReport:
    merge_radius: float
    components: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def isolated_count(self) -> int:
        return sum(1 for c in self.components if c.is_isolated)

    def to_dict(self) -> dict:
        return {
            "merge_radius": self.merge_radius,
            "component_count": self.count,
            "isolated_count": self.isolated_count,
            "components": [
                {
                    "size": c.size,
                    "representative": [float(v) for v in c.representative],
                    "diameter": float(c.diameter),
                    "is_isolated": bool(c.is_isolated),
                }
                for c in self.components
            ],
        }


def _diameter(points: np.ndarray, cap: int = 1500) -> float:
    if len(points) < 2:
        return 0.0
    if len(points) > cap:
        stride = int(math.ceil(len(points) / cap))
        order = np.lexsort(points.T[::-1])
        points = points[order][::stride]
    return float(pdist(points).max())


def cluster_components(cloud: np.ndarray, merge_radius: float) -> ComponentReport:
    """Single-linkage components: points closer than merge_radius are
    joined; a component is isolated when its diameter < merge_radius/2."""
    cloud = np.atleast_2d(np.asarray(cloud, dtype=np.float64))
    if cloud.size == 0:
        raise AlgebraError("empty solution cloud")
    n = len(cloud)
    tree = cKDTree(cloud)
    pairs = tree.query_pairs(merge_radius, output_type="ndarray")
    if len(pairs):
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        graph = csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n)
        )
    else:
        graph = csr_matrix((n, n))
    ncomp, labels = connected_components(graph, directed=False)
    report = ComponentReport(merge_radius)
    infos = []
    for c in range(ncomp):
        member = cloud[labels == c]
        rep = member[np.lexsort(member.T[::-1])[0]]
        diam = _diameter(member)
        infos.append(
            ComponentInfo(len(member), rep, diam, diam < merge_radius / 2)
        )
    infos.sort(key=lambda ci: (-ci.size, tuple(ci.representative)))
    report.components = infos
    return report


# ---------------------------------------------------------------------------
# closed-form character families of the obstruction algebra


def noqg_families(kind: str, parameter) -> dict:
    """Closed-form characters of the three-generator presentation.

    kind 'plus'/'minus' take |zeta| < 1/2, 'zero' takes |zeta| = 1/2,
    'omega' takes k in {0, 1}.
    """
    if kind == "omega":
        k = int(parameter)
        if k not in (0, 1):
            raise AlgebraError("omega parameter must be 0 or 1")
        return {"p": complex(k), "q": complex(k), "z": 0j}
    zeta = complex(parameter)
    a2 = abs(zeta) ** 2
    if kind in ("plus", "minus"):
        if a2 >= 0.25:
            raise AlgebraError("plus/minus families require |zeta| < 1/2")
        root = math.sqrt(0.25 - a2)
        if kind == "plus":
            return {"p": complex(0.5 + root), "q": complex(0.5 - root), "z": zeta}
        return {"p": complex(0.5 - root), "q": complex(0.5 + root), "z": zeta}
    if kind == "zero":
        if abs(a2 - 0.25) > 1e-12:
            raise AlgebraError("zero family requires |zeta| = 1/2")
        return {"p": 0.5 + 0j, "q": 0.5 + 0j, "z": zeta}
    raise AlgebraError(f"unknown family kind {kind!r}")


def nearest_family_distance(cs: CompiledSystem, coords) -> float:
    """Euclidean distance (in the real coordinates) from a solved point to
    the nearest closed-form family member, matched at the point's own z."""
    a = cs.assignment(np.asarray(coords, dtype=np.float64))
    zeta = a["z"]
    candidates = [noqg_families("omega", 0), noqg_families("omega", 1)]
    a2 = abs(zeta) ** 2
    if a2 < 0.25:
        candidates.append(noqg_families("plus", zeta))
        candidates.append(noqg_families("minus", zeta))
    else:
        # clamp onto the equator
        scl = 0.5 / abs(zeta) if zeta != 0 else 0.0
        candidates.append({"p": 0.5 + 0j, "q": 0.5 + 0j, "z": zeta * scl})
    point = cs.coords(a)
    return min(
        float(np.linalg.norm(point - cs.coords(c))) for c in candidates
    )
