"""Vectorized Monte Carlo kernels behind :mod:`sphtess.simulate`.

The certified geometry in :mod:`sphtess.geom` decides every predicate by an
LP; at the replication counts the acceptance grid needs, that is orders of
magnitude too slow in Python.  These kernels compute the same predicates in
closed form, vectorized over replication batches:

* cells are enumerated through vertex incidences: in general position with
  m >= k+1 normals every cell of the central arrangement in R^{k+1} is a
  pointed cone whose extreme rays are the +-nullspace directions of the
  k-subsets, and each of the 2^k local sign resolutions around a ray belongs
  to exactly one cell;
* a cone meets a 1-dim subspace iff a sign test passes, a 2-dim subspace iff
  the projected half-circle constraints leave a circular gap > pi, and a
  3-dim subspace iff some pairwise nullspace candidate satisfies the
  remaining restricted constraints;
* polar membership is a dot-product test against the cell's extreme rays;
* nearest-point projection solves the dual NNLS with a local Lawson-Hanson
  active-set loop (tight enough for the 1e-8 Moreau assertion).

Every kernel is equivalence-tested against the LP route in the test suite,
and the per-sample structural assertions (cell count = C(m,k), Euler
relation, Moreau orthogonality) are enforced here on every replication.

Determinism: batch j of a (seed, stream) pair draws from an independently
keyed Philox generator, and partial sums are reduced in batch order, so
results are bit-identical for any worker count.
"""

from __future__ import annotations

import itertools
import math
import zlib
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from .combinat import cells_count
from .exactnum import sp_eval
from .geom import DegenerateInput, KappaFamily, sample_vmf_mixture
from .moments import ExpectationQuery

BATCH = 1024
_TOL = 1e-9


class SampleAssertionError(AssertionError):
    """A hard per-sample structural assertion failed (not a statistical event)."""


# ---------------------------------------------------------------------------
# Deterministic substreams.
# ---------------------------------------------------------------------------


def stream_id(*parts) -> int:
    text = "|".join(str(p) for p in parts)
    return zlib.crc32(text.encode())


def batch_rng(seed: int, stream: int, batch_index: int) -> np.random.Generator:
    key = (int(seed) & (2**64 - 1)) | (int(stream) << 64)
    bg = np.random.Philox(key=key)
    bg.advance(batch_index << 40)
    return np.random.Generator(bg)


@dataclass
class BatchSums:
    """Order-independent partial sums; reduced in batch order afterwards."""

    total: float = 0.0
    total_sq: float = 0.0
    count: int = 0
    degenerate: int = 0

    def add_values(self, values: np.ndarray, degenerate: int = 0) -> None:
        self.total += float(np.sum(values))
        self.total_sq += float(np.sum(values * values))
        self.count += values.size
        self.degenerate += degenerate


def finalize(sums: Sequence[BatchSums], seed: int):
    from .simulate import MCEstimate

    total = 0.0
    total_sq = 0.0
    count = 0
    deg = 0
    for s in sums:  # fixed batch order: bit-stable reduction
        total += s.total
        total_sq += s.total_sq
        count += s.count
        deg += s.degenerate
    mean = total / count
    var = max(total_sq - count * mean * mean, 0.0) / max(count - 1, 1)
    return MCEstimate(
        mean=mean,
        stderr=math.sqrt(var / count),
        reps=count,
        degenerate_redraws=deg,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Nullspace rays and cell enumeration.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _combos(m: int, r: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(m), r))


def _nullspace_rays(rows: np.ndarray) -> np.ndarray:
    """Nullspace direction of dim-1 row vectors in R^dim, batched.

    rows: (..., dim-1, dim) -> (..., dim), unnormalized.
    """
    dim = rows.shape[-1]
    if dim == 2:
        u = rows[..., 0, :]
        return np.stack([-u[..., 1], u[..., 0]], axis=-1)
    if dim == 3:
        return np.cross(rows[..., 0, :], rows[..., 1, :])
    if dim == 4:
        out = np.empty(rows.shape[:-2] + (4,))
        cols = np.arange(4)
        for i in range(4):
            minor = rows[..., :, cols != i]
            out[..., i] = ((-1) ** i) * np.linalg.det(minor)
        return out
    raise ValueError(f"unsupported dimension {dim}")


def _rays_for(normals: np.ndarray, combos) -> Tuple[np.ndarray, np.ndarray]:
    """Unit extreme-ray candidates for each k-subset: (B, nC, dim), bad flags."""
    idx = np.array(combos)  # (nC, k)
    sub = normals[:, idx, :]  # (B, nC, k, dim)
    rays = _nullspace_rays(sub)
    norms = np.linalg.norm(rays, axis=-1)
    bad = norms < 1e-12
    norms = np.where(bad, 1.0, norms)
    return rays / norms[..., None], bad.any(axis=1)


def _sample_unit(rng: np.random.Generator, shape) -> np.ndarray:
    g = rng.standard_normal(shape)
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


@dataclass
class CellBatch:
    """A batch of sampled cells in reduced coordinates.

    ``normals``: (B, m, dim) sign-adjusted so each cell is {x: n_i.x >= 0};
    ``vert_sel``: (B, nC) in {-1, 0, +1} selecting which of +-ray_c is a
    vertex of the cell (0: not incident); ``rays``: (B, nC, dim) unit rays.
    """

    normals: np.ndarray
    rays: np.ndarray
    vert_sel: np.ndarray
    combos: Tuple[Tuple[int, ...], ...]
    degenerate: int = 0

    @property
    def B(self) -> int:
        return self.normals.shape[0]

    @property
    def dim(self) -> int:
        return self.normals.shape[2]

    def vertices_masked(self) -> Tuple[np.ndarray, np.ndarray]:
        """(B, nC, dim) signed vertices with a (B, nC) validity mask."""
        return self.rays * self.vert_sel[..., None], self.vert_sel != 0

    def f0(self) -> np.ndarray:
        return np.count_nonzero(self.vert_sel, axis=1)


def _vertex_selectors(
    signed: np.ndarray, rays: np.ndarray, combos
) -> Tuple[np.ndarray, np.ndarray]:
    """Which of +-ray_c is a vertex of the cell {x: signed_i . x >= 0}.

    Returns (vert_sel (B,nC), bad (B,)); bad marks replications with a
    margin too close to zero (measure-zero grazing; caller redraws).
    """
    B, m, dim = signed.shape
    nC = rays.shape[1]
    S = np.einsum("bcd,bmd->bcm", rays, signed)
    mask = np.zeros((nC, m), dtype=bool)
    for ci, c in enumerate(combos):
        mask[ci, list(c)] = True
    S_masked = np.where(mask[None, :, :], np.nan, S)
    with np.errstate(invalid="ignore"):
        mn = np.nanmin(S_masked, axis=2)
        mx = np.nanmax(S_masked, axis=2)
    pos = mn > _TOL
    neg = mx < -_TOL
    vert_sel = np.where(pos, 1, np.where(neg, -1, 0)).astype(np.int8)
    near = (np.abs(mn) <= _TOL) | (np.abs(mx) <= _TOL)
    return vert_sel, near.any(axis=1)


def sample_weighted_cells(rng: np.random.Generator, B: int, m: int, dim: int) -> CellBatch:
    """Weighted typical cells: flip signs towards a uniform witness point."""
    if m < dim:
        raise ValueError("batched kernels require m >= k+1 (pointed cells)")
    combos = _combos(m, dim - 1)
    degenerate = 0
    out_normals = np.empty((B, m, dim))
    out_rays = np.empty((B, len(combos), dim))
    out_sel = np.empty((B, len(combos)), dtype=np.int8)
    pending = np.arange(B)
    while pending.size:
        nb = pending.size
        normals = _sample_unit(rng, (nb, m, dim))
        v = _sample_unit(rng, (nb, dim))
        dots = np.einsum("bmd,bd->bm", normals, v)
        bad = (np.abs(dots) <= _TOL).any(axis=1)
        signed = normals * np.sign(dots)[..., None]
        rays, ray_bad = _rays_for(signed, combos)
        sel, sel_bad = _vertex_selectors(signed, rays, combos)
        bad |= ray_bad | sel_bad
        good = ~bad
        tgt = pending[good]
        out_normals[tgt] = signed[good]
        out_rays[tgt] = rays[good]
        out_sel[tgt] = sel[good]
        degenerate += int(bad.sum())
        pending = pending[bad]
    return CellBatch(out_normals, out_rays, out_sel, combos, degenerate)


def _enumerate_and_pick(
    normals: np.ndarray, rng: np.random.Generator, combos, n_cells: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Enumerate all cells through vertex incidences and pick one uniformly.

    Returns (chosen bitmask (B,), bad (B,)); asserts the per-sample count.
    """
    B, m, dim = normals.shape
    k = dim - 1
    rays, ray_bad = _rays_for(normals, combos)
    S = np.einsum("bcd,bmd->bcm", rays, normals)  # (B, nC, m)
    nC = len(combos)
    near = np.zeros(B, dtype=bool)
    masks_all = []
    weights = 1 << np.arange(m, dtype=np.int64)
    for ci, c in enumerate(combos):
        nd = np.array([j for j in range(m) if j not in c])
        sc = S[:, ci, :]
        near |= (np.abs(sc[:, nd]) <= _TOL).any(axis=1)
        base = ((sc[:, nd] > 0).astype(np.int64) * weights[nd]).sum(axis=1)
        nd_mask = int(weights[nd].sum())
        base_neg = base ^ nd_mask
        dbits = [int(weights[j]) for j in c]
        for res in range(1 << k):
            add = sum(dbits[t] for t in range(k) if (res >> t) & 1)
            masks_all.append(base + add)
            masks_all.append(base_neg + add)
    masks = np.stack(masks_all, axis=1)  # (B, nC * 2^(k+1))
    masks.sort(axis=1)
    new = np.ones_like(masks, dtype=bool)
    new[:, 1:] = masks[:, 1:] != masks[:, :-1]
    counts = new.sum(axis=1)
    bad = ray_bad | near
    if np.any((counts != n_cells) & ~bad):
        raise SampleAssertionError(
            f"cell count {counts[(counts != n_cells) & ~bad][0]} != C = {n_cells}"
        )
    # rows are guaranteed to hold exactly n_cells distinct masks now
    distinct = masks[new & ~bad[:, None]]
    chosen = np.zeros(B, dtype=np.int64)
    if (~bad).any():
        distinct = distinct.reshape(-1, n_cells)
        pick = rng.integers(0, n_cells, size=distinct.shape[0])
        chosen[~bad] = distinct[np.arange(distinct.shape[0]), pick]
    return chosen, bad


def sample_typical_cells(
    rng: np.random.Generator,
    B: int,
    m: int,
    dim: int,
    raw_sampler=None,
) -> CellBatch:
    """Uniformly chosen cells of the arrangement of m normals in R^dim.

    ``raw_sampler(rng, nb)`` may supply non-isotropic normals (nb, m, dim).
    """
    if m < dim:
        raise ValueError("batched kernels require m >= k+1 (pointed cells)")
    combos = _combos(m, dim - 1)
    n_cells = int(cells_count(m, dim - 1))
    degenerate = 0
    out_normals = np.empty((B, m, dim))
    out_rays = np.empty((B, len(combos), dim))
    out_sel = np.empty((B, len(combos)), dtype=np.int8)
    pending = np.arange(B)
    weights = 1 << np.arange(m, dtype=np.int64)
    while pending.size:
        nb = pending.size
        if raw_sampler is None:
            normals = _sample_unit(rng, (nb, m, dim))
        else:
            normals = raw_sampler(rng, nb)
        chosen, bad = _enumerate_and_pick(normals, rng, combos, n_cells)
        signs = np.where((chosen[:, None] & weights[None, :]) > 0, 1.0, -1.0)
        signed = normals * signs[..., None]
        rays, ray_bad = _rays_for(signed, combos)
        sel, sel_bad = _vertex_selectors(signed, rays, combos)
        bad |= ray_bad | sel_bad
        good = ~bad
        tgt = pending[good]
        out_normals[tgt] = signed[good]
        out_rays[tgt] = rays[good]
        out_sel[tgt] = sel[good]
        degenerate += int(bad.sum())
        pending = pending[bad]
    return CellBatch(out_normals, out_rays, out_sel, combos, degenerate)


# ---------------------------------------------------------------------------
# Per-cell functionals.
# ---------------------------------------------------------------------------


def fvec_values(cells: CellBatch, l: int) -> np.ndarray:
    """f_l of each cell, from vertex incidences, with the Euler hard check."""
    dim = cells.dim
    k = dim - 1
    f0 = cells.f0().astype(np.int64)
    if np.any(f0 < k):
        raise SampleAssertionError("pointed cell with fewer than k vertices")
    if k == 1:
        if np.any(f0 != 2):
            raise SampleAssertionError("arc with vertex count != 2")
        fl = {0: f0}[l]
        return fl.astype(float)
    if k == 2:
        # polygons: f1 = f0 (Euler: f0 - f1 = 0)
        return f0.astype(float)
    if k == 3:
        incid = _vertex_plane_incidence(cells)  # (B, nC->vertices, m) bool
        f2 = incid.any(axis=1).sum(axis=1).astype(np.int64)
        pair_common = np.einsum("bvm,bvn->bmn", incid.astype(np.int64), incid.astype(np.int64))
        iu = np.triu_indices(cells.normals.shape[1], k=1)
        f1 = (pair_common[:, iu[0], iu[1]] >= 2).sum(axis=1).astype(np.int64)
        if np.any(f0 - f1 + f2 != 2):
            raise SampleAssertionError("Euler relation f0 - f1 + f2 = 2 violated")
        return {0: f0, 1: f1, 2: f2}[l].astype(float)
    raise ValueError(f"unsupported face dimension k={k}")


def _vertex_plane_incidence(cells: CellBatch) -> np.ndarray:
    B, nC = cells.vert_sel.shape
    m = cells.normals.shape[1]
    incid = np.zeros((B, nC, m), dtype=bool)
    for ci, c in enumerate(cells.combos):
        incid[:, ci, list(c)] = True
    incid &= (cells.vert_sel != 0)[..., None]
    return incid


def solid_fractions(cells: CellBatch, rng: np.random.Generator, pts: int) -> np.ndarray:
    x = _sample_unit(rng, (cells.B, pts, cells.dim))
    marg = np.einsum("bpd,bmd->bpm", x, cells.normals)
    inside = (marg > 0).all(axis=2)
    return inside.mean(axis=1)


def polar_fractions(cells: CellBatch, rng: np.random.Generator, pts: int) -> np.ndarray:
    """Fraction of uniform points lying in the polar cone of each cell."""
    verts, valid = cells.vertices_masked()
    x = _sample_unit(rng, (cells.B, pts, cells.dim))
    dots = np.einsum("bpd,bcd->bpc", x, verts)
    dots = np.where(valid[:, None, :], dots, -np.inf)
    member = dots.max(axis=2) <= 0.0
    return member.mean(axis=1)


def subspace_hits(
    cells: CellBatch, rng: np.random.Generator, j: int, reps: int
) -> np.ndarray:
    """Per-cell fraction of uniform j-dim subspaces meeting the cone."""
    dim = cells.dim
    if j >= dim:
        return np.ones(cells.B)
    bases = _haar_bases(rng, cells.B, reps, dim, j)
    return _hit_fraction(cells, bases)


def subspace_hits_paired(
    cells: CellBatch, rng: np.random.Generator, j: int, reps: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Hit fractions for j-dim subspaces and nested (j-2)-dim subspaces.

    The small subspace is the leading columns of the same Haar frame, which
    keeps it Haar-distributed while pairing the two indicators for variance
    reduction in v = U_l - U_{l+2}.
    """
    dim = cells.dim
    bases = _haar_bases(rng, cells.B, reps, dim, min(j, dim))
    big = np.ones(cells.B) if j >= dim else _hit_fraction(cells, bases[..., :j])
    if j - 2 <= 0:
        return big, np.zeros(cells.B)
    small = _hit_fraction(cells, bases[..., : j - 2])
    return big, small


def _haar_bases(rng, B: int, reps: int, dim: int, j: int) -> np.ndarray:
    g = rng.standard_normal((B, reps, dim, j))
    q, r = np.linalg.qr(g)
    diag = np.sign(np.einsum("brii->bri", r))
    return q * diag[..., None, :]


def _hit_fraction(cells: CellBatch, bases: np.ndarray) -> np.ndarray:
    j = bases.shape[-1]
    restricted = np.einsum("bmd,brdj->brmj", cells.normals, bases)
    if j == 1:
        w = restricted[..., 0]
        hit = (w > 0).all(axis=2) | (w < 0).all(axis=2)
        return hit.mean(axis=1)
    if j == 2:
        ang = np.arctan2(restricted[..., 1], restricted[..., 0])
        ang.sort(axis=2)
        gaps = np.diff(ang, axis=2)
        wrap = 2 * np.pi + ang[..., 0] - ang[..., -1]
        maxgap = np.maximum(gaps.max(axis=2), wrap)
        return (maxgap > np.pi).mean(axis=1)
    if j == 3:
        return _hit_fraction_3d(restricted)
    raise ValueError(f"unsupported subspace dimension {j}")


def _hit_fraction_3d(restricted: np.ndarray) -> np.ndarray:
    """Feasibility of {y in R^3: R y >= 0} != {0} via pairwise ray candidates."""
    B, reps, m, _ = restricted.shape
    pairs = _combos(m, 2)
    hit = np.zeros((B, reps), dtype=bool)
    chunk = 16
    for lo in range(0, len(pairs), chunk):
        sub = pairs[lo : lo + chunk]
        idx = np.array(sub)
        rows = restricted[:, :, idx, :]  # (B, reps, P, 2, 3)
        cand = np.cross(rows[..., 0, :], rows[..., 1, :])  # (B, reps, P, 3)
        marg = np.einsum("brpd,brmd->brpm", cand, restricted)
        for pi, pair in enumerate(sub):
            nd = [t for t in range(m) if t not in pair]
            sl = marg[:, :, pi, :][:, :, nd]
            hit |= (sl > 0).all(axis=2) | (sl < 0).all(axis=2)
    return hit.mean(axis=1)


def _nnls_small(M: np.ndarray, b: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Lawson-Hanson active-set NNLS: argmin_{x >= 0} ||M x - b||.

    Written out here because the problems are tiny (a handful of columns)
    and the solution must be tight enough for the 1e-8 Moreau assertion.
    """
    m = M.shape[1]
    x = np.zeros(m)
    passive = np.zeros(m, dtype=bool)
    w = M.T @ b
    scale = max(float(np.abs(w).max()), 1.0)
    for _ in range(4 * m + 8):
        w = M.T @ (b - M @ x)
        w_masked = np.where(passive, -np.inf, w)
        j = int(np.argmax(w_masked))
        if w_masked[j] <= tol * scale:
            return x
        passive[j] = True
        for _ in range(4 * m + 8):
            cols = np.flatnonzero(passive)
            s_p, *_ = np.linalg.lstsq(M[:, cols], b, rcond=None)
            if np.all(s_p > 0):
                x = np.zeros(m)
                x[cols] = s_p
                break
            full_s = np.zeros(m)
            full_s[cols] = s_p
            shrink = passive & (full_s <= 0)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(shrink, x / (x - full_s), np.inf)
            alpha = float(np.min(ratios))
            x = x + alpha * (full_s - x)
            passive &= x > tol
            x[~passive] = 0.0
        else:
            raise SampleAssertionError("NNLS inner loop failed to settle")
    raise SampleAssertionError("NNLS outer loop failed to converge")


def project_batch(normals: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Nearest points in the cones {x: A_b x >= 0} via the dual NNLS.

    Enforces the per-sample Moreau-orthogonality and feasibility assertions.
    """
    B, m, dim = normals.shape
    out = np.empty((B, dim))
    margins = np.einsum("bmd,bd->bm", normals, points)
    inside = (margins >= 0).all(axis=1)
    for b in range(B):
        gb = points[b]
        if inside[b]:
            out[b] = gb
            continue
        A = normals[b]
        mu = _nnls_small(-A.T, gb)
        proj = gb + A.T @ mu
        resid = gb - proj
        scale = 1.0 + float(gb @ gb)
        if abs(float(proj @ resid)) > 1e-8 * scale:
            raise SampleAssertionError("Moreau orthogonality > 1e-8")
        if float((A @ proj).min()) < -1e-9 * scale:
            raise SampleAssertionError("projection infeasible beyond tolerance")
        out[b] = proj
    return out


def statdim_values(cells: CellBatch, rng: np.random.Generator) -> np.ndarray:
    """||Pi_C g||^2 for one standard Gaussian per cell."""
    g = rng.standard_normal((cells.B, cells.dim))
    proj = project_batch(cells.normals, g)
    return np.einsum("bd,bd->b", proj, proj)


# ---------------------------------------------------------------------------
# Intersection of two independent cells.
# ---------------------------------------------------------------------------


def cones_intersect_batch(normals_a: np.ndarray, normals_b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized {x != 0 : A x >= 0, B x >= 0} nonemptiness test.

    Returns (hit (B,), near (B,)); near flags margins within tolerance of
    zero (caller redraws those replications).
    """
    stacked = np.concatenate([normals_a, normals_b], axis=1)
    B, M, dim = stacked.shape
    subsets = _combos(M, dim - 1)
    hit = np.zeros(B, dtype=bool)
    near = np.zeros(B, dtype=bool)
    chunk = 64
    for lo in range(0, len(subsets), chunk):
        sub = subsets[lo : lo + chunk]
        idx = np.array(sub)
        rows = stacked[:, idx, :]
        cand = _nullspace_rays(rows)  # (B, P, dim)
        norms = np.linalg.norm(cand, axis=-1)
        near |= (norms < 1e-12).any(axis=1)
        cand = cand / np.where(norms < 1e-12, 1.0, norms)[..., None]
        marg = np.einsum("bpd,bmd->bpm", cand, stacked)
        for pi, subset in enumerate(sub):
            nd = [t for t in range(M) if t not in subset]
            sl = marg[:, pi, :][:, nd]
            pos = (sl > _TOL).all(axis=1)
            neg = (sl < -_TOL).all(axis=1)
            band = ((np.abs(sl) <= _TOL).any(axis=1)) & (
                (sl > -_TOL).all(axis=1) | (sl < _TOL).all(axis=1)
            )
            hit |= pos | neg
            near |= band
    return hit, near


# ---------------------------------------------------------------------------
# Top-level runners.
# ---------------------------------------------------------------------------


def _batch_sizes(reps: int) -> List[int]:
    out = [BATCH] * (reps // BATCH)
    if reps % BATCH:
        out.append(reps % BATCH)
    return out


def _run_batches(reps, seed, stream, worker, threads: int = 1):
    sizes = _batch_sizes(reps)
    sums = [None] * len(sizes)

    def one(j):
        rng = batch_rng(seed, stream, j)
        return worker(rng, sizes[j])

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            for j, s in enumerate(ex.map(one, range(len(sizes)))):
                sums[j] = s
    else:
        for j in range(len(sizes)):
            sums[j] = one(j)
    return finalize(sums, seed)


def _kappa_sampler(kappa: KappaFamily, n: int, d: int, k: int):
    """Raw normals factory for non-isotropic typical sampling (None if iso)."""
    if kappa.name == "isotropic" or kappa.beta == 0.0:
        return None
    N = n - d + k

    def factory(rng: np.random.Generator, nb: int) -> np.ndarray:
        if k == d:
            flat = sample_vmf_mixture(rng, d, kappa.beta, nb * N)
            return flat.reshape(nb, N, d + 1)
        cutters = sample_vmf_mixture(rng, d, kappa.beta, nb * (d - k)).reshape(
            nb, d - k, d + 1
        )
        q, r = np.linalg.qr(cutters.transpose(0, 2, 1), mode="complete")
        diag = np.abs(np.einsum("bii->bi", r[:, : d - k, :]))
        if np.any(diag < 1e-10):
            raise DegenerateInput("nearly dependent cutters")
        basis = q[:, :, d - k :]  # (nb, d+1, k+1)
        rest = sample_vmf_mixture(rng, d, kappa.beta, nb * N).reshape(nb, N, d + 1)
        proj = np.einsum("bnd,bdj->bnj", rest, basis)
        norms = np.linalg.norm(proj, axis=2, keepdims=True)
        if np.any(norms < 1e-9):
            raise DegenerateInput("hypersphere nearly contains the subsphere")
        return proj / norms

    return factory


def run_estimate(query: ExpectationQuery, config):
    n, d, k, l = query.n, query.d, query.k, query.l
    flavor, quantity = query.flavor, query.quantity
    stream = stream_id(
        quantity, flavor, n, d, k, l, config.kappa.name, config.kappa.beta,
        config.subspace_reps,
    )
    if quantity != "isect" and k == 0:
        return _constant_estimate(query, config)
    N = n - d + k
    m = N
    dim = k + 1
    raw = _kappa_sampler(config.kappa, n, d, k)
    if flavor == "weighted" and raw is not None:
        raise ValueError("weighted sampler is isotropic only")
    S = config.subspace_reps

    def sample(rng, nb):
        if flavor == "typical":
            return sample_typical_cells(rng, nb, m, dim, raw_sampler=raw)
        return sample_weighted_cells(rng, nb, m, dim)

    if quantity == "f":
        def worker(rng, nb):
            cells = sample(rng, nb)
            return _sums(fvec_values(cells, l), cells)
    elif quantity == "U":
        def worker(rng, nb):
            cells = sample(rng, nb)
            if l == k:
                # U_k = half the two-sided line-hit probability = solid fraction
                vals = solid_fractions(cells, rng, S)
            else:
                vals = 0.5 * subspace_hits(cells, rng, k - l + 1, S)
            return _sums(vals, cells)
    elif quantity == "v":
        def worker(rng, nb):
            cells = sample(rng, nb)
            if l == k:
                vals = solid_fractions(cells, rng, S)
            else:
                big, small = subspace_hits_paired(cells, rng, k - l + 1, S)
                vals = 0.5 * (big - small)
            return _sums(vals, cells)
    elif quantity == "vminus1":
        def worker(rng, nb):
            cells = sample(rng, nb)
            return _sums(polar_fractions(cells, rng, S), cells)
    elif quantity == "statdim":
        def worker(rng, nb):
            cells = sample(rng, nb)
            return _sums(statdim_values(cells, rng), cells)
    elif quantity == "hk":
        omega = float(sp_eval(_sphere_surface(k), 20))

        def worker(rng, nb):
            cells = sample(rng, nb)
            return _sums(omega * solid_fractions(cells, rng, S), cells)
    else:
        raise ValueError(f"run_estimate cannot handle quantity {quantity!r}")
    return _run_batches(config.reps, config.seed, stream, worker, config.threads)


def _sphere_surface(k):
    from .exactnum import sphere_surface

    return sphere_surface(k)


def _sums(values: np.ndarray, cells=None) -> BatchSums:
    s = BatchSums()
    deg = cells.degenerate if cells is not None else 0
    s.add_values(np.asarray(values, dtype=float), degenerate=deg)
    return s


def _constant_estimate(query: ExpectationQuery, config):
    """k = 0 faces are points: the defined functionals are a.s. constants."""
    from .moments import evaluate_query
    from .simulate import MCEstimate

    val = float(sp_eval(evaluate_query(query), 20))
    return MCEstimate(mean=val, stderr=0.0, reps=config.reps, degenerate_redraws=0, seed=config.seed)


def run_isect(flavor: str, n: int, m: int, d: int, config):
    stream = stream_id("isect", flavor, n, m, d)
    dim = d + 1

    def worker(rng, nb):
        deg = 0
        if flavor == "typical":
            ca = sample_typical_cells(rng, nb, n, dim)
            cb = sample_typical_cells(rng, nb, m, dim)
        elif flavor == "weighted":
            ca = sample_weighted_cells(rng, nb, n, dim)
            cb = sample_weighted_cells(rng, nb, m, dim)
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
        deg += ca.degenerate + cb.degenerate
        hit, near = cones_intersect_batch(ca.normals, cb.normals)
        while near.any():
            idx = np.flatnonzero(near)
            deg += idx.size
            if flavor == "typical":
                ra = sample_typical_cells(rng, idx.size, n, dim)
                rb = sample_typical_cells(rng, idx.size, m, dim)
            else:
                ra = sample_weighted_cells(rng, idx.size, n, dim)
                rb = sample_weighted_cells(rng, idx.size, m, dim)
            deg += ra.degenerate + rb.degenerate
            h2, n2 = cones_intersect_batch(ra.normals, rb.normals)
            hit[idx] = h2
            near[idx] = n2
        s = BatchSums()
        s.add_values(hit.astype(float), degenerate=deg)
        return s

    return _run_batches(config.reps, config.seed, stream, worker, config.threads)


# ---------------------------------------------------------------------------
# Consistency checks.
# ---------------------------------------------------------------------------


def run_consistency(n: int, d: int, k: int, config, parts=("a", "b", "c")) -> list:
    reports: list = []
    S = config.subspace_reps
    N = n - d + k
    omega = float(sp_eval(_sphere_surface(k), 20))

    if "a" in parts:
        reports.append(_sizebias_report(n, d, k, config, S, N, omega))
    if "b" in parts:
        reports.append(_kappa_invariance_report(n, d, k, config))
    if "c" in parts:
        reports.append(_skeleton_report(n, d, k, config, omega))
    return reports


def _sizebias_report(n, d, k, config, S, N, omega):
    from .moments import ef_weighted
    from .simulate import ComparisonReport, MCEstimate

    # (a) size bias: E[f0(Z) H^k(Z)] / E[H^k(Z)] vs E[f0(W)]
    stream = stream_id("sizebias", n, d, k)
    sizes = _batch_sizes(config.reps)
    sums = np.zeros(6)  # fh, h, fh^2, h^2, fh*h, count
    deg = 0
    for j, nb in enumerate(sizes):
        rng = batch_rng(config.seed, stream, j)
        cells = sample_typical_cells(rng, nb, N, k + 1)
        f0 = fvec_values(cells, 0)
        h = omega * solid_fractions(cells, rng, S)
        fh = f0 * h
        sums += np.array(
            [fh.sum(), h.sum(), (fh * fh).sum(), (h * h).sum(), (fh * h).sum(), nb]
        )
        deg += cells.degenerate
    R = sums[5]
    mean_fh, mean_h = sums[0] / R, sums[1] / R
    var_fh = max(sums[2] / R - mean_fh**2, 0.0)
    var_h = max(sums[3] / R - mean_h**2, 0.0)
    cov = sums[4] / R - mean_fh * mean_h
    ratio = mean_fh / mean_h
    var_ratio = (var_fh - 2 * ratio * cov + ratio * ratio * var_h) / (mean_h**2)
    se_ratio = math.sqrt(max(var_ratio, 0.0) / R)

    west = run_estimate(
        ExpectationQuery("f", "weighted", n, d, k, 0), config
    )
    exact = ef_weighted(n, d, k, 0)
    combined_se = math.sqrt(se_ratio**2 + west.stderr**2)
    z = (ratio - west.mean) / combined_se if combined_se else 0.0
    est = MCEstimate(mean=ratio, stderr=se_ratio, reps=int(R), degenerate_redraws=deg, seed=config.seed)
    return ComparisonReport(
        query=ExpectationQuery("f", "weighted", n, d, k, 0),
        exact=exact,
        exact_float=west.mean,
        estimate=est,
        z_score=z,
        verdict="pass" if abs(z) <= config.z_fail else "fail",
    )


def _kappa_invariance_report(n, d, k, config):
    from .moments import ef_typical
    from .simulate import ComparisonReport

    # (b) kappa invariance of the typical f-vector
    beta = config.kappa.beta if config.kappa.name == "pole_concentrated" else 4.0
    cfg_pole = type(config)(
        reps=config.reps,
        seed=config.seed,
        kappa=KappaFamily("pole_concentrated", beta),
        subspace_reps=config.subspace_reps,
        threads=config.threads,
    )
    q = ExpectationQuery("f", "typical", n, d, k, 0)
    est_pole = run_estimate(q, cfg_pole)
    exact_t = ef_typical(n, d, k, 0)
    return ComparisonReport.build(q, exact_t, est_pole, cfg_pole.z_warn, cfg_pole.z_fail)


def _skeleton_report(n, d, k, config, omega):
    from .simulate import ComparisonReport, MCEstimate

    # (c) skeleton content: binom(n, d-k) valid subsphere intersections per draw
    stream = stream_id("skeleton", n, d, k)
    rng = batch_rng(config.seed, stream, 0)
    reps = min(config.reps, 256)
    ok = True
    if k < d:
        subs = _combos(n, d - k)
        normals = _sample_unit(rng, (reps, n, d + 1))
        idx = np.array(subs)
        rows = normals[:, idx, :]  # (reps, nSub, d-k, d+1)
        sv = np.linalg.svd(rows, compute_uv=False)
        ok = bool((sv[..., -1] > 1e-6).all())
    expected = math.comb(n, d - k) * omega
    est_c = MCEstimate(
        mean=expected if ok else math.nan,
        stderr=0.0,
        reps=reps,
        degenerate_redraws=0,
        seed=config.seed,
    )
    from .exactnum import sphere_surface

    exact_skel = sphere_surface(k).scale(math.comb(n, d - k))
    return ComparisonReport(
        query=ExpectationQuery("hk", "typical", n, d, k),
        exact=exact_skel,
        exact_float=float(sp_eval(exact_skel, 20)),
        estimate=est_c,
        z_score=0.0 if ok else math.inf,
        verdict="pass" if ok else "fail",
    )

