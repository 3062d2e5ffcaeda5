"""Simultaneous root finding for sparse integer polynomials, with inclusion disks.

Stage one runs Aberth-Ehrlich sweeps in double precision, evaluating the
sparse polynomial term by term as ``c * exp(e log z)`` with a common scale so
no power overflows.  Each approximation then gets a Newton inclusion disk of
radius ``N |p(z)| / |p'(z)|`` (with rounding error added); such a disk always
contains a zero, so when all N disks are pairwise disjoint each holds exactly
one.  Approximations whose disk is too wide or overlaps a neighbour are
refined in mpmath at doubling precision.  Groups that still overlap at the top
of the ladder are certified as clusters with Weierstrass disks, whose
connected components hold as many zeros as disks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from ..polycore import PolyError, SparsePoly, derivative, eval_numeric

U = 2.0**-53
PRECISION_LADDER = (106, 212, 424, 848, 1696, 3392, 4096)


class PrecisionExhausted(ArithmeticError):
    pass


@dataclass
class Solution:
    roots: list[complex]
    radii: list[float]
    real: list[bool]
    precision_used: int
    iterations: int
    clusters: list[list[int]] = field(default_factory=list)
    refined: dict[int, mpmath.mpc] = field(default_factory=dict)


class _Batch:
    """Vectorized scaled evaluation of p and p' with rounding-error bounds."""

    def __init__(self, p: SparsePoly):
        exps = np.array([e for e, _ in p.terms], dtype=float)
        big = max(abs(c) for _, c in p.terms).bit_length()
        shift = max(0, big - 900)
        self.exps = exps
        self.coeffs = np.array([float(c >> shift) if c >= 0 else -float((-c) >> shift) for _, c in p.terms])
        self.log_abs = np.log(np.abs(self.coeffs))
        self.k = len(p)
        self.log_shift = shift * math.log(2)

    def __call__(self, z: np.ndarray):
        logz = np.log(z)
        E = self.exps[:, None] * logz[None, :]
        s = (E.real + self.log_abs[:, None]).max(axis=0)
        w = np.exp(E - s[None, :])
        terms = self.coeffs[:, None] * w
        mags = np.abs(terms)
        val = terms.sum(axis=0)
        dterms = self.exps[:, None] * terms
        dval = dterms.sum(axis=0) / z
        rel = 8 + 4 * self.exps[:, None] * np.abs(logz)[None, :]
        err = U * ((rel * mags).sum(axis=0) + (self.k + 2) * mags.sum(axis=0))
        dmags = self.exps[:, None] * mags
        derr = U * ((rel * dmags).sum(axis=0) + (self.k + 4) * dmags.sum(axis=0)) / np.abs(z)
        return val, dval, err * 1.01, derr * 1.01


def _initial_points(p: SparsePoly, n: int, seed: int) -> np.ndarray:
    """Points on the circle of radius |p(0)/lc|^(1/n), deterministically perturbed."""
    lc = p.leading_coefficient
    c0 = p.coeff(0)
    r = math.exp((math.log(abs(c0)) - math.log(abs(lc))) / n)
    rng = np.random.default_rng(seed)
    k = np.arange(n)
    angles = 2 * np.pi * (k + 0.25 + 0.1 * rng.random(n)) / n + 0.4
    radii = r * (1 + 0.01 * (rng.random(n) - 0.5))
    return radii * np.exp(1j * angles)


def _aberth_sums(z: np.ndarray, idx: np.ndarray, chunk: int = 256) -> np.ndarray:
    out = np.empty(len(idx), dtype=complex)
    for start in range(0, len(idx), chunk):
        rows = idx[start:start + chunk]
        diff = z[rows, None] - z[None, :]
        diff[np.arange(len(rows)), rows] = np.inf
        out[start:start + chunk] = (1.0 / diff).sum(axis=1)
    return out


def _aberth_double(batch: _Batch, z: np.ndarray, max_iter: int) -> tuple[np.ndarray, int]:
    active = np.arange(len(z))
    it = 0
    for it in range(1, max_iter + 1):
        if not len(active):
            break
        val, dval, err, _ = batch(z[active])
        with np.errstate(all="ignore"):
            newton = val / dval
            corr = newton / (1 - newton * _aberth_sums(z, active))
        bad = ~np.isfinite(corr)
        corr[bad] = 0
        z[active] -= corr
        zero = z[active] == 0
        if zero.any():
            z[active[zero]] = 1e-300
        # converged when the step is at roundoff level or the residual is pure noise
        done = (np.abs(corr) <= 4 * U * np.abs(z[active])) | (np.abs(val) <= err) | bad
        active = active[~done]
    return z, it


def _overlaps(z: np.ndarray, r: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Boolean mask of disks that intersect some other disk."""
    n = len(z)
    mask = np.zeros(n, dtype=bool)
    for start in range(0, n, chunk):
        rows = np.arange(start, min(n, start + chunk))
        d = np.abs(z[rows, None] - z[None, :])
        hit = d <= r[rows, None] + r[None, :]
        hit[np.arange(len(rows)), rows] = False
        mask[rows] = hit.any(axis=1)
    return mask


def _radii(batch: _Batch, z: np.ndarray, n: int) -> np.ndarray:
    val, dval, err, derr = batch(z)
    den = np.abs(dval) - derr
    with np.errstate(all="ignore"):
        r = n * (np.abs(val) + err) / den
    r[~(den > 0)] = np.inf
    return r


def _real_centers(batch: _Batch, z: np.ndarray, r: np.ndarray, n: int):
    """Move near-real approximations onto the axis when their disk stays small."""
    cand = np.nonzero(np.abs(z.imag) <= np.maximum(r, 1e-8 * np.abs(z)))[0]
    real = np.zeros(len(z), dtype=bool)
    if not len(cand):
        return z, r, real
    x = z[cand].real.astype(complex)
    for _ in range(3):
        val, dval, _, _ = batch(x)
        with np.errstate(all="ignore"):
            step = (val / dval).real
        step[~np.isfinite(step)] = 0
        x = x - step
    rx = _radii(batch, x, n)
    take = rx <= np.maximum(r[cand], 0) * 4 + 8 * U * np.abs(x)
    # a snapped disk must stay clear of every other center, or a multiple zero collapses
    others = np.abs(x[:, None] - z[None, :])
    others[np.arange(len(cand)), cand] = np.inf
    take &= others.min(axis=1) > rx
    z = z.copy()
    r = r.copy()
    z[cand[take]] = x[take]
    r[cand[take]] = rx[take]
    real[cand[take]] = True
    return z, r, real


def _mp_refine(p: SparsePoly, dp: SparsePoly, zs: dict[int, mpmath.mpc], others: np.ndarray,
               prec: int, n: int, max_iter: int = 60):
    """Aberth corrections at ``prec`` bits for the roots in ``zs``; others held fixed."""
    with mpmath.workprec(prec + 20):
        keys = list(zs)
        fixed = [mpmath.mpc(complex(w)) for w in others]
        for _ in range(max_iter):
            moved = mpmath.mpf(0)
            for i in keys:
                zi = zs[i]
                pv, _ = eval_numeric(p, zi, prec)
                dv, _ = eval_numeric(dp, zi, prec)
                if dv == 0:
                    continue
                s = mpmath.mpc(0)
                for j, w in enumerate(fixed):
                    if j != i and j not in zs:
                        s += 1 / (zi - w)
                for j in keys:
                    if j != i:
                        s += 1 / (zi - zs[j])
                newton = pv / dv
                corr = newton / (1 - newton * s)
                zs[i] = zi - corr
                moved = max(moved, abs(corr) / max(abs(zs[i]), mpmath.mpf(2) ** -prec))
            if moved < mpmath.mpf(2) ** (-prec + 8):
                break
    return zs


def _mp_radius(p: SparsePoly, dp: SparsePoly, z, prec: int, n: int) -> float:
    pv, pe = eval_numeric(p, z, prec)
    dv, de = eval_numeric(dp, z, prec)
    den = abs(dv) - de
    if den <= 0:
        return math.inf
    r = n * (abs(pv) + pe) / den
    return float(r) * (1 + 1e-12)


def solve_sparse(p: SparsePoly, residual_tol: float = 1e-10, seed: int = 0,
                 max_iter: int = 800) -> Solution:
    """All complex zeros of an integer polynomial with certified inclusion radii.

    ``residual_tol`` is relative: each returned radius is at most
    ``residual_tol * |root|``.
    """
    if not p or p.degree < 1:
        raise PolyError("need a polynomial of degree >= 1")
    v = p.valuation
    core = SparsePoly((e - v, c) for e, c in p.terms) if v else p
    n = core.degree
    zero_roots = [0j] * v
    if n == 0:
        return Solution(zero_roots, [0.0] * v, [True] * v, 53, 0)
    if n == 1:
        root = -core.coeff(0) / core.coeff(1)
        return Solution(zero_roots + [complex(root)], [0.0] * (v + 1), [True] * (v + 1), 53, 0)

    batch = _Batch(core)
    z, iters = _aberth_double(batch, _initial_points(core, n, seed), max_iter)
    r = _radii(batch, z, n)
    z, r, real = _real_centers(batch, z, r, n)
    bad = (r > residual_tol * np.abs(z)) | _overlaps(z, r)
    precision = 53
    refined: dict[int, mpmath.mpc] = {}
    dp = derivative(core)
    centers: list = list(z)
    radii = list(r)
    if bad.any():
        pending = set(np.nonzero(bad)[0].tolist())
        zs = {i: mpmath.mpc(complex(z[i])) for i in pending}
        for prec in PRECISION_LADDER:
            precision = prec
            zs = _mp_refine(core, dp, zs, z, prec, n)
            with mpmath.workprec(prec + 20):
                for i in list(pending):
                    zi = zs[i]
                    if abs(mpmath.im(zi)) <= max(radii[i], 1e-8 * float(abs(zi))):
                        xr = mpmath.mpc(mpmath.re(zi))
                        rx = _mp_radius(core, dp, xr, prec, n)
                        clear = all(abs(xr - centers[j]) > rx for j in range(n) if j != i)
                        if clear and (rx <= 4 * radii[i] or rx <= residual_tol * float(abs(xr))):
                            zs[i] = xr
                            radii[i] = rx
                            real[i] = True
                            centers[i] = xr
                            continue
                    radii[i] = _mp_radius(core, dp, zi, prec, n)
                    real[i] = False
                    centers[i] = zi
                still = set()
                for i in pending:
                    if radii[i] > residual_tol * float(abs(centers[i])):
                        still.add(i)
                        continue
                    for j in range(n):
                        if j != i and abs(centers[i] - centers[j]) <= radii[i] + radii[j]:
                            still.add(i)
                            break
            refined.update({i: zs[i] for i in pending})
            pending = still
            if not pending:
                break
            # tight clusters never separate under refinement; try to certify them as groups
            try:
                cluster_result = _certify_clusters(core, batch, centers, pending, radii, precision, residual_tol, n)
                break
            except PrecisionExhausted:
                if prec == PRECISION_LADDER[-1]:
                    raise
        sol_clusters = []
        if pending:
            centers, radii, sol_clusters = cluster_result
            real = np.array([bool(real[i]) and not any(i in c for c in sol_clusters) for i in range(n)])
    else:
        sol_clusters = []
    roots = zero_roots + [complex(c) for c in centers]
    radii_out = [0.0] * v + [float(x) for x in radii]
    real_out = [True] * v + [bool(x) for x in real]
    shifted = {i + v: val for i, val in refined.items()}
    clusters_out = [[i + v for i in c] for c in sol_clusters]
    return Solution(roots, radii_out, real_out, precision, iters, clusters_out, shifted)


def _log_products(z: np.ndarray, chunk: int = 512) -> np.ndarray:
    """``sum_{j != i} log|z_i - z_j|`` for every i."""
    n = len(z)
    out = np.empty(n)
    for start in range(0, n, chunk):
        rows = np.arange(start, min(n, start + chunk))
        d = np.abs(z[rows, None] - z[None, :])
        d[np.arange(len(rows)), rows] = 1.0
        out[rows] = np.log(d).sum(axis=1)
    return out


def _overlap_pairs(z: np.ndarray, r: np.ndarray, chunk: int = 512) -> list[tuple[int, int]]:
    n = len(z)
    pairs = []
    for start in range(0, n, chunk):
        rows = np.arange(start, min(n, start + chunk))
        hit = np.abs(z[rows, None] - z[None, :]) <= r[rows, None] + r[None, :]
        hit[np.arange(len(rows)), rows] = False
        for a, b in zip(*np.nonzero(hit)):
            i, j = int(rows[a]), int(b)
            if i < j:
                pairs.append((i, j))
    return pairs


def _certify_clusters(core, batch, centers, pending, radii, precision, residual_tol, n):
    """Weierstrass disks for all approximations; components count their zeros.

    Every disk ``D(z_i, n |p(z_i)| / |lc prod_{j != i} (z_i - z_j)|)`` is
    formed, so the union holds all zeros and a connected component made of k
    disks holds exactly k of them.
    """
    zc = np.array([complex(c) for c in centers])
    val, _, err, _ = batch(zc)
    # batch values carry a common per-point scale; undo it through the log domain
    logabs = np.log(np.abs(val) + err) + _batch_scale(batch, zc)
    logprod = _log_products(zc)
    near = set(pending)
    for i, j in _overlap_pairs(zc, np.asarray(radii, dtype=float)):
        near.update((i, j))
    # members of a tight cluster differ below double resolution: use the refined centers
    with mpmath.workprec(precision + 20):
        mc = [mpmath.mpc(c) for c in centers]
        for i in near:
            pv, pe = eval_numeric(core, mc[i], precision)
            logabs[i] = float(mpmath.log(abs(pv) + pe)) if abs(pv) + pe > 0 else -math.inf
            dists = [abs(mc[i] - mc[j]) for j in range(n) if j != i]
            if min(dists, default=1) == 0:
                raise PrecisionExhausted(f"approximations coincide at {precision} bits")
            logprod[i] = float(mpmath.fsum(mpmath.log(d) for d in dists))
        # disks are reported around the double centers, so they absorb the rounding
        shift = np.zeros(n)
        for i in near:
            shift[i] = float(abs(mc[i] - mpmath.mpc(zc[i]))) * (1 + 1e-9)
    logw = math.log(n) + logabs - math.log(abs(core.leading_coefficient)) - logprod
    w = np.exp(logw) * (1 + 1e-9) + shift
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in _overlap_pairs(zc, w):
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = [g for g in groups.values() if len(g) > 1]
    for i in range(n):
        if w[i] > residual_tol * abs(zc[i]):
            raise PrecisionExhausted(
                f"zero near {zc[i]} not resolved at {precision} bits (radius {w[i]:.3g})"
            )
    return list(zc), [float(x) for x in w], clusters


def _batch_scale(batch: _Batch, z: np.ndarray) -> np.ndarray:
    """Log of the per-point scale factor that _Batch divides out."""
    logz = np.log(z)
    E = batch.exps[:, None] * logz.real[None, :]
    return (E + batch.log_abs[:, None]).max(axis=0) + batch.log_shift
