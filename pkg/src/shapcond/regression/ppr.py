"""Projection pursuit regression.

Model: z ~ b0 + sum_l g_l(w_l' x) with unit direction vectors w_l and ridge
functions g_l estimated by a grid-based local-linear Gaussian-kernel
smoother whose effective window spans a fixed fraction of the projected
data range.  Terms are added forward on the current residual and the whole
model is backfitted until the training MSE stabilizes; directions update by
Gauss-Newton on the smoothed residuals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..numerics import substream

log = logging.getLogger(__name__)

__all__ = ["LocalLinearSmoother", "PPRModel", "ppr_fit", "ppr_fit_path"]

SPAN = 0.3
N_GRID = 51
MAX_INNER = 4
MAX_SWEEPS = 50
REL_TOL = 1e-5


class LocalLinearSmoother:
    """Local-linear fits evaluated on a fixed grid, interpolated elsewhere."""

    def __init__(self, span: float = SPAN, n_grid: int = N_GRID):
        self.span = span
        self.n_grid = n_grid
        self.grid: np.ndarray | None = None
        self.values: np.ndarray | None = None
        self.slopes: np.ndarray | None = None

    def fit(self, t: np.ndarray, y: np.ndarray) -> "LocalLinearSmoother":
        t = np.asarray(t, dtype=float).ravel()
        y = np.asarray(y, dtype=float).ravel()
        lo, hi = float(t.min()), float(t.max())
        if hi - lo <= 0:
            self.grid = np.array([lo, lo + 1.0])
            self.values = np.full(2, y.mean())
            self.slopes = np.zeros(2)
            return self
        # Gaussian kernel; +-3 sd covers `span` of the data range
        sd = self.span * (hi - lo) / 6.0
        grid = np.linspace(lo, hi, self.n_grid)
        values = np.empty(self.n_grid)
        slopes = np.empty(self.n_grid)
        # batched over grid points; chunked to bound the (grid x n) workspace
        chunk = max(1, int(2_000_000 // max(t.size, 1)))
        for start in range(0, self.n_grid, chunk):
            g = grid[start:start + chunk, None]
            u = t[None, :] - g
            w = np.exp(-0.5 * (u / sd) ** 2)
            wu = w * u
            s0 = w.sum(axis=1)
            s1 = wu.sum(axis=1)
            s2 = (wu * u).sum(axis=1)
            t0 = w @ y
            t1 = wu @ y
            denom = s0 * s2 - s1 * s1
            ok = denom > 1e-300 * np.maximum(s0, 1.0)
            safe = np.where(ok, denom, 1.0)
            sl = slice(start, start + g.size)
            values[sl] = np.where(ok, (s2 * t0 - s1 * t1) / safe,
                                  t0 / np.maximum(s0, 1e-300))
            slopes[sl] = np.where(ok, (s0 * t1 - s1 * t0) / safe, 0.0)
        self.grid, self.values, self.slopes = grid, values, slopes
        return self

    def predict(self, t: np.ndarray) -> np.ndarray:
        return np.interp(np.asarray(t, dtype=float), self.grid, self.values)

    def deriv(self, t: np.ndarray) -> np.ndarray:
        return np.interp(np.asarray(t, dtype=float), self.grid, self.slopes)


@dataclass
class _Term:
    direction: np.ndarray
    smoother: LocalLinearSmoother | None  # None encodes the zero function

    def predict(self, x: np.ndarray) -> np.ndarray:
        if self.smoother is None:
            return np.zeros(np.atleast_2d(x).shape[0])
        return self.smoother.predict(np.atleast_2d(x) @ self.direction)


@dataclass
class PPRModel:
    intercept: float
    terms: list

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.full(x.shape[0], self.intercept)
        for term in self.terms:
            out += term.predict(x)
        return out

    def summary(self) -> dict:
        return {"n_terms": self.n_terms}


def _normalize(w: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(w)
    if norm <= 0 or not np.isfinite(norm):
        raise ValueError("degenerate direction")
    w = w / norm
    pivot = int(np.argmax(np.abs(w)))
    return w if w[pivot] >= 0 else -w


def _initial_direction(x: np.ndarray, r: np.ndarray) -> np.ndarray:
    xc = x - x.mean(axis=0)
    coef, *_ = np.linalg.lstsq(xc, r - r.mean(), rcond=None)
    try:
        return _normalize(coef)
    except ValueError:
        return _normalize(np.ones(x.shape[1]))


def _fit_term(x: np.ndarray, r: np.ndarray, w0: np.ndarray, span: float,
              max_inner: int = MAX_INNER):
    """Alternate 1-D smoothing and Gauss-Newton direction updates.

    Returns (term, fitted values) or None when the direction degenerates.
    """
    n, m = x.shape
    w = w0
    smoother = None
    for _ in range(max_inner):
        t = x @ w
        smoother = LocalLinearSmoother(span=span).fit(t, r)
        if m == 1:
            break
        g = smoother.predict(t)
        gp = smoother.deriv(t)
        scale = float(np.max(np.abs(gp)))
        mask = np.abs(gp) > 1e-10 * max(scale, 1.0)
        if mask.sum() <= m or scale <= 0:
            return None
        res = r - g
        target = t[mask] + res[mask] / gp[mask]
        wt = gp[mask] ** 2
        xw = x[mask] * wt[:, None]
        gram = xw.T @ x[mask] + 1e-10 * np.eye(m)
        rhs = xw.T @ target
        try:
            w_new = _normalize(np.linalg.solve(gram, rhs))
        except (np.linalg.LinAlgError, ValueError):
            return None
        if np.linalg.norm(w_new - w) < 1e-5:
            w = w_new
            break
        w = w_new
    t = x @ w
    smoother = LocalLinearSmoother(span=span).fit(t, r)
    term = _Term(direction=w, smoother=smoother)
    return term, smoother.predict(t)


def _fit_term_with_retries(x, r, w0, span, rng, retries: int = 3):
    attempt = _fit_term(x, r, w0, span)
    tries = 0
    while attempt is None and tries < retries:
        tries += 1
        log.warning("degenerate ridge direction; re-randomizing (retry %d)", tries)
        w0 = _normalize(rng.standard_normal(x.shape[1]))
        attempt = _fit_term(x, r, w0, span)
    return attempt


def ppr_fit_path(x: np.ndarray, z: np.ndarray, max_terms: int, span: float = SPAN,
                 max_sweeps: int = MAX_SWEEPS, rel_tol: float = REL_TOL,
                 seed: int = 0) -> list[PPRModel]:
    """Models with 0..max_terms ridge terms grown incrementally.

    Each stage starts from the previous backfitted model and adds one term
    fit to the residual (kept only if it does not hurt), so the training
    MSE is nonincreasing along the path.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    z = np.asarray(z, dtype=float).ravel()
    n, m = x.shape
    rng = substream(seed, "ppr-restarts")

    intercept = float(z.mean())
    resid_base = z - intercept
    terms: list[_Term] = []
    preds: list[np.ndarray] = []
    path = [PPRModel(intercept=intercept, terms=[])]
    # below this the target is fit to numerical noise; stop refining
    mse_floor = 1e-10 * float(np.mean(resid_base ** 2)) + 1e-300

    def total_pred():
        return np.sum(preds, axis=0) if preds else np.zeros(n)

    def mse():
        return float(np.mean((resid_base - total_pred()) ** 2))

    for _ in range(max_terms):
        current_mse = mse()
        if current_mse <= mse_floor:
            # already interpolating: pad the path with zero terms
            terms.append(_Term(direction=_normalize(np.ones(m)), smoother=None))
            preds.append(np.zeros(n))
            path.append(PPRModel(intercept=intercept, terms=list(terms)))
            continue
        r = resid_base - total_pred()
        attempt = _fit_term_with_retries(x, r, _initial_direction(x, r), span, rng)
        if attempt is None:
            log.warning("ridge term degenerate after retries; adding a zero term")
            terms.append(_Term(direction=_normalize(np.ones(m)), smoother=None))
            preds.append(np.zeros(n))
            path.append(PPRModel(intercept=intercept, terms=list(terms)))
            continue
        term, pred = attempt
        terms.append(term)
        preds.append(pred)
        if mse() > current_mse:
            terms[-1] = _Term(direction=term.direction, smoother=None)
            preds[-1] = np.zeros(n)

        # backfit all terms on their partial residuals
        best_terms = [t for t in terms]
        best_preds = [p for p in preds]
        best_mse = mse()
        prev_mse = best_mse
        for _sweep in range(max_sweeps):
            for idx, term_l in enumerate(terms):
                partial = resid_base - (total_pred() - preds[idx])
                refit = _fit_term(x, partial, term_l.direction, span)
                if refit is None:
                    continue
                new_term, new_pred = refit
                terms[idx], preds[idx] = new_term, new_pred
            cur = mse()
            if cur < best_mse:
                best_terms = [t for t in terms]
                best_preds = [p for p in preds]
                best_mse = cur
            if cur <= mse_floor or prev_mse - cur < rel_tol * max(prev_mse, 1e-12):
                break
            prev_mse = cur
        terms = [t for t in best_terms]
        preds = [p for p in best_preds]
        path.append(PPRModel(intercept=intercept, terms=list(terms)))
    return path


def ppr_fit(x: np.ndarray, z: np.ndarray, n_terms: int, span: float = SPAN,
            seed: int = 0) -> PPRModel:
    """PPR with a fixed number of ridge terms (0 gives the intercept model)."""
    if n_terms < 0:
        raise ValueError("number of terms must be >= 0")
    return ppr_fit_path(x, z, n_terms, span=span, seed=seed)[n_terms]
