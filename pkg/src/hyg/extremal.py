"""Hausdorff-Young extremizers: certificates, structured scan, numerical search,
and the dimension of translate spans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    FiniteHypergroup,
    is_subhypergroup,
    set_convolve,
    subhypergroups,
)
from .errors import CertificateInconsistency, DomainError, SearchFailure
from .io import complex_to_json
from .spectral import DualObject
from .transform import conjugate_exponent, fourier, hy_ratio

EQ_TOL = 1e-7
# ratio flatness near the maximizer limits how well f itself is resolved
RECON_TOL = 1e-5
SUPPORT_TOL = 1e-6
RANK_TOL = 1e-9
SMOOTHING = 1e-12
TARGET_GAP = 1e-6
TIE_TOL = 1e-12

EXTREMAL = "Extremal"
NOT_EXTREMAL = "NotExtremal"


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 64
    max_iters: int = 2000
    step_init: float = 0.5
    seed: int = 0
    eq_tol: float = EQ_TOL

    def __post_init__(self):
        if self.restarts < 1:
            raise DomainError("restarts must be >= 1")
        if self.eq_tol <= 0:
            raise DomainError("eq_tol must be positive")
        if self.max_iters < 0 or self.step_init <= 0:
            raise DomainError("max_iters must be >= 0 and step_init > 0")


@dataclass
class EqualityCertificate:
    """Outcome of testing f against the structure forced by equality.

    ``support`` is supp(f); ``subhypergroup`` is {~x0} * supp(f);
    ``character`` indexes the dual, ``alpha`` is the fitted scale.
    """

    ratio: float
    verdict: str
    support: tuple
    subhypergroup: tuple
    base_point: int
    character: int | None
    alpha: complex | None
    residuals: dict = field(default_factory=dict)

    @property
    def extremal(self) -> bool:
        return self.verdict == EXTREMAL

    def to_dict(self, H: FiniteHypergroup) -> dict:
        return {
            "ratio": float(self.ratio),
            "verdict": self.verdict,
            "support": H.names(self.support),
            "subhypergroup": H.names(self.subhypergroup),
            "basePoint": H.elements[self.base_point],
            "character": self.character,
            "alpha": complex_to_json(self.alpha) if self.alpha is not None else None,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }


def _relative_support(values, tol):
    mod = np.abs(values)
    top = mod.max(initial=0.0)
    if top == 0:
        return ()
    return tuple(int(i) for i in np.flatnonzero(mod > tol * top))


def _fit_character(D, f, support):
    """(index, alpha, residual) of the best α γ χ_support fit, lowest index on ties."""
    S = list(support)
    scale = np.abs(f).max()
    fits = []
    for k, gamma in enumerate(D.characters):
        g = np.zeros_like(f)
        g[S] = gamma[S]
        denom = np.sum(np.abs(g[S]) ** 2)
        if denom == 0:
            fits.append((math.inf, k, None))
            continue
        alpha = np.sum(np.conj(g[S]) * f[S]) / denom
        fits.append((float(np.abs(f - alpha * g).max() / scale), k, complex(alpha)))
    best = min(r for r, _, _ in fits)
    for r, k, alpha in fits:
        if r <= best + TIE_TOL:
            return k, alpha, r
    raise AssertionError("unreachable")


def equality_certificate(H: FiniteHypergroup, D: DualObject, f, p: float, *, eq_tol: float = EQ_TOL,
                         recon_tol: float = RECON_TOL,
                         support_tol: float = SUPPORT_TOL) -> EqualityCertificate:
    """Decide whether f attains equality and, if so, exhibit f = α γ0 χ_{{x0}*H}.

    Supports are taken relative to the largest modulus (``support_tol``).
    Residuals: ``ratio`` |ratio − 1|; ``subhypergroup`` and ``coset`` are 0/1
    flags; ``unimodular`` is max ||γ0| − 1| on supp f; ``reconstruction`` is
    max |f − α γ0 χ| / max |f|; ``dual_unimodular`` is max ||γ(x)| − 1| over
    γ in supp f̂ and x in supp f.  Reconstruction is judged against
    ``recon_tol``, every other residual against ``eq_tol``.

    Raises :class:`CertificateInconsistency` if the ratio is 1 within
    ``eq_tol`` but the decomposition fails.
    """
    if not 1 < p < 2:
        raise DomainError(f"certificates need 1 < p < 2, got {p}")
    f = np.asarray(f, dtype=complex)
    if not np.any(f):
        raise DomainError("certificate of the zero function")
    ratio = hy_ratio(H, D, f, p)
    support = _relative_support(f, support_tol)
    x0 = support[0]
    sub = set_convolve(H, (H.involution[x0],), support)
    coset = set_convolve(H, (x0,), sub)
    k, alpha, recon = _fit_character(D, f, support)
    gamma = D.characters[k]
    dual_support = _relative_support(fourier(H, D, f), support_tol)
    block = np.abs(D.characters[np.ix_(dual_support, support)]) if dual_support else np.ones(1)
    residuals = {
        "ratio": abs(ratio - 1.0),
        "subhypergroup": 0.0 if is_subhypergroup(H, sub) else 1.0,
        "coset": 0.0 if coset == support else 1.0,
        "unimodular": float(np.abs(np.abs(gamma[list(support)]) - 1.0).max()),
        "reconstruction": recon,
        "dual_unimodular": float(np.abs(block - 1.0).max()),
    }
    structured = (
        residuals["subhypergroup"] == 0
        and residuals["coset"] == 0
        and residuals["unimodular"] <= eq_tol
        and residuals["dual_unimodular"] <= eq_tol
        and residuals["reconstruction"] <= recon_tol
    )
    equal = residuals["ratio"] <= eq_tol
    cert = EqualityCertificate(ratio, EXTREMAL if equal and structured else NOT_EXTREMAL,
                               support, sub, x0, k, alpha, residuals)
    if equal and not structured:
        bad = {key: v for key, v in residuals.items() if key != "ratio" and v > eq_tol}
        err = CertificateInconsistency(f"ratio {ratio:.12g} attains equality but decomposition fails: {bad}")
        err.certificate = cert
        raise err
    return cert


def structured_candidates(H: FiniteHypergroup, D: DualObject, cap=None) -> list:
    """Distinct functions γ0 χ_{{x0}*A} over subhypergroups A, base points x0, characters γ0.

    Returns ``[(A, x0, k, f), ...]`` in enumeration order; χ_A (x0 = e,
    trivial character) always appears for each A.
    """
    seen = set()
    out = []
    for A in subhypergroups(H, cap=cap):
        for x0 in range(H.n):
            coset = list(set_convolve(H, (x0,), A))
            for k, gamma in enumerate(D.characters):
                f = np.zeros(H.n, dtype=complex)
                f[coset] = gamma[coset]
                if not np.any(np.abs(f) > SUPPORT_TOL):
                    continue
                key = tuple(np.round(f, 10).tolist())
                if key in seen:
                    continue
                seen.add(key)
                out.append((A, x0, k, f))
    return out


def structured_scan(H: FiniteHypergroup, D: DualObject, p: float, *, eq_tol: float = EQ_TOL,
                    cap=None) -> list:
    """Certificates for the structured candidates that attain equality."""
    certs = []
    for _, _, _, f in structured_candidates(H, D, cap=cap):
        cert = equality_certificate(H, D, f, p, eq_tol=eq_tol)
        if cert.extremal:
            certs.append(cert)
    return certs


def certificate_function(H: FiniteHypergroup, D: DualObject, cert: EqualityCertificate) -> np.ndarray:
    f = np.zeros(H.n, dtype=complex)
    S = list(cert.support)
    f[S] = cert.alpha * D.characters[cert.character][S]
    return f


# ------------------------------------------------------------------ search


class _SmoothedRatio:
    """R(f) = ‖f̂‖_{p'} / ‖f‖_p with |·|² replaced by |·|² + ε, batched over rows."""

    def __init__(self, H, D, p, eps=SMOOTHING):
        self.F = np.conj(D.characters) * H.haar[None, :]
        self.lam = np.asarray(H.haar)
        self.pi = np.asarray(D.plancherel)
        self.p = p
        self.q = conjugate_exponent(p)
        self.eps = eps

    def value(self, f):
        g = f @ self.F.T
        s = np.abs(g) ** 2 + self.eps
        t = np.abs(f) ** 2 + self.eps
        num = np.sum(self.pi * s ** (self.q / 2), axis=-1) ** (1 / self.q)
        den = np.sum(self.lam * t ** (self.p / 2), axis=-1) ** (1 / self.p)
        return num / den

    def value_and_grad(self, f):
        """Gradient as a complex array: ∂R/∂Re f + i ∂R/∂Im f."""
        p, q = self.p, self.q
        g = f @ self.F.T
        s = np.abs(g) ** 2 + self.eps
        t = np.abs(f) ** 2 + self.eps
        num = np.sum(self.pi * s ** (q / 2), axis=-1) ** (1 / q)
        den = np.sum(self.lam * t ** (p / 2), axis=-1) ** (1 / p)
        grad_num = (num ** (1 - q))[..., None] * ((self.pi * s ** (q / 2 - 1) * g) @ np.conj(self.F))
        grad_den = (den ** (1 - p))[..., None] * (self.lam * t ** (p / 2 - 1) * f)
        ratio = num / den
        grad = grad_num / den[..., None] - (ratio / den)[..., None] * grad_den
        return ratio, grad


def smoothed_ratio(H: FiniteHypergroup, D: DualObject, f, p: float, eps: float = SMOOTHING) -> float:
    return float(_SmoothedRatio(H, D, p, eps).value(np.asarray(f, dtype=complex)))


def smoothed_ratio_gradient(H: FiniteHypergroup, D: DualObject, f, p: float,
                            eps: float = SMOOTHING) -> np.ndarray:
    """Complex gradient ∂R/∂Re f + i ∂R/∂Im f of the smoothed ratio."""
    _, grad = _SmoothedRatio(H, D, p, eps).value_and_grad(np.asarray(f, dtype=complex))
    return grad


def _normalize(f, lam, p):
    norms = np.sum(lam * np.abs(f) ** p, axis=-1) ** (1 / p)
    return f / norms[:, None]


def _ascend(obj, f, mask, max_iters, step_init, armijo=1e-4, gtol=1e-13, min_step=1e-20,
            window=25, stall_tol=1e-15):
    """Batched projected gradient ascent with per-row halving line search.

    A row stops when its gradient vanishes, its line search fails, or its
    ratio gains less than ``stall_tol`` over ``window`` iterations.
    """
    lam, p = obj.lam, obj.p
    f = _normalize(f * mask, lam, p)
    ratio, grad = obj.value_and_grad(f)
    grad = grad * mask
    active = np.ones(len(f), dtype=bool)
    iters = np.zeros(len(f), dtype=int)
    history = [ratio.copy()]
    for it in range(max_iters):
        gn2 = np.sum(np.abs(grad) ** 2, axis=-1)
        active &= gn2 > gtol ** 2
        if not active.any():
            break
        step = np.where(active, step_init, 0.0)
        pending = active.copy()
        new_f = f.copy()
        while pending.any():
            cand = _normalize(f + step[:, None] * grad, lam, p)
            cand_ratio = obj.value(cand)
            ok = pending & (cand_ratio >= ratio + armijo * step * gn2)
            new_f[ok] = cand[ok]
            pending &= ~ok
            step = np.where(pending, step / 2, step)
            stalled = pending & (step < min_step)
            active &= ~stalled
            pending &= ~stalled
        moved = active
        if not moved.any():
            break
        f = np.where(moved[:, None], new_f, f)
        iters += moved
        r_new, g_new = obj.value_and_grad(f)
        ratio = np.where(moved, r_new, ratio)
        grad = np.where(moved[:, None], g_new * mask, grad)
        history.append(ratio.copy())
        if it >= window:
            active &= history[-1] - history[-1 - window] > stall_tol
    return f, iters


def _initial_points(n, cfg):
    rows = []
    for k in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, k])
        f = rng.normal(size=n) + 1j * rng.normal(size=n)
        if k % 2 == 1 and n > 1:
            keep = rng.random(n) < 0.5
            keep[rng.integers(n)] = True
            f = f * keep
        rows.append(f)
    return np.array(rows)


@dataclass
class SearchResult:
    ratio: float
    argmax: np.ndarray
    p: float
    restart_ratios: np.ndarray
    n_random: int
    best_index: int
    iterations: int
    certificate: EqualityCertificate | None = None

    @property
    def ok(self) -> bool:
        return self.ratio >= 1.0 - TARGET_GAP

    @property
    def random_best(self) -> float:
        return float(self.restart_ratios[: self.n_random].max())

    @property
    def random_hits(self) -> int:
        return int(np.sum(self.restart_ratios[: self.n_random] >= 1.0 - TARGET_GAP))

    def summary(self) -> dict:
        return {
            "p": self.p,
            "ratio": self.ratio,
            "restarts": self.n_random,
            "warm_starts": len(self.restart_ratios) - self.n_random,
            "random_best": self.random_best,
            "random_hits": self.random_hits,
            "best_index": self.best_index,
            "iterations": self.iterations,
        }


def best_constant_search(H: FiniteHypergroup, D: DualObject, p: float, cfg: SearchConfig | None = None, *,
                         warm_start: bool = True, starts=None, strict: bool = True,
                         certify: bool = True) -> SearchResult:
    """Maximize ‖f̂‖_{p'} / ‖f‖_p over complex f by projected gradient ascent.

    Random restarts (seeded per restart index from ``cfg.seed``) are followed
    by warm starts from every structured extremizer.  Each restart runs a
    full-support phase and then a phase restricted to its numerical support.
    The best final ratio wins; ratios within ``TIE_TOL`` of the best go to the
    lowest restart index.  Rows of ``starts`` are extra initial points,
    indexed after the warm starts.  With ``strict`` a best ratio below 1 − 1e−6 raises
    :class:`SearchFailure` carrying the result.
    """
    if not 1 < p <= 2:
        raise DomainError(f"search needs 1 < p <= 2, got {p}")
    cfg = cfg or SearchConfig()
    obj = _SmoothedRatio(H, D, p)
    rows = [_initial_points(H.n, cfg)]
    if warm_start:
        warm = [certificate_function(H, D, c) for c in structured_scan(H, D, p, eq_tol=cfg.eq_tol)] if p < 2 else []
        if warm:
            rows.append(np.array(warm))
    if starts is not None:
        rows.append(np.atleast_2d(np.asarray(starts, dtype=complex)))
    f0 = np.concatenate(rows)
    ones = np.ones_like(f0, dtype=float)
    f1, it1 = _ascend(obj, f0, ones, cfg.max_iters, cfg.step_init)
    mod = np.abs(f1)
    mask = (mod > SUPPORT_TOL * mod.max(axis=1, keepdims=True)).astype(float)
    f2, it2 = _ascend(obj, f1, mask, cfg.max_iters, cfg.step_init)

    ratios = np.empty(len(f0))
    finals = np.empty_like(f0)
    for i in range(len(f0)):
        r1, r2 = hy_ratio(H, D, f1[i], p), hy_ratio(H, D, f2[i], p)
        finals[i], ratios[i] = (f2[i], r2) if r2 >= r1 else (f1[i], r1)
    best = float(ratios.max())
    idx = int(np.flatnonzero(ratios >= best - TIE_TOL)[0])
    result = SearchResult(float(ratios[idx]), finals[idx], p, ratios, cfg.restarts, idx,
                          int(it1.sum() + it2.sum()))
    if certify and 1 < p < 2 and result.ok:
        result.certificate = equality_certificate(H, D, result.argmax, p, eq_tol=cfg.eq_tol)
    if strict and not result.ok:
        raise SearchFailure(f"best ratio {result.ratio:.12g} below 1 - {TARGET_GAP:g} at p = {p}", result)
    return result


# ------------------------------------------------------------ translate span


def translate_span_dim(H: FiniteHypergroup, f, E, rank_tol: float = RANK_TOL) -> int:
    """Rank of the rows T_x f, x in E; this is dim span{T_μ f : μ ∈ M(E)}."""
    E = H.subset(E)
    if not E:
        return 0
    f = np.asarray(f, dtype=complex)
    rows = np.array([H.conv[H.involution[x]] @ f for x in E])
    s = np.linalg.svd(rows, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))

