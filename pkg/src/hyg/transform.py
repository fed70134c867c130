"""Fourier analysis on a hypergroup and its dual: transforms, weighted L^p norms,
the Hausdorff-Young ratio, the analytic family S_z, f*, Ω(z) and Hölder equality."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .core import FiniteHypergroup
from .errors import DomainError, StructuralError
from .spectral import DualObject


def conjugate_exponent(p: float) -> float:
    if p < 1:
        raise DomainError(f"exponent must be >= 1, got {p}")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentPair:
    p: float
    p_prime: float

    @classmethod
    def from_p(cls, p: float) -> "ExponentPair":
        if not 1 <= p <= 2:
            raise DomainError(f"Hausdorff-Young exponent must lie in [1, 2], got {p}")
        return cls(float(p), conjugate_exponent(p))


def interpolation_exponent(z: complex) -> float:
    """r(z) = 2 / (Re z + 1), defined off the line Re z = −1."""
    re = complex(z).real
    if re == -1:
        raise DomainError("r(z) is undefined on Re z = -1")
    return 2.0 / (re + 1.0)


def sgn(values) -> np.ndarray:
    """z / |z| with sgn(0) = 0."""
    v = np.asarray(values, dtype=complex)
    mod = np.abs(v)
    out = np.zeros_like(v)
    nz = mod > 0
    out[nz] = v[nz] / mod[nz]
    return out


def fourier(H: FiniteHypergroup, D: DualObject, f) -> np.ndarray:
    """f̂(γ) = Σ_x λ(x) f(x) conj(γ(x))."""
    f = np.asarray(f, dtype=complex)
    return (f * H.haar) @ np.conj(D.characters).T


def inverse_fourier(H: FiniteHypergroup, D: DualObject, phi) -> np.ndarray:
    """φ̌(x) = Σ_γ π(γ) φ(γ) γ(x)."""
    phi = np.asarray(phi, dtype=complex)
    return (phi * D.plancherel) @ D.characters


def lp_norm(values, weights, p: float) -> float:
    """(Σ w |v|^p)^{1/p}; for p = ∞ the max of |v| where w > 0."""
    if p < 1:
        raise DomainError(f"L^p norm needs p >= 1, got {p}")
    v = np.abs(np.asarray(values))
    w = np.asarray(weights, dtype=float)
    if v.shape[-1] != w.shape[-1]:
        raise StructuralError("values and weights have different lengths")
    if math.isinf(p):
        return float(np.max(np.where(w > 0, v, 0.0), axis=-1, initial=0.0))
    return float(np.sum(w * v ** p) ** (1.0 / p))


def hy_norms(H: FiniteHypergroup, D: DualObject, f, p: float) -> tuple:
    """(‖f‖_p on K, ‖f̂‖_{p'} on the dual)."""
    pair = ExponentPair.from_p(p)
    return lp_norm(f, H.haar, pair.p), lp_norm(fourier(H, D, f), D.plancherel, pair.p_prime)


def hy_ratio(H: FiniteHypergroup, D: DualObject, f, p: float) -> float:
    """‖f̂‖_{p'} / ‖f‖_p, which never exceeds 1."""
    norm_f, norm_hat = hy_norms(H, D, f, p)
    if norm_f == 0:
        raise DomainError("Hausdorff-Young ratio of the zero function")
    return norm_hat / norm_f


def complexify(f, p: float, z: complex) -> np.ndarray:
    """S_z f = |f|^{p(z+1)/2} sgn(f), zero where f vanishes."""
    z = complex(z)
    if z.real == -1:
        raise DomainError("S_z is undefined on Re z = -1")
    f = np.asarray(f, dtype=complex)
    mod = np.abs(f)
    out = np.zeros_like(f)
    nz = mod > 0
    out[nz] = np.exp(p * (z + 1) / 2 * np.log(mod[nz])) * f[nz] / mod[nz]
    return out


def f_star(H: FiniteHypergroup, D: DualObject, f, p: float) -> np.ndarray:
    """f*(γ) = |f̂(γ)|^{p'−2} f̂(γ), a function on the dual."""
    if not 1 < p < 2:
        raise DomainError(f"f* needs 1 < p < 2, got {p}")
    q = conjugate_exponent(p)
    fh = fourier(H, D, f)
    mod = np.abs(fh)
    out = np.zeros_like(fh)
    nz = mod > 0
    out[nz] = mod[nz] ** (q - 2) * fh[nz]
    return out


def omega(H: FiniteHypergroup, D: DualObject, f, p: float, z: complex) -> tuple:
    """Ω(z) = Σ_γ π(γ) (S_z f)^(γ) S_z conj(f*)(γ) for f rescaled to unit L^p norm.

    Returns ``(value, scale)``; ``scale`` is the factor applied to ``f``
    (1.0 when f already had unit norm).
    """
    if not 1 < p < 2:
        raise DomainError(f"Ω needs 1 < p < 2, got {p}")
    f = np.asarray(f, dtype=complex)
    norm = lp_norm(f, H.haar, p)
    if norm == 0:
        raise DomainError("Ω of the zero function")
    scale = 1.0 if abs(norm - 1.0) <= 1e-15 else 1.0 / norm
    f = f * scale
    fs = f_star(H, D, f, p)
    left = fourier(H, D, complexify(f, p, z))
    right = complexify(np.conj(fs), p, z)
    return complex(np.sum(D.plancherel * left * right)), scale


@dataclass
class HolderReport:
    integral: complex
    modulus: float
    bound: float
    equality: bool
    pointwise_residual: float | None
    pointwise_ok: bool | None


def holder_equality_check(f, g, p: float, weights, tol: float = 1e-9) -> HolderReport:
    """Test Σ w f g = ‖f‖_p ‖g‖_{p'} ≠ 0 and the pointwise form equality forces.

    For p > 1 equality means g = ‖g‖_{p'} ‖f‖_p^{1−p} |f|^{p−1} sgn(conj f)
    wherever w > 0; for p = 1 it means g = ‖g‖_∞ sgn(conj f) on supp f.
    """
    if not 1 <= p < math.inf:
        raise DomainError(f"p must lie in [1, inf), got {p}")
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    w = np.asarray(weights, dtype=float)
    if not (f.shape == g.shape == w.shape):
        raise StructuralError("f, g and weights must share one index set")
    q = conjugate_exponent(p)
    nf, ng = lp_norm(f, w, p), lp_norm(g, w, q)
    integral = complex(np.sum(w * f * g))
    bound = nf * ng
    scale = max(1.0, bound)
    equality = bound > 0 and abs(integral - bound) <= tol * scale

    pointwise_residual = pointwise_ok = None
    if equality:
        live = w > 0
        if p > 1:
            expected = ng * nf ** (1 - p) * np.abs(f) ** (p - 1) * sgn(np.conj(f))
            mask = live
        else:
            expected = ng * sgn(np.conj(f))
            mask = live & (np.abs(f) > 0)
        gscale = max(1.0, float(np.abs(g).max()))
        pointwise_residual = float(np.abs(g - expected)[mask].max(initial=0.0))
        pointwise_ok = pointwise_residual <= math.sqrt(tol) * gscale
    return HolderReport(integral, abs(integral), bound, bool(equality), pointwise_residual, pointwise_ok)


def sweep(H: FiniteHypergroup, D: DualObject, f, ps) -> list:
    """[(p, ratio, 1 − ratio), ...] over the given exponents."""
    rows = []
    for p in ps:
        r = hy_ratio(H, D, f, p)
        rows.append((float(p), r, 1.0 - r))
    return rows


def sweep_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "ratio", "gap"])
    for p, r, gap in rows:
        writer.writerow([repr(float(p)), repr(float(r)), repr(float(gap))])
    return buf.getvalue()
