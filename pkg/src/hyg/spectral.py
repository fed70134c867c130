"""Characters, Plancherel weights and annihilators of a finite commutative hypergroup.

The characters are the joint eigenvectors of the translation operators.  In
the Haar-weighted inner product the adjoint of ``L_x`` is ``L_{~x}``, so for
real coefficients ``t_x, s_x`` the operator

    A = Σ_x t_x (L_x + L_{~x}) + s_x i (L_x − L_{~x})

is self-adjoint and commutes with every translation.  For generic
coefficients its eigenvalues separate all characters (the skew part is what
separates a character from its complex conjugate), so one Hermitian
eigendecomposition yields the whole dual.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .core import FiniteHypergroup
from .errors import SpectralError

CHAR_TOL = 1e-8
DISTINCT_TOL = 1e-6
MAX_ATTEMPTS = 8


@dataclass(frozen=True, eq=False)
class DualObject:
    """Characters as rows of an ``(m, n)`` complex array, with Plancherel weights."""

    characters: np.ndarray
    plancherel: np.ndarray

    def __post_init__(self):
        chars = np.array(self.characters, dtype=complex)
        pi = np.array(self.plancherel, dtype=float)
        chars.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "characters", chars)
        object.__setattr__(self, "plancherel", pi)

    @property
    def size(self) -> int:
        return len(self.plancherel)

    def __len__(self):
        return self.size

    def __getitem__(self, k) -> np.ndarray:
        return self.characters[k]


def character_residuals(H: FiniteHypergroup, gamma) -> dict:
    """Residuals of the defining identities of a character."""
    g = np.asarray(gamma, dtype=complex)
    inv = list(H.involution)
    mult = np.einsum("xyz,z->xy", H.conv, g) - np.outer(g, g)
    return {
        "identity": float(abs(g[H.identity] - 1.0)),
        "multiplicative": float(np.abs(mult).max()),
        "hermitian": float(np.abs(g[inv] - np.conj(g)).max()),
        "bounded": float(max(0.0, np.abs(g).max() - 1.0)),
    }


def _hermitian_combination(H, rng):
    n = H.n
    inv = list(H.involution)
    A = np.zeros((n, n), dtype=complex)
    for x in range(n):
        if x == H.identity:
            continue
        L, Lt = H.conv[x], H.conv[inv[x]]
        A += rng.normal() * (L + Lt) + 1j * rng.normal() * (L - Lt)
    return A


def _refine(H, gamma):
    """One Gauss-Newton step on the multiplicativity residual, then re-symmetrize."""
    n, e = H.n, H.identity
    inv = list(H.involution)

    def cleaned(g):
        g = g.copy()
        g[e] = 1.0
        return 0.5 * (g + np.conj(g[inv]))

    def resid(g):
        return np.einsum("xyz,z->xy", H.conv, g) - np.outer(g, g)

    g0 = cleaned(gamma)
    r = resid(g0).ravel()
    jac = H.conv.reshape(n * n, n).astype(complex)
    rows = np.arange(n * n)
    xs, ys = np.divmod(rows, n)
    jac[rows, xs] -= g0[ys]
    jac[rows, ys] -= g0[xs]
    free = [w for w in range(n) if w != e]
    if not free:
        return g0
    step, *_ = np.linalg.lstsq(jac[:, free], -r, rcond=None)
    g1 = g0.copy()
    g1[free] += step
    g1 = cleaned(g1)
    if np.abs(resid(g1)).max() < np.abs(r).max():
        return g1
    return g0


def _sort_key(gamma):
    # descending lexicographic on rounded real parts, then imaginary parts
    re = np.round(gamma.real, 9) + 0.0
    im = np.round(gamma.imag, 9) + 0.0
    return tuple(-re) + tuple(-im)


def dual(H: FiniteHypergroup, *, seed: int = 0, char_tol: float = CHAR_TOL,
         verify_samples: int = 20) -> DualObject:
    """All ``n`` characters of ``H`` with their Plancherel weights.

    Characters are ordered by descending real parts (element by element,
    then imaginary parts), so the trivial character comes first.
    """
    n = H.n
    lam = H.haar
    root = np.sqrt(lam)
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    for _ in range(MAX_ATTEMPTS):
        A = _hermitian_combination(H, rng)
        B = (root[:, None] * A) / root[None, :]
        B = 0.5 * (B + B.conj().T)
        vals, vecs = np.linalg.eigh(B)
        scale = max(1.0, float(np.abs(vals).max()))
        gaps = np.diff(vals)
        worst_gap = float(gaps.min()) / scale if n > 1 else 1.0
        if worst_gap > DISTINCT_TOL:
            break
    else:
        raise SpectralError(f"eigenvalue collision persisted after {MAX_ATTEMPTS} attempts "
                            f"(relative gap {worst_gap:.3g})")

    chars = []
    for k in range(n):
        u = vecs[:, k] / root
        if abs(u[H.identity]) < 1e-12 * np.abs(u).max():
            raise SpectralError("joint eigenvector vanishes at the identity")
        u = u / u[H.identity]
        # joint eigenvalue of L_x via the weighted Rayleigh quotient
        norm = np.sum(lam * np.abs(u) ** 2)
        gamma = np.array([np.sum(lam * (H.conv[x] @ u) * np.conj(u)) / norm for x in range(n)])
        chars.append(_refine(H, gamma))

    worst = 0.0
    for g in chars:
        res = character_residuals(H, g)
        worst = max(worst, max(res.values()))
    if worst > char_tol:
        raise SpectralError(f"character residual {worst:.3g} exceeds {char_tol:.3g}")
    chars.sort(key=_sort_key)
    chars = np.array(chars)
    for i in range(n):
        for j in range(i + 1, n):
            if np.abs(chars[i] - chars[j]).max() <= DISTINCT_TOL:
                raise SpectralError(f"characters {i} and {j} coincide")

    pi = plancherel_weights(H, chars)
    result = DualObject(chars, pi)
    if verify_samples:
        err = plancherel_defect(H, result, samples=verify_samples, seed=seed)
        if err > max(H.tol, 1e-12):
            raise SpectralError(f"Plancherel identity fails: relative defect {err:.3g}")
    return result


def plancherel_weights(H: FiniteHypergroup, characters) -> np.ndarray:
    """π(γ) = 1 / Σ_x λ(x) |γ(x)|²."""
    chars = np.atleast_2d(np.asarray(characters, dtype=complex))
    return 1.0 / (np.abs(chars) ** 2 @ H.haar)


def plancherel_defect(H: FiniteHypergroup, D: DualObject, samples=20, seed=0) -> float:
    """Worst relative violation of Σ λ|f|² = Σ π |f̂|² over random complex f."""
    rng = np.random.default_rng(seed + 7919)
    f = rng.normal(size=(samples, H.n)) + 1j * rng.normal(size=(samples, H.n))
    fhat = (f * H.haar) @ np.conj(D.characters).T
    lhs = (np.abs(f) ** 2) @ H.haar
    rhs = (np.abs(fhat) ** 2) @ D.plancherel
    return float(np.max(np.abs(lhs - rhs) / lhs))


def annihilator(H: FiniteHypergroup, D: DualObject, L, tol: float = CHAR_TOL) -> tuple:
    """Indices of characters equal to 1 on every point of L."""
    L = list(H.subset(L))
    if not L:
        return tuple(range(D.size))
    close = np.abs(D.characters[:, L] - 1.0).max(axis=1) <= tol
    return tuple(int(k) for k in np.flatnonzero(close))


def measure_fourier(H: FiniteHypergroup, D: DualObject, mu) -> np.ndarray:
    """Fourier–Stieltjes transform μ̂(γ) = Σ_x conj(γ(x)) μ(x)."""
    return np.conj(D.characters) @ np.asarray(mu, dtype=complex)


def dual_to_csv(H: FiniteHypergroup, D: DualObject) -> str:
    """One row per character: index, π, then Re/Im of γ(x) per element, shortest round-trip floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["index", "plancherel"]
    for name in H.elements:
        header += [f"re[{name}]", f"im[{name}]"]
    writer.writerow(header)
    for k in range(D.size):
        row = [str(k), repr(float(D.plancherel[k]))]
        for v in D.characters[k]:
            row += [repr(float(v.real) + 0.0), repr(float(v.imag) + 0.0)]
        writer.writerow(row)
    return buf.getvalue()


def dual_to_dict(H: FiniteHypergroup, D: DualObject) -> dict:
    return {
        "elements": list(H.elements),
        "characters": [
            {
                "index": k,
                "plancherel": float(D.plancherel[k]),
                "values": [{"re": float(v.real), "im": float(v.imag)} for v in D.characters[k]],
            }
            for k in range(D.size)
        ],
    }
