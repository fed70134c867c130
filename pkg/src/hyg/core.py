"""Finite commutative hypergroups described by structure constants.

A finite hypergroup on the points ``0..n-1`` is stored as the array
``conv[x, y, z]``, the weight of the point mass at ``z`` in the product
``p_x * p_y``.  When every input coefficient is rational the constants are
also kept exactly (as :class:`fractions.Fraction`), and validation and the
Haar solver then use exact zero tests instead of a float tolerance.

Functions and measures on the hypergroup are plain complex numpy vectors
indexed like ``elements``; subsets are sorted tuples of indices.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AxiomError,
    DegenerateInputError,
    HypergroupError,
    SizeCapError,
    StructuralError,
)

DEFAULT_TOL = 1e-9
DEFAULT_SIZE_CAP = 16
SIZE_CAP_ENV = "HYG_SIZE_CAP"

AXIOMS = ("A3", "A5", "A6", "involution", "associativity", "commutativity")


class InternalConsistencyError(HypergroupError):
    """Independent computations of the same object disagree."""


def parse_coefficient(value):
    """Exact inputs (``"p/q"`` strings, ints, Fractions) become Fractions; floats stay floats."""
    if isinstance(value, bool):
        raise StructuralError(f"coefficient must be numeric, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"cannot parse coefficient {value!r}") from exc
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise StructuralError(f"non-finite coefficient {value!r}")
        return float(value)
    raise StructuralError(f"unsupported coefficient type {type(value).__name__}")


@dataclass(frozen=True, eq=False)
class FiniteHypergroup:
    """Structure constants of a finite hypergroup plus identity and involution.

    Instances are immutable.  ``haar`` is computed lazily, once.  Construction
    only checks the shape of the data; call :func:`validate` (or build through
    :func:`make_hypergroup`) to check the axioms.
    """

    elements: tuple
    identity: int
    involution: tuple
    conv: np.ndarray
    exact: tuple | None = None
    tol: float = DEFAULT_TOL
    name: str = ""

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        n = len(elements)
        if n < 1:
            raise StructuralError("a hypergroup needs at least one element")
        if len(set(elements)) != n:
            raise StructuralError("element names must be distinct")
        conv = np.array(self.conv, dtype=float)
        if conv.shape != (n, n, n):
            raise StructuralError(f"convolution table has shape {conv.shape}, expected {(n, n, n)}")
        if not np.all(np.isfinite(conv)):
            raise StructuralError("convolution table has non-finite entries")
        if not 0 <= self.identity < n:
            raise StructuralError(f"identity index {self.identity} out of range")
        inv = tuple(int(i) for i in self.involution)
        if len(inv) != n or sorted(inv) != list(range(n)):
            raise StructuralError("involution must be a permutation of the element indices")
        if self.tol < 0:
            raise StructuralError("tolerance must be non-negative")
        conv.setflags(write=False)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "involution", inv)
        object.__setattr__(self, "conv", conv)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.n:
                raise StructuralError(f"element index {name} out of range")
            return int(name)
        try:
            return self.elements.index(str(name))
        except ValueError:
            raise StructuralError(f"unknown element {name!r}") from None

    def subset(self, items: Iterable) -> tuple:
        """Normalize names or indices into a sorted tuple of indices."""
        return tuple(sorted({self.index(i) for i in items}))

    def names(self, subset: Iterable[int]) -> list:
        return [self.elements[i] for i in subset]

    @cached_property
    def support(self) -> np.ndarray:
        """Boolean ``supp[x, y, z]``: is ``z`` in supp(p_x * p_y)."""
        if self.exact is not None:
            supp = np.zeros((self.n,) * 3, dtype=bool)
            for x, row in enumerate(self.exact):
                for y, terms in enumerate(row):
                    for z, c in terms:
                        supp[x, y, z] = c > 0
        else:
            supp = self.conv > self.tol
        supp.setflags(write=False)
        return supp

    @cached_property
    def haar_exact(self):
        """Exact Haar weights with λ(e) = 1, or None for float tables."""
        if self.exact is None:
            return None
        return _haar_exact(self)

    @cached_property
    def haar(self) -> np.ndarray:
        if self.exact is not None:
            lam = np.array([float(v) for v in self.haar_exact])
        else:
            lam = _haar_float(self)
        lam.setflags(write=False)
        return lam

    def __repr__(self):
        label = self.name or "FiniteHypergroup"
        return f"<{label}: n={self.n}, {'exact' if self.is_exact else 'float'}>"


def _dense_from_terms(n, terms):
    conv = np.zeros((n, n, n))
    for x in range(n):
        for y in range(n):
            for z, c in terms[x][y]:
                conv[x, y, z] += float(c)
    return conv


def hypergroup_from_terms(elements, identity, involution, terms, *, tol=DEFAULT_TOL, name=""):
    """Build from sparse products ``terms[(x, y)] = [(z, coefficient), ...]``.

    Pairs involving the identity may be omitted and are filled in from the
    identity axiom; any other missing pair is a structural error.  If every
    coefficient is exact the table is stored exactly as well.
    """
    elements = tuple(str(e) for e in elements)
    n = len(elements)
    if not 0 <= identity < n:
        raise StructuralError(f"identity index {identity} out of range")
    rows = [[None] * n for _ in range(n)]
    for (x, y), items in terms.items():
        if not (0 <= x < n and 0 <= y < n):
            raise StructuralError(f"convolution pair ({x}, {y}) out of range")
        acc: dict = {}
        for z, c in items:
            if not 0 <= z < n:
                raise StructuralError(f"term index {z} out of range in pair ({elements[x]}, {elements[y]})")
            c = parse_coefficient(c)
            acc[z] = acc.get(z, 0) + c
        rows[x][y] = acc
    for x in range(n):
        for y in range(n):
            if rows[x][y] is not None:
                continue
            if x == identity:
                rows[x][y] = {y: Fraction(1)}
            elif y == identity:
                rows[x][y] = {x: Fraction(1)}
            else:
                raise StructuralError(f"missing convolution pair ({elements[x]}, {elements[y]})")
    exact_input = all(isinstance(c, Fraction) for row in rows for acc in row for c in acc.values())
    table = tuple(
        tuple(tuple(sorted((z, c) for z, c in acc.items() if c != 0)) for acc in row) for row in rows
    )
    conv = _dense_from_terms(n, table)
    return FiniteHypergroup(
        elements, identity, tuple(involution), conv,
        exact=table if exact_input else None, tol=tol, name=name,
    )


def hypergroup_from_array(elements, identity, involution, conv, *, tol=DEFAULT_TOL, name=""):
    """Float-backed hypergroup from a dense ``(n, n, n)`` array."""
    return FiniteHypergroup(tuple(elements), identity, tuple(involution), np.asarray(conv, dtype=float),
                            tol=tol, name=name)


def make_hypergroup(*args, **kwargs) -> FiniteHypergroup:
    """:func:`hypergroup_from_terms` followed by validation; raises :class:`AxiomError`."""
    H = hypergroup_from_terms(*args, **kwargs)
    validate(H).raise_for_failure()
    return H


# ---------------------------------------------------------------- validation


@dataclass
class AxiomCheck:
    axiom: str
    passed: bool
    residual: float
    witness: tuple | None = None

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        line = f"{self.axiom:<14} {status}  residual={self.residual:.3g}"
        if self.witness is not None and not self.passed:
            line += f"  witness={self.witness}"
        return line


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)
    exact: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def worst_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def check(self, axiom) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def raise_for_failure(self):
        if self.failures:
            bad = self.failures[0]
            raise AxiomError(bad.axiom, bad.residual, bad.witness)

    def __str__(self):
        mode = "exact" if self.exact else "float"
        head = f"{'valid' if self.ok else 'INVALID'} ({mode} arithmetic)"
        return "\n".join([head] + [str(c) for c in self.checks])


def validate(H: FiniteHypergroup) -> ValidationReport:
    """Check A3, A5, A6, involution compatibility, associativity, commutativity.

    Witnesses are tuples of element names.  With an exact table a check passes
    only with residual exactly zero; otherwise residuals are compared to ``H.tol``.
    """
    if H.exact is not None:
        checks = _validate_exact(H)
    else:
        checks = _validate_float(H)
    return ValidationReport(checks, exact=H.exact is not None)


def _names(H, idx):
    return tuple(H.elements[int(i)] for i in idx)


def _involution_structure(H):
    inv, e = H.involution, H.identity
    if inv[e] != e:
        return (H.elements[e],)
    for x in range(H.n):
        if inv[inv[x]] != x:
            return (H.elements[x],)
    return None


def _a6_check(H, mass_at_e, supp_at_e):
    inv = np.array(H.involution)
    required = np.zeros((H.n, H.n), dtype=bool)
    required[np.arange(H.n), inv] = True
    residual, witness = 0.0, None
    off = np.where(~required, mass_at_e, 0.0)
    if off.max() > 0:
        x, y = np.unravel_index(np.argmax(off), off.shape)
        residual = float(off[x, y])
        witness = _names(H, (x, y))
    missing = required & ~supp_at_e
    if missing.any():
        # a missing identity mass is a qualitative failure, reported as 1
        x, y = np.argwhere(missing)[0]
        residual, witness = 1.0, _names(H, (x, y))
    passed = bool(np.array_equal(supp_at_e, required))
    return AxiomCheck("A6", passed, residual, witness)


def _validate_float(H):
    c, tol, e, n = H.conv, H.tol, H.identity, H.n
    inv = np.array(H.involution)
    checks = []

    sums = np.abs(c.sum(axis=2) - 1.0)
    neg = np.maximum(-c, 0.0).max(axis=2)
    worst = np.maximum(sums, neg)
    x, y = np.unravel_index(np.argmax(worst), worst.shape)
    checks.append(AxiomCheck("A3", bool(worst.max() <= tol), float(worst.max()), _names(H, (x, y))))

    eye = np.eye(n)
    left = np.abs(c[e] - eye)
    right = np.abs(c[:, e, :] - eye)
    res = max(left.max(), right.max())
    if left.max() >= right.max():
        y, z = np.unravel_index(np.argmax(left), left.shape)
        wit = _names(H, (e, y, z))
    else:
        x, z = np.unravel_index(np.argmax(right), right.shape)
        wit = _names(H, (x, e, z))
    checks.append(AxiomCheck("A5", bool(res <= tol), float(res), wit))

    checks.append(_a6_check(H, c[:, :, e], c[:, :, e] > tol))

    bad = _involution_structure(H)
    if bad is not None:
        checks.append(AxiomCheck("involution", False, 1.0, bad))
    else:
        mirrored = c[inv][:, inv][:, :, inv].transpose(1, 0, 2)
        diff = np.abs(c - mirrored)
        idx = np.unravel_index(np.argmax(diff), diff.shape)
        checks.append(AxiomCheck("involution", bool(diff.max() <= tol), float(diff.max()), _names(H, idx)))

    lhs = np.einsum("xyw,wzv->xyzv", c, c)
    rhs = np.einsum("yzw,xwv->xyzv", c, c)
    diff = np.abs(lhs - rhs)
    idx = np.unravel_index(np.argmax(diff), diff.shape)
    checks.append(AxiomCheck("associativity", bool(diff.max() <= tol), float(diff.max()), _names(H, idx)))

    diff = np.abs(c - c.transpose(1, 0, 2))
    idx = np.unravel_index(np.argmax(diff), diff.shape)
    checks.append(AxiomCheck("commutativity", bool(diff.max() <= tol), float(diff.max()), _names(H, idx)))
    return checks


def _exact_rows(H):
    return [[dict(terms) for terms in row] for row in H.exact]


def _worst(items):
    """items: iterable of (Fraction residual, witness); returns (float, witness)."""
    best, wit = Fraction(0), None
    for r, w in items:
        if r > best:
            best, wit = r, w
    return best, wit


def _validate_exact(H):
    rows, e, n = _exact_rows(H), H.identity, H.n
    inv = H.involution
    checks = []

    def a3():
        for x in range(n):
            for y in range(n):
                acc = rows[x][y]
                yield abs(sum(acc.values(), Fraction(0)) - 1), _names(H, (x, y))
                for z, c in acc.items():
                    if c < 0:
                        yield -c, _names(H, (x, y, z))

    r, w = _worst(a3())
    checks.append(AxiomCheck("A3", r == 0, float(r), w))

    def a5():
        for y in range(n):
            for z in range(n):
                yield abs(rows[e][y].get(z, 0) - (y == z)), _names(H, (e, y, z))
                yield abs(rows[y][e].get(z, 0) - (y == z)), _names(H, (y, e, z))

    r, w = _worst(a5())
    checks.append(AxiomCheck("A5", r == 0, float(r), w))

    mass = np.array([[float(rows[x][y].get(e, 0)) for y in range(n)] for x in range(n)])
    supp = np.array([[rows[x][y].get(e, 0) > 0 for y in range(n)] for x in range(n)])
    checks.append(_a6_check(H, mass, supp))

    bad = _involution_structure(H)
    if bad is not None:
        checks.append(AxiomCheck("involution", False, 1.0, bad))
    else:
        def invol():
            for x in range(n):
                for y in range(n):
                    mirror = rows[inv[y]][inv[x]]
                    for z in range(n):
                        yield abs(rows[x][y].get(z, 0) - mirror.get(inv[z], 0)), _names(H, (x, y, z))

        r, w = _worst(invol())
        checks.append(AxiomCheck("involution", r == 0, float(r), w))

    def assoc():
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs: dict = {}
                    for w_, c1 in rows[x][y].items():
                        for v, c2 in rows[w_][z].items():
                            lhs[v] = lhs.get(v, 0) + c1 * c2
                    rhs: dict = {}
                    for w_, c1 in rows[y][z].items():
                        for v, c2 in rows[x][w_].items():
                            rhs[v] = rhs.get(v, 0) + c1 * c2
                    for v in set(lhs) | set(rhs):
                        yield abs(lhs.get(v, 0) - rhs.get(v, 0)), _names(H, (x, y, z, v))

    r, w = _worst(assoc())
    checks.append(AxiomCheck("associativity", r == 0, float(r), w))

    def comm():
        for x in range(n):
            for y in range(x + 1, n):
                for z in set(rows[x][y]) | set(rows[y][x]):
                    yield abs(rows[x][y].get(z, 0) - rows[y][x].get(z, 0)), _names(H, (x, y, z))

    r, w = _worst(comm())
    checks.append(AxiomCheck("commutativity", r == 0, float(r), w))
    return checks


# -------------------------------------------------------------- Haar measure


def _nullspace_exact(matrix, ncols):
    """Basis of the right null space of a Fraction matrix (list of rows)."""
    m = [list(r) for r in matrix]
    pivots = []
    row = 0
    for col in range(ncols):
        pr = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        piv = m[row][col]
        m[row] = [v / piv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def _haar_exact(H):
    rows, n, e = _exact_rows(H), H.n, H.identity
    system = []
    for x in range(n):
        if x == e:
            continue
        for z in range(n):
            eq = [Fraction(0)] * n
            for y in range(n):
                eq[y] += rows[x][y].get(z, 0)
            eq[z] -= 1
            if any(eq):
                system.append(eq)
    basis = _nullspace_exact(system, n)
    if len(basis) != 1:
        raise DegenerateInputError(f"Haar invariance system has a {len(basis)}-dimensional solution space")
    vec = basis[0]
    if vec[e] == 0:
        raise DegenerateInputError("Haar solution vanishes at the identity")
    lam = tuple(v / vec[e] for v in vec)
    if any(v <= 0 for v in lam):
        raise DegenerateInputError("Haar solution is not strictly positive")
    for x in range(n):
        ce = rows[x][H.involution[x]].get(e, 0)
        if ce == 0 or lam[x] != 1 / ce:
            raise DegenerateInputError(f"Haar weight of {H.elements[x]} disagrees with 1/c[x][~x][e]")
    return lam


def _haar_float(H):
    c, n, e, tol = H.conv, H.n, H.identity, H.tol
    system = np.concatenate([c[x].T - np.eye(n) for x in range(n) if x != e]) if n > 1 else np.zeros((1, 1))
    _, s, vt = np.linalg.svd(system)
    s_full = np.zeros(n)
    s_full[: len(s)] = s
    cutoff = max(tol, 1e-12) * max(1.0, s_full.max())
    null_dim = int(np.sum(s_full <= cutoff))
    if null_dim != 1:
        raise DegenerateInputError(f"Haar invariance system has a {null_dim}-dimensional solution space")
    vec = vt[-1]
    if abs(vec[e]) <= tol:
        raise DegenerateInputError("Haar solution vanishes at the identity")
    lam = vec / vec[e]
    if np.any(lam <= tol):
        raise DegenerateInputError("Haar solution is not strictly positive")
    inv = np.array(H.involution)
    ce = c[np.arange(n), inv, e]
    if np.any(ce <= tol) or np.max(np.abs(lam * ce - 1.0)) > max(tol, 1e-12) * n * lam.max():
        raise DegenerateInputError("Haar weights disagree with the 1/c[x][~x][e] cross-check")
    return lam


def haar(H: FiniteHypergroup) -> np.ndarray:
    """Haar weights normalized by λ(e) = 1 (cached on ``H``)."""
    return H.haar


def haar_residual(H: FiniteHypergroup, lam=None) -> float:
    """max over x, z of |Σ_y c[x][y][z] λ(y) − λ(z)|."""
    lam = H.haar if lam is None else np.asarray(lam)
    return float(np.abs(np.einsum("xyz,y->xz", H.conv, lam) - lam[None, :]).max())


# ------------------------------------------------- measures and functions


def point_mass(H: FiniteHypergroup, x) -> np.ndarray:
    v = np.zeros(H.n, dtype=complex)
    v[H.index(x)] = 1.0
    return v


def indicator(H: FiniteHypergroup, subset) -> np.ndarray:
    v = np.zeros(H.n, dtype=complex)
    v[list(as_subset(H, subset))] = 1.0
    return v


def as_subset(H: FiniteHypergroup, items) -> tuple:
    return H.subset(items)


def measure(values) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    if not np.all(np.isfinite(v)):
        raise StructuralError("measure weights must be finite")
    return v


def measure_support(H: FiniteHypergroup, mu) -> tuple:
    return tuple(int(i) for i in np.flatnonzero(np.abs(mu) > H.tol))


def convolve_measures(H: FiniteHypergroup, mu, nu) -> np.ndarray:
    """(μ*ν)(z) = Σ_{x,y} μ(x) ν(y) c[x][y][z]."""
    return np.einsum("x,y,xyz->z", np.asarray(mu, dtype=complex), np.asarray(nu, dtype=complex), H.conv)


def translate(H: FiniteHypergroup, f, x) -> np.ndarray:
    """Left translate L_x f(y) = f(x*y) = Σ_z c[x][y][z] f(z)."""
    return H.conv[H.index(x)] @ np.asarray(f, dtype=complex)


def regular_operator(H: FiniteHypergroup, x) -> np.ndarray:
    """Matrix of T_x = L_{~x}, the left-regular representation of p_x."""
    return H.conv[H.involution[H.index(x)]]


def convolve_functions(H: FiniteHypergroup, f, g) -> np.ndarray:
    """(f*g)(x) = Σ_y λ(y) g(~y) f(x*y)."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    weights = H.haar * g[list(H.involution)]
    # f(x*y) = Σ_z c[x][y][z] f(z)
    return np.einsum("xyz,z,y->x", H.conv, f, weights)


# ------------------------------------------------------------ set algebra


def set_convolve(H: FiniteHypergroup, A, B) -> tuple:
    """A*B: union of supp(p_x * p_y) over x in A, y in B."""
    A, B = as_subset(H, A), as_subset(H, B)
    if not A or not B:
        return ()
    hit = H.support[np.ix_(A, B)].any(axis=(0, 1))
    return tuple(int(i) for i in np.flatnonzero(hit))


def involute(H: FiniteHypergroup, A) -> tuple:
    return tuple(sorted(H.involution[i] for i in as_subset(H, A)))


def is_subhypergroup(H: FiniteHypergroup, A) -> bool:
    A = as_subset(H, A)
    if H.identity not in A or involute(H, A) != A:
        return False
    return set(set_convolve(H, A, A)) <= set(A)


def _support_masks(H):
    n = H.n
    masks = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            bits = 0
            for z in np.flatnonzero(H.support[x, y]):
                bits |= 1 << int(z)
            masks[x][y] = bits
    return masks


def size_cap(cap=None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(SIZE_CAP_ENV)
    return int(env) if env else DEFAULT_SIZE_CAP


def subhypergroups(H: FiniteHypergroup, cap=None) -> list:
    """All subhypergroups by exhaustive scan of subsets containing e, sorted by size."""
    n, e = H.n, H.identity
    limit = size_cap(cap)
    if n > limit:
        raise SizeCapError(f"subset enumeration refused: n = {n} exceeds cap {limit} (set {SIZE_CAP_ENV})")
    masks = _support_masks(H)
    inv = H.involution
    others = [i for i in range(n) if i != e]
    found = []
    for bits in range(1 << len(others)):
        members = [e] + [others[k] for k in range(len(others)) if bits >> k & 1]
        s = 0
        for i in members:
            s |= 1 << i
        if any(not (s >> inv[i] & 1) for i in members):
            continue
        closed = True
        for a, x in enumerate(members):
            for y in members[a:]:
                if masks[x][y] & ~s:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            found.append(tuple(sorted(members)))
    found.sort(key=lambda t: (len(t), t))
    return found


def generated_subhypergroup(H: FiniteHypergroup, E) -> tuple:
    """Smallest subhypergroup containing E, by closure under ~ and set convolution."""
    S = set(as_subset(H, E)) | {H.identity}
    while True:
        grown = S | set(involute(H, S)) | set(set_convolve(H, S, S))
        if grown == S:
            return tuple(sorted(S))
        S = grown


# ---------------------------------------------------------------- centre


def _centre_by_identity(H):
    e, inv = H.identity, H.involution
    target = np.zeros(H.n)
    target[e] = 1.0
    return tuple(x for x in range(H.n) if np.abs(H.conv[x, inv[x]] - target).max() <= H.tol)


def _centre_by_singletons(H):
    counts = H.support.sum(axis=2)
    return tuple(int(x) for x in range(H.n) if np.all(counts[x] == 1))


def _centre_by_characters(H, dual, tol):
    chars = dual.characters
    ok = np.all(np.abs(np.abs(chars) - 1.0) <= tol, axis=0)
    return tuple(int(x) for x in np.flatnonzero(ok))


def centre_candidates(H: FiniteHypergroup, dual=None, tol=1e-8) -> dict:
    """The centre computed by each of the three characterizations."""
    if dual is None:
        from .spectral import dual as compute_dual

        dual = compute_dual(H)
    return {
        "identity": _centre_by_identity(H),
        "singleton": _centre_by_singletons(H),
        "characters": _centre_by_characters(H, dual, tol),
    }


def center(H: FiniteHypergroup, dual=None, tol=1e-8) -> tuple:
    """Z(K), computed three ways; disagreement raises :class:`InternalConsistencyError`."""
    cands = centre_candidates(H, dual, tol)
    values = set(cands.values())
    if len(values) != 1:
        raise InternalConsistencyError(f"centre computations disagree: {cands}")
    return cands["identity"]


def permuted(H: FiniteHypergroup, order: Sequence[int], name=None) -> FiniteHypergroup:
    """Relabel so that new index i is old index ``order[i]``."""
    order = list(order)
    pos = {old: new for new, old in enumerate(order)}
    inv = tuple(pos[H.involution[old]] for old in order)
    exact = None
    if H.exact is not None:
        exact = tuple(
            tuple(tuple(sorted((pos[z], c) for z, c in H.exact[ox][oy])) for oy in order) for ox in order
        )
    conv = H.conv[np.ix_(order, order, order)]
    return FiniteHypergroup(tuple(H.elements[o] for o in order), pos[H.identity], inv, conv,
                            exact=exact, tol=H.tol, name=H.name if name is None else name)
