"""Standard hypergroups: groups, class algebras, the two-point family, joins, products."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    FiniteHypergroup,
    InternalConsistencyError,
    make_hypergroup,
    parse_coefficient,
    validate,
)
from .errors import DomainError, StructuralError


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table of a finite group on ``0..n-1``."""

    mul: tuple
    identity: int = 0
    names: tuple | None = None

    def __post_init__(self):
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        n = len(mul)
        if n == 0 or any(len(r) != n for r in mul):
            raise StructuralError("group table must be a non-empty square")
        full = set(range(n))
        if any(set(r) != full for r in mul) or any({mul[i][j] for i in range(n)} != full for j in range(n)):
            raise StructuralError("group table is not a Latin square")
        e = self.identity
        if not 0 <= e < n or any(mul[e][x] != x or mul[x][e] != x for x in range(n)):
            raise StructuralError("identity row/column is wrong")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise StructuralError(f"group table not associative at {(a, b, c)}")
        names = tuple(str(s) for s in self.names) if self.names is not None else tuple(str(i) for i in range(n))
        if len(names) != n:
            raise StructuralError("need one name per group element")
        object.__setattr__(self, "names", names)

    @property
    def n(self):
        return len(self.mul)

    def inverse(self, x):
        return next(y for y in range(self.n) if self.mul[x][y] == self.identity)

    @property
    def is_abelian(self):
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.n) for b in range(self.n))


def cyclic_group(n: int) -> GroupTable:
    names = ["e", "g"] + [f"g{k}" for k in range(2, n)]
    return GroupTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0, tuple(names[:n]))


def symmetric_group(k: int) -> GroupTable:
    """S_k with permutations in lexicographic order (identity first); (st)(i) = s(t(i))."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(tuple(index[tuple(s[t[i]] for i in range(k))] for t in perms) for s in perms)
    names = tuple("".join(map(str, p)) for p in perms)
    return GroupTable(mul, 0, names)


def group_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    n1, n2 = g1.n, g2.n
    mul = tuple(
        tuple(g1.mul[a1][b1] * n2 + g2.mul[a2][b2] for b1 in range(n1) for b2 in range(n2))
        for a1 in range(n1) for a2 in range(n2)
    )
    names = tuple(f"({a},{b})" for a in g1.names for b in g2.names)
    return GroupTable(mul, g1.identity * n2 + g2.identity, names)


def two_element(theta=Fraction(1, 3), *, name=None) -> FiniteHypergroup:
    """The hypergroup {e, a} with p_a * p_a = θ p_e + (1−θ) p_a, 0 < θ ≤ 1."""
    t = parse_coefficient(theta)
    if not 0 < t <= 1:
        raise DomainError(f"theta must lie in (0, 1], got {theta}")
    return make_hypergroup(
        ("e", "a"), 0, (0, 1), {(1, 1): [(0, t), (1, 1 - t)]},
        name=name or f"J({t})",
    )


def trivial() -> FiniteHypergroup:
    return make_hypergroup(("e",), 0, (0,), {}, name="trivial")


def from_group(g: GroupTable, *, name=None) -> FiniteHypergroup:
    """Point-mass hypergroup of an abelian group: p_x * p_y = p_{xy}."""
    if not g.is_abelian:
        raise DomainError("from_group requires an abelian group table")
    terms = {(x, y): [(g.mul[x][y], Fraction(1))] for x in range(g.n) for y in range(g.n)}
    inv = tuple(g.inverse(x) for x in range(g.n))
    return make_hypergroup(g.names, g.identity, inv, terms, name=name or f"group({g.n})")


def conjugacy_classes(g: GroupTable) -> list:
    """Classes ordered by their smallest member."""
    seen, classes = set(), []
    for x in range(g.n):
        if x in seen:
            continue
        cls = sorted({g.mul[g.mul[h][x]][g.inverse(h)] for h in range(g.n)})
        seen.update(cls)
        classes.append(cls)
    return classes


def conjugacy_class_hypergroup(g: GroupTable, *, name=None) -> FiniteHypergroup:
    """Class hypergroup: c[Ci][Cj][Ck] = #{(u, v) ∈ Ci × Cj : uv ∈ Ck} / (|Ci||Cj|)."""
    classes = conjugacy_classes(g)
    where = {x: k for k, cls in enumerate(classes) for x in cls}
    m = len(classes)
    terms = {}
    for i in range(m):
        for j in range(m):
            counts = [0] * m
            for u in classes[i]:
                for v in classes[j]:
                    counts[where[g.mul[u][v]]] += 1
            denom = len(classes[i]) * len(classes[j])
            terms[(i, j)] = [(k, Fraction(c, denom)) for k, c in enumerate(counts) if c]
    inv = tuple(where[g.inverse(cls[0])] for cls in classes)
    return make_hypergroup([f"C{k}" for k in range(m)], where[g.identity], inv, terms,
                           name=name or f"classes({g.n})")


def _terms_of(H: FiniteHypergroup):
    """Sparse constants: exact Fractions if available, else floats."""
    if H.exact is not None:
        return [[dict(t) for t in row] for row in H.exact]
    n = H.n
    return [[{int(z): float(H.conv[x, y, z]) for z in np.flatnonzero(H.conv[x, y])} for y in range(n)]
            for x in range(n)]


def _haar_values(H):
    return list(H.haar_exact) if H.haar_exact is not None else [float(v) for v in H.haar]


def join(Hc: FiniteHypergroup, Jd: FiniteHypergroup, *, name=None) -> FiniteHypergroup:
    """Hypergroup join of Hc (the compact factor) and Jd (the discrete factor).

    Elements: Hc's elements (Hc's identity becomes the shared identity), then
    Jd's non-identity elements; a name clash renames the Jd element with a
    ``<Jd.name>.`` prefix.  The Haar measure of the result is solved afresh
    and cross-checked against ``λ_H + χ_{J∖e} λ_J`` with λ_H of mass 1.
    """
    validate(Hc).raise_for_failure()
    validate(Jd).raise_for_failure()
    nh = Hc.n
    j_rest = [j for j in range(Jd.n) if j != Jd.identity]
    pos = {j: nh + k for k, j in enumerate(j_rest)}
    pos[Jd.identity] = Hc.identity
    names = list(Hc.elements)
    for j in j_rest:
        label = Jd.elements[j]
        if label in names:
            label = f"{Jd.name or 'J'}.{label}"
        names.append(label)

    hterms, jterms = _terms_of(Hc), _terms_of(Jd)
    lam_h = _haar_values(Hc)
    mass = sum(lam_h)
    lam_h_norm = [v / mass for v in lam_h]

    terms = {}
    for x in range(nh):
        for y in range(nh):
            terms[(x, y)] = list(hterms[x][y].items())
    one = Fraction(1) if Hc.is_exact and Jd.is_exact else 1.0
    for h in range(nh):
        for j in j_rest:
            terms[(h, pos[j])] = [(pos[j], one)]
            terms[(pos[j], h)] = [(pos[j], one)]
    for x in j_rest:
        for y in j_rest:
            prod = jterms[x][y]
            if Jd.involution[x] != y:
                terms[(pos[x], pos[y])] = [(pos[z], c) for z, c in prod.items()]
            else:
                ce = prod.get(Jd.identity, 0)
                items = [(h, ce * lam_h_norm[h]) for h in range(nh)]
                items += [(pos[z], c) for z, c in prod.items() if z != Jd.identity]
                terms[(pos[x], pos[y])] = items
    inv = [0] * len(names)
    for h in range(nh):
        inv[h] = Hc.involution[h]
    for j in j_rest:
        inv[pos[j]] = pos[Jd.involution[j]]

    tol = max(Hc.tol, Jd.tol)
    K = make_hypergroup(names, Hc.identity, tuple(inv), terms, tol=tol,
                        name=name or f"{Hc.name}^{Jd.name}")
    formula = join_haar_formula(Hc, Jd)
    if np.max(np.abs(K.haar - formula) / formula) > max(tol, 1e-12):
        raise InternalConsistencyError("join Haar measure disagrees with λ_H + χ_{J∖e} λ_J")
    return K


def join_haar_formula(Hc: FiniteHypergroup, Jd: FiniteHypergroup) -> np.ndarray:
    """λ_H (mass 1) on H, λ_J on J∖{e}, rescaled so that λ(e) = 1; ordered like :func:`join`."""
    lam_h = np.asarray(Hc.haar, dtype=float)
    lam_h = lam_h / lam_h.sum()
    lam_j = [Jd.haar[j] for j in range(Jd.n) if j != Jd.identity]
    lam = np.concatenate([lam_h, lam_j])
    return lam / lam_h[Hc.identity]


def direct_product(H1: FiniteHypergroup, H2: FiniteHypergroup, *, name=None) -> FiniteHypergroup:
    """Componentwise product; element (x1, x2) has index i1 * n2 + i2."""
    n1, n2 = H1.n, H2.n
    t1, t2 = _terms_of(H1), _terms_of(H2)
    names = [f"({a},{b})" for a in H1.elements for b in H2.elements]
    terms = {}
    for x1, y1, x2, y2 in itertools.product(range(n1), range(n1), range(n2), range(n2)):
        items = [(z1 * n2 + z2, c1 * c2) for z1, c1 in t1[x1][y1].items() for z2, c2 in t2[x2][y2].items()]
        terms[(x1 * n2 + x2, y1 * n2 + y2)] = items
    inv = tuple(H1.involution[i // n2] * n2 + H2.involution[i % n2] for i in range(n1 * n2))
    return make_hypergroup(names, H1.identity * n2 + H2.identity, inv, terms,
                           tol=max(H1.tol, H2.tol), name=name or f"{H1.name}x{H2.name}")


def examples_registry() -> list:
    """The golden set of small hypergroups used throughout the tests."""
    z2 = from_group(cyclic_group(2), name="Z2")
    return [
        trivial(),
        z2,
        from_group(cyclic_group(4), name="Z4"),
        direct_product(z2, z2, name="Z2xZ2"),
        two_element(Fraction(1, 4)),
        two_element(Fraction(1, 3)),
        two_element(Fraction(1, 2)),
        two_element(Fraction(1)),
        conjugacy_class_hypergroup(symmetric_group(3), name="S3-classes"),
        conjugacy_class_hypergroup(symmetric_group(4), name="S4-classes"),
        join(z2, two_element(Fraction(1, 3)), name="Z2^J(1/3)"),
        direct_product(two_element(Fraction(1, 3)), two_element(Fraction(1, 2)), name="J(1/3)xJ(1/2)"),
    ]


def registry_by_name() -> dict:
    return {H.name: H for H in examples_registry()}
