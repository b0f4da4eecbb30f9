"""C-admissible pairs (I, J), the folded matrix A^J and its weight fibers."""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import linalg
from .errors import (
    ConsistencyError,
    DimensionMismatch,
    JNotFiniteType,
    KInJ,
    NotCAdmissible,
    NotFiniteTypeComponent,
    OrbitTooLarge,
    ZeroWeight,
)
from .gcm import (
    GCM,
    components,
    corank,
    is_connected,
    is_finite_type,
    is_symmetrizable,
    j_connected,
)
from .named import cartan_matrix, diagram_isomorphism
from .report import Report
from .rootsys import (
    RootVec,
    build_realization,
    finite_positive_roots,
    half_sum_coroots,
    highest_root,
    longest_element,
    positive_roots,
    root_test,
    subspace_hJ,
)

DEFAULT_MAX_WEYL = 10**6


def max_weyl() -> int:
    return int(os.environ.get("KMGRAD_MAX_WEYL", DEFAULT_MAX_WEYL))


def _labels(gcm: GCM, S: Iterable) -> tuple[str, ...]:
    return tuple(gcm.labels[i] for i in gcm.indices(S))


def complement(gcm: GCM, J: Iterable) -> tuple[str, ...]:
    js = set(_labels(gcm, J))
    return tuple(x for x in gcm.labels if x not in js)


# -- single components -------------------------------------------------------

def component_Ik(gcm: GCM, J: Iterable, k) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The component I_k of J + {k} containing k, and J_k = I_k - {k}."""
    J = _labels(gcm, J)
    k = str(k)
    gcm.index(k)
    if k in J:
        raise KInJ(f"{k} lies in J", k=k)
    for comp in components(gcm, J + (k,)):
        if k in comp:
            return comp, tuple(x for x in comp if x != k)
    raise AssertionError("k missing from its own component")


def solve_Hk(gcm: GCM, I_k: Iterable, k) -> list[Fraction]:
    """Coefficients n_i (in label order of I_k) with sum_i n_i a_ij = 2 delta_kj on I_k."""
    sub = gcm.sub(I_k)
    if not is_finite_type(sub):
        raise NotFiniteTypeComponent(f"I_k = {list(sub.labels)} is not of finite type",
                                     I_k=list(sub.labels))
    kk = sub.index(k)
    rhs = [2 * int(j == kk) for j in range(sub.n)]
    return linalg.solve(linalg.transpose(sub.entries), rhs)


def _is_positive_int(x: Fraction) -> bool:
    return x > 0 and x.denominator == 1


def _table1_candidates(n: int) -> list[tuple[str, GCM, str]]:
    out = []
    if n % 2 == 1:
        m = (n + 1) // 2
        out.append((f"A_{{2n-1}}, n={m}", cartan_matrix("A", n), str(m)))
    if n >= 3:
        out.append((f"B_n, n={n}", cartan_matrix("B", n), "1"))
    if n >= 2:
        out.append((f"C_n, n={n}", cartan_matrix("C", n), str(n)))
    if n >= 4:
        out.append((f"D_{{n,1}}, n={n}", cartan_matrix("D", n), "1"))
    if n >= 4 and n % 2 == 0:
        out.append((f"D_{{2n,2}}, n={n // 2}", cartan_matrix("D", n), str(n)))
    if n == 7:
        out.append(("E_7", cartan_matrix("E", 7), "7"))
    return out


def table1_match(sub: GCM, k) -> str | None:
    """Label of the irreducible C-admissible family matching (sub, black vertex k)."""
    for label, ref, black in _table1_candidates(sub.n):
        if diagram_isomorphism(sub, ref, (str(k),), (black,)) is not None:
            return label
    return None


@dataclass(frozen=True)
class PairComponent:
    k: str
    I_k: tuple[str, ...]
    J_k: tuple[str, ...]
    h_k_coeffs: tuple[Fraction, ...] | None
    admissible: bool
    coefficient_one: bool
    sigma_fixes_k: bool
    c_admissible: bool
    table1_label: str | None
    finite: bool = True

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "I_k": list(self.I_k),
            "J_k": list(self.J_k),
            "h_k_coeffs": None if self.h_k_coeffs is None else [str(x) for x in self.h_k_coeffs],
            "finite": self.finite,
            "admissible": self.admissible,
            "coefficient_one": self.coefficient_one,
            "sigma_fixes_k": self.sigma_fixes_k,
            "c_admissible": self.c_admissible,
            "table1_label": self.table1_label,
        }


def check_pair_k(gcm: GCM, J: Iterable, k) -> PairComponent:
    """Decide whether (I_k, J_k) is C-admissible, by three independent routes."""
    I_k, J_k = component_Ik(gcm, J, k)
    k = str(k)
    n = solve_Hk(gcm, I_k, k)
    sub = gcm.sub(I_k)
    kk = sub.index(k)
    admissible = all(_is_positive_int(x) for x in n)
    theta = highest_root(sub)
    coefficient_one = theta[kk] == 1
    _, sigma = longest_element(sub)
    sigma_fixes = sigma[k] == k
    # <beta, H_k> for every positive root of I_k: the grading must have levels 0 and 2 only
    pair_k = [sum(n[i] * sub.entries[i][j] for i in range(sub.n)) for j in range(sub.n)]
    levels = {sum(b * p for b, p in zip(beta, pair_k)) for beta in finite_positive_roots(sub)}
    if (levels <= {0, 2}) != coefficient_one:
        raise ConsistencyError("grading levels disagree with the highest-root coefficient",
                               I_k=list(I_k), k=k, levels=sorted(str(x) for x in levels))
    c_adm = admissible and coefficient_one and sigma_fixes
    label = table1_match(sub, k)
    if (label is not None) != c_adm:
        raise ConsistencyError("table lookup disagrees with the algebraic verdict",
                               I_k=list(I_k), k=k, table1_label=label, c_admissible=c_adm)
    return PairComponent(k, I_k, J_k, tuple(n), admissible, coefficient_one, sigma_fixes,
                         c_adm, label)


@dataclass(frozen=True)
class PairCheck:
    J: tuple[str, ...]
    components: tuple[PairComponent, ...]

    @property
    def c_admissible(self) -> bool:
        return all(c.c_admissible for c in self.components)

    def failing(self) -> list[PairComponent]:
        return [c for c in self.components if not c.c_admissible]

    def to_dict(self) -> dict:
        return {"J": list(self.J), "c_admissible": self.c_admissible,
                "components": [c.to_dict() for c in self.components]}


@lru_cache(maxsize=None)
def _check_pair(gcm: GCM, J: tuple[str, ...]) -> PairCheck:
    if not is_finite_type(gcm, J):
        raise JNotFiniteType(f"J = {list(J)} is not of finite type", J=list(J))
    comps = []
    for k in complement(gcm, J):
        I_k, J_k = component_Ik(gcm, J, k)
        if not is_finite_type(gcm, I_k):
            comps.append(PairComponent(k, I_k, J_k, None, False, False, False, False, None,
                                       finite=False))
            continue
        comps.append(check_pair_k(gcm, J, k))
    return PairCheck(J, tuple(comps))


def check_pair(gcm: GCM, J: Iterable) -> PairCheck:
    return _check_pair(gcm, _labels(gcm, J))


def is_c_admissible(gcm: GCM, J: Iterable) -> bool:
    try:
        return check_pair(gcm, J).c_admissible
    except JNotFiniteType:
        return False


def enumerate_pairs(gcm: GCM) -> list[tuple[str, ...]]:
    """Every J (by size, then lexicographically by position) with (I, J) C-admissible."""
    out = []
    for size in range(gcm.n + 1):
        for idx in itertools.combinations(range(gcm.n), size):
            J = tuple(gcm.labels[i] for i in idx)
            if is_finite_type(gcm, J) and check_pair(gcm, J).c_admissible:
                out.append(J)
    return out


# -- the folded matrix -------------------------------------------------------

@dataclass(frozen=True)
class CAdmissibleAlgebra:
    """A^J together with its realization inside the source realization.

    ``coroots[k]`` is H_k in source coroot-space coordinates, ``hJ_basis``
    spans h^J and ``roots[k]`` lists the values of alpha_k on that basis.
    """

    source: GCM
    J: tuple[str, ...]
    aj: GCM
    hJ_basis: tuple[tuple[Fraction, ...], ...]
    coroots: dict
    roots: dict
    pair: PairCheck = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "J": list(self.J),
            "I_prime": list(self.aj.labels),
            "matrix": [list(r) for r in self.aj.entries],
            "H": {k: [str(x) for x in v] for k, v in self.coroots.items()},
            "components": [c.to_dict() for c in self.pair.components],
        }


def build_AJ(gcm: GCM, J: Iterable) -> CAdmissibleAlgebra:
    J = _labels(gcm, J)
    pair = check_pair(gcm, J)
    if not pair.c_admissible:
        bad = pair.failing()[0]
        raise NotCAdmissible(f"(I_k, J_k) fails at k = {bad.k}", k=bad.k, I_k=list(bad.I_k))
    real = build_realization(gcm)
    iprime = complement(gcm, J)
    H = {}
    for comp in pair.components:
        h = [Fraction(0)] * real.dim_h
        for lab, c in zip(comp.I_k, comp.h_k_coeffs):
            h = [x + c * y for x, y in zip(h, real.coroots[gcm.index(lab)])]
        H[comp.k] = tuple(h)
    a = [[sum(real.root_rows[gcm.index(l)][t] * H[k][t] for t in range(real.dim_h))
          for l in iprime] for k in iprime]
    for row in a:
        for x in row:
            if x.denominator != 1:
                raise ConsistencyError("non-integral entry in A^J", entry=str(x))
    aj = GCM(iprime, tuple(tuple(int(x) for x in r) for r in a))

    basis = subspace_hJ(real, J)
    roots = {k: tuple(linalg.dot(real.root_rows[gcm.index(k)], b) for b in basis) for k in iprime}
    # express each H_k in the h^J basis and re-evaluate the restricted roots on it
    bt = linalg.transpose(basis)
    for k in iprime:
        sol = _solve_in_span(bt, H[k])
        for l in iprime:
            if linalg.dot(roots[l], sol) != aj.a(k, l):
                raise ConsistencyError("restricted pairing differs from a'_kl", k=k, l=l)

    for k in iprime:
        for l in iprime:
            if k != l and (aj.a(k, l) < 0) != j_connected(gcm, J, k, l):
                raise ConsistencyError("J-connectedness disagrees with A^J", k=k, l=l)
    if is_connected(gcm):
        if not is_connected(aj):
            raise ConsistencyError("A^J is decomposable")
    if is_symmetrizable(gcm) and not is_symmetrizable(aj):
        raise ConsistencyError("A^J is not symmetrizable")
    if corank(aj) != corank(gcm):
        raise ConsistencyError("corank changed", source=corank(gcm), folded=corank(aj))
    return CAdmissibleAlgebra(gcm, J, aj, tuple(tuple(b) for b in basis), H, roots, pair)


def _solve_in_span(cols: list[list[Fraction]], v) -> list[Fraction]:
    """Coordinates of v in the span of the given column vectors."""
    n = len(cols[0]) if cols else 0
    aug = [list(row) + [v[i]] for i, row in enumerate(cols)]
    rows, pivots = linalg.rref(aug)
    if n in pivots:
        raise ConsistencyError("vector outside the subspace")
    out = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        out[p] = rows[r][n]
    return out


def restrict_pair(gcm: GCM, J: Iterable, alpha: RootVec) -> RootVec:
    """Drop the J coordinates of alpha."""
    js = set(gcm.indices(J))
    return tuple(x for i, x in enumerate(alpha) if i not in js)


# -- weight fibers -----------------------------------------------------------

@dataclass(frozen=True)
class ZeroFiber:
    """The degree-zero piece: the roots of J and the dimension of h."""

    roots: tuple[RootVec, ...]
    dim_h: int


def weight_fiber(gcm: GCM, J: Iterable, gamma: Iterable[int], allow_zero: bool = False):
    """All roots beta of A with restrict_pair(beta) = gamma, as a sorted tuple."""
    J = _labels(gcm, J)
    if not check_pair(gcm, J).c_admissible:
        raise NotCAdmissible(f"({list(gcm.labels)}, {list(J)}) is not C-admissible")
    gamma = tuple(int(x) for x in gamma)
    iprime = complement(gcm, J)
    if len(gamma) != len(iprime):
        raise DimensionMismatch(f"gamma has length {len(gamma)}, expected {len(iprime)}")
    if not any(gamma):
        if not allow_zero:
            raise ZeroWeight("the zero weight fiber is the root system of J")
        sub = gcm.sub(J)
        pos = finite_positive_roots(sub) if J else ()
        lift = [_lift(gcm, J, (0,) * len(iprime), r) for r in pos]
        return ZeroFiber(tuple(sorted(lift + [tuple(-x for x in r) for r in lift])),
                         build_realization(gcm).dim_h)
    if all(x <= 0 for x in gamma):
        neg = _positive_fiber(gcm, J, tuple(-x for x in gamma))
        return tuple(sorted(tuple(-x for x in b) for b in neg))
    if any(x < 0 for x in gamma):
        return ()
    return _positive_fiber(gcm, J, gamma)


def _lift(gcm: GCM, J: tuple[str, ...], gamma: RootVec, m: Iterable[int]) -> RootVec:
    return _lifter(gcm, J)(gamma, m)


@lru_cache(maxsize=None)
def _lifter(gcm: GCM, J: tuple[str, ...]):
    iprime = [gcm.index(x) for x in complement(gcm, J)]
    jidx = gcm.indices(J)

    def lift(gamma, m) -> RootVec:
        out = [0] * gcm.n
        for i, x in zip(iprime, gamma):
            out[i] = x
        for i, x in zip(jidx, m):
            out[i] = x
        return tuple(out)

    return lift


def j_height_bound(gcm: GCM, J: Iterable, gamma: RootVec) -> int:
    """Largest J-height of a W_J-antidominant root with I' coordinates gamma."""
    J = _labels(gcm, J)
    if not J:
        return 0
    real = build_realization(gcm)
    rho = half_sum_coroots(real, J)
    total = Fraction(0)
    for lab, n_k in zip(complement(gcm, J), gamma):
        total -= n_k * linalg.dot(real.root_rows[gcm.index(lab)], rho)
    return max(0, total.numerator // total.denominator)


@lru_cache(maxsize=None)
def _inverse_cartan(sub: GCM) -> list[list[Fraction]]:
    n = sub.n
    cols = [linalg.solve(sub.entries, [int(i == j) for i in range(n)]) for j in range(n)]
    return linalg.transpose(cols)


def _antidominant_box(gcm: GCM, J: tuple[str, ...], gamma: RootVec) -> list[int]:
    """Coordinatewise bounds on the J part m of an antidominant beta.

    Antidominance reads A_J m <= c with c_j = -<gamma part, alpha_j^vee>;
    A_J^{-1} is entrywise nonnegative for finite type, so m <= A_J^{-1} c.
    """
    sub = gcm.sub(J)
    jidx = gcm.indices(J)
    iprime = [gcm.index(x) for x in complement(gcm, J)]
    c = [-sum(gcm.entries[j][k] * n_k for k, n_k in zip(iprime, gamma)) for j in jidx]
    inv = _inverse_cartan(sub)
    return [max(-1, int(linalg.dot(row, c) // 1)) for row in inv]


@lru_cache(maxsize=4096)
def _positive_fiber(gcm: GCM, J: tuple[str, ...], gamma: RootVec) -> tuple[RootVec, ...]:
    jidx = gcm.indices(J)
    bound = j_height_bound(gcm, J, gamma)
    box = _antidominant_box(gcm, J, gamma) if J else []
    seeds = []
    lift = _lifter(gcm, J)
    rows = [gcm.entries[j] for j in jidx]
    if all(b >= 0 for b in box):
        for m in _box_points(box, bound):
            beta = lift(gamma, m)
            if all(sum(b * r for b, r in zip(beta, row)) <= 0 for row in rows):
                if root_test(gcm, beta).is_root:
                    seeds.append(beta)
    cap = max_weyl()
    found: set[RootVec] = set()
    for seed in seeds:
        if seed in found:
            continue
        orbit = {seed}
        queue = deque([seed])
        while queue:
            b = queue.popleft()
            for j in jidx:
                c = sum(b[t] * gcm.entries[j][t] for t in range(gcm.n))
                if c:
                    nb = list(b)
                    nb[j] -= c
                    nb = tuple(nb)
                    if nb not in orbit:
                        orbit.add(nb)
                        queue.append(nb)
                        if len(orbit) > cap:
                            raise OrbitTooLarge(f"W_J orbit exceeds {cap}", seed=list(seed))
        found |= orbit
    assert all(x >= 0 for b in found for x in b)
    return tuple(sorted(found, key=lambda b: (sum(b), tuple(-x for x in b))))


def _box_points(box: list[int], total: int):
    """Nonnegative integer vectors below ``box`` coordinatewise with sum <= total."""
    if not box:
        yield ()
        return
    for first in range(min(box[0], total) + 1):
        for rest in _box_points(box[1:], total - first):
            yield (first,) + rest


# -- restricted root checks ----------------------------------------------------

def _jh_offsets(gcm: GCM, J: tuple[str, ...]) -> list[Fraction]:
    if not J:
        return [Fraction(0)] * (gcm.n - len(J))
    real = build_realization(gcm)
    rho = half_sum_coroots(real, J)
    return [-linalg.dot(real.root_rows[gcm.index(k)], rho) for k in complement(gcm, J)]


def verify_theorem1(gcm: GCM, J: Iterable, H: int = 12, aj_override: GCM | None = None) -> Report:
    """Check that the restricted positive roots up to height H form Delta(A^J)^+.

    A restricted weight gamma is "in scope" when every W_J-antidominant
    preimage has height <= H; inside that scope the restricted set must
    coincide with the independently enumerated positive roots of A^J.
    """
    J = _labels(gcm, J)
    aj = aj_override if aj_override is not None else build_AJ(gcm, J).aj
    rep = Report("theorem1")
    offsets = _jh_offsets(gcm, J)

    def in_scope(g: RootVec) -> bool:
        return sum(g) + sum(x * o for x, o in zip(g, offsets)) <= H

    S = {restrict_pair(gcm, J, b) for b in positive_roots(gcm, H)}
    S.discard(tuple([0] * aj.n))

    def member(g: RootVec) -> bool:
        if any(x < 0 for x in g) or not any(g):
            return False
        if in_scope(g):
            return g in S
        return bool(weight_fiber(gcm, J, g))

    ordered = sorted(S, key=lambda g: (sum(g), tuple(-x for x in g)))
    rep.stats.update(restricted=len(ordered), height=H)

    # (i) simple roots present, nonnegative coordinates, no doubled simple roots
    for k in range(aj.n):
        e = tuple(int(t == k) for t in range(aj.n))
        if not rep.record("contains_simple", e in S, gamma=list(e)):
            return rep
        twice = tuple(2 * x for x in e)
        if not rep.record("omits_double_simple", not member(twice), gamma=list(twice)):
            return rep
    for g in ordered:
        if not rep.record("nonnegative", all(x >= 0 for x in g), gamma=list(g)):
            return rep

    # (ii) every alpha'_k string through gamma has p - q = <gamma, H_k>
    for g in ordered:
        for k in range(aj.n):
            if sum(1 for x in g if x) == 1 and g[k]:
                continue
            p = q = 0
            cur = list(g)
            while True:
                cur[k] -= 1
                if not member(tuple(cur)):
                    break
                p += 1
            cur = list(g)
            while True:
                cur[k] += 1
                if not member(tuple(cur)):
                    break
                q += 1
            pair = sum(g[l] * aj.entries[k][l] for l in range(aj.n))
            if not rep.record("strings", p - q == pair, gamma=list(g), k=aj.labels[k],
                              p=p, q=q, pairing=pair):
                return rep

    # (iii) connected support in the diagram of A^J
    for g in ordered:
        supp = [aj.labels[t] for t, x in enumerate(g) if x]
        if not rep.record("connected_support", is_connected(aj, supp), gamma=list(g)):
            return rep

    # set equality with an independent enumeration of Delta(A^J)^+
    for g in ordered:
        if not rep.record("restricted_are_roots", root_test(aj, g).is_root, gamma=list(g)):
            return rep
    target = positive_roots(aj, H)
    checked = 0
    for g in target:
        if in_scope(g):
            checked += 1
            if not rep.record("roots_are_restricted", g in S, gamma=list(g)):
                return rep
    rep.stats["compared"] = checked
    return rep
