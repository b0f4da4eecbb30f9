"""Realizations, the invariant form, Weyl reflections and root enumeration.

Root lattice vectors are plain tuples of ints in the label order of the
GCM (``RootVec``). Coroot-space vectors ``h`` are tuples of Fractions in
the coordinates of :class:`Realization`.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import linalg
from .errors import DimensionMismatch, NotARootInput, NotFiniteType
from .gcm import GCM, components, is_connected, is_finite_type, rank, symmetrizer

RootVec = tuple[int, ...]

REAL = "real"
IMAGINARY = "imaginary"
NOT_A_ROOT = "not_a_root"

DEFAULT_HEIGHT = 12


def height(alpha: Iterable[int]) -> int:
    return sum(alpha)


def support(gcm: GCM, alpha: RootVec) -> tuple[str, ...]:
    return tuple(gcm.labels[i] for i, x in enumerate(alpha) if x)


def simple_root(gcm: GCM, label) -> RootVec:
    i = gcm.index(label)
    return tuple(int(j == i) for j in range(gcm.n))


def as_gcm(obj) -> GCM:
    """Accept either a GCM or a Realization wherever only A matters."""
    return obj.gcm if isinstance(obj, Realization) else obj


def _check_dim(gcm: GCM, alpha) -> None:
    if len(alpha) != gcm.n:
        raise DimensionMismatch(f"vector of length {len(alpha)} for rank {gcm.n}")


# -- realization -------------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    """Minimal realization (h, Pi, Pi^vee) in explicit rational coordinates.

    ``coroots[i]`` is alpha_i^vee as a vector of length ``dim_h`` and
    ``root_rows[i]`` is alpha_i as a functional on those coordinates.
    Coroots are the first |I| standard basis vectors; the extra corank
    coordinates are assigned, in label order, to the columns of A that are
    not pivots of a greedy left-to-right column basis.
    """

    gcm: GCM
    dim_h: int
    root_rows: tuple[tuple[Fraction, ...], ...]
    coroots: tuple[tuple[Fraction, ...], ...]

    @property
    def coroot_cols(self) -> list[list[Fraction]]:
        return linalg.transpose(self.coroots)

    def root_functional(self, alpha: RootVec) -> list[Fraction]:
        _check_dim(self.gcm, alpha)
        out = [Fraction(0)] * self.dim_h
        for i, c in enumerate(alpha):
            if c:
                row = self.root_rows[i]
                out = [x + c * y for x, y in zip(out, row)]
        return out


@lru_cache(maxsize=None)
def build_realization(gcm: GCM) -> Realization:
    n = gcm.n
    r = rank(gcm)
    dim = 2 * n - r
    # alpha_j restricted to the coroots is column j of A
    _, pivot_cols = linalg.rref(gcm.entries) if n else ([], [])
    extra = [j for j in range(n) if j not in pivot_cols]
    rows = []
    for j in range(n):
        row = [Fraction(gcm.entries[i][j]) for i in range(n)] + [Fraction(0)] * (n - r)
        if j in extra:
            row[n + extra.index(j)] = Fraction(1)
        rows.append(tuple(row))
    coroots = tuple(tuple(Fraction(int(k == i)) for k in range(dim)) for i in range(n))
    real = Realization(gcm, dim, tuple(rows), coroots)
    assert linalg.rank(real.root_rows) == n if n else True
    return real


def pairing(realization: Realization, alpha: RootVec, h) -> Fraction:
    """<alpha, h> for a root lattice vector and a coroot-space vector."""
    if len(h) != realization.dim_h:
        raise DimensionMismatch(f"h has length {len(h)}, expected {realization.dim_h}")
    return linalg.dot(realization.root_functional(alpha), h)


def coroot_pairing(gcm: GCM, alpha: RootVec, i: int) -> int:
    """<alpha, alpha_i^vee> = sum_j n_j a_ij (index-based, no realization needed)."""
    row = gcm.entries[i]
    return sum(c * row[j] for j, c in enumerate(alpha) if c)


def subspace_hJ(realization: Realization, J: Iterable) -> list[list[Fraction]]:
    """Basis of h^J = {h : <alpha_j, h> = 0 for j in J}."""
    idx = realization.gcm.indices(J)
    rows = [realization.root_rows[j] for j in idx]
    return linalg.nullspace(rows, realization.dim_h)


def reflect(gcm: GCM, i, alpha: RootVec) -> RootVec:
    """r_i(alpha) = alpha - <alpha, alpha_i^vee> alpha_i."""
    gcm = as_gcm(gcm)
    _check_dim(gcm, alpha)
    k = gcm.index(i)
    return _reflect_idx(gcm, k, tuple(alpha))


def _reflect_idx(gcm: GCM, k: int, alpha: RootVec) -> RootVec:
    c = coroot_pairing(gcm, alpha, k)
    if not c:
        return alpha
    out = list(alpha)
    out[k] -= c
    return tuple(out)


def reflect_coroot_space(realization: Realization, i, h) -> list[Fraction]:
    """r_i(h) = h - <alpha_i, h> alpha_i^vee."""
    k = realization.gcm.index(i)
    c = linalg.dot(realization.root_rows[k], h)
    return [x - c * y for x, y in zip(h, realization.coroots[k])]


# -- bilinear form -----------------------------------------------------------

@dataclass(frozen=True)
class BilinearData:
    """Gram matrices of the invariant form on simple roots and coroots.

    (alpha_i, alpha_j) = scale * d_i * a_ij and
    (alpha_i^vee, alpha_j^vee) = a_ij / (scale * d_j).
    """

    gcm: GCM
    d: tuple[Fraction, ...]
    scale: Fraction
    gram_roots: tuple[tuple[Fraction, ...], ...]
    gram_coroots: tuple[tuple[Fraction, ...], ...]

    def norm(self, alpha: RootVec) -> Fraction:
        return self.form(alpha, alpha)

    def form(self, alpha: RootVec, beta: RootVec) -> Fraction:
        g = self.gram_roots
        return sum(a * g[i][j] * b for i, a in enumerate(alpha) if a
                   for j, b in enumerate(beta) if b)


def parse_normalization(spec: str | None) -> dict[str, Fraction]:
    """Parse ``"short=1,long=2"`` style options into squared root lengths."""
    if not spec:
        return {}
    out = {}
    for part in spec.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in ("short", "long"):
            raise ValueError(f"unknown normalization key {key!r}")
        out[key] = Fraction(value.strip())
    return out


def bilinear_data(gcm: GCM, normalize: str | dict | None = None,
                  scale: Fraction | None = None) -> BilinearData:
    """Invariant form data; default scale 1 gives (alpha_i, alpha_i) = 2 d_i.

    ``normalize="short=1,long=2"`` rescales so the shortest simple roots
    have squared length 1 and checks the longest have squared length 2.
    """
    d = symmetrizer(gcm)
    norm = parse_normalization(normalize) if isinstance(normalize, (str, type(None))) else normalize
    if scale is None:
        scale = Fraction(1)
        if "short" in norm:
            scale = norm["short"] / (2 * min(d))
    scale = Fraction(scale)
    if "long" in norm and 2 * scale * max(d) != norm["long"]:
        raise ValueError(f"long roots have squared length {2 * scale * max(d)}, not {norm['long']}")
    n = gcm.n
    roots = tuple(tuple(scale * d[i] * gcm.entries[i][j] for j in range(n)) for i in range(n))
    coroots = tuple(tuple(Fraction(gcm.entries[i][j]) / (scale * d[j]) for j in range(n))
                    for i in range(n))
    return BilinearData(gcm, d, scale, roots, coroots)


# -- root membership -----------------------------------------------------------

@dataclass(frozen=True)
class RootVerdict:
    """Outcome of :func:`root_test`.

    For ``real`` the input equals ``w(alpha_simple)`` and for ``imaginary``
    it equals ``w(representative)``, where ``w = r_word[0] ... r_word[-1]``.
    """

    kind: str
    simple: str | None = None
    representative: RootVec | None = None
    word: tuple[str, ...] = ()
    sign: int = 1

    @property
    def is_root(self) -> bool:
        return self.kind != NOT_A_ROOT

    @property
    def is_real(self) -> bool:
        return self.kind == REAL

    @property
    def is_imaginary(self) -> bool:
        return self.kind == IMAGINARY

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "sign": self.sign, "word": list(self.word)}
        if self.simple is not None:
            out["simple"] = self.simple
        if self.representative is not None:
            out["representative"] = list(self.representative)
        return out


_NOT_A_ROOT = RootVerdict(NOT_A_ROOT)


@lru_cache(maxsize=None)
def _positive_verdict(gcm: GCM, alpha: RootVec) -> RootVerdict:
    # alpha is nonzero with nonnegative entries
    nz = [i for i, x in enumerate(alpha) if x]
    if len(nz) == 1 and alpha[nz[0]] == 1:
        return RootVerdict(REAL, simple=gcm.labels[nz[0]])
    for k in nz:
        c = coroot_pairing(gcm, alpha, k)
        if c > 0:
            if alpha[k] - c < 0:
                return _NOT_A_ROOT
            below = _positive_verdict(gcm, _reflect_idx(gcm, k, alpha))
            if not below.is_root:
                return below
            return RootVerdict(below.kind, below.simple, below.representative,
                               (gcm.labels[k],) + below.word)
    if is_connected(gcm, [gcm.labels[i] for i in nz]):
        return RootVerdict(IMAGINARY, representative=alpha)
    return _NOT_A_ROOT


def root_test(gcm: GCM, alpha: Iterable[int]) -> RootVerdict:
    """Decide whether ``alpha`` is a real root, an imaginary root, or neither.

    Positive vectors are reflected down in height until they reach a simple
    root (real), a vector with connected support and all pairings <= 0
    (imaginary), or leave the positive cone (not a root).
    """
    gcm = as_gcm(gcm)
    alpha = tuple(int(x) for x in alpha)
    _check_dim(gcm, alpha)
    if all(x >= 0 for x in alpha) and any(alpha):
        return _positive_verdict(gcm, alpha)
    if all(x <= 0 for x in alpha) and any(alpha):
        v = _positive_verdict(gcm, tuple(-x for x in alpha))
        if not v.is_root:
            return v
        rep = None if v.representative is None else tuple(-x for x in v.representative)
        return RootVerdict(v.kind, v.simple, rep, v.word, sign=-1)
    return _NOT_A_ROOT


def is_root(gcm: GCM, alpha: Iterable[int]) -> bool:
    gcm = as_gcm(gcm)
    return root_test(gcm, alpha).is_root


def apply_word(gcm: GCM, word: Iterable[str], alpha: RootVec) -> RootVec:
    """w(alpha) for w = r_word[0] r_word[1] ... (rightmost applied first)."""
    out = tuple(alpha)
    for lab in reversed(tuple(word)):
        out = _reflect_idx(gcm, gcm.index(lab), out)
    return out


# -- enumeration ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _layers(gcm: GCM, bound: int) -> tuple[tuple[RootVec, ...], ...]:
    if bound < 1 or gcm.n == 0:
        return ()
    if bound > 1:
        prev = _layers(gcm, bound - 1)
        if len(prev) < bound - 1:
            return prev
        last = prev[-1]
        cands = set()
        for alpha in last:
            for i in range(gcm.n):
                beta = list(alpha)
                beta[i] += 1
                cands.add(tuple(beta))
        layer = tuple(sorted((b for b in cands if _positive_verdict(gcm, b).is_root), reverse=True))
        return prev + (layer,) if layer else prev
    return (tuple(simple_root(gcm, lab) for lab in gcm.labels),)


def positive_roots(gcm: GCM, bound: int = DEFAULT_HEIGHT) -> tuple[RootVec, ...]:
    """Positive roots of height <= bound, by height then lexicographically descending."""
    gcm = as_gcm(gcm)
    if bound < 1:
        raise ValueError("height bound must be >= 1")
    return tuple(r for layer in _layers(gcm, bound) for r in layer)


def enumerate_positive_roots(gcm: GCM, bound: int = DEFAULT_HEIGHT) -> list[tuple[RootVec, RootVerdict]]:
    gcm = as_gcm(gcm)
    return [(r, _positive_verdict(gcm, r)) for r in positive_roots(gcm, bound)]


@lru_cache(maxsize=None)
def finite_positive_roots(gcm: GCM) -> tuple[RootVec, ...]:
    """All positive roots of a finite-type GCM."""
    if not is_finite_type(gcm):
        raise NotFiniteType("root system is infinite")
    bound = 1
    while True:
        layers = _layers(gcm, bound)
        if len(layers) < bound:
            return tuple(r for layer in layers for r in layer)
        bound += 1


def root_string(gcm: GCM, alpha: RootVec, i) -> tuple[int, int]:
    """Maximal (p, q) with alpha - p alpha_i, ..., alpha + q alpha_i all roots."""
    gcm = as_gcm(gcm)
    alpha = tuple(alpha)
    k = gcm.index(i)
    if not root_test(gcm, alpha).is_root:
        raise NotARootInput(f"{alpha} is not a root", alpha=list(alpha))
    e = simple_root(gcm, i)
    if alpha == e or alpha == tuple(-x for x in e):
        raise NotARootInput("alpha is +-alpha_i", alpha=list(alpha))

    def walk(step: int) -> int:
        t = 0
        cur = list(alpha)
        while True:
            cur[k] += step
            if not root_test(gcm, cur).is_root:
                return t
            t += 1

    p, q = walk(-1), walk(+1)
    assert p - q == coroot_pairing(gcm, alpha, k)
    return p, q


# -- finite-type subdiagrams ---------------------------------------------------

def _finite_sub(gcm: GCM, S: Iterable | None) -> GCM:
    gcm = as_gcm(gcm)
    sub = gcm if S is None else gcm.sub(S)
    if not is_finite_type(sub):
        raise NotFiniteType(f"{list(sub.labels)} is not of finite type", subset=list(sub.labels))
    return sub


def highest_root(gcm: GCM, S: Iterable | None = None) -> RootVec:
    """Highest root of the connected finite-type subdiagram S (over S's labels)."""
    sub = _finite_sub(gcm, S)
    if not is_connected(sub):
        raise NotFiniteType("highest root needs a connected subdiagram")
    roots = finite_positive_roots(sub)
    top = max(height(r) for r in roots)
    (theta,) = [r for r in roots if height(r) == top]
    return theta


@lru_cache(maxsize=None)
def _longest(sub: GCM) -> tuple[tuple[str, ...], dict]:
    n = sub.n
    c = [1] * n  # pairings of rho with the simple coroots
    applied = []
    while True:
        k = next((i for i in range(n) if c[i] > 0), None)
        if k is None:
            break
        ck = c[k]
        c = [c[j] - ck * sub.entries[j][k] for j in range(n)]
        applied.append(k)
    # rho was sent to w0(rho) by r_{applied[-1]} ... r_{applied[0]}
    word = tuple(sub.labels[k] for k in reversed(applied))
    sigma = {}
    for i, lab in enumerate(sub.labels):
        image = apply_word(sub, word, simple_root(sub, lab))
        (j,) = [t for t, x in enumerate(image) if x]
        assert image[j] == -1
        sigma[lab] = sub.labels[j]
    return word, sigma


def longest_element(gcm: GCM, S: Iterable | None = None) -> tuple[tuple[str, ...], dict[str, str]]:
    """Reduced word of w0 for finite-type S and sigma with w0(alpha_i) = -alpha_sigma(i)."""
    sub = _finite_sub(gcm, S)
    word, sigma = _longest(sub)
    return word, dict(sigma)


def coroot_of(gcm: GCM, beta: RootVec) -> list[Fraction]:
    """Coefficients of beta^vee over the simple coroots, for a real root beta
    of a symmetrizable GCM: beta^vee = sum_j n_j (2 d_j / (beta, beta)) alpha_j^vee."""
    d = symmetrizer(gcm)
    nb = sum(beta[i] * beta[j] * d[i] * gcm.entries[i][j]
             for i in range(gcm.n) if beta[i] for j in range(gcm.n) if beta[j])
    return [Fraction(2 * beta[j]) * d[j] / nb for j in range(gcm.n)]


def half_sum_coroots(realization: Realization, J: Iterable) -> list[Fraction]:
    """rho^vee_J: half the sum of the positive coroots of the finite-type J."""
    gcm = realization.gcm
    J = list(J)
    sub = _finite_sub(gcm, J)
    coeffs = [Fraction(0)] * sub.n
    for beta in finite_positive_roots(sub) if sub.n else ():
        coeffs = [x + y for x, y in zip(coeffs, coroot_of(sub, beta))]
    h = [Fraction(0)] * realization.dim_h
    for lab, c in zip(sub.labels, coeffs):
        cv = realization.coroots[gcm.index(lab)]
        h = [x + c / 2 * y for x, y in zip(h, cv)]
    for lab in sub.labels:
        assert linalg.dot(realization.root_rows[gcm.index(lab)], h) == 1
    return h


@dataclass(frozen=True)
class Facet:
    zero_set: tuple[str, ...]
    in_chamber: bool
    finite_type: bool


def facet_type(realization: Realization, h) -> Facet:
    """Type {i : <alpha_i, h> = 0} of the point h, chamber membership, finiteness."""
    gcm = realization.gcm
    if len(h) != realization.dim_h:
        raise DimensionMismatch(f"h has length {len(h)}, expected {realization.dim_h}")
    vals = [linalg.dot(row, h) for row in realization.root_rows]
    zero = tuple(gcm.labels[i] for i, v in enumerate(vals) if v == 0)
    return Facet(zero, all(v >= 0 for v in vals), is_finite_type(gcm, zero))


def null_root(gcm: GCM) -> RootVec | None:
    """Generator of the kernel of A for corank 1 (delta in the affine case)."""
    if gcm.n - rank(gcm) != 1:
        return None
    (v,) = linalg.nullspace(gcm.entries)
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if sum(ints) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__all__ = [
    "RootVec", "Realization", "BilinearData", "RootVerdict", "Facet",
    "build_realization", "pairing", "subspace_hJ", "reflect", "root_test",
    "positive_roots", "enumerate_positive_roots", "finite_positive_roots",
    "root_string", "highest_root", "longest_element", "half_sum_coroots",
    "facet_type", "bilinear_data", "components", "null_root",
]
