"""Generalized Cartan matrices: validation, components, symmetrizer, type.

A :class:`GCM` is immutable and hashable, so the expensive per-subset
computations below are memoized on ``(gcm, subset)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    AxisMismatch,
    IndexOutOfJComplement,
    NotCartan,
    NotSymmetrizable,
)

FINITE = "Finite"
AFFINE = "Affine"
INDEFINITE = "Indefinite"
_KIND_ORDER = {FINITE: 0, AFFINE: 1, INDEFINITE: 2}


@dataclass(frozen=True)
class GCM:
    """A generalized Cartan matrix ``a[i][j]`` with string vertex labels."""

    labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", entries)
        n = len(labels)
        if len(set(labels)) != n:
            raise AxisMismatch("labels must be distinct", labels=labels)
        if len(entries) != n or any(len(row) != n for row in entries):
            raise AxisMismatch(f"expected a {n}x{n} matrix", labels=labels)
        for i in range(n):
            if entries[i][i] != 2:
                raise NotCartan(labels[i], labels[i], 1, f"a[{labels[i]},{labels[i]}] = {entries[i][i]} != 2")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if entries[i][j] > 0:
                    raise NotCartan(labels[i], labels[j], 2,
                                    f"a[{labels[i]},{labels[j]}] = {entries[i][j]} is positive")
                if (entries[i][j] == 0) != (entries[j][i] == 0):
                    raise NotCartan(labels[i], labels[j], 3,
                                    f"a[{labels[i]},{labels[j]}] = {entries[i][j]} but "
                                    f"a[{labels[j]},{labels[i]}] = {entries[j][i]}")
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise AxisMismatch(f"unknown vertex label {label!r}", label=str(label)) from None

    def indices(self, labels: Iterable) -> list[int]:
        return sorted(self.index(x) for x in labels)

    def a(self, i, j) -> int:
        """Entry by labels."""
        return self.entries[self.index(i)][self.index(j)]

    def sub(self, labels: Iterable) -> GCM:
        """Principal submatrix on ``labels``, kept in this matrix's label order."""
        idx = self.indices(labels)
        return GCM(tuple(self.labels[i] for i in idx),
                   tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def relabel(self, labels: Sequence) -> GCM:
        return GCM(tuple(labels), self.entries)

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and self.entries[i][j] != 0]

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "matrix": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> GCM:
        return validate(data.get("labels") or range(1, len(data["matrix"]) + 1), data["matrix"])


def validate(labels: Iterable | None, matrix: Sequence[Sequence[int]]) -> GCM:
    """Build a :class:`GCM`, checking squareness and the three Cartan axioms."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise AxisMismatch("matrix is not square")
    labels = [str(x) for x in (labels if labels is not None else range(1, n + 1))]
    if len(labels) != n:
        raise AxisMismatch(f"{len(labels)} labels for a {n}x{n} matrix")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise AxisMismatch(f"non-integer entry {x!r}")
    return GCM(tuple(labels), tuple(tuple(int(x) for x in r) for r in rows))


# -- graph structure ---------------------------------------------------------

def _components_idx(gcm: GCM, idx: Iterable[int]) -> list[tuple[int, ...]]:
    remaining = set(idx)
    comps = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        comp = {start}
        queue = deque([start])
        remaining.discard(start)
        while queue:
            v = queue.popleft()
            for w in list(remaining):
                if gcm.entries[v][w] != 0:
                    remaining.discard(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def components(gcm: GCM, subset: Iterable | None = None) -> list[tuple[str, ...]]:
    """Connected components of ``subset`` (default: all of I) under a_ij != 0.

    Components are ordered by their first vertex in label order.
    """
    idx = range(gcm.n) if subset is None else gcm.indices(subset)
    return [tuple(gcm.labels[i] for i in c) for c in _components_idx(gcm, idx)]


def is_connected(gcm: GCM, subset: Iterable | None = None) -> bool:
    return len(components(gcm, subset)) <= 1


def j_connected(gcm: GCM, J: Iterable, i, k) -> bool:
    """True iff a path i -> k exists whose interior vertices all lie in J."""
    jset = set(gcm.indices(J))
    a, b = gcm.index(i), gcm.index(k)
    if a in jset or b in jset:
        raise IndexOutOfJComplement(f"{i!r} and {k!r} must lie outside J", i=str(i), k=str(k))
    if gcm.entries[a][b] != 0:
        return True
    seen = set()
    queue = deque(w for w in gcm.neighbours(a) if w in jset)
    seen.update(queue)
    while queue:
        v = queue.popleft()
        if gcm.entries[v][b] != 0:
            return True
        for w in gcm.neighbours(v):
            if w in jset and w not in seen:
                seen.add(w)
                queue.append(w)
    return False


# -- symmetrizer, rank, signature --------------------------------------------

@lru_cache(maxsize=None)
def _symmetrizer(gcm: GCM) -> tuple[Fraction, ...]:
    d: list[Fraction | None] = [None] * gcm.n
    for comp in _components_idx(gcm, range(gcm.n)):
        root = comp[0]
        d[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in gcm.neighbours(i):
                # d_i a_ij = d_j a_ji
                dj = d[i] * gcm.entries[i][j] / gcm.entries[j][i]
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    raise NotSymmetrizable(
                        f"inconsistent ratios around a cycle through "
                        f"{gcm.labels[i]}-{gcm.labels[j]}", i=gcm.labels[i], j=gcm.labels[j])
        low = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / low
    return tuple(d)


def symmetrizer(gcm: GCM) -> tuple[Fraction, ...]:
    """Positive d with diag(d)·A symmetric, min d_i = 1 on each component."""
    return _symmetrizer(gcm)


def is_symmetrizable(gcm: GCM) -> bool:
    try:
        _symmetrizer(gcm)
    except NotSymmetrizable:
        return False
    return True


def symmetrized(gcm: GCM) -> list[list[Fraction]]:
    """The symmetric matrix diag(d)·A."""
    d = symmetrizer(gcm)
    return [[d[i] * gcm.entries[i][j] for j in range(gcm.n)] for i in range(gcm.n)]


@lru_cache(maxsize=None)
def rank(gcm: GCM) -> int:
    return linalg.rank(gcm.entries)


def corank(gcm: GCM) -> int:
    return gcm.n - rank(gcm)


def determinant(gcm: GCM) -> int:
    return linalg.det(gcm.entries)


def signature(matrix) -> tuple[int, int, int]:
    """(n+, n0, n-) of a symmetric GCM or rational matrix, computed exactly."""
    if isinstance(matrix, GCM):
        matrix = matrix.entries
    return linalg.signature(matrix)


def form_signature(gcm: GCM) -> tuple[int, int, int]:
    return linalg.signature(symmetrized(gcm))


# -- type classification -----------------------------------------------------

@lru_cache(maxsize=None)
def _det(gcm: GCM, idx: frozenset) -> int:
    order = sorted(idx)
    return linalg.det([[gcm.entries[i][j] for j in order] for i in order])


@lru_cache(maxsize=None)
def _all_minors_positive(gcm: GCM, idx: frozenset) -> bool:
    for comp in _components_idx(gcm, idx):
        c = frozenset(comp)
        if _det(gcm, c) <= 0:
            return False
        if len(c) > 1 and not all(_all_minors_positive(gcm, c - {v}) for v in c):
            return False
    return True


def _kind_idx(gcm: GCM, idx: frozenset) -> str:
    """Type of a connected index set."""
    if _all_minors_positive(gcm, idx):
        return FINITE
    if _det(gcm, idx) == 0 and all(_all_minors_positive(gcm, idx - {v}) for v in idx):
        return AFFINE
    return INDEFINITE


def is_finite_type(gcm: GCM, subset: Iterable | None = None) -> bool:
    idx = frozenset(range(gcm.n) if subset is None else gcm.indices(subset))
    return _all_minors_positive(gcm, idx)


def subset_kind(gcm: GCM, subset: Iterable | None = None) -> str:
    """Type of A_S; for disconnected S the worst component type."""
    idx = range(gcm.n) if subset is None else gcm.indices(subset)
    kinds = [_kind_idx(gcm, frozenset(c)) for c in _components_idx(gcm, idx)]
    return max(kinds, key=_KIND_ORDER.__getitem__) if kinds else FINITE


@dataclass(frozen=True)
class TypeVerdict:
    kind: str
    hyperbolic: bool = False
    strictly_hyperbolic: bool = False
    lorentzian: bool = False
    symmetrizable: bool = False
    indecomposable: bool = True
    finite_type_label: str | None = None
    components: tuple[TypeVerdict, ...] = ()

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "hyperbolic": self.hyperbolic,
            "strictly_hyperbolic": self.strictly_hyperbolic,
            "lorentzian": self.lorentzian,
            "symmetrizable": self.symmetrizable,
            "indecomposable": self.indecomposable,
            "finite_type_label": self.finite_type_label,
        }
        if self.components:
            out["components"] = [c.to_dict() for c in self.components]
        return out


def _classify_connected(gcm: GCM) -> TypeVerdict:
    full = frozenset(range(gcm.n))
    kind = _kind_idx(gcm, full)
    sym = is_symmetrizable(gcm)
    hyperbolic = strict = False
    if kind == INDEFINITE:
        hyperbolic = strict = True
        for v in full:
            for comp in _components_idx(gcm, full - {v}):
                k = _kind_idx(gcm, frozenset(comp))
                if k == INDEFINITE:
                    hyperbolic = strict = False
                elif k == AFFINE:
                    strict = False
            if not hyperbolic:
                break
    lorentzian = False
    if sym and _det(gcm, full) != 0:
        lorentzian = form_signature(gcm) == (gcm.n - 1, 0, 1)
    label = None
    if kind == FINITE:
        from .named import finite_type_label

        label = finite_type_label(gcm)
    return TypeVerdict(kind, hyperbolic, strict, lorentzian, sym, True, label)


@lru_cache(maxsize=None)
def classify(gcm: GCM) -> TypeVerdict:
    """Finite / Affine / Indefinite with hyperbolic and Lorentzian flags.

    Decomposable input is classified per component; the overall kind is
    the worst component kind and the component-only flags are false.
    """
    comps = components(gcm)
    if len(comps) == 1:
        return _classify_connected(gcm)
    parts = tuple(_classify_connected(gcm.sub(c)) for c in comps)
    kind = max((p.kind for p in parts), key=_KIND_ORDER.__getitem__)
    return TypeVerdict(kind, symmetrizable=all(p.symmetrizable for p in parts),
                       indecomposable=False, components=parts)
