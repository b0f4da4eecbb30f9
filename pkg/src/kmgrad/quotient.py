"""Admissible quotient maps of the vertex set and the folded matrix A-bar."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .errors import AxisMismatch, MG1Violation, MG2Violation, NotAdmissibleQuotient
from .gcm import GCM, classify, is_connected, is_symmetrizable, rank
from .report import Report
from .rootsys import RootVec, build_realization, positive_roots


@dataclass(frozen=True)
class QuotientMap:
    """rho : I -> I-bar, stored as fibers ordered by their first vertex."""

    source: GCM
    targets: tuple[str, ...]
    fibers: tuple[tuple[str, ...], ...]

    @property
    def rho(self) -> dict[str, str]:
        return {i: s for s, fib in zip(self.targets, self.fibers) for i in fib}

    def fiber(self, s: str) -> tuple[str, ...]:
        return self.fibers[self.targets.index(s)]

    def is_identity(self) -> bool:
        return all(len(f) == 1 for f in self.fibers)

    def to_dict(self) -> dict:
        return {"targets": list(self.targets), "fibers": [list(f) for f in self.fibers]}


def parse_fibers(text: str) -> list[list[str]]:
    """``"1,5|2,6|3|4"`` -> [["1","5"], ["2","6"], ["3"], ["4"]]."""
    return [[x.strip() for x in part.split(",") if x.strip()] for part in text.split("|") if part.strip()]


def _normalize(gcm: GCM, rho) -> tuple[tuple[str, ...], tuple[tuple[str, ...], ...]]:
    if isinstance(rho, Mapping):
        groups: dict[str, list[str]] = {}
        for i, s in rho.items():
            groups.setdefault(str(s), []).append(str(i))
        named = [(s, tuple(gcm.labels[t] for t in gcm.indices(f))) for s, f in groups.items()]
    else:
        named = [(None, tuple(gcm.labels[t] for t in gcm.indices(f))) for f in rho]
    covered = [x for _, f in named for x in f]
    if sorted(covered, key=gcm.index) != list(gcm.labels):
        raise AxisMismatch("fibers must partition the vertex set exactly once", fibers=[list(f) for _, f in named])
    if any(not f for _, f in named):
        raise AxisMismatch("empty fiber")
    named.sort(key=lambda p: gcm.index(p[1][0]))
    targets = tuple(s if s is not None else f"s{t + 1}" for t, (s, _) in enumerate(named))
    return targets, tuple(f for _, f in named)


def check_quotient(gcm: GCM, rho) -> QuotientMap:
    """Validate rho (a label -> target mapping or a list of fibers) against MG1 and MG2."""
    targets, fibers = _normalize(gcm, rho)
    for fib in fibers:
        for k in fib:
            for l in fib:
                if k != l and gcm.a(k, l) != 0:
                    raise MG1Violation(f"a[{k},{l}] = {gcm.a(k, l)} inside one fiber", k=k, l=l)
    for s, fs in zip(targets, fibers):
        for t, ft in zip(targets, fibers):
            if s == t:
                continue
            sums = {j: sum(gcm.a(i, j) for i in fs) for j in ft}
            first = ft[0]
            for j in ft[1:]:
                if sums[j] != sums[first]:
                    raise MG2Violation(f"fiber sums over {s} differ on {first} and {j}",
                                       s=s, t=t, j=first, j2=j)
    return QuotientMap(gcm, targets, fibers)


@dataclass(frozen=True)
class MaximalGradation:
    """A-bar with its realization inside the source realization.

    ``gamma_coroots[s]`` is sum of alpha_k^vee over the fiber; ``a_basis``
    spans span{gamma_s^vee} plus the chosen complement a'' inside h^Gamma,
    and ``gamma_roots[s]`` lists the values of gamma_s on ``a_basis``.
    """

    quotient: QuotientMap
    abar: GCM
    gamma_coroots: dict
    a_basis: tuple[tuple[Fraction, ...], ...]
    gamma_roots: dict

    @property
    def restriction(self):
        from .gradation import quotient_spec

        return quotient_spec(self.quotient, self.abar)

    def to_dict(self) -> dict:
        return {
            "fibers": [list(f) for f in self.quotient.fibers],
            "targets": list(self.quotient.targets),
            "matrix": [list(r) for r in self.abar.entries],
            "dim_a": len(self.a_basis),
        }


def folded_matrix(q: QuotientMap) -> GCM:
    g = q.source
    rows = []
    for fs in q.fibers:
        rows.append(tuple(sum(g.a(i, ft[0]) for i in fs) for ft in q.fibers))
    return GCM(q.targets, tuple(rows))


def build_Abar(q: QuotientMap) -> MaximalGradation:
    g = q.source
    try:
        q = check_quotient(g, q.rho)
    except (MG1Violation, MG2Violation) as exc:
        raise NotAdmissibleQuotient(str(exc), **exc.witness) from exc
    abar = folded_matrix(q)
    real = build_realization(g)
    dim = real.dim_h
    gv = {}
    for s, fib in zip(q.targets, q.fibers):
        h = [Fraction(0)] * dim
        for k in fib:
            h = [x + y for x, y in zip(h, real.coroots[g.index(k)])]
        gv[s] = tuple(h)
    rep = {s: real.root_rows[g.index(fib[0])] for s, fib in zip(q.targets, q.fibers)}
    for s in q.targets:
        for t in q.targets:
            assert linalg.dot(rep[t], gv[s]) == abar.a(s, t)

    # h^Gamma: alpha_k and alpha_l agree whenever they lie in one fiber
    diffs = [[x - y for x, y in zip(real.root_rows[g.index(k)], real.root_rows[g.index(fib[0])])]
             for fib in q.fibers for k in fib[1:]]
    h_gamma = linalg.nullspace(diffs, dim) if diffs else linalg.nullspace([], dim)
    chosen = [list(gv[s]) for s in q.targets]

    def func_rank(vecs):
        return linalg.rank([[linalg.dot(rep[s], v) for v in vecs] for s in q.targets])

    current = func_rank(chosen)
    m = len(q.targets)
    for b in h_gamma:
        if current == m:
            break
        r = func_rank(chosen + [b])
        if r > current:
            chosen.append(b)
            current = r
    if current != m or len(chosen) != 2 * m - rank(abar):
        raise NotAdmissibleQuotient("could not complete a minimal realization of the folded matrix")
    for v in chosen[m:]:
        for s in q.targets:
            for fib in q.fibers:
                vals = {linalg.dot(real.root_rows[g.index(k)], v) for k in fib}
                assert len(vals) == 1
    roots = {s: tuple(linalg.dot(rep[s], v) for v in chosen) for s in q.targets}
    if is_connected(g) and not is_connected(abar):
        raise NotAdmissibleQuotient("folded matrix is decomposable")
    return MaximalGradation(q, abar, gv, tuple(tuple(v) for v in chosen), roots)


def restrict_by_quotient(q: QuotientMap, alpha: Iterable[int]) -> RootVec:
    """Sum coordinates over each fiber."""
    alpha = tuple(alpha)
    g = q.source
    return tuple(sum(alpha[g.index(k)] for k in fib) for fib in q.fibers)


def verify_maximal(q: QuotientMap, H: int = 12) -> Report:
    """Check that the fiber-sum images of Delta^+ up to height H are Delta(A-bar)^+."""
    mg = build_Abar(q)
    abar = mg.abar
    rep = Report("maximal")
    images: dict[RootVec, int] = {}
    for beta in positive_roots(q.source, H):
        g = restrict_by_quotient(q, beta)
        images[g] = images.get(g, 0) + 1
    zero = tuple([0] * abar.n)
    if not rep.record("no_zero_image", zero not in images):
        return rep
    S = set(images)
    ordered = sorted(S, key=lambda g: (sum(g), tuple(-x for x in g)))
    for s in range(abar.n):
        e = tuple(int(t == s) for t in range(abar.n))
        if not rep.record("contains_simple", e in S, gamma=list(e)):
            return rep
        if not rep.record("omits_double_simple", tuple(2 * x for x in e) not in S,
                                     gamma=[2 * x for x in e]):
            return rep
    truncated = 0
    for g in ordered:
        for s in range(abar.n):
            if sum(1 for x in g if x) == 1 and g[s]:
                continue
            ends = []
            for step in (-1, 1):
                t = 0
                cur = list(g)
                while True:
                    cur[s] += step
                    if sum(cur) > H:
                        ends.append(None)
                        break
                    if any(x < 0 for x in cur) or tuple(cur) not in S:
                        ends.append(t)
                        break
                    t += 1
            if None in ends:
                truncated += 1
                continue
            p, qq = ends
            pair = sum(g[t] * abar.entries[s][t] for t in range(abar.n))
            if not rep.record("strings", p - qq == pair, gamma=list(g), s=abar.labels[s],
                              p=p, q=qq, pairing=pair):
                return rep
    for g in ordered:
        supp = [abar.labels[t] for t, x in enumerate(g) if x]
        if not rep.record("connected_support", is_connected(abar, supp), gamma=list(g)):
            return rep
    target = set(positive_roots(abar, H))
    for g in ordered:
        if not rep.record("images_are_roots", g in target, gamma=list(g)):
            return rep
    for g in sorted(target):
        if not rep.record("roots_are_images", g in S, gamma=list(g)):
            return rep
    src, dst = classify(q.source), classify(abar)
    rep.record("same_type", src.kind == dst.kind, source=src.kind, folded=dst.kind)
    if is_symmetrizable(q.source):
        rep.record("symmetrizable", is_symmetrizable(abar))
    rep.stats.update(images=len(S), truncated_strings=truncated, height=H,
                     largest_fiber=max(images.values()) if images else 0)
    return rep


def enumerate_quotients(gcm: GCM, max_fibers: int | None = None) -> list[QuotientMap]:
    """All admissible quotient maps, one per set partition, identity first.

    Partitions are built as restricted growth strings over label order, so
    each partition appears once; ``max_fibers`` bounds the number of fibers.
    """
    n = gcm.n
    out = []
    blocks: list[list[int]] = []

    def rec(i: int):
        if i == n:
            if max_fibers is not None and len(blocks) > max_fibers:
                return
            fibers = [[gcm.labels[t] for t in b] for b in blocks]
            try:
                out.append(check_quotient(gcm, fibers))
            except (MG1Violation, MG2Violation):
                pass
            return
        for b in blocks:
            if all(gcm.entries[i][t] == 0 for t in b):
                b.append(i)
                rec(i + 1)
                b.pop()
        blocks.append([i])
        rec(i + 1)
        blocks.pop()

    rec(0)
    out.sort(key=lambda q: (-len(q.fibers), [[gcm.index(x) for x in f] for f in q.fibers]))
    return out
