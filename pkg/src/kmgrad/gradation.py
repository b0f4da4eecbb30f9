"""Generic finite gradations given by restriction data A -> A-bar.

A :class:`RestrictionSpec` sends each simple root alpha_i of the source to
a vector over the simple roots gamma_s of the target (possibly zero). Pair
restrictions, quotient maps and restrictions to subdiagrams are all
expressed this way, so one analyzer covers them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .cadmissible import build_AJ, check_pair, component_Ik, weight_fiber
from .errors import BasisMismatch, DimensionMismatch, SpecInvalid
from .gcm import GCM, classify, components, corank, is_connected, is_finite_type
from .quotient import QuotientMap, folded_matrix
from .report import Report
from .rootsys import (
    RootVec,
    bilinear_data,
    build_realization,
    finite_positive_roots,
    positive_roots,
    root_test,
)

MAXIMAL = "Maximal"
C_ADMISSIBLE = "CAdmissible"
GENERALIZED = "GeneralizedCAdmissible"


@dataclass(frozen=True)
class RestrictionSpec:
    source: GCM
    target: GCM
    images: dict = field(hash=False)
    pair_J: tuple[str, ...] | None = None

    def image(self, alpha: Iterable[int]) -> RootVec:
        """Additive extension of the images to the root lattice."""
        out = [0] * self.target.n
        for lab, c in zip(self.source.labels, alpha):
            if c:
                out = [x + c * y for x, y in zip(out, self.images[lab])]
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "images": {k: list(v) for k, v in self.images.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> RestrictionSpec:
        return make_spec(GCM.from_json(data["source"]), GCM.from_json(data["target"]), data["images"])


def make_spec(source: GCM, target: GCM, images: Mapping, pair_J=None) -> RestrictionSpec:
    imgs = {}
    for lab in source.labels:
        if lab not in images and str(lab) not in images:
            raise DimensionMismatch(f"no image for vertex {lab}", vertex=lab)
        v = tuple(int(x) for x in images[lab])
        if len(v) != target.n:
            raise DimensionMismatch(f"image of {lab} has length {len(v)}, expected {target.n}")
        imgs[lab] = v
    extra = set(map(str, images)) - set(source.labels)
    if extra:
        raise DimensionMismatch(f"images for unknown vertices {sorted(extra)}")
    return RestrictionSpec(source, target, imgs, pair_J)


def identity_spec(gcm: GCM) -> RestrictionSpec:
    n = gcm.n
    return make_spec(gcm, gcm, {lab: [int(i == j) for j in range(n)] for i, lab in enumerate(gcm.labels)})


def pair_spec(gcm: GCM, J: Iterable) -> RestrictionSpec:
    """alpha_j -> 0 on J and alpha_k -> alpha'_k in A^J."""
    alg = build_AJ(gcm, J)
    aj = alg.aj
    images = {}
    for lab in gcm.labels:
        images[lab] = [int(lab == x) for x in aj.labels]
    return make_spec(gcm, aj, images, pair_J=alg.J)


def quotient_spec(q: QuotientMap, abar: GCM | None = None) -> RestrictionSpec:
    abar = abar if abar is not None else folded_matrix(q)
    rho = q.rho
    images = {lab: [int(rho[lab] == s) for s in q.targets] for lab in q.source.labels}
    return make_spec(q.source, abar, images)


def subdiagram_spec(gcm: GCM, S: Iterable) -> RestrictionSpec:
    """Restriction of every alpha_i to the span of the coroots of S.

    alpha_i restricts to sum_t c_t gamma_t where sum_t a_{s,t} c_t = a_{s,i}
    for every s in S.
    """
    sub = gcm.sub(S)
    idx = [gcm.index(x) for x in sub.labels]
    images = {}
    for i, lab in enumerate(gcm.labels):
        rhs = [gcm.entries[s][i] for s in idx]
        c = linalg.solve(sub.entries, rhs)
        if any(x.denominator != 1 for x in c):
            raise SpecInvalid(f"alpha_{lab} does not restrict to an integral combination", vertex=lab)
        images[lab] = [int(x) for x in c]
    return make_spec(gcm, sub, images)


def compose(first: RestrictionSpec, second: RestrictionSpec) -> RestrictionSpec:
    if first.target != second.source:
        raise BasisMismatch("target of the first restriction is not the source of the second",
                            first=list(first.target.labels), second=list(second.source.labels))
    images = {lab: second.image(v) for lab, v in first.images.items()}
    return make_spec(first.source, second.target, images)


def validate_spec(spec: RestrictionSpec) -> None:
    """Every nonzero image must be a positive root of the target."""
    for lab, v in spec.images.items():
        if not any(v):
            continue
        verdict = root_test(spec.target, v)
        if not verdict.is_root or verdict.sign < 0:
            raise SpecInvalid(f"image of alpha_{lab} is not a positive root of the target",
                              vertex=lab, image=list(v))


# -- analysis ----------------------------------------------------------------

@dataclass
class GradationReport:
    J: tuple[str, ...]
    I_re_prime: tuple[str, ...]
    I_im_prime: tuple[str, ...]
    Gamma: dict
    I_k: dict
    J_k: dict
    I_re: tuple[str, ...]
    J_re: tuple[str, ...]
    J_circ: tuple[str, ...]
    classification: str
    verdicts: dict
    adapted: Report | None = None
    I_re_components: tuple = ()

    def to_dict(self) -> dict:
        return {
            "J": list(self.J),
            "I_re_prime": list(self.I_re_prime),
            "I_im_prime": list(self.I_im_prime),
            "Gamma": {s: list(v) for s, v in self.Gamma.items()},
            "I_k": {k: list(v) for k, v in self.I_k.items()},
            "I_re": list(self.I_re),
            "I_re_components": [list(c) for c in self.I_re_components],
            "J_re": list(self.J_re),
            "J_circ": list(self.J_circ),
            "classification": self.classification,
            "verdicts": dict(self.verdicts),
            "adapted": None if self.adapted is None else self.adapted.to_dict(),
        }


def analyze(spec: RestrictionSpec, H: int = 12) -> GradationReport:
    A, T = spec.source, spec.target
    simple = {tuple(int(t == s) for t in range(T.n)): T.labels[s] for s in range(T.n)}
    J, re, im = [], [], []
    Gamma: dict[str, list[str]] = {s: [] for s in T.labels}
    for lab in A.labels:
        v = spec.images[lab]
        if not any(v):
            J.append(lab)
        elif v in simple:
            re.append(lab)
            Gamma[simple[v]].append(lab)
        else:
            verdict = root_test(T, v)
            if verdict.kind != "imaginary" or verdict.sign < 0:
                raise SpecInvalid(f"image of alpha_{lab} is neither 0, simple, nor positive imaginary",
                                  vertex=lab, image=list(v))
            im.append(lab)
    if not is_finite_type(A, J):
        raise SpecInvalid("zero-image set J is not of finite type", J=J)

    verdicts = {}
    I_k, J_k = {}, {}
    ik_ok = True
    for k in re:
        comp, rest = component_Ik(A, J, k)
        I_k[k], J_k[k] = comp, rest
        ik_ok &= is_finite_type(A, comp)
    verdicts["Ik_finite_ok"] = ik_ok
    I_re = tuple(x for x in A.labels if any(x in c for c in I_k.values()))
    J_re = tuple(x for x in J if x in I_re)
    J_circ = tuple(x for x in J if x not in I_re)
    parts = sorted(I_re + tuple(im) + J_circ, key=A.index)
    verdicts["disjoint_union_ok"] = parts == list(A.labels)
    ortho = True
    for s, fib in Gamma.items():
        for a in range(len(fib)):
            for b in range(a + 1, len(fib)):
                ortho &= not is_connected(A, set(I_k[fib[a]]) | set(I_k[fib[b]]))
    verdicts["fiber_orthogonality_ok"] = ortho
    verdicts["every_simple_hit"] = all(Gamma.values())
    if I_re and ik_ok:
        sub = A.sub(I_re)
        verdicts["pair_re_c_admissible"] = check_pair(sub, J_re).c_admissible
    else:
        verdicts["pair_re_c_admissible"] = not I_re
    adapted = check_adapted(spec, H)
    verdicts["adapted_up_to_H"] = adapted.passed

    if not J and not im:
        cls = MAXIMAL
    elif not im:
        cls = C_ADMISSIBLE
    else:
        cls = GENERALIZED
    return GradationReport(tuple(J), tuple(re), tuple(im), {s: tuple(v) for s, v in Gamma.items()},
                           I_k, J_k, I_re, J_re, J_circ, cls, verdicts, adapted,
                           tuple(components(A, I_re)) if I_re else ())


def check_adapted(spec: RestrictionSpec, H: int = 12) -> Report:
    """Images of Delta^+ up to height H lie in Sigma^+ or 0, and the zero set is Delta_J^+."""
    A, T = spec.source, spec.target
    rep = Report("adapted")
    zero = []
    for beta in positive_roots(A, H):
        g = spec.image(beta)
        if not any(g):
            zero.append(beta)
            continue
        v = root_test(T, g)
        if not rep.record("positive_image", v.is_root and v.sign > 0,
                          root=list(beta), image=list(g)):
            return rep
    J = [lab for lab in A.labels if not any(spec.images[lab])]
    if not is_finite_type(A, J):
        rep.record("zero_set_finite", False, J=J)
        return rep
    expected = set()
    if J:
        jidx = A.indices(J)
        for r in finite_positive_roots(A.sub(J)):
            if sum(r) <= H:
                full = [0] * A.n
                for i, x in zip(jidx, r):
                    full[i] = x
                expected.add(tuple(full))
    rep.record("zero_set_is_delta_J", set(zero) == expected,
               extra=[list(x) for x in sorted(set(zero) - expected)],
               missing=[list(x) for x in sorted(expected - set(zero))])
    rep.stats.update(height=H, zero_roots=len(zero))
    return rep


def linked(gcm: GCM, alpha: RootVec, beta: RootVec, H: int) -> bool:
    """Bounded test: beta is a positive multiple of alpha, or every a alpha + b beta
    (a, b >= 0, not both zero) of height <= H is a root."""
    a0, b0 = sum(alpha), sum(beta)
    n = len(alpha)
    parallel = all(alpha[i] * beta[j] == alpha[j] * beta[i] for i in range(n) for j in range(n))
    if parallel and (a0 > 0) == (b0 > 0):
        return True
    a = 0
    while a * abs(a0) <= H:
        b = 0
        while a * abs(a0) + b * abs(b0) <= H:
            if a or b:
                v = tuple(a * p + b * q for p, q in zip(alpha, beta))
                if not root_test(gcm, v).is_root:
                    return False
            b += 1
        a += 1
    return True


def imaginary_sign_check(spec: RestrictionSpec, H: int = 12, sample: int = 6) -> Report:
    """Positive imaginary roots up to height H map to positive imaginary roots."""
    A, T = spec.source, spec.target
    rep = Report("imaginary_sign")
    ims = []
    for beta in positive_roots(A, H):
        if root_test(A, beta).kind != "imaginary":
            continue
        ims.append(beta)
        g = spec.image(beta)
        v = root_test(T, g)
        if not rep.record("positive_imaginary_image", v.kind == "imaginary" and v.sign > 0,
                          root=list(beta), image=list(g)):
            return rep
    # diagnostics: linked source pairs stay linked after restriction
    pairs = 0
    head = ims[:sample]
    for i in range(len(head)):
        for j in range(i + 1, len(head)):
            if linked(A, head[i], head[j], H):
                pairs += 1
                ga, gb = spec.image(head[i]), spec.image(head[j])
                rep.record("linked_images", linked(T, ga, gb, H), alpha=list(head[i]), beta=list(head[j]))
    rep.stats.update(imaginary=len(ims), linked_pairs=pairs, height=H)
    return rep


# -- fibers ------------------------------------------------------------------

@dataclass
class FiberCounts:
    height: int
    by_height: dict
    exact: dict

    @property
    def totals(self) -> dict:
        return {g: sum(v) for g, v in self.by_height.items()}

    @property
    def stable(self) -> dict:
        """Counts that did not grow over the last three heights."""
        out = {}
        for g, v in self.by_height.items():
            out[g] = sum(g) + 3 <= len(v) and not any(v[-3:])
        return out

    def to_dict(self) -> dict:
        return {
            "height": self.height,
            "fibers": [
                {"gamma": list(g), "total": sum(v), "by_height": v, "stable": self.stable[g],
                 "exact": self.exact.get(g)}
                for g, v in sorted(self.by_height.items(), key=lambda p: (sum(p[0]), p[0]))
            ],
        }


def fiber_counts(spec: RestrictionSpec, H: int = 12) -> FiberCounts:
    A = spec.source
    by_height: dict[RootVec, list[int]] = {}
    for beta in positive_roots(A, H):
        g = spec.image(beta)
        if not any(g):
            continue
        row = by_height.setdefault(g, [0] * H)
        row[sum(beta) - 1] += 1
    exact = {}
    if spec.pair_J is not None:
        for g in by_height:
            exact[g] = len(weight_fiber(A, spec.pair_J, g))
    return FiberCounts(H, by_height, exact)


# -- invariant forms -----------------------------------------------------------

@dataclass(frozen=True)
class QuadraticIdentity:
    """(image, image)_target = factor * ((alpha, alpha)_source - alpha^T C alpha)."""

    factor: Fraction
    correction: tuple[tuple[Fraction, ...], ...]
    source_normalization: str | None = None
    target_normalization: str | None = None


def fold_example_identity() -> QuadraticIdentity:
    """Identity for the restriction of the rank 4 fold to its H_{3,3} block.

    The correction (n3 - n4)^2 + 5 n3^2 + n4^2 = 6 n3^2 - 2 n3 n4 + 2 n4^2.
    """
    c = [[Fraction(0)] * 4 for _ in range(4)]
    c[2][2] = Fraction(6)
    c[2][3] = c[3][2] = Fraction(-1)
    c[3][3] = Fraction(2)
    return QuadraticIdentity(Fraction(2), tuple(tuple(r) for r in c), "short=1,long=2", None)


def bilinear_identity_check(spec: RestrictionSpec, identity: QuadraticIdentity, H: int = 12) -> Report:
    src = bilinear_data(spec.source, identity.source_normalization)
    dst = bilinear_data(spec.target, identity.target_normalization)
    c = identity.correction
    rep = Report("bilinear_identity")
    count = 0
    for beta in positive_roots(spec.source, H):
        corr = sum(beta[i] * c[i][j] * beta[j] for i in range(len(beta)) for j in range(len(beta)))
        lhs = dst.norm(spec.image(beta))
        rhs = identity.factor * (src.norm(beta) - corr)
        count += 1
        if not rep.record("identity", lhs == rhs, root=list(beta), lhs=str(lhs), rhs=str(rhs)):
            return rep
    rep.stats.update(roots=count, height=H, source_scale=str(src.scale), target_scale=str(dst.scale))
    return rep


# -- Cartan subalgebra constraints -----------------------------------------------

@dataclass
class LinearSystem:
    """Equations on h (rows are root functionals in realization coordinates)."""

    equations: list
    rows: list
    solution_dim: int
    expected_dim: int

    @property
    def ok(self) -> bool:
        return self.solution_dim == self.expected_dim

    def to_dict(self) -> dict:
        return {"equations": self.equations, "solution_dim": self.solution_dim,
                "expected_dim": self.expected_dim, "ok": self.ok}


def cartan_constraints(spec: RestrictionSpec) -> LinearSystem:
    """Linear conditions on h^J cutting out the grading Cartan subalgebra (mod centre).

    Representatives l_s are the first vertex of each fiber.
    """
    A, T = spec.source, spec.target
    real = build_realization(A)
    rep = analyze(spec, H=1)
    rows, eqs = [], []

    def row(lab):
        return list(real.root_rows[A.index(lab)])

    for j in rep.J:
        rows.append(row(j))
        eqs.append(f"<alpha_{j},h> = 0")
    missing = [s for s, fib in rep.Gamma.items() if not fib]
    if missing:
        raise SpecInvalid("some target simple roots have no simple preimage", targets=missing)
    reps = {s: fib[0] for s, fib in rep.Gamma.items()}
    for s, fib in rep.Gamma.items():
        for k in fib[1:]:
            rows.append([x - y for x, y in zip(row(k), row(reps[s]))])
            eqs.append(f"<alpha_{k},h> = <alpha_{reps[s]},h>")
    for k in rep.I_im_prime:
        v = spec.images[k]
        r = row(k)
        for s, n in zip(T.labels, v):
            if n:
                r = [x - n * y for x, y in zip(r, row(reps[s]))]
        rows.append(r)
        terms = " + ".join(f"{n}<alpha_{reps[s]},h>" for s, n in zip(T.labels, v) if n)
        eqs.append(f"<alpha_{k},h> = {terms}")
    dim = real.dim_h - (linalg.rank(rows) if rows else 0)
    return LinearSystem(eqs, rows, dim, T.n + corank(A))


def type_preserved(spec: RestrictionSpec) -> bool:
    return classify(spec.source).kind == classify(spec.target).kind
