"""Built-in Cartan matrices, name parsing and diagram isomorphism.

Finite types follow Bourbaki numbering: in B_n the last root is short, in
C_n the last root is long, in F_4 roots 3 and 4 are short and in G_2
root 1 is short. Untwisted affine matrices get an extra vertex "0".
"""

from __future__ import annotations

import re
from functools import lru_cache

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import AxisMismatch
from .gcm import GCM

Edges = dict[tuple[int, int], int]


def _from_edges(n: int, edges: Edges, labels=None) -> GCM:
    """``edges[(i, j)] = a_ij`` with 1-based vertex numbers; symmetric -1 by default."""
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), v in edges.items():
        m[i - 1][j - 1] = v
        if m[j - 1][i - 1] == 0:
            m[j - 1][i - 1] = -1
    labels = labels or [str(i) for i in range(1, n + 1)]
    return GCM(tuple(labels), tuple(tuple(r) for r in m))


def _chain(n: int) -> Edges:
    return {(i, i + 1): -1 for i in range(1, n)}


def cartan_matrix(letter: str, n: int) -> GCM:
    """Finite-type Cartan matrix of type ``letter``_n."""
    letter = letter.upper()
    if letter == "A" and n >= 1:
        return _from_edges(n, _chain(n))
    if letter == "B" and n >= 2:
        e = _chain(n)
        e[(n, n - 1)] = -2
        return _from_edges(n, e)
    if letter == "C" and n >= 2:
        e = _chain(n)
        e[(n - 1, n)] = -2
        return _from_edges(n, e)
    if letter == "D" and n >= 4:
        e = _chain(n - 1)
        e[(n - 2, n)] = -1
        return _from_edges(n, e)
    if letter == "E" and n in (6, 7, 8):
        e = {(1, 3): -1, (2, 4): -1}
        e.update({(i, i + 1): -1 for i in range(3, n)})
        return _from_edges(n, e)
    if letter == "F" and n == 4:
        return _from_edges(4, {(1, 2): -1, (3, 2): -2, (3, 4): -1})
    if letter == "G" and n == 2:
        return _from_edges(2, {(1, 2): -3})
    raise AxisMismatch(f"no finite type {letter}{n}")


def untwisted_affine(finite: GCM) -> GCM:
    """Extend a connected finite-type matrix by the vertex "0" = delta - theta."""
    from .rootsys import highest_root

    from .gcm import symmetrizer

    theta = highest_root(finite)
    d = symmetrizer(finite)
    n = finite.n
    a = finite.entries
    # (theta, theta) and (theta, alpha_j) for the form (alpha_i, alpha_j) = d_i a_ij
    form_j = [sum(theta[i] * d[i] * a[i][j] for i in range(n)) for j in range(n)]
    tt = sum(theta[j] * form_j[j] for j in range(n))
    row0 = [2] + [int(-2 * form_j[j] / tt) for j in range(n)]
    col0 = [-sum(theta[j] * a[i][j] for j in range(n)) for i in range(n)]
    rows = [row0] + [[col0[i]] + list(a[i]) for i in range(n)]
    return GCM(("0",) + finite.labels, tuple(tuple(r) for r in rows))


def affine_matrix(letter: str, n: int) -> GCM:
    return untwisted_affine(cartan_matrix(letter, n))


def hyperbolic_rank2(a: int, b: int) -> GCM:
    """The rank 2 matrix [[2, -a], [-b, 2]]."""
    return GCM(("1", "2"), ((2, -a), (-b, 2)))


def e10() -> GCM:
    """E_10 labeled -1, 0, 1..8: E_8 chain 1-3-4-5-6-7-8 with 2 on 4, then 8-0-(-1)."""
    e8 = affine_matrix("E", 8)
    n = e8.n
    rows = [[2, -1] + [0] * (n - 1)]
    rows.append([-1] + list(e8.entries[0]))
    for i in range(1, n):
        rows.append([0] + list(e8.entries[i]))
    return GCM(("-1",) + e8.labels, tuple(tuple(r) for r in rows))


def fold_example() -> GCM:
    """Symmetric rank 6 matrix: two H_{3,3} blocks {1,2}, {5,6} joined through 3, with 4 hanging off 3."""
    m = [
        [2, -3, -1, 0, 0, 0],
        [-3, 2, -1, 0, 0, 0],
        [-1, -1, 2, -1, -1, -1],
        [0, 0, -1, 2, 0, 0],
        [0, 0, -1, 0, 2, -3],
        [0, 0, -1, 0, -3, 2],
    ]
    return GCM(tuple(str(i) for i in range(1, 7)), tuple(tuple(r) for r in m))


_FINITE_RE = re.compile(r"^([A-Ga-g])_?(\d+)$")
_AFFINE_RE = re.compile(r"^([A-Ga-g])_?(\d+)\^?\(1\)$")
_RANK2_RE = re.compile(r"^H_?(\d+),(\d+)$")
_RANGE_RE = re.compile(r"^([A-Ga-g])(\d+)\.\.(?:[A-Ga-g])?(\d+)(\(1\))?$")


def from_name(name: str) -> GCM:
    """Parse names such as ``A5``, ``F4(1)``, ``E10``, ``H3,3`` or ``paper-s5``."""
    name = name.strip()
    if name.upper() == "E10":
        return e10()
    if name in ("paper-s5", "fold-example"):
        return fold_example()
    if m := _AFFINE_RE.match(name):
        return affine_matrix(m.group(1), int(m.group(2)))
    if m := _FINITE_RE.match(name):
        return cartan_matrix(m.group(1), int(m.group(2)))
    if m := _RANK2_RE.match(name):
        return hyperbolic_rank2(int(m.group(1)), int(m.group(2)))
    raise AxisMismatch(f"unknown matrix name {name!r}")


def expand_family(spec: str) -> list[tuple[str, GCM]]:
    """Expand ``"A2..A5 E10 H3,3"`` (whitespace or '+' separated) into named matrices."""
    out = []
    for item in re.split(r"[\s+]+", spec.strip()):
        if not item:
            continue
        m = _RANGE_RE.match(item)
        if m:
            letter, lo, hi, aff = m.group(1).upper(), int(m.group(2)), int(m.group(3)), m.group(4)
            for k in range(lo, hi + 1):
                name = f"{letter}{k}{aff or ''}"
                try:
                    out.append((name, from_name(name)))
                except AxisMismatch:
                    continue
        else:
            out.append((item, from_name(item)))
    return out


# -- isomorphism -------------------------------------------------------------

def _digraph(gcm: GCM, marks=()) -> nx.DiGraph:
    g = nx.DiGraph()
    marked = {gcm.index(x) for x in marks}
    for i in range(gcm.n):
        g.add_node(i, mark=i in marked)
    for i in range(gcm.n):
        for j in range(gcm.n):
            if i != j and gcm.entries[i][j]:
                g.add_edge(i, j, w=gcm.entries[i][j])
    return g


def _invariant(gcm: GCM, marks=()) -> tuple:
    rows = sorted(tuple(sorted(x for j, x in enumerate(r) if j != i)) for i, r in enumerate(gcm.entries))
    return gcm.n, tuple(rows), len(tuple(marks))


def diagram_isomorphism(g1: GCM, g2: GCM, marks1=(), marks2=()) -> dict[str, str] | None:
    """A label map g1 -> g2 with a_ij preserved and marked vertices to marked ones."""
    if _invariant(g1, marks1) != _invariant(g2, marks2):
        return None
    gm = DiGraphMatcher(_digraph(g1, marks1), _digraph(g2, marks2),
                        node_match=lambda a, b: a["mark"] == b["mark"],
                        edge_match=lambda a, b: a["w"] == b["w"])
    for mapping in gm.isomorphisms_iter():
        return {g1.labels[i]: g2.labels[j] for i, j in mapping.items()}
    return None


def finite_types_of_rank(n: int) -> list[tuple[str, GCM]]:
    """Connected finite-type diagrams with n vertices, one per isomorphism class."""
    out = []
    if n >= 1:
        out.append((f"A{n}", cartan_matrix("A", n)))
    if n >= 2:
        out.append((f"B{n}", cartan_matrix("B", n)))
    if n >= 3:
        out.append((f"C{n}", cartan_matrix("C", n)))
    if n >= 4:
        out.append((f"D{n}", cartan_matrix("D", n)))
    if n in (6, 7, 8):
        out.append((f"E{n}", cartan_matrix("E", n)))
    if n == 4:
        out.append(("F4", cartan_matrix("F", 4)))
    if n == 2:
        out.append(("G2", cartan_matrix("G", 2)))
    return out


@lru_cache(maxsize=None)
def finite_type_label(gcm: GCM) -> str | None:
    """Name such as ``"D4"`` of a connected finite-type matrix, or None."""
    for name, ref in finite_types_of_rank(gcm.n):
        if diagram_isomorphism(gcm, ref) is not None:
            return name
    return None
