from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmgrad import validate
from kmgrad.errors import DimensionMismatch, NotARootInput, NotFiniteType
from kmgrad.gcm import is_symmetrizable
from kmgrad.named import affine_matrix, cartan_matrix, e10, fold_example, from_name
from kmgrad.rootsys import (
    IMAGINARY,
    NOT_A_ROOT,
    REAL,
    apply_word,
    bilinear_data,
    build_realization,
    enumerate_positive_roots,
    facet_type,
    finite_positive_roots,
    half_sum_coroots,
    highest_root,
    longest_element,
    null_root,
    pairing,
    positive_roots,
    reflect,
    reflect_coroot_space,
    root_string,
    root_test,
    subspace_hJ,
)

CORPUS = ["A2", "B3", "G2", "F4", "D4", "A3(1)", "G2(1)", "H3,3", "H2,5", "E10", "paper-s5"]


def _closure_count(g) -> int:
    """Independent oracle: orbit of the simple roots under reflections, counted positive."""
    n = g.n
    seen = set()
    frontier = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                c = sum(v[j] * g.entries[i][j] for j in range(n))
                w = tuple(x - c * (j == i) for j, x in enumerate(v))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
        assert len(seen) < 1000
    return sum(1 for v in seen if all(x >= 0 for x in v))


# -- realization -------------------------------------------------------------

def test_realization_dimensions():
    a1 = build_realization(cartan_matrix("A", 1))
    assert a1.dim_h == 1 and pairing(a1, (1,), a1.coroots[0]) == 2
    assert build_realization(validate(None, [[2, -2], [-2, 2]])).dim_h == 3
    s5 = build_realization(fold_example())
    assert s5.dim_h == 6


@pytest.mark.parametrize("name", CORPUS)
def test_realization_reproduces_matrix(name):
    g = from_name(name)
    real = build_realization(g)
    for i in range(g.n):
        for j in range(g.n):
            alpha_j = tuple(int(t == j) for t in range(g.n))
            assert pairing(real, alpha_j, real.coroots[i]) == g.entries[i][j]


def test_subspace_hJ():
    real = build_realization(e10())
    assert len(subspace_hJ(real, [])) == real.dim_h
    assert len(subspace_hJ(real, ["2", "3", "4", "5"])) == 6
    a2 = build_realization(cartan_matrix("A", 2))
    assert subspace_hJ(a2, ["1", "2"]) == []


# -- reflections ---------------------------------------------------------------

def test_reflect_examples():
    a2 = cartan_matrix("A", 2)
    assert reflect(a2, "1", (1, 0)) == (-1, 0)
    assert reflect(a2, "1", (0, 1)) == (1, 1)
    with pytest.raises(DimensionMismatch):
        reflect(a2, "1", (1, 0, 0))


@given(st.sampled_from(CORPUS), st.data())
def test_reflection_is_involution(name, data):
    g = from_name(name)
    v = tuple(data.draw(st.lists(st.integers(-6, 6), min_size=g.n, max_size=g.n)))
    i = data.draw(st.sampled_from(g.labels))
    assert reflect(g, i, reflect(g, i, v)) == v
    real = build_realization(g)
    h = data.draw(st.lists(st.integers(-4, 4), min_size=real.dim_h, max_size=real.dim_h))
    h = [Fraction(x) for x in h]
    assert reflect_coroot_space(real, i, reflect_coroot_space(real, i, h)) == h


@given(st.sampled_from(CORPUS), st.data())
def test_form_is_weyl_invariant(name, data):
    g = from_name(name)
    form = bilinear_data(g)
    draw_vec = st.lists(st.integers(-4, 4), min_size=g.n, max_size=g.n)
    a, b = tuple(data.draw(draw_vec)), tuple(data.draw(draw_vec))
    i = data.draw(st.sampled_from(g.labels))
    assert form.form(reflect(g, i, a), reflect(g, i, b)) == form.form(a, b)


@given(st.sampled_from(CORPUS), st.data())
def test_root_test_symmetric_under_negation(name, data):
    g = from_name(name)
    v = tuple(data.draw(st.lists(st.integers(0, 4), min_size=g.n, max_size=g.n)))
    if not any(v):
        return
    pos, neg = root_test(g, v), root_test(g, tuple(-x for x in v))
    assert pos.kind == neg.kind
    if pos.is_root:
        assert neg.sign == -1
        if pos.is_real:
            simple = tuple(int(lab == pos.simple) for lab in g.labels)
            assert apply_word(g, pos.word, simple) == v


@given(st.sampled_from(CORPUS), st.data())
def test_root_norms(name, data):
    g = from_name(name)
    if not is_symmetrizable(g):
        return
    form = bilinear_data(g)
    roots = positive_roots(g, 6)
    beta = data.draw(st.sampled_from(roots))
    v = root_test(g, beta)
    if v.is_real:
        assert form.norm(beta) > 0
    else:
        assert form.norm(beta) <= 0


# -- root membership and enumeration -------------------------------------------

def test_root_test_examples():
    assert root_test(cartan_matrix("A", 3), (1, 0, 0)).kind == REAL
    assert root_test(cartan_matrix("A", 1), (2,)).kind == NOT_A_ROOT
    h33 = from_name("H3,3")
    assert root_test(h33, (1, 1)).kind == IMAGINARY
    assert bilinear_data(h33).norm((1, 1)) == -2
    assert root_test(cartan_matrix("A", 3), (1, 0, 1)).kind == NOT_A_ROOT
    assert root_test(cartan_matrix("A", 2), (1, -1)).kind == NOT_A_ROOT


def test_enumeration_small():
    assert positive_roots(cartan_matrix("A", 2), 2) == ((1, 0), (0, 1), (1, 1))
    found = enumerate_positive_roots(from_name("H3,3"), 2)
    assert [r for r, _ in found] == [(1, 0), (0, 1), (1, 1)]
    assert found[-1][1].kind == IMAGINARY


@pytest.mark.parametrize("name,count", [("A1", 1), ("A2", 3), ("A5", 15), ("B3", 9), ("C4", 16),
                                        ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36),
                                        ("E7", 63), ("E8", 120)])
def test_finite_root_counts(name, count):
    g = from_name(name)
    assert len(finite_positive_roots(g)) == count == _closure_count(g)


def test_finite_positive_roots_rejects_infinite():
    with pytest.raises(NotFiniteType):
        finite_positive_roots(from_name("H3,3"))


def test_hyperbolic_enumeration_is_height_ordered():
    roots = positive_roots(e10(), 8)
    heights = [sum(r) for r in roots]
    assert heights == sorted(heights)
    assert len(set(roots)) == len(roots)


def test_root_strings():
    a2 = cartan_matrix("A", 2)
    assert root_string(a2, (0, 1), "1") == (0, 1)
    b2 = validate(None, [[2, -2], [-1, 2]])
    assert root_string(b2, (0, 1), "1") == (0, 2)
    a1a1 = validate(None, [[2, 0], [0, 2]])
    assert root_string(a1a1, (0, 1), "1") == (0, 0)
    with pytest.raises(NotARootInput):
        root_string(a2, (2, 0), "1")


@given(st.sampled_from(CORPUS), st.data())
def test_string_law(name, data):
    g = from_name(name)
    beta = data.draw(st.sampled_from(positive_roots(g, 5)))
    i = data.draw(st.integers(0, g.n - 1))
    if beta == tuple(int(t == i) for t in range(g.n)):
        return
    p, q = root_string(g, beta, g.labels[i])
    assert p - q == sum(beta[j] * g.entries[i][j] for j in range(g.n))


# -- finite subdiagrams ----------------------------------------------------------

def test_highest_roots():
    assert highest_root(cartan_matrix("A", 3)) == (1, 1, 1)
    assert highest_root(cartan_matrix("D", 4)) == (1, 2, 1, 1)
    assert highest_root(cartan_matrix("A", 1)) == (1,)
    assert highest_root(cartan_matrix("E", 8)) == (2, 3, 4, 6, 5, 4, 3, 2)
    assert highest_root(e10(), ["2", "3", "4", "5"]) == (1, 1, 2, 1)


def test_longest_element():
    word, sigma = longest_element(cartan_matrix("A", 1))
    assert len(word) == 1 and sigma == {"1": "1"}
    word, sigma = longest_element(cartan_matrix("A", 2))
    assert len(word) == 3 and sigma == {"1": "2", "2": "1"}
    word, sigma = longest_element(cartan_matrix("D", 4))
    assert len(word) == 12 and sigma["2"] == "2"
    word, sigma = longest_element(cartan_matrix("E", 6))
    assert len(word) == 36 and sigma == {"1": "6", "2": "2", "3": "5", "4": "4", "5": "3", "6": "1"}


def test_half_sum_coroots():
    a2 = cartan_matrix("A", 2)
    real = build_realization(a2)
    assert half_sum_coroots(real, ["1"]) == [Fraction(1, 2), 0]
    assert half_sum_coroots(real, ["1", "2"]) == [1, 1]
    d4 = build_realization(cartan_matrix("D", 4))
    h = half_sum_coroots(d4, ["1", "2", "3", "4"])
    assert all(pairing(d4, tuple(int(t == i) for t in range(4)), h) == 1 for i in range(4))


def test_facet_type():
    a2 = build_realization(cartan_matrix("A", 2))
    f = facet_type(a2, [Fraction(1), Fraction(1)])
    assert f.zero_set == () and f.in_chamber
    # <alpha_1, h> = 0 with <alpha_2, h> = 3
    f = facet_type(a2, [Fraction(1), Fraction(2)])
    assert f.zero_set == ("1",) and f.finite_type
    aff = build_realization(validate(None, [[2, -2], [-2, 2]]))
    f = facet_type(aff, [Fraction(1), Fraction(1), Fraction(0)])
    assert f.zero_set == ("1", "2") and not f.finite_type


def test_null_roots():
    assert null_root(affine_matrix("E", 8)) == (1, 2, 3, 4, 6, 5, 4, 3, 2)
    assert null_root(affine_matrix("A", 3)) == (1, 1, 1, 1)
    assert null_root(cartan_matrix("A", 2)) is None
    assert null_root(affine_matrix("G", 2)) == (1, 3, 2)


def test_bilinear_normalization():
    g = cartan_matrix("B", 2)
    form = bilinear_data(g, "short=1,long=2")
    norms = sorted(form.norm(r) for r in finite_positive_roots(g))
    assert norms == [1, 1, 2, 2]
    with pytest.raises(ValueError):
        bilinear_data(g, "short=1,long=3")
    with pytest.raises(ValueError):
        bilinear_data(g, "tiny=1")
