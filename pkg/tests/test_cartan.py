import pytest
from hypothesis import given, settings, strategies as st

from oracles import a2_character_gt, a2_dim, g2_dim
from qcoord.cartan import CartanSpec, Weight, preset, validate
from qcoord.errors import (DegenerateRootDatum, NonGCM, NotAffine, NotDominant, NotFiniteType,
                           NotSymmetrizable)


@pytest.fixture(scope="module")
def a1():
    return preset("A1")


@pytest.fixture(scope="module")
def a2():
    return preset("A2")


@pytest.fixture(scope="module")
def aff():
    return preset("A1~")


def test_preset_kinds():
    assert [preset(n).kind for n in ["A1", "A2", "B2", "G2", "A1~"]] == \
        ["finite"] * 4 + ["affine"]


def test_symmetrizers():
    assert preset("B2").symmetrizers in ((1, 2), (2, 1))
    d = preset("G2").symmetrizers
    a = preset("G2").cartan
    assert d[0] * a[0][1] == d[1] * a[1][0]


def test_simple_roots_follow_columns(a2):
    assert a2.alpha(0) == Weight((2, -1), ())
    assert a2.alpha(1) == Weight((-1, 2), ())


@pytest.mark.parametrize("mat,err", [
    (((1,),), NonGCM),
    (((2, 1), (-1, 2)), NonGCM),
    (((2, 0), (-1, 2)), NonGCM),
    (((2, -1, 0), (-1, 2, -1), (0, -2, 2)), None),
    (((2, -1, -1), (-2, 2, -1), (-1, -1, 2)), NotSymmetrizable),
])
def test_validate_errors(mat, err):
    if err is None:
        assert validate(CartanSpec(mat)).kind == "finite"
    else:
        with pytest.raises(err):
            validate(CartanSpec(mat))


def test_affine_without_d_is_degenerate():
    with pytest.raises(DegenerateRootDatum):
        validate(CartanSpec(((2, -2), (-2, 2))))


def test_indefinite_kind():
    assert validate(CartanSpec(((2, -3), (-3, 2)))).kind == "indefinite"


def test_theta_and_rho(a2):
    assert a2.theta == a2.weight([1, 1])
    assert preset("B2").theta.is_dominant()
    assert a2.rho == a2.weight([1, 1])


def test_dominance_and_height(a2):
    th = a2.theta
    assert a2.dominance_leq(a2.zero(), th)
    assert not a2.dominance_leq(th, a2.zero())
    assert a2.height(th) == 2
    assert a2.height(a2.fundamental(0)) is None


@pytest.mark.parametrize("a,b", [(a, b) for a in range(5) for b in range(5)])
def test_weyl_dim_a2(a2, a, b):
    assert a2.weyl_dim(a2.weight([a, b])) == a2_dim(a, b)


@pytest.mark.parametrize("long,short", [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
def test_weyl_dim_g2(long, short):
    g2 = preset("G2")
    assert g2.weyl_dim(g2.weight([long, short])) == g2_dim(short, long)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(4) for b in range(4)])
def test_freudenthal_matches_gelfand_tsetlin(a2, a, b):
    got = {w.h: m for w, m in a2.character(a2.weight([a, b])).items()}
    assert got == a2_character_gt(a, b)


def test_freudenthal_dim_examples(a1, a2):
    assert a2.freudenthal_dim(a2.theta, a2.zero()) == 2
    assert a1.freudenthal_dim(a1.weight([2]), a1.zero()) == 1
    assert a1.freudenthal_dim(a1.weight([2]), a1.weight([1])) == 0
    with pytest.raises(NotDominant):
        a1.freudenthal_dim(a1.weight([-1]), a1.zero())


def test_affine_data(aff):
    assert aff.central == (1, 1)
    assert aff.central_root() == (1, 1)
    assert aff.level(aff.parse_weight("L0-2L1")) == -1
    assert aff.parse_weight("delta") == aff.weight([0, 0], [1])
    assert aff.level(aff.parse_weight("delta")) == 0
    with pytest.raises(NotFiniteType):
        aff.weyl_dim(aff.fundamental(0))
    with pytest.raises(NotAffine):
        preset("A2").level(preset("A2").rho)


def test_parse_weight(a2):
    assert a2.parse_weight("1,1") == a2.theta
    assert a2.parse_weight("theta") == a2.theta
    assert a2.parse_weight("2L0-L1") == a2.weight([2, -1])
    assert a2.parse_weight("0") == a2.zero()
    assert a2.parse_weight("alpha0") == a2.alpha(0)
    assert a2.parse_weight("[3,0]") == a2.weight([3, 0])
    with pytest.raises(ValueError):
        a2.parse_weight("thetaa")


def test_weight_json_roundtrip(aff):
    w = aff.weight([1, -2], [3])
    assert Weight.from_json(w.to_json()) == w
    assert str(w) == "(1,-2|3)"


finite = st.sampled_from(["A1", "A2", "B2", "G2"])


@settings(max_examples=40, deadline=None)
@given(finite, st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_character_sums_to_weyl_dim(name, h):
    rd = preset(name)
    lam = rd.weight(h[:rd.n])
    ch = rd.character(lam)
    assert sum(ch.values()) == rd.weyl_dim(lam)
    # Weyl group invariance
    for w, m in ch.items():
        for i in range(rd.n):
            assert ch.get(rd.reflect(w, i), 0) == m


@settings(max_examples=60, deadline=None)
@given(finite, st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_dominant_conjugate_is_dominant_and_in_orbit(name, h):
    rd = preset(name)
    w = rd.weight(h[:rd.n])
    d = rd.dominant_conjugate(w)
    assert d.is_dominant()
    assert rd.dominance_leq(w, d)
