import pytest

from app.services.knotcomplex import build_torus_complex, euler_characteristic
from app.services.laurent import LaurentPoly, qbinom, qint
from app.services.moy import (
    LadderWeb,
    crossing_weights,
    ladder_poly,
    moy_bigon,
    moy_circle,
    moy_digon,
    slN_polynomial,
)


def test_moy_circles():
    assert moy_circle(3, 1) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert moy_circle(2, 2) == 1
    assert moy_circle(4, 2) == qbinom(4, 2)
    assert moy_circle(4, 2).eval_at_one() == 6
    with pytest.raises(ValueError):
        moy_circle(3, 3)
    with pytest.raises(ValueError):
        moy_circle(1, 1)


def test_bigon_and_digon():
    assert moy_bigon() == qint(2)
    assert moy_digon(5) == qint(4)


@pytest.mark.parametrize("n", range(2, 7))
def test_ladder_poly(n):
    assert ladder_poly(n, 0) == qint(n) ** 2
    assert ladder_poly(n, LadderWeb(1)) == qint(n) * qint(n - 1)
    assert ladder_poly(n, 4) == qint(2) ** 3 * qint(n) * qint(n - 1)


def test_ladder_n2_three_rungs():
    assert ladder_poly(2, 3) == qint(2) ** 3


def test_ladder_rejects_negative_rungs():
    with pytest.raises(ValueError):
        LadderWeb(-1)


def test_crossing_weights():
    assert crossing_weights(3, 1) == (LaurentPoly.monomial(2), LaurentPoly.monomial(3, -1))
    assert crossing_weights(3, -1) == (LaurentPoly.monomial(-2), LaurentPoly.monomial(-3, -1))
    with pytest.raises(ValueError):
        crossing_weights(3, 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_reidemeister_one_instance(n):
    assert slN_polynomial(n, 1) == qint(n)
    assert slN_polynomial(n, -1) == qint(n)
    assert slN_polynomial(n, 0) == qint(n) ** 2


def test_trefoil_sl2():
    assert slN_polynomial(2, 3) == LaurentPoly({1: 1, 3: 1, 5: 1, 9: -1})


@pytest.mark.parametrize("n", range(2, 6))
def test_mirror_symmetry(n):
    for m in range(1, 9):
        assert slN_polynomial(n, -m) == slN_polynomial(n, m).bar()


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("m", range(1, 9))
def test_skein_matches_torus_complex(n, m):
    assert euler_characteristic(build_torus_complex(n, m)) == slN_polynomial(n, m)
