import pytest

import tinv


def test_trefoil_report():
    r = tinv.compute(tinv.parse_braid("1 1 1"), fields=["Q", "F2"], ti=2)
    assert r["t"] == {"Q": 2, "F2": 2}
    assert r["sigma"] == -2
    assert r["gamma4_lb"] == 0
    assert r["T"] == [0, 0, 0]
    assert [2, 0, 1] in r["e2_poincare"]


def test_mirror_flips_t():
    d = tinv.parse_braid("1 1 1")
    assert tinv.t_invariant(d.mirror()) == -2
    assert tinv.signature(d.mirror()) == 2


def test_pd_and_oracle():
    d = tinv.parse_pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]")
    assert d.num_crossings == 4
    assert d.writhe == 0
    kh = tinv.khovanov(d, reduced=True)
    assert sum(kh.values()) == 5
    assert tinv.compute(d, ti=-1)["t"]["Q"] == 0


def test_jones_of_trefoil():
    assert tinv.jones_polynomial(tinv.parse_braid("1 1 1")) == {2: 1, 6: 1, 8: -1}


def test_torus_recurrence():
    assert tinv.torus_t_expected(3, 4) == 4
    assert tinv.torus_t_expected(3, 5) == 6


def test_errors():
    with pytest.raises(tinv.ParseError):
        tinv.parse_pd("PD[X(1,2,3)]")
    with pytest.raises(ValueError):
        tinv.compute(tinv.parse_braid("1 1"))
    with pytest.raises(tinv.ResourceCapExceeded):
        tinv.compute(tinv.parse_braid("1 2 1 2 1 2 1 2"), cap=100)
