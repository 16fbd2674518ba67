import pytest

import qloop


def test_scalar_arithmetic():
    q = qloop.Scalar("q")
    x = (q + qloop.Scalar(1)) * (q - qloop.Scalar(1))
    assert x == q * q - qloop.Scalar(1)
    assert (x / (q - qloop.Scalar(1))) == q + qloop.Scalar(1)
    assert (q - q).is_zero()


def test_torsion_roundtrip():
    t = qloop.TorsionTriple("q^-1", ["1", "-q*a"], ["1", "-q^-1*a"])
    assert t.invariant_error() == ""
    f = qloop.torsion_to_f(t, 6)
    assert len(f) == 13
    back = qloop.f_to_torsion(f, "q^-1", 3)
    assert back == t


def test_torsion_identity_is_neutral():
    e = qloop.TorsionTriple("1", ["1"], ["1"])
    t = qloop.TorsionTriple("q", ["1", "-a"], ["1", "-q^2*a"])
    assert t * e == t


def test_fundamental_module_relations():
    m = qloop.fundamental_evaluation(2, 1)
    assert m.dim == 3
    checked, failures = m.check_relations(window=1)
    assert checked > 0
    assert failures == []


def test_tensor_dimension():
    x = qloop.fundamental_evaluation(2, 1, "a")
    y = qloop.fundamental_evaluation(2, 1, "b")
    assert qloop.tensor(x, y).dim == 9


def test_suite_names():
    names = qloop.suite_names()
    for s in ["verify-relations", "highest-weight", "weyl-slice", "monoid"]:
        assert s in names


def test_highest_weight_report():
    rep = qloop.run_suite("highest-weight", M=2, N=1)
    assert rep["schema"] == 1
    assert qloop.passed(rep)


def test_monoid_report():
    rep = qloop.run_suite("monoid", M=2, N=1, count=3, seed=5)
    assert qloop.passed(rep)


def test_bad_config():
    with pytest.raises(ValueError):
        qloop.run_suite("verify-relations", M=2, N=2)
    with pytest.raises(KeyError):
        qloop.run_suite("verify-relations", bogus=1)
