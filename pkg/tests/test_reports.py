import pytest

from arithdyn.reports import Counterexample, VerificationReport


def test_fail_requires_counterexample():
    with pytest.raises(ValueError):
        VerificationReport("x", 1, 3, "FAIL")
    with pytest.raises(ValueError):
        VerificationReport("x", 1, 3, "PASS",
                           counterexample=Counterexample(None, 1, 2, 3))


def test_certified_bound_only_on_pass():
    with pytest.raises(ValueError):
        VerificationReport("x", 1, 3, "FAIL",
                           counterexample=Counterexample(None, 1, 2, 3),
                           certified_bound="nope")
    rep = VerificationReport("x", 1, 3, "PASS", certified_bound="ok")
    assert rep.passed and rep.to_payload()["certified_bound"] == "ok"


def test_bad_status_rejected():
    with pytest.raises(ValueError):
        VerificationReport("x", 1, 3, "MAYBE")


def test_counterexample_describe():
    ce = Counterexample(2, 7, 10, 11, detail="off by one")
    text = ce.describe()
    assert "family 2" in text and "position 7" in text and "off by one" in text
    payload = VerificationReport("x", 1, 3, "FAIL", counterexample=ce).to_payload()
    assert payload["counterexample"]["position"] == 7
