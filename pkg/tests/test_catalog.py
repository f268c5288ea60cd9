import json

import pytest

from tautilt.catalog import (
    E_SERIES, closed_form_counts, default_checks, e_series_consistent, enumerated_counts, verify,
)
from tautilt.indec import UnsupportedAlgebra
from tautilt.quiver import preset

from conftest import quiver_for


@pytest.mark.parametrize("kind, n, want", [
    ("A", 2, (2, 2, 1)), ("A", 3, (5, 5, 5)), ("A", 4, (14, 14, 21)),
    ("D", 4, (20, 16, 32)), ("D", 5, (77, 55, 165)), ("E", 6, (418, 228, 1140)),
])
def test_closed_forms(kind, n, want):
    c = closed_form_counts(kind, n)
    assert (c.a_n, c.a_n_minus_1, c.arrows) == want
    assert c.identity_holds(n)


def test_closed_form_unknown():
    with pytest.raises(UnsupportedAlgebra):
        closed_form_counts("E", 9)


def test_e_series_table():
    assert set(E_SERIES) == {6, 7, 8}
    assert e_series_consistent() == {6: True, 7: True, 8: True}


@pytest.mark.parametrize("name", ["A3", "A5", "D4"])
def test_enumerated_counts(name):
    mq, tq = quiver_for(name)
    got = enumerated_counts(mq, tq)
    want = closed_form_counts(name[0], int(name[1:]))
    assert (got.a_n, got.a_n_minus_1, got.arrows) == (want.a_n, want.a_n_minus_1, want.arrows)


def test_verify_a3_all_checks():
    r = verify("A3")
    assert r.status == "complete" and r.passed
    names = [c.name for c in r.checks]
    assert names == list(default_checks(preset("A3"), True))
    data = r.to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["checks"]["bongartz"]["details"]["exhaustive"]


def test_verify_kronecker():
    r = verify("K2", ["kronecker", "coxeter"])
    assert r.passed, r.summary()


def test_verify_w4_coxeter():
    r = verify("W4", ["coxeter"])
    det = r.checks[0].details
    assert det["matches_reference"] and det["fourth_coordinate_zero"] and det["tau_matches_coxeter"]


def test_verify_budget_exhausted():
    r = verify("A3", budget=0.0)
    assert r.status == "budget-exceeded"


def test_verify_unknown_check():
    with pytest.raises(KeyError):
        verify("A2", ["nonsense"])


def test_e7_needs_flag():
    with pytest.raises(UnsupportedAlgebra):
        verify("E7")
