import itertools

import pytest
from hypothesis import given, strategies as st

from tautilt.quiver import (
    CycleError, QuiverError, QuiverSyntaxError, cartan_matrix, coxeter_matrix, dynkin_type, euler_form,
    injective_dim, mat_vec, parse_quiver, positive_roots, preset, projective_dim, representation_type,
)


def test_parse_basic():
    q = parse_quiver("quiver Q  # comment\nvertex x y\nvertex z\narrow f x y\narrow g y z\n")
    assert q.name == "Q"
    assert q.vertices == ("x", "y", "z")
    assert [a.label for a in q.arrows] == ["f", "g"]


@pytest.mark.parametrize("text, line", [
    ("vertex 1\n", 1),
    ("quiver Q\nvertex 1 1\n", 2),
    ("quiver Q\nvertex 1\narrow a 1 2\n", 3),
    ("quiver Q\nvertex 1 2\narrow a 1 2\narrow a 2 1\n", 4),
    ("quiver Q\nvertex 1\nedge a 1 1\n", 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(QuiverSyntaxError) as exc:
        parse_quiver(text)
    assert exc.value.line == line


def test_cycle_reported():
    with pytest.raises(CycleError) as exc:
        parse_quiver("quiver C\nvertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\n")
    cyc = exc.value.cycle
    assert cyc[0] == cyc[-1] and set(cyc) == {"1", "2", "3"}


def test_loop_is_cycle():
    with pytest.raises(CycleError):
        parse_quiver("quiver L\nvertex 1\narrow a 1 1\n")


def test_unknown_preset():
    with pytest.raises(QuiverError):
        preset("F4")


@pytest.mark.parametrize("name", ["A2", "A5", "D4", "D5", "E6", "K2", "W4"])
def test_dsl_round_trip(name):
    q = preset(name)
    assert parse_quiver(q.to_dsl()) == q


@st.composite
def acyclic_dsl(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=6)) if pairs else []
    order = draw(st.permutations(range(n)))
    lines = ["quiver R", "vertex " + " ".join(f"v{k}" for k in order)]
    lines += [f"arrow e{k} v{order[i]} v{order[j]}" for k, (i, j) in enumerate(edges)]
    return "\n".join(lines) + "\n"


@given(acyclic_dsl())
def test_dsl_round_trip_random(text):
    q = parse_quiver(text)
    assert parse_quiver(q.to_dsl()) == q


def test_cartan_counts_paths():
    q = preset("A3")  # 1 <- 2 <- 3
    assert cartan_matrix(q) == ((1, 0, 0), (1, 1, 0), (1, 1, 1))
    k = preset("K2")
    assert projective_dim(k, 1) == (2, 1)
    assert injective_dim(k, 0) == (1, 2)


def test_w4_coxeter_matrix():
    assert coxeter_matrix(preset("W4")) == ((-1, 2, 0, 0), (-2, 3, 1, 0), (-2, 3, 1, -1), (0, 0, 1, -1))


@pytest.mark.parametrize("name", ["A4", "D5", "E6", "K2", "W4"])
def test_coxeter_sends_projectives_to_negative_injectives(name):
    q = preset(name)
    phi = coxeter_matrix(q)
    for i in range(q.n):
        assert mat_vec(phi, projective_dim(q, i)) == tuple(-x for x in injective_dim(q, i))


def test_euler_form_of_kronecker():
    k = preset("K2")
    assert euler_form(k, (1, 0), (1, 0)) == 1
    assert euler_form(k, (0, 1), (1, 0)) == -2
    assert euler_form(k, (1, 1), (1, 1)) == 0


@pytest.mark.parametrize("name, kind", [
    ("A3", "finite"), ("D4", "finite"), ("E8", "finite"), ("K2", "tame"), ("W4", "wild"), ("W23", "wild"),
])
def test_representation_type(name, kind):
    assert representation_type(preset(name)) == kind


def test_dynkin_type_ignores_names():
    q = parse_quiver("quiver X\nvertex a b c d\narrow p b a\narrow r c b\narrow s d b\n")
    assert dynkin_type(q) == ("D", 4)


def _brute_roots(q, bound):
    # vectors with Tits form 1 are exactly the positive roots in the Dynkin case
    return sorted(d for d in itertools.product(range(bound + 1), repeat=q.n)
                  if any(d) and euler_form(q, d, d) == 1)


@pytest.mark.parametrize("kind, n, bound", [("A", 4, 1), ("D", 5, 2), ("E", 6, 3)])
def test_positive_roots_match_tits_form(kind, n, bound):
    q = preset(f"{kind}{n}")
    assert sorted(positive_roots(kind, n)) == _brute_roots(q, bound)
