"""Structure-constant algebra layer: validation, series, flags, characters.

Fixtures used throughout:
  h3      Heisenberg, [x,y] = z, z central.
  aff1    [x,y] = y; solvable, not nilpotent.
  ab2     abelian on two generators.
"""

import pytest

from liespec import lie_core as lc
from liespec.numeric import EXACT, FLOAT, gr


def h3():
    return lc.lie_algebra(["x", "y", "z"], {(0, 1): [0, 0, 1]})


def aff1():
    return lc.lie_algebra(["x", "y"], {(0, 1): [0, 1]})


def ab2():
    return lc.abelian_algebra(["e1", "e2"])


# --- validation ---------------------------------------------------------------


def test_validate_h3_and_abelian_ok():
    assert lc.validate_lie_algebra(h3()) == []
    assert lc.validate_lie_algebra(ab2()) == []
    assert lc.validate_lie_algebra(aff1()) == []


def test_validate_reports_jacobi_violation():
    # [x,y]=x, [y,z]=y, [x,z]=0: the cyclic sum at (x,y,z) is
    # [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 + [y,x] + 0 = -x != 0
    bad = lc.lie_algebra(
        ["x", "y", "z"], {(0, 1): [1, 0, 0], (1, 2): [0, 1, 0]}
    )
    violations = lc.validate_lie_algebra(bad)
    assert len(violations) == 1
    triple, residual = violations[0]
    assert triple == (0, 1, 2)
    assert residual == (gr(-1), gr(0), gr(0))


def test_validate_float_backend():
    bad = lc.lie_algebra(
        ["x", "y", "z"], {(0, 1): [1, 0, 0], (1, 2): [0, 1, 0]}, backend=FLOAT
    )
    assert len(lc.validate_lie_algebra(bad)) == 1
    ok = lc.lie_algebra(["x", "y", "z"], {(0, 1): [0, 0, 1]}, backend=FLOAT)
    assert lc.validate_lie_algebra(ok) == []


# --- bracket ----------------------------------------------------------------


def test_bracket_defining_relation_and_alternation():
    L = h3()
    x, y = (gr(1), gr(0), gr(0)), (gr(0), gr(1), gr(0))
    assert lc.bracket(L, x, y) == (gr(0), gr(0), gr(1))
    assert lc.bracket(L, y, x) == (gr(0), gr(0), gr(-1))
    assert lc.bracket(L, x, x) == L.zero_vector()


def test_bracket_bilinear():
    L = h3()
    xy = (gr(1), gr(1), gr(0))  # x + y
    y = (gr(0), gr(1), gr(0))
    assert lc.bracket(L, xy, y) == (gr(0), gr(0), gr(1))


# --- derived subalgebra and series -------------------------------------------


def test_derived_subalgebra():
    assert lc.derived_subalgebra(ab2()).dim == 0
    d = lc.derived_subalgebra(h3())
    assert d.basis == ((gr(0), gr(0), gr(1)),)
    d2 = lc.derived_subalgebra(aff1())
    assert d2.basis == ((gr(0), gr(1)),)


def test_series_and_classification():
    assert lc.is_nilpotent(h3()) and lc.is_solvable(h3())
    assert lc.is_nilpotent(ab2())
    A = aff1()
    assert lc.is_solvable(A) and not lc.is_nilpotent(A)
    # lower central series of aff1 stabilizes at <y>
    lcs = lc.lower_central_series(A)
    assert [s.dim for s in lcs] == [2, 1]
    assert [s.dim for s in lc.lower_central_series(h3())] == [3, 1, 0]


def test_derived_vs_lower_central_first_step():
    for L in (h3(), aff1(), ab2()):
        series = lc.lower_central_series(L)
        step1 = series[1] if len(series) > 1 else lc.zero_subspace(L)
        assert lc.derived_subalgebra(L).basis == step1.basis


# --- flags --------------------------------------------------------------------


def test_chain_h3_frozen():
    L = h3()
    chain = lc.jordan_holder_chain(L)
    assert [s.dim for s in chain] == [0, 1, 2, 3]
    assert chain[1].basis == ((gr(0), gr(0), gr(1)),)
    assert chain[2].basis == ((gr(0), gr(1), gr(0)), (gr(0), gr(0), gr(1)))
    assert lc.verify_chain(L, chain) == []


def test_chain_abelian():
    L = ab2()
    chain = lc.jordan_holder_chain(L)
    assert [s.dim for s in chain] == [0, 1, 2]
    assert lc.verify_chain(L, chain) == []


def test_chain_rejects_non_nilpotent():
    with pytest.raises(lc.NotNilpotent):
        lc.jordan_holder_chain(aff1())


def test_verify_chain_flags_bad_flag():
    L = h3()
    bad = [
        lc.zero_subspace(L),
        lc.span(L, [(gr(1), gr(0), gr(0))]),
        lc.span(L, [(gr(1), gr(0), gr(0)), (gr(0), gr(1), gr(0))]),
        lc.full_subspace(L),
    ]
    problems = lc.verify_chain(L, bad)
    assert problems and all("condition iii" in p for p in problems)
    assert any("(2,3)" in p for p in problems)


def test_verify_chain_flags_wrong_length():
    L = h3()
    assert lc.verify_chain(L, [lc.zero_subspace(L), lc.full_subspace(L)])


def test_derived_inside_second_from_top_flag_member():
    # for these flags L^2 sits below the (n-2)nd member whenever n >= 2
    for L in (h3(), ab2(), lc.abelian_algebra(["a"])):
        if L.n < 2:
            continue
        chain = lc.jordan_holder_chain(L)
        assert lc.contains_subspace(chain[L.n - 2], lc.derived_subalgebra(L))


# --- characters -----------------------------------------------------------------


def test_is_character():
    L = h3()
    assert lc.is_character(L, (gr(1), gr(1), gr(0)))
    assert not lc.is_character(L, (gr(0), gr(0), gr(1)))
    with pytest.raises(lc.NotACharacter):
        lc.character(L, [0, 0, 1])


def test_restrict_character():
    L = h3()
    f = lc.character(L, [1, 1, 0])
    ideal = lc.span(L, [(gr(0), gr(1), gr(0)), (gr(0), gr(0), gr(1))])
    assert lc.restrict_character(f, ideal) == (gr(1), gr(0))


def test_restrict_character_rejects_non_ideal():
    L = h3()
    f = lc.character(L, [1, 0, 0])
    not_ideal = lc.span(L, [(gr(1), gr(0), gr(0))])
    with pytest.raises(lc.NotAnIdeal):
        lc.restrict_character(f, not_ideal)


def test_induced_algebra_abelian_ideal():
    L = h3()
    ideal = lc.span(L, [(gr(0), gr(1), gr(0)), (gr(0), gr(0), gr(1))])
    sub = lc.induced_algebra(ideal)
    assert sub.n == 2 and sub.table == ()


def test_induced_algebra_full():
    L = h3()
    sub = lc.induced_algebra(lc.full_subspace(L))
    assert sub.structure(0, 1) == (gr(0), gr(0), gr(1))


# --- opposite algebra and JSON -----------------------------------------------


def test_opposite_algebra_negates():
    L = h3()
    op = lc.opposite_algebra(L)
    assert op.structure(0, 1) == (gr(0), gr(0), gr(-1))
    assert lc.validate_lie_algebra(op) == []


def test_json_round_trip():
    L = h3()
    obj = lc.algebra_to_json(L)
    assert obj == {
        "dim": 3,
        "basis": ["x", "y", "z"],
        "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "0", "1"]}],
    }
    back = lc.algebra_from_json(obj)
    assert back == L
    as_float = lc.algebra_from_json(obj, backend=FLOAT)
    assert as_float.structure(0, 1) == (0j, 0j, 1 + 0j)


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        lc.algebra_from_json({"dim": 2})
    with pytest.raises(ValueError):
        lc.algebra_from_json({"dim": 2, "basis": ["a"], "brackets": []})
    with pytest.raises(ValueError):
        lc.algebra_from_json(
            {"dim": 2, "basis": ["a", "b"], "brackets": [{"i": 1, "j": 0, "coeffs": ["0", "0"]}]}
        )
    with pytest.raises(ValueError):
        lc.algebra_from_json(
            {"dim": 2, "basis": ["a", "b"], "brackets": [{"i": 0, "j": 1, "coeffs": ["bogus", "0"]}]}
        )


def test_zero_dimensional_algebra():
    L = lc.abelian_algebra([])
    assert lc.is_nilpotent(L)
    chain = lc.jordan_holder_chain(L)
    assert len(chain) == 1 and lc.verify_chain(L, chain) == []
