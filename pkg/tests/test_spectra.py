"""Spectrum kinds, both computation routes, and the structural checks.

The S2 fixture values are the load-bearing ones: its homology spectrum
{(0,0), (2,0)} and eigencharacter set {(1,0)} were computed by hand from
the 2x2 differentials (see test_koszul for the matrices) and are frozen
here; they exhibit the failure of the eigencharacter description on a
solvable non-nilpotent algebra.
"""

import pytest

from liespec import lie_core as lc
from liespec import representation as rp
from liespec import spectra as sp
from liespec.numeric import EXACT, FLOAT, gr


def a1_rep():
    return rp.representation(lc.abelian_algebra(["e1"]), [[[2, 0], [0, 3]]])


def s2_rep():
    L = lc.lie_algebra(["x", "y"], {(0, 1): [0, 1]})
    return rp.representation(L, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]])


def h3_rep():
    L = lc.lie_algebra(["x", "y", "z"], {(0, 1): [0, 0, 1]})
    return rp.representation(
        L,
        [
            [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
        ],
    )


def zero_rep(m=3):
    L = lc.lie_algebra(["x", "y", "z"], {(0, 1): [0, 0, 1]})
    z = [[0] * m for _ in range(m)]
    return rp.representation(L, [z, z, z], m=m)


def float_copy(rep):
    return rp.rep_from_json(rp.rep_to_json(rep), backend=FLOAT)


# --- kinds ----------------------------------------------------------------------


def test_kind_parse_render_round_trip():
    for text in (
        "taylor", "fredholm", "split", "split_e",
        "delta:0", "pi:2", "delta_e:1", "pi_e:0",
        "split_delta:1", "split_pi:2", "split_delta_e:0", "split_pi_e:3",
    ):
        assert sp.parse_kind(text).render() == text


def test_kind_parse_rejects_garbage():
    for bad in ("", "taylor:1", "delta", "pi:", "slodkowski", "delta:-1", "split_fredholm"):
        with pytest.raises(ValueError):
            sp.parse_kind(bad)


def test_kind_degree_ranges():
    n = 3
    assert list(sp.parse_kind("taylor").degree_range(n)) == [0, 1, 2, 3]
    assert list(sp.parse_kind("delta:1").degree_range(n)) == [0, 1]
    assert list(sp.parse_kind("pi:1").degree_range(n)) == [2, 3]
    assert list(sp.parse_kind("pi:0").degree_range(n)) == [3]
    # k beyond n clamps to the full range
    assert list(sp.parse_kind("delta:9").degree_range(n)) == [0, 1, 2, 3]


def test_all_kinds_inventory():
    kinds = sp.all_kinds(3)
    assert len(kinds) == 36
    assert len({k.render() for k in kinds}) == 36


# --- eigencharacter route ---------------------------------------------------------


def test_eigencharacters_a1():
    pairs = sp.joint_eigencharacters(a1_rep())
    chars = [f.coeffs for f, _ in pairs]
    assert chars == [(gr(2),), (gr(3),)]
    for (f, w) in pairs:
        mat = a1_rep().mats[0]
        assert (mat * w - w.scale(f.coeffs[0])).is_zero()


def test_eigencharacters_h3_zero_only():
    pairs = sp.joint_eigencharacters(h3_rep())
    assert [f.coeffs for f, _ in pairs] == [(gr(0), gr(0), gr(0))]
    w = pairs[0][1]
    assert tuple(w.entries) == (gr(1), gr(0), gr(0))


def test_eigencharacters_s2():
    pairs = sp.joint_eigencharacters(s2_rep())
    assert [f.coeffs for f, _ in pairs] == [(gr(1), gr(0))]


def test_eigencharacters_zero_rep():
    pairs = sp.joint_eigencharacters(zero_rep(4))
    assert [f.coeffs for f, _ in pairs] == [(gr(0), gr(0), gr(0))]


# --- weights, support, candidates ---------------------------------------------------


def test_weight_candidates():
    assert sp.weight_candidates(a1_rep()) == ((gr(2),), (gr(3),))
    assert sp.weight_candidates(h3_rep()) == ((gr(0), gr(0), gr(0)),)
    assert set(sp.weight_candidates(s2_rep())) == {(gr(0), gr(0)), (gr(1), gr(0))}


def test_weight_candidates_need_solvable():
    # sl2 is not solvable: [e,f]=h, [h,e]=2e, [h,f]=-2f
    L = lc.lie_algebra(
        ["e", "f", "h"],
        {(0, 1): [0, 0, 1], (0, 2): [-2, 0, 0], (1, 2): [0, 2, 0]},
    )
    assert lc.validate_lie_algebra(L) == []
    rep = rp.adjoint_action(L)
    with pytest.raises(sp.NotSolvable):
        sp.weight_candidates(rep)


def test_homology_support_nilpotent_is_zero():
    for L in (h3_rep().algebra, lc.abelian_algebra(["a", "b"])):
        assert sp.homology_support(L) == (L.zero_vector(),)


def test_homology_support_aff1():
    L = s2_rep().algebra
    assert set(sp.homology_support(L)) == {(gr(0), gr(0)), (gr(-1), gr(0))}


def test_spectral_candidates_s2():
    cands = sp.spectral_candidates(s2_rep())
    assert set(cands) == {(gr(0), gr(0)), (gr(1), gr(0)), (gr(2), gr(0))}


# --- homology route -----------------------------------------------------------------


def test_sigma_p_a1():
    rep = a1_rep()
    assert set(sp.sigma_p(rep, 0)) == {(gr(2),), (gr(3),)}
    assert set(sp.sigma_p(rep, 1)) == {(gr(2),), (gr(3),)}


def test_sigma_p_s2():
    rep = s2_rep()
    assert (gr(0), gr(0)) in sp.sigma_p(rep, 0)
    assert set(sp.sigma_p(rep, 1)) == {(gr(0), gr(0)), (gr(2), gr(0))}
    assert set(sp.sigma_p(rep, 2)) == {(gr(2), gr(0))}


def test_taylor_spectrum_h3():
    report = sp.spectrum(h3_rep(), "taylor")
    assert report.member_coeffs == ((gr(0), gr(0), gr(0)),)
    assert report.route == "homology"
    coeffs, betti = report.betti[0]
    assert betti.h == (1, 2, 2, 1)


def test_taylor_spectrum_a1():
    report = sp.spectrum(a1_rep(), "taylor")
    assert set(report.member_coeffs) == {(gr(2),), (gr(3),)}


def test_taylor_spectrum_s2_frozen():
    # the homology route sees (0,0) and (2,0); the eigencharacter (1,0) has
    # vanishing homology in every degree and is absent
    report = sp.spectrum(s2_rep(), "taylor")
    assert set(report.member_coeffs) == {(gr(0), gr(0)), (gr(2), gr(0))}


def test_delta_pi_collapse_at_top():
    for rep in (a1_rep(), h3_rep(), s2_rep()):
        n = rep.algebra.n
        taylor = set(sp.spectrum(rep, "taylor").member_coeffs)
        assert set(sp.spectrum(rep, f"delta:{n}").member_coeffs) == taylor
        assert set(sp.spectrum(rep, f"pi:{n}").member_coeffs) == taylor


def test_delta_pi_monotone():
    rep = h3_rep()
    n = rep.algebra.n
    for family in ("delta", "pi"):
        prev = set()
        for k in range(n + 1):
            cur = set(sp.spectrum(rep, f"{family}:{k}").member_coeffs)
            assert prev <= cur
            prev = cur


def test_essential_kinds_empty_with_annotation():
    rep = h3_rep()
    for text in ("fredholm", "delta_e:1", "pi_e:2", "split_e", "split_delta_e:0", "split_pi_e:1"):
        report = sp.spectrum(rep, text)
        assert report.members == ()
        assert sp.ANN_ESSENTIAL in report.annotations


def test_pi_kinds_carry_closed_range_annotation():
    rep = h3_rep()
    assert sp.ANN_CLOSED_RANGE in sp.spectrum(rep, "pi:1").annotations
    assert sp.ANN_CLOSED_RANGE in sp.spectrum(rep, "split_pi:1").annotations
    pi_e = sp.spectrum(rep, "pi_e:1")
    assert sp.ANN_CLOSED_RANGE_READINGS in pi_e.annotations


def test_split_kinds_match_and_annotate():
    for rep in (a1_rep(), h3_rep(), s2_rep()):
        taylor = sp.spectrum(rep, "taylor").member_coeffs
        split = sp.spectrum(rep, "split")
        assert split.member_coeffs == taylor
        assert sp.ANN_SPLIT in split.annotations
        n = rep.algebra.n
        for k in range(n + 1):
            assert (
                sp.spectrum(rep, f"split_delta:{k}").member_coeffs
                == sp.spectrum(rep, f"delta:{k}").member_coeffs
            )


def test_members_are_sorted_and_within_candidates():
    for rep in (a1_rep(), h3_rep(), s2_rep()):
        report = sp.spectrum(rep, "taylor")
        keys = [sp.char_sort_key(c) for c in report.member_coeffs]
        assert keys == sorted(keys)
        assert set(report.member_coeffs) <= set(report.candidates)


def test_all_spectra_shares_candidates():
    reports = sp.all_spectra(h3_rep())
    assert len(reports) == 36
    non_essential = [r for r in reports.values() if not r.kind.essential]
    assert all(r.candidates == non_essential[0].candidates for r in non_essential)


def test_spectrum_zero_dim_algebra():
    L = lc.abelian_algebra([])
    rep = rp.representation(L, [], m=2)
    report = sp.spectrum(rep, "taylor")
    assert report.member_coeffs == ((),)


# --- eigencharacter shortcut and cross-validation --------------------------------------


def test_via_eigencharacters_h3():
    report = sp.spectrum_via_eigencharacters(h3_rep())
    assert report.member_coeffs == ((gr(0), gr(0), gr(0)),)
    assert report.route == "eigencharacter"


def test_via_eigencharacters_refuses_non_nilpotent():
    with pytest.raises(sp.HypothesisViolation):
        sp.spectrum_via_eigencharacters(s2_rep())
    forced = sp.spectrum_via_eigencharacters(s2_rep(), override=True)
    assert forced.member_coeffs == ((gr(1), gr(0)),)


def test_cross_validate_nilpotent_equal():
    for rep in (a1_rep(), h3_rep(), zero_rep()):
        cv = sp.cross_validate(rep)
        assert cv.nilpotent and cv.equal


def test_cross_validate_s2_divergence():
    # the eigencharacter (1,0) does not even lie in the homology spectrum
    # here, so containment fails; this documents how far the nilpotent
    # characterization breaks on solvable non-nilpotent input
    cv = sp.cross_validate(s2_rep())
    assert not cv.nilpotent
    assert not cv.equal
    assert set(cv.homology_members) == {(gr(0), gr(0)), (gr(2), gr(0))}
    assert cv.eigen_members == ((gr(1), gr(0)),)
    assert not cv.eigen_contained
    assert not cv.strict


# --- projection and duality ---------------------------------------------------------


def test_projection_h3_ideals():
    rep = h3_rep()
    L = rep.algebra
    yz = lc.span(L, [(gr(0), gr(1), gr(0)), (gr(0), gr(0), gr(1))])
    z = lc.span(L, [(gr(0), gr(0), gr(1))])
    for ideal in (yz, z):
        report = sp.projection_check(rep, ideal, "taylor")
        assert report.equal
        assert report.projected == ((gr(0),) * ideal.dim,)


def test_projection_full_ideal_identity():
    rep = a1_rep()
    report = sp.projection_check(rep, lc.full_subspace(rep.algebra), "taylor")
    assert report.equal
    assert set(report.projected) == {(gr(2),), (gr(3),)}


def test_projection_zero_ideal():
    rep = h3_rep()
    report = sp.projection_check(rep, lc.zero_subspace(rep.algebra), "taylor")
    assert report.equal
    assert report.projected == ((),)


def test_projection_rejects_essential_kind():
    rep = h3_rep()
    with pytest.raises(ValueError):
        sp.projection_check(rep, lc.full_subspace(rep.algebra), "fredholm")


def test_projection_rejects_non_ideal():
    rep = h3_rep()
    x_only = lc.span(rep.algebra, [(gr(1), gr(0), gr(0))])
    with pytest.raises(lc.NotAnIdeal):
        sp.projection_check(rep, x_only, "taylor")


def test_adjoint_duality_h3_and_a1():
    for rep in (h3_rep(), a1_rep(), zero_rep()):
        for k in range(rep.algebra.n + 1):
            report = sp.adjoint_duality_check(rep, k)
            assert report.equal


def test_adjoint_duality_refuses_non_nilpotent():
    with pytest.raises(sp.HypothesisViolation):
        sp.adjoint_duality_check(s2_rep(), 0)


# --- backends ------------------------------------------------------------------------


def test_float_backend_member_agreement():
    for rep in (a1_rep(), h3_rep(), s2_rep(), zero_rep()):
        exact_members = sp.spectrum(rep, "taylor").member_coeffs
        f_rep = float_copy(rep)
        float_members = sp.spectrum(f_rep, "taylor").member_coeffs
        assert len(exact_members) == len(float_members)
        for e, f in zip(exact_members, float_members):
            assert all(abs(a.to_complex() - b) <= 1e-6 for a, b in zip(e, f))


def test_float_eigencharacters_match():
    f_rep = float_copy(s2_rep())
    pairs = sp.joint_eigencharacters(f_rep)
    assert len(pairs) == 1
    assert abs(pairs[0][0].coeffs[0] - 1) <= 1e-9
