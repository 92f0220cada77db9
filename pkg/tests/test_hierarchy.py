from __future__ import annotations

import json
from fractions import Fraction

import pytest

from corpus import EPS0, N, O, W, g_corpus, h_corpus, supported
from surreals import ordinal as Ord
from surreals.core import NormalForm, length_of, monomial
from surreals.errors import ApproximationFlagged, NotAnEpsilonNumber, PreconditionError
from surreals.explog import EvalMode, exp
from surreals.gh import g_map, h_map
from surreals.hierarchy import (FINITE_SUPPORT_NOTE, SRF, Certificate, GammaUp, No_lt,
                                NoLtField, Path, base_cert, certify, certify_decomposition,
                                check_certificate, check_path, combo_cert, enumerate_paths,
                                g_image_cert, group_member, h_image_cert,
                                instability_witness_check, log_atomic_depth, membership,
                                membership_report, stability_certificates,
                                strictness_witness_check)

LAM = O("eps_0")
MU = O("w^w")


@pytest.fixture
def level1():
    return GammaUp(No_lt(MU), LAM, 1)


def witness(mu: str) -> NormalForm:
    return monomial(monomial(-N(mu)))


def test_membership_examples():
    assert membership(N("w^w") + 1, NoLtField(LAM))
    assert not membership(witness("w^w"), SRF(LAM, No_lt(MU)))
    assert membership(witness("w^w"), SRF(LAM, No_lt(O("w^(w^2)"))))


def test_membership_report_lists_exponents():
    rep = membership_report(witness("w^w"), SRF(LAM, No_lt(MU)))
    assert rep["support"] == FINITE_SUPPORT_NOTE
    assert rep["exponents"] == [{"exponent": "w^(-w^w)", "length": "w^w", "member": False}]
    assert rep["member"] is False


def test_membership_refuses_approximations():
    approx = exp(monomial(-1), EvalMode.order(2))
    with pytest.raises(ApproximationFlagged):
        membership(approx, NoLtField(LAM))


def test_g_and_h_preserve_no_lt_eps0():
    # No_<eps_0 is closed under g and h on the corpus
    inside = NoLtField(LAM)
    gs = [a for a in g_corpus() if membership(a, inside)]
    hs = [b for b in h_corpus() if membership(b, inside)]
    assert len(gs) > 100 and len(hs) > 100
    for a in gs:
        assert membership(g_map(a), inside), str(a)
    for b in hs:
        hb = supported(h_map, b)
        if hb is not None:
            assert membership(hb, inside), str(b)


def test_certificate_h_image_example(level1):
    source = base_cert(monomial(-1))
    assert group_member(monomial(-1), No_lt(MU))
    cert = h_image_cert(source, 0)
    assert cert.value == monomial(-2)
    assert check_certificate(monomial(-2), level1, cert).ok


def test_certificate_base_example(level1):
    assert check_certificate(W + 1, level1, base_cert(W + 1)).ok


def test_certificate_rejects_false_base_claim(level1):
    x = witness("w^w")
    a = x.exponents()[0]
    check = check_certificate(a, level1, base_cert(a))
    assert not check.ok
    assert "base group" in check.reason
    assert check.failing.value == a


def test_certificate_rejects_wrong_value(level1):
    cert = h_image_cert(base_cert(monomial(-1)), 0)
    forged = Certificate("h_image", monomial(-3), 1, source=cert.source, index=0)
    assert not check_certificate(monomial(-3), level1, forged).ok
    assert not check_certificate(monomial(-2), level1, base_cert(monomial(-3))).ok


def test_certificate_level_discipline(level1):
    g = g_image_cert([(1, base_cert(W))])
    assert g.level == 1 and check_certificate(g.value, level1, g).ok
    gg = g_image_cert([(1, g)])
    assert not check_certificate(gg.value, level1, gg).ok
    assert check_certificate(gg.value, GammaUp(No_lt(MU), LAM, 2), gg).ok


def test_combo_needs_integer_coefficients(level1):
    c = base_cert(W)
    assert check_certificate(W * 3, level1, combo_cert([(3, c)])).ok
    half = combo_cert([(Fraction(1, 2), c)])
    assert not check_certificate(half.value, level1, half).ok


def test_check_certificate_needs_epsilon():
    with pytest.raises(NotAnEpsilonNumber):
        check_certificate(W, GammaUp(No_lt(MU), O("w^(w^w)"), 1), base_cert(W))


def test_certificate_json_round_trip(level1):
    cert = combo_cert([(2, g_image_cert([(Fraction(3, 4), base_cert(W + 1))])),
                       (-1, h_image_cert(base_cert(monomial(-1) + 3), 0))])
    text = json.dumps(cert.to_json())
    back = Certificate.from_json(text)
    assert back == cert
    assert check_certificate(back.value, level1, back).ok
    assert len(list(back.leaves())) == 2


def test_stability_sampling_two_levels():
    cands = [x for x in g_corpus() + h_corpus()
             if supported(length_of, x) is not None and Ord.compare(length_of(x), MU) < 0]
    current = [base_cert(x) for x in cands]
    for level in (1, 2):
        G = GammaUp(No_lt(MU), LAM, level)
        nxt = [d for c in current for _, d in stability_certificates(c)]
        assert len(nxt) > 100
        assert all(check_certificate(d.value, G, d).ok for d in nxt)
        current = nxt[:150]


def test_stability_certificates_cover_exp_and_ln():
    kinds = [k for k, _ in stability_certificates(base_cert(W * 2 + monomial(-1)))]
    assert kinds == ["exp", "ln", "ln"]


def test_certify_finds_derivations(level1):
    for x in [monomial(-2), W, monomial(W), monomial(-W - 1)]:
        cert = certify(x, level1)
        assert cert is not None, str(x)
        assert check_certificate(x, level1, cert).ok


def test_certify_gives_up_honestly(level1):
    assert certify(witness("w^(w^2)").exponents()[0], level1) is None


def test_monotone_in_the_base():
    cert = h_image_cert(base_cert(monomial(-1)), 0)
    for bigger in ("w^w", "w^(w+1)", "w^(w^2)", "w^(w^w)"):
        G = GammaUp(No_lt(O(bigger)), LAM, 1)
        assert check_certificate(cert.value, G, cert).ok


def test_certify_decomposition():
    for x in [W + 1, monomial(monomial(-1)), witness("w^w"), monomial(N("w^2") + 3) - W]:
        rep = certify_decomposition(x)
        assert rep["ok"], str(x)
        assert Ord.is_multiplicative(rep["mu"]) and rep["mu"] < LAM
        assert membership(x, SRF(LAM, No_lt(rep["mu"])))


def test_enumerate_paths_examples():
    paths = enumerate_paths(N("w^w") + W, 2)
    first = paths[0]
    assert [monomial(a, r) for r, a in first.steps] == [N("w^w"), W, monomial(monomial(-1))]
    assert [str(p) for p in enumerate_paths(N(5), 3)] == ["[5]"]


def test_witness_path_is_unique():
    x = witness("w^w")
    paths = enumerate_paths(x, 3)
    assert len(paths) == 1
    assert [a for _, a in paths[0].steps] == [monomial(-N("w^w") - k) for k in range(4)]


def test_check_path_rejects_broken_links():
    x = N("w^w") + W
    for p in enumerate_paths(x, 3):
        assert check_path(x, p)
    bad = Path(((Fraction(1), W), (Fraction(1), N(3))))
    assert not check_path(x, bad)
    assert not check_path(x, Path(((Fraction(2), W),)))


def test_truncated_paths_are_marked():
    paths = enumerate_paths(monomial(monomial(EPS0)), 2)
    assert paths[0].truncated and "UnsupportedHDomain" in paths[0].truncated


def test_log_atomic_depth_examples():
    assert log_atomic_depth(W, 4)
    assert not log_atomic_depth(W + 1, 1)
    assert log_atomic_depth(witness("w^w"), 3)
    assert not log_atomic_depth(W * 2, 0)
    with pytest.raises(PreconditionError):
        log_atomic_depth(-W, 1)


@pytest.mark.parametrize("mu", ["w^w", "w^2"])
def test_strictness_examples(mu):
    rep = strictness_witness_check(O(mu), LAM, 3)
    assert rep["passed"]
    assert rep["in_srf_mu_prime"] and rep["not_in_srf_mu"] and rep["path_lengths_at_least_mu"]


def test_strictness_reports_mu_multiplicativity():
    assert strictness_witness_check(O("w^2"), LAM, 2)["mu_multiplicative"] is False
    assert strictness_witness_check(O("w^w"), LAM, 2)["mu_multiplicative"] is True


@pytest.mark.parametrize("mu, mu_prime, lam", [
    ("w", "w^w", "eps_0"),
    ("w^w", "w^2", "eps_0"),
    ("w^w", "w^(w^2)", "w^(w^w)"),
    ("w*2", "w^w", "eps_0"),
])
def test_strictness_preconditions(mu, mu_prime, lam):
    with pytest.raises(PreconditionError):
        strictness_witness_check(O(mu), O(lam), 2, mu_prime=O(mu_prime))


def test_instability_report_fields():
    rep = instability_witness_check(O("w"), LAM)
    assert rep["exp"] == "w^(w^w)"
    assert rep["exp_length"] == "w^(w^w)"
    assert rep["mu"] == "w^(w^w)"
    assert rep["source_in_srf"]
    assert rep["length_at_least_mu"]
    # the exponent w^w of exp(w^w) has length w^w < mu, so exp stays inside the field
    assert rep["exp_exponent_lengths"] == ["w^w"]
    assert rep["escapes"] is False
    assert rep["second_escapes"] is True


def test_instability_refusals():
    with pytest.raises(PreconditionError):
        instability_witness_check(O("eps_0"), O("eps_1"))
    with pytest.raises(PreconditionError):
        instability_witness_check(O("w"), O("w^w"))
