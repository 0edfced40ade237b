"""
The three-way classifier against exact linear-algebra ground truth.

On the punctured torus a word in the two standard twists acts on homology by
an integer matrix; its absolute trace decides the type exactly, and for
hyperbolic traces the dilatation is (|t| + sqrt(t^2 - 4))/2.  The matrix
oracle in oracles.py is independent of the package and the frozen handedness
makes both sides comparable.
"""

import json
import random
from fractions import Fraction

import pytest

from curvetwist import (MulticurveCoords, Encoding, Relabel, twist,
                        automorphisms, decimal_string, QuadraticValue,
                        Periodic, ReducibleEvidence, PseudoAnosovEvidence,
                        Inconclusive, ClassifyParams, default_order_bound,
                        periodic_check, invariant_multicurve_search,
                        dilatation_estimate, two_twist_oracle, classify)

from oracles import word_trace, spectral_radius


WORDS = [
    [("a", 1), ("b", -1)],
    [("a", -1), ("b", 1)],
    [("a", 2), ("b", -1)],
    [("a", 1), ("b", -2)],
    [("a", 2), ("b", -2)],
    [("a", 3), ("b", -1)],
    [("a", 5), ("b", 1)],
    [("a", 3), ("b", 3)],
    [("a", 1), ("b", -1), ("a", 1), ("b", -1)],
    [("a", 2), ("b", -1), ("a", 1), ("b", -1)],
    [("a", 4), ("b", 2)],
    [("a", 6), ("b", 1)],
]


def encode_word(ab, factors):
    a, b = ab
    by_name = {"a": a, "b": b}
    enc = Encoding.identity(a.host)
    for name, k in factors:
        enc = enc * twist(by_name[name], k)
    return enc


# -- dilatation agreement with the matrix oracle --------------------------------

@pytest.mark.parametrize("factors", WORDS,
                         ids=["".join("%s%+d" % f for f in w) for w in WORDS])
def test_hyperbolic_words_match_oracle(ab, factors):
    trace = word_trace(factors)
    assert abs(trace) > 2
    lam = spectral_radius(trace)
    report = classify(encode_word(ab, factors))
    v = report.verdict
    assert isinstance(v, PseudoAnosovEvidence)
    assert abs(v.lam_hat - lam) < Fraction(1, 10 ** 4)
    assert v.residual < Fraction(1, 10 ** 6)
    # the package's own oracle agrees with the independent one
    own = two_twist_oracle(factors)
    assert own.kind == "pseudo_anosov"
    assert own.trace == trace


def test_flagship_dilatation_is_golden_square(ab):
    report = classify(encode_word(ab, [("a", 1), ("b", -1)]))
    assert decimal_string(report.verdict.lam_hat, 6) == "2.618034"


def test_conjugation_invariance(ab):
    """Conjugate words classify identically with matching dilatations."""
    g = encode_word(ab, [("a", 2), ("b", -1)])
    h = encode_word(ab, [("b", 1), ("a", 1)])
    conj = h * g * h.inverse()
    r1 = classify(g).verdict
    r2 = classify(conj).verdict
    assert isinstance(r1, PseudoAnosovEvidence)
    assert isinstance(r2, PseudoAnosovEvidence)
    lam = spectral_radius(word_trace([("a", 2), ("b", -1)]))
    assert abs(r1.lam_hat - lam) < Fraction(1, 10 ** 4)
    assert abs(r2.lam_hat - lam) < Fraction(1, 10 ** 4)


# -- periodicity -----------------------------------------------------------------

def test_identity_is_periodic_order_one(s11):
    report = classify(Encoding.identity(s11))
    assert report.verdict == Periodic(1)


def test_two_twist_composite_is_periodic_order_three(ab):
    report = classify(encode_word(ab, [("a", 1), ("b", 1)]))
    assert report.verdict == Periodic(3)
    assert two_twist_oracle([("a", 1), ("b", 1)]).kind == "periodic"


def test_involution_is_periodic_order_two(s20):
    swap = next(rel for rel in automorphisms(s20)
                if not rel.is_edge_identity())
    report = classify(Encoding(s20, [Relabel(swap)]))
    assert report.verdict == Periodic(2)


def test_periodic_check_respects_order_bound(ab):
    g = encode_word(ab, [("a", 1), ("b", 1)])
    assert periodic_check(g, order_bound=2) is None
    assert periodic_check(g, order_bound=3) == 3


def test_default_order_bounds():
    import curvetwist
    assert default_order_bound(curvetwist.build_surface(1, 1)) == 8
    assert default_order_bound(curvetwist.build_surface(2, 0)) == 10
    assert default_order_bound(curvetwist.build_surface(0, 4)) == 4


# -- reducibility ----------------------------------------------------------------

def test_single_twist_is_reducible_with_its_curve(ab):
    a, _ = ab
    report = classify(twist(a, 1))
    v = report.verdict
    assert isinstance(v, ReducibleEvidence)
    assert v.period == 1
    assert v.multicurve.weights == a.weights


def test_separating_twist_is_reducible(s20):
    sep = MulticurveCoords(s20, (0, 0, 2, 2, 0, 0, 0, 2, 2))
    t = twist(sep, 1)
    report = classify(t)
    v = report.verdict
    assert isinstance(v, ReducibleEvidence)
    assert v.period == 1
    # the witness is some invariant curve disjoint from the twisting curve
    # (the search may return a lighter one than the twisting curve itself)
    assert t.act(v.multicurve).weights == v.multicurve.weights


def test_curve_swapping_map_is_reducible_with_period_two(s20):
    swap = next(rel for rel in automorphisms(s20)
                if not rel.is_edge_identity())
    c = MulticurveCoords(s20, (0, 0, 1, 0, 0, 0, 0, 1, 0))
    g = twist(c, 1) * Encoding(s20, [Relabel(swap)])
    report = classify(g)
    v = report.verdict
    assert isinstance(v, ReducibleEvidence)
    assert v.period == 2
    # the invariant multicurve is the union over the two-cycle
    d = MulticurveCoords(s20, (1, 0, 0, 0, 0, 1, 0, 0, 0))
    assert v.multicurve.weights == tuple(
        x + y for x, y in zip(c.weights, d.weights))


def test_invariant_search_uses_extra_seeds(s20):
    sep = MulticurveCoords(s20, (0, 0, 2, 2, 0, 0, 0, 2, 2))
    got = invariant_multicurve_search(twist(sep, 1), weight_cap=2,
                                      extra_seeds=(sep,))
    assert got is not None
    union, period, orbit = got
    assert period == 1
    assert union.weights == sep.weights


# -- inconclusive ----------------------------------------------------------------

def test_too_few_iterations_is_inconclusive(ab):
    params = ClassifyParams(iterations=6)
    report = classify(encode_word(ab, [("a", 1), ("b", -1)]), params)
    assert isinstance(report.verdict, Inconclusive)
    assert report.verdict.reason


# -- estimates and rendering -------------------------------------------------------

def test_dilatation_estimate_converges(ab):
    a, _ = ab
    g = encode_word(ab, [("a", 1), ("b", -1)])
    lam, residual, weights = dilatation_estimate(g, a, iters=30)
    assert len(weights) == 31
    assert residual < Fraction(1, 10 ** 6)
    assert abs(lam - spectral_radius(3)) < Fraction(1, 10 ** 6)


def test_quadratic_value_decimal():
    golden_sq = QuadraticValue(3, 5)
    assert golden_sq.decimal(10) == "2.6180339887"
    assert QuadraticValue(4, 12).decimal(10) == "3.7320508076"


def test_decimal_string_rounds_half_up():
    assert decimal_string(Fraction(1, 3), 10) == "0.3333333333"
    assert decimal_string(Fraction(15, 1000), 2) == "0.02"
    assert decimal_string(Fraction(5, 2), 0) == "3"


def test_oracle_trichotomy():
    assert two_twist_oracle([("a", 2), ("b", 1)]).kind == "periodic"
    assert two_twist_oracle([("a", 4), ("b", 1)]).kind == "reducible"
    assert two_twist_oracle([("a", 5), ("b", 1)]).kind == "pseudo_anosov"
    with pytest.raises(ValueError):
        two_twist_oracle([])
    with pytest.raises(ValueError):
        two_twist_oracle([("a", 1)], i_ab=0)


def test_report_serializes_to_json(ab):
    report = classify(encode_word(ab, [("a", 1), ("b", -1)]))
    doc = report.to_jsonable()
    text = json.dumps(doc, sort_keys=True)
    assert json.loads(text)["verdict"] == "pseudo_anosov_evidence"
    assert isinstance(doc["lambda_hat"], str)


def test_classification_is_deterministic(ab):
    g = encode_word(ab, [("a", 2), ("b", -2)])
    r1 = classify(g).to_jsonable()
    r2 = classify(g).to_jsonable()
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
