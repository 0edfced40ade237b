r"""
Evidence-grade dynamical classification of a mapping class.

Every surface mapping class is periodic, reducible (preserves a multicurve),
or pseudo-Anosov.  This module gathers exact evidence for one of the three:
a periodic order is certified by probe equality of a power with the
identity; reducibility by an explicit finite curve orbit whose union is an
invariant multicurve; pseudo-Anosov behavior by exponential, seed-
independent growth of curve weights under iteration, with the growth rate
estimated as an exact rational and reported against configurable
thresholds.  Nothing here is proof-grade (no invariant track is built): the
verdicts are labeled as evidence, and the honest fallback is Inconclusive.

The two-generator oracle is exact: for a pair of curves filling a torus
piece and meeting i times, twists act on homology by integer 2x2 matrices,
and the trace decides the type, with the dilatation a quadratic integer
(|tr| + sqrt(tr^2 - 4))/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .curves import (MulticurveCoords, InvalidCurveError, validate,
                     is_essential, disjoint_union_matches)
from .mapping import Encoding, spanning_probes, equal_on


def decimal_string(value, digits=10):
    """Fixed-point decimal rendering of a Fraction, half-up rounding."""
    fr = Fraction(value)
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    scaled = fr * 10 ** digits
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator % scaled.denominator) >= scaled.denominator:
        n += 1
    whole, frac = divmod(n, 10 ** digits)
    if digits == 0:
        return "%s%d" % (sign, whole)
    return "%s%d.%0*d" % (sign, whole, digits, frac)


@dataclass(frozen=True)
class QuadraticValue:
    """(t + sqrt(d)) / 2 with integer t >= 0 and non-square d >= 0."""
    t: int
    d: int

    def approx(self, digits=12):
        scale = 10 ** digits
        root = Fraction(isqrt(self.d * scale * scale), scale)
        return (self.t + root) / 2

    def decimal(self, digits=10):
        return decimal_string(self.approx(digits + 4), digits)


# -- verdicts -----------------------------------------------------------------

@dataclass(frozen=True)
class Periodic:
    order: int
    kind = "periodic"


@dataclass(frozen=True)
class ReducibleEvidence:
    multicurve: MulticurveCoords
    period: int
    orbit: tuple
    kind = "reducible_evidence"


@dataclass(frozen=True)
class PseudoAnosovEvidence:
    lam_hat: Fraction
    residual: Fraction
    iterations: int
    kind = "pseudo_anosov_evidence"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind = "inconclusive"


@dataclass(frozen=True)
class ClassificationReport:
    verdict: object
    diagnostics: dict

    def to_jsonable(self):
        v = self.verdict
        data = {"verdict": v.kind}
        if isinstance(v, Periodic):
            data["order"] = v.order
        elif isinstance(v, ReducibleEvidence):
            data["invariant_multicurve"] = [str(x)
                                            for x in v.multicurve.weights]
            data["period"] = v.period
            data["orbit"] = [[str(x) for x in w] for w in v.orbit]
        elif isinstance(v, PseudoAnosovEvidence):
            data["lambda_hat"] = "%d/%d" % (v.lam_hat.numerator,
                                            v.lam_hat.denominator)
            data["lambda_hat_decimal"] = decimal_string(v.lam_hat, 10)
            data["residual_decimal"] = decimal_string(v.residual, 12)
            data["iterations"] = v.iterations
        else:
            data["reason"] = v.reason
        data["diagnostics"] = self.diagnostics
        return data


@dataclass(frozen=True)
class ClassifyParams:
    """Thresholds and budgets; these are configuration, not truth claims."""
    order_bound: int = 0          # 0 means the per-model default
    depth: int = 8
    weight_cap: int = 8
    iterations: int = 30
    dilatation_seeds: int = 3
    residual_tol: Fraction = Fraction(1, 10 ** 6)
    lam_margin: Fraction = Fraction(1, 1000)
    doubling_window: int = 8

    def jsonable(self):
        return {
            "order_bound": self.order_bound,
            "depth": self.depth,
            "weight_cap": self.weight_cap,
            "iterations": self.iterations,
            "dilatation_seeds": self.dilatation_seeds,
            "residual_tol": str(self.residual_tol),
            "lam_margin": str(self.lam_margin),
            "doubling_window": self.doubling_window,
        }


def default_order_bound(tri):
    """Classical-style caps on periodic orders: 4g+2 for the closed models,
    4g+4 once punctures are present (configuration, documented)."""
    g = tri.genus
    return 4 * g + 2 if tri.num_punctures == 0 else 4 * g + 4


# -- the three detectors --------------------------------------------------------

def periodic_check(e, order_bound=None):
    """Least p with e^p equal to the identity on the spanning probes."""
    tri = e.source
    if order_bound is None or order_bound == 0:
        order_bound = default_order_bound(tri)
    probes = spanning_probes(tri)
    start = [p.weights for p in probes]
    cur = list(start)
    for p in range(1, order_bound + 1):
        cur = [e.act_on_weights(w) for w in cur]
        if cur == start:
            return p
    return None


def invariant_multicurve_search(e, depth=8, weight_cap=8, extra_seeds=()):
    """A curve with finite orbit under e, packaged as evidence.

    Seeds are the extra curves first (a caller's system curves), then the
    enumerated essential curves up to the weight cap.  For the first seed c
    with e^p(c) = c at some p <= depth whose orbit curves are essential and
    jointly disjoint, returns (orbit union, p, orbit tuple); else None.
    """
    from .curves import enumerate_single_curves
    tri = e.source
    seeds = []
    seen = set()
    for c in extra_seeds:
        if c.weights not in seen:
            seen.add(c.weights)
            seeds.append(c)
    for vec in enumerate_single_curves(tri, weight_cap):
        if vec not in seen:
            seen.add(vec)
            seeds.append(MulticurveCoords(tri, vec))
    for seed in seeds:
        orbit = [seed.weights]
        w = seed.weights
        period = None
        for p in range(1, depth + 1):
            w = e.act_on_weights(w)
            if w == seed.weights:
                period = p
                break
            orbit.append(w)
        if period is None:
            continue
        coords = [MulticurveCoords(tri, v) for v in orbit]
        ok = True
        for c in coords:
            try:
                parts = validate(c)
            except InvalidCurveError:
                ok = False
                break
            if len(parts) != 1 or parts[0][1] != 1 or not is_essential(c):
                ok = False
                break
        if ok and len(coords) > 1:
            ok = disjoint_union_matches(tri, coords)
        if not ok:
            continue
        total = [0] * tri.num_edges
        for c in coords:
            total = [x + y for x, y in zip(total, c.weights)]
        return (MulticurveCoords(tri, total), period, tuple(orbit))
    return None


def dilatation_estimate(e, seed, iters=30):
    """Power iteration on total curve weight.

    Returns (lam_hat, residual, weights): lam_hat is the exact ratio of the
    last two weights, residual the largest relative deviation of the three
    final step ratios from lam_hat.  Exponential behavior is judged by the
    caller from the weight list.
    """
    if iters < 3:
        raise ValueError("need at least 3 iterations")
    w = seed.weights
    weights = [sum(w)]
    for _ in range(iters):
        w = e.act_on_weights(w)
        total = sum(w)
        if total == 0:
            raise ArithmeticError("iterate lost all weight; invalid seed")
        weights.append(total)
    lam = Fraction(weights[-1], weights[-2])
    residual = Fraction(0)
    for n in range(iters - 3, iters):
        step = Fraction(weights[n + 1], weights[n])
        dev = abs(step - lam) / lam
        if dev > residual:
            residual = dev
    return lam, residual, weights


@dataclass(frozen=True)
class OracleVerdict:
    kind: str
    trace: int
    dilatation: QuadraticValue = None

    def decimal(self, digits=10):
        return None if self.dilatation is None \
            else self.dilatation.decimal(digits)


def two_twist_oracle(word, i_ab=1):
    """Exact verdict for a word in two twists meeting i_ab times.

    The twists act on the homology of the filled torus piece by
    [[1, i],[0,1]] and [[1, 0],[-i, 1]]; `word` is a sequence of
    (generator, exponent) pairs over "a"/"b", leftmost applied last.  The
    absolute trace decides: above 2 the word is pseudo-Anosov with
    dilatation (|tr| + sqrt(tr^2-4))/2, exactly 2 reducible, below 2
    periodic.
    """
    if not word:
        raise ValueError("empty word")
    if i_ab <= 0:
        raise ValueError("intersection count must be positive")
    m = (1, 0, 0, 1)
    for gen, exp in word:
        k = int(exp)
        if gen == "a":
            g = (1, i_ab * k, 0, 1)
        elif gen == "b":
            g = (1, 0, -i_ab * k, 1)
        else:
            raise ValueError("unknown generator %r" % gen)
        m = (m[0] * g[0] + m[1] * g[2], m[0] * g[1] + m[1] * g[3],
             m[2] * g[0] + m[3] * g[2], m[2] * g[1] + m[3] * g[3])
    tr = m[0] + m[3]
    if abs(tr) > 2:
        lam = QuadraticValue(abs(tr), tr * tr - 4)
        return OracleVerdict("pseudo_anosov", tr, lam)
    if abs(tr) == 2:
        return OracleVerdict("reducible", tr)
    return OracleVerdict("periodic", tr)


# -- the combined classifier --------------------------------------------------

def _doubling(weights, window):
    """Weight at least doubles across every trailing window."""
    n = len(weights)
    if n <= window:
        return False
    for k in range(max(1, n - 4 - window), n - window):
        if weights[k + window] < 2 * weights[k]:
            return False
    return True


def classify(e, params=None, extra_seeds=()):
    """Periodicity, then reducibility, then growth; first verdict wins.

    PseudoAnosovEvidence demands that every dilatation seed shows doubling
    growth, that the estimates agree pairwise within the residual
    tolerance, that each residual clears the same bar, and that the rate
    exceeds 1 by the configured margin.  Anything else that neither closes
    an order nor exhibits an invariant multicurve is Inconclusive.
    """
    params = params or ClassifyParams()
    tri = e.source
    diag = {"params": params.jsonable()}

    order = periodic_check(e, params.order_bound)
    if order is not None:
        return ClassificationReport(Periodic(order), diag)

    found = invariant_multicurve_search(e, params.depth, params.weight_cap,
                                        extra_seeds)
    if found is not None:
        mc, period, orbit = found
        return ClassificationReport(ReducibleEvidence(mc, period, orbit), diag)

    probes = spanning_probes(tri)
    seeds = list(probes[:params.dilatation_seeds])
    if not seeds:
        return ClassificationReport(Inconclusive("no seed curves"), diag)
    runs = []
    for seed in seeds:
        lam, residual, weights = dilatation_estimate(e, seed,
                                                     params.iterations)
        runs.append((lam, residual, weights))
    diag["growth"] = [[str(x) for x in weights] for _, _, weights in runs]
    diag["lambda_hats"] = [decimal_string(lam, 10) for lam, _, _ in runs]
    diag["residuals"] = [decimal_string(r, 12) for _, r, _ in runs]

    exponential = all(_doubling(weights, params.doubling_window)
                      for _, _, weights in runs)
    lams = [lam for lam, _, _ in runs]
    agree = all(abs(lams[i] - lams[j]) <= params.residual_tol * lams[j]
                for i in range(len(lams)) for j in range(len(lams)))
    tight = all(r <= params.residual_tol for _, r, _ in runs)
    big = all(lam >= 1 + params.lam_margin for lam in lams)
    if exponential and agree and tight and big:
        best = max(runs, key=lambda t: sum(t[2]))
        return ClassificationReport(
            PseudoAnosovEvidence(best[0], best[1], params.iterations), diag)
    reasons = []
    if not exponential:
        reasons.append("growth not exponential")
    if not agree:
        reasons.append("seeds disagree on the rate")
    if not tight:
        reasons.append("residual above tolerance")
    if not big:
        reasons.append("rate too close to one")
    return ClassificationReport(Inconclusive("; ".join(reasons)), diag)
