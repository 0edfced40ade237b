r"""
The constructive pipeline: completing a curve system to a maximal one while
preserving a prescribed action, realizing twist families over it, and
sweeping twist exponents for pseudo-Anosov candidates.

Given disjoint curves 𝒞 with images under f, the decisive question is
whether the orbit graph has a cycle.  If it does, no map agreeing with f on
𝒞 can be pseudo-Anosov: the cycle gives a subfamily permuted up to isotopy,
hence an invariant multicurve for every candidate, and the search refuses.
If not, the system is completed curve by curve: inside each non-pants
complementary piece an intersecting pair c', c'' is found, c' joins the
system, and f is post-composed with the least twist power about c'' that
makes the image of c' non-parallel to everything retained.  Twists about
curves disjoint from the old system leave the old images untouched, so the
prescribed action survives verbatim and no new cycle can close.

Over the completed system, the candidates are f' composed with twists about
the system curves.  The twists fix every system curve, so each candidate
still realizes the prescribed action; the exponent sweep assigns a power k
to one representative per chain of the orbit graph and zero elsewhere, and
each candidate is classified.  There is no effective bound for how large k
must be, so exhausting the sweep is a legitimate, reportable outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .curves import (MulticurveCoords, enumerate_single_curves, cut_along,
                     disjoint_union_matches)
from .mapping import Encoding, twist, intersects
from .orbits import (CurveSystem, require_independent, build_gamma,
                     find_orbit, chain_decomposition)
from .classify import ClassifyParams, classify, PseudoAnosovEvidence


class ConstructionError(RuntimeError):
    """Raised when candidate generation runs out of budget."""


@dataclass(frozen=True)
class TwistFamily:
    """f composed with twists about disjoint curves: the candidate shape
    g = f ∘ T_{c_1}^{k_1} ∘ ... ∘ T_{c_n}^{k_n}."""
    f: Encoding
    curves: tuple          # ordered (name, MulticurveCoords) pairs
    exponents: tuple

    def __post_init__(self):
        if len(self.curves) != len(self.exponents):
            raise ValueError("one exponent per curve required")


def realize_family(fam):
    """The encoding of the family; exact on every curve of the system."""
    coords = [c for _, c in fam.curves]
    if coords:
        host = coords[0].host
        if not disjoint_union_matches(host, coords):
            raise ValueError("family curves are not jointly disjoint")
    enc = fam.f
    for (_, c), k in zip(fam.curves, fam.exponents):
        if k:
            enc = enc * twist(c, k)
    return enc


def _candidates_in_piece(host, joint, cut, piece_index, existing, cap):
    out = []
    for vec in enumerate_single_curves(host, cap):
        if vec in existing:
            continue
        c = MulticurveCoords(host, vec)
        if not disjoint_union_matches(host, [joint, c]):
            continue
        if cut.piece_containing(c) != piece_index:
            continue
        out.append(c)
    return out


def maximalize(sys, f, weight_cap=12):
    """Complete the system to a maximal one without disturbing f's action.

    Returns (completed system with images under the adjusted map, adjusted
    encoding).  Requires an independent, orbit-free input; adds one curve
    per non-pants piece iteration, post-composing f with the least twist
    power that keeps the new curve's image off every retained class.
    """
    require_independent(sys)
    host = sys.host
    if find_orbit(build_gamma(sys.with_images(f))) is not None:
        raise ValueError("input system already contains an orbit")
    comps = dict(sys.components)
    fp = f
    bound = 3 * host.genus + host.num_punctures - 3
    fresh = itertools.count(1)
    for _ in range(bound - len(comps) + 1):
        joint = CurveSystem(host, comps).joint_coords()
        cut = cut_along(joint)
        bad = [i for i, p in enumerate(cut.pieces) if not p.is_pants]
        if not bad:
            break
        piece = bad[0]
        existing = {c.weights for c in comps.values()}
        pair = None
        for cap in (weight_cap, weight_cap + 4, weight_cap + 8):
            cands = _candidates_in_piece(host, joint, cut, piece,
                                         existing, cap)
            for i in range(len(cands)):
                for j in range(i + 1, len(cands)):
                    if intersects(cands[i], cands[j]):
                        pair = (cands[i], cands[j])
                        break
                if pair:
                    break
            if pair:
                break
        if pair is None:
            raise ConstructionError(
                "no intersecting curve pair found in piece %d under weight "
                "cap %d" % (piece, weight_cap + 8))
        c_new, c_aux = pair
        name = "d%d" % next(fresh)
        while name in comps:
            name = "d%d" % next(fresh)
        taken = existing | {c_new.weights}
        for k in range(1, len(comps) + 3):
            image = fp.act(twist(c_aux, k).act(c_new))
            if image.weights not in taken:
                break
        else:
            raise ConstructionError("twist power search exceeded its bound")
        comps[name] = c_new
        fp = fp * twist(c_aux, k)
    done = CurveSystem.from_encoding(host, comps, fp)
    for name, c in sys.components.items():
        if fp.act(c).weights != f.act(c).weights:
            raise AssertionError("completion disturbed the image of %r"
                                 % name)
    if find_orbit(build_gamma(done)) is not None:
        raise AssertionError("completion created an orbit")
    return done, fp


# -- the exponent sweep -------------------------------------------------------

@dataclass(frozen=True)
class SearchSchedule:
    k_max: int = 10
    independent: bool = False
    weight_cap: int = 12
    classify_params: ClassifyParams = field(default_factory=ClassifyParams)

    def jsonable(self):
        return {"k_max": self.k_max, "independent": self.independent,
                "weight_cap": self.weight_cap,
                "classify": self.classify_params.jsonable()}


@dataclass(frozen=True)
class Refused:
    orbit: tuple
    period: int
    witness: dict
    status = "refused"


@dataclass(frozen=True)
class Accepted:
    exponents: dict
    report: object
    reports: tuple
    status = "accepted"


@dataclass(frozen=True)
class Exhausted:
    k_max: int
    reports: tuple
    status = "exhausted"


def _result_jsonable(res, schedule):
    data = {"status": res.status, "schedule": schedule.jsonable()}
    if isinstance(res, Refused):
        data["orbit"] = list(res.orbit)
        data["period"] = res.period
        data["witness"] = res.witness
    elif isinstance(res, Accepted):
        data["exponents"] = dict(res.exponents)
        data["report"] = res.report.to_jsonable()
        data["attempts"] = [{"exponents": dict(k), "verdict":
                             r.verdict.kind} for k, r in res.reports]
    else:
        data["k_max"] = res.k_max
        data["attempts"] = [{"exponents": dict(k), "report":
                             r.to_jsonable()} for k, r in res.reports]
    return data


def _exponent_vectors(names, reps, schedule):
    """Exponent assignments in increasing order of the sweep.

    Diagonal mode puts the same k on every representative; independent mode
    enumerates all positive vectors over the representatives ordered by
    their maximum, then lexicographically.
    """
    reps = tuple(reps)
    if not schedule.independent:
        for k in range(1, schedule.k_max + 1):
            yield {n: (k if n in reps else 0) for n in names}
        return
    for top in range(1, schedule.k_max + 1):
        for combo in itertools.product(range(1, top + 1), repeat=len(reps)):
            if max(combo) != top:
                continue
            by_rep = dict(zip(reps, combo))
            yield {n: by_rep.get(n, 0) for n in names}


def search_twist_family(sys, f, schedule=None):
    """Decide realizability and sweep for a pseudo-Anosov candidate.

    An orbit in the graph refuses immediately: the witness records the
    cycle, whose curves any candidate agreeing with f permutes, so some
    power fixes each of them.  Otherwise the system is completed, one
    representative per chain receives the twist exponent, and candidates
    are classified in sweep order; the first pseudo-Anosov evidence wins.
    """
    schedule = schedule or SearchSchedule()
    require_independent(sys)
    gamma = build_gamma(sys.with_images(f))
    orbit = find_orbit(gamma)
    if orbit is not None:
        witness = {
            "cycle": list(orbit),
            "period": len(orbit),
            "image_map": {src: dst for src, dst in gamma.edges
                          if src in orbit},
            "consequence": "every candidate agreeing with the prescribed "
                           "action permutes these classes, so its %d-th "
                           "power fixes each of them" % len(orbit),
        }
        return Refused(orbit, len(orbit), witness)
    full, fp = maximalize(sys, f, schedule.weight_cap)
    chains = chain_decomposition(build_gamma(full))
    reps = [ch.representative for ch in chains]
    curves = tuple(full.components.items())
    names = full.names
    system_curves = [c for _, c in curves]
    reports = []
    for vec in _exponent_vectors(names, reps, schedule):
        fam = TwistFamily(fp, curves, tuple(vec[n] for n in names))
        enc = realize_family(fam)
        report = classify(enc, schedule.classify_params,
                          extra_seeds=system_curves)
        reports.append((vec, report))
        if isinstance(report.verdict, PseudoAnosovEvidence):
            return Accepted(vec, report, tuple(reports))
    return Exhausted(schedule.k_max, tuple(reports))
