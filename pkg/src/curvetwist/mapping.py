r"""
Mapping classes as exact flip sequences.

A mapping class is stored as a closed loop in the flip graph: a list of moves
(edge flips and relabelings) that starts and ends at the same labeled
triangulation.  Acting on a multicurve transports its normal coordinates
through each move; every step is integer-exact, so group operations
(composition, inversion, powers) and equality tests on curves never
accumulate error.

Dehn twists are built by shortening the curve (greedy weight-decreasing
flips, preferring the heaviest edge, with breadth-first search across weight
plateaus) until it reaches one of two catalogued short positions:

1. Total weight two.  The curve is then forced to be the core of an annulus
   made of two triangles glued along both crossed edges.  One flip of a
   crossed edge followed by the relabeling that swaps the two crossed edges
   returns to the starting triangulation and effects exactly one primitive
   twist along the core; the direction is fixed by always flipping the first
   crossed edge in the counterclockwise reading of the annulus triangles.
   Every curve with a vertex or puncture on both sides reaches this entry.

2. A monotone-minimal position of weight above two.  This happens exactly
   for isolating curves, whose complement has a piece with no vertex or
   puncture: such a curve crosses every edge an even number of times, so
   weight two is out of reach.  The twist is synthesized by the even chain
   relation: inside the vertex-free piece (genus h, one boundary) a chain
   c_1, ..., c_{2h} of non-isolating curves is found whose consecutive pairs
   satisfy the braid relation (certifying single intersections) and whose
   distant pairs are disjoint; then (T_{c_1} ... T_{c_{2h}})^{4h+2} is the
   twist along the piece boundary.  A synthesized block is accepted only
   after an exact check that it fixes the curve and fixes a probe curve iff
   the probe is disjoint from it.

Conjugating the catalogued block by the shortening path gives the twist
about the original curve; every step stays integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import json

from .surface import (Triangulation, Relabeling, flip,
                      flip_square_relabeling, triangulation_to_json,
                      triangulation_from_json)
from .curves import (MulticurveCoords, InvalidCurveError, validate,
                     is_essential, transform_under_flip, apply_relabeling,
                     disjoint_union_matches, enumerate_single_curves)


class EncodingError(ValueError):
    """Raised when a move list fails validation or closure."""


class ShorteningError(RuntimeError):
    """Raised when weight reduction exhausts its search space."""


@dataclass(frozen=True)
class Flip:
    label: object


@dataclass(frozen=True)
class Relabel:
    relabeling: Relabeling


def replay(source, moves):
    """Apply moves starting at source; returns the list of triangulations
    visited (length len(moves) + 1).  Raises EncodingError on an illegal
    move."""
    path = [source]
    cur = source
    for k, mv in enumerate(moves):
        if isinstance(mv, Flip):
            if not cur.is_flippable(mv.label):
                raise EncodingError("move %d flips unflippable edge %r"
                                    % (k, mv.label))
            cur = flip(cur, mv.label)
        elif isinstance(mv, Relabel):
            if mv.relabeling.source != cur:
                raise EncodingError("move %d relabels the wrong triangulation"
                                    % k)
            cur = mv.relabeling.target
        else:
            raise EncodingError("unknown move %r" % (mv,))
        path.append(cur)
    return path


def invert_moves(source, moves):
    """The move list undoing `moves`, read from the endpoint back to source.

    A flip is undone by flipping the same edge again and then applying the
    relabeling that matches the double flip back to the pre-flip
    triangulation; a relabeling is undone by its inverse.
    """
    path = replay(source, moves)
    out = []
    for k in range(len(moves) - 1, -1, -1):
        mv = moves[k]
        before = path[k]
        if isinstance(mv, Flip):
            out.append(Flip(mv.label))
            out.append(Relabel(flip_square_relabeling(before, mv.label)))
        else:
            out.append(Relabel(mv.relabeling.inverse()))
    return out


class Encoding:
    """A mapping class: a validated closed move loop with fast exact action.

    The loop is compiled at construction into index-level operations on
    weight tuples, so act() costs one integer formula per move.
    """

    __slots__ = ("source", "moves", "_ops")

    def __init__(self, source, moves):
        moves = tuple(moves)
        path = replay(source, moves)
        if path[-1] != source:
            raise EncodingError("move list does not return to its source")
        self.source = source
        self.moves = moves
        self._ops = self._compile(path)

    def _compile(self, path):
        idx = self.source.edge_index
        ops = []
        for k, mv in enumerate(self.moves):
            cur = path[k]
            if isinstance(mv, Flip):
                slots = cur.slots_of_edge(mv.label)
                (t1, i1), (t2, i2) = sorted(slots)
                quad = [cur.edge_at((t1, (i1 + 1) % 3)),
                        cur.edge_at((t1, (i1 + 2) % 3)),
                        cur.edge_at((t2, (i2 + 1) % 3)),
                        cur.edge_at((t2, (i2 + 2) % 3))]
                ops.append(("flip", idx[mv.label],
                            tuple(idx[lab] for lab in quad)))
            else:
                perm = [0] * len(idx)
                for lab, img in mv.relabeling.edge_map.items():
                    perm[idx[img]] = idx[lab]
                ops.append(("perm", tuple(perm)))
        return tuple(ops)

    @classmethod
    def identity(cls, source):
        return cls(source, ())

    def act_on_weights(self, weights):
        w = list(weights)
        for kind, *rest in self._ops:
            if kind == "flip":
                e, (a, b, c, d) = rest
                w[e] = max(w[a] + w[c], w[b] + w[d]) - w[e]
            else:
                perm = rest[0]
                w = [w[perm[i]] for i in range(len(perm))]
        return tuple(w)

    def act(self, coords):
        if coords.host != self.source:
            raise EncodingError("curve lives on a different triangulation")
        return MulticurveCoords(self.source, self.act_on_weights(coords.weights))

    def compose(self, other):
        """self after other (function composition)."""
        if other.source != self.source:
            raise EncodingError("cannot compose encodings on different sources")
        return Encoding(self.source, other.moves + self.moves)

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self):
        return Encoding(self.source, invert_moves(self.source, self.moves))

    def power(self, k):
        k = int(k)
        if k < 0:
            return self.inverse().power(-k)
        return Encoding(self.source, self.moves * k)

    def __len__(self):
        return len(self.moves)

    def __repr__(self):
        return "Encoding(%d moves)" % len(self.moves)


# -- curve-level predicates ------------------------------------------------------

def intersects(c1, c2):
    """True when the two multicurves cannot be realized disjointly."""
    if c1.host != c2.host:
        raise InvalidCurveError("curves live on different hosts")
    return not disjoint_union_matches(c1.host, [c1, c2])


_probe_cap_cache = {}


def spanning_probes(tri, max_total=None):
    """The probe family used for equality of mapping classes on curves: all
    essential single curves up to a weight cap.

    Agreement on this family is the package's working notion of equality of
    curve actions; that it determines a mapping class is a documented
    assumption, not a theorem.  By default the cap is the smallest value in
    4..12 whose probes intersect every essential curve of weight at most 12,
    so no curve a test corpus can produce slips past the family unseen; the
    choice is cached per triangulation.
    """
    if max_total is None:
        max_total = _probe_cap_cache.get(tri)
        if max_total is None:
            witnesses = [MulticurveCoords(tri, v)
                         for v in enumerate_single_curves(tri, 12)]
            caps = (4, 6, 8, 10, 12)
            for cap in caps:
                probes = [MulticurveCoords(tri, v)
                          for v in enumerate_single_curves(tri, cap)]
                if all(any(not disjoint_union_matches(tri, [w, pr])
                           for pr in probes) for w in witnesses):
                    break
            max_total = cap
            _probe_cap_cache[tri] = max_total
    return tuple(MulticurveCoords(tri, v)
                 for v in enumerate_single_curves(tri, max_total))


def equal_on(f, g, probes):
    """Exact agreement of two encodings on every probe curve."""
    for c in probes:
        if f.act_on_weights(c.weights) != g.act_on_weights(c.weights):
            return False
    return True


# -- weight reduction ------------------------------------------------------------

def _flip_delta(coords, label):
    tri = coords.host
    slots = tri.slots_of_edge(label)
    (t1, i1), (t2, i2) = sorted(slots)
    idx = tri.edge_index
    wa = coords.weights[idx[tri.edge_at((t1, (i1 + 1) % 3))]]
    wb = coords.weights[idx[tri.edge_at((t1, (i1 + 2) % 3))]]
    wc = coords.weights[idx[tri.edge_at((t2, (i2 + 1) % 3))]]
    wd = coords.weights[idx[tri.edge_at((t2, (i2 + 2) % 3))]]
    we = coords.weights[idx[label]]
    return max(wa + wc, wb + wd) - 2 * we


def _greedy_step(coords):
    """The strictly weight-decreasing flip of the heaviest edge, or None on
    a plateau.  Ties break toward the lowest edge label."""
    tri = coords.host
    best = None
    for lab in tri.edge_labels:
        if not tri.is_flippable(lab):
            continue
        if _flip_delta(coords, lab) >= 0:
            continue
        key = (-coords.weight_of(lab), lab)
        if best is None or key < best[0]:
            best = (key, lab)
    return None if best is None else best[1]


def _canonical_state(coords):
    w = {lab: coords.weights[coords.host.edge_index[lab]]
         for lab in coords.host.edge_labels}
    return coords.host.canonical_form(w)


def _plateau_escape(coords, max_states=20000):
    """Breadth-first search through weight-preserving flips until a state
    with a strictly decreasing flip appears.  Returns the move list from
    `coords` ending just after that decreasing flip, with the coordinates it
    reaches, or None when the whole plateau has no way down (the weight is
    monotone-minimal)."""
    from collections import deque
    start_key = _canonical_state(coords)
    seen = {start_key}
    queue = deque([(coords, [])])
    while queue:
        cur, path = queue.popleft()
        lab = _greedy_step(cur)
        if lab is not None:
            return path + [Flip(lab)], transform_under_flip(cur, lab)
        for lab in cur.host.edge_labels:
            if not cur.host.is_flippable(lab):
                continue
            if _flip_delta(cur, lab) != 0:
                continue
            nxt = transform_under_flip(cur, lab)
            key = _canonical_state(nxt)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > max_states:
                raise ShorteningError("plateau search exceeded %d states"
                                      % max_states)
            queue.append((nxt, path + [Flip(lab)]))
    return None


def shorten(coords):
    """Flip until the weight cannot decrease any further.

    Returns (moves, short_coords) at the monotone-minimal position: greedy
    strictly-decreasing flips are taken first and level plateaus are crossed
    by breadth-first search.  Curves with a vertex or puncture on both sides
    end at total weight two; isolating curves end heavier, at the entry
    point of the chain-relation twist block.
    """
    cur = coords
    moves = []
    while cur.total_weight > 2:
        lab = _greedy_step(cur)
        if lab is not None:
            moves.append(Flip(lab))
            cur = transform_under_flip(cur, lab)
            continue
        hop = _plateau_escape(cur)
        if hop is None:
            break
        steps, cur = hop
        moves.extend(steps)
    return moves, cur


# -- the twist block --------------------------------------------------------------

def find_relabelings(src, dst, edge_map):
    """All isomorphisms src -> dst inducing exactly the given edge map,
    found by propagating a single slot assignment around the complex."""
    need = dict(edge_map)
    sols = []
    total = 3 * src.num_triangles
    for t in range(dst.num_triangles):
        for r in range(3):
            m = {}
            ok = True
            stack = [((0, 0), (t, r))]
            while stack and ok:
                a, b = stack.pop()
                if a in m:
                    if m[a] != b:
                        ok = False
                    continue
                ta, ia = a
                tb, ib = b
                for d in range(3):
                    sa = (ta, (ia + d) % 3)
                    sb = (tb, (ib + d) % 3)
                    m[sa] = sb
                    if need.get(src.edge_at(sa)) != dst.edge_at(sb):
                        ok = False
                        break
                    pa = src.glued(sa)
                    pb = dst.glued(sb)
                    if (pa is None) != (pb is None):
                        ok = False
                        break
                    if pa is not None:
                        stack.append((pa, pb))
            if ok and len(m) == total and len(set(m.values())) == total:
                sols.append(Relabeling(src, dst, m))
    return sols


def _annulus_frame(coords):
    """Identify the two-triangle annulus around a weight-two curve.

    Returns (t1, r1, t2, r2, p, q): the triangles and rotations putting the
    uncrossed side at position 0, and the two crossed edges in the common
    counterclockwise order [boundary, p, q] shared by both triangles.
    """
    tri = coords.host
    crossed = [lab for lab in tri.edge_labels if coords.weight_of(lab) == 1]
    if coords.total_weight != 2 or len(crossed) != 2:
        raise EncodingError("not a weight-two annulus position")
    frames = []
    for t in range(tri.num_triangles):
        labs = [tri.edge_at((t, i)) for i in range(3)]
        hits = [i for i in range(3) if labs[i] in crossed]
        if not hits:
            continue
        if len(hits) != 2:
            raise EncodingError("degenerate annulus: crossings share a side")
        (r,) = [i for i in range(3) if i not in hits]
        frames.append((t, r,
                       tri.edge_at((t, (r + 1) % 3)),
                       tri.edge_at((t, (r + 2) % 3))))
    if len(frames) != 2:
        raise EncodingError("crossed edges do not span two triangles")
    (t1, r1, p1, q1), (t2, r2, p2, q2) = frames
    if (p1, q1) != (p2, q2):
        raise EncodingError("annulus triangles disagree on edge order")
    return t1, r1, t2, r2, p1, q1


def _twist_block(short_coords):
    """One primitive positive twist along the core of the annulus: flip the
    first crossed edge, then relabel swapping the two crossed edges back to
    the starting triangulation."""
    tri = short_coords.host
    _, _, _, _, p, q = _annulus_frame(short_coords)
    flipped = flip(tri, p)
    swap = {lab: lab for lab in tri.edge_labels}
    swap[p], swap[q] = q, p
    sols = find_relabelings(flipped, tri, swap)
    if not sols:
        raise EncodingError("no closing relabel for the twist block")
    sols.sort(key=lambda rl: sorted(rl.slot_map.items()))
    return [Flip(p), Relabel(sols[0])]


def _shortens_to_annulus(coords, cache={}):
    key = (coords.host, coords.weights)
    if key not in cache:
        cache[key] = shorten(coords)[1].total_weight == 2
    return cache[key]


def _isolating_block(short_coords):
    """Twist block for an isolating curve stuck above weight two.

    Cut along the curve; the vertex-free piece has genus h and one boundary.
    Search that piece for a chain of 2h non-isolating curves (consecutive
    pairs braid-related, distant pairs disjoint) and return the moves of
    (T_{c_1} ... T_{c_2h})^{4h+2}, accepted only if the result fixes the
    curve and fixes exactly the probes disjoint from it.
    """
    from .curves import cut_along
    from itertools import permutations

    tri = short_coords.host
    cut = cut_along(short_coords)
    isolated = [i for i, p in enumerate(cut.pieces)
                if not p.contains_puncture_or_vertex]
    if len(isolated) != 1:
        raise EncodingError(
            "curve stalled above weight two without an isolating side")
    piece = cut.pieces[isolated[0]]
    if piece.boundary_circles != 1 or piece.euler_characteristic >= 0 \
            or piece.euler_characteristic % 2 == 0:
        raise EncodingError("unexpected isolated piece %r" % (piece,))
    h = (1 - piece.euler_characteristic) // 2

    probes = spanning_probes(tri)

    def battery(enc):
        if enc.act_on_weights(short_coords.weights) != short_coords.weights:
            return False
        for pr in probes:
            fixed = enc.act_on_weights(pr.weights) == pr.weights
            if fixed != (not intersects(pr, short_coords)):
                return False
        return True

    for cap in (8, 12, 16):
        cands = []
        for vec in enumerate_single_curves(tri, cap):
            c = MulticurveCoords(tri, vec)
            if vec == short_coords.weights:
                continue
            if not disjoint_union_matches(tri, [short_coords, c]):
                continue
            if cut.piece_containing(c) != isolated[0]:
                continue
            if not _shortens_to_annulus(c):
                continue
            cands.append(c)
        twists = {c.weights: twist(c, 1) for c in cands}
        braid_memo = {}
        meet_memo = {}

        def meets(ci, cj):
            key = frozenset((ci.weights, cj.weights))
            if key not in meet_memo:
                meet_memo[key] = intersects(ci, cj)
            return meet_memo[key]

        def braided(ci, cj):
            key = frozenset((ci.weights, cj.weights))
            if key not in braid_memo:
                if not meets(ci, cj):
                    braid_memo[key] = False
                else:
                    a, b = twists[ci.weights], twists[cj.weights]
                    braid_memo[key] = equal_on(a * b * a, b * a * b, probes)
            return braid_memo[key]

        for chain in permutations(range(len(cands)), 2 * h):
            ok = True
            for u in range(len(chain) - 1):
                if not braided(cands[chain[u]], cands[chain[u + 1]]):
                    ok = False
                    break
            if ok:
                for u in range(len(chain)):
                    for v in range(u + 2, len(chain)):
                        if meets(cands[chain[u]], cands[chain[v]]):
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                continue
            prod = Encoding.identity(tri)
            for u in chain:
                prod = prod * twists[cands[u].weights]
            enc = prod.power(4 * h + 2)
            if battery(enc):
                return list(enc.moves)
    raise EncodingError("no chain presentation found for the isolating twist")


_twist_cache = {}


def _twist_parts(coords):
    key = (coords.host, coords.weights)
    hit = _twist_cache.get(key)
    if hit is not None:
        return hit
    if not is_essential(coords):
        raise InvalidCurveError("can only twist about an essential curve")
    path, short = shorten(coords)
    if short.total_weight == 2:
        block = _twist_block(short)
    else:
        block = _isolating_block(short)
    back = invert_moves(coords.host, path)
    parts = (tuple(path), short, tuple(block), tuple(back))
    _twist_cache[key] = parts
    return parts


def twist(coords, k=1):
    """The k-th power of the Dehn twist about an essential single curve,
    as a closed encoding on the curve's host."""
    k = int(k)
    host = coords.host
    if k == 0:
        # essentiality is still required for a twist to make sense
        if not is_essential(coords):
            raise InvalidCurveError("can only twist about an essential curve")
        return Encoding.identity(host)
    path, short, block, back = _twist_parts(coords)
    if k > 0:
        mid = list(block) * k
    else:
        inv = invert_moves(short.host, list(block))
        mid = list(inv) * (-k)
    return Encoding(host, list(path) + mid + list(back))


# -- twist words -------------------------------------------------------------------

def parse_twist_word(word, curves):
    """Build an encoding from a word like "T(a)^2 * T(b)^-1".

    `curves` maps names to MulticurveCoords.  Factors may be separated by
    whitespace or '*'; each is T(NAME) or bare NAME, optionally followed by
    ^INT.  Factors compose left to right as written, with the leftmost
    applied last, matching the usual composition order.  An empty word is
    the identity.
    """
    tokens = [t for t in word.replace("*", " ").split() if t]
    if not curves:
        raise EncodingError("no named curves available for twist words")
    host = next(iter(curves.values())).host
    enc = Encoding.identity(host)
    for tok in tokens:
        if "^" in tok:
            head, _, exp = tok.partition("^")
            try:
                k = int(exp)
            except ValueError:
                raise EncodingError("bad exponent in %r" % tok)
        else:
            head, k = tok, 1
        if head.startswith("T(") and head.endswith(")"):
            name = head[2:-1]
        else:
            name = head
        if name not in curves:
            raise EncodingError("unknown curve name %r" % name)
        enc = enc * twist(curves[name], k)
    return enc


def format_twist_word(factors):
    """Inverse of parse_twist_word for (name, exponent) pairs."""
    parts = []
    for name, k in factors:
        parts.append("T(%s)" % name if k == 1 else "T(%s)^%d" % (name, k))
    return " * ".join(parts)


# -- serialization ------------------------------------------------------------

def encoding_to_jsonable(enc):
    """Serialize an encoding as a move list.

    Flips store the edge label; relabelings store the slot bijection and the
    full target complex, which is all the constructor needs to rebuild them
    along the replayed path.
    """
    moves = []
    for mv in enc.moves:
        if isinstance(mv, Flip):
            moves.append({"kind": "flip", "label": mv.label})
        else:
            rel = mv.relabeling
            moves.append({
                "kind": "relabel",
                "slot_map": sorted([list(a), list(b)]
                                   for a, b in rel.slot_map.items()),
                "target": json.loads(triangulation_to_json(rel.target)),
            })
    return {"moves": moves}


def encoding_from_jsonable(tri, data):
    """Rebuild an encoding on `tri` from a serialized move list."""
    cur = tri
    moves = []
    for k, mv in enumerate(data["moves"]):
        kind = mv.get("kind")
        if kind == "flip":
            moves.append(Flip(mv["label"]))
            if not cur.is_flippable(mv["label"]):
                raise EncodingError("move %d flips unflippable edge %r"
                                    % (k, mv["label"]))
            cur = flip(cur, mv["label"])
        elif kind == "relabel":
            target = triangulation_from_json(json.dumps(mv["target"]))
            slot_map = {tuple(a): tuple(b) for a, b in mv["slot_map"]}
            rel = Relabeling(cur, target, slot_map)
            moves.append(Relabel(rel))
            cur = target
        else:
            raise EncodingError("unknown serialized move kind %r" % (kind,))
    return Encoding(tri, moves)
