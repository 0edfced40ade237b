r"""
Triangulated oriented surfaces as gluings of labelled triangles.

A triangulation is a list of triangles, each a triple of *slots*.  The slot
(t, i) is side i of triangle t, with sides listed in counterclockwise order,
so the cyclic order of the triple is the orientation.  Two slots glued to one
another form an edge; the gluing is a fixed-point-free involution on the set
of glued slots.  Because gluing two ccw sides automatically identifies them
with opposite boundary orientations, every complex this class can represent
is an oriented surface - orientability is structural, not checked.

Each edge carries a stable integer label shared by its two slots; weights of
normal curves live on these labels.  Slots left unglued are boundary sides.
The standard models built here are always fully glued:

* closed genus g >= 2: a one-vertex triangulation of the 4g-gon with the
  classical side word, triangulated pi-symmetrically (one long diagonal and
  two fans), so the half-rotation of the polygon survives as a combinatorial
  involution of the model;
* genus g >= 1 with punctures: the same complex with the vertex ideal, plus
  stellar subdivisions for extra punctures;
* genus 0 with h >= 3 punctures: the two-triangle sphere model plus
  subdivisions.

For ideal models the vertices are punctures and do not count toward the
Euler characteristic, so chi = T - E; for closed models chi = T - E + V.
Everything is immutable: flips and relabelings return new objects.
"""

from __future__ import annotations

import json
from functools import cached_property


class TopologyError(ValueError):
    """Raised for invalid gluing data or an inapplicable move."""


def _other(pair, x):
    return pair[1] if pair[0] == x else pair[0]


class Triangulation:
    """An oriented surface glued from labelled triangles.

    triangles: sequence of (e, e, e) edge labels, sides in ccw order.
    gluing: mapping slot -> slot pairing the two sides of each edge;
            an involution without fixed points on its domain.
    ideal: True when every vertex is a puncture (an ideal triangulation).
    """

    def __init__(self, triangles, gluing, ideal=False):
        self._triangles = tuple(tuple(t) for t in triangles)
        self._gluing = dict(gluing)
        self._ideal = bool(ideal)
        self._check()

    # -- construction-time validation ------------------------------------

    def _check(self):
        n = len(self._triangles)
        if n == 0:
            raise TopologyError("empty triangulation")
        for t in self._triangles:
            if len(t) != 3:
                raise TopologyError("triangle without exactly 3 sides: %r" % (t,))
            for e in t:
                if not isinstance(e, int) or e < 0:
                    raise TopologyError("edge labels must be non-negative ints")
        slots = {(t, i) for t in range(n) for i in range(3)}
        seen_labels = {}
        for s, p in self._gluing.items():
            if s not in slots or p not in slots:
                raise TopologyError("gluing mentions unknown slot")
            if s == p:
                raise TopologyError("slot glued to itself")
            if self._gluing.get(p) != s:
                raise TopologyError("gluing is not an involution")
            if self.edge_at(s) != self.edge_at(p):
                raise TopologyError(
                    "glued slots %r and %r carry different edge labels" % (s, p))
        # each label is carried by exactly one slot pair (or one boundary slot)
        for s in slots:
            lab = self.edge_at(s)
            seen_labels.setdefault(lab, []).append(s)
        for lab, carrier in seen_labels.items():
            if len(carrier) == 2:
                a, b = carrier
                if self._gluing.get(a) != b:
                    raise TopologyError("label %d used by unglued slot pair" % lab)
            elif len(carrier) == 1:
                if carrier[0] in self._gluing:
                    raise TopologyError("label %d glued to a third slot" % lab)
            else:
                raise TopologyError("label %d carried by %d slots" % (lab, len(carrier)))
        if not self._connected():
            raise TopologyError("triangulation is not connected")
        if self.euler_characteristic >= 0:
            raise TopologyError(
                "chi = %d >= 0; only hyperbolic-type surfaces are supported"
                % self.euler_characteristic)

    def _connected(self):
        n = len(self._triangles)
        seen = {0}
        todo = [0]
        while todo:
            t = todo.pop()
            for i in range(3):
                p = self._gluing.get((t, i))
                if p is not None and p[0] not in seen:
                    seen.add(p[0])
                    todo.append(p[0])
        return len(seen) == n

    # -- basic accessors ---------------------------------------------------

    @property
    def triangles(self):
        return self._triangles

    @property
    def ideal(self):
        return self._ideal

    @property
    def num_triangles(self):
        return len(self._triangles)

    def edge_at(self, slot):
        t, i = slot
        return self._triangles[t][i]

    def glued(self, slot):
        """The partner slot, or None for a boundary side."""
        return self._gluing.get(slot)

    def gluing_pairs(self):
        """Sorted list of slot pairs, one per interior edge."""
        return sorted({tuple(sorted((s, p))) for s, p in self._gluing.items()})

    @cached_property
    def edge_labels(self):
        labs = set()
        for t in self._triangles:
            labs.update(t)
        return tuple(sorted(labs))

    @cached_property
    def edge_index(self):
        return {lab: k for k, lab in enumerate(self.edge_labels)}

    @property
    def num_edges(self):
        return len(self.edge_labels)

    def slots_of_edge(self, label):
        out = [(t, i) for t in range(self.num_triangles) for i in range(3)
               if self._triangles[t][i] == label]
        if not out:
            raise TopologyError("no edge labelled %r" % (label,))
        return out

    def is_flippable(self, label):
        slots = self.slots_of_edge(label)
        return len(slots) == 2 and slots[0][0] != slots[1][0]

    # -- vertices ----------------------------------------------------------

    @cached_property
    def vertex_orbits(self):
        """Corners grouped by the vertex they sit at.

        Corner (t, j) lies between sides j and j+1 of triangle t (side i runs
        from corner i-1 to corner i).  Crossing a glued side identifies the
        corner at its start with the corner at the far side's end, which is
        what the two unions below encode.
        """
        n = self.num_triangles
        parent = {(t, j): (t, j) for t in range(n) for j in range(3)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for t in range(n):
            for j in range(3):
                p = self._gluing.get((t, (j + 1) % 3))
                if p is not None:
                    pt, pi = p
                    union((t, j), (pt, pi))
                p = self._gluing.get((t, j))
                if p is not None:
                    pt, pi = p
                    union((t, j), (pt, (pi - 1) % 3))
        groups = {}
        for c in parent:
            groups.setdefault(find(c), []).append(c)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values()))

    @property
    def num_vertices(self):
        return len(self.vertex_orbits)

    @cached_property
    def euler_characteristic(self):
        v = 0 if self._ideal else self.num_vertices
        return self.num_triangles - self.num_edges + v

    @property
    def num_punctures(self):
        return self.num_vertices if self._ideal else 0

    @property
    def genus(self):
        # chi = 2 - 2g - h for the underlying finite-type surface
        return (2 - self.euler_characteristic - self.num_punctures) // 2

    def vertex_links(self):
        """Normal coordinates of the link of each vertex.

        The link of v crosses each edge once per endpoint of the edge at v,
        and consists of one corner arc per corner at v, so it is a normal
        curve.  These are exactly the inessential normal curves on the
        standard models.
        """
        ends = {lab: [] for lab in self.edge_labels}
        corner_vertex = {}
        for k, orbit in enumerate(self.vertex_orbits):
            for c in orbit:
                corner_vertex[c] = k
        for s, p in self._gluing.items():
            if s < p:
                t, i = s
                lab = self.edge_at(s)
                # side i runs corner i-1 -> corner i
                ends[lab].append(corner_vertex[(t, (i - 1) % 3)])
                ends[lab].append(corner_vertex[(t, i)])
        for t in range(self.num_triangles):
            for i in range(3):
                if (t, i) not in self._gluing:
                    lab = self.edge_at((t, i))
                    ends[lab].append(corner_vertex[(t, (i - 1) % 3)])
                    ends[lab].append(corner_vertex[(t, i)])
        links = []
        for k in range(self.num_vertices):
            links.append(tuple(ends[lab].count(k) for lab in self.edge_labels))
        return tuple(links)

    # -- equality / hashing -------------------------------------------------

    def _key(self):
        return (self._ideal, self._triangles, tuple(self.gluing_pairs()))

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        kind = "ideal" if self._ideal else "closed"
        return "Triangulation(%s, g=%d, h=%d, T=%d, E=%d)" % (
            kind, self.genus, self.num_punctures,
            self.num_triangles, self.num_edges)

    # -- canonical form and isomorphism --------------------------------------

    def _bfs_form(self, start, rot, slot_weight=None):
        """Canonical encoding of the complex grown from one rooted corner.

        Returns (form, slot_map) where slot_map sends old slots to canonical
        (triangle, position) addresses.  Triangles are numbered in discovery
        order; a triangle discovered through a slot gets the rotation that
        puts that slot at position 0.  The form lists, for each canonical
        slot, the canonical address of its partner (or (-1,-1)), so equal
        forms mean isomorphic labelled-free complexes.
        """
        order = [start]
        rots = {start: rot}
        newid = {start: 0}
        k = 0
        tokens = []
        while k < len(order):
            t = order[k]
            r = rots[t]
            for pos in range(3):
                s = (t, (r + pos) % 3)
                p = self._gluing.get(s)
                if p is None:
                    tok = (-1, -1)
                else:
                    pt, pi = p
                    if pt not in newid:
                        newid[pt] = len(order)
                        rots[pt] = pi
                        order.append(pt)
                    tok = (newid[pt], (pi - rots[pt]) % 3)
                if slot_weight is not None:
                    tok = tok + (slot_weight(s),)
                tokens.append(tok)
            k += 1
        if len(order) != self.num_triangles:
            raise TopologyError("disconnected complex in canonical form")
        slot_map = {}
        for t, r in rots.items():
            for pos in range(3):
                slot_map[(t, (r + pos) % 3)] = (newid[t], pos)
        return tuple(tokens), slot_map

    def canonical_form(self, weights=None):
        """Lexicographically least BFS form over all rooted corners.

        With `weights` (a per-edge-label mapping) the form also separates
        different normal-coordinate decorations of the same complex.
        """
        sw = None
        if weights is not None:
            sw = lambda s: weights[self.edge_at(s)]
        best = None
        for t in range(self.num_triangles):
            for r in range(3):
                form, _ = self._bfs_form(t, r, sw)
                if best is None or form < best:
                    best = form
        return (self._ideal, best)

    def _min_form_maps(self):
        best = None
        maps = []
        for t in range(self.num_triangles):
            for r in range(3):
                form, m = self._bfs_form(t, r)
                if best is None or form < best:
                    best = form
                    maps = [m]
                elif form == best:
                    maps.append(m)
        return best, maps


class Relabeling:
    """An orientation-preserving isomorphism between two triangulations.

    Stored as a slot bijection; the induced edge bijection is derived and
    checked for consistency.  Composition is (f * g)(x) = f(g(x)).
    """

    def __init__(self, source, target, slot_map):
        self.source = source
        self.target = target
        self.slot_map = dict(slot_map)
        self.edge_map = {}
        for s, img in self.slot_map.items():
            a = source.edge_at(s)
            b = target.edge_at(img)
            if self.edge_map.setdefault(a, b) != b:
                raise TopologyError("slot map induces no edge bijection")
        self._check()

    def _check(self):
        src, tgt = self.source, self.target
        if src.num_triangles != tgt.num_triangles or src.ideal != tgt.ideal:
            raise TopologyError("relabeling between incompatible complexes")
        slots = {(t, i) for t in range(src.num_triangles) for i in range(3)}
        if set(self.slot_map) != slots or set(self.slot_map.values()) != slots:
            raise TopologyError("slot map is not a bijection on slots")
        if len(set(self.edge_map.values())) != len(self.edge_map):
            raise TopologyError("edge map is not injective")
        for t in range(src.num_triangles):
            # ccw order must be preserved: positions shift by a rotation
            imgs = [self.slot_map[(t, i)] for i in range(3)]
            if len({im[0] for im in imgs}) != 1:
                raise TopologyError("triangle split by slot map")
            if [imgs[(k + 1) % 3][1] for k in range(3)] != [(imgs[k][1] + 1) % 3 for k in range(3)]:
                raise TopologyError("slot map reverses orientation")
        for s in slots:
            p = src.glued(s)
            q = tgt.glued(self.slot_map[s])
            if (p is None) != (q is None):
                raise TopologyError("slot map breaks boundary structure")
            if p is not None and self.slot_map[p] != q:
                raise TopologyError("slot map does not commute with the gluing")

    def __eq__(self, other):
        return (isinstance(other, Relabeling)
                and self.source == other.source
                and self.target == other.target
                and self.slot_map == other.slot_map)

    def __hash__(self):
        return hash((self.source, self.target,
                     tuple(sorted(self.slot_map.items()))))

    def inverse(self):
        return Relabeling(self.target, self.source,
                          {v: k for k, v in self.slot_map.items()})

    def compose(self, other):
        """self after other (other.source -> self.target)."""
        if other.target != self.source:
            raise TopologyError("relabelings do not chain")
        return Relabeling(other.source, self.target,
                          {s: self.slot_map[v] for s, v in other.slot_map.items()})

    def is_edge_identity(self):
        return all(a == b for a, b in self.edge_map.items())


def isomorphism(tri1, tri2):
    """An orientation-preserving isomorphism tri1 -> tri2, or None.

    Deterministic: both sides are brought to their lexicographically least
    BFS canonical form and the witness is composed from the first root
    achieving it on each side.
    """
    if tri1.ideal != tri2.ideal:
        return None
    f1, m1 = tri1._min_form_maps()
    f2, m2 = tri2._min_form_maps()
    if f1 != f2:
        return None
    a = m1[0]
    b_inv = {v: k for k, v in m2[0].items()}
    return Relabeling(tri1, tri2, {s: b_inv[a[s]] for s in a})


def automorphisms(tri):
    """All combinatorial automorphisms (orientation-preserving)."""
    _, maps = tri._min_form_maps()
    base_inv = {v: k for k, v in maps[0].items()}
    out = []
    seen = set()
    for m in maps:
        slot_map = {s: base_inv[m[s]] for s in m}
        key = tuple(sorted(slot_map.items()))
        if key not in seen:
            seen.add(key)
            out.append(Relabeling(tri, tri, slot_map))
    return out


# -- the elementary move ----------------------------------------------------

def flip(tri, label):
    r"""Flip an interior edge: exchange the diagonal of its quadrilateral.

    The edge must have its two sides in distinct triangles (an edge inside a
    once-glued cone has no quadrilateral and is rejected, as are boundary
    sides).  With the quad drawn as below, the flipped edge keeps its label:

        +--------a--------+          +--------a--------+
        |               / |          | \               |
        |             /   |          |   \             |
        b          eps    d   -->    b    eps          d
        |         /       |          |       \         |
        |       /         |          |         \       |
        +--------c--------+          +--------c--------+

    Faces (eps,a,b), (eps,c,d) become (eps,b,c), (eps,d,a).  Returns the new
    triangulation; the input is unchanged.
    """
    slots = tri.slots_of_edge(label)
    if len(slots) != 2:
        raise TopologyError("cannot flip boundary edge %r" % (label,))
    s1, s2 = sorted(slots)
    (t1, i1), (t2, i2) = s1, s2
    if t1 == t2:
        raise TopologyError(
            "edge %r has both sides on one triangle; no quadrilateral to flip"
            % (label,))
    # sides of the quad, ccw from the diagonal in each face
    a_s = (t1, (i1 + 1) % 3)
    b_s = (t1, (i1 + 2) % 3)
    c_s = (t2, (i2 + 1) % 3)
    d_s = (t2, (i2 + 2) % 3)
    ea, eb = tri.edge_at(a_s), tri.edge_at(b_s)
    ec, ed = tri.edge_at(c_s), tri.edge_at(d_s)

    new_triangles = [list(t) for t in tri.triangles]
    new_triangles[t1][i1] = label
    new_triangles[t1][(i1 + 1) % 3] = eb
    new_triangles[t1][(i1 + 2) % 3] = ec
    new_triangles[t2][i2] = label
    new_triangles[t2][(i2 + 1) % 3] = ed
    new_triangles[t2][(i2 + 2) % 3] = ea

    # where each old quad slot ends up
    move = {a_s: (t2, (i2 + 2) % 3),
            b_s: (t1, (i1 + 1) % 3),
            c_s: (t1, (i1 + 2) % 3),
            d_s: (t2, (i2 + 1) % 3)}
    new_gluing = {}
    for s, p in tri._gluing.items():
        new_gluing[move.get(s, s)] = move.get(p, p)
    return Triangulation(new_triangles, new_gluing, tri.ideal)


def flip_square_relabeling(tri, label):
    """The relabeling rho with flip(flip(T,e)) = rho applied to T.

    rho swaps the two quad triangles slot-for-slot and is the identity on
    edge labels; it is its own inverse.  Needed to invert a flip move.
    """
    slots = tri.slots_of_edge(label)
    if len(slots) != 2 or slots[0][0] == slots[1][0]:
        raise TopologyError("edge %r is not flippable" % (label,))
    (t1, i1), (t2, i2) = sorted(slots)
    double = flip(flip(tri, label), label)
    slot_map = {}
    for t in range(tri.num_triangles):
        for i in range(3):
            slot_map[(t, i)] = (t, i)
    for k in range(3):
        slot_map[(t1, (i1 + k) % 3)] = (t2, (i2 + k) % 3)
        slot_map[(t2, (i2 + k) % 3)] = (t1, (i1 + k) % 3)
    rho = Relabeling(double, tri, slot_map)
    if not rho.is_edge_identity():
        raise TopologyError("flip square relabeling moved an edge label")
    return rho


# -- standard models ---------------------------------------------------------

def _polygon_model(g, ideal):
    """One-vertex triangulation of the 4g-gon with the classical side word,
    cut pi-symmetrically: the long diagonal 0--2g plus a fan in each half.
    The half-rotation of the polygon is then a combinatorial involution.
    """
    n = 4 * g
    # edge labels: polygon side classes 0..2g-1, long diagonal 2g, then fans
    def side_class(i):
        j, r = divmod(i, 4)
        if r in (0, 2):
            return 2 * j
        return 2 * j + 1

    LONG = 2 * g
    fan1 = {i: LONG if i == 2 * g else (2 * g + 1 + (i - 2)) for i in range(2, 2 * g + 1)}
    fan1[1] = side_class(0)
    fan2 = {i: (4 * g - 1 + (i - (2 * g + 2))) for i in range(2 * g + 2, 4 * g)}
    fan2[2 * g + 1] = side_class(2 * g)
    fan2[4 * g] = LONG

    triangles = []
    side_slot = {}
    for k in range(1, 2 * g):           # half 1: triangles (0, k, k+1)
        tidx = len(triangles)
        triangles.append((fan1[k], side_class(k), fan1[k + 1]))
        side_slot[k] = (tidx, 1)
        if k == 1:
            side_slot[0] = (tidx, 0)
    for k in range(2 * g + 1, 4 * g):   # half 2: triangles (2g, k, k+1)
        tidx = len(triangles)
        triangles.append((fan2[k], side_class(k), fan2[k + 1]))
        side_slot[k] = (tidx, 1)
        if k == 2 * g + 1:
            side_slot[2 * g] = (tidx, 0)

    gluing = {}

    def glue(s, p):
        gluing[s] = p
        gluing[p] = s

    for k in range(2, 2 * g):
        glue((k - 2, 2), (k - 1, 0))          # fan1 diagonals
    for k in range(2 * g + 2, 4 * g):
        glue((k - 3, 2), (k - 2, 0))          # fan2 diagonals (offset indices)
    glue((2 * g - 2, 2), (len(triangles) - 1, 2))   # long diagonal
    for j in range(g):
        glue(side_slot[4 * j], side_slot[4 * j + 2])
        glue(side_slot[4 * j + 1], side_slot[4 * j + 3])
    return Triangulation(triangles, gluing, ideal)


def _sphere_model():
    """Two ideal triangles glued to the thrice-punctured sphere."""
    triangles = [(0, 1, 2), (0, 2, 1)]
    gluing = {}
    for i, j in (((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))):
        gluing[i] = j
        gluing[j] = i
    return Triangulation(triangles, gluing, ideal=True)


def _subdivide(tri, t=0):
    """Stellar subdivision of triangle t: a new ideal vertex inside it."""
    if not tri.ideal:
        raise TopologyError("subdivision is used for punctured models only")
    base = max(tri.edge_labels) + 1
    n0, n1, n2 = base, base + 1, base + 2
    new = [list(x) for x in tri.triangles]
    sides = tri.triangles[t]
    new[t] = [sides[0], n0, n2]
    f1 = len(new)
    new.append([sides[1], n1, n0])
    f2 = len(new)
    new.append([sides[2], n2, n1])
    faces = (t, f1, f2)
    move = {(t, 1): (f1, 0), (t, 2): (f2, 0)}
    gluing = {}
    for s, p in tri._gluing.items():
        gluing[move.get(s, s)] = move.get(p, p)
    for i in range(3):
        a = (faces[i], 1)
        b = (faces[(i + 1) % 3], 2)
        gluing[a] = b
        gluing[b] = a
    return Triangulation(new, gluing, ideal=True)


def build_surface(genus, punctures):
    """The standard model of the surface of this genus and puncture count.

    Rejects chi >= 0.  Closed models have a single (real) vertex; punctured
    models are ideal with one vertex per puncture.
    """
    g, h = int(genus), int(punctures)
    if g < 0 or h < 0:
        raise TopologyError("genus and puncture count must be non-negative")
    chi = 2 - 2 * g - h
    if chi >= 0:
        raise TopologyError(
            "surface (g=%d, h=%d) has chi = %d >= 0; no model" % (g, h, chi))
    if g == 0:
        tri = _sphere_model()
        for _ in range(h - 3):
            tri = _subdivide(tri)
    elif h == 0:
        tri = _polygon_model(g, ideal=False)
        if tri.num_vertices != 1:
            raise TopologyError("closed model failed to close to one vertex")
    else:
        tri = _polygon_model(g, ideal=True)
        if tri.num_vertices != 1:
            raise TopologyError("punctured base model must have one vertex")
        for _ in range(h - 1):
            tri = _subdivide(tri)
    if tri.euler_characteristic != chi:
        raise TopologyError("model chi mismatch: %d != %d"
                            % (tri.euler_characteristic, chi))
    if tri.genus != g or tri.num_punctures != h:
        raise TopologyError("model signature mismatch")
    return tri


# -- serialization ------------------------------------------------------------

def triangulation_to_json(tri):
    data = {
        "ideal": tri.ideal,
        "triangles": [list(t) for t in tri.triangles],
        "gluing": [[list(a), list(b)] for a, b in tri.gluing_pairs()],
        "labels": list(tri.edge_labels),
    }
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def triangulation_from_json(text):
    data = json.loads(text)
    gluing = {}
    for a, b in data["gluing"]:
        a = tuple(a)
        b = tuple(b)
        gluing[a] = b
        gluing[b] = a
    tri = Triangulation(data["triangles"], gluing, data.get("ideal", False))
    if sorted(data.get("labels", tri.edge_labels)) != list(tri.edge_labels):
        raise TopologyError("label block disagrees with triangle data")
    return tri
