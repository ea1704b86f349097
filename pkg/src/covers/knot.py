"""Knot diagram notation, Wirtinger presentations, and cyclic homomorphisms.

Planar-diagram convention (pinned once, used everywhere): a crossing token
``X[i,j,k,l]`` lists the four incident arc labels counterclockwise starting
from the incoming under-strand, so the under-strand runs i -> k and the
over-strand occupies slots j and l.  Arc labels are the edges of the diagram
(segments between crossings); each label appears exactly twice.  The
direction of the over-strand is recovered from global consistency (every
edge has one start and one end); the crossing sign is +1 when the
over-strand runs l -> j and -1 when it runs j -> l.  An explicit
``sign=+``/``sign=-`` suffix may resolve crossings the solver leaves free.

Braid words use ``s<k>`` / ``s<k>^-1`` tokens; the closure of the braid is
taken and must be a single component in knot mode.

Wirtinger arcs (the generators) are the over-arcs: classes of edges merged
across over-strands.  Generators are named a, b, c, ... in order of their
smallest edge label, so the meridian, the generator of the arc of edge 1,
is always the first generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .presentation import Presentation, abelian_invariants
from .words import Word


class ParseError(ValueError):
    pass


class LinkClosureError(ValueError):
    """The input closes to a link with more than one component."""


class MultiComponentError(ValueError):
    """The diagram is a link, not a knot."""


@dataclass(frozen=True)
class KnotDiagram:
    """Crossings as ((i, j, k, l), sign) tuples plus the number of arc labels."""

    crossings: tuple[tuple[tuple[int, int, int, int], int], ...]
    n_arcs: int

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def is_unknot_diagram(self) -> bool:
        return not self.crossings

    def successor(self) -> dict[int, int]:
        """Next edge along the knot after each edge; raises on inconsistency."""
        succ: dict[int, int] = {}

        def step(src: int, dst: int):
            if src in succ:
                raise ParseError(f"edge {src} has two successors: diagram is inconsistent")
            succ[src] = dst

        for (i, j, k, l), sign in self.crossings:
            step(i, k)
            if sign > 0:
                step(l, j)
            else:
                step(j, l)
        if self.crossings:
            labels = {x for (quad, _s) in self.crossings for x in quad}
            if set(succ) != labels or {v for v in succ.values()} != labels:
                raise ParseError("diagram orientation is inconsistent")
        return succ

    def component_count(self) -> int:
        if not self.crossings:
            return 1
        succ = self.successor()
        seen: set[int] = set()
        count = 0
        for start in sorted(succ):
            if start in seen:
                continue
            count += 1
            c = start
            while c not in seen:
                seen.add(c)
                c = succ[c]
        return count


@dataclass(frozen=True)
class WirtingerData:
    """Knot group data: arc presentation, distinguished meridian, longitude."""

    pres: Presentation
    meridian: int
    longitude: Word
    writhe: int


_X_TOKEN = re.compile(r"^X\[(\d+),(\d+),(\d+),(\d+)\](?:sign=([+-]))?$")


def _validate_arc_labels(quads) -> int:
    counts: dict[int, int] = {}
    for quad in quads:
        for x in quad:
            counts[x] = counts.get(x, 0) + 1
    n_arcs = max(counts)
    bad = sorted(x for x in range(1, n_arcs + 1) if counts.get(x, 0) != 2)
    extra = sorted(x for x in counts if x < 1 or x > n_arcs)
    if bad or extra:
        raise ParseError(f"arc labels must be 1..{n_arcs}, each appearing exactly twice; offending labels: {bad + extra}")
    return n_arcs


def _solve_orientation(quads, forced_signs) -> list[int]:
    """Assign a sign to each crossing so every edge has one start and one end.

    Roles: slot 0 (under-in) is an end, slot 2 (under-out) a start; at each
    crossing exactly one of slots 1, 3 is an end.  sign=+1 means slot 3 is
    the end (over-strand l -> j).
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(quads):
        for slot, x in enumerate(quad):
            occ.setdefault(x, []).append((ci, slot))

    role: dict[tuple[int, int], bool] = {}  # True = end

    def assign(ci: int, slot: int, is_end: bool, todo: list):
        cur = role.get((ci, slot))
        if cur is not None:
            if cur != is_end:
                raise ParseError(f"crossing {ci + 1}: inconsistent orientation")
            return
        role[(ci, slot)] = is_end
        todo.append((ci, slot))

    todo: list[tuple[int, int]] = []
    for ci, quad in enumerate(quads):
        assign(ci, 0, True, todo)
        assign(ci, 2, False, todo)
        if forced_signs[ci] is not None:
            assign(ci, 3, forced_signs[ci] > 0, todo)
            assign(ci, 1, forced_signs[ci] < 0, todo)
    while todo:
        batch = todo
        todo = []
        for ci, slot in batch:
            is_end = role[(ci, slot)]
            # partner occurrence of the same edge has the opposite role
            x = quads[ci][slot]
            for cj, sj in occ[x]:
                if (cj, sj) != (ci, slot):
                    assign(cj, sj, not is_end, todo)
            # the over slots of one crossing have opposite roles
            if slot in (1, 3):
                assign(ci, 4 - slot, not is_end, todo)
        if not todo:
            # resolve the first undetermined over-pair and keep propagating
            for ci, quad in enumerate(quads):
                if (ci, 3) not in role:
                    assign(ci, 3, True, todo)
                    assign(ci, 1, False, todo)
                    break

    signs = []
    for ci in range(len(quads)):
        signs.append(1 if role[(ci, 3)] else -1)
        if forced_signs[ci] is not None and signs[-1] != forced_signs[ci]:
            raise ParseError(f"crossing {ci + 1}: stated sign contradicts the orientation")
    return signs


def parse_pd(text: str) -> KnotDiagram:
    """Parse whitespace-separated X[a,b,c,d] tokens (or the literal ``unknot``)."""
    tokens = text.split()
    if not tokens:
        raise ParseError("empty input: give X[...] tokens or the literal 'unknot'")
    if tokens == ["unknot"]:
        return KnotDiagram((), 1)
    quads = []
    forced = []
    for pos, tok in enumerate(tokens):
        m = _X_TOKEN.match(tok)
        if not m:
            raise ParseError(f"token {pos + 1}: cannot parse {tok!r} (expected X[a,b,c,d])")
        quads.append(tuple(int(m.group(i)) for i in range(1, 5)))
        forced.append(None if m.group(5) is None else (1 if m.group(5) == "+" else -1))
    n_arcs = _validate_arc_labels(quads)
    signs = _solve_orientation(quads, forced)
    diagram = KnotDiagram(tuple(zip(quads, signs)), n_arcs)
    diagram.successor()
    return diagram


_BRAID_TOKEN = re.compile(r"^s(\d+)(?:\^(-1))?$")


def parse_braid(text: str) -> KnotDiagram:
    """Closure of a braid word; rejects multi-component closures."""
    tokens = text.split()
    if not tokens:
        raise ParseError("empty braid word")
    letters: list[int] = []
    for pos, tok in enumerate(tokens):
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise ParseError(f"token {pos + 1}: cannot parse {tok!r} (expected s<k> or s<k>^-1)")
        k = int(m.group(1))
        if k < 1:
            raise ParseError(f"token {pos + 1}: strand index must be >= 1")
        letters.append(-k if m.group(2) else k)

    n_strands = max(abs(x) for x in letters) + 1
    perm = list(range(n_strands))
    for x in letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = set()
    cycles = 0
    for s in range(n_strands):
        if s not in seen:
            cycles += 1
            c = s
            while c not in seen:
                seen.add(c)
                c = perm[c]
    if cycles != 1:
        raise LinkClosureError(f"braid closure has {cycles} components")

    current = list(range(1, n_strands + 1))
    nxt = n_strands + 1
    crossings = []
    for x in letters:
        i = abs(x) - 1
        a, b = current[i], current[i + 1]
        c, d = nxt, nxt + 1
        nxt += 2
        if x > 0:
            crossings.append(((a, c, d, b), 1))
        else:
            crossings.append(((b, a, c, d), -1))
        current[i], current[i + 1] = c, d

    # close up: identify each bottom edge with the top edge of its strand
    parent = list(range(nxt))

    def find(z: int) -> int:
        while parent[z] != z:
            parent[z] = parent[parent[z]]
            z = parent[z]
        return z

    for p in range(n_strands):
        ra, rb = find(current[p]), find(p + 1)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    relabel: dict[int, int] = {}
    quads = []
    for quad, sign in crossings:
        new = []
        for x in quad:
            r = find(x)
            if r not in relabel:
                relabel[r] = len(relabel) + 1
            new.append(relabel[r])
        quads.append(((new[0], new[1], new[2], new[3]), sign))
    diagram = KnotDiagram(tuple(quads), len(relabel))
    diagram.successor()
    return diagram


BUILTIN_KNOTS = {
    "unknot": "unknot",
    "trefoil": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "figure-eight": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
}
BUILTIN_ALIASES = {"3_1": "trefoil", "4_1": "figure-eight", "figure8": "figure-eight"}


def builtin_diagram(name: str) -> KnotDiagram:
    key = BUILTIN_ALIASES.get(name, name)
    if key not in BUILTIN_KNOTS:
        known = ", ".join(sorted(BUILTIN_KNOTS))
        raise ParseError(f"unknown builtin knot {name!r} (available: {known})")
    return parse_pd(BUILTIN_KNOTS[key])


def _gen_name(idx: int) -> str:
    if idx < 26:
        return "abcdefghijklmnopqrstuvwxyz"[idx]
    return f"g{idx + 1}"


def wirtinger(d: KnotDiagram) -> WirtingerData:
    """Arc presentation of the knot group with meridian and longitude.

    One generator per over-arc, one conjugation relator per crossing with the
    last nontrivial relator dropped as redundant.  The longitude records the
    over-arc generator (to the crossing sign) at each under-pass along the
    knot, starting on the meridian's arc, and is corrected by
    meridian^(-writhe) so its exponent sum is zero.
    """
    if d.is_unknot_diagram:
        return WirtingerData(Presentation(("a",), ()), 1, Word(), 0)

    if d.component_count() != 1:
        raise MultiComponentError(f"diagram has {d.component_count()} components")

    # over-arcs: merge the two over slots of every crossing
    n = d.n_arcs
    parent = list(range(n + 1))

    def find(z: int) -> int:
        while parent[z] != z:
            parent[z] = parent[parent[z]]
            z = parent[z]
        return z

    for (quad, _sign) in d.crossings:
        _i, j, _k, l = quad
        rj, rl = find(j), find(l)
        if rj != rl:
            parent[max(rj, rl)] = min(rj, rl)

    reps = sorted({find(x) for x in range(1, n + 1)})
    arc_index = {rep: i + 1 for i, rep in enumerate(reps)}

    def arc_of(edge: int) -> int:
        return arc_index[find(edge)]

    names = tuple(_gen_name(i) for i in range(len(reps)))
    relators = []
    writhe = 0
    for (quad, sign) in d.crossings:
        i, j, k, l = quad
        writhe += sign
        u_in, u_out, over = arc_of(i), arc_of(k), arc_of(j)
        if sign > 0:
            rel = Word([over, u_in, -over, -u_out])
        else:
            rel = Word([-over, u_in, over, -u_out])
        if rel:
            relators.append(rel)
    if relators:
        relators.pop()

    pres = Presentation(names, relators)
    meridian = arc_of(1)
    if meridian != 1:
        raise AssertionError("arc classes are ordered by smallest edge, so edge 1 is arc 1")

    # longitude: walk the knot from the first edge of arc 1
    succ = d.successor()
    under_at: dict[int, int] = {}  # edge ending at an under-pass -> crossing
    for ci, (quad, _sign) in enumerate(d.crossings):
        under_at[quad[0]] = ci
    under_out = {quad[2] for quad, _s in d.crossings}
    start = next(e for e in range(1, n + 1) if arc_of(e) == 1 and e in under_out)
    letters: list[int] = []
    cur = start
    while True:
        if cur in under_at:
            ci = under_at[cur]
            quad, sign = d.crossings[ci]
            over = arc_of(quad[1])
            letters.append(over if sign > 0 else -over)
        cur = succ[cur]
        if cur == start:
            break
    letters.extend([meridian if writhe < 0 else -meridian] * abs(writhe))
    longitude = Word(letters)

    data = WirtingerData(pres, meridian, longitude, writhe)
    inv = abelian_invariants(pres)
    if inv.free_rank != 1 or inv.torsion:
        raise ParseError("diagram does not present a knot group (abelianisation is not Z)")
    # every over-arc is conjugate to the meridian, so after the writhe
    # correction the total exponent sum of the longitude must vanish
    total = sum(longitude.exponent_sum(g) for g in range(1, pres.n_generators + 1))
    if total != 0:
        raise AssertionError("longitude exponent sum is nonzero")
    return data


def linking_hom(w: WirtingerData, n: int) -> dict[int, tuple[int, ...]]:
    """Send every arc generator to the 1-step rotation of the regular Z/n action."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    rot = tuple((i + 1) % n for i in range(n))
    return {g: rot for g in range(1, w.pres.n_generators + 1)}
