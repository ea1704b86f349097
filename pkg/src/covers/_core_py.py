"""Pure-Python coset enumeration core.

Interchangeable with the compiled extension ``covers._core``; both implement
the identical deterministic algorithm so that tables, definition counts and
step counts agree exactly.

Column encoding: generator g (1-based) acts through column 2*(g-1), its
inverse through column 2*(g-1)+1; the inverse of column x is x^1.

Strategies:
  * felsch: define the first undefined table entry, then close under
    deductions (scans of relator rotations anchored at new edges), with
    coincidences handled by union-find with path compression.
  * hlt: trace every relator through every live coset, filling gaps, then
    fill the rest of the row by new definitions.

Both finish with clean verification sweeps, so a returned table is a genuine
closed coset table.  A "step" is one scan of a word plus one unit per coset
definition; limits are checked against total definitions and total steps.
"""

from __future__ import annotations

UNDEF = -1


class _LimitReached(Exception):
    def __init__(self, limit: str):
        self.limit = limit


def _build_rotations(relators):
    """Distinct cyclic rotations of each relator, grouped by first column."""
    seen = set()
    rotations = []
    for r in relators:
        n = len(r)
        for i in range(n):
            rot = r[i:] + r[:i]
            if rot not in seen:
                seen.add(rot)
                rotations.append(rot)
    return rotations


def enumerate_core(ncols, relators, subgroup_words, max_cosets, max_steps, felsch):
    """Run the enumeration; returns (closed, rows, defined, steps, limit).

    ``rows`` is a list of row-tuples over live cosets (renumbered in order of
    definition) when closed, else None.
    """
    relators = [tuple(r) for r in relators]
    subgroup_words = [tuple(w) for w in subgroup_words if w]

    table = [UNDEF] * ncols  # flat, stride ncols; coset 0 = the subgroup
    parent = [0]
    state = {"defined": 1, "steps": 0, "merges": 0}
    dedstack = []

    edp = [[] for _ in range(ncols)]
    if felsch:
        for rot in _build_rotations(relators):
            edp[rot[0]].append(rot)

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def define(c, x):
        if state["defined"] >= max_cosets:
            raise _LimitReached("max_cosets")
        state["defined"] += 1
        state["steps"] += 1
        if state["steps"] > max_steps:
            raise _LimitReached("max_steps")
        b = len(parent)
        parent.append(b)
        table.extend([UNDEF] * ncols)
        table[c * ncols + x] = b
        table[b * ncols + (x ^ 1)] = c
        if felsch:
            dedstack.append((c, x))
            dedstack.append((b, x ^ 1))
        return b

    def coincide(a, b):
        queue = []

        def merge(c, d):
            c, d = find(c), find(d)
            if c != d:
                if c > d:
                    c, d = d, c
                parent[d] = c
                state["merges"] += 1
                queue.append(d)

        merge(a, b)
        qi = 0
        while qi < len(queue):
            dead = queue[qi]
            qi += 1
            base = dead * ncols
            for x in range(ncols):
                delta = table[base + x]
                if delta == UNDEF:
                    continue
                table[base + x] = UNDEF
                table[delta * ncols + (x ^ 1)] = UNDEF
                mu = find(dead)
                nu = find(delta)
                e1 = table[mu * ncols + x]
                if e1 != UNDEF:
                    merge(nu, e1)
                else:
                    e2 = table[nu * ncols + (x ^ 1)]
                    if e2 != UNDEF:
                        merge(mu, e2)
                    else:
                        table[mu * ncols + x] = nu
                        table[nu * ncols + (x ^ 1)] = mu
                        if felsch:
                            dedstack.append((mu, x))
                            dedstack.append((nu, x ^ 1))

    def scan(a, w, fill):
        """Trace word w from coset a; fill gaps by definitions when asked."""
        state["steps"] += 1
        if state["steps"] > max_steps:
            raise _LimitReached("max_steps")
        m = len(w)
        i, j = 0, m - 1
        f = b = a
        while True:
            while i <= j:
                nxt = table[f * ncols + w[i]]
                if nxt == UNDEF:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    coincide(f, b)
                return
            while j >= i:
                nxt = table[b * ncols + (w[j] ^ 1)]
                if nxt == UNDEF:
                    break
                b = nxt
                j -= 1
            if j < i:
                coincide(f, b)
                return
            if j == i:
                table[f * ncols + w[i]] = b
                table[b * ncols + (w[i] ^ 1)] = f
                if felsch:
                    dedstack.append((f, w[i]))
                    dedstack.append((b, w[i] ^ 1))
                return
            if not fill:
                return
            define(f, w[i])

    def process_deductions():
        while dedstack:
            c, x = dedstack.pop()
            if parent[c] != c:
                continue
            for rot in edp[x]:
                scan(c, rot, False)
                if parent[c] != c:
                    break

    def run_felsch():
        process_deductions()
        alpha = 0
        while alpha < len(parent):
            if parent[alpha] != alpha:
                alpha += 1
                continue
            base = alpha * ncols
            gap = UNDEF
            for x in range(ncols):
                if table[base + x] == UNDEF:
                    gap = x
                    break
            if gap == UNDEF:
                alpha += 1
                continue
            define(alpha, gap)
            process_deductions()

    def run_hlt():
        alpha = 0
        while alpha < len(parent):
            if parent[alpha] != alpha:
                alpha += 1
                continue
            for r in relators:
                scan(alpha, r, True)
                if parent[alpha] != alpha:
                    break
            if parent[alpha] == alpha:
                base = alpha * ncols
                for x in range(ncols):
                    if table[base + x] == UNDEF:
                        define(alpha, x)
            alpha += 1

    limit = None
    try:
        for w in subgroup_words:
            scan(find(0), w, True)
        while True:
            if felsch:
                run_felsch()
            else:
                run_hlt()
            # verification sweep: on a total table these scans only check
            # closure; any coincidence sends us back to the main loop
            merges_before = state["merges"]
            for w in subgroup_words:
                scan(find(0), w, False)
            c = 0
            while c < len(parent):
                if parent[c] == c:
                    for r in relators:
                        scan(c, r, False)
                        if parent[c] != c:
                            break
                c += 1
            if state["merges"] != merges_before:
                continue
            total = all(
                table[c * ncols + x] != UNDEF
                for c in range(len(parent))
                if parent[c] == c
                for x in range(ncols)
            )
            if total:
                break
    except _LimitReached as exc:
        limit = exc.limit

    if limit is not None:
        return False, None, state["defined"], state["steps"], limit

    # compact: renumber live cosets in definition order
    live = [c for c in range(len(parent)) if parent[c] == c]
    remap = {c: i for i, c in enumerate(live)}
    rows = []
    for c in live:
        base = c * ncols
        rows.append(tuple(remap[find(table[base + x])] for x in range(ncols)))
    return True, rows, state["defined"], state["steps"], None
