"""Recognition of small finite groups by structural probes.

A closed coset table over the trivial subgroup is the regular action of the
group on itself, so cosets are elements and generator columns multiply.
Identification is a short decision list covering the groups this pipeline
actually produces (cyclic groups, Q8, SL(2,3), SL(2,5), finite abelian
groups); anything else is reported as unrecognised with its order.
"""

from __future__ import annotations

from .abelian import FinGenAbelianGroup
from .coset_table import CosetTable, TableNotClosedError, perm_mul
from .presentation import Presentation

IDENTIFY_MAX_ORDER = 10**4


class ConcreteFiniteGroup:
    """Elements 0..n-1 with multiplication read off a regular coset table."""

    def __init__(self, table: CosetTable):
        self._table = table
        self.order = table.n_cosets
        self._words = self._element_words()

    def _element_words(self) -> list[tuple[int, ...]]:
        words: list[tuple[int, ...] | None] = [None] * self.order
        words[0] = ()
        queue = [0]
        qi = 0
        letters = []
        for g in range(1, self._table.ngens + 1):
            letters.extend((g, -g))
        while qi < len(queue):
            c = queue[qi]
            qi += 1
            for x in letters:
                d = self._table.action(c, x)
                if words[d] is None:
                    words[d] = words[c] + (x,)
                    queue.append(d)
        if any(w is None for w in words):
            raise TableNotClosedError("regular table is not transitive")
        return words  # type: ignore[return-value]

    @property
    def identity(self) -> int:
        return 0

    def mult(self, x: int, y: int) -> int:
        return self._table.trace(x, self._words[y])

    def inverse(self, x: int) -> int:
        return self._table.trace(0, tuple(-v for v in reversed(self._words[x])))

    def element_order(self, x: int) -> int:
        k = 1
        y = x
        while y != 0:
            y = self.mult(y, x)
            k += 1
        return k

    def involution_count(self) -> int:
        return sum(1 for x in range(1, self.order) if self.mult(x, x) == 0)

    def is_cyclic(self) -> bool:
        return any(self.element_order(x) == self.order for x in range(self.order))

    def is_abelian(self) -> bool:
        perms = [self._table.permutation(g) for g in range(1, self._table.ngens + 1)]
        return all(perm_mul(p, q) == perm_mul(q, p) for p in perms for q in perms)

    def center_order(self) -> int:
        # commuting with every generator is enough
        gens = range(1, self._table.ngens + 1)
        count = 0
        for x in range(self.order):
            if all(self._table.action(x, g) == self.mult(self._table.action(0, g), x) for g in gens):
                count += 1
        return count

    def multiplication_table(self) -> list[list[int]]:
        return [[self.mult(x, y) for y in range(self.order)] for x in range(self.order)]


def materialize(t: CosetTable, p: Presentation | None = None) -> ConcreteFiniteGroup:
    """Elements and multiplication from a regular (trivial-subgroup) table."""
    if p is not None and p.n_generators != t.ngens:
        raise ValueError("table does not match the presentation")
    return ConcreteFiniteGroup(t)


def abelian_label(h1: FinGenAbelianGroup) -> str:
    parts = ["Z"] * h1.free_rank + [f"Z/{d}" for d in h1.torsion]
    return " x ".join(parts) if parts else "trivial"


def identify_group(g: ConcreteFiniteGroup, h1: FinGenAbelianGroup) -> str:
    """Decision-list identification given the group and its abelianisation."""
    n = g.order
    if n == 1:
        return "trivial"
    if g.is_cyclic():
        return f"Z/{n}"
    if n == 8 and g.involution_count() == 1:
        return "Q8"
    if n == 24 and h1.free_rank == 0 and h1.torsion == (3,) and g.involution_count() == 1:
        return "SL(2,3)"
    if n == 120 and h1.is_trivial and g.center_order() == 2:
        return "SL(2,5)"
    if g.is_abelian():
        return abelian_label(h1)
    return f"unrecognized(order={n})"
