"""Subgroup presentations and word rewriting from a closed coset table.

Given a presentation and the coset table of a finite-index subgroup, this
produces generators and relators for the subgroup itself: one generator per
non-tree edge of the breadth-first spanning tree of the coset graph, and one
relator for every (coset, ambient relator) pair, rewritten through the
transversal.  Words known to lie in the subgroup can be rewritten into the
subgroup's own alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coset_table import CosetTable
from .presentation import Presentation
from .words import Word


class NotInSubgroupError(ValueError):
    """The word does not stabilise coset 0, so it lies outside the subgroup."""


@dataclass(frozen=True)
class RewritingData:
    """Everything needed to rewrite ambient words into subgroup generators.

    ``transversal[c]`` is the breadth-first (hence prefix-closed, minimal
    length) coset representative word; ``subgroup_generator_words[k]`` is the
    ambient word t_c * g * t_{c.g}^-1 of the k-th subgroup generator; and
    ``schreier_index[(c, g)]`` maps a non-tree edge to that 1-based index.
    """

    table: CosetTable
    transversal: tuple[Word, ...]
    subgroup_generator_words: tuple[Word, ...]
    schreier_index: dict[tuple[int, int], int]

    def rewrite_letters(self, start: int, word) -> tuple[list[int], int]:
        """Trace ``word`` from ``start``, emitting subgroup letters; returns
        (letters, endpoint)."""
        out: list[int] = []
        c = start
        for x in word:
            g = abs(x)
            if x > 0:
                s = self.schreier_index.get((c, g), 0)
                if s:
                    out.append(s)
                c = self.table.action(c, g)
            else:
                d = self.table.action(c, x)
                s = self.schreier_index.get((d, g), 0)
                if s:
                    out.append(-s)
                c = d
        return out, c


def _column_sequence(ngens: int, reverse: bool = False):
    cols = []
    for g in range(1, ngens + 1):
        cols.append(g)
        cols.append(-g)
    return tuple(reversed(cols)) if reverse else tuple(cols)


def rewrite_presentation(
    p: Presentation,
    table: CosetTable,
    *,
    _reverse_transversal: bool = False,
) -> tuple[Presentation, RewritingData]:
    """Presentation of the subgroup whose coset table is ``table``.

    Raw output: generators are the Schreier generators not absorbed by the
    spanning tree, relators are the rewritten transversal conjugates of p's
    relators.  No simplification is applied here; callers that report
    presentations pass the result through tietze_simplify.

    The private flag picks the opposite column order when growing the
    spanning tree; results present the same group (used to test transversal
    independence).
    """
    if table.ngens != p.n_generators:
        raise ValueError("table was not derived from this presentation")
    n = table.n_cosets
    letters = _column_sequence(p.n_generators, _reverse_transversal)

    # breadth-first spanning tree -> transversal and tree edges
    transversal: list[Word | None] = [None] * n
    transversal[0] = Word()
    tree_edges: set[tuple[int, int]] = set()
    queue = [0]
    qi = 0
    while qi < len(queue):
        c = queue[qi]
        qi += 1
        for x in letters:
            d = table.action(c, x)
            if transversal[d] is None:
                transversal[d] = transversal[c] * Word([x])
                tree_edges.add((c, abs(x)) if x > 0 else (d, abs(x)))
                queue.append(d)

    schreier_index: dict[tuple[int, int], int] = {}
    gen_words: list[Word] = []
    names: list[str] = []
    for c in range(n):
        for g in range(1, p.n_generators + 1):
            if (c, g) in tree_edges:
                continue
            d = table.action(c, g)
            schreier_index[(c, g)] = len(gen_words) + 1
            gen_words.append(transversal[c] * Word([g]) * transversal[d].inverse())
            names.append(f"x{len(gen_words)}")

    data = RewritingData(
        table=table,
        transversal=tuple(transversal),
        subgroup_generator_words=tuple(gen_words),
        schreier_index=schreier_index,
    )

    relators = []
    for c in range(n):
        for r in p.relators:
            out, end = data.rewrite_letters(c, r)
            if end != c:
                raise ValueError("relator does not fix a coset: table is corrupt")
            w = Word(out)
            if w:
                relators.append(w)
    sub = Presentation(names, relators)
    return sub, data


def rewrite_word(data: RewritingData, w: Word) -> Word:
    """Rewrite an element of the subgroup into subgroup generators."""
    out, end = data.rewrite_letters(0, w)
    if end != 0:
        raise NotInSubgroupError(f"word moves coset 0 to {end}")
    return Word(out)
