"""Coset tables and Todd-Coxeter enumeration.

The enumeration kernel has two interchangeable implementations: a compiled
extension (``covers._core``) and a pure-Python twin (``covers._core_py``).
The compiled one is picked at import time when available; set the
environment variable ``COVERS_PURE_PYTHON=1`` to force the fallback.

Closed tables are immutable, validated, and normalised: cosets are
relabelled breadth-first from coset 0 (the subgroup), following generator
columns in order, so equal subgroups give byte-identical tables regardless
of strategy.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Sequence

from .presentation import Presentation
from .words import Word

if os.environ.get("COVERS_PURE_PYTHON"):
    from . import _core_py as _engine

    ENGINE = "pure"
else:
    try:
        from . import _core as _engine  # type: ignore[attr-defined]

        ENGINE = "compiled"
    except ImportError:
        from . import _core_py as _engine

        ENGINE = "pure"


class NotAHomomorphismError(ValueError):
    """Generator images do not satisfy the defining relators."""


class TableNotClosedError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationLimits:
    """Resource bounds for one enumeration.

    ``max_cosets`` bounds the total number of cosets ever defined (dead ones
    included); ``max_steps`` bounds work, counted as one unit per word scan
    plus one per definition.
    """

    max_cosets: int = 10**6
    max_steps: int = 10**8

    def __post_init__(self):
        if self.max_cosets < 1 or self.max_steps < 1:
            raise ValueError("limits must be positive")


DEFAULT_LIMITS = EnumerationLimits()


@dataclass(frozen=True)
class NotClosed:
    """Enumeration gave up: the index may be infinite or the limits too small."""

    cosets_defined: int
    limit: str  # "max_cosets" | "max_steps"


def _col(letter: int) -> int:
    g = abs(letter)
    return 2 * (g - 1) + (0 if letter > 0 else 1)


def _word_cols(w: Word) -> tuple[int, ...]:
    return tuple(_col(x) for x in w)


class CosetTable:
    """The permutation action of a group on the cosets of a subgroup.

    Coset 0 is the subgroup itself.  ``rows[c][2*(g-1)]`` is the coset
    ``c * g``; the odd column is the inverse generator.
    """

    __slots__ = ("rows", "ngens")

    def __init__(self, rows: Sequence[Sequence[int]], ngens: int):
        self.rows = tuple(tuple(r) for r in rows)
        self.ngens = ngens
        n = len(self.rows)
        for r in self.rows:
            if len(r) != 2 * ngens or any(not (0 <= c < n) for c in r):
                raise TableNotClosedError("table entries out of range")

    @property
    def n_cosets(self) -> int:
        return len(self.rows)

    def action(self, coset: int, letter: int) -> int:
        return self.rows[coset][_col(letter)]

    def trace(self, coset: int, word: Word | Sequence[int]) -> int:
        c = coset
        for x in word:
            c = self.rows[c][_col(x)]
        return c

    def permutation(self, letter: int) -> tuple[int, ...]:
        """The permutation of cosets induced by a (signed) generator."""
        col = _col(letter)
        return tuple(r[col] for r in self.rows)

    def validate(self, p: Presentation | None = None, subgroup_gens: Sequence[Word] = ()) -> None:
        """Check the defining invariants; raises TableNotClosedError."""
        n = self.n_cosets
        for g in range(1, self.ngens + 1):
            fwd = self.permutation(g)
            bwd = self.permutation(-g)
            if sorted(fwd) != list(range(n)):
                raise TableNotClosedError(f"column of generator {g} is not a permutation")
            for c in range(n):
                if bwd[fwd[c]] != c:
                    raise TableNotClosedError(f"inverse action fails at coset {c}, generator {g}")
        seen = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            for col in range(2 * self.ngens):
                d = self.rows[c][col]
                if d not in seen:
                    seen.add(d)
                    frontier.append(d)
        if len(seen) != n:
            raise TableNotClosedError("action is not transitive from coset 0")
        if p is not None:
            for r in p.relators:
                for c in range(n):
                    if self.trace(c, r) != c:
                        raise TableNotClosedError(f"relator {r!r} moves coset {c}")
        for w in subgroup_gens:
            if self.trace(0, w) != 0:
                raise TableNotClosedError(f"subgroup generator {w!r} moves coset 0")

    def __eq__(self, other) -> bool:
        return isinstance(other, CosetTable) and self.rows == other.rows and self.ngens == other.ngens

    def __hash__(self) -> int:
        return hash((self.rows, self.ngens))

    def __repr__(self) -> str:
        return f"CosetTable(n_cosets={self.n_cosets}, ngens={self.ngens})"


def _bfs_normalize(rows: list[tuple[int, ...]], ngens: int) -> list[tuple[int, ...]]:
    ncols = 2 * ngens
    order = [0]
    pos = {0: 0}
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for col in range(ncols):
            d = rows[c][col]
            if d not in pos:
                pos[d] = len(order)
                order.append(d)
    return [tuple(pos[rows[c][col]] for col in range(ncols)) for c in order]


def enumerate_cosets(
    p: Presentation,
    subgroup_gens: Sequence[Word] = (),
    limits: EnumerationLimits = DEFAULT_LIMITS,
    strategy: str = "felsch",
) -> CosetTable | NotClosed:
    """Todd-Coxeter enumeration of the cosets of <subgroup_gens> in p.

    Returns a closed, normalised CosetTable whose n_cosets is the subgroup
    index, or NotClosed when a limit is hit first.  The resulting table is
    independent of the strategy ("felsch" or "hlt").
    """
    if strategy not in ("felsch", "hlt"):
        raise ValueError(f"unknown strategy {strategy!r}")
    for w in subgroup_gens:
        if w.max_generator() > p.n_generators:
            raise ValueError("subgroup generator uses an unknown generator")
    closed, rows, defined, _steps, limit = _engine.enumerate_core(
        2 * p.n_generators,
        [_word_cols(r) for r in p.relators],
        [_word_cols(w) for w in subgroup_gens],
        limits.max_cosets,
        limits.max_steps,
        strategy == "felsch",
    )
    if not closed:
        return NotClosed(cosets_defined=defined, limit=limit)
    table = CosetTable(_bfs_normalize(rows, p.n_generators), p.n_generators)
    table.validate(p, subgroup_gens)
    return table


def order_of(p: Presentation, limits: EnumerationLimits = DEFAULT_LIMITS) -> int | NotClosed:
    """Order of the presented group (enumeration over the trivial subgroup)."""
    result = enumerate_cosets(p, (), limits)
    if isinstance(result, NotClosed):
        return result
    return result.n_cosets


# --- permutation helpers and kernel tables ---------------------------------


def perm_mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_order(p: Sequence[int]) -> int:
    n = len(p)
    ident = tuple(range(n))
    q = tuple(p)
    k = 1
    while q != ident:
        q = perm_mul(q, p)
        k += 1
    return k


def perm_image(word: Word | Sequence[int], images: Mapping[int, Sequence[int]], degree: int) -> tuple[int, ...]:
    """Image of a word under generator -> permutation assignments."""
    acc = tuple(range(degree))
    for x in word:
        p = tuple(images[abs(x)])
        if x < 0:
            p = perm_inverse(p)
        acc = perm_mul(acc, p)
    return acc


def validate_homomorphism(p: Presentation, images: Mapping[int, Sequence[int]]) -> int:
    """Check that images define a homomorphism; returns the common degree."""
    if set(images) != set(range(1, p.n_generators + 1)):
        raise NotAHomomorphismError("images must cover exactly the presentation generators")
    degrees = {len(images[g]) for g in images}
    if len(degrees) != 1:
        raise NotAHomomorphismError("permutation degrees differ")
    degree = degrees.pop()
    for g in images:
        if sorted(images[g]) != list(range(degree)):
            raise NotAHomomorphismError(f"image of generator {g} is not a permutation")
    ident = tuple(range(degree))
    for r in p.relators:
        if perm_image(r, images, degree) != ident:
            raise NotAHomomorphismError(f"relator {r!r} has a non-identity image")
    return degree


def kernel_table(p: Presentation, images: Mapping[int, Sequence[int]]) -> CosetTable:
    """Coset table of ker(phi) for phi given by generator images.

    The table is the regular action of the image group on itself, built by
    breadth-first closure from the identity, so n_cosets equals the image
    order and the numbering is already normalised.
    """
    degree = validate_homomorphism(p, images)
    gens = []
    for g in range(1, p.n_generators + 1):
        fwd = tuple(images[g])
        gens.append(fwd)
        gens.append(perm_inverse(fwd))
    ident = tuple(range(degree))
    index = {ident: 0}
    elements = [ident]
    rows: list[list[int]] = []
    qi = 0
    while qi < len(elements):
        elem = elements[qi]
        qi += 1
        row = []
        for pg in gens:
            target = perm_mul(elem, pg)
            t = index.get(target)
            if t is None:
                t = len(elements)
                index[target] = t
                elements.append(target)
            row.append(t)
        rows.append(row)
    return CosetTable(rows, p.n_generators)
