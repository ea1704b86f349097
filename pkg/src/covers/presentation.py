"""Finitely presented groups, deterministic Tietze simplification, and
abelianized relation matrices.

Text format: ``<a,b | a*b*a = b*a*b>``.  Equations (possibly chained with
several ``=``) are split into relators ``lhs * rhs^-1``; a bare word is a
relator on its own.
"""

from __future__ import annotations

import re

from .abelian import FinGenAbelianGroup, IntMatrix, cokernel
from .words import Word, cyclic_reduce, substitute

DEFAULT_TIETZE_BUDGET = 5000

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class PresentationParseError(ValueError):
    pass


class Presentation:
    """Generators (named) plus relators (cyclically reduced, never empty)."""

    __slots__ = ("generator_names", "relators")

    def __init__(self, generator_names, relators=()):
        names = tuple(generator_names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for nm in names:
            if not _NAME_RE.match(nm):
                raise ValueError(f"bad generator name {nm!r}")
        normalized = []
        for w in relators:
            if not isinstance(w, Word):
                w = Word(w)
            core, _ = cyclic_reduce(w)
            if core.max_generator() > len(names):
                raise ValueError(f"relator uses generator {core.max_generator()} of {len(names)}")
            if core:
                normalized.append(core)
        self.generator_names = names
        self.relators = tuple(normalized)

    @property
    def n_generators(self) -> int:
        return len(self.generator_names)

    def gen(self, name: str) -> int:
        """1-based index of a named generator."""
        return self.generator_names.index(name) + 1

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Presentation)
            and self.generator_names == other.generator_names
            and self.relators == other.relators
        )

    def __hash__(self) -> int:
        return hash((self.generator_names, self.relators))

    def __str__(self) -> str:
        return format_presentation(self)

    def __repr__(self) -> str:
        return f"Presentation({self})"

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        return parse_presentation(text)


def format_word(w: Word, names) -> str:
    if not w:
        return "1"
    parts = []
    run_gen, run_exp = None, 0
    for x in tuple(w) + (0,):
        g = abs(x) if x else None
        s = 1 if x > 0 else -1
        if g == run_gen and (run_exp > 0) == (s > 0):
            run_exp += s
            continue
        if run_gen is not None:
            nm = names[run_gen - 1]
            parts.append(nm if run_exp == 1 else f"{nm}^{run_exp}")
        run_gen, run_exp = g, s
    return "*".join(parts)


def format_presentation(p: Presentation) -> str:
    gens = ",".join(p.generator_names)
    rels = ", ".join(format_word(r, p.generator_names) for r in p.relators)
    return f"<{gens} | {rels}>" if rels else f"<{gens} | >"


def parse_word(text: str, names) -> Word:
    index = {nm: i + 1 for i, nm in enumerate(names)}
    letters: list[int] = []
    text = text.strip()
    if text in ("", "1"):
        return Word()
    for atom in text.split("*"):
        atom = atom.strip()
        if not atom:
            raise PresentationParseError("empty factor in word")
        if atom == "1":
            continue
        if "^" in atom:
            nm, _, exp = atom.partition("^")
            nm = nm.strip()
            try:
                e = int(exp.strip())
            except ValueError:
                raise PresentationParseError(f"bad exponent in {atom!r}") from None
        else:
            nm, e = atom, 1
        if nm not in index:
            raise PresentationParseError(f"unknown generator {nm!r}")
        g = index[nm]
        letters.extend([g if e > 0 else -g] * abs(e))
    return Word(letters)


def parse_presentation(text: str) -> Presentation:
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise PresentationParseError("presentation must be wrapped in <...>")
    body = text[1:-1]
    if "|" not in body:
        raise PresentationParseError("missing | between generators and relators")
    gen_part, _, rel_part = body.partition("|")
    names = tuple(nm.strip() for nm in gen_part.split(",") if nm.strip())
    relators: list[Word] = []
    rel_part = rel_part.strip()
    if rel_part:
        for clause in rel_part.split(","):
            clause = clause.strip()
            if not clause:
                continue
            sides = [parse_word(side, names) for side in clause.split("=")]
            if len(sides) == 1:
                relators.append(sides[0])
            else:
                for lhs, rhs in zip(sides, sides[1:]):
                    relators.append(lhs * rhs.inverse())
    return Presentation(names, relators)


def relation_matrix(p: Presentation) -> IntMatrix:
    """One row per relator, one column per generator, entries exponent sums."""
    rows = [[r.exponent_sum(g) for g in range(1, p.n_generators + 1)] for r in p.relators]
    return IntMatrix(len(p.relators), p.n_generators, rows)


def abelian_invariants(p: Presentation) -> FinGenAbelianGroup:
    return cokernel(relation_matrix(p))


# --- Tietze simplification -------------------------------------------------
#
# Deterministic greedy strategy: (1) drop empty/duplicate relators, (2) replace
# long cyclic subwords of a longer relator using a shorter one, (3) eliminate a
# generator occurring exactly once in some relator when that cannot increase
# the total relator length.  Each applied move costs one unit of budget.


def _canonical_cyclic(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    best = None
    for src in (letters, tuple(-x for x in reversed(letters))):
        n = len(src)
        doubled = src + src
        for i in range(n):
            cand = doubled[i : i + n]
            if best is None or cand < best:
                best = cand
    return best


def _dedupe(rels: list[tuple[int, ...]]) -> bool:
    seen = set()
    out = []
    removed = False
    for r in rels:
        key = _canonical_cyclic(r)
        if not r or key in seen:
            removed = True
            continue
        seen.add(key)
        out.append(r)
    if removed:
        rels[:] = out
    return removed


def _cyclic_core(letters) -> tuple[int, ...]:
    return cyclic_reduce(Word(letters))[0].letters


def _substring_move(rels: list[tuple[int, ...]]) -> bool:
    """Replace one long cyclic subword using a strictly shorter relator piece."""
    order = sorted(range(len(rels)), key=lambda i: (len(rels[i]), rels[i]))
    for ri in order:
        r = rels[ri]
        lr = len(r)
        if lr < 2:
            continue
        variants = [r, tuple(-x for x in reversed(r))]
        for si in order:
            if si == ri:
                continue
            s = rels[si]
            if len(s) < lr:
                continue
            doubled = s + s
            for var in variants:
                rot2 = var + var
                for h in range(lr - 1, lr // 2, -1):
                    for start in range(lr):
                        u = rot2[start : start + h]
                        v = rot2[start + h : start + lr]
                        # u * v is a relator, so u may be replaced by v^-1
                        for off in range(len(s)):
                            if doubled[off : off + h] == u:
                                tail = doubled[off + h : off + len(s)]
                                vinv = tuple(-x for x in reversed(v))
                                rels[si] = _cyclic_core(vinv + tail)
                                return True
    return False


def _elimination_move(rels: list[tuple[int, ...]], names: list[str], images: list[Word]) -> bool:
    ngens = len(names)
    counts = [0] * (ngens + 1)
    single: dict[int, tuple[int, int]] = {}
    for idx, r in enumerate(rels):
        local: dict[int, list[int]] = {}
        for pos, x in enumerate(r):
            local.setdefault(abs(x), []).append(pos)
        for g, positions in local.items():
            counts[g] += len(positions)
            if len(positions) == 1:
                if g not in single or len(rels[single[g][0]]) > len(r):
                    single[g] = (idx, positions[0])

    best = None
    for g, loc in sorted(single.items()):
        idx, pos = loc
        m = len(rels[idx])
        tot = counts[g]
        delta = -m + (tot - 1) * (m - 2)
        if delta <= 0 and (best is None or (delta, g) < (best[0], best[1])):
            best = (delta, g, idx, pos)
    if best is None:
        return False

    _, g, idx, pos = best
    r = rels[idx]
    sign = 1 if r[pos] > 0 else -1
    u, v = r[:pos], r[pos + 1 :]
    uinv = tuple(-x for x in reversed(u))
    vinv = tuple(-x for x in reversed(v))
    repl = Word(uinv + vinv) if sign > 0 else Word(v + u)

    def reindexed(word: Word) -> Word:
        return Word(x - (1 if x > g else 0) if x > 0 else x + (1 if -x > g else 0) for x in word)

    sub = {h: Word([h]) for h in range(1, ngens + 1)}
    sub[g] = repl
    new_rels = []
    for j, rel in enumerate(rels):
        if j == idx:
            continue
        w = reindexed(substitute(Word(rel), sub))
        core = cyclic_reduce(w)[0].letters
        new_rels.append(core)
    rels[:] = new_rels
    for k in range(len(images)):
        images[k] = reindexed(substitute(images[k], sub))
    del names[g - 1]
    return True


def tietze_simplify_with_images(
    p: Presentation, effort_budget: int = DEFAULT_TIETZE_BUDGET
) -> tuple[Presentation, dict[int, Word]]:
    """Simplify and return the images of the original generators as words in
    the simplified presentation's generators."""
    names = list(p.generator_names)
    rels = [r.letters for r in p.relators]
    images = [Word([g]) for g in range(1, p.n_generators + 1)]
    budget = effort_budget
    while budget > 0:
        if _dedupe(rels):
            budget -= 1
            continue
        if _substring_move(rels):
            budget -= 1
            continue
        if _elimination_move(rels, names, images):
            budget -= 1
            continue
        break
    rels.sort(key=lambda r: (len(r), r))
    simplified = Presentation(names, [Word(r) for r in rels])
    return simplified, {g + 1: images[g] for g in range(p.n_generators)}


def tietze_simplify(p: Presentation, effort_budget: int = DEFAULT_TIETZE_BUDGET) -> Presentation:
    """Deterministic greedy simplification; never increases total relator length."""
    return tietze_simplify_with_images(p, effort_budget)[0]
