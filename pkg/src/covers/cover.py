"""The branched-cover pipeline.

Given a knot and a homomorphism of its group onto a finite permutation
group (with kernel U), this computes:

  * the decomposition index = e * f * r, where e is the order of the
    meridian image, e*f the order of the peripheral image, and r the number
    of boundary tori of the covering space;
  * a presentation of Q = U / M_U, where M_U is the normal closure of the
    meridian powers lying in U -- equivalently the normal closure in the
    whole group of meridian^e, since all meridians are conjugate;
  * the order of Q (bounded enumeration), its first homology, and a label
    naming the group when it is recognised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .abelian import FinGenAbelianGroup
from .coset_table import (
    DEFAULT_LIMITS,
    CosetTable,
    EnumerationLimits,
    NotClosed,
    enumerate_cosets,
    kernel_table,
    perm_image,
    perm_order,
    validate_homomorphism,
)
from .identify import IDENTIFY_MAX_ORDER, identify_group, materialize
from .knot import WirtingerData
from .presentation import Presentation, abelian_invariants, tietze_simplify
from .schreier import rewrite_presentation
from .words import Word

Images = Mapping[int, Sequence[int]]


@dataclass(frozen=True)
class EFRDecomposition:
    e: int
    f: int
    r: int
    index: int

    def __post_init__(self):
        if self.e * self.f * self.r != self.index:
            raise ValueError("e*f*r must equal the index")


@dataclass(frozen=True)
class CoverReport:
    """Everything computed for one (knot, subgroup) pair."""

    efr: EFRDecomposition
    q_presentation: Presentation
    order: int | NotClosed
    h1: FinGenAbelianGroup
    label: str
    prime_hypothesis_verified: bool = False  # primality of the knot is not checked

    def __post_init__(self):
        if isinstance(self.order, int):
            if self.h1.free_rank != 0:
                raise ValueError("finite cover group with infinite abelianisation")
            if self.order == 1 and (self.label != "trivial" or not self.h1.is_trivial):
                raise ValueError("trivial group must be labelled trivial with trivial h1")
            if self.order % self.h1.order() != 0:
                raise ValueError("|h1| must divide the group order")


def _image_order(images: Images, degree: int, words) -> int:
    """Order of the subgroup generated by the images of the given words."""
    gens = [perm_image(w, images, degree) for w in words]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for elem in frontier:
            for g in gens:
                t = tuple(g[elem[i]] for i in range(degree))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return len(seen)


def efr(w: WirtingerData, images: Images) -> EFRDecomposition:
    """Ramification data: e = order of the meridian image, e*f = order of the
    peripheral image, r = index / (e*f)."""
    degree = validate_homomorphism(w.pres, images)
    index = _image_order(images, degree, [Word([g]) for g in range(1, w.pres.n_generators + 1)])
    e = perm_order(images[w.meridian])
    ef = _image_order(images, degree, [Word([w.meridian]), w.longitude])
    f, rem = divmod(ef, e)
    if rem:
        raise AssertionError("meridian order does not divide the peripheral image order")
    r, rem = divmod(index, ef)
    if rem:
        raise AssertionError("peripheral image order does not divide the index")
    return EFRDecomposition(e=e, f=f, r=r, index=index)


def _quotient_presentations(w: WirtingerData, images: Images) -> tuple[Presentation, Presentation, CosetTable]:
    """(raw, simplified) presentations of Q = U/M_U plus the kernel table used."""
    degree = validate_homomorphism(w.pres, images)
    e = perm_order(images[w.meridian])
    killed = Presentation(
        w.pres.generator_names,
        list(w.pres.relators) + [Word([w.meridian]) ** e],
    )
    t = kernel_table(killed, images)
    raw, _data = rewrite_presentation(killed, t)
    simplified = tietze_simplify(raw)
    renamed = Presentation(
        tuple(f"x{i+1}" for i in range(simplified.n_generators)),
        simplified.relators,
    )
    return raw, renamed, t


def branched_pi1(w: WirtingerData, images: Images) -> Presentation:
    """Presentation of the covering-space group Q = U/M_U (simplified)."""
    return _quotient_presentations(w, images)[1]


def _bounded_order(q_simplified: Presentation, q_raw: Presentation, limits: EnumerationLimits):
    """Try the simplified presentation first; the raw one gets whatever budget
    is left when the first attempt fails."""
    first = enumerate_cosets(q_simplified, (), limits)
    if isinstance(first, CosetTable):
        return first.n_cosets, first, q_simplified
    remaining = EnumerationLimits(
        max_cosets=max(limits.max_cosets - first.cosets_defined, 1),
        max_steps=limits.max_steps,
    )
    if remaining.max_cosets > 1:
        second = enumerate_cosets(q_raw, (), remaining)
        if isinstance(second, CosetTable):
            return second.n_cosets, second, q_raw
    return first, None, None


def analyze(w: WirtingerData, images: Images, limits: EnumerationLimits = DEFAULT_LIMITS) -> CoverReport:
    """Full report: e/f/r, quotient presentation, bounded order, homology, label."""
    decomposition = efr(w, images)
    raw, q, _t = _quotient_presentations(w, images)
    h1 = abelian_invariants(q)
    order, table, used = _bounded_order(q, raw, limits)
    if isinstance(order, NotClosed):
        label = "unknown"
    elif order == 1:
        label = "trivial"
    elif order > IDENTIFY_MAX_ORDER:
        label = f"unrecognized(order={order})"
    else:
        label = identify_group(materialize(table, used), h1)
    return CoverReport(efr=decomposition, q_presentation=q, order=order, h1=h1, label=label)
