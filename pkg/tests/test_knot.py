import pytest

from covers.abelian import FinGenAbelianGroup
from covers.coset_table import kernel_table, order_of, perm_image, validate_homomorphism
from covers.knot import (
    BUILTIN_KNOTS,
    KnotDiagram,
    LinkClosureError,
    MultiComponentError,
    ParseError,
    builtin_diagram,
    linking_hom,
    parse_braid,
    parse_pd,
    wirtinger,
)
from covers.presentation import Presentation, abelian_invariants, parse_presentation, tietze_simplify
from covers.words import Word

TREFOIL_PD = BUILTIN_KNOTS["trefoil"]
FIG8_PD = BUILTIN_KNOTS["figure-eight"]


def _canonical_relator_shape(p: Presentation):
    return (p.n_generators, sorted(len(r) for r in p.relators))


def test_parse_pd_trefoil():
    d = parse_pd(TREFOIL_PD)
    assert d.n_crossings == 3
    assert d.n_arcs == 6
    assert d.component_count() == 1


def test_parse_pd_unknot_literal():
    d = parse_pd("unknot")
    assert d.is_unknot_diagram
    assert wirtinger(d).pres == Presentation(("a",), [])


def test_parse_pd_arc_multiplicity_error():
    with pytest.raises(ParseError, match="exactly twice"):
        parse_pd("X[1,4,2,3] X[3,6,4,5]")


def test_parse_pd_syntax_error():
    with pytest.raises(ParseError, match="token 2"):
        parse_pd("X[1,4,2,5] Y[3,6,4,1]")


def test_parse_pd_explicit_signs_must_be_consistent():
    toks = TREFOIL_PD.split()
    signed = f"{toks[0]}sign=- {toks[1]} {toks[2]}"
    d = parse_pd(signed)
    assert [s for _q, s in d.crossings] == [-1, -1, -1]
    with pytest.raises(ParseError, match="inconsistent|contradicts"):
        parse_pd(f"{toks[0]}sign=+ {toks[1]} {toks[2]}")


def test_three_circle_diagram_is_rejected_as_knot():
    # under-strand and over-strand pairings both join 1-2, 3-4, 5-6 here, so
    # this widely mis-quoted "trefoil" code is a 3-component diagram
    d = parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]")
    assert d.component_count() == 3
    with pytest.raises(MultiComponentError):
        wirtinger(d)


def test_trefoil_wirtinger_matches_two_bridge_form(trefoil_w):
    assert _canonical_relator_shape(trefoil_w.pres) == (3, [4, 4])
    simplified = tietze_simplify(trefoil_w.pres)
    braid_form = tietze_simplify(parse_presentation("<x,y | x*y*x = y*x*y>"))
    assert _canonical_relator_shape(simplified) == _canonical_relator_shape(braid_form)
    assert abelian_invariants(simplified) == FinGenAbelianGroup(1, ())


def test_wirtinger_invariants(trefoil_w, fig8_w, unknot_w):
    for w in (trefoil_w, fig8_w, unknot_w):
        assert abelian_invariants(w.pres) == FinGenAbelianGroup(1, ())
        assert w.meridian == 1
        total = sum(w.longitude.exponent_sum(g) for g in range(1, w.pres.n_generators + 1))
        assert total == 0


def test_writhe_values(trefoil_w, fig8_w):
    assert trefoil_w.writhe == -3
    assert fig8_w.writhe == 0


def test_figure_eight_wirtinger(fig8_w):
    assert fig8_w.pres.n_generators == 4
    assert len(fig8_w.pres.relators) == 3


def test_braid_trefoil():
    d = parse_braid("s1 s1 s1")
    assert d.n_crossings == 3
    w = wirtinger(d)
    assert w.writhe == 3
    assert _canonical_relator_shape(tietze_simplify(w.pres)) == (2, [6])


def test_braid_single_letter_is_unknot():
    d = parse_braid("s1")
    w = wirtinger(d)
    assert w.pres.n_generators == 1
    assert w.pres.relators == ()
    assert abelian_invariants(w.pres) == FinGenAbelianGroup(1, ())


def test_braid_closure_link_rejected():
    with pytest.raises(LinkClosureError, match="2 components"):
        parse_braid("s1 s1")


def test_braid_negative_letters():
    d = parse_braid("s1^-1 s1^-1 s1^-1")
    w = wirtinger(d)
    assert w.writhe == -3
    assert _canonical_relator_shape(tietze_simplify(w.pres)) == (2, [6])


def test_braid_syntax_error():
    with pytest.raises(ParseError):
        parse_braid("s1 t2")
    with pytest.raises(ParseError):
        parse_braid("")


def test_reidemeister_one_sanity():
    # a Markov stabilisation adds a kink: writhe changes by 1, the group,
    # its abelianisation, and the double branched cover order do not change
    plain = wirtinger(parse_braid("s1 s1 s1"))
    kinked = wirtinger(parse_braid("s1 s1 s1 s2"))
    assert kinked.writhe == plain.writhe + 1
    assert abelian_invariants(plain.pres) == abelian_invariants(kinked.pres)

    from covers.cover import analyze

    a_plain = analyze(plain, linking_hom(plain, 2))
    a_kinked = analyze(kinked, linking_hom(kinked, 2))
    assert a_plain.order == a_kinked.order == 3
    assert a_plain.h1 == a_kinked.h1


def test_linking_hom_properties(trefoil_w, fig8_w):
    for w in (trefoil_w, fig8_w):
        images = linking_hom(w, 1)
        assert all(img == (0,) for img in images.values())
        for n in range(1, 7):
            images = linking_hom(w, n)
            assert validate_homomorphism(w.pres, images) == n
            assert kernel_table(w.pres, images).n_cosets == n


def test_peripheral_pair_commutes_in_finite_quotients(trefoil_w, fig8_w, trefoil_s3_images):
    cases = [(w, linking_hom(w, n)) for w in (trefoil_w, fig8_w) for n in range(1, 7)]
    cases.append((trefoil_w, trefoil_s3_images))
    for w, images in cases:
        degree = validate_homomorphism(w.pres, images)
        commutator = (
            Word([w.meridian]) * w.longitude * Word([-w.meridian]) * w.longitude.inverse()
        )
        assert perm_image(commutator, images, degree) == tuple(range(degree))


def test_knot_group_order_two_quotient(trefoil_w):
    # killing the meridian square gives the order-6 quotient of the trefoil
    killed = Presentation(
        trefoil_w.pres.generator_names,
        list(trefoil_w.pres.relators) + [Word([trefoil_w.meridian]) ** 2],
    )
    assert order_of(killed) == 6
