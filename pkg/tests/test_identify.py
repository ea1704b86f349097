import itertools

import pytest

from covers.abelian import FinGenAbelianGroup
from covers.coset_table import CosetTable, enumerate_cosets
from covers.identify import ConcreteFiniteGroup, identify_group, materialize
from covers.presentation import abelian_invariants, parse_presentation

Q8 = "<x,y | x^4, x^2*y^-2, y^-1*x*y*x>"
SL23 = "<x,y | x^3*y^-3, x^3*y^-1*x^-1*y^-1*x^-1>"  # x^3 = y^3 = (xy)^2
SL25 = "<x,y | x^5*y^-3, x^5*y^-1*x^-1*y^-1*x^-1>"  # x^5 = y^3 = (xy)^2
S3 = "<x,y | x^2, y^3, x*y*x*y>"
D4 = "<x,y | x^4, y^2, x*y*x*y>"
A4 = "<x,y | x^2, y^3, x*y*x*y*x*y>"


def _group(text):
    p = parse_presentation(text)
    t = enumerate_cosets(p)
    assert isinstance(t, CosetTable)
    return materialize(t, p), abelian_invariants(p)


def test_materialize_s3():
    g, _ = _group(S3)
    assert g.order == 6
    assert g.involution_count() == 3
    assert not g.is_abelian()
    assert g.center_order() == 1


def test_materialize_cyclic():
    g, h1 = _group("<a | a^3>")
    assert g.order == 3
    assert g.is_cyclic()
    assert identify_group(g, h1) == "Z/3"


def test_materialize_multiplication_agrees_with_regular_action():
    g, _ = _group(S3)
    # associativity spot check and inverse correctness over all pairs
    table = g.multiplication_table()
    for x in range(g.order):
        assert table[0][x] == x and table[x][0] == x
        assert table[x][g.inverse(x)] == 0
    for x, y, z in itertools.product(range(g.order), repeat=3):
        assert table[table[x][y]][z] == table[x][table[y][z]]


def test_identify_q8():
    g, h1 = _group(Q8)
    assert g.order == 8
    assert g.involution_count() == 1
    assert h1 == FinGenAbelianGroup(0, (2, 2))
    assert identify_group(g, h1) == "Q8"


def test_identify_sl23():
    g, h1 = _group(SL23)
    assert g.order == 24
    assert identify_group(g, h1) == "SL(2,3)"


def test_identify_sl25():
    g, h1 = _group(SL25)
    assert g.order == 120
    assert g.center_order() == 2
    assert h1.is_trivial
    assert identify_group(g, h1) == "SL(2,5)"


def test_identify_cyclic_with_one_involution_is_not_q8():
    g, h1 = _group("<a | a^8>")
    assert g.involution_count() == 1  # Z/8 also has a unique involution
    assert identify_group(g, h1) == "Z/8"


def test_identify_abelian_label():
    g, h1 = _group("<x,y | x^2, y^4, x*y*x^-1*y^-1>")
    assert identify_group(g, h1) == "Z/2 x Z/4"


def test_identify_trivial():
    g, h1 = _group("<a | a>")
    assert identify_group(g, h1) == "trivial"


def test_identify_unrecognized():
    g, h1 = _group(A4)  # order 12, not in the decision list
    assert identify_group(g, h1) == "unrecognized(order=12)"


def test_probes_match_brute_force_small_groups():
    for text in (S3, D4, Q8, A4, SL23, "<a | a^6>", "<x,y | x^2, y^2, x*y*x*y>"):
        g, _ = _group(text)
        table = g.multiplication_table()
        n = g.order
        invols = sum(1 for x in range(1, n) if table[x][x] == 0)
        assert invols == g.involution_count()
        center = sum(1 for x in range(n) if all(table[x][y] == table[y][x] for y in range(n)))
        assert center == g.center_order()
        abelian = all(table[x][y] == table[y][x] for x in range(n) for y in range(n))
        assert abelian == g.is_abelian()
        cyclic = any(g.element_order(x) == n for x in range(n))
        assert cyclic == g.is_cyclic()


def test_identification_invariant_under_relabelling():
    p = parse_presentation(Q8)
    t = enumerate_cosets(p)
    h1 = abelian_invariants(p)
    base = identify_group(materialize(t, p), h1)

    # relabel cosets by a rotation that fixes the identity coset
    n = t.n_cosets
    perm = [0] + [1 + (i + 3) % (n - 1) for i in range(n - 1)]
    rows = [[perm[t.rows[old][col]] for col in range(2 * t.ngens)] for old in range(n)]
    shuffled_rows = [None] * n
    for old in range(n):
        shuffled_rows[perm[old]] = rows[old]
    shuffled = CosetTable(shuffled_rows, t.ngens)
    assert identify_group(materialize(shuffled, p), h1) == base == "Q8"


def test_cyclic_labels_have_full_order_element():
    for k in (2, 3, 5, 9, 12):
        g, h1 = _group(f"<a | a^{k}>")
        label = identify_group(g, h1)
        assert label == f"Z/{k}"
        assert any(g.element_order(x) == k for x in range(g.order))
