"""Checks of the rank-10 class lattice: pairing, named classes,
complements, and the numeric invariants derived from them."""
from hypothesis import given
from hypothesis import strategies as st

import pytest

from p2lab import lattice
from p2lab.lattice import DivisorClass, GRAM, RANK


vectors = st.lists(st.integers(-8, 8), min_size=RANK, max_size=RANK)


def cls(v):
    return DivisorClass(tuple(v))


@given(vectors, vectors, vectors, st.integers(-5, 5))
def test_pairing_is_symmetric_bilinear(u, v, w, k):
    a, b, c = cls(u), cls(v), cls(w)
    assert lattice.pair(a, b) == lattice.pair(b, a)
    assert lattice.pair(a + b, c) == lattice.pair(a, c) + lattice.pair(b, c)
    assert lattice.pair(k * a, b) == k * lattice.pair(a, b)


def test_gram_matrix_shape():
    assert len(GRAM) == RANK
    assert GRAM[0][0] == 2 and GRAM[0][1] == 1 and GRAM[1][1] == 0
    for i in range(2, RANK):
        assert GRAM[i][i] == -1
        for j in range(RANK):
            if j != i:
                assert GRAM[i][j] == 0


def test_unimodularity():
    from p2lab.intlinalg import det
    assert det(GRAM) == -1


def test_named_class_squares():
    reg = lattice.named_classes()
    for name in ("C1", "C2", "C3", "C4"):
        assert lattice.pair(reg[name], reg[name]) == -1, name
    for name in ("C5", "C6"):        # bisections, not sections
        assert lattice.pair(reg[name], reg[name]) == 0, name
    for i in range(8):
        assert lattice.pair(reg[f"D{i}"], reg[f"D{i}"]) == -2
    f = lattice.anticanonical_class()
    assert lattice.pair(f, f) == 0
    assert reg["F"] == f
    assert reg["K"] == lattice.canonical_class() == -f


def test_fiber_multiplicities():
    reg = lattice.named_classes()
    f = lattice.anticanonical_class()
    for name in ("C1", "C2", "C3", "C4"):
        assert lattice.pair(reg[name], f) == 1, name
    for name in ("C5", "C6"):
        assert lattice.pair(reg[name], f) == 2, name


def test_boundary_chain_is_affine_e7():
    d = lattice.d_chain()
    g = lattice.gram(d)
    for i in range(8):
        assert g[i][i] == -2
    edges = {(i, j) for i in range(8) for j in range(i + 1, 8) if g[i][j] == 1}
    assert edges == {(0, 4), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)}
    # affine: the marked combination is isotropic
    marks = (2, 1, 2, 3, 4, 3, 2, 1)
    iso = DivisorClass.zero()
    for k, di in zip(marks, d):
        iso = iso + k * di
    assert lattice.pair(iso, iso) == 0
    assert iso == lattice.anticanonical_class()


def test_complement_both_ways():
    reg = lattice.named_classes()
    d = lattice.d_chain()
    comp = lattice.ortho_complement(d)
    spans = [reg["C2"] - reg["C1"], reg["C4"] - reg["C3"]]
    assert lattice.sublattice_equal(comp, spans)
    assert lattice.gram(spans) == [[-2, 2], [2, -2]]
    assert lattice.sublattice_equal(lattice.ortho_complement(spans), d)


def test_complement_is_saturated():
    # index-1 embedding: the gcd of all 2x2 minors of the coefficient
    # matrix is 1, so the span is a direct summand, not a finite-index
    # sublattice of one
    from math import gcd
    comp = lattice.ortho_complement(lattice.d_chain())
    a, b = comp
    minors = [a.coeffs[i] * b.coeffs[j] - a.coeffs[j] * b.coeffs[i]
              for i in range(RANK) for j in range(i + 1, RANK)]
    g = 0
    for m in minors:
        g = gcd(g, m)
    assert g == 1


def test_section_expansion():
    reg = lattice.named_classes()
    basis = [reg["C1"], reg["C3"]] + lattice.d_chain()
    coords = lattice.express_in_basis(reg["C2"], basis)
    assert coords == [-1, 2, 1, -1, 0, 1, 2, 2, 2, 2]
    rebuilt = DivisorClass.zero()
    for k, b in zip(coords, basis):
        rebuilt = rebuilt + k * b
    assert rebuilt == reg["C2"]


def test_express_in_basis_rejects_outsiders():
    reg = lattice.named_classes()
    with pytest.raises(lattice.NotInLattice):
        lattice.express_in_basis(reg["C1"], [2 * reg["C1"]])
    with pytest.raises(lattice.Degenerate):
        lattice.express_in_basis(reg["C1"], lattice.d_chain())


def test_euler_invariants():
    inv = lattice.euler_invariants()
    assert (inv.K2, inv.c2, inv.chi_theta) == (0, 12, -10)
    assert (inv.h1_theta, inv.h1_log, inv.h1_log_plus) == (10, 2, 1)


def test_diagonalization_realizes_signature():
    u = lattice.diagonalize_unimodular()
    from p2lab.intlinalg import det, matmul, transpose
    assert abs(det(u)) == 1
    d = matmul(matmul(transpose(u), GRAM), u)
    want = [[(1 if i == 0 else -1) if i == j else 0 for j in range(RANK)]
            for i in range(RANK)]
    assert d == want


def test_regime_registries():
    assert set(lattice.REGIMES) == {"generic", "c=0", "c=-1"}
    assert "C2prime" in lattice.named_classes("c=0")
    assert "C4prime" in lattice.named_classes("c=-1")
    assert "C2prime" not in lattice.named_classes("generic")
    # extra -2-classes orthogonal to the anticanonical class
    f = lattice.anticanonical_class()
    extra0 = lattice.named_classes("c=0")["C2prime"]
    extram = lattice.named_classes("c=-1")["C4prime"]
    assert lattice.pair(extra0, extra0) == -2
    assert lattice.pair(extram, extram) == -2
    assert lattice.pair(extra0, f) == 0
    assert lattice.pair(extram, f) == 0


def test_table_csv_deterministic_and_symmetric():
    text = lattice.intersection_table_csv("generic")
    assert text == lattice.intersection_table_csv("generic")
    rows = [line.split(",") for line in text.strip().splitlines()]
    header = rows[0][1:]
    body = {r[0]: r[1:] for r in rows[1:]}
    assert list(body) == header
    for i, a in enumerate(header):
        for j, b in enumerate(header):
            assert body[a][j] == body[b][i]
    # spot value quoted everywhere downstream: the two off-fiber sections
    assert body["C2"][header.index("C4")] == "2"
