from fractions import Fraction

from gtyang.crystal import (
    FixedPoint,
    atoms_at_node,
    fixed_point_matrices,
    ico_identity,
    ico_shift,
    ico_zero,
    pattern_atoms,
    verify_f_terms,
)
from gtyang.linalg import RationalMatrix
from gtyang.patterns import build_pattern, enumerate_patterns, vacuum_pattern
from gtyang.quiver import EquivariantParams, LinearForm

F = Fraction
EPS1 = EquivariantParams(1)
GENERIC = EquivariantParams(F(2, 3), F(1, 7))


def test_atom_examples_for_middle_framing():
    pat = build_pattern(4, 2, 2, [1, 1, 0, 1])
    (one,) = atoms_at_node(pat, 1)
    assert one.weight == LinearForm(F(-1, 2), -1) and one.r_charge == 1
    (three,) = atoms_at_node(pat, 3)
    assert three.weight == LinearForm(F(-1, 2), 1) and three.r_charge == 1
    (two,) = atoms_at_node(pat, 2)
    assert two.weight == LinearForm(0, 0) and two.r_charge == 0


def test_atom_ladders_for_edge_framing():
    pat = build_pattern(3, 1, 2, [2, 1])
    node1 = atoms_at_node(pat, 1)
    assert [a.weight.c_eps for a in node1] == [0, 1]
    assert all(a.weight.c_h == 0 and a.r_charge == 0 for a in node1)
    (node2,) = atoms_at_node(pat, 2)
    assert node2.weight == LinearForm(F(-1, 2), 1) and node2.r_charge == 1


def test_vacuum_has_no_atoms():
    assert pattern_atoms(vacuum_pattern(5, 2, 3)) == []


def test_atom_counts_and_no_overlap():
    for pat in enumerate_patterns(4, 2, 2):
        for k in range(1, 4):
            assert len(atoms_at_node(pat, k)) == pat.node_dimension(k)
        coords = [a.coordinate for a in pattern_atoms(pat)]
        assert len(coords) == len(set(coords))


def test_deep_path_weights():
    # two steps away from the framing node: double chain asymmetry, R = 2
    pat = build_pattern(4, 1, 1, [1, 1, 1])
    (a3,) = atoms_at_node(pat, 3)
    assert a3.weight == LinearForm(-1, 2)
    assert a3.r_charge == 2


def test_fixed_point_blocks_edge_framing():
    pat = build_pattern(3, 1, 2, [2, 1])
    fp = fixed_point_matrices(pat, EPS1)
    assert fp.matrices["C1"] == ico_shift(2)
    assert fp.matrices["C2"] == ico_shift(1)
    assert fp.matrices["A1"] == ico_identity(1, 2)
    assert fp.matrices["B1"] == ico_zero(2, 1)
    assert fp.matrices["R1"] == ico_identity(2, 1)
    assert fp.matrices["S1"] == ico_zero(1, 2)


def test_fixed_point_blocks_middle_framing():
    pat = build_pattern(4, 2, 2, [2, 2, 2, 2])
    fp = fixed_point_matrices(pat, EPS1)
    stacked = RationalMatrix([[0, 0], [0, 0], [1, 0], [0, 1]])
    assert fp.matrices["A1"] == stacked
    side = RationalMatrix([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert fp.matrices["B1"] == side
    assert fp.matrices["A2"] == side
    assert fp.matrices["B2"] == stacked
    block = RationalMatrix(
        [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]]
    )
    assert fp.matrices["C2"] == block
    assert fp.matrices["R2"] == RationalMatrix([[1], [0], [0], [0]])


def test_vacuum_fixed_point_shapes():
    fp = fixed_point_matrices(vacuum_pattern(4, 2, 2), EPS1)
    assert fp.matrices["R2"].shape == (0, 1)
    assert fp.matrices["S2"].shape == (1, 0)
    assert fp.matrices["A1"].shape == (0, 0)


def test_cutoff_relation_shape():
    pat = build_pattern(3, 1, 2, [2, 1])
    fp = fixed_point_matrices(pat, EPS1)
    climbed = fp.matrices["C1"].power(2) * fp.matrices["R1"]
    assert climbed.shape == (2, 1)
    assert climbed.is_zero()


def test_f_terms_exhaustive_small_grid():
    for params in (EPS1, GENERIC):
        for pat in enumerate_patterns(4, 2, 2):
            fp = fixed_point_matrices(pat, params)
            assert verify_f_terms(fp).ok
    for pat in enumerate_patterns(2, 1, 3):
        assert verify_f_terms(fixed_point_matrices(pat, GENERIC)).ok


def test_f_terms_with_all_framings():
    for pat in enumerate_patterns(3, 1, 2):
        fp = fixed_point_matrices(pat, GENERIC, all_framings=True)
        assert verify_f_terms(fp).ok


def hstack(left, right):
    if left.rows == 0 and right.rows == 0:
        return RationalMatrix.zeros(0, left.cols + right.cols)
    return RationalMatrix(
        [lr + rr for lr, rr in zip(left.entries, right.entries)],
        cols=left.cols + right.cols,
    )


def vstack(top, bottom):
    return RationalMatrix(top.entries + bottom.entries, cols=top.cols)


def test_block_forms_exhaustive_edge_framing():
    for pat in enumerate_patterns(4, 1, 2):
        n1, n2, n3 = pat.free_values
        fp = fixed_point_matrices(pat, EPS1)
        assert fp.matrices["C1"] == ico_shift(n1)
        assert fp.matrices["C2"] == ico_shift(n2)
        assert fp.matrices["C3"] == ico_shift(n3)
        assert fp.matrices["A1"] == ico_identity(n2, n1)
        assert fp.matrices["A2"] == ico_identity(n3, n2)
        assert fp.matrices["B1"] == ico_zero(n1, n2)
        assert fp.matrices["B2"] == ico_zero(n2, n3)
        assert fp.matrices["R1"] == ico_identity(n1, 1)
        assert fp.matrices["S1"] == ico_zero(1, n1)


def test_block_forms_exhaustive_middle_framing():
    for pat in enumerate_patterns(4, 2, 2):
        n1, m1, m2, n3 = pat.free_values
        fp = fixed_point_matrices(pat, EPS1)
        assert fp.matrices["C1"] == ico_shift(n1)
        assert fp.matrices["C3"] == ico_shift(n3)
        blocked = vstack(
            hstack(ico_shift(m1), ico_zero(m1, m2)),
            hstack(ico_zero(m2, m1), ico_shift(m2)),
        )
        assert fp.matrices["C2"] == blocked
        assert fp.matrices["A1"] == vstack(ico_zero(m1, n1), ico_identity(m2, n1))
        assert fp.matrices["B1"] == hstack(ico_identity(n1, m1), ico_zero(n1, m2))
        assert fp.matrices["A2"] == hstack(ico_identity(n3, m1), ico_zero(n3, m2))
        assert fp.matrices["B2"] == vstack(ico_zero(m1, n3), ico_identity(m2, n3))
        assert fp.matrices["R2"] == ico_identity(m1 + m2, 1)
        assert fp.matrices["S2"] == ico_zero(1, m1 + m2)


def test_corrupted_matrix_reports_nonzero():
    pat = build_pattern(3, 1, 2, [2, 1])
    fp = fixed_point_matrices(pat, EPS1)
    bad = RationalMatrix([[1, 1]])  # extra entry breaks the F-terms
    corrupted = FixedPoint(
        fp.pattern,
        fp.params,
        fp.spec,
        fp.atoms,
        {**fp.matrices, "A1": bad},
        fp.phi,
    )
    report = verify_f_terms(corrupted)
    assert not report.ok
    assert report.failures()
