"""Root system construction, Cartan matrices, Coxeter elements, exponents."""

import math
from fractions import Fraction

import numpy as np
import pytest

from e8ising.rootsystems import (
    SimpleTypeId,
    bicolor,
    cartan_matrix,
    close_under_reflections,
    coxeter_element,
    coxeter_number,
    dot,
    exponents,
    reflect,
    root_system,
    simple_roots,
)

ALL_TYPES = [f"A{l}" for l in range(2, 9)] + [f"D{l}" for l in range(4, 9)] + ["E6", "E7", "E8"]

E8_CARTAN = np.array(
    [
        [2, 0, -1, 0, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ]
)


def brute_force_closure(B):
    """Oracle: close under reflections in *every* discovered vector, to a fixpoint."""
    roots = set(B)
    while True:
        new = {reflect(x, b) for x in roots for b in roots}
        if new <= roots:
            return roots
        roots |= new


class TestTypeIds:
    def test_parse_roundtrip(self):
        for label in ALL_TYPES + ["A1", "D3"]:
            assert str(SimpleTypeId.from_string(label)) == label

    @pytest.mark.parametrize("bad", ["A0", "D2", "E5", "E9", "B3", "X4", "E", "8"])
    def test_invalid_labels_rejected(self, bad):
        with pytest.raises(ValueError):
            SimpleTypeId.from_string(bad)


class TestSimpleRoots:
    def test_a2_coordinates(self):
        B = simple_roots(SimpleTypeId.from_string("A2"))
        assert B == [
            (Fraction(1), Fraction(-1), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(-1)),
        ]

    def test_d4_coordinates(self):
        B = simple_roots(SimpleTypeId.from_string("D4"))
        expected = [
            (1, -1, 0, 0),
            (0, 1, -1, 0),
            (0, 0, 1, -1),
            (0, 0, 1, 1),
        ]
        assert [tuple(int(c) for c in b) for b in B] == expected

    def test_all_roots_have_squared_length_two(self):
        for label in ALL_TYPES:
            for b in simple_roots(SimpleTypeId.from_string(label)):
                assert dot(b, b) == 2


class TestCartanMatrix:
    def test_a2_golden(self):
        B = simple_roots(SimpleTypeId.from_string("A2"))
        assert cartan_matrix(B).tolist() == [[2, -1], [-1, 2]]

    def test_e8_matches_standard_matrix(self):
        B = simple_roots(SimpleTypeId.from_string("E8"))
        assert np.array_equal(cartan_matrix(B), E8_CARTAN)

    def test_d4_central_node_degree_three(self):
        C = cartan_matrix(simple_roots(SimpleTypeId.from_string("D4")))
        degrees = sorted((C[i] == -1).sum() for i in range(4))
        assert degrees == [1, 1, 1, 3]

    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_symmetric_with_simply_laced_entries(self, label):
        C = cartan_matrix(simple_roots(SimpleTypeId.from_string(label)))
        assert np.array_equal(C, C.T)
        off = C[~np.eye(C.shape[0], dtype=bool)]
        assert set(np.unique(off)) <= {0, -1}
        assert np.all(np.diag(C) == 2)

    def test_non_integer_cartan_entry_rejected(self):
        B = [(Fraction(1), Fraction(0)), (Fraction(1, 3), Fraction(1))]
        with pytest.raises(ValueError, match="non-integer"):
            cartan_matrix(B)


class TestClosure:
    @pytest.mark.parametrize(
        "label,count", [("A2", 6), ("A3", 12), ("D4", 24), ("E6", 72), ("E7", 126), ("E8", 240)]
    )
    def test_root_counts(self, label, count):
        assert len(root_system(SimpleTypeId.from_string(label)).roots) == count

    @pytest.mark.parametrize("label", ["A2", "A3", "D4"])
    def test_matches_brute_force_oracle(self, label):
        B = simple_roots(SimpleTypeId.from_string(label))
        assert set(close_under_reflections(B).roots) == brute_force_closure(B)

    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_basic_invariants(self, label):
        rs = root_system(SimpleTypeId.from_string(label))
        roots = set(rs.roots)
        assert len(roots) == rs.rank * rs.coxeter_number
        assert all(tuple(-c for c in r) in roots for r in roots)
        assert tuple([Fraction(0)] * rs.ambient_dim) not in roots
        assert all(dot(r, r) == 2 for r in roots)

    def test_processing_order_does_not_change_the_set(self):
        for label in ("A4", "D5", "E6"):
            B = simple_roots(SimpleTypeId.from_string(label))
            forward = set(close_under_reflections(B).roots)
            backward = set(close_under_reflections(list(reversed(B))).roots)
            assert forward == backward

    def test_dependent_base_rejected(self):
        B = [(Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(1))]
        with pytest.raises(ValueError, match="dependent"):
            close_under_reflections(B)


class TestCoxeterNumber:
    @pytest.mark.parametrize("label,h", [("A2", 3), ("A8", 9), ("D4", 6), ("E6", 12), ("E7", 18), ("E8", 30)])
    def test_values(self, label, h):
        rs = root_system(SimpleTypeId.from_string(label))
        assert coxeter_number(rs) == h == rs.coxeter_number


class TestCartanSpectrum:
    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_eigenvalues_in_open_interval_and_smallest_value(self, label):
        rs = root_system(SimpleTypeId.from_string(label))
        eigs = np.linalg.eigvalsh(rs.cartan.astype(float))
        assert np.all(eigs > 0) and np.all(eigs < 4)
        expected = 4 * math.sin(math.pi / (2 * rs.coxeter_number)) ** 2
        assert abs(eigs[0] - expected) < 1e-10


class TestBicolor:
    def test_a3_path_alternates(self):
        C = cartan_matrix(simple_roots(SimpleTypeId.from_string("A3")))
        assert bicolor(C).colors == (1, -1, 1)

    def test_a1_single_node(self):
        assert bicolor(np.array([[2]])).colors == (1,)

    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_proper_coloring(self, label):
        C = cartan_matrix(simple_roots(SimpleTypeId.from_string(label)))
        colors = bicolor(C).colors
        assert colors[0] == 1
        n = C.shape[0]
        for i in range(n):
            for j in range(n):
                if i != j and C[i, j] == -1:
                    assert colors[i] != colors[j]

    def test_odd_cycle_rejected(self):
        triangle = np.array([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
        with pytest.raises(ValueError, match="bipartite"):
            bicolor(triangle)


class TestCoxeterElement:
    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_orthogonal_of_order_h_with_correct_determinant(self, label):
        rs = root_system(SimpleTypeId.from_string(label))
        w = coxeter_element(rs)
        l, h = rs.rank, rs.coxeter_number
        assert np.max(np.abs(w.matrix.T @ w.matrix - np.eye(l))) < 1e-12
        assert abs(np.linalg.det(w.matrix) - (-1) ** l) < 1e-10
        power = np.eye(l)
        for k in range(1, h):
            power = power @ w.matrix
            assert np.max(np.abs(power - np.eye(l))) > 1e-6, f"w^{k} = I before h"
        assert np.max(np.abs(power @ w.matrix - np.eye(l))) < 1e-10

    def test_a2_is_a_rotation_by_two_pi_thirds(self):
        rs = root_system(SimpleTypeId.from_string("A2"))
        w = coxeter_element(rs)
        # trace of a plane rotation by 2*pi/3 is 2 cos(2*pi/3) = -1
        assert abs(np.trace(w.matrix) + 1) < 1e-12

    def test_exact_action_agrees_with_matrix(self):
        for label in ("A3", "D4", "E8"):
            rs = root_system(SimpleTypeId.from_string(label))
            w = coxeter_element(rs)
            for root in rs.roots[:: max(1, len(rs.roots) // 17)]:
                vec = np.array([float(c) for c in root])
                by_matrix = w.frame @ (w.matrix @ (w.frame.T @ vec))
                by_exact = np.array([float(c) for c in w.act(root)])
                assert np.max(np.abs(by_matrix - by_exact)) < 1e-12

    def test_exact_action_permutes_the_root_set(self):
        rs = root_system(SimpleTypeId.from_string("E7"))
        w = coxeter_element(rs)
        image = {w.act(r) for r in rs.roots}
        assert image == set(rs.roots)

    def test_improper_coloring_rejected(self):
        rs = root_system(SimpleTypeId.from_string("A2"))
        from e8ising.rootsystems import Bicoloring

        with pytest.raises(ValueError, match="proper"):
            coxeter_element(rs, Bicoloring((1, 1)))

    def test_ordering_is_plus_colored_first(self):
        rs = root_system(SimpleTypeId.from_string("E8"))
        w = coxeter_element(rs)
        colors = [w.coloring.colors[i] for i in w.ordering]
        flip = colors.index(-1)
        assert all(c == 1 for c in colors[:flip])
        assert all(c == -1 for c in colors[flip:])


class TestExponents:
    def test_e8(self):
        rs = root_system(SimpleTypeId.from_string("E8"))
        assert exponents(coxeter_element(rs), 30) == [1, 7, 11, 13, 17, 19, 23, 29]

    def test_a2(self):
        rs = root_system(SimpleTypeId.from_string("A2"))
        assert exponents(coxeter_element(rs), 3) == [1, 2]

    def test_d4_has_a_repeated_exponent(self):
        rs = root_system(SimpleTypeId.from_string("D4"))
        assert exponents(coxeter_element(rs), 6) == [1, 3, 3, 5]

    @pytest.mark.parametrize("label", ALL_TYPES)
    def test_symmetric_under_complement(self, label):
        rs = root_system(SimpleTypeId.from_string(label))
        h = rs.coxeter_number
        ms = exponents(coxeter_element(rs), h)
        assert len(ms) == rs.rank
        assert all(1 <= m <= h - 1 for m in ms)
        assert sorted(h - m for m in ms) == ms
