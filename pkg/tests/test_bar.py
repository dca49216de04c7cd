from artinhom.bar import (
    boundary,
    cell_length,
    cells_of_grade,
    faces,
    grade_complex,
    iter_cells_of_grade,
    merge_faces,
)
from artinhom.matching import BarMatching


def W(text):
    return tuple(text)


class TestFaces:
    def test_two_cell(self, mon_a2):
        cell = (W("a"), W("b"))
        assert faces(mon_a2, cell) == [
            (1, (W("b"),)),
            (-1, (W("ab"),)),
            (1, (W("a"),)),
        ]

    def test_one_cell_hits_the_point_twice(self, mon_a2):
        assert faces(mon_a2, (W("a"),)) == [(1, ()), (-1, ())]
        assert boundary(mon_a2, (W("a"),)) == {}

    def test_sign_pattern(self, mon_a3):
        cell = (W("a"), W("b"), W("c"))
        signs = [sign for sign, _ in faces(mon_a3, cell)]
        assert signs == [1, -1, 1, -1]

    def test_faces_never_degenerate(self, mon_a2):
        for n in range(1, 5):
            for cell in iter_cells_of_grade(mon_a2, n):
                for _, face in faces(mon_a2, cell):
                    assert all(entry for entry in face)

    def test_merged_product_respects_multiplication(self, mon_a2):
        cell = (W("ab"), W("a"))
        assert merge_faces(mon_a2, cell) == [(-1, (W("aba"),))]


class TestGradeEnumeration:
    def test_small_grades(self, mon_a2):
        assert cells_of_grade(mon_a2, 0) == [()]
        assert sorted(cells_of_grade(mon_a2, 1)) == [(W("a"),), (W("b"),)]
        assert sorted(cells_of_grade(mon_a2, 2)) == sorted(
            [
                (W("aa"),),
                (W("ab"),),
                (W("ba"),),
                (W("bb"),),
                (W("a"), W("a")),
                (W("a"), W("b")),
                (W("b"), W("a")),
                (W("b"), W("b")),
            ]
        )

    def test_counts_match_composition_oracle(self, mon_a2, mon_ainf):
        # independent count: convolve the element counts over compositions
        for mon in (mon_a2, mon_ainf):
            element_counts = [len(mon.elements_of_length(n)) for n in range(9)]
            convolution = [1]
            for n in range(1, 9):
                convolution.append(
                    sum(
                        element_counts[l] * convolution[n - l]
                        for l in range(1, n + 1)
                    )
                )
            for n in range(7):
                assert sum(1 for _ in iter_cells_of_grade(mon, n)) == convolution[n]

    def test_cells_have_the_right_length(self, mon_a2):
        for n in range(5):
            for cell in iter_cells_of_grade(mon_a2, n):
                assert cell_length(cell) == n


class TestBoundarySquaresToZero:
    def test_full_boundary(self, mon_a2, mon_ainf):
        for mon in (mon_a2, mon_ainf):
            for n in range(7):
                for cell in iter_cells_of_grade(mon, n):
                    acc = {}
                    for sign, face in faces(mon, cell):
                        for sign2, grandface in faces(mon, face):
                            key = grandface
                            acc[key] = acc.get(key, 0) + sign * sign2
                    assert not any(acc.values()), cell

    def test_grade_complexes_validate(self, mon_a2, mon_b2):
        for mon in (mon_a2, mon_b2):
            for n in range(6):
                grade_complex(mon, n).check_composition()


class TestEta:
    def test_examples(self, mon_a2):
        matching = BarMatching(mon_a2)
        assert matching.eta(()) == (0, 0)
        assert matching.eta((W("a"), W("a"))) == (2, 1)
        assert matching.eta((W("ab"), W("a"))) == (3, 0)

    def test_eta_is_a_poset_map(self, mon_a2):
        matching = BarMatching(mon_a2)
        for n in range(6):
            for cell in iter_cells_of_grade(mon_a2, n):
                grade = matching.eta(cell)
                for _, face in faces(mon_a2, cell):
                    assert matching.eta(face) <= grade
