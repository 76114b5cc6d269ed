from fractions import Fraction

import pytest

from torushom.errors import CoefficientError, ValidationError
from torushom.fields import GF, QQ, ZZ
from torushom.orbit import CornerComplex, canonical_selector

ANNULUS_CELLS = [
    {"id": "estar", "dim": 1, "boundary": [[11, 1], [14, 1]]},
    {"id": "c", "dim": 2, "boundary": [[v, 1] for v in range(1, 8)]},
]

SQUARE_CELLS = [
    {"id": "c0", "dim": 2, "boundary": [[v, 1] for v in range(1, 5)]},
]

DIGON_CELLS = [
    {"id": "c", "dim": 2, "boundary": [[1, 1], [2, 1]]},
]


@pytest.fixture
def annulus_cx(annulus_poset):
    return CornerComplex(annulus_poset, ANNULUS_CELLS)


@pytest.fixture
def square_cx(square_poset):
    return CornerComplex(square_poset, SQUARE_CELLS)


@pytest.fixture
def digon_cx(digon_poset):
    return CornerComplex(digon_poset, DIGON_CELLS)


class TestConstruction:
    def test_cell_counts(self, annulus_cx):
        assert sorted(annulus_cx.face_cells(1)) == [1, 2, 3, 4, 5, 6, 7]
        assert sorted(annulus_cx.face_cells(0)) == [8, 9, 10, 11, 12, 13, 14]
        assert annulus_cx.interior_cells(1) == ["estar"]
        assert annulus_cx.interior_cells(2) == ["c"]
        assert annulus_cx.cells("space", 1).count("estar") == 1

    def test_euler_characteristic(self, annulus_cx, square_cx, digon_cx):
        assert annulus_cx.euler_characteristic() == 0
        assert square_cx.euler_characteristic() == 1
        assert digon_cx.euler_characteristic() == 1

    def test_unknown_reference(self, square_poset):
        cells = [{"id": "c0", "dim": 2, "boundary": [[1, 1], ["nope", 1]]}]
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, cells)

    def test_reference_dimension_mismatch(self, annulus_poset):
        cells = [{"id": "estar", "dim": 1, "boundary": [[1, 1]]}]
        with pytest.raises(ValidationError):
            CornerComplex(annulus_poset, cells)

    def test_duplicate_id(self, square_poset):
        cells = SQUARE_CELLS + [{"id": "c0", "dim": 2, "boundary": []}]
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, cells)

    def test_id_collides_with_poset_element(self, square_poset):
        cells = [{"id": 3, "dim": 2, "boundary": []}]
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, cells)

    def test_dimension_too_large(self, square_poset):
        cells = [{"id": "big", "dim": 3, "boundary": []}]
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, cells)

    def test_nonzero_boundary_on_point(self, square_poset):
        cells = [{"id": "pt", "dim": 0, "boundary": [[5, 1]]}]
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, cells)

    def test_noninteger_coefficient(self, square_poset):
        cells = [{"id": "c0", "dim": 2, "boundary": [[1, "1"]]}]
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, cells)

    def test_missing_key(self, square_poset):
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, [{"dim": 2}])

    def test_selector_aliases(self, square_cx):
        assert canonical_selector("dQ") == "boundary"
        assert canonical_selector("REL") == "pair"
        assert square_cx.complex_for("q") is square_cx.complex_for("space")
        with pytest.raises(ValidationError):
            canonical_selector("everything")


class TestHomology:
    def test_annulus_boundary(self, annulus_cx):
        h = annulus_cx.homology("boundary", coeffs=ZZ)
        assert h[0].free_rank == 2 and not h[0].torsion
        assert h[1].free_rank == 2 and not h[1].torsion
        assert h[2].is_trivial()

    def test_annulus_space(self, annulus_cx):
        h = annulus_cx.homology("space", coeffs=ZZ)
        assert h[0].describe() == "Z"
        assert h[1].describe() == "Z"
        assert h[2].is_trivial()

    def test_annulus_pair(self, annulus_cx):
        h = annulus_cx.homology("pair", coeffs=ZZ)
        assert h[0].is_trivial()
        assert h[1].describe() == "Z"
        assert h[2].describe() == "Z"

    def test_square_all_selectors(self, square_cx):
        assert square_cx.betti("boundary") == {0: 1, 1: 1, 2: 0}
        assert square_cx.betti("space") == {0: 1, 1: 0, 2: 0}
        assert square_cx.betti("pair") == {0: 0, 1: 0, 2: 1}

    def test_digon_matches_square_shape(self, digon_cx, square_cx):
        for sel in ("boundary", "space", "pair"):
            assert digon_cx.betti(sel) == square_cx.betti(sel)

    def test_field_ranks_match_integer_ranks(self, annulus_cx):
        for sel in ("boundary", "space", "pair"):
            zz = {k: g.free_rank
                  for k, g in annulus_cx.homology(sel, coeffs=ZZ).items()}
            for field in (QQ, GF(2), GF(5)):
                assert annulus_cx.betti(sel, field) == zz

    def test_single_degree_access(self, annulus_cx):
        g = annulus_cx.homology("pair", 2, ZZ)
        assert g.free_rank == 1
        assert g.labels == ["c"]


class TestDeltaImage:
    def test_annulus_degree_zero(self, annulus_cx):
        rows = annulus_cx.delta_image(0)
        assert rows == [{11: 1, 14: 1}]

    def test_annulus_degree_one(self, annulus_cx):
        rows = annulus_cx.delta_image(1)
        assert rows == [{v: 1 for v in range(1, 8)}]

    def test_square(self, square_cx):
        assert square_cx.delta_image(0) == []
        assert square_cx.delta_image(1) == [{1: 1, 2: 1, 3: 1, 4: 1}]

    def test_digon(self, digon_cx):
        assert digon_cx.delta_image(0) == []
        assert digon_cx.delta_image(1) == [{1: 1, 2: 1}]

    def test_rational_coefficients(self, annulus_cx):
        rows = annulus_cx.delta_image(0, QQ)
        assert rows == [{11: Fraction(1), 14: Fraction(1)}]
        assert len(annulus_cx.delta_image(1, QQ)) == 1

    def test_prime_field(self, annulus_cx):
        rows = annulus_cx.delta_image(1, GF(2))
        assert rows == [{v: 1 for v in range(1, 8)}]

    def test_degree_out_of_range(self, annulus_cx):
        with pytest.raises(ValidationError):
            annulus_cx.delta_image(2)
        with pytest.raises(ValidationError):
            annulus_cx.delta_image(-1)

    def test_torsion_guard(self, annulus_poset):
        cells = ANNULUS_CELLS + [
            {"id": "e2", "dim": 1, "boundary": [[11, 1], [14, 1]]},
            {"id": "w", "dim": 2,
             "boundary": [["estar", 2], ["e2", -2]]},
        ]
        cx = CornerComplex(annulus_poset, cells)
        assert cx.homology("pair", 1, ZZ).torsion == [2]
        with pytest.raises(CoefficientError):
            cx.delta_image(0)
        rows = cx.delta_image(0, QQ)
        assert rows == [{11: Fraction(1), 14: Fraction(1)}]


class TestValidation:
    def test_clean_complexes(self, annulus_cx, square_cx, digon_cx):
        for cx in (annulus_cx, square_cx, digon_cx):
            assert cx.validate() == []

    def test_broken_boundary_square(self, square_poset):
        cells = [{"id": "c0", "dim": 2,
                  "boundary": [[1, 1], [2, 1], [3, 1]]}]
        cx = CornerComplex(square_poset, cells)
        problems = cx.validate()
        assert problems
        assert any("space" in p for p in problems)

    def test_orientability_check(self, annulus_poset):
        cells = [ANNULUS_CELLS[0]]
        cx = CornerComplex(annulus_poset, cells)
        problems = cx.validate()
        assert any("orientable" in p for p in problems)
        relaxed = CornerComplex(annulus_poset, cells, orientable=False)
        assert relaxed.validate() == []

    def test_consistency(self, annulus_cx, square_cx, digon_cx):
        for cx in (annulus_cx, square_cx, digon_cx):
            assert cx.consistency_violations(QQ) == []
            assert cx.consistency_violations(GF(3)) == []

    def test_transpose_duality_ranks(self, annulus_cx, annulus_poset):
        simplex = annulus_poset.simplex_chain_complex()
        for q in range(2):
            left = annulus_cx.homology("boundary", q, QQ).rank
            right = simplex.homology(1 - q, QQ).rank
            assert left == right

    def test_connecting_rank_matches_kernel(self, annulus_cx):
        assert len(annulus_cx.delta_image(0, QQ)) == 1
        assert len(annulus_cx.delta_image(1, QQ)) == 1


class TestSignTransport:
    def flipped(self, poset, cells, flips):
        signs = poset.gauge_transform(poset.default_sign_convention(), flips)
        adjusted = []
        for cell in cells:
            boundary = [[ref, -co if ref in flips else co]
                        for ref, co in cell["boundary"]]
            adjusted.append({"id": cell["id"], "dim": cell["dim"],
                             "boundary": boundary})
        return CornerComplex(poset, adjusted, signs=signs)

    def test_gauge_preserves_everything(self, annulus_poset, annulus_cx):
        flips = {1, 11, 13}
        cx = self.flipped(annulus_poset, ANNULUS_CELLS, flips)
        assert cx.validate() == []
        assert cx.consistency_violations(QQ) == []
        for sel in ("boundary", "space", "pair"):
            assert cx.betti(sel) == annulus_cx.betti(sel)
        rows = cx.delta_image(0)
        assert rows == [{11: -1, 14: 1}]
        rows = cx.delta_image(1)
        assert rows == [{1: -1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1}]

    def test_incomplete_sign_table_rejected(self, square_poset):
        signs = square_poset.default_sign_convention()
        signs.pop((5, 1))
        with pytest.raises(ValidationError):
            CornerComplex(square_poset, SQUARE_CELLS, signs=signs)
