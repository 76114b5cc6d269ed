"""Generated polygon fixtures: reproducing the bundled shapes and
staying valid for every seed."""

import pytest

from torushom.errors import StarConditionError, ValidationError
from torushom.fields import QQ
from torushom.fixtures import fixture_to_data, resolve_fixture
from torushom.generator import polygon_with_holes

from conftest import ANNULUS_ROWS, DIGON_ROWS, SQUARE_ROWS


class TestReproducesBundled:
    def test_square_with_one_hole_matches_bundled(self):
        made = polygon_with_holes((4, 3), rows=ANNULUS_ROWS)
        bundled = resolve_fixture("square_hole")
        made_data = fixture_to_data(made)
        bundled_data = fixture_to_data(bundled)
        assert made_data["poset"] == bundled_data["poset"]
        assert made_data["lambda"] == bundled_data["lambda"]
        assert made_data["interior_cells"] == bundled_data["interior_cells"]

    def test_square_matches_bundled(self):
        made = polygon_with_holes((4,), rows=SQUARE_ROWS)
        bundled = resolve_fixture("square")
        assert fixture_to_data(made)["poset"] == \
            fixture_to_data(bundled)["poset"]
        assert fixture_to_data(made)["lambda"] == \
            fixture_to_data(bundled)["lambda"]

    def test_digon_matches_bundled(self):
        made = polygon_with_holes((2,), rows=DIGON_ROWS)
        bundled = resolve_fixture("digon")
        assert fixture_to_data(made)["poset"] == \
            fixture_to_data(bundled)["poset"]
        assert fixture_to_data(made)["interior_cells"] == \
            fixture_to_data(bundled)["interior_cells"]

    def test_one_hole_homology(self):
        made = polygon_with_holes((4, 3), rows=ANNULUS_ROWS)
        assert made.manifold.total_betti(QQ) == (1, 1, 7, 1, 1)

    def test_default_name(self):
        assert polygon_with_holes((4, 3)).name == "polygon_4_3"
        assert polygon_with_holes((3,), name="tri").name == "tri"


class TestTwoHoles:
    def test_totals(self):
        fix = polygon_with_holes((3, 3, 3), seed=5)
        assert fix.manifold.total_betti(QQ) == (1, 2, 11, 2, 1)

    def test_restriction_kernel_counts_holes(self):
        fix = polygon_with_holes((3, 3, 3), seed=5)
        assert len(fix.manifold.kernel_of_g(2)) == 2

    def test_initial_page(self):
        fix = polygon_with_holes((3, 3, 3), seed=5)
        assert fix.manifold.diagonal_dimensions(QQ, "initial") == (3, 7, 1)

    def test_three_holes(self):
        fix = polygon_with_holes((4, 2, 2, 2), seed=9)
        assert fix.manifold.total_betti(QQ) == (1, 3, 14, 3, 1)


class TestSeeds:
    def test_deterministic(self):
        a = fixture_to_data(polygon_with_holes((5, 3), seed=17))
        b = fixture_to_data(polygon_with_holes((5, 3), seed=17))
        assert a == b

    def test_seeds_vary_rows(self):
        seen = set()
        for s in range(8):
            data = fixture_to_data(polygon_with_holes((5, 3), seed=s))
            seen.add(tuple(tuple(r) for r in data["lambda"].values()))
        assert len(seen) > 1

    def test_every_seed_is_valid(self):
        for seed in range(20):
            fix = polygon_with_holes((3, 4), seed=seed)
            assert fix.manifold.corner.validate() == []
            assert fix.manifold.total_betti(QQ) == (1, 1, 7, 1, 1)

    def test_odd_even_circle_mix(self):
        for seed in range(6):
            fix = polygon_with_holes((5, 2, 3), seed=seed)
            assert fix.manifold.total_betti(QQ) == (1, 2, 12, 2, 1)


class TestValidation:
    def test_no_circles(self):
        with pytest.raises(ValidationError):
            polygon_with_holes(())

    def test_short_circle(self):
        with pytest.raises(ValidationError):
            polygon_with_holes((4, 1))

    def test_bad_rows_raise_corner_error(self):
        rows = dict(SQUARE_ROWS)
        rows[2] = (2, 0)
        with pytest.raises(StarConditionError):
            polygon_with_holes((4,), rows=rows)

    def test_missing_row(self):
        rows = dict(SQUARE_ROWS)
        del rows[3]
        with pytest.raises(ValidationError):
            polygon_with_holes((4,), rows=rows)
