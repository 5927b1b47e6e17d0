"""Region peel-off from saliency maps, cross-checked against a flood-fill oracle."""

import numpy as np
import pytest
from scipy import ndimage

from oracles import extract_regions_oracle, is_single_8_connected
from vigil import IorConfig, SaliencyMap, extract_regions
from vigil.ior import alpha_at

FLAT_ALPHA = IorConfig(alpha_far=0.55, alpha_near=0.55, max_region_px=1000)


def smooth_random_map(rng, shape):
    """Normalized map with blob structure (random noise smoothed twice)."""
    values = rng.uniform(size=shape)
    values = ndimage.uniform_filter(values, size=5)
    values = ndimage.uniform_filter(values, size=3)
    values -= values.min()
    return values / values.max()


def regions_equal(regions, oracle_regions):
    assert len(regions) == len(oracle_regions)
    for got, want in zip(regions, oracle_regions):
        assert {(int(x), int(y)) for x, y in got.pixels} == want["pixels"]
        assert got.peak == want["peak"]
        assert got.peak_value == pytest.approx(want["peak_value"], abs=1e-12)


def oracle_for(values, config):
    return extract_regions_oracle(
        values,
        alpha_far=config.alpha_far,
        alpha_near=config.alpha_near,
        max_regions=config.max_regions,
        max_region_px=config.max_region_px,
        min_peak_fraction=config.min_peak_fraction,
    )


class TestAlphaAt:
    def test_endpoints(self):
        config = IorConfig(alpha_far=0.65, alpha_near=0.45)
        assert alpha_at(0, 64, config) == pytest.approx(0.65)
        assert alpha_at(63, 64, config) == pytest.approx(0.45)

    def test_midpoint_is_the_average(self):
        config = IorConfig(alpha_far=0.65, alpha_near=0.45)
        assert alpha_at(31, 63, config) == pytest.approx(0.55)

    def test_single_row_map_uses_the_average(self):
        config = IorConfig(alpha_far=0.7, alpha_near=0.5)
        assert alpha_at(0, 1, config) == pytest.approx(0.6)

    def test_row_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            alpha_at(64, 64, IorConfig())
        with pytest.raises(ValueError):
            alpha_at(-1, 64, IorConfig())


class TestExtractRegions:
    def test_single_plateau(self):
        values = np.full((8, 8), 0.05)
        values[1:4, 1:4] = 1.0
        regions = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)
        assert len(regions) == 1
        assert regions[0].size == 9
        assert regions[0].peak_value == 1.0
        assert regions[0].bbox == (1, 1, 3, 3)
        regions_equal(regions, oracle_for(values, FLAT_ALPHA))

    def test_two_plateaus_extracted_strongest_first(self):
        values = np.zeros((12, 12))
        values[1:4, 1:4] = 0.9
        values[8:11, 8:11] = 1.0
        regions = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)
        assert [r.peak_value for r in regions] == [1.0, 0.9]
        assert regions[0].bbox == (8, 8, 10, 10)
        assert regions[1].bbox == (1, 1, 3, 3)
        regions_equal(regions, oracle_for(values, FLAT_ALPHA))

    def test_oversize_component_suppressed_but_search_continues(self):
        values = np.zeros((64, 86))
        values[10:35, 10:24] = 0.95  # 25 x 14 = 350 px, above the 300 cap
        values[50:53, 60:63] = 0.9
        config = IorConfig(alpha_far=0.55, alpha_near=0.55)
        regions = extract_regions(SaliencyMap(values=values), config)
        assert len(regions) == 1
        assert regions[0].peak_value == pytest.approx(0.9)
        assert regions[0].size == 9
        regions_equal(regions, oracle_for(values, config))

    def test_stop_floor_leaves_weak_residue_unattended(self):
        values = np.full((10, 10), 0.05)  # below 0.1 * max once the peak is gone
        values[2:5, 2:5] = 1.0
        regions = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)
        assert len(regions) == 1

    def test_region_cap(self):
        values = np.zeros((10, 40))
        peaks = (1.0, 0.95, 0.9, 0.85, 0.8, 0.75)
        for i, peak in enumerate(peaks):
            values[4, 3 + 6 * i] = peak
        regions = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)
        assert len(regions) == FLAT_ALPHA.max_regions == 4
        assert [r.peak_value for r in regions] == [1.0, 0.95, 0.9, 0.85]
        regions_equal(regions, oracle_for(values, FLAT_ALPHA))

    def test_equal_maxima_tie_breaks_to_smallest_row_then_column(self):
        values = np.zeros((8, 8))
        values[4, 1] = 1.0
        values[2, 5] = 1.0
        regions = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)
        assert regions[0].peak == (5, 2)
        assert regions[1].peak == (1, 4)
        regions_equal(regions, oracle_for(values, FLAT_ALPHA))

    def test_all_zero_map_yields_nothing(self):
        assert extract_regions(SaliencyMap(values=np.zeros((8, 8))), IorConfig()) == []

    def test_band_uses_the_seed_rows_alpha(self):
        # same two-pixel staircase at top and bottom; the near (bottom)
        # threshold is lower, so the bottom region swallows the step
        values = np.zeros((50, 9))
        values[0, 2], values[0, 3] = 1.0, 0.5
        values[49, 6], values[49, 7] = 1.0, 0.5
        config = IorConfig(alpha_far=0.7, alpha_near=0.4, max_regions=2)
        regions = extract_regions(SaliencyMap(values=values), config)
        by_row = {r.peak[1]: r for r in regions}
        assert by_row[0].size == 1  # 0.5 < 0.7 * 1.0
        assert by_row[49].size == 2  # 0.5 >= 0.4 * 1.0
        regions_equal(regions, oracle_for(values, config))

    def test_matches_oracle_on_random_structured_maps(self):
        rng = np.random.default_rng(55)
        config = IorConfig()
        for _ in range(25):
            shape = (int(rng.integers(16, 48)), int(rng.integers(16, 48)))
            values = smooth_random_map(rng, shape)
            regions = extract_regions(SaliencyMap(values=values), config)
            regions_equal(regions, oracle_for(values, config))

    def test_structural_invariants_on_random_maps(self):
        rng = np.random.default_rng(56)
        config = IorConfig()
        for _ in range(15):
            values = smooth_random_map(rng, (32, 40))
            regions = extract_regions(SaliencyMap(values=values), config)
            assert len(regions) <= config.max_regions
            seen = set()
            for region in regions:
                pixels = {(int(x), int(y)) for x, y in region.pixels}
                assert not (pixels & seen)  # pairwise disjoint
                seen |= pixels
                assert is_single_8_connected(pixels)
                assert (region.peak[0], region.peak[1]) in pixels
                # values never mutate outside extracted components, so the
                # original map still holds every region's extraction band
                alpha = alpha_at(region.peak[1], values.shape[0], config)
                for x, y in pixels:
                    assert alpha * region.peak_value - 1e-12 <= values[y, x]
                    assert values[y, x] <= region.peak_value + 1e-12
            peaks = [r.peak_value for r in regions]
            assert peaks == sorted(peaks, reverse=True)

    def test_growing_alpha_shrinks_the_first_region(self):
        rng = np.random.default_rng(57)
        values = smooth_random_map(rng, (30, 30))
        previous = None
        for alpha in (0.35, 0.55, 0.75):
            config = IorConfig(alpha_far=alpha, alpha_near=alpha, max_regions=1,
                               max_region_px=5000)
            region = extract_regions(SaliencyMap(values=values), config)[0]
            pixels = {(int(x), int(y)) for x, y in region.pixels}
            if previous is not None:
                assert pixels <= previous
            previous = pixels

    def test_input_map_never_mutated(self):
        rng = np.random.default_rng(58)
        values = smooth_random_map(rng, (20, 20))
        copy = values.copy()
        extract_regions(SaliencyMap(values=values), IorConfig())
        assert np.array_equal(values, copy)

    def test_oversize_cap_scales_with_map_area(self):
        # a 9 px plateau is oversize on an 8x8 map: the 300 px cap shrinks
        # to 300 * 64 / 5504, roughly 3.5 px
        values = np.zeros((8, 8))
        values[1:4, 1:4] = 1.0
        regions = extract_regions(
            SaliencyMap(values=values), IorConfig(alpha_far=0.55, alpha_near=0.55)
        )
        assert regions == []


class TestRegionGeometry:
    def test_center_is_bbox_midpoint(self):
        values = np.zeros((10, 10))
        values[2:5, 3:7] = 1.0
        region = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)[0]
        assert region.bbox == (3, 2, 6, 4)
        assert region.center == (4.5, 3.0)

    def test_size_matches_pixel_count(self):
        values = np.zeros((10, 10))
        values[2:5, 3:7] = 1.0
        region = extract_regions(SaliencyMap(values=values), FLAT_ALPHA)[0]
        assert region.size == len(region.pixels) == 12


class TestIorConfig:
    def test_alpha_bounds_enforced(self):
        for kwargs in (
            {"alpha_far": 0.0},
            {"alpha_near": 1.0},
            {"min_peak_fraction": 0.0},
            {"min_peak_fraction": 1.5},
        ):
            with pytest.raises(ValueError):
                IorConfig(**kwargs)

    def test_counts_enforced(self):
        with pytest.raises(ValueError):
            IorConfig(max_regions=0)
        with pytest.raises(ValueError):
            IorConfig(max_region_px=0)
