"""Frame-by-frame orchestration: state, results, reports, determinism."""

import numpy as np
import pytest

from vigil import (
    ChannelConfig,
    FrameResult,
    IorConfig,
    PipelineConfig,
    VideoAnalyzer,
    render,
    single_actor_script,
)


@pytest.fixture(scope="module")
def short_scene():
    script = single_actor_script(seed=2, frame_count=12)
    return render(script)


class TestFrameResult:
    def test_result_fields_are_consistent(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer()
        result = analyzer.process(frames[0])
        assert isinstance(result, FrameResult)
        assert result.frame_index == 0
        assert result.working_frame.height == 64
        assert result.working_frame.width == 86
        assert result.saliency.values.shape == (64, 86)
        assert len(result.regions) == len(result.descriptors) == len(result.track_ids)
        assert len(set(result.track_ids)) == len(result.track_ids)
        assert result.total_ms >= result.bottom_up_ms >= 0.0

    def test_every_result_region_has_a_live_track(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer()
        for frame in frames[:6]:
            result = analyzer.process(frame)
            for track_id in result.track_ids:
                assert track_id in analyzer.memory.records

    def test_outlines_flag_event_tracks(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer()
        result = analyzer.process(frames[0])
        outlines = result.outlines()
        assert len(outlines) == len(result.regions)
        flagged = {e.track_id for e in result.events}
        for (bbox, is_flagged), region, tid in zip(
            outlines, result.regions, result.track_ids
        ):
            assert bbox == region.bbox
            assert is_flagged == (tid in flagged)


class TestAnalyzerState:
    def test_frames_seen_counts_processed_frames(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer()
        analyzer.process_all(frames[:5])
        assert analyzer.frames_seen == 5
        assert len(analyzer.region_sizes) == 5

    def test_memory_respects_capacity(self, short_scene):
        frames, _ = short_scene
        config = PipelineConfig(memory_capacity=2)
        analyzer = VideoAnalyzer(config)
        analyzer.process_all(frames)
        assert len(analyzer.memory) <= 2

    def test_motion_channel_needs_tau_frames_of_history(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer(PipelineConfig(channels=ChannelConfig(latency_tau=3)))
        for frame in frames[:6]:
            analyzer.process(frame)
        assert len(analyzer._intensity_history) == 3

    def test_track_births_record_every_new_track(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer()
        analyzer.process_all(frames)
        born_ids = [tid for tid, _, _ in analyzer.track_births]
        assert len(born_ids) == len(set(born_ids))
        assert set(analyzer.memory.records) <= set(born_ids)

    def test_observations_only_for_reidentifications(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer()
        first = analyzer.process(frames[0])
        assert analyzer.observations == []  # nothing to re-identify yet
        analyzer.process(frames[1])
        assert all(o.frame_index >= 1 for o in analyzer.observations)


class TestDeterminism:
    def test_two_analyzers_agree_exactly(self, short_scene):
        frames, _ = short_scene
        a = VideoAnalyzer().process_all(frames)
        b = VideoAnalyzer().process_all(frames)
        assert a.events == b.events
        assert a.observations == b.observations
        assert a.track_births == b.track_births
        assert a.region_sizes == b.region_sizes


class TestReport:
    def test_without_truth_quality_fields_stay_none(self, short_scene):
        frames, _ = short_scene
        analyzer = VideoAnalyzer().process_all(frames)
        report = analyzer.report()
        assert report.frame_count == len(frames)
        assert report.true_matches is None
        assert report.false_matches is None
        assert report.match_score is None
        assert report.false_alerts is None
        assert report.coverage > 0.0
        assert report.total_ms >= report.bottom_up_ms > 0.0

    def test_with_truth_quality_fields_fill_in(self, short_scene):
        frames, truth = short_scene
        analyzer = VideoAnalyzer().process_all(frames)
        report = analyzer.report(truth)
        assert report.true_matches is not None
        assert report.false_matches is not None
        assert report.match_opportunities == truth.match_opportunities()
        assert report.false_alerts is not None
        assert 0.0 <= report.false_alert_rate <= 1.0
        if report.match_score is not None:
            assert 0.0 <= report.match_score <= 1.0

    def test_empty_analyzer_report_is_all_zero(self):
        report = VideoAnalyzer().report()
        assert report.frame_count == 0
        assert report.coverage == 0.0
        assert report.bottom_up_ms == 0.0


class TestTracking:
    def test_attention_follows_the_single_actor(self, short_scene):
        # with attention restricted to the strongest region, that region
        # must ride the actor on every frame with motion history, and any
        # re-identification the tracker commits to must be correct
        frames, truth = short_scene
        analyzer = VideoAnalyzer(PipelineConfig(ior=IorConfig(max_regions=1)))
        for frame in frames:
            result = analyzer.process(frame)
            assert len(result.track_ids) == 1
            if frame.index == 0:
                continue  # no motion history yet; the first map is unreliable
            assert truth.locate(frame.index, result.regions[0].center, slack=6.0) == 0
        report = analyzer.report(truth)
        assert report.true_matches >= 1
        assert report.false_matches == 0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            PipelineConfig(memory_capacity=0)


class TestWorkingScale:
    def test_large_frames_are_analyzed_at_working_size(self):
        rng = np.random.default_rng(4)
        from vigil import Frame

        analyzer = VideoAnalyzer()
        frame = Frame(rgb=rng.uniform(size=(640, 860, 3)), index=0)
        result = analyzer.process(frame)
        assert (result.working_frame.height, result.working_frame.width) == (64, 86)
        assert result.saliency.values.shape == (64, 86)

    def test_ior_defaults_match_reference_area(self):
        assert IorConfig().max_region_px == 300
