"""Scripted scene rendering: determinism, motion arithmetic, truth labels."""

import numpy as np
import pytest

from vigil import (
    ActorSpec,
    SceneScript,
    load_script,
    patrol_scene,
    render,
    save_script,
    single_actor_script,
)
from vigil.synthgen import (
    SUSPICION_WINDOW,
    benchmark_suite,
    script_from_dict,
    script_to_dict,
)

RED = (0.85, 0.15, 0.15)


def walker(jump_frame=None, jump_factor=1.0, speed=2.0):
    return ActorSpec(color=RED, size=(8.0, 6.0),
                     waypoints=((10.0, 12.0), (50.0, 12.0)), speeds=(speed,),
                     jump_frame=jump_frame, jump_factor=jump_factor)


def scene(actor, frame_count=12, **kwargs):
    return SceneScript(seed=1, frame_count=frame_count, width=64, height=40,
                       actors=(actor,), **kwargs)


class TestDeterminism:
    def test_rendering_twice_is_bit_identical(self):
        script = scene(walker(jump_frame=5, jump_factor=3.0))
        frames_a, truth_a = render(script)
        frames_b, truth_b = render(script)
        assert truth_a == truth_b
        for fa, fb in zip(frames_a, frames_b):
            assert np.array_equal(fa.rgb, fb.rgb)

    def test_different_seeds_differ(self):
        base = scene(walker())
        other = SceneScript(seed=2, frame_count=12, width=64, height=40,
                            actors=(walker(),))
        assert not np.array_equal(render(base)[0][0].rgb, render(other)[0][0].rgb)

    def test_frame_indices_sequential(self):
        frames, _ = render(scene(walker(), frame_count=5))
        assert [f.index for f in frames] == [0, 1, 2, 3, 4]


class TestMotion:
    def test_constant_speed_then_permanent_jump_then_pin(self):
        # speed 2 from x=10; factor 3 at frame 5 makes the step 6 for good;
        # the path ends at x=50 and the actor stays there
        _, truth = render(scene(walker(jump_frame=5, jump_factor=3.0)))
        xs = [truth.boxes[t][0].center[0] for t in range(12)]
        assert xs == [10, 12, 14, 16, 18, 24, 30, 36, 42, 48, 50, 50]

    def test_no_jump_is_plain_uniform_motion(self):
        _, truth = render(scene(walker()))
        xs = [truth.boxes[t][0].center[0] for t in range(12)]
        assert xs == [10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32]

    def test_truth_box_is_centered_with_actor_extent(self):
        _, truth = render(scene(walker()))
        b = truth.boxes[3][0]
        assert b.center == (16.0, 12.0)
        assert (b.min_x, b.min_y, b.max_x, b.max_y) == (12.0, 9.0, 20.0, 15.0)


class TestSuspicionLabels:
    def test_jump_opens_a_window(self):
        _, truth = render(scene(walker(jump_frame=5, jump_factor=3.0)))
        assert truth.suspicious_frames == {
            0: frozenset(range(5, 5 + SUSPICION_WINDOW))
        }

    def test_unit_factor_jump_is_not_suspicious(self):
        _, truth = render(scene(walker(jump_frame=5, jump_factor=1.0)))
        assert truth.suspicious_frames == {}

    def test_steady_actor_is_never_suspicious(self):
        _, truth = render(scene(walker()))
        assert truth.suspicious_frames == {}


class TestRendering:
    def test_ramp_one_equals_exact_pixel_overlap(self):
        center, w, h = (10.3, 8.2), 5.0, 3.0
        actor = ActorSpec(color=RED, size=(w, h), waypoints=(center,),
                          speeds=(), edge_ramp=1.0)
        script = SceneScript(seed=3, frame_count=1, width=24, height=16,
                             noise_amplitude=0.0, actors=(actor,))
        rgb = render(script)[0][0].rgb

        def overlap(c, lo, hi):
            return np.clip(np.minimum(hi, c + 0.5) - np.maximum(lo, c - 0.5),
                           0.0, 1.0)

        cov = (overlap(np.arange(16), center[1] - h / 2, center[1] + h / 2)[:, None]
               * overlap(np.arange(24), center[0] - w / 2, center[0] + w / 2)[None, :])
        bg = np.array([0.45, 0.45, 0.45])
        expected = bg + cov[:, :, None] * (np.array(RED) - bg)
        assert np.abs(rgb - expected).max() < 1e-12

    def test_noise_free_background_is_flat(self):
        actor = ActorSpec(color=RED, size=(4.0, 2.0), waypoints=((5.0, 5.0),),
                          speeds=(), edge_ramp=1.0)
        script = SceneScript(seed=3, frame_count=2, width=24, height=16,
                             noise_amplitude=0.0, actors=(actor,))
        rgb = render(script)[0][1].rgb
        assert np.array_equal(rgb[12:, 12:], np.full((4, 12, 3), 0.45))

    def test_noise_stays_within_amplitude_of_background(self):
        script = SceneScript(seed=9, frame_count=1, width=32, height=32,
                             noise_amplitude=0.02, actors=())
        rgb = render(script)[0][0].rgb
        assert np.abs(rgb - 0.45).max() <= 0.02 + 1e-12
        assert np.abs(rgb - 0.45).max() > 0.0

    def test_values_stay_in_unit_range(self):
        frames, _ = render(patrol_scene(5, jump_frame=20, jump_factor=8.0))
        for frame in frames:
            assert frame.rgb.min() >= 0.0
            assert frame.rgb.max() <= 1.0


class TestScriptSerialization:
    def test_dict_round_trip_is_exact(self):
        script = scene(walker(jump_frame=5, jump_factor=3.0))
        assert script_from_dict(script_to_dict(script)) == script

    def test_file_round_trip(self, tmp_path):
        script = patrol_scene(7, jump_frame=30, jump_factor=6.0)
        path = tmp_path / "scene.json"
        save_script(script, path)
        assert load_script(path) == script

    def test_scalar_speed_broadcasts_to_every_segment(self):
        data = script_to_dict(scene(walker()))
        data["actors"][0]["waypoints"] = [[10.0, 12.0], [50.0, 12.0], [50.0, 30.0]]
        data["actors"][0]["speeds"] = 1.5
        script = script_from_dict(data)
        assert script.actors[0].speeds == (1.5, 1.5)

    def test_omitted_fields_take_defaults(self):
        data = script_to_dict(scene(walker()))
        for key in ("background_color", "noise_amplitude", "min_contrast"):
            data.pop(key, None)
        script = script_from_dict(data)
        assert script.background_color == (0.45, 0.45, 0.45)
        assert script.noise_amplitude == 0.02


class TestValidation:
    def test_frame_size_floor(self):
        with pytest.raises(ValueError, match="at least 8x8"):
            SceneScript(seed=1, frame_count=5, width=6, height=40, actors=())

    def test_low_contrast_actor_rejected(self):
        dull = ActorSpec(color=(0.5, 0.45, 0.45), size=(8.0, 6.0),
                         waypoints=((20.0, 20.0),), speeds=())
        with pytest.raises(ValueError, match="contrast"):
            scene(dull)

    def test_waypoints_must_stay_inside_the_frame(self):
        with pytest.raises(ValueError, match="horizontally"):
            scene(ActorSpec(color=RED, size=(8.0, 6.0),
                            waypoints=((62.0, 20.0),), speeds=()))
        with pytest.raises(ValueError, match="vertically"):
            scene(ActorSpec(color=RED, size=(8.0, 6.0),
                            waypoints=((20.0, 38.0),), speeds=()))

    def test_speed_count_must_match_segments(self):
        with pytest.raises(ValueError, match="segment speeds"):
            scene(ActorSpec(color=RED, size=(8.0, 6.0),
                            waypoints=((10.0, 12.0), (50.0, 12.0)),
                            speeds=(1.0, 1.0)))

    def test_speeds_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            scene(ActorSpec(color=RED, size=(8.0, 6.0),
                            waypoints=((10.0, 12.0), (50.0, 12.0)),
                            speeds=(0.0,)))

    def test_zero_length_segment_rejected(self):
        with pytest.raises(ValueError, match="zero-length"):
            scene(ActorSpec(color=RED, size=(8.0, 6.0),
                            waypoints=((10.0, 12.0), (10.0, 12.0)),
                            speeds=(1.0,)))

    def test_jump_fields_validated(self):
        with pytest.raises(ValueError, match="jump_factor"):
            scene(walker(jump_frame=5, jump_factor=0.5))
        with pytest.raises(ValueError, match="jump_frame"):
            scene(walker(jump_frame=0, jump_factor=3.0))
        with pytest.raises(ValueError, match="jump_frame"):
            scene(walker(jump_frame=12, jump_factor=3.0), frame_count=12)

    def test_edge_ramp_floor(self):
        with pytest.raises(ValueError, match="edge_ramp"):
            scene(ActorSpec(color=RED, size=(8.0, 6.0),
                            waypoints=((20.0, 20.0),), speeds=(), edge_ramp=0.5))

    def test_actor_size_floor(self):
        with pytest.raises(ValueError, match="at least 2"):
            scene(ActorSpec(color=RED, size=(1.0, 6.0),
                            waypoints=((20.0, 20.0),), speeds=()))


class TestBundledScenes:
    def test_single_actor_script_shape(self):
        script = single_actor_script()
        assert script.frame_count == 55
        assert len(script.actors) == 1
        assert script.actors[0].jump_frame is None

    def test_patrol_scene_shape(self):
        script = patrol_scene(3)
        assert len(script.actors) == 4
        assert all(a.jump_frame is None for a in script.actors)
        jumped = patrol_scene(3, jump_frame=25, jump_factor=6.0)
        assert sum(a.jump_frame == 25 for a in jumped.actors) == 1
        assert script.width == 86 and script.height == 64

    def test_benchmark_suite_is_five_scenes_with_one_jump_each(self):
        suite = benchmark_suite()
        assert len(suite) == 5
        assert len({s.seed for s in suite}) == 5
        for script in suite:
            jumps = [a for a in script.actors if a.jump_frame is not None]
            assert len(jumps) == 1
            assert jumps[0].jump_factor >= 3.0
            assert 1 <= jumps[0].jump_frame < script.frame_count

    def test_benchmark_suite_is_stable(self):
        assert benchmark_suite() == benchmark_suite()
