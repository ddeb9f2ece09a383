from __future__ import annotations

import json
import random

import numpy as np
import pytest

from conftest import random_box_scene, random_unit
from oracles import cell_is_blocked, ray_nearest_hit
from sitewalk.geometry import Box
from sitewalk.scene import (ObjectClass, Scene, SceneFormatError, SemanticObject,
                            build_occupancy, load_scene, ray_intersect, save_scene)

MINIMAL = {
    "name": "one-box",
    "bounds": {"min": [0, 0, 0], "max": [10, 10, 10]},
    "voxel_size": 0.25,
    "objects": [
        {"id": "E1", "class": "fire_extinguisher",
         "aabb": {"min": [1, 1, 1], "max": [2, 2, 2]}, "instructions": []},
    ],
}


def doc(**overrides):
    base = json.loads(json.dumps(MINIMAL))
    base.update(overrides)
    return json.dumps(base)


class TestLoadScene:
    def test_minimal_document(self):
        scene = load_scene(doc())
        assert len(scene.objects) == 1
        assert scene.objects[0].id == "E1"
        assert scene.objects[0].object_class is ObjectClass.FIRE_EXTINGUISHER

    def test_duplicate_id_names_offender(self):
        objects = [MINIMAL["objects"][0], dict(MINIMAL["objects"][0])]
        with pytest.raises(SceneFormatError, match="E1"):
            load_scene(doc(objects=objects))

    def test_degenerate_aabb_rejected(self):
        bad = dict(MINIMAL["objects"][0], aabb={"min": [1, 1, 1], "max": [2, 1, 2]})
        with pytest.raises(SceneFormatError, match="degenerate"):
            load_scene(doc(objects=[bad]))

    def test_object_outside_bounds_rejected(self):
        bad = dict(MINIMAL["objects"][0], aabb={"min": [9, 9, 9], "max": [11, 10, 10]})
        with pytest.raises(SceneFormatError, match="E1"):
            load_scene(doc(objects=[bad]))

    def test_unknown_field_rejected(self):
        with pytest.raises(SceneFormatError, match="unknown"):
            load_scene(doc(texture="brick.png"))
        bad = dict(MINIMAL["objects"][0], color="red")
        with pytest.raises(SceneFormatError, match="unknown"):
            load_scene(doc(objects=[bad]))

    def test_malformed_json(self):
        with pytest.raises(SceneFormatError, match="JSON"):
            load_scene(b"{nope")

    def test_unknown_class(self):
        bad = dict(MINIMAL["objects"][0], **{"class": "sofa"})
        with pytest.raises(SceneFormatError, match="sofa"):
            load_scene(doc(objects=[bad]))

    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(20):
            scene = random_box_scene(rng)
            assert load_scene(save_scene(scene)) == scene


class TestRayIntersect:
    def setup_method(self):
        box = SemanticObject("B", ObjectClass.OBSTACLE,
                             Box((2.0, -1.0, -1.0), (3.0, 1.0, 1.0)))
        self.scene = Scene("s", Box((-5, -5, -5), (5, 5, 5)), (box,))

    def test_axis_aligned_hit(self):
        hit = ray_intersect(self.scene, (0, 0, 0), (1, 0, 0), 10.0)
        assert hit is not None
        assert hit.object_id == "B"
        assert hit.distance == pytest.approx(2.0, abs=1e-12)
        assert hit.point == pytest.approx((2.0, 0.0, 0.0))

    def test_facing_away_misses(self):
        assert ray_intersect(self.scene, (0, 0, 0), (-1, 0, 0), 10.0) is None

    def test_max_range_cuts_hit(self):
        assert ray_intersect(self.scene, (0, 0, 0), (1, 0, 0), 1.5) is None

    def test_grazing_tangent_counts(self):
        # ray running along the box's y=1 face plane
        hit = ray_intersect(self.scene, (0.0, 1.0, 0.0), (1, 0, 0), 10.0)
        assert hit is not None and hit.distance == pytest.approx(2.0)

    def test_origin_inside_box_hits_at_zero(self):
        hit = ray_intersect(self.scene, (2.5, 0.0, 0.0), (1, 0, 0), 10.0)
        assert hit is not None and hit.distance == 0.0

    def test_non_unit_direction_rejected(self):
        with pytest.raises(ValueError, match="unit"):
            ray_intersect(self.scene, (0, 0, 0), (1, 1, 0), 10.0)

    def test_tie_breaks_by_id(self):
        shared = Box((2.0, -1.0, -1.0), (3.0, 1.0, 1.0))
        for order in [("zz", "aa"), ("aa", "zz")]:
            scene = Scene("s", Box((-5, -5, -5), (5, 5, 5)),
                          tuple(SemanticObject(i, ObjectClass.OBSTACLE, shared)
                                for i in order))
            hit = ray_intersect(scene, (0, 0, 0), (1, 0, 0), 10.0)
            assert hit.object_id == "aa"

    def test_matches_bruteforce_oracle(self):
        rng = random.Random(42)
        for _ in range(20):
            scene = random_box_scene(rng)
            boxes = [(o.id, o.aabb.lo, o.aabb.hi) for o in scene.objects]
            for _ in range(10):
                origin = tuple(rng.uniform(0, 10) for _ in range(3))
                direction = random_unit(rng)
                expected = ray_nearest_hit(boxes, origin, direction, 12.0)
                actual = ray_intersect(scene, origin, direction, 12.0)
                if expected is None:
                    assert actual is None
                else:
                    assert actual is not None
                    assert actual.object_id == expected[0]
                    assert abs(actual.distance - expected[1]) <= 1e-9

    def test_permutation_invariance(self):
        rng = random.Random(3)
        scene = random_box_scene(rng, max_boxes=12)
        origin, direction = (5.0, 5.0, 5.0), random_unit(rng)
        baseline = ray_intersect(scene, origin, direction, 15.0)
        objs = list(scene.objects)
        for _ in range(5):
            rng.shuffle(objs)
            shuffled = Scene(scene.name, scene.bounds, tuple(objs), scene.voxel_size)
            hit = ray_intersect(shuffled, origin, direction, 15.0)
            assert (hit is None) == (baseline is None)
            if hit:
                assert (hit.object_id, hit.distance) == (baseline.object_id, baseline.distance)

    def test_closer_max_range_returns_none(self):
        rng = random.Random(11)
        for _ in range(50):
            scene = random_box_scene(rng, max_boxes=10)
            origin = tuple(rng.uniform(0, 10) for _ in range(3))
            direction = random_unit(rng)
            hit = ray_intersect(scene, origin, direction, 20.0)
            if hit is not None and hit.distance > 1e-6:
                assert ray_intersect(scene, origin, direction, hit.distance * 0.99) is None


class TestOccupancy:
    def test_empty_scene_all_free(self):
        scene = Scene("empty", Box((0, 0, 0), (2, 2, 2)), ())
        grid = build_occupancy(scene, 0.5)
        assert grid.dims == (4, 4, 4)
        assert grid.blocked_count() == 0

    def test_box_covering_exactly_one_cell(self):
        obj = SemanticObject("X", ObjectClass.OBSTACLE, Box((0.5, 0.5, 0.5), (1.0, 1.0, 1.0)))
        scene = Scene("s", Box((0, 0, 0), (2, 2, 2)), (obj,))
        grid = build_occupancy(scene, 0.5)
        assert grid.blocked_count() == 1
        assert not grid.is_free((1, 1, 1))

    def test_matches_exhaustive_cell_oracle(self):
        rng = random.Random(9)
        for _ in range(5):
            scene = random_box_scene(rng, max_boxes=8, bound=4.0)
            grid = build_occupancy(scene, 0.5)
            boxes = [(o.aabb.lo, o.aabb.hi) for o in scene.objects]
            for idx in grid.cells():
                assert bool(grid.blocked[idx]) == cell_is_blocked(
                    boxes, grid.origin, grid.voxel_size, idx), idx

    def test_blocked_count_monotone_in_objects(self):
        rng = random.Random(21)
        scene = random_box_scene(rng, max_boxes=10, bound=6.0)
        previous = 0
        for k in range(len(scene.objects) + 1):
            partial = Scene("s", scene.bounds, scene.objects[:k], scene.voxel_size)
            count = build_occupancy(partial, 0.5).blocked_count()
            assert count >= previous
            previous = count

    def test_voxel_size_out_of_range(self):
        scene = Scene("s", Box((0, 0, 0), (4, 4, 1)), ())
        with pytest.raises(ValueError):
            build_occupancy(scene, 0.0)
        with pytest.raises(ValueError):
            build_occupancy(scene, 1.5)

    def test_grid_covers_bounds(self):
        scene = Scene("s", Box((0, 0, 0), (1.1, 2.0, 0.9)), ())
        grid = build_occupancy(scene, 0.5)
        assert grid.dims == (3, 4, 2)
        for axis in range(3):
            assert grid.origin[axis] + grid.dims[axis] * grid.voxel_size \
                >= scene.bounds.hi[axis]
