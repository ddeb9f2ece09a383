from __future__ import annotations

import math
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sitewalk.demo import demo_checklist, demo_config, demo_scene, demo_script
from sitewalk.geometry import vec3
from sitewalk.scene import ObjectClass, Scene, SemanticObject
from sitewalk.geometry import Box


@pytest.fixture
def scene():
    return demo_scene()


@pytest.fixture
def config():
    return demo_config()


@pytest.fixture
def script():
    return demo_script()


@pytest.fixture
def checklist():
    return demo_checklist()


def random_unit(rng: random.Random):
    while True:
        v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = math.sqrt(sum(c * c for c in v))
        if n > 1e-6:
            return vec3(*(c / n for c in v))


def random_box_scene(rng: random.Random, max_boxes: int = 30,
                     bound: float = 10.0) -> Scene:
    objects = []
    classes = list(ObjectClass)
    for i in range(rng.randint(1, max_boxes)):
        corner = [rng.uniform(0.0, bound - 0.5) for _ in range(3)]
        size = [rng.uniform(0.1, 2.5) for _ in range(3)]
        lo = vec3(*corner)
        hi = vec3(*(min(bound, c + s) for c, s in zip(corner, size)))
        objects.append(SemanticObject(f"obj{i:02d}", rng.choice(classes), Box(lo, hi)))
    return Scene("random", Box(vec3(0, 0, 0), vec3(bound, bound, bound)),
                 tuple(objects), voxel_size=0.5)
