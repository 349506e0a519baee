import xml.etree.ElementTree as ET

import pytest

from pade_tilings.oracle import sample_tiling
from pade_tilings.regions import build_hexagon_region, frozen_tiling, tiling_to_paths
from pade_tilings.render import render_svg
from pade_tilings.shuffling import shuffle_sample

NS = "{http://www.w3.org/2000/svg}"


def _classes(svg):
    root = ET.fromstring(svg)
    assert root.tag == NS + "svg"
    return [e.get("class") for e in root.iter() if e.get("class")]


def test_domino_svg():
    cls = _classes(render_svg(frozen_tiling(3)))
    assert len(cls) == 12
    assert set(cls) <= {"domino-N", "domino-S"}
    t = shuffle_sample(20, 1, seed=1)
    cls = _classes(render_svg(t, tiling_to_paths(t)))
    assert {"domino-N", "domino-S", "domino-E", "domino-W", "path"} <= set(cls)
    assert cls.count("path") == 20


def test_lozenge_svg():
    import random

    t = sample_tiling(build_hexagon_region(14, 5, 6), rng=random.Random(0))
    cls = _classes(render_svg(t, tiling_to_paths(t)))
    assert {"lozenge-flat", "lozenge-rising", "lozenge-blank"} <= set(cls)
    assert cls.count("path") == 6


def test_unknown_type():
    with pytest.raises(TypeError):
        render_svg("not a tiling")
