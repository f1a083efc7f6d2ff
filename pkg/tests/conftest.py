import json
import math
import pathlib

import pytest

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

WIDTH_DEFAULT = 1.0 / (2.0 * math.pi)
# small a: wide amplitude profile in m, sharply peaked in angle
WIDTH_NARROW_ANGLE = 1.0 / (20.0 * math.pi)
# large a: nearly an angular-momentum eigenstate, angle-delocalized
WIDTH_WIDE_ANGLE = 10.0 / (2.0 * math.pi)
ALL_WIDTHS = (WIDTH_NARROW_ANGLE, WIDTH_DEFAULT, WIDTH_WIDE_ANGLE)


def load_fixture(module: str, name: str) -> complex:
    payload = json.loads((FIXTURE_DIR / f"{module}.json").read_text())
    for entry in payload["entries"]:
        if entry["name"] == name:
            re, im = entry["value"]
            return complex(float(re), float(im))
    raise KeyError(f"no fixture {name!r} in {module}.json")


def fixture_inputs(module: str, name: str) -> dict:
    payload = json.loads((FIXTURE_DIR / f"{module}.json").read_text())
    for entry in payload["entries"]:
        if entry["name"] == name:
            return entry["inputs"]
    raise KeyError(f"no fixture {name!r} in {module}.json")


@pytest.fixture
def golden():
    return load_fixture
