import json
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pytest

from geofix.settings import settings
from geofix.spaces import EuclideanSpace, HalfPlane, RealTree

# centre c with unit legs to the leaves a, b and d
TRIPOD = {
    "vertices": ["c", "a", "b", "d"],
    "edges": [["c", "a", 1], ["c", "b", 1], ["c", "d", 1]],
}

PATH = {
    "vertices": ["u", "v", "w"],
    "edges": [["u", "v", 1], ["v", "w", 1]],
}

CATERPILLAR = {
    "vertices": ["p0", "p1", "p2", "p3", "l1", "l2"],
    "edges": [
        ["p0", "p1", "1/2"],
        ["p1", "p2", "3/2"],
        ["p2", "p3", 1],
        ["p1", "l1", "1/3"],
        ["p2", "l2", "5/4"],
    ],
}

STAR_PATH = {
    "vertices": ["r", "s1", "s2", "s3", "s4", "t1", "t2"],
    "edges": [
        ["r", "s1", 1],
        ["r", "s2", 1],
        ["r", "s3", 2],
        ["r", "s4", "1/4"],
        ["s4", "t1", 3],
        ["t1", "t2", "7/8"],
    ],
}


def build_tree(document: dict[str, Any], exact: bool = True, label: str = "tree") -> RealTree:
    return RealTree(document["vertices"], document["edges"], exact=exact, label=label)


@pytest.fixture
def tripod() -> RealTree:
    return build_tree(TRIPOD, label="tripod")


@pytest.fixture
def path_tree() -> RealTree:
    return build_tree(PATH, label="path")


@pytest.fixture
def float_tripod() -> RealTree:
    return build_tree(TRIPOD, exact=False, label="tripod")


@pytest.fixture(params=["tripod", "caterpillar", "star-path"])
def tree(request: pytest.FixtureRequest) -> RealTree:
    documents = {"tripod": TRIPOD, "caterpillar": CATERPILLAR, "star-path": STAR_PATH}
    return build_tree(documents[request.param], label=request.param)


@pytest.fixture
def plane() -> EuclideanSpace:
    return EuclideanSpace(2)


@pytest.fixture
def halfplane() -> HalfPlane:
    return HalfPlane()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    def write(name: str, payload: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path

    return write


@pytest.fixture
def override_settings(monkeypatch: pytest.MonkeyPatch) -> Callable[..., None]:
    """Temporarily change fields of the shared settings object."""

    def override(**values: Any) -> None:
        for key, value in values.items():
            monkeypatch.setattr(settings, key, value)

    return override
