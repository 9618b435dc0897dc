"""Named fixtures, shipped as an input document.

Each process name is paired with a cone of the same name unless noted.
"""
from __future__ import annotations

import copy

from .cones import PolyhedralCone
from .processes import ConvexProcess
from .serialization import cone_from_literal, process_from_literal

# gr(H) for H(x) = Ax - K on K with A = [4 1; 2 3], K = {a >= b}:
# lineality spans (x, Ax) with x = (1,1) and (0, -(1,1)); rays are the
# images of the generator (1,0) of K mod lin K under (x, y) -> (x, Ax - y).
_EXAMPLE_2X2_GRAPH = {
    "dim": 4,
    "rays": [["1", "0", "4", "2"], ["0", "0", "-1", "0"]],
    "lineality": [["1", "1", "5", "5"], ["0", "0", "1", "1"]],
}

DOCUMENT = {
    "processes": {
        "example_interval": {"n": 1, "graph": {"dim": 2, "rays": [["1", "1/2"], ["1", "2"]]}},
        "example_2x2": {"n": 2, "graph": _EXAMPLE_2X2_GRAPH},
        "linear_2d_all_real": {"n": 2, "graph": {"dim": 4, "lineality": [["0", "1", "0", "0"], ["0", "0", "0", "1"]]}},
        "identity_2": {"n": 2, "graph": {"dim": 4, "lineality": [["1", "0", "1", "0"], ["0", "1", "0", "1"]]}},
        # H(x) = x + ray(e1): H(0) cap K is a ray
        "ray_not_subspace": {
            "n": 2,
            "graph": {"dim": 4, "rays": [["0", "0", "1", "0"]], "lineality": [["1", "0", "1", "0"], ["0", "1", "0", "1"]]},
        },
        # the linear map [0 1; 2 0] has characteristic polynomial x^2 - 2
        "irrational_split": {
            "n": 2,
            "graph": {"dim": 4, "lineality": [["1", "0", "0", "2"], ["0", "1", "1", "0"]]},
        },
        # x -> -x does not keep the orthant weakly invariant
        "negation": {"n": 2, "graph": {"dim": 4, "lineality": [["1", "0", "-1", "0"], ["0", "1", "0", "-1"]]}},
    },
    "cones": {
        "example_interval": {"dim": 1, "rays": [["1"]]},
        "example_2x2": {"dim": 2, "ineqs": [["1", "-1"]]},
        "example_2x2_link": {"dim": 2, "lineality": [["1", "1"]]},
        "linear_2d_all_real": {"dim": 2, "lineality": [["1", "0"], ["0", "1"]]},
        "identity_2": {"dim": 2, "rays": [["1", "0"], ["0", "1"]]},
        "ray_not_subspace": {"dim": 2, "rays": [["1", "0"], ["0", "1"]]},
        "irrational_split": {"dim": 2, "lineality": [["1", "0"], ["0", "1"]]},
        "negation": {"dim": 2, "rays": [["1", "0"], ["0", "1"]]},
    },
    "subspaces": {
        "link_2x2": {"dim": 2, "basis": [["1", "1"]]},
        "zero_1": {"dim": 1, "basis": []},
        "zero_2": {"dim": 2, "basis": []},
        "full_2": {"dim": 2, "basis": [["1", "0"], ["0", "1"]]},
    },
    "systems": {},
}


def document() -> dict:
    """A fresh copy of the fixture document."""
    return copy.deepcopy(DOCUMENT)


def process(name: str) -> ConvexProcess:
    return process_from_literal(DOCUMENT["processes"][name], f"processes.{name}")


def cone(name: str) -> PolyhedralCone:
    return cone_from_literal(DOCUMENT["cones"][name], f"cones.{name}")


def pair(name: str) -> tuple[ConvexProcess, PolyhedralCone]:
    return process(name), cone(name)


PROCESS_NAMES = tuple(DOCUMENT["processes"])
