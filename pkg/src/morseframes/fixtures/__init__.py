"""Bundled complexes and a seeded random-complex generator."""
from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from ..complex import Complex, closure

NAMES = (
    "hollow_triangle",
    "full_triangle",
    "tetrahedron_boundary",
    "annulus",
    "torus",
    "dunce_hat",
)

# Betti numbers by construction; tests re-derive them with the oracle.
EXPECTED_BETTI = {
    "hollow_triangle": [1, 1],
    "full_triangle": [1, 0, 0],
    "tetrahedron_boundary": [1, 0, 1],
    "annulus": [1, 1, 0],
    "torus": [1, 2, 1],
    "dunce_hat": [1, 0, 0],
}


def path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return Path(str(resources.files(__package__).joinpath(f"{name}.txt")))


def load(name: str) -> Complex:
    from ..io import read_face_list

    return read_face_list(path(name))


def load_all() -> dict[str, Complex]:
    return {name: load(name) for name in NAMES}


def random_complex(seed: int, max_vertices: int = 10, max_simplices: int = 40) -> Complex:
    """Closure of random facets over at most ``max_vertices`` vertices.

    Facets that would push the complex past ``max_simplices`` simplexes are
    skipped; generation stops after five such misses in a row, or earlier
    with probability 1/16 per accepted facet.  Facet sizes lean towards edges
    and triangles so holes are common.
    """
    rng = random.Random(seed)
    n = rng.randint(2, max_vertices)
    facets: list[list[int]] = [[rng.randrange(n)]]
    misses = 0
    while misses < 5:
        size = min(rng.choice((1, 2, 2, 3, 3, 3, 4)), n)
        candidate = facets + [rng.sample(range(n), size)]
        if len(closure(candidate)) > max_simplices:
            misses += 1
            continue
        facets, misses = candidate, 0
        if rng.random() < 0.0625:
            break
    return closure(facets)
