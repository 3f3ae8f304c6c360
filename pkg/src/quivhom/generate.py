"""Seeded random instance generation.

Documents are a pure function of the seed: the generator draws from one
`random.Random` stream and, when a draw would produce an instance too
large for desk-scale exact elimination, simply draws again from the same
stream.  Loops and multiple arrows between the same vertices occur with
positive probability.
"""

from __future__ import annotations

import random
from typing import List

GEN_FIELD = {"fp": 101}

# size guards, keeping the acceptance-suite runtime bounds comfortable
_MAX_RESOLUTION_DIM = 1200
_RESOLUTION_DEGREE = 4
_MAX_CECH_DIM = 2000


def _graded_dims(n_vertices: int, arrows, twists, max_degree: int) -> List[List[int]]:
    """dims[l][i] = dim e_i A_l, via the leading-arrow recursion."""
    dims = [[1] * n_vertices]
    for _ in range(max_degree):
        prev = dims[-1]
        cur = [0] * n_vertices
        for a, (t, h) in enumerate(arrows):
            cur[h] += twists[a] * prev[t]
        dims.append(cur)
    return dims


def _vector_size_ok(n: int, arrows, twists, dims_by_module) -> bool:
    graded = _graded_dims(n, arrows, twists, _RESOLUTION_DEGREE)
    for dims in dims_by_module:
        f_total = sum(dims[i] * graded[l][i]
                      for i in range(n) for l in range(_RESOLUTION_DEGREE + 1))
        g_total = sum(twists[a] * graded[l][t] * dims[h]
                      for a, (t, h) in enumerate(arrows)
                      for l in range(_RESOLUTION_DEGREE))
        if max(f_total, g_total) > _MAX_RESOLUTION_DIM:
            return False
    return True


def generate_vector_document(rng: random.Random, max_vertices: int, max_arrows: int,
                             max_dim: int, max_twist: int) -> dict:
    p = GEN_FIELD["fp"]
    while True:
        n = rng.randint(1, max_vertices)
        n_arrows = rng.randint(1, max_arrows)
        arrows = [(rng.randrange(n), rng.randrange(n)) for _ in range(n_arrows)]
        twists = [rng.randint(1, max_twist) for _ in range(n_arrows)]
        modules = {}
        for name in ("V", "W"):
            dims = [rng.randint(0, max_dim) for _ in range(n)]
            if all(d == 0 for d in dims):
                dims[rng.randrange(n)] = rng.randint(1, max_dim)
            phi = []
            for a, (t, h) in enumerate(arrows):
                rows, cols = dims[h], twists[a] * dims[t]
                phi.append([[rng.randrange(p) for _ in range(cols)]
                            for _ in range(rows)])
            modules[name] = {"dims": dims, "phi": phi}
        if not _vector_size_ok(n, arrows, twists,
                               [modules[m]["dims"] for m in modules]):
            continue
        return {
            "field": dict(GEN_FIELD),
            "quiver": {"vertices": n, "arrows": [list(a) for a in arrows]},
            "mode": "vector",
            "twists": twists,
            "modules": modules,
        }


def _sorted_twists(rng: random.Random, rank: int, max_twist: int) -> List[int]:
    return sorted((rng.randint(-max_twist, max_twist) for _ in range(rank)),
                  reverse=True)


def _tensor_twists(m_twists: List[int], v_twists: List[int]) -> List[int]:
    return sorted((a + b for a in m_twists for b in v_twists), reverse=True)


def _p1_size_ok(arrows, m_twists, modules) -> bool:
    # bound the overlap block of the Cech total complex
    for v_mod, w_mod in [(modules[0], modules[1]), (modules[1], modules[0])]:
        hom_twists = []
        for i in range(len(v_mod["twists"])):
            for dv in v_mod["twists"][i]:
                for dw in w_mod["twists"][i]:
                    hom_twists.append(dw - dv)
        for a, (t, h) in enumerate(arrows):
            for dt in _tensor_twists(m_twists[a], v_mod["twists"][t]):
                for dw in w_mod["twists"][h]:
                    hom_twists.append(dw - dt)
        if not hom_twists:
            continue
        window = max(abs(d) for d in hom_twists) + 2
        arrow_summands = 0
        for a, (t, h) in enumerate(arrows):
            arrow_summands += (len(m_twists[a]) * len(v_mod["twists"][t])
                               * len(w_mod["twists"][h]))
        if arrow_summands * (2 * window + 1) > _MAX_CECH_DIM:
            return False
    return True


def generate_p1_document(rng: random.Random, max_vertices: int, max_arrows: int,
                         max_dim: int, max_twist: int) -> dict:
    p = GEN_FIELD["fp"]
    while True:
        n = rng.randint(1, max_vertices)
        n_arrows = rng.randint(1, max_arrows)
        arrows = [(rng.randrange(n), rng.randrange(n)) for _ in range(n_arrows)]
        m_twists = [_sorted_twists(rng, rng.randint(1, max_dim), max_twist)
                    for _ in range(n_arrows)]
        modules = []
        for _ in ("V", "W"):
            v_twists = [_sorted_twists(rng, rng.randint(0, max_dim), max_twist)
                        for _ in range(n)]
            if all(not tw for tw in v_twists):
                v_twists[rng.randrange(n)] = _sorted_twists(
                    rng, rng.randint(1, max_dim), max_twist)
            modules.append({"twists": v_twists})
        if not _p1_size_ok(arrows, m_twists, modules):
            continue
        named = {}
        for name, mod in zip(("V", "W"), modules):
            v_twists = mod["twists"]
            phi = []
            for a, (t, h) in enumerate(arrows):
                src = _tensor_twists(m_twists[a], v_twists[t])
                dst = v_twists[h]
                rows = []
                for r in range(len(dst)):
                    row = []
                    for c in range(len(src)):
                        deg = dst[r] - src[c]
                        if deg < 0:
                            row.append(None)
                        else:
                            row.append([rng.randrange(p) for _ in range(deg + 1)])
                    rows.append(row)
                phi.append(rows)
            named[name] = {"twists": v_twists, "phi": phi}
        return {
            "field": dict(GEN_FIELD),
            "quiver": {"vertices": n, "arrows": [list(a) for a in arrows]},
            "mode": "p1",
            "twists": [list(t) for t in m_twists],
            "modules": named,
        }


def generate_document(seed: int, mode: str = "vector", max_vertices: int = 4,
                      max_arrows: int = 5, max_dim: int = 3,
                      max_twist: int = 2) -> dict:
    """Deterministic function of the seed; the output always validates."""
    if min(max_vertices, max_arrows, max_dim, max_twist) < 1:
        raise ValueError("generation bounds must be positive")
    if mode not in ("vector", "p1"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    if mode == "vector":
        return generate_vector_document(rng, max_vertices, max_arrows,
                                        max_dim, max_twist)
    return generate_p1_document(rng, max_vertices, max_arrows, max_dim, max_twist)
