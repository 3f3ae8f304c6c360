"""Quivers, paths and graded path enumeration.

A path is stored as the tuple of its arrow indices in application order
(first arrow applied first); reading the tuple right to left gives the
composition order a_m ··· a_0 used when printing.  Composability means the
head of each arrow equals the tail of the next one applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph; vertices 0..n-1, arrows as (tail, head).

    The arrow list order is canonical: every direct-sum-indexed matrix in
    the package orders its arrow blocks by this list.
    """

    n_vertices: int
    arrows: Tuple[Tuple[int, int], ...]

    def __init__(self, n_vertices: int, arrows):
        if n_vertices <= 0:
            raise ValueError("a quiver needs at least one vertex")
        arrows = tuple((int(t), int(h)) for t, h in arrows)
        for k, (t, h) in enumerate(arrows):
            if not (0 <= t < n_vertices and 0 <= h < n_vertices):
                raise ValueError(f"arrow {k} endpoints ({t},{h}) out of range")
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "arrows", arrows)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def tail(self, a: int) -> int:
        return self.arrows[a][0]

    def head(self, a: int) -> int:
        return self.arrows[a][1]

    def arrows_into(self, i: int) -> List[int]:
        return [a for a, (_, h) in enumerate(self.arrows) if h == i]

    def arrows_out_of(self, i: int) -> List[int]:
        return [a for a, (t, _) in enumerate(self.arrows) if t == i]

    def is_acyclic(self) -> bool:
        # Kahn's algorithm on the vertex set.
        indeg = [0] * self.n_vertices
        for _, h in self.arrows:
            indeg[h] += 1
        queue = [i for i in range(self.n_vertices) if indeg[i] == 0]
        seen = 0
        while queue:
            i = queue.pop()
            seen += 1
            for a in self.arrows_out_of(i):
                h = self.head(a)
                indeg[h] -= 1
                if indeg[h] == 0:
                    queue.append(h)
        return seen == self.n_vertices


@dataclass(frozen=True)
class Path:
    """A composable arrow sequence, or a trivial path at a vertex."""

    tail: int
    head: int
    arrows: Tuple[int, ...]   # application order; empty for trivial paths

    @staticmethod
    def trivial(vertex: int) -> "Path":
        return Path(vertex, vertex, ())

    @staticmethod
    def from_arrows(quiver: Quiver, arrows) -> "Path":
        seq = tuple(int(a) for a in arrows)
        if not seq:
            raise ValueError("use Path.trivial for length-zero paths")
        for a in seq:
            if not 0 <= a < quiver.n_arrows:
                raise ValueError(f"arrow index {a} out of range")
        for prev, nxt in zip(seq, seq[1:]):
            if quiver.head(prev) != quiver.tail(nxt):
                raise ValueError(f"arrows {prev} and {nxt} do not compose")
        return Path(quiver.tail(seq[0]), quiver.head(seq[-1]), seq)

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if self.is_trivial:
            return f"<{self.tail}>"
        return "*".join(f"a{a}" for a in reversed(self.arrows))


def compose(p: Path, q: Path) -> Optional[Path]:
    """The product p·q (q applied first); None when tail(p) != head(q)."""
    if p.tail != q.head:
        return None
    return Path(q.tail, p.head, q.arrows + p.arrows)


def enumerate_paths(quiver: Quiver, max_len: int) -> Dict[Tuple[int, int], List[Path]]:
    """All paths of length <= max_len, grouped by (length, head vertex).

    Within a group, paths are ordered lexicographically on the composition-
    order reading (last arrow applied most significant); this matches the
    block decomposition of the graded path spaces by leading arrow.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    groups: Dict[Tuple[int, int], List[Path]] = {}
    for i in range(quiver.n_vertices):
        groups[(0, i)] = [Path.trivial(i)]
    for length in range(1, max_len + 1):
        for i in range(quiver.n_vertices):
            bucket: List[Path] = []
            for a in quiver.arrows_into(i):
                t = quiver.tail(a)
                for shorter in groups[(length - 1, t)]:
                    bucket.append(Path(shorter.tail, i, shorter.arrows + (a,)))
            groups[(length, i)] = bucket
    return groups
