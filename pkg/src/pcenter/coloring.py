"""Vertex colorings with dense ids, optional tuple structure, and file I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """``color[v]`` is a dense id in ``0..num_colors-1``.

    When the coloring comes from a product construction, ``tuples[c]`` is the
    structured colour behind flat id ``c``.
    """

    color: tuple[int, ...]
    num_colors: int
    tuples: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        used = set(self.color)
        if used and (min(used) < 0 or max(used) >= self.num_colors):
            raise ColoringError("colour id out of range")
        if self.tuples is not None and len(self.tuples) != self.num_colors:
            raise ColoringError("tuple dictionary does not match num_colors")

    def __len__(self) -> int:
        return len(self.color)

    def __getitem__(self, v: int) -> int:
        return self.color[v]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.color):
            out[c].append(v)
        return out

    def restrict(self, vertices: Sequence[int]) -> "Coloring":
        """Coloring of an induced subgraph listed by ``vertices``, re-densified."""
        return canonicalize([self.color[v] for v in vertices])

    def tuple_of(self, v: int) -> Hashable:
        return self.tuples[self.color[v]] if self.tuples is not None else self.color[v]


def canonicalize(values: Sequence[Hashable]) -> Coloring:
    """Dense ids in order of first appearance; the originals become ``tuples``."""
    index: dict[Hashable, int] = {}
    color = []
    for val in values:
        c = index.get(val)
        if c is None:
            c = index[val] = len(index)
        color.append(c)
    return Coloring(tuple(color), len(index), tuple(index))


def constant(n: int) -> Coloring:
    return Coloring((0,) * n, 1 if n else 0)


def format_coloring(c: Coloring, p: int | None = None) -> str:
    head = f"c colors={c.num_colors}"
    if p is not None:
        head += f" p={p}"
    lines = [head] + [f"{v} {col}" for v, col in enumerate(c.color)]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int | None = None) -> tuple[Coloring, int | None]:
    """Parse a colouring file; returns the coloring and the header's ``p``."""
    p = None
    declared = None
    pairs = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            for tok in line.split()[1:]:
                key, _, val = tok.partition("=")
                if key == "colors":
                    declared = int(val)
                elif key == "p":
                    p = int(val)
            continue
        try:
            v, col = (int(t) for t in line.split())
        except ValueError:
            raise ColoringError(f"bad colouring line: {line!r}") from None
        if v in pairs:
            raise ColoringError(f"vertex {v} coloured twice")
        pairs[v] = col
    size = n if n is not None else len(pairs)
    missing = [v for v in range(size) if v not in pairs]
    if missing:
        raise ColoringError(f"vertex {missing[0]} has no colour")
    if any(v >= size or v < 0 for v in pairs):
        raise ColoringError("colouring mentions a vertex outside the graph")
    raw = [pairs[v] for v in range(size)]
    num = max(raw, default=-1) + 1
    if declared is not None:
        num = max(num, declared)
    if any(c < 0 for c in raw):
        raise ColoringError("negative colour id")
    return Coloring(tuple(raw), num), p


def read_coloring(path, n: int | None = None) -> tuple[Coloring, int | None]:
    with open(path, encoding="utf-8") as fh:
        return parse_coloring(fh.read(), n)


def write_coloring(c: Coloring, path, p: int | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_coloring(c, p))
