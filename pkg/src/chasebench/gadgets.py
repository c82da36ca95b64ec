"""Layered graph gadgets that embed set-chase intersection into streams.

All three builders take an intersection instance whose two sides have the
same depth q and universe size k, lay the chase out as columns of k slots,
and pin an adversarial arrival order: the edge block nearest each query
endpoint arrives last on its side.  A gadget built from depth-q chases is
the hard instance for p = q - 1 passes, recorded in the stream header.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import StreamFormatError
from .games import IntersectScInstance, ScInstance

__all__ = [
    "GraphStream",
    "GadgetLayout",
    "MatchingLayout",
    "build_distance_gadget",
    "build_reachability_gadget",
    "build_matching_gadget",
    "reverse_stream",
    "serialize_stream",
    "parse_stream",
]


@dataclass(frozen=True)
class GraphStream:
    """An edge stream with a two-vertex query and a pass-budget tag.

    Edges arrive in tuple order.  For undirected streams the per-edge pair
    order is presentational only.
    """

    nv: int
    directed: bool
    src: int
    dst: int
    p: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.nv < 1:
            raise ValueError("nv must be positive")
        if self.p < 0:
            raise ValueError("pass tag must be non-negative")
        for endpoint in (self.src, self.dst):
            if not 0 <= endpoint < self.nv:
                raise ValueError(f"query vertex {endpoint} outside [0, {self.nv})")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if not (0 <= a < self.nv and 0 <= b < self.nv):
                raise ValueError(f"edge ({a}, {b}) outside [0, {self.nv})")
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
        object.__setattr__(self, "edges", edges)

    @property
    def ne(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class GadgetLayout:
    """Column-major vertex ids for the distance and reachability gadgets.

    Columns 0..2*depth each hold k slots; vertex id = col*k + slot.  The
    left chase walks columns 0 -> depth, the right chase 2*depth -> depth,
    so the two final sets meet (or miss) on the middle column.
    """

    k: int
    depth: int

    @property
    def ncols(self) -> int:
        return 2 * self.depth + 1

    @property
    def nv(self) -> int:
        return self.ncols * self.k

    @property
    def u(self) -> int:
        return self.vid(0, 0)

    @property
    def v(self) -> int:
        return self.vid(2 * self.depth, 0)

    def vid(self, col: int, slot: int) -> int:
        return col * self.k + slot

    def col(self, vid: int) -> int:
        return vid // self.k

    def slot(self, vid: int) -> int:
        return vid % self.k


def _left_blocks(side: ScInstance, layout: GadgetLayout) -> list[list[tuple[int, int]]]:
    # block for layer i spans columns depth-1-i <-> depth-i, domain on the left
    q = layout.depth
    blocks = []
    for i in range(q):
        table = side.funcs[i]
        block = [
            (layout.vid(q - 1 - i, x), layout.vid(q - i, int(y)))
            for x in range(layout.k)
            for y in table.image(x)
        ]
        blocks.append(sorted(block))
    return blocks


def _right_blocks(side: ScInstance, layout: GadgetLayout) -> list[list[tuple[int, int]]]:
    # mirrored: layer i spans columns depth+1+i <-> depth+i, domain on the right
    q = layout.depth
    blocks = []
    for i in range(q):
        table = side.funcs[i]
        block = [
            (layout.vid(q + 1 + i, x), layout.vid(q + i, int(y)))
            for x in range(layout.k)
            for y in table.image(x)
        ]
        blocks.append(sorted(block))
    return blocks


def build_distance_gadget(inst: IntersectScInstance) -> GraphStream:
    """Undirected gadget where dist(u, v) = 2*depth iff the chases intersect.

    Every u-v path alternates columns by one per edge, so its length is at
    least 2*depth, with equality exactly for the monotone paths that trace a
    left chase to the middle column and a right chase back out.  When the
    final sets are disjoint the distance is at least 2*depth + 2.

    Stream order: left blocks outermost-first, then right blocks
    outermost-first, each block sorted by (source, target).  Both innermost
    blocks (the only edges touching u and v) arrive last on their side.
    """
    k, q = inst.n, inst.p
    layout = GadgetLayout(k, q)
    edges: list[tuple[int, int]] = []
    for block in _left_blocks(inst.left, layout) + _right_blocks(inst.right, layout):
        edges.extend(block)
    return GraphStream(layout.nv, False, layout.u, layout.v, q - 1, tuple(edges))


def build_reachability_gadget(inst: IntersectScInstance) -> GraphStream:
    """Directed variant: v is reachable from u iff the chases intersect.

    Same vertices and arrival order as the distance gadget, but every edge
    points toward the higher column, so the only u-v walks are the monotone
    ones.  Right-side blocks are reoriented (image endpoint becomes the
    source) and re-sorted.
    """
    k, q = inst.n, inst.p
    layout = GadgetLayout(k, q)
    edges: list[tuple[int, int]] = []
    for block in _left_blocks(inst.left, layout):
        edges.extend(block)
    for block in _right_blocks(inst.right, layout):
        edges.extend(sorted((b, a) for a, b in block))
    return GraphStream(layout.nv, True, layout.u, layout.v, q - 1, tuple(edges))


@dataclass(frozen=True)
class MatchingLayout:
    """Vertex ids for the perfect-matching gadget.

    Internal columns 1..2*depth-1 are split into an in-copy (reached from
    the previous column) and an out-copy (leading to the next); the boundary
    columns keep single copies, and every boundary vertex except u and v
    gets a degree-one pendant that pins its matching partner.
    """

    k: int
    depth: int

    @property
    def nv(self) -> int:
        return self.k * (4 * self.depth + 2) - 2

    @property
    def u(self) -> int:
        return 0

    @property
    def v(self) -> int:
        return self.k * (4 * self.depth - 1)

    def in_id(self, col: int, slot: int) -> int:
        if col == 2 * self.depth:
            return self.v + slot
        return self.k + 2 * self.k * (col - 1) + slot

    def out_id(self, col: int, slot: int) -> int:
        if col == 0:
            return slot
        return self.k + 2 * self.k * (col - 1) + self.k + slot

    def pendant_left(self, slot: int) -> int:
        # slots 1..k-1 only; u has no pendant
        return self.k * 4 * self.depth + (slot - 1)

    def pendant_right(self, slot: int) -> int:
        return self.k * 4 * self.depth + (self.k - 1) + (slot - 1)


def build_matching_gadget(inst: IntersectScInstance) -> GraphStream:
    """Bipartite gadget with a perfect matching iff the chases intersect.

    Pendants force their boundary partners and the in/out split pairs every
    internal vertex, leaving exactly u and v exposed.  The only alternating
    paths out of u march monotonically through out -> in gadget edges, so an
    augmenting path (hence a perfect matching) exists iff some monotone u-v
    path does, i.e. iff the final chase sets intersect.

    Stream order: all pendant and in/out pairing edges first (sorted), then
    the 2*depth gadget blocks in the distance-gadget order, each block
    written (out endpoint, in endpoint) and sorted.
    """
    k, q = inst.n, inst.p
    lay = MatchingLayout(k, q)
    edges: list[tuple[int, int]] = []
    for x in range(1, k):
        edges.append((x, lay.pendant_left(x)))
    for c in range(1, 2 * q):
        for x in range(k):
            edges.append((lay.in_id(c, x), lay.out_id(c, x)))
    for x in range(1, k):
        edges.append((lay.v + x, lay.pendant_right(x)))

    def remap(block: Iterable[tuple[int, int]], domain_col: int, image_col: int):
        # gadget edge always joins the lower column's out-copy to the higher's in-copy
        if domain_col < image_col:
            out_col, in_col = domain_col, image_col
            pairs = [(a % k, b % k) for a, b in block]
        else:
            out_col, in_col = image_col, domain_col
            pairs = [(b % k, a % k) for a, b in block]
        return sorted((lay.out_id(out_col, ox), lay.in_id(in_col, ix)) for ox, ix in pairs)

    plain = GadgetLayout(k, q)
    for i, block in enumerate(_left_blocks(inst.left, plain)):
        edges.extend(remap(block, q - 1 - i, q - i))
    for i, block in enumerate(_right_blocks(inst.right, plain)):
        edges.extend(remap(block, q + 1 + i, q + i))
    return GraphStream(lay.nv, False, lay.u, lay.v, q - 1, tuple(edges))


def reverse_stream(stream: GraphStream) -> GraphStream:
    """Same graph and query, edges arriving in the opposite order."""
    return GraphStream(
        stream.nv,
        stream.directed,
        stream.src,
        stream.dst,
        stream.p,
        tuple(reversed(stream.edges)),
    )


def serialize_stream(stream: GraphStream) -> str:
    kind = "directed" if stream.directed else "undirected"
    lines = [
        f"graphstream v1 {kind} nv={stream.nv} ne={stream.ne} "
        f"src={stream.src} dst={stream.dst} p={stream.p}"
    ]
    lines.extend(f"{a} {b}" for a, b in stream.edges)
    return "\n".join(lines) + "\n"


def _header_int(token: str, key: str, lineno: int) -> int:
    prefix = key + "="
    if not token.startswith(prefix):
        raise StreamFormatError(f"line {lineno}: expected {key}=<int>, got {token!r}")
    try:
        value = int(token[len(prefix):])
    except ValueError:
        raise StreamFormatError(f"line {lineno}: bad integer in {token!r}") from None
    return value


def parse_stream(text: str) -> GraphStream:
    """Inverse of serialize_stream, with line-numbered diagnostics."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise StreamFormatError("line 1: empty stream")
    header = lines[0].split()
    if len(header) != 8 or header[0] != "graphstream" or header[1] != "v1":
        raise StreamFormatError("line 1: expected 'graphstream v1 <kind> nv= ne= src= dst= p='")
    if header[2] not in ("directed", "undirected"):
        raise StreamFormatError(f"line 1: unknown kind {header[2]!r}")
    directed = header[2] == "directed"
    nv = _header_int(header[3], "nv", 1)
    ne = _header_int(header[4], "ne", 1)
    src = _header_int(header[5], "src", 1)
    dst = _header_int(header[6], "dst", 1)
    p = _header_int(header[7], "p", 1)
    if len(lines) - 1 != ne:
        raise StreamFormatError(f"line 1: header says ne={ne} but found {len(lines) - 1} edge lines")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise StreamFormatError(f"line {lineno}: expected 'a b'")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise StreamFormatError(f"line {lineno}: bad integer in {line!r}") from None
        if not (0 <= a < nv and 0 <= b < nv):
            raise StreamFormatError(f"line {lineno}: endpoint outside [0, {nv})")
        edges.append((a, b))
    try:
        return GraphStream(nv, directed, src, dst, p, tuple(edges))
    except ValueError as exc:
        raise StreamFormatError(f"line 1: {exc}") from None
