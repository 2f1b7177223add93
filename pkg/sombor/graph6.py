import re
from typing import IO
from typing import Iterable
from typing import Iterator

from sombor.graph import Graph
from sombor.graph import build_graph
from sombor.records import GraphRecord

# graph6 constants
GRAPH6_OFFSET = 63
GRAPH6_MAX_BYTE = 126
GRAPH6_SHORT_LIMIT = 62  # largest order representable by the one-byte header
GRAPH6_HEADER = b">>graph6<<"
GRAPH6_SEXTET_WIDTH = 6

NON_NEGATIVE_INTEGER = re.compile(r"[0-9]+")


class FormatError(Exception):
    def __init__(self, message: str, offset: int, source: str | None = None):
        location = f"{source} " if source else ""
        super().__init__(f"{location}byte {offset}: {message}")
        self.detail = message
        self.offset = offset
        self.source = source


class Graph6LengthError(FormatError):
    pass


class Graph6CharacterError(FormatError):
    pass


class Graph6TrailingDataError(FormatError):
    pass


class Graph6OrderError(FormatError):
    pass


class EdgeListError(FormatError):
    pass


def _triangle_width(order: int) -> int:
    bits = order * (order - 1) // 2
    return (bits + GRAPH6_SEXTET_WIDTH - 1) // GRAPH6_SEXTET_WIDTH


def parse_graph6(line: bytes) -> Graph:
    """
    Decode one short-form graph6 line.

    The optional >>graph6<< header and a trailing line terminator are
    skipped; offsets in errors count from the start of ``line``.
    """
    start = len(GRAPH6_HEADER) if line.startswith(GRAPH6_HEADER) else 0
    end = len(line.rstrip(b"\r\n"))

    if end <= start:
        raise Graph6LengthError("empty graph6 record", start)

    header = line[start]

    if header == GRAPH6_MAX_BYTE:
        raise Graph6OrderError(
            f"long-form graph6 (order > {GRAPH6_SHORT_LIMIT}) is not supported",
            start,
        )

    if not GRAPH6_OFFSET <= header < GRAPH6_MAX_BYTE:
        raise Graph6CharacterError(f"invalid order byte {header}", start)

    order = header - GRAPH6_OFFSET

    if order == 0:
        raise Graph6OrderError("graph6 record encodes the empty graph", start)

    width = _triangle_width(order)
    body_start = start + 1
    body = line[body_start:end]

    for position, value in enumerate(body[:width]):
        if not GRAPH6_OFFSET <= value <= GRAPH6_MAX_BYTE:
            raise Graph6CharacterError(
                f"byte {value} outside {GRAPH6_OFFSET}..{GRAPH6_MAX_BYTE}",
                body_start + position,
            )

    if len(body) < width:
        raise Graph6LengthError(
            f"expected {width} adjacency bytes for order {order}, got {len(body)}",
            end,
        )

    if len(body) > width:
        raise Graph6TrailingDataError(
            f"{len(body) - width} unexpected bytes after the adjacency data",
            body_start + width,
        )

    bits = 0
    for value in body:
        bits = bits << GRAPH6_SEXTET_WIDTH | (value - GRAPH6_OFFSET)

    pairs = order * (order - 1) // 2
    padding = width * GRAPH6_SEXTET_WIDTH - pairs

    if bits & ((1 << padding) - 1):
        raise Graph6CharacterError("non-zero padding bits", end - 1)

    bits >>= padding

    # Column-major upper triangle, first pair in the most significant bit
    adjacency = [0] * order
    position = pairs - 1
    for j in range(1, order):
        for i in range(j):
            if bits >> position & 1:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
            position -= 1

    return Graph(order, adjacency)


def write_graph6(graph: Graph) -> bytes:
    order = graph.order

    if order > GRAPH6_SHORT_LIMIT:
        raise Graph6OrderError(
            f"order {order} needs long-form graph6, limit is {GRAPH6_SHORT_LIMIT}",
            0,
        )

    width = _triangle_width(order)
    bits = 0
    for j in range(1, order):
        for i in range(j):
            bits = bits << 1 | graph.has_edge(i, j)

    bits <<= width * GRAPH6_SEXTET_WIDTH - order * (order - 1) // 2

    body = bytes(
        GRAPH6_OFFSET + (bits >> (GRAPH6_SEXTET_WIDTH * k) & 0x3F)
        for k in reversed(range(width))
    )

    return bytes([GRAPH6_OFFSET + order]) + body


def parse_edge_list(text: str) -> Graph:
    """
    Parse an edge list: the order, then whitespace separated vertex pairs.

    Lines whose first non-blank character is '#' are comments.
    """
    tokens: list[tuple[int, str]] = []
    offset = 0

    for line in text.splitlines(keepends=True):
        if not line.lstrip().startswith("#"):
            for match in re.finditer(r"\S+", line):
                position = offset + len(line[: match.start()].encode("utf-8"))
                tokens.append((position, match.group()))
        offset += len(line.encode("utf-8"))

    if not tokens:
        raise EdgeListError("edge list is empty, expected the vertex count", 0)

    values = []
    for position, token in tokens:
        if not NON_NEGATIVE_INTEGER.fullmatch(token):
            raise EdgeListError(
                f"expected a non-negative integer, got {token!r}", position
            )
        values.append(int(token))

    order, endpoints = values[0], values[1:]

    if len(endpoints) % 2:
        raise EdgeListError("dangling vertex without a partner", tokens[-1][0])

    return build_graph(order, zip(endpoints[::2], endpoints[1::2]))


def write_edge_list(graph: Graph) -> str:
    lines = [str(graph.order)] + [f"{u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def read_graph6_stream(lines: Iterable[bytes], source: str) -> Iterator[GraphRecord]:
    for number, line in enumerate(lines, start=1):
        record = line.strip()

        if not record or record == GRAPH6_HEADER:
            continue

        location = f"{source}:{number}"

        try:
            graph = parse_graph6(record)
        except FormatError as e:
            raise type(e)(e.detail, e.offset, location) from e

        yield GraphRecord(source=location, graph=graph)


def read_graphs(stream: IO[bytes], source: str) -> Iterator[GraphRecord]:
    """
    Read either an edge-list document or a graph6 stream.

    Edge lists start with a digit or a comment, neither of which is a valid
    first graph6 byte.
    """
    data = stream.read()
    first = data.lstrip()[:1]

    if first.isdigit() or first == b"#":
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise EdgeListError("edge list is not valid UTF-8", e.start, source)

        try:
            graph = parse_edge_list(text)
        except FormatError as e:
            raise type(e)(e.detail, e.offset, source) from e

        yield GraphRecord(source=source, graph=graph)
    else:
        yield from read_graph6_stream(data.splitlines(), source)
