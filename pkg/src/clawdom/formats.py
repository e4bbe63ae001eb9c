"""Text formats: graphs, red-blue instances and solutions.

Graph::

    c <comment>
    p ds <n> <m>
    e <u> <v>          (m lines, 1-based, written sorted by (min, max))

Red-blue instance (reds ``1..nR``, blues ``nR+1..nR+nB``)::

    p rbds <nR> <nB> <m> <k>
    e <r> <b>
    col <r> <c>        (optional, one per red)

Solution: ``s YES <size> <v1> ... <vsize>`` (1-based, ascending) or ``s NO``.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph, build_graph
from .reductions import RedBlueInstance


def _content_lines(text: str):
    """``(line number, tokens)`` for every line that is not blank or a comment."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        yield number, line.split()


def _ints(tokens, number: int, what: str) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(number, f"expected integers in {what}") from None


def format_graph(g: Graph, comments=()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p ds {g.n} {g.m}")
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "missing 'p ds <n> <m>' header")
    number, head = lines[0]
    if len(head) != 4 or head[:2] != ["p", "ds"]:
        raise ParseError(number, "expected header 'p ds <n> <m>'")
    n, m = _ints(head[2:], number, "header")
    if n < 0 or m < 0:
        raise ParseError(number, "negative size in header")
    edges = []
    seen = set()
    for number, tok in lines[1:]:
        if len(tok) != 3 or tok[0] != "e":
            raise ParseError(number, "expected 'e <u> <v>'")
        if len(edges) == m:
            raise ParseError(number, f"more than the {m} edges promised by the header")
        u, v = _ints(tok[1:], number, "edge")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(number, f"endpoint out of range 1..{n}")
        if u == v:
            raise ParseError(number, "self loop")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(number, f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u - 1, v - 1))
    if len(edges) != m:
        raise ParseError(lines[-1][0], f"header promises {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(path, g: Graph, comments=()) -> None:
    Path(path).write_text(format_graph(g, comments))


def format_rbds(inst: RedBlueInstance) -> str:
    reds = sorted(inst.reds)
    if reds != list(range(inst.n_red)):
        raise ValueError("reds must be the vertices 0..nR-1")
    pairs = []
    for u, v in inst.graph.edges():
        r, b = (u, v) if u in inst.reds else (v, u)
        pairs.append((r, b))
    pairs.sort()
    out = [f"p rbds {inst.n_red} {inst.n_blue} {len(pairs)} {inst.k}"]
    out += [f"e {r + 1} {b + 1}" for r, b in pairs]
    if inst.colors is not None:
        out += [f"col {r + 1} {inst.colors[r]}" for r in reds]
    return "\n".join(out) + "\n"


def parse_rbds(text: str) -> RedBlueInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "missing 'p rbds <nR> <nB> <m> <k>' header")
    number, head = lines[0]
    if len(head) != 6 or head[:2] != ["p", "rbds"]:
        raise ParseError(number, "expected header 'p rbds <nR> <nB> <m> <k>'")
    nr, nb, m, k = _ints(head[2:], number, "header")
    if min(nr, nb, m, k) < 0:
        raise ParseError(number, "negative value in header")
    edges = []
    colors: dict[int, int] = {}
    for number, tok in lines[1:]:
        if tok[0] == "e" and len(tok) == 3:
            r, b = _ints(tok[1:], number, "edge")
            if not 1 <= r <= nr:
                raise ParseError(number, f"red endpoint out of range 1..{nr}")
            if not nr < b <= nr + nb:
                raise ParseError(number, f"blue endpoint out of range {nr + 1}..{nr + nb}")
            edges.append((r - 1, b - 1))
        elif tok[0] == "col" and len(tok) == 3:
            r, c = _ints(tok[1:], number, "colour")
            if not 1 <= r <= nr:
                raise ParseError(number, f"coloured vertex {r} is not red")
            if not 1 <= c <= k:
                raise ParseError(number, f"colour {c} outside 1..{k}")
            if r - 1 in colors:
                raise ParseError(number, f"red {r} coloured twice")
            colors[r - 1] = c
        else:
            raise ParseError(number, "expected 'e <r> <b>' or 'col <r> <c>'")
    if len(edges) != m:
        raise ParseError(lines[-1][0], f"header promises {m} edges, found {len(edges)}")
    if colors and len(colors) != nr:
        raise ParseError(lines[-1][0], "colouring must cover every red vertex")
    g = build_graph(nr + nb, edges)
    return RedBlueInstance(g, frozenset(range(nr)), frozenset(range(nr, nr + nb)), k, colors or None)


def read_rbds(path) -> RedBlueInstance:
    return parse_rbds(Path(path).read_text())


def write_rbds(path, inst: RedBlueInstance) -> None:
    Path(path).write_text(format_rbds(inst))


def format_solution(vertices) -> str:
    if vertices is None:
        return "s NO\n"
    ids = sorted(v + 1 for v in vertices)
    return " ".join(["s", "YES", str(len(ids))] + [str(v) for v in ids]) + "\n"


def parse_solution(text: str) -> frozenset[int] | None:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise ParseError(1, "expected exactly one 's' line")
    number, tok = lines[0]
    if tok == ["s", "NO"]:
        return None
    if len(tok) < 3 or tok[:2] != ["s", "YES"]:
        raise ParseError(number, "expected 's YES <size> <v...>' or 's NO'")
    size, *ids = _ints(tok[2:], number, "solution")
    if size != len(ids):
        raise ParseError(number, f"size {size} does not match {len(ids)} listed vertices")
    if any(v < 1 for v in ids) or len(set(ids)) != len(ids):
        raise ParseError(number, "vertex ids must be distinct and 1-based")
    return frozenset(v - 1 for v in ids)


def read_solution(path) -> frozenset[int] | None:
    return parse_solution(Path(path).read_text())


def write_solution(path, vertices) -> None:
    Path(path).write_text(format_solution(vertices))
