"""Text format for input systems.

Grammar, one item per line, '#' starting a comment line, blanks ignored:

    n <int>
    r <int>
    mode geq          (optional; default is equality mode)
    A
    <n integers>      (r such rows)
    b
    <r integers>

In geq mode the rows state a*alpha >= b and slack variables are added,
one per row, to produce the equality system actually decomposed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .linalg import Mat
from .tableau import from_inequalities


@dataclass(frozen=True)
class SystemFile:
    n: int
    r: int
    a: Mat
    b: tuple
    mode: str = "eq"

    def effective_system(self):
        """The equality system to run: (A, b), slack-extended in geq mode."""
        if self.mode == "geq":
            return from_inequalities(self.a, self.b)
        return self.a, self.b


def _significant(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line


def _ints(line: str, no: int, count: int, what: str):
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"{what} needs {count} entries, got {len(parts)}", no)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"{what} has a non-integer token", no)


def parse_system(text: str) -> SystemFile:
    lines = list(_significant(text))
    pos = 0

    def take(what: str):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}",
                             lines[-1][0] if lines else 1)
        item = lines[pos]
        pos += 1
        return item

    def keyword_int(key: str) -> int:
        no, line = take(f"`{key} <int>`")
        parts = line.split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(f"expected `{key} <int>`, got {line!r}", no)
        try:
            value = int(parts[1])
        except ValueError:
            raise ParseError(f"`{key}` needs an integer, got {parts[1]!r}", no)
        if value <= 0:
            raise ParseError(f"`{key}` must be positive", no)
        return value

    n = keyword_int("n")
    r = keyword_int("r")
    mode = "eq"
    no, line = take("`A`")
    if line.split() == ["mode", "geq"]:
        mode = "geq"
        no, line = take("`A`")
    if line != "A":
        raise ParseError(f"expected line `A`, got {line!r}", no)
    rows = []
    for _ in range(r):
        no, line = take("a matrix row")
        rows.append(_ints(line, no, n, "matrix row"))
    no, line = take("`b`")
    if line != "b":
        raise ParseError(f"expected line `b`, got {line!r}", no)
    no, line = take("the right-hand side row")
    b = _ints(line, no, r, "right-hand side")
    if pos != len(lines):
        no, line = lines[pos]
        raise ParseError(f"unexpected trailing content {line!r}", no)
    return SystemFile(n=n, r=r, a=Mat(rows), b=b, mode=mode)


def render_system(sf: SystemFile) -> str:
    lines = [f"n {sf.n}", f"r {sf.r}"]
    if sf.mode == "geq":
        lines.append("mode geq")
    lines.append("A")
    for i in range(sf.r):
        lines.append(" ".join(str(int(x)) for x in sf.a.row(i)))
    lines.append("b")
    lines.append(" ".join(str(int(x)) for x in sf.b))
    return "\n".join(lines) + "\n"


def load_system(path: str) -> SystemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def parse_dual_matrix(text: str) -> list:
    """Square integer matrix file: `d <int>`, then d rows of d integers."""
    lines = list(_significant(text))
    if not lines:
        raise ParseError("empty dual matrix file", 1)
    no, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "d":
        raise ParseError(f"expected `d <int>`, got {line!r}", no)
    try:
        d = int(parts[1])
    except ValueError:
        raise ParseError(f"`d` needs an integer, got {parts[1]!r}", no)
    if d <= 0:
        raise ParseError("`d` must be positive", no)
    if len(lines) != d + 1:
        raise ParseError(f"expected {d} matrix rows, got {len(lines) - 1}",
                         lines[-1][0])
    rows = []
    for no, line in lines[1:]:
        rows.append(list(_ints(line, no, d, "matrix row")))
    return rows


def load_dual_matrix(path: str) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dual_matrix(fh.read())
