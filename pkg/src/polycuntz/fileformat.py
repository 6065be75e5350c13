"""The plain-text unitary format.

::

    # comments start with '#'
    n=2
    11:121
    121:11
    122:122
    2:2

Each pair line is ``alpha:beta``. Words are digit strings for n <= 9, bracketed
comma lists such as ``[1,12,3]`` otherwise, and ``e`` is the empty word.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .poly import PolyMap, PolyUnitary, check_unitary
from .words import Word

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")


def parse_word(tok: str, n: int, line: int) -> Word:
    tok = tok.strip()
    if tok == "e":
        return ()
    if tok.startswith("[") and tok.endswith("]"):
        body = tok[1:-1].strip()
        if not body:
            return ()
        try:
            w = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise ParseError(line, f"bad bracketed word {tok!r}") from None
    elif tok.isdigit():
        if n > 9:
            raise ParseError(line, f"digit words are ambiguous for n={n}; use [a,b,...]")
        w = tuple(int(c) for c in tok)
    else:
        raise ParseError(line, f"bad word {tok!r}")
    for a in w:
        if not 1 <= a <= n:
            raise ParseError(line, f"letter {a} outside 1..{n}")
    return w


def parse_polymap(text: str) -> PolyMap:
    n = None
    pairs: list[tuple[Word, Word]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            if n is not None:
                raise ParseError(lineno, "duplicate alphabet header")
            n = int(m.group(1))
            if n < 2:
                raise ParseError(lineno, "alphabet size must be >= 2")
            continue
        if n is None:
            raise ParseError(lineno, "expected 'n=<size>' before the first pair")
        if line.count(":") != 1:
            raise ParseError(lineno, "expected 'alpha:beta'")
        a, b = line.split(":")
        pairs.append((parse_word(a, n, lineno), parse_word(b, n, lineno)))
    if n is None:
        raise ParseError(0, "missing 'n=<size>' header")
    if not pairs:
        raise ParseError(0, "no pairs")
    return PolyMap(n, {p: pairs.count(p) for p in pairs})


def parse_unitary(text: str) -> PolyUnitary:
    return check_unitary(parse_polymap(text))


def render_word(w: Word, n: int) -> str:
    if not w:
        return "e"
    if n <= 9:
        return "".join(map(str, w))
    return "[" + ",".join(map(str, w)) + "]"


def render_unitary(u: PolyMap, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n={u.n}")
    for a, b in u.pairs():
        lines.append(f"{render_word(a, u.n)}:{render_word(b, u.n)}")
    return "\n".join(lines) + "\n"
