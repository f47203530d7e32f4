"""Explicit permutation codes: greedy construction, verification, text I/O.

Code file format (UTF-8 text, LF line ends)::

    # optional comment lines start with '#'
    5 3
    1 2 3 4 5
    2 3 1 4 5
    ...

The first non-comment line is ``n d``; every other non-comment line holds
one codeword as ``n`` space-separated 1-indexed images. Blank lines are
ignored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import kernels
from .bounds import CodeParameters
from .combinatorics import sphere_volume
from .perms import Permutation, distance_ball, is_permutation

GREEDY_MAX_N = 10
# largest distance ball handed to the greedy kernel for rank lookups
_BALL_LIMIT = 250_000

Order = Literal["lexicographic", "seeded-shuffle"]


class CodeFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MalformedCodeError(ValueError):
    def __init__(self, message: str, index: int):
        super().__init__(f"word {index}: {message}")
        self.index = index


@dataclass
class PermutationCode:
    n: int
    d: int
    words: list[Permutation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.words)

    def as_array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.uint8).reshape(len(self.words), self.n)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    min_distance: int
    violating_pair: tuple[int, int] | None


def greedy_construct(
    params: CodeParameters, order: Order = "lexicographic", seed: int = 0
) -> PermutationCode:
    """Sphere-exclusion greedy code: scan S_n, keep words far from everything kept.

    An exhaustive scan leaves every permutation within distance d-1 of
    some kept word, so the result has at least n!/V(n, d-1) words.
    ``seeded-shuffle`` scans S_n in the order given by
    ``numpy.random.default_rng(seed).permutation(n!)``.
    """
    n, d = params.n, params.d
    if n > GREEDY_MAX_N:
        raise ValueError(
            f"greedy construction scans all {n}! = {math.factorial(n):,} permutations; "
            f"limited to n <= {GREEDY_MAX_N}"
        )
    if order == "lexicographic":
        scan = None
    elif order == "seeded-shuffle":
        scan = np.random.default_rng(seed).permutation(math.factorial(n))
    else:
        raise ValueError(f"unknown order {order!r}")
    ball = None
    if 2 < d and sphere_volume(n, d - 1) <= _BALL_LIMIT:
        ball = distance_ball(n, d - 1)
    kept = kernels.greedy_scan(n, d, scan, ball)
    return PermutationCode(n=n, d=d, words=[tuple(int(x) for x in w) for w in kept])


def verify(code: PermutationCode) -> VerifyResult:
    """True minimum distance over all pairs and the first pair attaining it.

    A code with fewer than two words has no pairs; its minimum distance
    is reported as ``n``.
    """
    for i, w in enumerate(code.words):
        if not is_permutation(w, code.n):
            raise MalformedCodeError(f"{list(w)} is not a permutation of {code.n} symbols", i)
    if len(code.words) < 2:
        return VerifyResult(ok=True, min_distance=code.n, violating_pair=None)
    dist, i, j = kernels.min_distance(code.as_array())
    ok = dist >= code.d
    return VerifyResult(ok=ok, min_distance=int(dist), violating_pair=None if ok else (int(i), int(j)))


def serialize(code: PermutationCode) -> bytes:
    lines = [f"{code.n} {code.d}"]
    lines.extend(" ".join(str(x + 1) for x in w) for w in code.words)
    return ("\n".join(lines) + "\n").encode("utf-8")


def _tokens(line: str) -> list[tuple[int, str]]:
    out = []
    col = 0
    for part in line.split(" "):
        if part:
            out.append((col + 1, part))
        col += len(part) + 1
    return out


def _parse_int(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CodeFormatError(f"expected an integer, got {token!r}", line, column) from None


def deserialize(data: bytes | str) -> PermutationCode:
    """Parse the text format; repeated words are accepted (``verify`` flags them)."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CodeFormatError("input is not valid UTF-8", 1, 1) from exc
    else:
        text = data
    header: tuple[int, int] | None = None
    words: list[Permutation] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").replace("\t", " ")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        toks = _tokens(line)
        if header is None:
            if len(toks) != 2:
                raise CodeFormatError("header must be 'n d'", lineno, toks[0][0] if toks else 1)
            n = _parse_int(toks[0][1], lineno, toks[0][0])
            d = _parse_int(toks[1][1], lineno, toks[1][0])
            if n < 1:
                raise CodeFormatError(f"n must be positive, got {n}", lineno, toks[0][0])
            if d < 1:
                raise CodeFormatError(f"d must be positive, got {d}", lineno, toks[1][0])
            header = (n, d)
            continue
        n = header[0]
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else len(line) + 1
            raise CodeFormatError(f"expected {n} entries, got {len(toks)}", lineno, col)
        seen: set[int] = set()
        word = []
        for col, tok in toks:
            v = _parse_int(tok, lineno, col)
            if not 1 <= v <= n:
                raise CodeFormatError(f"entry {v} outside 1..{n}", lineno, col)
            if v in seen:
                raise CodeFormatError(f"entry {v} repeated within the row", lineno, col)
            seen.add(v)
            word.append(v - 1)
        words.append(tuple(word))
    if header is None:
        raise CodeFormatError("missing 'n d' header", 1, 1)
    return PermutationCode(n=header[0], d=header[1], words=words)


def write_code(path, code: PermutationCode) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(code))


def read_code(path) -> PermutationCode:
    with open(path, "rb") as fh:
        return deserialize(fh.read())
