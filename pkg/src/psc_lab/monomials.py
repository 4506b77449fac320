"""Monomials over GF(2), evaluation vectors and monomial codes.

A monomial in m binary variables is stored as an m-bit mask: bit j set means
the variable x_j is present, mask 0 is the constant monomial 1.  A monomial
code is a set of such masks together with m; its codewords are the GF(2)
spans of the monomial evaluation vectors.

Evaluation convention
---------------------
``evaluate(g, m)[u]`` holds the value of g at the *complement* of the point
u (natural digit ordering, point b = sum b_i 2^i).  Concretely the entry is
1 exactly when ``u & g == 0``.  Under this convention the evaluation vector
of ``mon_of_row(i, m)`` is literally row i of the Kronecker power A^(x m) of
A = [[1, 0], [1, 1]], which makes row/monomial identities bit-testable.  Row
spaces, and hence codes, are unaffected by the complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .gf2 import BitMatrix, gf2_rank


def degree(mask: int) -> int:
    """Number of variables in the monomial."""
    return mask.bit_count()


def divides(a: int, b: int) -> bool:
    """True if monomial a divides monomial b."""
    return a & b == a


def mon_of_row(i: int, m: int) -> int:
    """Monomial whose evaluation vector is row i of A^(x m)."""
    n = 1 << m
    if not 0 <= i < n:
        raise ValueError(f"row index {i} out of range for m={m}")
    return ~i & (n - 1)


def row_of_mon(mask: int, m: int) -> int:
    """Inverse of mon_of_row."""
    n = 1 << m
    if not 0 <= mask < n:
        raise ValueError(f"mask {mask} out of range for m={m}")
    return ~mask & (n - 1)


def evaluate(mask: int, m: int) -> np.ndarray:
    """Length-2^m evaluation vector of a monomial (see module docstring)."""
    n = 1 << m
    if not 0 <= mask < n:
        raise ValueError(f"mask {mask} out of range for m={m}")
    return ((np.arange(n) & mask) == 0).astype(np.uint8)


def monomial_str(mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"x{j}" for j in range(mask.bit_length()) if mask >> j & 1)


@dataclass(frozen=True)
class MonomialCode:
    """A (2^m, k) binary code spanned by monomial evaluation vectors."""

    m: int
    gens: frozenset[int]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        object.__setattr__(self, "gens", frozenset(self.gens))
        for g in self.gens:
            if not 0 <= g < (1 << self.m):
                raise ValueError(f"generator {g:#x} out of range for m={self.m}")

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return len(self.gens)

    @property
    def max_degree(self) -> int:
        if not self.gens:
            raise ValueError("empty generating set")
        return max(degree(g) for g in self.gens)

    @property
    def dmin(self) -> int:
        return 1 << (self.m - self.max_degree)

    def sorted_gens(self) -> list[int]:
        """Generators in enumeration order: descending mask value.

        This equals ascending row index in A^(x m), so generator matrices
        built in this order are row-submatrices of the Kronecker power.
        """
        return sorted(self.gens, reverse=True)

    def __repr__(self):  # keep test output readable
        names = ", ".join(monomial_str(g) for g in sorted(self.gens))
        return f"MonomialCode(m={self.m}, {{{names}}})"


def rm_dim(r: int, m: int) -> int:
    """Dimension of RM(r, m); zero for r < 0."""
    return sum(math.comb(m, i) for i in range(0, min(r, m) + 1)) if r >= 0 else 0


def reed_muller(r: int, m: int) -> MonomialCode:
    """RM(r, m): all monomials of degree at most r."""
    if not 0 <= r <= m:
        raise ValueError(f"order r={r} out of range for m={m}")
    gens = frozenset(g for g in range(1 << m) if degree(g) <= r)
    return MonomialCode(m, gens)


def code_params(code: MonomialCode) -> tuple[int, int, int]:
    """(n, k, d_min); d_min = 2^(m - max degree), exact for monomial codes."""
    if not code.gens:
        raise ValueError("empty generating set has no parameters")
    return code.n, code.k, code.dmin


def generator_matrix(code: MonomialCode) -> BitMatrix:
    """k x n matrix whose rows evaluate the generators (descending mask)."""
    if not code.gens:
        raise ValueError("empty generating set")
    rows = np.stack([evaluate(g, code.m) for g in code.sorted_gens()])
    return BitMatrix.from_bits(rows)


def kronecker_power_matrix(m: int) -> np.ndarray:
    """A^(x m) as a dense 0/1 array; intended for small m."""
    a = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    return reduce(lambda acc, _: np.kron(acc, a), range(m), np.array([[1]], dtype=np.uint8))


def min_distance_bruteforce(code: MonomialCode) -> int:
    """Minimum codeword weight by full span enumeration; small codes only."""
    if code.k > 24:
        raise ValueError("span enumeration infeasible")
    rows = [int.from_bytes(np.packbits(evaluate(g, code.m)).tobytes(), "big") for g in code.sorted_gens()]
    best = None
    span = [0]
    for r in rows:
        span += [v ^ r for v in span]
    for v in span:
        w = v.bit_count()
        if w and (best is None or w < best):
            best = w
    if best is None:
        raise ValueError("empty generating set")
    return best


# --- code file format ------------------------------------------------------
#
# line 1: "m=<int>"; every further non-comment line is one monomial: the
# literal "1" for the constant, otherwise ascending variable indices written
# "x0 x2 x3".  Bare index lists ("0 2 3") are accepted on input, where a
# bare "1" still means the constant; the x-prefixed canonical form exists
# because bare lines cannot distinguish the constant from a lone x_1.
# '#' starts a comment.


def parse_code(text: str) -> MonomialCode:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty code file")
    head = lines[0].replace(" ", "")
    if not head.startswith("m="):
        raise ValueError(f"expected 'm=<int>' header, got {lines[0]!r}")
    try:
        m = int(head[2:])
    except ValueError:
        raise ValueError(f"bad variable count in header {lines[0]!r}") from None
    if m < 0:
        raise ValueError("m must be nonnegative")
    gens: set[int] = set()
    for line in lines[1:]:
        mask = _parse_monomial_line(line, m)
        if mask in gens:
            raise ValueError(f"duplicate monomial line {line!r}")
        gens.add(mask)
    return MonomialCode(m, frozenset(gens))


def _parse_monomial_line(line: str, m: int) -> int:
    if line == "1":
        return 0
    indices = []
    for tok in line.split():
        body = tok[1:] if tok.startswith("x") else tok
        try:
            indices.append(int(body))
        except ValueError:
            raise ValueError(f"malformed monomial line {line!r}") from None
    if indices != sorted(indices) or len(set(indices)) != len(indices):
        raise ValueError(f"variable indices must be ascending: {line!r}")
    mask = 0
    for j in indices:
        if not 0 <= j < m:
            raise ValueError(f"variable index {j} out of range for m={m}")
        mask |= 1 << j
    return mask


def serialize_code(code: MonomialCode) -> str:
    """Canonical text form: header, then lines sorted by (degree, mask)."""
    out = [f"m={code.m}"]
    for g in sorted(code.gens, key=lambda g: (degree(g), g)):
        if g == 0:
            out.append("1")
        else:
            out.append(" ".join(f"x{j}" for j in range(g.bit_length()) if g >> j & 1))
    return "\n".join(out) + "\n"


def load_code(path) -> MonomialCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def save_code(code: MonomialCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_code(code))


def gf2_rank_of(code: MonomialCode) -> int:
    return gf2_rank(generator_matrix(code))
