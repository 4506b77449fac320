"""Group actions on monomial codes: translations, variable permutations,
directional derivatives and projections.

Polynomials are GF(2) sums of monomials, stored as frozensets of masks; the
empty set is the zero polynomial.  Translated generating sets may fail to be
monomial, so translation results stay at the polynomial level and are only
compared through spans.
"""

from __future__ import annotations

import numpy as np

from .gf2 import BitMatrix, gf2_rank
from .monomials import MonomialCode, evaluate

Polynomial = frozenset  # of int masks


def _submasks(mask: int):
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def translate_monomial(g: int, b: int) -> Polynomial:
    """Expansion of prod (x_j + b_j) over the variables of g.

    Variables of g with b_j = 0 must stay; variables with b_j = 1 are free,
    giving one term per subset of them.  No GF(2) cancellation occurs.
    """
    fixed = g & ~b
    free = g & b
    return frozenset(fixed | t for t in _submasks(free))


def translate_set(code: MonomialCode, b: int) -> frozenset:
    """Generating set of the code permuted by the translation u -> u xor b.

    Each generator is expanded; the constant monomial maps to itself.
    """
    _check_vector(code.m, b, allow_zero=True)
    return frozenset(translate_monomial(g, b) for g in code.gens)


def derivative_monomial(g: int, b: int) -> Polynomial:
    """g(x + b) + g(x) as a polynomial; empty when b misses all variables."""
    return translate_monomial(g, b) ^ {g}


def directional_derivative(code: MonomialCode, b: int) -> frozenset:
    """Derivative generating set {g(x+b) + g(x)}, zero polynomials dropped."""
    _check_vector(code.m, b, allow_zero=False)
    out = set()
    for g in code.gens:
        poly = derivative_monomial(g, b)
        if poly:
            out.add(poly)
    return frozenset(out)


def evaluate_polynomial(terms: Polynomial, m: int) -> np.ndarray:
    vec = np.zeros(1 << m, dtype=np.uint8)
    for g in terms:
        vec ^= evaluate(g, m)
    return vec


def is_weakly_decreasing(code: MonomialCode) -> bool:
    """True iff the generating set is closed under monomial divisors.

    Single-variable steps suffice: the divisor lattice is graded, so closure
    under dropping one variable implies closure under all divisors.  This
    predicate decides invariance under the full translation group.
    """
    gens = code.gens
    for g in gens:
        mask = g
        while mask:
            low = mask & -mask
            if (g ^ low) not in gens:
                return False
            mask ^= low
    return True


def project_general(code: MonomialCode, b: int) -> tuple[BitMatrix, int]:
    """Half-length projection along direction b and its dimension.

    Evaluates every derivative polynomial, checks the defining coset
    symmetry (equal values at u and u xor b), restricts to the transversal
    {u : bit q of u = 0} with q the lowest set bit of b, and returns the
    restricted matrix together with its GF(2) rank.
    """
    _check_vector(code.m, b, allow_zero=False)
    derivs = sorted(directional_derivative(code, b), key=sorted)
    n = 1 << code.m
    q = (b & -b).bit_length() - 1
    transversal = np.nonzero((np.arange(n) >> q) & 1 == 0)[0]
    if not derivs:
        empty = BitMatrix.zeros(0, n // 2)
        return empty, 0
    idx = np.arange(n)
    rows = []
    for poly in derivs:
        vec = evaluate_polynomial(poly, code.m)
        if not np.array_equal(vec, vec[idx ^ b]):
            raise AssertionError("derivative not constant on cosets of b")
        rows.append(vec[transversal])
    mat = BitMatrix.from_bits(np.stack(rows))
    return mat, gf2_rank(mat)


def project_trivial(code: MonomialCode, q: int) -> MonomialCode:
    """Partial derivative code w.r.t. x_q, reindexed to m-1 variables."""
    if not 0 <= q < code.m:
        raise ValueError(f"direction {q} out of range for m={code.m}")
    xq = 1 << q
    low = xq - 1
    gens = set()
    for g in code.gens:
        if g & xq:
            h = g ^ xq
            gens.add((h & low) | ((h >> 1) & ~low))
    return MonomialCode(code.m - 1, frozenset(gens))


def apply_permutation(mask: int, perm) -> int:
    out = 0
    for j in range(mask.bit_length()):
        if mask >> j & 1:
            out |= 1 << perm[j]
    return out


def permute_variables(code: MonomialCode, perm) -> MonomialCode:
    """Relabel variables: x_j -> x_perm[j]."""
    perm = list(perm)
    if sorted(perm) != list(range(code.m)):
        raise ValueError("not a bijection on the variable indices")
    return MonomialCode(code.m, frozenset(apply_permutation(g, perm) for g in code.gens))


def is_invariant(code: MonomialCode, perm) -> bool:
    return permute_variables(code, perm).gens == code.gens


def _check_vector(m: int, b: int, *, allow_zero: bool) -> None:
    if not 0 <= b < (1 << m):
        raise ValueError(f"direction {b:#x} out of range for m={m}")
    if b == 0 and not allow_zero:
        raise ValueError("direction must be nonzero")
