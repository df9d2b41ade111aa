"""
Complete flags over a prime field, their distinguished coset representatives,
the line-insertion Markov chain on flags, and the partial-flag semigroup with
its right-Cayley-graph stationary formula.

A flag is stored through its representative matrix, kept as a tuple of
columns over Z/pZ.  The representative is canonical: the rightmost nonzero
entry of every row is 1 and is a column pivot (equivalently, every column's
pivot is its topmost nonzero entry and pivot rows vanish in later columns).
Column operations only ever add earlier columns to later ones or rescale, so
they never change the chain of column spans.

Subspaces (inside partial flags and the Cayley-graph walk) are stored as
reduced echelon bases, making subspace equality plain tuple equality.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import perm_states
from .exact import Matrix, mat_mul
from .hecke_chains import LinearOperator, PermRates, _shuffle_sum

__all__ = [
    "is_prime",
    "Line",
    "enumerate_lines",
    "line_weight",
    "FlagRep",
    "canonicalize_coset",
    "enumerate_flags",
    "coset_to_perm",
    "insert_line",
    "hecke_generator_coset",
    "weight_op_flags",
    "transition_matrix_flags",
    "transition_matrix_flags_hecke",
    "PartialFlag",
    "span_basis",
    "lrb_product",
    "rcayley_stationary",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"field size {p} is not prime")


def _inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class Line:
    """Line <e_i + sum_{k>i} c_k e_k>: lead index i (1-based) plus the tail c."""

    lead: int
    tail: tuple

    def vector(self, n: int) -> tuple:
        v = [0] * n
        v[self.lead - 1] = 1
        for k, c in enumerate(self.tail, start=self.lead):
            v[k] = c
        return tuple(v)


def enumerate_lines(n: int, p: int):
    """All [n]_p lines of the space, in canonical lead-index form."""
    _check_prime(p)
    out = []
    for lead in range(1, n + 1):
        for tail in itertools.product(range(p), repeat=n - lead):
            out.append(Line(lead, tail))
    return out


def line_weight(line: Line, rates: PermRates) -> Fraction:
    """Weight x_i / q^(n-i) of a line with lead index i."""
    return rates.y(line.lead)


@dataclass(frozen=True)
class FlagRep:
    """Canonical coset representative; cols[j] spans V_{j+1} together with
    the earlier columns."""

    cols: tuple
    p: int

    @property
    def n(self):
        return len(self.cols)

    def rows(self):
        return tuple(zip(*self.cols))

    def to_str(self) -> str:
        sep = "" if self.p <= 9 else ","
        return "|".join(sep.join(str(a) for a in row) for row in self.rows())


def _canonical_columns(cols, p):
    """Column-reduce to canonical form; dependent columns drop out.

    Returns (columns, pivot rows).  Sweeping the already-placed pivot rows
    from top to bottom suffices, because clearing a pivot row only disturbs
    the rows below it.
    """
    out = []
    pivots = []
    for col in cols:
        col = [a % p for a in col]
        for row, ocol in sorted(zip(pivots, out)):
            c = col[row]
            if c:
                col = [(a - c * b) % p for a, b in zip(col, ocol)]
        lead = next((r for r, a in enumerate(col) if a), None)
        if lead is None:
            continue
        s = _inv_mod(col[lead], p)
        out.append(tuple((a * s) % p for a in col))
        pivots.append(lead)
    return tuple(out), tuple(pivots)


def canonicalize_coset(rows, p: int) -> FlagRep:
    """Canonical representative of the coset of an invertible matrix
    (given as rows)."""
    _check_prime(p)
    cols = tuple(zip(*rows))
    out, _ = _canonical_columns(cols, p)
    if len(out) != len(cols):
        raise ValueError("matrix is singular")
    return FlagRep(out, p)


def _canonical_flag(cols, p) -> FlagRep:
    out, _ = _canonical_columns(cols, p)
    return FlagRep(out, p)


def coset_to_perm(flag: FlagRep) -> tuple:
    """Permutation pi with pi_j = pivot row of column j (1-based)."""
    perm = []
    for col in flag.cols:
        lead = next(r for r, a in enumerate(col) if a)
        perm.append(lead + 1)
    return tuple(perm)


def enumerate_flags(n: int, p: int):
    """All canonical representatives: cosets grouped by their permutation in
    lexicographic order, free entries in column-major lexicographic order."""
    _check_prime(p)
    out = []
    for perm in perm_states(n):
        col_of_row = {row: c for c, row in enumerate(perm, start=1)}
        free = [
            (r, c)
            for c in range(1, n + 1)
            for r in range(perm[c - 1] + 1, n + 1)
            if col_of_row[r] > c
        ]
        free.sort(key=lambda rc: (rc[1], rc[0]))
        for values in itertools.product(range(p), repeat=len(free)):
            cols = [[0] * n for _ in range(n)]
            for c in range(1, n + 1):
                cols[c - 1][perm[c - 1] - 1] = 1
            for (r, c), v in zip(free, values):
                cols[c - 1][r - 1] = v
            out.append(FlagRep(tuple(tuple(col) for col in cols), p))
    return out


def insert_line(flag: FlagRep, line: Line) -> FlagRep:
    """Prepend the line as a new first column and re-canonicalize; the
    dependent column drops out, leaving the flag with the line in front."""
    cols = (line.vector(flag.n),) + flag.cols
    result = _canonical_flag(cols, flag.p)
    if result.n != flag.n:
        raise ValueError("line insertion lost a dimension")
    return result


def hecke_generator_coset(i: int, n: int, p: int) -> LinearOperator:
    """Right action of T_i on the flag basis: column swap plus the p-1
    lower-triangular corrections, every image re-canonicalized."""
    _check_prime(p)
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    states = tuple(enumerate_flags(n, p))
    index = {f: r for r, f in enumerate(states)}
    m = Matrix.zeros(len(states), len(states))
    one = Fraction(1)
    for r, flag in enumerate(states):
        cols = list(flag.cols)
        swapped = cols[:]
        swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
        m.data[r][index[_canonical_flag(tuple(swapped), p)]] += one
        for t in range(1, p):
            shear = cols[:]
            shear[i - 1] = tuple((a + t * b) % p for a, b in zip(cols[i - 1], cols[i]))
            m.data[r][index[_canonical_flag(tuple(shear), p)]] += one
    return LinearOperator(states, m)


def weight_op_flags(rates: PermRates, p: int) -> LinearOperator:
    """Diagonal weight: a coset is scaled by x_i/q^(n-i) where i is the row
    of the leading 1 in its first column."""
    _check_rates(rates, p)
    states = tuple(enumerate_flags(rates.n, p))
    m = Matrix.zeros(len(states), len(states))
    for r, flag in enumerate(states):
        lead = next(row for row, a in enumerate(flag.cols[0]) if a)
        m.data[r][r] = rates.y(lead + 1)
    return LinearOperator(states, m)


def _check_rates(rates: PermRates, p: int):
    _check_prime(p)
    if rates.q != p:
        raise ValueError("flag chain requires q equal to the field size")


def transition_matrix_flags(rates: PermRates, p: int) -> LinearOperator:
    """Transition matrix on flags: row F adds, for every line L, the weight
    of L at the column obtained by inserting L in front of F."""
    _check_rates(rates, p)
    n = rates.n
    states = tuple(enumerate_flags(n, p))
    index = {f: r for r, f in enumerate(states)}
    lines = enumerate_lines(n, p)
    weights = [line_weight(line, rates) for line in lines]
    m = Matrix.zeros(len(states), len(states))
    for r, flag in enumerate(states):
        row = m.data[r]
        for line, w in zip(lines, weights):
            row[index[insert_line(flag, line)]] += w
    return LinearOperator(states, m)


def transition_matrix_flags_hecke(rates: PermRates, p: int) -> LinearOperator:
    """Same operator assembled from the Hecke generators and the diagonal
    weight; used as an independent cross-check of transition_matrix_flags."""
    _check_rates(rates, p)
    n = rates.n
    states = tuple(enumerate_flags(n, p))
    gens = [hecke_generator_coset(i, n, p).matrix for i in range(1, n)]
    shuffle = _shuffle_sum(gens, len(states))
    weight = weight_op_flags(rates, p).matrix
    return LinearOperator(states, mat_mul(shuffle, weight))


# ---------------------------------------------------------------------------
# Subspaces and the partial-flag semigroup


def _reduce_vector(v, basis, p):
    v = list(v)
    for b in basis:
        lead = next(r for r, a in enumerate(b) if a)
        c = v[lead]
        if c:
            v = [(a - c * bb) % p for a, bb in zip(v, b)]
    return tuple(v)


def span_basis(vectors, p):
    """Reduced echelon basis of the span, ordered by pivot position."""
    basis = []
    for v in vectors:
        v = _reduce_vector(v, basis, p)
        if any(v):
            lead = next(r for r, a in enumerate(v) if a)
            v = tuple((a * _inv_mod(v[lead], p)) % p for a in v)
            basis = [
                tuple((a - b[lead] * vv) % p for a, vv in zip(b, v)) for b in basis
            ]
            basis.append(v)
            basis.sort(key=lambda b: next(r for r, a in enumerate(b) if a))
    return tuple(basis)


def _contains(basis, v, p) -> bool:
    return not any(_reduce_vector(v, basis, p))


@dataclass(frozen=True)
class PartialFlag:
    """Strictly increasing chain of subspaces, each a reduced echelon basis."""

    chain: tuple
    n: int
    p: int

    @classmethod
    def from_vectors(cls, vector_chains, n, p):
        """Build from cumulative spanning vectors, one batch per step;
        batches that do not grow the span are dropped."""
        chain = []
        seen = []
        for vecs in vector_chains:
            seen.extend(vecs)
            sub = span_basis(seen, p)
            if not chain or sub != chain[-1]:
                chain.append(sub)
        return cls(tuple(chain), n, p)

    @classmethod
    def from_flag(cls, flag: FlagRep):
        chain = []
        for j in range(1, flag.n + 1):
            chain.append(span_basis(flag.cols[:j], flag.p))
        return cls(tuple(chain), flag.n, flag.p)


def lrb_product(a: PartialFlag, b: PartialFlag) -> PartialFlag:
    """Concatenate-and-saturate product; repeated subspaces are removed."""
    if a.n != b.n or a.p != b.p:
        raise ValueError("partial flags live in different spaces")
    chain = list(a.chain)
    top = list(a.chain[-1]) if a.chain else []
    for w in b.chain:
        joined = span_basis(top + list(w), a.p)
        if not chain or joined != chain[-1]:
            chain.append(joined)
    return PartialFlag(tuple(chain), a.n, a.p)


def rcayley_stationary(rates: PermRates, p: int, flag: FlagRep) -> Fraction:
    """Stationary mass of a complete flag via transition-edge paths in the
    right Cayley graph of the partial-flag semigroup.

    Every transition path from the empty flag to F walks F's prefix chain,
    so parallel edges are grouped per step: the numerator collects the lines
    first contained at each step, the denominator the stabilizing lines.
    Requires the rates to sum to 1.
    """
    _check_rates(rates, p)
    if rates.total() != 1:
        raise ValueError("the path method requires rates summing to 1")
    n = flag.n
    prefixes = [span_basis(flag.cols[:j], p) for j in range(1, n + 1)]
    step_weight = [Fraction(0)] * (n + 1)
    for line in enumerate_lines(n, p):
        v = line.vector(n)
        first = next(j for j in range(1, n + 1) if _contains(prefixes[j - 1], v, p))
        step_weight[first] += line_weight(line, rates)
    numerator = Fraction(1)
    for j in range(1, n + 1):
        numerator *= step_weight[j]
    value = numerator
    stab = Fraction(0)
    for j in range(1, n):
        stab += step_weight[j]
        denom = 1 - stab
        if denom == 0:
            raise ValueError(f"stabilizer weight of prefix {j} reaches 1; path method undefined")
        value /= denom
    return value
