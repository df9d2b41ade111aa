"""
Hecke generator actions on permutations and words, the diagonal weight
operators, and the resulting transition matrices.

All operators act on the right.  A LinearOperator stores its matrix in the
row-to-column convention: entry (r, c) is the coefficient of state c in
(state r) . Op.  Composing "apply A, then B" therefore multiplies matrices in
the same order, matrix(A) @ matrix(B).

The generator acts on a sequence by

    s . T_i = q * swap(s, i)              if s[i+1] < s[i]   (<= for words)
              swap(s, i) + (q-1) * s      if s[i+1] > s[i]

and the full shuffle operator is sum_{i=1}^{n} T_{i-1} ... T_1 X, where the
i = 1 summand is the identity and X is the diagonal weight operator.  At
q = 1 this is the classical move-to-front chain.
"""

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import perm_states, q_int, word_states
from .exact import Matrix, mat_mul

__all__ = [
    "PermRates",
    "WordRates",
    "LinearOperator",
    "hecke_generator_perm",
    "hecke_generator_word",
    "weight_op_perm",
    "weight_op_word",
    "transition_matrix_perm",
    "transition_matrix_word",
]


@dataclass(frozen=True)
class PermRates:
    """Rates for the permutation chain: one weight per book, plus q != 0."""

    q: Fraction
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        if self.q == 0:
            raise ValueError("q must be nonzero")

    @property
    def n(self):
        return len(self.x)

    def total(self) -> Fraction:
        return sum(self.x, Fraction(0))

    def y(self, i: int) -> Fraction:
        """Change of variables y_i = x_i / q^(n-i), 1-based."""
        return self.x[i - 1] / self.q ** (self.n - i)


@dataclass(frozen=True)
class WordRates:
    """Rates for the word chain: one weight per letter and the content m."""

    q: Fraction
    xbar: tuple
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "xbar", tuple(Fraction(v) for v in self.xbar))
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if len(self.xbar) != len(self.m):
            raise ValueError("one rate per letter required")
        if any(part < 1 for part in self.m):
            raise ValueError("content parts must be positive")

    @property
    def n(self):
        return sum(self.m)

    @property
    def letters(self):
        return len(self.m)

    def total(self) -> Fraction:
        return sum(self.xbar, Fraction(0))

    def n_j(self, j: int) -> int:
        """Partial sum m_1 + ... + m_j."""
        return sum(self.m[:j])

    def ybar(self, j: int) -> Fraction:
        """ybar_j = xbar_j / (q^(n - n_j) [m_j]_q), 1-based."""
        return self.xbar[j - 1] / (
            self.q ** (self.n - self.n_j(j)) * q_int(self.m[j - 1], self.q)
        )


@dataclass(frozen=True)
class LinearOperator:
    """Square matrix together with its ordered state index."""

    states: tuple
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols or self.matrix.rows != len(self.states):
            raise ValueError("operator matrix must be square over the state index")

    def index(self):
        return {s: i for i, s in enumerate(self.states)}


def _swap(seq, i):
    """Exchange entries at 1-based positions i, i+1."""
    out = list(seq)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def _generator_matrix(states, i, q, equal_goes_first):
    index = {s: r for r, s in enumerate(states)}
    q = Fraction(q)
    m = Matrix.zeros(len(states), len(states))
    for r, s in enumerate(states):
        a, b = s[i - 1], s[i]
        swapped = _swap(s, i)
        if b < a or (equal_goes_first and b == a):
            m.data[r][index[swapped]] += q
        else:
            m.data[r][index[swapped]] += Fraction(1)
            m.data[r][r] += q - 1
    return m


def hecke_generator_perm(i: int, n: int, q) -> LinearOperator:
    """Right action of T_i on S_n, states in lexicographic order."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    states = tuple(perm_states(n))
    return LinearOperator(states, _generator_matrix(states, i, q, equal_goes_first=False))


def hecke_generator_word(i: int, m, q) -> LinearOperator:
    """Right action of T_i on words of content m (equal letters pick up q)."""
    n = sum(m)
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    states = tuple(word_states(m))
    return LinearOperator(states, _generator_matrix(states, i, q, equal_goes_first=True))


def weight_op_perm(rates: PermRates) -> LinearOperator:
    """Diagonal operator sending a permutation to x_{pi_1}/q^(n-pi_1) times itself."""
    states = tuple(perm_states(rates.n))
    m = Matrix.zeros(len(states), len(states))
    for r, s in enumerate(states):
        m.data[r][r] = rates.y(s[0])
    return LinearOperator(states, m)


def weight_op_word(rates: WordRates) -> LinearOperator:
    """Diagonal operator sending a word to ybar_{w_1} times itself."""
    states = tuple(word_states(rates.m))
    m = Matrix.zeros(len(states), len(states))
    for r, w in enumerate(states):
        m.data[r][r] = rates.ybar(w[0])
    return LinearOperator(states, m)


def _shuffle_sum(generator_matrices, size):
    """Matrix of sum_{i=1}^{n} T_{i-1} ... T_1 (i = 1 term is the identity).

    T_{i-1} acts first, so the i-th summand is M_{i-1} @ ... @ M_1; each
    summand extends the previous one by one more generator on the left.
    """
    total = Matrix.identity(size)
    partial = Matrix.identity(size)
    for gen in generator_matrices:
        partial = mat_mul(gen, partial)
        total = total + partial
    return total


def transition_matrix_perm(rates: PermRates) -> LinearOperator:
    """Transition matrix of the weighted shuffle on S_n (lexicographic states)."""
    n = rates.n
    states = tuple(perm_states(n))
    gens = [_generator_matrix(states, i, rates.q, equal_goes_first=False) for i in range(1, n)]
    shuffle = _shuffle_sum(gens, len(states))
    weight = weight_op_perm(rates).matrix
    return LinearOperator(states, mat_mul(shuffle, weight))


def transition_matrix_word(rates: WordRates) -> LinearOperator:
    """Transition matrix of the weighted shuffle on words of content m."""
    n = rates.n
    states = tuple(word_states(rates.m))
    gens = [_generator_matrix(states, i, rates.q, equal_goes_first=True) for i in range(1, n)]
    shuffle = _shuffle_sum(gens, len(states))
    weight = weight_op_word(rates).matrix
    return LinearOperator(states, mat_mul(shuffle, weight))
