"""
Projection and inclusion maps between the three state spaces, rate
compatibility, and exact verification of the commuting diagrams.

Matrices follow the package-wide row-to-column convention (row = source
state).  With that convention a projection intertwiner multiplies transition
matrices on the right and an inclusion on the left:

    T_flags . P  = P . T_perm          J . T_flags = T_perm . J
    T_perm  . Pw = Pw . T_word         Jw . T_perm = T_word . Jw
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import (
    block_sets,
    destandardize,
    inv,
    perm_states,
    standardize,
    word_states,
)
from .exact import Matrix, mat_mul
from .flags import coset_to_perm, enumerate_flags, transition_matrix_flags
from .hecke_chains import (
    PermRates,
    WordRates,
    transition_matrix_perm,
    transition_matrix_word,
)

__all__ = [
    "IntertwinerMatrix",
    "proj_flags_to_perms",
    "incl_perms_to_flags",
    "proj_perms_to_words",
    "incl_words_to_perms",
    "is_m_compatible",
    "map_rates_perm_to_word",
    "map_rates_word_to_perm",
    "young_subgroup",
    "inv_blockwise",
    "check_commuting",
    "DIAGRAMS",
]


@dataclass(frozen=True)
class IntertwinerMatrix:
    matrix: Matrix
    source_states: tuple
    target_states: tuple
    kind: str  # "projection" | "inclusion"


def proj_flags_to_perms(n: int, p: int) -> IntertwinerMatrix:
    """0/1 matrix sending each coset to its double-coset permutation."""
    flags = tuple(enumerate_flags(n, p))
    perms = tuple(perm_states(n))
    index = {s: i for i, s in enumerate(perms)}
    m = Matrix.zeros(len(flags), len(perms))
    for r, f in enumerate(flags):
        m.data[r][index[coset_to_perm(f)]] = Fraction(1)
    return IntertwinerMatrix(m, flags, perms, "projection")


def incl_perms_to_flags(n: int, p: int) -> IntertwinerMatrix:
    """Each permutation spreads over its double coset with coefficient
    q^inv(pi)."""
    flags = tuple(enumerate_flags(n, p))
    perms = tuple(perm_states(n))
    index = {s: i for i, s in enumerate(perms)}
    m = Matrix.zeros(len(perms), len(flags))
    for c, f in enumerate(flags):
        perm = coset_to_perm(f)
        m.data[index[perm]][c] = Fraction(p) ** inv(perm)
    return IntertwinerMatrix(m, perms, flags, "inclusion")


def proj_perms_to_words(m) -> IntertwinerMatrix:
    """0/1 matrix sending a permutation to its destandardized word."""
    perms = tuple(perm_states(sum(m)))
    words = tuple(word_states(m))
    index = {w: i for i, w in enumerate(words)}
    mat = Matrix.zeros(len(perms), len(words))
    for r, perm in enumerate(perms):
        mat.data[r][index[destandardize(perm, m)]] = Fraction(1)
    return IntertwinerMatrix(mat, perms, words, "projection")


def young_subgroup(m):
    """Elements of the direct product of symmetric groups on the blocks M_i,
    each as a value map over [n]."""
    blocks = block_sets(m)
    n = sum(m)
    out = []
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        tau = list(range(n + 1))  # tau[v] = image of value v; index 0 unused
        for block, images in zip(blocks, parts):
            for v, img in zip(block, images):
                tau[v] = img
        out.append(tuple(tau))
    return out


def inv_blockwise(tau, m) -> int:
    """Inversions of a Young-subgroup element, summed block by block."""
    total = 0
    for block in block_sets(m):
        images = [tau[v] for v in block]
        total += sum(
            1
            for i in range(len(images))
            for j in range(i + 1, len(images))
            if images[i] > images[j]
        )
    return total


def incl_words_to_perms(m, q) -> IntertwinerMatrix:
    """Each word spreads over its standardization fiber with coefficients
    q^(-inv_m(tau))."""
    q = Fraction(q)
    perms = tuple(perm_states(sum(m)))
    words = tuple(word_states(m))
    index = {s: i for i, s in enumerate(perms)}
    mat = Matrix.zeros(len(words), len(perms))
    taus = [(tau, inv_blockwise(tau, m)) for tau in young_subgroup(m)]
    for r, w in enumerate(words):
        std = standardize(w)
        for tau, invm in taus:
            image = tuple(tau[v] for v in std)
            mat.data[r][index[image]] += q ** (-invm)
    return IntertwinerMatrix(mat, words, perms, "inclusion")


def is_m_compatible(rates: PermRates, m) -> bool:
    """True iff y_i = x_i/q^(n-i) is constant on every block of m."""
    if sum(m) != rates.n:
        raise ValueError("composition does not match the rate vector")
    for block in block_sets(m):
        ys = {rates.y(i) for i in block}
        if len(ys) > 1:
            return False
    return True


def map_rates_perm_to_word(rates: PermRates, m) -> WordRates:
    """xbar_j = [m_j]_q x_{n_j}; only defined for m-compatible rates."""
    from .combinatorics import q_int

    if not is_m_compatible(rates, m):
        raise ValueError("rates are not m-compatible")
    xbar = []
    n_j = 0
    for part in m:
        n_j += part
        xbar.append(q_int(part, rates.q) * rates.x[n_j - 1])
    return WordRates(rates.q, tuple(xbar), tuple(m))


def map_rates_word_to_perm(rates: WordRates) -> PermRates:
    """Fill each block by y-constancy: x_{n_{j-1}+i} = q^(m_j - i) xbar_j / [m_j]_q."""
    from .combinatorics import q_int

    q = rates.q
    x = []
    for j, part in enumerate(rates.m, start=1):
        base = rates.xbar[j - 1] / q_int(part, q)
        for i in range(1, part + 1):
            x.append(q ** (part - i) * base)
    return PermRates(q, tuple(x))


DIAGRAMS = (
    "flags-perms-proj",
    "flags-perms-incl",
    "perms-words-proj",
    "perms-words-incl",
)


def check_commuting(diagram: str, rates: PermRates, p: int = None, m=None) -> bool:
    """Exact matrix identity for one of the four commuting diagrams.

    The word diagrams take the permutation rates (which must be
    m-compatible) and derive the word rates from them.
    """
    if diagram in ("flags-perms-proj", "flags-perms-incl"):
        if p is None:
            raise ValueError("flag diagrams need the field size")
        t_flags = transition_matrix_flags(rates, p).matrix
        t_perm = transition_matrix_perm(rates).matrix
        if diagram == "flags-perms-proj":
            proj = proj_flags_to_perms(rates.n, p).matrix
            return mat_mul(t_flags, proj) == mat_mul(proj, t_perm)
        incl = incl_perms_to_flags(rates.n, p).matrix
        return mat_mul(incl, t_flags) == mat_mul(t_perm, incl)
    if diagram in ("perms-words-proj", "perms-words-incl"):
        if m is None:
            raise ValueError("word diagrams need the composition")
        word_rates = map_rates_perm_to_word(rates, m)
        t_perm = transition_matrix_perm(rates).matrix
        t_word = transition_matrix_word(word_rates).matrix
        if diagram == "perms-words-proj":
            proj = proj_perms_to_words(m).matrix
            return mat_mul(t_perm, proj) == mat_mul(proj, t_word)
        incl = incl_words_to_perms(m, rates.q).matrix
        return mat_mul(incl, t_perm) == mat_mul(t_word, incl)
    raise ValueError(f"unknown diagram {diagram!r}; expected one of {DIAGRAMS}")
