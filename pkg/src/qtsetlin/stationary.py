"""
Closed-form stationary distributions of the three chains, and the
independent left-null-space oracle they are checked against.

Each closed form is a product of explicit factors.  The factor lists are
exposed separately (`perm_factors`, `word_factors`, `flag_coset_factors`) so
that positivity can be asserted factor by factor and zero denominators can be
reported eagerly, naming the state and the offending factor.
"""

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import inv, lrm_positions, p_k, q_factorial, q_int, word_states, perm_states
from .exact import Matrix, format_rational, left_null_space
from .flags import coset_to_perm, enumerate_flags
from .hecke_chains import LinearOperator, PermRates, WordRates

__all__ = [
    "StationaryVector",
    "kappa_perm",
    "kappa_word",
    "perm_factors",
    "word_factors",
    "flag_coset_factors",
    "stationary_perm_formula",
    "stationary_word_formula",
    "stationary_flags_formula",
    "classical_tsetlin_stationary",
    "stationary_oracle",
]


@dataclass(frozen=True)
class StationaryVector:
    """Left eigenvector with eigenvalue equal to the total rate, indexed by
    the chain's ordered states."""

    states: tuple
    values: tuple

    def __getitem__(self, state):
        return self.values[self.states.index(state)]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def normalized(self) -> "StationaryVector":
        s = self.total()
        if s == 0:
            raise ValueError("vector sums to zero; cannot normalize")
        return StationaryVector(self.states, tuple(v / s for v in self.values))

    def is_left_eigenvector(self, op: LinearOperator, eigenvalue) -> bool:
        """Exact check of v . M == eigenvalue * v."""
        if self.states != op.states:
            raise ValueError("state index mismatch")
        lam = Fraction(eigenvalue)
        m = op.matrix
        for c in range(m.cols):
            acc = Fraction(0)
            for r in range(m.rows):
                e = m.data[r][c]
                if e:
                    acc += self.values[r] * e
            if acc != lam * self.values[c]:
                return False
        return True

    def as_dict(self):
        from .combinatorics import seq_to_str

        def key(state):
            return state.to_str() if hasattr(state, "to_str") else seq_to_str(state)

        return {key(s): format_rational(v) for s, v in zip(self.states, self.values)}


def kappa_perm(b, rates: PermRates) -> Fraction:
    """Weighted prefix sum over the weakly decreasing sort of b:
    sum_i x_{b_i} q^(i + b_i - k - 1); the empty tuple gives 0."""
    b = tuple(sorted(b, reverse=True))
    k = len(b)
    q = rates.q
    total = Fraction(0)
    for i, v in enumerate(b, start=1):
        total += rates.x[v - 1] * q ** (i + v - k - 1)
    return total


def kappa_word(b, rates: WordRates) -> Fraction:
    """Word analogue: sum_i xbar_{b_i} q^(i + n_{b_i} - k - 1) / [m_{b_i}]_q
    on the weakly decreasing sort; empty tuple gives 0."""
    b = tuple(sorted(b, reverse=True))
    k = len(b)
    q = rates.q
    total = Fraction(0)
    for i, v in enumerate(b, start=1):
        total += rates.xbar[v - 1] * q ** (i + rates.n_j(v) - k - 1) / q_int(rates.m[v - 1], q)
    return total


def perm_factors(perm, rates: PermRates):
    """(prefactor, numerator factors, denominator factors) of the closed form
    for one permutation."""
    n = len(perm)
    q = rates.q
    total = rates.total()
    lrm = set(lrm_positions(perm))
    nums = []
    dens = []
    for k in range(1, n):
        dens.append(total - q ** (k - n - 1) * kappa_perm(perm[: k - 1], rates))
        if k in lrm:
            nums.append(kappa_perm((perm[k - 1],), rates))
        else:
            pk = p_k(perm, k)
            nums.append(
                kappa_perm(perm[pk - 1 : k], rates)
                - kappa_perm(perm[pk - 1 : k - 1], rates) / q
            )
    return q ** (-inv(perm)), nums, dens


def word_factors(word, rates: WordRates):
    """(prefactor, numerator factors, denominator factors) for one word."""
    n = rates.n
    q = rates.q
    total = rates.total()
    # Fiber inversion sum: the factor per part is [m_i]_{1/q}!, that is
    # q^(-binom(m_i,2)) [m_i]_q!  (not q^(-m_i+1); the two agree only for
    # parts <= 2, and only this form makes the entries sum to 1).
    pre = q ** (-inv(word))
    for part in rates.m:
        pre *= q ** (-(part * (part - 1) // 2)) * q_factorial(part, q)
    lrm = set(lrm_positions(word))
    nums = []
    dens = []
    for k in range(1, n):
        dens.append(total - q ** (k - n - 1) * kappa_word(word[: k - 1], rates))
        if k in lrm:
            nums.append(kappa_word((word[k - 1],), rates))
        else:
            pk = p_k(word, k)
            nums.append(
                kappa_word(word[pk - 1 : k], rates)
                - kappa_word(word[pk - 1 : k - 1], rates) / q
            )
    return pre, nums, dens


def _product_of_factors(state, pre, nums, dens, label):
    value = pre
    for f in nums:
        value *= f
    for k, d in enumerate(dens, start=1):
        if d == 0:
            from .combinatorics import seq_to_str

            name = state.to_str() if hasattr(state, "to_str") else seq_to_str(state)
            raise ValueError(f"{label} denominator factor k={k} vanishes at state {name}")
        value /= d
    return value


def stationary_perm_formula(rates: PermRates) -> StationaryVector:
    states = tuple(perm_states(rates.n))
    values = []
    for perm in states:
        pre, nums, dens = perm_factors(perm, rates)
        values.append(_product_of_factors(perm, pre, nums, dens, "permutation formula"))
    return StationaryVector(states, tuple(values))


def stationary_word_formula(rates: WordRates) -> StationaryVector:
    states = tuple(word_states(rates.m))
    values = []
    for word in states:
        pre, nums, dens = word_factors(word, rates)
        values.append(_product_of_factors(word, pre, nums, dens, "word formula"))
    return StationaryVector(states, tuple(values))


def flag_coset_factors(perm, rates: PermRates):
    """(numerator factors, denominator factors) of the flag closed form for
    the distinguished coset of one permutation.  The k = n factor equals 1
    when the rates sum to 1."""
    n = len(perm)
    q = rates.q
    total = rates.total()
    if total == 0:
        raise ValueError("flag formula requires a nonzero total rate")
    nums = []
    dens = []
    for k in range(1, n + 1):
        prefix = perm[: k - 1]
        pik = perm[k - 1]

        def b(s):
            return sum(1 for t in prefix if t > s)

        f = Fraction(0)
        for s in perm[:k]:
            if s <= pik:
                term = rates.x[s - 1] / (q ** (n - s - b(s)) * total)
                if s < pik:
                    term *= q - 1
                f += term
        d = total - sum(
            (rates.x[s - 1] / q ** (n - s - b(s)) for s in prefix), Fraction(0)
        )
        nums.append(f)
        dens.append(d)
    return nums, dens


def stationary_flags_formula(rates: PermRates, p: int) -> StationaryVector:
    """Closed form over all flags; constant on each double coset, so it is
    evaluated once per permutation and spread over the coset."""
    from .flags import _check_rates

    _check_rates(rates, p)
    n = rates.n
    per_perm = {}
    for perm in perm_states(n):
        nums, dens = flag_coset_factors(perm, rates)
        per_perm[perm] = _product_of_factors(perm, Fraction(1), nums, dens, "flag formula")
    states = tuple(enumerate_flags(n, p))
    return StationaryVector(states, tuple(per_perm[coset_to_perm(f)] for f in states))


def classical_tsetlin_stationary(x) -> StationaryVector:
    """Independent q = 1 oracle: the classical product formula
    prod_i x_{pi_i} / (x_{pi_{i+1}} + ... + x_{pi_n})."""
    x = tuple(Fraction(v) for v in x)
    n = len(x)
    states = tuple(perm_states(n))
    values = []
    for perm in states:
        value = Fraction(1)
        for i in range(n):
            tail = sum((x[v - 1] for v in perm[i:]), Fraction(0))
            if tail == 0:
                raise ValueError("tail sum vanishes; classical formula undefined")
            value *= x[perm[i] - 1] / tail
        values.append(value)
    return StationaryVector(states, tuple(values))


def stationary_oracle(op: LinearOperator, total_rate) -> StationaryVector:
    """Null-space oracle: the unique left eigenvector of the transition
    matrix with eigenvalue equal to the total rate, normalized to sum 1."""
    total_rate = Fraction(total_rate)
    m = op.matrix
    shifted = m - total_rate * Matrix.identity(m.rows)
    basis = left_null_space(shifted)
    if len(basis) != 1:
        raise ValueError(
            f"left null space has dimension {len(basis)}, expected 1 "
            "(non-generic rates or wrong total rate)"
        )
    v = basis[0]
    s = sum(v, Fraction(0))
    if s == 0:
        raise ValueError("stationary vector sums to zero; cannot normalize")
    return StationaryVector(op.states, tuple(entry / s for entry in v))
