"""
Eigenvalue catalogs with predicted multiplicities for the three chains, and
their exact verification.

Characteristic polynomials are never expanded: a predicted multiplicity is
checked as the exact nullity of (M - lambda I), and diagonalizability as the
vanishing of the product of (M - lambda I) over the distinct catalog values.
Entries whose values collide (non-generic rates) are merged, multiplicities
added, before checking.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .combinatorics import (
    derangement,
    enumerate_upper_sets,
    poset_derangements,
    q_derangement,
    q_int,
)
from .exact import Matrix, format_rational, mat_mul, rank_nullity
from .hecke_chains import LinearOperator, PermRates, WordRates

__all__ = [
    "EigenEntry",
    "eigen_catalog_perm",
    "eigen_catalog_word",
    "eigen_catalog_flags",
    "merge_catalog",
    "verify_multiplicities",
    "verify_annihilation",
    "generic_perm_rates",
    "generic_word_rates",
]


@dataclass(frozen=True)
class EigenEntry:
    """label: subset of [n] as a decreasing tuple, or a weak composition for
    the word chain; multiplicity may be zero."""

    label: tuple
    value: Fraction
    multiplicity: int


def subset_eigenvalue(subset_desc, rates: PermRates) -> Fraction:
    """lambda_S = sum_j x_{i_j} / q^(n - i_j - j + 1) for S = {i_1 > i_2 > ...}."""
    n = rates.n
    total = Fraction(0)
    for j, i in enumerate(subset_desc, start=1):
        total += rates.x[i - 1] / rates.q ** (n - i - j + 1)
    return total


def eigen_catalog_perm(rates: PermRates):
    """One entry per subset of [n]; multiplicity derangement(n - |S|)."""
    n = rates.n
    out = []
    for k in range(n + 1):
        for combo in combinations(range(1, n + 1), k):
            label = tuple(sorted(combo, reverse=True))
            out.append(EigenEntry(label, subset_eigenvalue(label, rates), derangement(n - k)))
    return out


def eigen_catalog_word(rates: WordRates):
    """One entry per upper set of the chain-union poset; multiplicity is the
    poset-derangement count of the truncated poset."""
    q = rates.q
    n = rates.n
    out = []
    for a in enumerate_upper_sets(rates.m):
        value = Fraction(0)
        for j in range(1, rates.letters + 1):
            aj = a[j - 1]
            if aj == 0:
                continue
            above = sum(a[j:])
            value += (
                rates.xbar[j - 1]
                * q**above
                * q_int(aj, q)
                / (q ** (n - rates.n_j(j)) * q_int(rates.m[j - 1], q))
            )
        out.append(EigenEntry(tuple(a), value, poset_derangements(rates.m, a)))
    return out


def eigen_catalog_flags(rates: PermRates, p: int):
    """One entry per subset of [n]; multiplicity
    d_{n-k}(q) q^((n - i_1) + (n-1 - i_2) + ... + (n-k+1 - i_k)), and 1 for
    the full subset.  Multiplicities sum to the number of flags."""
    from .flags import _check_rates

    _check_rates(rates, p)
    n = rates.n
    out = []
    for k in range(n + 1):
        for combo in combinations(range(1, n + 1), k):
            label = tuple(sorted(combo, reverse=True))
            if k == n:
                mult = 1
            else:
                exponent = sum(n - j + 1 - i for j, i in enumerate(label, start=1))
                value = q_derangement(n - k, p) * Fraction(p) ** exponent
                if value.denominator != 1:
                    raise ValueError("flag multiplicity is not an integer")
                mult = int(value)
            out.append(EigenEntry(label, subset_eigenvalue(label, rates), mult))
    return out


def merge_catalog(entries):
    """Group entries with equal values; multiplicities add, labels collect."""
    by_value = {}
    order = []
    for e in entries:
        if e.value not in by_value:
            by_value[e.value] = [[], 0]
            order.append(e.value)
        by_value[e.value][0].append(e.label)
        by_value[e.value][1] += e.multiplicity
    return [
        EigenEntry(tuple(by_value[v][0]), v, by_value[v][1]) for v in order
    ]


@dataclass(frozen=True)
class MultiplicityReport:
    entries: tuple  # (labels, value, predicted, computed, ok)
    dimension: int
    total_predicted: int

    @property
    def dimension_ok(self):
        return self.total_predicted == self.dimension

    @property
    def all_pass(self):
        return self.dimension_ok and all(ok for *_, ok in self.entries)

    def as_json(self):
        return {
            "checks": [
                {
                    "label": [list(l) for l in labels],
                    "value": format_rational(value),
                    "predicted": predicted,
                    "computed": computed,
                    "pass": ok,
                }
                for labels, value, predicted, computed, ok in self.entries
            ],
            "dimension": self.dimension,
            "total_predicted": self.total_predicted,
            "all_pass": self.all_pass,
        }


def verify_multiplicities(op: LinearOperator, catalog) -> MultiplicityReport:
    """Exact nullity of (M - lambda I) against the predicted multiplicity for
    every merged catalog value, plus the total-dimension check."""
    m = op.matrix
    merged = merge_catalog(catalog)
    rows = []
    for entry in merged:
        shifted = m - entry.value * Matrix.identity(m.rows)
        _, nullity = rank_nullity(shifted)
        rows.append(
            (entry.label, entry.value, entry.multiplicity, nullity, nullity == entry.multiplicity)
        )
    total = sum(e.multiplicity for e in merged)
    return MultiplicityReport(tuple(rows), m.rows, total)


def verify_annihilation(op: LinearOperator, catalog) -> bool:
    """True iff the product of (M - lambda I) over distinct catalog values is
    exactly zero (diagonalizability with the cataloged spectrum)."""
    m = op.matrix
    values = []
    for e in catalog:
        if e.value not in values:
            values.append(e.value)
    product = Matrix.identity(m.rows)
    for v in values:
        product = mat_mul(product, m - v * Matrix.identity(m.rows))
        if product.is_zero():
            return True
    return product.is_zero()


def _random_positive_rationals(count, rng):
    vals = [Fraction(rng.randint(1, 40), rng.randint(41, 97)) for _ in range(count)]
    total = sum(vals, Fraction(0))
    return tuple(v / total for v in vals)


def generic_perm_rates(n: int, seed=0, q=None, p=None) -> PermRates:
    """Random positive rationals summing to 1, resampled until all subset
    eigenvalues are pairwise distinct.  With p given, q is pinned to p."""
    rng = random.Random(seed)
    if p is not None:
        q = Fraction(p)
    for _ in range(200):
        qq = q if q is not None else Fraction(rng.randint(2, 7))
        rates = PermRates(qq, _random_positive_rationals(n, rng))
        values = [subset_eigenvalue(e.label, rates) for e in eigen_catalog_perm(rates)]
        if len(set(values)) == len(values):
            return rates
    raise RuntimeError("failed to sample generic rates")


def generic_word_rates(m, seed=0, q=None) -> WordRates:
    """Random positive letter rates summing to 1 with pairwise distinct
    upper-set eigenvalues."""
    rng = random.Random(seed)
    for _ in range(200):
        qq = q if q is not None else Fraction(rng.randint(2, 7))
        rates = WordRates(qq, _random_positive_rationals(len(m), rng), m)
        values = [e.value for e in eigen_catalog_word(rates)]
        if len(set(values)) == len(values):
            return rates
    raise RuntimeError("failed to sample generic rates")
