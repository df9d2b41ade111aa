"""
Named verification suites behind `qtsetlin verify`.

Each suite returns (check name, passed) pairs; every check is an exact
identity, so there are no tolerances anywhere.  Sizes are bounded by the
requested n_max and prime list, with hard caps keeping the flag spaces at
desk scale.
"""

import random
from fractions import Fraction

from .combinatorics import coinv, perm_states, q_int, word_states
from .exact import Matrix, mat_mul
from .flags import (
    PartialFlag,
    hecke_generator_coset,
    rcayley_stationary,
    lrb_product,
    transition_matrix_flags,
    transition_matrix_flags_hecke,
)
from .hecke_chains import (
    PermRates,
    WordRates,
    hecke_generator_perm,
    hecke_generator_word,
    transition_matrix_perm,
    transition_matrix_word,
)
from .lumping import (
    check_commuting,
    map_rates_word_to_perm,
    proj_flags_to_perms,
    proj_perms_to_words,
)
from .spectra import (
    eigen_catalog_flags,
    eigen_catalog_perm,
    eigen_catalog_word,
    generic_perm_rates,
    generic_word_rates,
    verify_annihilation,
    verify_multiplicities,
)
from .stationary import (
    classical_tsetlin_stationary,
    flag_coset_factors,
    perm_factors,
    stationary_flags_formula,
    stationary_oracle,
    stationary_perm_formula,
    stationary_word_formula,
    word_factors,
)

SUITES = (
    "all",
    "matrix",
    "stationary",
    "spectra",
    "lumping",
    "hecke",
    "q1-reduction",
    "properties",
)

FLAG_STATE_CAP = 400
FLAG_NULLITY_CAP = 60


def flag_count(n, p):
    count = 1
    for k in range(1, n + 1):
        count *= int(q_int(k, p))
    return count


def compositions(n):
    out = []
    for cuts in range(2 ** (n - 1)):
        parts = []
        run = 1
        for i in range(n - 1):
            if cuts >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return out


def reference_matrix_n3(rates: PermRates) -> Matrix:
    """Reference 6x6 transition matrix for n = 3, evaluated at the rates."""
    q = rates.q
    x1, x2, x3 = rates.x
    z = Fraction(0)
    return Matrix(
        [
            [(q * q - q + 1) * x1 / q**2, (q - 1) * x1 / q**2, x2, z, x3, z],
            [(q - 1) * x1 / q, x1 / q, x2, z, x3, z],
            [x1, z, x2 / q, (q - 1) * x2 / q, z, x3],
            [x1, z, z, x2, z, x3],
            [z, x1, z, x2, x3, z],
            [z, x1, z, x2, z, x3],
        ]
    )


def reference_matrix_m12(rates: WordRates) -> Matrix:
    """Reference 3x3 word transition matrix for content (1, 2)."""
    q = rates.q
    x1, x2 = rates.xbar
    two = q_int(2, q)
    z = Fraction(0)
    return Matrix([[x1, x2, z], [x1, x2 / two, q * x2 / two], [x1, z, x2]])


def _rand_rates(rng, n, q=None, normalized=True):
    vals = [Fraction(rng.randint(1, 30), rng.randint(31, 90)) for _ in range(n)]
    if normalized:
        s = sum(vals, Fraction(0))
        vals = [v / s for v in vals]
    qq = q if q is not None else Fraction(rng.randint(2, 6))
    return PermRates(qq, tuple(vals))


def suite_matrix(n_max, p_list, seed):
    rng = random.Random(seed)
    checks = []
    for q in (Fraction(2), Fraction(3), Fraction(5, 2)):
        for trial in range(3):
            rates = _rand_rates(rng, 3, q=q)
            got = transition_matrix_perm(rates).matrix
            checks.append(
                (f"perm n=3 matrix equals reference form (q={q}, sample {trial})", got == reference_matrix_n3(rates))
            )
    for trial in range(3):
        wrates = WordRates(Fraction(rng.randint(2, 5)), _rand_rates(rng, 2).x, (1, 2))
        got = transition_matrix_word(wrates).matrix
        checks.append(
            (f"word m=(1,2) matrix equals reference form (sample {trial})", got == reference_matrix_m12(wrates))
        )
    for p in p_list:
        n = 3
        if flag_count(n, p) <= FLAG_STATE_CAP:
            rates = generic_perm_rates(n, seed=seed, p=p)
            a = transition_matrix_flags(rates, p).matrix
            b = transition_matrix_flags_hecke(rates, p).matrix
            checks.append((f"flag matrix line-insertion == Hecke composition (n=3, p={p})", a == b))
    return checks


def suite_stationary(n_max, p_list, seed):
    checks = []
    for n in range(2, n_max + 1):
        rates = generic_perm_rates(n, seed=seed + n)
        op = transition_matrix_perm(rates)
        psi = stationary_perm_formula(rates)
        ok = psi.is_left_eigenvector(op, rates.total()) and psi.total() == 1
        ok = ok and stationary_oracle(op, rates.total()).values == psi.values
        checks.append((f"perm n={n}: formula is stationary and oracle agrees", ok))
    for n in range(2, n_max + 1):
        for m in compositions(n):
            if len(m) == n or len(m) == 1:
                continue
            wrates = generic_word_rates(m, seed=seed)
            op = transition_matrix_word(wrates)
            psi = stationary_word_formula(wrates)
            ok = psi.is_left_eigenvector(op, wrates.total()) and psi.total() == 1
            ok = ok and stationary_oracle(op, wrates.total()).values == psi.values
            checks.append((f"word m={m}: formula is stationary and oracle agrees", ok))
    for p in p_list:
        for n in range(2, n_max + 1):
            if flag_count(n, p) > FLAG_STATE_CAP:
                continue
            rates = generic_perm_rates(n, seed=seed + n, p=p)
            op = transition_matrix_flags(rates, p)
            psi = stationary_flags_formula(rates, p)
            ok = psi.is_left_eigenvector(op, rates.total()) and psi.total() == 1
            ok = ok and stationary_oracle(op, rates.total()).values == psi.values
            if flag_count(n, p) <= FLAG_NULLITY_CAP:
                ok = ok and all(
                    rcayley_stationary(rates, p, f) == psi[f] for f in op.states
                )
                name = f"flag n={n} p={p}: formula, oracle and path method agree"
            else:
                name = f"flag n={n} p={p}: formula is stationary and oracle agrees"
            checks.append((name, ok))
    return checks


def suite_spectra(n_max, p_list, seed):
    checks = []
    for n in range(2, n_max + 1):
        rates = generic_perm_rates(n, seed=seed + 17 * n)
        op = transition_matrix_perm(rates)
        cat = eigen_catalog_perm(rates)
        rep = verify_multiplicities(op, cat)
        checks.append((f"perm n={n}: nullities match derangement multiplicities", rep.all_pass))
        checks.append((f"perm n={n}: annihilation product vanishes", verify_annihilation(op, cat)))
    for n in range(2, n_max + 1):
        for m in compositions(n):
            if len(m) == 1:
                continue
            wrates = generic_word_rates(m, seed=seed)
            op = transition_matrix_word(wrates)
            cat = eigen_catalog_word(wrates)
            rep = verify_multiplicities(op, cat)
            checks.append((f"word m={m}: nullities match poset-derangement multiplicities", rep.all_pass))
    for p in p_list:
        for n in range(2, n_max + 1):
            if flag_count(n, p) > FLAG_NULLITY_CAP:
                continue
            rates = generic_perm_rates(n, seed=seed + n, p=p)
            op = transition_matrix_flags(rates, p)
            cat = eigen_catalog_flags(rates, p)
            rep = verify_multiplicities(op, cat)
            ok = rep.all_pass and verify_annihilation(op, cat)
            checks.append((f"flag n={n} p={p}: nullities match q-derangement multiplicities", ok))
    return checks


def suite_lumping(n_max, p_list, seed):
    checks = []
    for p in p_list:
        for n in range(2, n_max + 1):
            if flag_count(n, p) > FLAG_STATE_CAP:
                continue
            rates = generic_perm_rates(n, seed=seed + n, p=p)
            for diagram in ("flags-perms-proj", "flags-perms-incl"):
                checks.append(
                    (f"{diagram} commutes (n={n}, p={p})", check_commuting(diagram, rates, p=p))
                )
            psi_f = stationary_flags_formula(rates, p)
            psi_p = stationary_perm_formula(rates)
            proj = proj_flags_to_perms(n, p)
            lumped = [Fraction(0)] * len(psi_p.states)
            for value, flag in zip(psi_f.values, psi_f.states):
                lumped[proj.target_states.index(_flag_perm(flag))] += value
            checks.append(
                (f"flag stationary lumps to perm stationary (n={n}, p={p})", tuple(lumped) == psi_p.values)
            )
            checks.append(
                (
                    f"perm mass is p^coinv times flag mass (n={n}, p={p})",
                    all(
                        psi_p[_flag_perm(f)] == Fraction(p) ** coinv(_flag_perm(f)) * psi_f[f]
                        for f in psi_f.states
                    ),
                )
            )
    for n in range(2, n_max + 1):
        for m in compositions(n):
            if len(m) == 1 or len(m) == n:
                continue
            wrates = generic_word_rates(m, seed=seed)
            rates = map_rates_word_to_perm(wrates)
            for diagram in ("perms-words-proj", "perms-words-incl"):
                checks.append(
                    (f"{diagram} commutes (m={m})", check_commuting(diagram, rates, m=m))
                )
            psi_p = stationary_perm_formula(rates)
            psi_w = stationary_word_formula(wrates)
            proj = proj_perms_to_words(m)
            lumped = [Fraction(0)] * len(psi_w.states)
            for value, perm in zip(psi_p.values, psi_p.states):
                lumped[proj.target_states.index(_destd(perm, m))] += value
            checks.append(
                (f"perm stationary lumps to word stationary (m={m})", tuple(lumped) == psi_w.values)
            )
    return checks


def _flag_perm(flag):
    from .flags import coset_to_perm

    return coset_to_perm(flag)


def _destd(perm, m):
    from .combinatorics import destandardize

    return destandardize(perm, m)


def _hecke_relations(gens, q):
    size = gens[0].rows
    ident = Matrix.identity(size)
    for i, ti in enumerate(gens):
        if not mat_mul(ti + ident, ti - q * ident).is_zero():
            return False
        for j in range(i + 2, len(gens)):
            if mat_mul(ti, gens[j]) != mat_mul(gens[j], ti):
                return False
        if i + 1 < len(gens):
            tj = gens[i + 1]
            if mat_mul(mat_mul(ti, tj), ti) != mat_mul(mat_mul(tj, ti), tj):
                return False
    return True


def suite_hecke(n_max, p_list, seed):
    rng = random.Random(seed)
    checks = []
    q = Fraction(rng.randint(2, 9), rng.randint(1, 3))
    for n in range(2, n_max + 1):
        gens = [hecke_generator_perm(i, n, q).matrix for i in range(1, n)]
        checks.append((f"Hecke relations on permutations (n={n}, q={q})", _hecke_relations(gens, q)))
    for n in range(2, n_max + 1):
        for m in compositions(n):
            if len(m) == 1 or len(m) == n:
                continue
            gens = [hecke_generator_word(i, m, q).matrix for i in range(1, n)]
            checks.append((f"Hecke relations on words (m={m}, q={q})", _hecke_relations(gens, q)))
    for p in p_list:
        for n in range(2, n_max + 1):
            if flag_count(n, p) > FLAG_STATE_CAP:
                continue
            gens = [hecke_generator_coset(i, n, p).matrix for i in range(1, n)]
            checks.append((f"Hecke relations on flags (n={n}, p={p})", _hecke_relations(gens, Fraction(p))))
    return checks


def suite_q1(n_max, p_list, seed):
    checks = []
    for n in range(2, min(n_max, 5) + 1):
        rates = generic_perm_rates(n, seed=seed + n, q=Fraction(1))
        psi = stationary_perm_formula(rates)
        classical = classical_tsetlin_stationary(rates.x)
        checks.append((f"q=1 stationary equals classical product formula (n={n})", psi.values == classical.values))
        cat = eigen_catalog_perm(rates)
        ok = all(
            e.value == sum((rates.x[i - 1] for i in e.label), Fraction(0)) for e in cat
        )
        from .combinatorics import derangement

        ok = ok and all(e.multiplicity == derangement(n - len(e.label)) for e in cat)
        checks.append((f"q=1 catalog reduces to subset sums with derangement multiplicities (n={n})", ok))
    return checks


def suite_properties(n_max, p_list, seed):
    rng = random.Random(seed)
    checks = []

    ok = True
    for _ in range(30):
        n = rng.randint(2, max(2, n_max))
        rates = _rand_rates(rng, n, normalized=False)
        sums = set(transition_matrix_perm(rates).matrix.row_sums())
        ok = ok and sums == {rates.total()}
    for _ in range(15):
        n = rng.randint(2, max(2, n_max))
        m = rng.choice([m for m in compositions(n) if len(m) > 1] or [(n,)])
        wrates = WordRates(Fraction(rng.randint(2, 5)), _rand_rates(rng, len(m), normalized=False).x, m)
        sums = set(transition_matrix_word(wrates).matrix.row_sums())
        ok = ok and sums == {wrates.total()}
    for _ in range(5):
        p = rng.choice(p_list)
        n = rng.randint(2, 3)
        rates = PermRates(Fraction(p), _rand_rates(rng, n, normalized=False).x)
        sums = set(transition_matrix_flags(rates, p).matrix.row_sums())
        ok = ok and sums == {rates.total()}
    checks.append(("row sums equal the total rate on 50 random configurations", ok))

    ok = True
    for n in range(2, n_max + 1):
        rates = generic_perm_rates(n, seed=seed + n)
        for perm in perm_states(n):
            pre, nums, dens = perm_factors(perm, rates)
            ok = ok and pre > 0 and all(f > 0 for f in nums) and all(f > 0 for f in dens)
        for m in compositions(n):
            if len(m) == 1:
                continue
            wrates = generic_word_rates(m, seed=seed)
            for word in word_states(m):
                pre, nums, dens = word_factors(word, wrates)
                ok = ok and pre > 0 and all(f > 0 for f in nums) and all(f > 0 for f in dens)
        prime = p_list[0]
        frates = generic_perm_rates(n, seed=seed + n, p=prime)
        for perm in perm_states(n):
            nums, dens = flag_coset_factors(perm, frates)
            ok = ok and all(f > 0 for f in nums) and all(f > 0 for f in dens)
    checks.append(("every stationary factor is positive at q >= 1, rates > 0", ok))

    p = p_list[0]
    n = min(4, max(3, n_max))
    ok = True
    for _ in range(100):
        a = _random_partial_flag(rng, n, p)
        b = _random_partial_flag(rng, n, p)
        ab = lrb_product(a, b)
        ok = ok and lrb_product(a, a) == a
        ok = ok and lrb_product(ab, a) == ab
    checks.append(("partial flags: idempotent and aba = ab on 100 random pairs", ok))

    ok = True
    for n in range(2, n_max + 1):
        rates = generic_perm_rates(n, seed=seed + n)
        ok = ok and sum(e.multiplicity for e in eigen_catalog_perm(rates)) == _fact(n)
        for m in compositions(n):
            if len(m) == 1:
                continue
            wrates = generic_word_rates(m, seed=seed)
            ok = ok and sum(e.multiplicity for e in eigen_catalog_word(wrates)) == len(word_states(m))
        for prime in p_list:
            frates = generic_perm_rates(n, seed=seed, p=prime)
            ok = ok and sum(e.multiplicity for e in eigen_catalog_flags(frates, prime)) == flag_count(n, prime)
    checks.append(("catalog multiplicities always sum to the state-space size", ok))
    return checks


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _random_partial_flag(rng, n, p):
    batches = []
    for _ in range(rng.randint(1, n)):
        v = tuple(rng.randrange(p) for _ in range(n))
        if any(v):
            batches.append([v])
    if not batches:
        batches = [[tuple([1] + [0] * (n - 1))]]
    return PartialFlag.from_vectors(batches, n, p)


def run_suite(name, n_max=3, p_list=(2, 3), seed=0):
    runners = {
        "matrix": suite_matrix,
        "stationary": suite_stationary,
        "spectra": suite_spectra,
        "lumping": suite_lumping,
        "hecke": suite_hecke,
        "q1-reduction": suite_q1,
        "properties": suite_properties,
    }
    if name == "all":
        checks = []
        for key in runners:
            checks.extend(runners[key](n_max, p_list, seed))
        return checks
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}")
    return runners[name](n_max, p_list, seed)
