"""
Command-line front end.

Subcommands: matrix, stationary, spectrum, lump-check, verify.  Exact values
are emitted as canonical rational strings ("a/b", or "a" when integral), so
JSON and CSV output can round-trip without loss.  Exit codes: 0 success,
1 verification failure, 2 usage or configuration error.
"""

import argparse
import json
import sys
from fractions import Fraction

from .combinatorics import seq_to_str
from .exact import format_rational, parse_rational
from .flags import enumerate_flags, is_prime, rcayley_stationary, transition_matrix_flags
from .hecke_chains import (
    PermRates,
    WordRates,
    transition_matrix_perm,
    transition_matrix_word,
)
from .lumping import check_commuting, map_rates_word_to_perm
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
    stationary_flags_formula,
    stationary_oracle,
    stationary_perm_formula,
    stationary_word_formula,
)
from . import suites

__all__ = ["main", "build_parser", "ConfigError"]


class ConfigError(Exception):
    pass


def _parse_rates(text):
    try:
        return tuple(parse_rational(v) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad rate list {text!r}: {e}")


def _parse_composition(text):
    try:
        parts = tuple(int(v) for v in text.split(","))
    except ValueError as e:
        raise ConfigError(f"bad composition {text!r}: {e}")
    if any(v < 1 for v in parts):
        raise ConfigError("composition parts must be positive")
    return parts


def _state_key(state):
    return state.to_str() if hasattr(state, "to_str") else seq_to_str(state)


def _load_config(args):
    """Validate the flag combination and build the rates for the space."""
    space = args.space
    if space == "flag":
        if args.p is None:
            raise ConfigError("flag space requires --p")
        if not is_prime(args.p):
            raise ConfigError(f"--p {args.p} is not prime")
        if args.q is not None:
            raise ConfigError("flag space takes q from --p; omit --q")
        if args.n is None:
            raise ConfigError("flag space requires --n")
        q = Fraction(args.p)
        if args.rates is None:
            rates = generic_perm_rates(args.n, seed=args.seed, p=args.p)
        else:
            x = _parse_rates(args.rates)
            if len(x) != args.n:
                raise ConfigError(f"expected {args.n} rates, got {len(x)}")
            rates = PermRates(q, x)
        return rates
    if space == "perm":
        if args.n is None:
            raise ConfigError("perm space requires --n")
        if args.q is None:
            raise ConfigError("perm space requires --q")
        q = parse_rational(args.q)
        if q == 0:
            raise ConfigError("q must be nonzero")
        if args.rates is None:
            return generic_perm_rates(args.n, seed=args.seed, q=q)
        x = _parse_rates(args.rates)
        if len(x) != args.n:
            raise ConfigError(f"expected {args.n} rates, got {len(x)}")
        return PermRates(q, x)
    if space == "word":
        if args.m is None:
            raise ConfigError("word space requires --m")
        if args.q is None:
            raise ConfigError("word space requires --q")
        m = _parse_composition(args.m)
        q = parse_rational(args.q)
        if q == 0:
            raise ConfigError("q must be nonzero")
        if args.rates is None:
            return generic_word_rates(m, seed=args.seed, q=q)
        xbar = _parse_rates(args.rates)
        if len(xbar) != len(m):
            raise ConfigError(f"expected {len(m)} rates, got {len(xbar)}")
        return WordRates(q, xbar, m)
    raise ConfigError(f"unknown space {space!r}")


def _build_operator(args, rates):
    if args.space == "perm":
        return transition_matrix_perm(rates)
    if args.space == "word":
        return transition_matrix_word(rates)
    return transition_matrix_flags(rates, args.p)


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_matrix(args) -> int:
    rates = _load_config(args)
    op = _build_operator(args, rates)
    states = [_state_key(s) for s in op.states]
    entries = [[format_rational(v) for v in row] for row in op.matrix.data]
    if args.format == "json":
        _emit(args, json.dumps({"states": states, "entries": entries}, indent=2))
    else:
        lines = ["state," + ",".join(states)]
        for s, row in zip(states, entries):
            lines.append(s + "," + ",".join(row))
        _emit(args, "\n".join(lines))
    return 0


def cmd_stationary(args) -> int:
    rates = _load_config(args)
    if args.method == "semigroup" and args.space != "flag":
        raise ConfigError("--method semigroup applies to the flag space only")
    methods = {}
    if args.method == "all":
        wanted = ["formula", "oracle"]
        if args.space == "flag" and rates.total() == 1:
            wanted.append("semigroup")
    else:
        wanted = [args.method]
    op = None
    for method in wanted:
        if method == "formula":
            if args.space == "perm":
                vec = stationary_perm_formula(rates)
            elif args.space == "word":
                vec = stationary_word_formula(rates)
            else:
                vec = stationary_flags_formula(rates, args.p)
            methods["formula"] = vec.normalized()
        elif method == "oracle":
            op = op or _build_operator(args, rates)
            methods["oracle"] = stationary_oracle(op, rates.total())
        elif method == "semigroup":
            if rates.total() != 1:
                raise ConfigError("--method semigroup requires rates summing to 1")
            flags = enumerate_flags(rates.n, args.p)
            values = tuple(rcayley_stationary(rates, args.p, f) for f in flags)
            from .stationary import StationaryVector

            methods["semigroup"] = StationaryVector(tuple(flags), values)
    agreement = len({m.values for m in methods.values()}) == 1
    if args.method != "all":
        _emit_vector(args, next(iter(methods.values())))
        return 0
    payload = {name: vec.as_dict() for name, vec in methods.items()}
    payload["agree"] = agreement
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=2))
    else:
        lines = ["method,state,value"]
        for name, vec in methods.items():
            for k, v in vec.as_dict().items():
                lines.append(f"{name},{k},{v}")
        lines.append(f"agree,,{str(agreement).lower()}")
        _emit(args, "\n".join(lines))
    return 0 if agreement else 1


def _emit_vector(args, vec):
    mapping = vec.as_dict()
    if args.format == "json":
        _emit(args, json.dumps(mapping, indent=2))
    else:
        lines = ["state,value"] + [f"{k},{v}" for k, v in mapping.items()]
        _emit(args, "\n".join(lines))


def cmd_spectrum(args) -> int:
    rates = _load_config(args)
    if args.space == "perm":
        catalog = eigen_catalog_perm(rates)
    elif args.space == "word":
        catalog = eigen_catalog_word(rates)
    else:
        catalog = eigen_catalog_flags(rates, args.p)
    rows = [
        {
            "label": list(e.label),
            "value": format_rational(e.value),
            "multiplicity": e.multiplicity,
        }
        for e in catalog
    ]
    failed = False
    payload = {"catalog": rows}
    if args.verify:
        op = _build_operator(args, rates)
        report = verify_multiplicities(op, catalog)
        annihilates = verify_annihilation(op, catalog)
        payload["verification"] = report.as_json()
        payload["verification"]["annihilation"] = annihilates
        failed = not (report.all_pass and annihilates)
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=2))
    else:
        lines = ["label,value,multiplicity"]
        for r in rows:
            label = " ".join(str(v) for v in r["label"])
            lines.append(f"{label},{r['value']},{r['multiplicity']}")
        if args.verify:
            lines.append(f"all_pass,{str(not failed).lower()},")
        _emit(args, "\n".join(lines))
    return 1 if failed else 0


def cmd_lump_check(args) -> int:
    if args.p is not None and not is_prime(args.p):
        raise ConfigError(f"--p {args.p} is not prime")
    results = {}
    if args.p is not None:
        if args.n is None:
            raise ConfigError("flag diagrams require --n")
        rates = (
            generic_perm_rates(args.n, seed=args.seed, p=args.p)
            if args.rates is None
            else PermRates(Fraction(args.p), _parse_rates(args.rates))
        )
        for diagram in ("flags-perms-proj", "flags-perms-incl"):
            results[diagram] = check_commuting(diagram, rates, p=args.p)
    if args.m is not None:
        m = _parse_composition(args.m)
        if args.q is None:
            raise ConfigError("word diagrams require --q")
        q = parse_rational(args.q)
        word_rates = (
            generic_word_rates(m, seed=args.seed, q=q)
            if args.rates is None
            else WordRates(q, _parse_rates(args.rates), m)
        )
        rates = map_rates_word_to_perm(word_rates)
        for diagram in ("perms-words-proj", "perms-words-incl"):
            results[diagram] = check_commuting(diagram, rates, m=m)
    if not results:
        raise ConfigError("nothing to check: give --p (flag diagrams) and/or --m (word diagrams)")
    _emit(args, json.dumps(results, indent=2))
    return 0 if all(results.values()) else 1


def cmd_verify(args) -> int:
    p_list = tuple(int(v) for v in args.p.split(",")) if args.p else (2, 3)
    for p in p_list:
        if not is_prime(p):
            raise ConfigError(f"--p entry {p} is not prime")
    checks = suites.run_suite(args.suite, n_max=args.n_max, p_list=p_list, seed=args.seed)
    width = max(len(name) for name, _ in checks)
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}")
    passed = sum(1 for _, ok in checks if ok)
    print(f"{passed}/{len(checks)} checks passed")
    return 0 if passed == len(checks) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qtsetlin",
        description="Exact q-Tsetlin library chains on permutations, words and flags.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_space=True):
        if with_space:
            sp.add_argument("--space", choices=("perm", "word", "flag"), required=True)
        sp.add_argument("--n", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--q")
        sp.add_argument("--rates", help="comma-separated rationals, e.g. 1/2,1/3,1/6")
        sp.add_argument("--m", help="composition for the word space, e.g. 1,2")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("matrix", help="emit a transition matrix")
    add_common(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("stationary", help="emit a stationary distribution")
    add_common(sp)
    sp.add_argument(
        "--method",
        choices=("formula", "oracle", "semigroup", "all"),
        default="formula",
    )
    sp.set_defaults(func=cmd_stationary)

    sp = sub.add_parser("spectrum", help="emit the eigenvalue catalog")
    add_common(sp)
    sp.add_argument("--verify", action="store_true", help="check multiplicities and annihilation")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("lump-check", help="verify the commuting diagrams")
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q")
    sp.add_argument("--m")
    sp.add_argument("--rates")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_lump_check)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--suite", default="all", choices=suites.SUITES)
    sp.add_argument("--n-max", type=int, default=3, dest="n_max")
    sp.add_argument("--p", help="comma-separated primes, default 2,3")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
