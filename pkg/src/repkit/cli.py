"""Command line front end.

Three subcommands, all deterministic given their inputs and the seed:

``repkit check REP.rep FORMULAS.fml``
    Evaluate each formula against the representation; one verdict line per
    formula.  Exit 0 when everything holds, 1 when something fails, 2 on a
    malformed input.

``repkit val REP.rep "FORMULA" [-n N] [-m M]``
    Print the formula's value set: a header line
    ``space n=<n> m=<m> |V|=<v> |G|=<g>`` and the subset as lowercase hex
    (least-significant bit = point 0).

``repkit verify [CATALOG_DIR]``
    Run every verification suite against a catalog directory (default: the
    bundled catalog).  Exit 0 iff no check fails.

The seed comes from ``--seed``, falling back to the ``REPKIT_SEED``
environment variable, then 0.  ``--mode permissive`` downgrades guard trips
during ``verify`` from an abort (exit 2) to a skip note in the report.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from repkit.algebra import DEFAULT_SUBGROUP_GUARD
from repkit.classes import (
    Report,
    SuiteConfig,
    action_type_law_suite,
    frozen_equivalence_suite,
    galois_law_suite,
    quantifier_axiom_suite,
    run_all_suites,
    val_homomorphism_suite,
)
from repkit.errors import RepkitError
from repkit.formulas import parse
from repkit.repfile import catalog_dir, load_catalog, load_formulas, load_representation
from repkit.semantics import DEFAULT_MAX_POINTS, val


@dataclass(frozen=True)
class RunConfig:
    """Plumbing shared by all subcommands."""

    seed: int = 0
    max_points: int = DEFAULT_MAX_POINTS
    max_subgroup_order: int = DEFAULT_SUBGROUP_GUARD
    mode: str = "strict"
    out: str | None = None


def _default_seed() -> int:
    env = os.environ.get("REPKIT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"REPKIT_SEED must be an integer, not {env!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=None,
                     help="suite seed (default: $REPKIT_SEED or 0)")
    sub.add_argument("--guard-points", type=int, default=DEFAULT_MAX_POINTS,
                     metavar="N", help="largest hom-space, in points")
    sub.add_argument("--guard-subgroup", type=int, default=DEFAULT_SUBGROUP_GUARD,
                     metavar="N", help="largest group whose subgroups are enumerated")
    sub.add_argument("--mode", choices=("strict", "permissive"), default="strict",
                     help="strict aborts on guard trips; permissive skips them")
    sub.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def _config(args: argparse.Namespace) -> RunConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return RunConfig(seed=seed, max_points=args.guard_points,
                     max_subgroup_order=args.guard_subgroup,
                     mode=args.mode, out=args.out)


def _emit(text: str, config: RunConfig) -> None:
    if config.out:
        with open(config.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args: argparse.Namespace) -> int:
    config = _config(args)
    rep = load_representation(args.rep)
    pool = load_formulas(args.formulas, rep.module.ring.modulus)
    lines = []
    failed = False
    for name, formula in pool:
        vs = val(formula, rep, max_points=config.max_points)
        if vs.is_full:
            lines.append(f"HOLDS {name}")
        else:
            failed = True
            gap = ~vs
            witness = (gap.bits & -gap.bits).bit_length() - 1
            lines.append(f"FAILS {name} witness={witness}")
    _emit("\n".join(lines) + "\n" if lines else "", config)
    return 1 if failed else 0


def cmd_val(args: argparse.Namespace) -> int:
    config = _config(args)
    rep = load_representation(args.rep)
    formula = parse(args.formula, rep.module.ring.modulus)
    vs = val(formula, rep, args.n, args.m, max_points=config.max_points)
    _emit(vs.dump(), config)
    return 0


_SUITES = {
    "laws": action_type_law_suite,
    "quantifiers": quantifier_axiom_suite,
    "val-homomorphism": val_homomorphism_suite,
    "frozen": frozen_equivalence_suite,
    "galois": galois_law_suite,
}


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    catalog = load_catalog(args.catalog if args.catalog else catalog_dir())
    suite_config = SuiteConfig(
        seed=config.seed,
        formulas=args.formulas,
        fuzz=args.fuzz,
        bitset_pairs=args.bitsets,
        frozen_triples=args.frozen,
        galois_rounds=args.galois,
        depth=args.depth,
        max_points=config.max_points,
        max_subgroup_order=config.max_subgroup_order,
        fault=args.inject_fault,
    )
    if config.mode == "strict":
        report = run_all_suites(catalog, suite_config)
        text = report.text()
    else:
        report = Report()
        notes = []
        for name, suite in _SUITES.items():
            try:
                report.extend(suite(catalog, suite_config))
            except RepkitError as exc:
                notes.append(f"# skipped {name}: {exc}")
        text = report.text() + ("\n".join(notes) + "\n" if notes else "")
    _emit(text, config)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="repkit",
        description="Evaluate formulas over finite group representations "
                    "and verify the structural laws of their classes.")
    commands = parser.add_subparsers(dest="command", required=True)

    p_check = commands.add_parser("check", help="evaluate a formula batch against one representation")
    p_check.add_argument("rep", help="representation file (.rep)")
    p_check.add_argument("formulas", help="formula batch (.fml)")
    _add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_val = commands.add_parser("val", help="print a formula's value set")
    p_val.add_argument("rep", help="representation file (.rep)")
    p_val.add_argument("formula", help="formula text")
    p_val.add_argument("-n", type=int, default=None, help="x-dimension (default: from the formula)")
    p_val.add_argument("-m", type=int, default=None, help="y-dimension (default: from the formula)")
    _add_common(p_val)
    p_val.set_defaults(func=cmd_val)

    p_verify = commands.add_parser("verify", help="run the verification suites over a catalog")
    p_verify.add_argument("catalog", nargs="?", default=None,
                          help="catalog directory of .rep files (default: bundled)")
    p_verify.add_argument("--formulas", type=int, default=200, metavar="N",
                          help="law-suite sample size per representation")
    p_verify.add_argument("--fuzz", type=int, default=500, metavar="N",
                          help="value-homomorphism sample size per representation")
    p_verify.add_argument("--bitsets", type=int, default=1000, metavar="N",
                          help="quantifier-axiom bitset pairs")
    p_verify.add_argument("--frozen", type=int, default=500, metavar="N",
                          help="frozen-evaluation triples")
    p_verify.add_argument("--galois", type=int, default=50, metavar="N",
                          help="Galois-law rounds")
    p_verify.add_argument("--depth", type=int, default=4, metavar="D",
                          help="random formula depth bound")
    p_verify.add_argument("--inject-fault", metavar="NAME", default=None,
                          help="test-only: run with a named deliberate defect")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RepkitError, OSError, ValueError) as exc:
        print(f"repkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
