"""Command-line interface.

Exit codes: 0 success, 1 validation/physics error (one machine-readable
line on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from .analytic import make_state
from .catalog import resolve_molecule
from .errors import PdmorseError
from .model import MassModel, parse_ordering, reduce
from .reports import (build_spectrum_report, oracle_compare_rows, oracle_csv,
                      spectrum_csv, spectrum_json, table1_report,
                      wavefunction_csv)
from .wavefn import SignConvention

_CONVENTIONS = {"printed": SignConvention.PRINTED,
                "normalizable": SignConvention.NORMALIZABLE}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmorse",
        description="Bound states of a position-dependent-mass generalized Morse well")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="enumerate the analytic spectrum")
    sp.add_argument("--molecule", required=True, help="built-in name or config path")
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--ordering", default="weyl", help="weyl | likuhn | a,alpha,gamma")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--no-provenance", action="store_true")
    sp.add_argument("--output", default=None, help="write here instead of stdout")

    tp = sub.add_parser("table1", help="reproduce the built-in reference energies")
    tp.add_argument("--tolerance", type=float, default=0.005, help="gate in eV")

    wp = sub.add_parser("wavefunction", help="sample one eigenfunction")
    wp.add_argument("--molecule", required=True)
    wp.add_argument("--eta", type=float, required=True)
    wp.add_argument("--n", type=int, required=True)
    wp.add_argument("--samples", type=int, default=256)
    wp.add_argument("--ordering", default="weyl")
    wp.add_argument("--convention", choices=tuple(_CONVENTIONS), default="normalizable")
    wp.add_argument("--no-provenance", action="store_true")
    wp.add_argument("--output", default=None)

    op = sub.add_parser("oracle-compare", help="shooting solver vs analytic energies")
    op.add_argument("--molecule", required=True)
    op.add_argument("--eta", type=float, required=True)
    op.add_argument("--ordering", default="weyl")
    op.add_argument("--n-max", type=int, default=2)
    op.add_argument("--grid", type=int, default=8001, help="grid point count")
    op.add_argument("--domain", default=None,
                    help="xmin,xmax in Angstrom (use --domain=-0.7,10 for negative "
                         "xmin); default: run the domain study")
    op.add_argument("--no-provenance", action="store_true")
    op.add_argument("--output", default=None)

    vp = sub.add_parser("validate", help="validate a molecule config file")
    vp.add_argument("config_path")
    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as handle:
            handle.write(text)


def _cmd_spectrum(args) -> int:
    mol = resolve_molecule(args.molecule)
    ordering = parse_ordering(args.ordering)
    report = build_spectrum_report(mol, args.eta, ordering)
    text = (spectrum_csv(report, not args.no_provenance) if args.format == "csv"
            else spectrum_json(report, not args.no_provenance))
    _emit(text, args.output)
    return 0


def _cmd_table1(args) -> int:
    summary = table1_report(tolerance_ev=args.tolerance)
    for cell in summary.cells:
        status = "PASS" if cell.ok else "FAIL"
        print(f"{status} {cell.molecule} eta={cell.eta:g} n={cell.n} "
              f"E={cell.E_eV:+.6f} reference={cell.E_paper_eV:+.3f} "
              f"delta={cell.delta_eV:+.6f}")
    verdict = "PASS" if summary.all_pass else "FAIL"
    print(f"table1 {verdict}: {len(summary.cells) - len(summary.failures)}/"
          f"{len(summary.cells)} cells within {summary.tolerance_eV:g} eV "
          f"(max |delta| = {summary.max_abs_delta:.6f} eV)")
    return 0 if summary.all_pass else 1


def _cmd_wavefunction(args) -> int:
    mol = resolve_molecule(args.molecule)
    ordering = parse_ordering(args.ordering)
    sys_ = reduce(mol, args.eta, ordering)
    state = make_state(sys_, args.n)
    text = wavefunction_csv(mol, sys_, state, args.samples,
                            _CONVENTIONS[args.convention], not args.no_provenance)
    _emit(text, args.output)
    return 0


def _cmd_oracle_compare(args) -> int:
    mol = resolve_molecule(args.molecule)
    ordering = parse_ordering(args.ordering)
    domain = None
    if args.domain is not None:
        try:
            x_min, x_max = (float(part) for part in args.domain.split(","))
        except ValueError as exc:
            raise PdmorseError(f"malformed --domain {args.domain!r}; expected xmin,xmax") from exc
        domain = (x_min, x_max)
    # validates eta range and reality up front
    MassModel.for_molecule(mol, args.eta)
    rows = oracle_compare_rows(mol, args.eta, ordering, args.n_max, args.grid, domain)
    _emit(oracle_csv(rows, not args.no_provenance), args.output)
    return 0


def _cmd_validate(args) -> int:
    from .catalog import load_molecule_config

    mol = load_molecule_config(args.config_path)
    print(f"OK name={mol.name} D_eV={mol.D:g} r0_angstrom={mol.r0:g} "
          f"m0_amu={mol.m0:g} alpha_prime={mol.alpha_prime:g} E0_eV={mol.E0:.9g}")
    return 0


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "table1": _cmd_table1,
    "wavefunction": _cmd_wavefunction,
    "oracle-compare": _cmd_oracle_compare,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _HANDLERS[args.command](args)
    except (PdmorseError, ValueError) as exc:
        print(f"pdmorse-error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
