# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Command line front end.

    lincodeprover prove --params "[1988,12,992]" --emit-cert cert.json
    lincodeprover verify cert.json
    lincodeprover weights --n 324 --k 10 --d 160

Exit codes: 0 the claim was established or verified, 1 undecided (or failed
verification), 2 error.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace

from LinCodeProver.boundsTables import CodeParams, descent_chain, griesmer_dmax, griesmer_length, load_bounds, \
    load_fixture, residual_params
from LinCodeProver.exactCombinatorics import get_context, krawtchouk
from LinCodeProver.feasibilitySearch import SearchConfig, build_problem, check_distribution, search
from LinCodeProver.proofCertificate import ProofCertificate
from LinCodeProver.prover import Prover, ProverConfig, implied_bound, verify
from LinCodeProver.smallCodes import dual_generator, load_generator, minimum_distance, weight_distribution
from LinCodeProver.spectra import macwilliams_dual, read_spectrum
from LinCodeProver.utils import BudgetExhausted, FormatError, ProverError, _fractionToText, configure_logging
from LinCodeProver.z4Gray import Z4Word, btl_table_verdicts, gray_map, hamming_weight, kerdock_params, lee_weight

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_UNDECIDED, EXIT_ERROR = 0, 1, 2


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", help="bounds CSV/JSON file (default: packaged fixture)")
    common.add_argument("--budget", type=float, help="time budget of the feasibility search in seconds")
    common.add_argument("--recurse", type=int, default=3, help="sub-lemma recursion depth")
    common.add_argument("--emit-cert", dest="emit_cert", help="write the certificate JSON to this file")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("-q", "--quiet", action="store_true")
    return common


def _add_params(parser: argparse.ArgumentParser, weight: bool = False) -> None:
    parser.add_argument("--params", help="parameters as [n,k,d]")
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--d", type=int)
    if weight:
        parser.add_argument("--w", type=int, required=True, help="weight of the first codeword")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lincodeprover",
                                     description="Non-existence proofs for binary linear codes")
    common = _common_parser()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", parents=[common], help="prove that no [n,k,d] code exists")
    _add_params(p)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="replay a certificate")
    p.add_argument("certificate")

    p = sub.add_parser("weights", parents=[common], help="possible weights with the rule for each exclusion")
    _add_params(p)
    p.add_argument("--possible-only", action="store_true")

    p = sub.add_parser("feasible", parents=[common], help="integer feasibility of the MacWilliams system")
    _add_params(p)
    p.add_argument("--weights", help="comma separated candidate weights")
    p.add_argument("--a1dual", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--witness-check", dest="witness_check", help="check a spectrum file instead of searching")

    p = sub.add_parser("dual", parents=[common], help="MacWilliams transform of a spectrum file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--spectrum", required=True, help="file of weight,count lines")

    p = sub.add_parser("chain", parents=[common], help="residual descent")
    _add_params(p, weight=True)

    p = sub.add_parser("griesmer", parents=[common], help="Griesmer length, or dmax when --n is given")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)

    p = sub.add_parser("residual", parents=[common], help="residual code parameters")
    _add_params(p, weight=True)

    p = sub.add_parser("krawtchouk", parents=[common], help="K_j(i) for length n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--q", type=int, default=2)

    p = sub.add_parser("gray", parents=[common], help="Gray image of a Z4 word")
    p.add_argument("--word", required=True, help="symbols, e.g. 1,2,3")

    p = sub.add_parser("kerdock", parents=[common], help="extended dualized Kerdock code parameters")
    p.add_argument("--k", type=int, required=True)

    sub.add_parser("btl", parents=[common], help="better-than-linear reference table")

    p = sub.add_parser("enumerate", parents=[common], help="spectrum and dual spectrum of a small code")
    p.add_argument("--generator", required=True, help="file with one 0/1 row per line")
    return parser


def _params(args) -> CodeParams:
    if args.params:
        return CodeParams.parse(args.params).validate()
    if None in (args.n, args.k, args.d):
        raise FormatError("give --params or all of --n, --k, --d")
    return CodeParams(args.n, args.k, args.d).validate()


def _table(args):
    return load_bounds(args.table) if args.table else load_fixture()


def _config(args) -> ProverConfig:
    search_cfg = SearchConfig(time_budget=args.budget if args.budget is not None else ProverConfig().search.time_budget,
                              workers=getattr(args, "workers", 1))
    return ProverConfig(recurse=args.recurse, search=search_cfg)


def _cmd_prove(args) -> int:
    table = _table(args)
    cert = Prover(table, _config(args)).prove(_params(args))
    print(cert.summary())
    if args.emit_cert:
        cert.write(args.emit_cert)
    bound = implied_bound(cert)
    if bound is None:
        return EXIT_UNDECIDED
    print(f"every binary linear [{cert.target.n},{cert.target.k}] code has minimum distance <= {bound}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    cert = ProofCertificate.load(args.certificate)
    result = verify(cert, _table(args))
    print(result)
    return EXIT_OK if result else EXIT_UNDECIDED


def _cmd_weights(args) -> int:
    p = _params(args)
    cfg = replace(ProverConfig(), recurse=args.recurse)
    report = Prover(_table(args), cfg).candidate_report(p)
    for w, verdict in report.verdicts.items():
        if verdict.excluded and args.possible_only:
            continue
        print(f"{w} {verdict.status}" + (f" [{verdict.rule}]" if verdict.rule else ""))
    print(f"possible: {list(report.possible)}")
    return EXIT_OK


def _cmd_feasible(args) -> int:
    p = _params(args)
    if args.witness_check:
        with open(args.witness_check, encoding="utf-8") as handle:
            spectrum = read_spectrum(handle, p.n)
        result = check_distribution(spectrum, p.k)
        print("pass" if result else f"fail: {result.condition} ({result.detail})")
        return EXIT_OK if result else EXIT_UNDECIDED
    if not args.weights:
        raise FormatError("--weights is required")
    try:
        weights = [int(w) for w in args.weights.split(",")]
    except ValueError as err:
        raise FormatError(f"cannot read weights {args.weights!r}") from err
    problem = build_problem(p, weights, args.a1dual)
    try:
        verdict = search(problem, _config(args).search)
    except BudgetExhausted as err:
        print(f"undecided, budget exhausted: {err} {err.counters}")
        return EXIT_UNDECIDED
    print(verdict.summary())
    if args.emit_cert:
        data = {"problem": problem.to_dict(), "status": verdict.status, "record": verdict.record,
                "witness": None if verdict.witness is None else {str(w): c for w, c in verdict.witness.items()}}
        with open(args.emit_cert, "w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2, sort_keys=True)
    return EXIT_OK


def _cmd_dual(args) -> int:
    with open(args.spectrum, encoding="utf-8") as handle:
        spectrum = read_spectrum(handle, args.n)
    dual = macwilliams_dual(spectrum, args.k)
    for j, value in dual.items():
        flags = ("" if value.denominator == 1 else " non-integral") + ("" if value >= 0 else " negative")
        print(f"{j},{_fractionToText(value)}{flags}")
    return EXIT_OK


def _cmd_chain(args) -> int:
    print(descent_chain(_params(args), args.w, _table(args)))
    return EXIT_OK


def _cmd_griesmer(args) -> int:
    if args.n is not None:
        print(griesmer_dmax(args.n, args.k))
    elif args.d is not None:
        print(griesmer_length(args.k, args.d))
    else:
        raise FormatError("give --d for the Griesmer length or --n for dmax")
    return EXIT_OK


def _cmd_residual(args) -> int:
    print(residual_params(_params(args), args.w))
    return EXIT_OK


def _cmd_krawtchouk(args) -> int:
    print(krawtchouk(get_context(args.n, args.q), args.j, args.i))
    return EXIT_OK


def _cmd_gray(args) -> int:
    word = Z4Word.parse(args.word)
    image = gray_map(word)
    print("".join(str(bit) for bit in image))
    print(f"Lee weight {lee_weight(word)}, Hamming weight of the image {hamming_weight(image)}")
    return EXIT_OK


def _cmd_kerdock(args) -> int:
    params = kerdock_params(args.k)
    print(f"Z4 code {params}, Gray image {params.gray}")
    return EXIT_OK


def _cmd_btl(args) -> int:
    for row, verdict in btl_table_verdicts():
        print(f"{str(row.record):<28} {row.bound_text():<8} {verdict:<8} {row.code}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    with open(args.generator, encoding="utf-8") as handle:
        G = load_generator(handle)
    spectrum = weight_distribution(G)
    dual = weight_distribution(dual_generator(G))
    print(f"n={G.shape[1]} minimum distance {minimum_distance(G)}")
    print(f"spectrum {spectrum.as_dict()}")
    print(f"dual spectrum {dual.as_dict()}")
    return EXIT_OK


_COMMANDS = {"prove": _cmd_prove, "verify": _cmd_verify, "weights": _cmd_weights, "feasible": _cmd_feasible,
             "dual": _cmd_dual, "chain": _cmd_chain, "griesmer": _cmd_griesmer, "residual": _cmd_residual,
             "krawtchouk": _cmd_krawtchouk, "gray": _cmd_gray, "kerdock": _cmd_kerdock, "btl": _cmd_btl,
             "enumerate": _cmd_enumerate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(-1 if args.quiet else args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except ProverError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
