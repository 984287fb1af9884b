"""Batch command-line driver.

Exit codes: 0 all checks and assertions pass, 1 check or assertion
failure, 2 usage or parse error. `--porcelain` emits one stable line
per declaration: `OK|ERR|ASSERT-FAIL <name> <detail>`.
"""

from __future__ import annotations

import argparse
import os
import sys

from .corpus import load_corpus
from .erasure import erase
from .normalize import Fuel, FuelExhausted, conv, is_identity, normalize
from .parser import ParseError, ResolveError, parse_files
from .printer import print_pure
from .syntax import KernelError, Signature
from .typecheck import CheckReport, check_signature

_DEFAULT_FUEL = 100_000


def _fuel(args) -> Fuel:
    if args.fuel is not None:
        return Fuel(args.fuel)
    env = os.environ.get("CEDLITE_FUEL")
    if env:
        try:
            return Fuel(int(env))
        except ValueError:
            raise SystemExit(2)
    return Fuel(_DEFAULT_FUEL)


def _render_report(report: CheckReport, porcelain: bool, ascii_only: bool,
                   out) -> None:
    for d in report.decls:
        failed_asserts = [a for a in d.assertions if not a.ok]
        if porcelain:
            if d.status == "type error":
                print(f"ERR {d.name} {_oneline(d.error)}", file=out)
            elif failed_asserts:
                print(f"ASSERT-FAIL {d.name} "
                      f"{_oneline(failed_asserts[0].description)}", file=out)
            else:
                print(f"OK {d.name}", file=out)
            continue
        if d.status == "type error":
            print(f"error  {d.name}: {d.error}", file=out)
        else:
            line = f"ok     {d.name} : {d.classifier}"
            if d.status == "assertion failure":
                line = f"assert-fail {d.name} : {d.classifier}"
            if d.steps_used:
                line += f"  (fuel {d.steps_used})"
            print(line, file=out)
            if d.erasure_nf is not None:
                print(f"       erasure: {d.erasure_nf}", file=out)
        for w in d.warnings:
            print(f"       warning: {w}", file=out)
        for a in d.assertions:
            mark = "ok" if a.ok else "FAIL"
            detail = f" ({a.detail})" if a.detail and not a.ok else ""
            print(f"       assert {a.description}: {mark}{detail}", file=out)


def _oneline(s: str | None) -> str:
    return " ".join((s or "").split())


def _split_files_names(args: list[str], n_names: int) -> tuple[list, list]:
    if len(args) <= n_names:
        raise SystemExit(2)
    return args[:-n_names], args[-n_names:]


def _load(files) -> Signature:
    return parse_files(files)


def _find_term(sig: Signature, name: str):
    decl = sig.lookup(name)
    if decl is None:
        print(f"unknown name {name}", file=sys.stderr)
        raise SystemExit(2)
    if decl.level != "term":
        print(f"{name} is a type-level definition and has no erasure",
              file=sys.stderr)
        raise SystemExit(2)
    return decl


def cmd_check(args) -> int:
    sig = Signature()
    if args.bundled_corpus:
        sig = load_corpus()
    else:
        parse_files(args.args, sig=sig)
    report = check_signature(sig, _fuel(args), ascii_only=args.ascii)
    _render_report(report, args.porcelain, args.ascii, sys.stdout)
    return 0 if report.ok else 1


def cmd_erase(args) -> int:
    files, [name] = _split_files_names(args.args, 1)
    decl = _find_term(_load(files), name)
    print(print_pure(erase(decl.body), ascii_only=args.ascii))
    return 0


def cmd_norm(args) -> int:
    files, [name] = _split_files_names(args.args, 1)
    sig = _load(files)
    decl = _find_term(sig, name)
    nf = normalize(erase(decl.body), sig, _fuel(args))
    print(print_pure(nf.term, ascii_only=args.ascii))
    return 0


def cmd_assert_id(args) -> int:
    files, [name] = _split_files_names(args.args, 1)
    sig = _load(files)
    decl = _find_term(sig, name)
    verdict = is_identity(erase(decl.body), sig, _fuel(args))
    print(f"identity: {'yes' if verdict else 'no'}")
    return 0 if verdict else 1


def cmd_eq(args) -> int:
    files, [n1, n2] = _split_files_names(args.args, 2)
    sig = _load(files)
    d1, d2 = _find_term(sig, n1), _find_term(sig, n2)
    verdict = conv(erase(d1.body), erase(d2.body), sig, _fuel(args))
    print(f"convertible: {'yes' if verdict else 'no'}")
    return 0 if verdict else 1


def main(argv: list[str] | None = None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=None,
                        help=f"reduction step budget per normalization call "
                             f"(default {_DEFAULT_FUEL}, or CEDLITE_FUEL)")
    common.add_argument("--ascii", action="store_true",
                        help="print ASCII token spellings")
    common.add_argument("--porcelain", action="store_true",
                        help="stable machine-readable output")

    ap = argparse.ArgumentParser(prog="cedlite", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="type-check files and run their assertions")
    p.add_argument("args", nargs="+", metavar="FILE")
    p.set_defaults(fn=cmd_check, bundled_corpus=False)

    p = sub.add_parser("erase", parents=[common],
                       help="print a definition's erasure")
    p.add_argument("args", nargs="+", metavar="FILE... NAME")
    p.set_defaults(fn=cmd_erase)

    p = sub.add_parser("norm", parents=[common],
                       help="print a definition's erasure in normal form")
    p.add_argument("args", nargs="+", metavar="FILE... NAME")
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("assert-id", parents=[common],
                       help="is the definition's erasure the identity?")
    p.add_argument("args", nargs="+", metavar="FILE... NAME")
    p.set_defaults(fn=cmd_assert_id)

    p = sub.add_parser("eq", parents=[common],
                       help="are two definitions' erasures convertible?")
    p.add_argument("args", nargs="+", metavar="FILE... NAME1 NAME2")
    p.set_defaults(fn=cmd_eq)

    p = sub.add_parser("corpus", parents=[common],
                       help="check the bundled corpus")
    p.set_defaults(fn=cmd_check, bundled_corpus=True, args=[])

    ns = ap.parse_args(argv)
    try:
        return ns.fn(ns)
    except SystemExit as e:
        return int(e.code or 0)
    except (ParseError, ResolveError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except FuelExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except KernelError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
