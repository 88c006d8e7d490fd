"""Command-line entry point.

Exit status: 0 success, 1 a verification came out false, 2 usage or parse
error, 3 capacity or degeneracy.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from . import acceptance
from .ansatz import verify_decrease, verify_gma, verify_identities
from .asep import PARAM_NAMES, AsepParams, bond_currents, build_chain, current, m_point, stationary_exact, stationary_tableaux
from .bijections import (
    AlternativeTableau,
    PermutationTableau,
    alt_to_perm,
    alt_to_staircase,
    perm_to_alt,
    staircase_to_alt,
)
from .errors import AsepError, CapacityError, DegeneracyError
from .exactmath import format_rational, parse_rational
from .moments import AwParams, backward_params, compare_moments, forward_params
from .tableaux import (
    MAX_ENUM_N,
    StaircaseTableau,
    as_state,
    count_tableaux,
    enumerate_tableaux,
    expected_count,
    gf_by_type,
    gf_total,
    state_str,
    tableau_type,
    weight,
)

log = logging.getLogger("asep_tableaux")

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

_NEG_RATIONAL = re.compile(r"^-\d+/\d+$")
FAMILIES = ("I", "II", "III", "decrease", "identities")


class UsageError(Exception):
    pass


# -- output -----------------------------------------------------------------

class Output:
    def __init__(self, fmt: str, path: str | None):
        self.fmt = fmt
        self.path = path
        self.chunks: list[str] = []

    def emit(self, payload, text: str) -> None:
        if self.fmt == "json":
            self.chunks.append(json.dumps(payload, indent=2))
        else:
            self.chunks.append(text)

    def line(self, payload, text: str) -> None:
        # streaming form: one compact JSON document per line
        self.chunks.append(json.dumps(payload) if self.fmt == "json" else text)

    def flush(self) -> None:
        body = "\n".join(self.chunks)
        if body and not body.endswith("\n"):
            body += "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


# -- helpers ----------------------------------------------------------------

def _asep_params(args) -> AsepParams:
    values = {k: getattr(args, k) for k in PARAM_NAMES}
    missing = [k for k in PARAM_NAMES[:4] if values[k] is None]
    if missing:
        raise UsageError(f"missing parameters: {', '.join('--' + k for k in missing)}")
    return AsepParams(**{k: parse_rational(v) for k, v in values.items() if v is not None})


def _check_n(n: int | None, cap: int = MAX_ENUM_N) -> None:
    if n is None:
        raise UsageError("missing size n")
    if n < 1 or n > cap:
        raise CapacityError(f"n must be between 1 and {cap}")


def _fr(x: Fraction) -> str:
    return format_rational(x)


# -- commands ---------------------------------------------------------------

def cmd_count(args, out: Output) -> int:
    _check_n(args.n)
    got = count_tableaux(args.n)
    want = expected_count(args.n)
    out.emit({"n": args.n, "count": got, "expected": want, "verified": got == want}, str(got))
    return EXIT_OK if got == want else EXIT_FALSE


def cmd_enumerate(args, out: Output) -> int:
    _check_n(args.n)
    state = as_state(args.type) if args.type else None
    for i, t in enumerate(enumerate_tableaux(args.n, state)):
        if args.limit is not None and i >= args.limit:
            break
        payload = t.to_json()
        payload["type"] = state_str(tableau_type(t))
        if args.weights:
            payload["weight"] = list(weight(t))
        text = t.to_text() + "\n"
        out.line(payload, text)
    return EXIT_OK


def cmd_gf(args, out: Output) -> int:
    keep_u = not args.u1
    _check_n(args.n, 10)
    if args.method == "enumerate" or (args.method == "auto" and args.n <= 5):
        _check_n(args.n)
    if args.type:
        p = gf_by_type(args.n, args.type, keep_u=keep_u, method=args.method)
    else:
        p = gf_total(args.n, keep_u=keep_u, method=args.method, workers=args.threads)
    payload = {"n": args.n, "type": args.type, "keep_u": keep_u, "terms": len(p), "polynomial": p.to_text()}
    out.emit(payload, p.to_text())
    return EXIT_OK


def cmd_stationary(args, out: Output) -> int:
    _check_n(args.n, 10)
    params = _asep_params(args)
    tab = stationary_tableaux(args.n, params, method=args.method)
    exact = stationary_exact(build_chain(args.n, params))
    equal = tab.probs == exact.probs
    verdict = "equal" if equal else "differ"
    payload = {
        "n": args.n,
        "params": params.to_json(),
        "tableaux": tab.to_json(),
        "exact": exact.to_json(),
        "verdict": verdict,
    }
    lines = [f"{state_str(s)} {_fr(tab.probs[s])} {_fr(exact.probs[s])}" for s in sorted(tab.probs)]
    lines.append(f"verdict: {verdict}")
    out.emit(payload, "\n".join(lines))
    return EXIT_OK if equal else EXIT_FALSE


def cmd_physical(args, out: Output) -> int:
    _check_n(args.n, 10)
    params = _asep_params(args)
    J = current(args.n, params, method=args.method)
    payload = {"n": args.n, "params": params.to_json(), "current": _fr(J)}
    lines = [f"current: {_fr(J)}"]
    status = EXIT_OK
    if args.n <= MAX_ENUM_N and params.in_unit_cube():
        bonds = bond_currents(stationary_exact(build_chain(args.n, params)), params)
        payload["bond_currents"] = [_fr(x) for x in bonds]
        payload["bonds_agree"] = all(x == J for x in bonds)
        lines.append(f"bond currents: {' '.join(_fr(x) for x in bonds)}")
        if not payload["bonds_agree"]:
            status = EXIT_FALSE
    if args.points:
        try:
            pos = [int(x) for x in args.points.split(",") if x.strip()]
        except ValueError:
            raise UsageError("--points must be a comma-separated list of site numbers") from None
        val = m_point(args.n, pos, params, method=args.method)
        payload["points"] = pos
        payload["m_point"] = _fr(val)
        lines.append(f"<{' '.join(f'tau_{p}' for p in pos)}>: {_fr(val)}")
    out.emit(payload, "\n".join(lines))
    return status


def cmd_verify(args, out: Output) -> int:
    fams = [f.strip() for f in args.families.split(",") if f.strip()]
    bad = [f for f in fams if f not in FAMILIES]
    if bad:
        raise UsageError(f"unknown families: {', '.join(bad)}")
    if not 0 <= args.max_len <= 5:
        raise CapacityError("--max-len must be between 0 and 5")
    if not 0 <= args.max_index <= 8:
        raise CapacityError("--max-index must be between 0 and 8")
    reports = []
    gma = [f for f in fams if f in ("I", "II", "III")]
    if gma:
        reports += verify_gma(args.max_len, gma)
    if "decrease" in fams:
        reports.append(verify_decrease(args.max_len, args.max_index))
    if "identities" in fams:
        reports += verify_identities(args.max_len)
    ok = all(r["status"] == "ok" for r in reports)
    lines = []
    for r in reports:
        if r["status"] == "ok":
            lines.append(f"{r['family']}: ok")
        else:
            lines.append(f"{r['family']}: FAIL " + json.dumps({k: v for k, v in r.items() if k != "family"}))
    out.emit({"status": "ok" if ok else "fail", "reports": reports}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FALSE


def cmd_moments(args, out: Output) -> int:
    if args.u is not None and parse_rational(args.u) != 1:
        raise UsageError("moments are defined at u = 1 only")
    missing = [k for k in ("a", "b", "c", "d", "q") if getattr(args, k) is None]
    if missing:
        raise UsageError(f"missing parameters: {', '.join('--' + k for k in missing)}")
    if not 0 <= args.K <= 8:
        raise CapacityError("--K must be between 0 and 8")
    aw = AwParams(*(parse_rational(getattr(args, k)) for k in ("a", "b", "c", "d", "q")))
    report = compare_moments(args.K, aw, bridge_max=min(args.K, 4))
    alpha, beta, gamma, delta = forward_params(aw)
    report["asep_params"] = {"alpha": _fr(alpha), "beta": _fr(beta), "gamma": _fr(gamma), "delta": _fr(delta)}
    back = backward_params(alpha, beta, gamma, delta, aw.q)
    report["roundtrip"] = back.exact and (back.a, back.b, back.c, back.d) == (aw.a, aw.b, aw.c, aw.d)
    verdict = "equal" if report["equal"] and report["bridge"] else "differ"
    report["verdict"] = verdict
    lines = [
        "staircase: " + " ".join(report["staircase"]),
        "motzkin:   " + " ".join(report["motzkin"]),
        f"verdict: {verdict}",
    ]
    out.emit(report, "\n".join(lines))
    return EXIT_OK if verdict == "equal" else EXIT_FALSE


_READERS = {
    "staircase": StaircaseTableau.from_text,
    "alt": AlternativeTableau.from_text,
    "perm": PermutationTableau.from_text,
}


def _to_alt(kind: str, obj):
    if kind == "staircase":
        return staircase_to_alt(obj)
    if kind == "perm":
        return perm_to_alt(obj)
    return obj


def _from_alt(kind: str, at):
    if kind == "staircase":
        return alt_to_staircase(at)
    if kind == "perm":
        return alt_to_perm(at)
    return at


def cmd_biject(args, out: Output) -> int:
    text = open(args.input, encoding="utf-8").read() if args.input else sys.stdin.read()
    src = _READERS[args.source](text)
    result = _from_alt(args.target, _to_alt(args.source, src))
    payload = {"from": args.source, "to": args.target, "result": result.to_json()}
    out.emit(payload, result.to_text())
    return EXIT_OK


def cmd_selftest(args, out: Output) -> int:
    only = None
    if args.only:
        try:
            only = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
        if any(i < 1 or i > len(acceptance.CRITERIA) for i in only):
            raise UsageError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    ok = acceptance.run_all(out=sys.stderr if args.format == "json" else sys.stdout, only=only)
    out.emit({"status": "ok" if ok else "fail"}, "selftest: " + ("ok" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FALSE


# -- parser -----------------------------------------------------------------

def _add_asep_params(p: argparse.ArgumentParser) -> None:
    for name in PARAM_NAMES:
        p.add_argument(f"--{name}", metavar="P/Q", help="rational parameter" + (" (default 1)" if name in ("q", "u") else ""))
    p.add_argument("--method", choices=("auto", "enumerate", "transfer"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--threads", type=int, default=None, help="worker processes for enumeration")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="asep-tableaux", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("count", parents=[common], help="count staircase tableaux of size n")
    p.add_argument("n", type=int, nargs="?")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="stream tableaux of size n")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--type", help="restrict to one type, e.g. 101")
    p.add_argument("--limit", type=int)
    p.add_argument("--weights", action="store_true", help="include weight exponents")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gf", parents=[common], help="generating function Z_n or of one type")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--type")
    p.add_argument("--u1", action="store_true", help="set u = 1")
    p.add_argument("--method", choices=("auto", "enumerate", "transfer"), default="auto")
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("stationary", parents=[common], help="stationary distribution by both routes")
    p.add_argument("n", type=int, nargs="?")
    _add_asep_params(p)
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("physical", parents=[common], help="current and correlation functions")
    p.add_argument("n", type=int, nargs="?")
    _add_asep_params(p)
    p.add_argument("--points", help="comma-separated sites for <tau_i ...>")
    p.set_defaults(func=cmd_physical)

    p = sub.add_parser("verify", parents=[common], help="symbolic checks of the transfer-matrix identities")
    p.add_argument("--families", default="I,II,III", help="any of " + ",".join(FAMILIES))
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--max-index", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("moments", parents=[common], help="moments by tableaux and by Motzkin paths")
    p.add_argument("--K", type=int, default=6)
    for name in ("a", "b", "c", "d", "q", "u"):
        p.add_argument(f"--{name}", metavar="P/Q")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("biject", parents=[common], help="convert between tableau families (reads stdin)")
    p.add_argument("--from", dest="source", choices=tuple(_READERS), required=True)
    p.add_argument("--to", dest="target", choices=tuple(_READERS), required=True)
    p.add_argument("--input", help="read from this file instead of stdin")
    p.set_defaults(func=cmd_biject)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--c -1/5" would otherwise be read as an unknown option
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEG_RATIONAL.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    flat = {k: v for k, v in cfg.items() if k != "params"}
    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise UsageError("config 'params' must be an object")
    flat.update({k: str(v) for k, v in params.items()})
    return flat


def _apply_config(args, cfg: dict) -> None:
    """Fill options the command line left unset; the command line wins."""
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if attr == "command":
            continue
        if attr == "from":
            attr = "source"
        elif attr == "to":
            attr = "target"
        if not hasattr(args, attr):
            raise UsageError(f"config key {key!r} does not apply to {args.command}")
        if getattr(args, attr) is None:
            setattr(args, attr, value)


def main(argv: list[str] | None = None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _load_config(args.config) if args.config else {}
        if args.command is None:
            if "command" not in cfg:
                parser.print_usage(sys.stderr)
                return EXIT_USAGE
            args = parser.parse_args([cfg["command"], *argv])
        elif cfg.get("command", args.command) != args.command:
            raise UsageError(f"config is for {cfg['command']!r}, not {args.command!r}")
        _apply_config(args, cfg)
        args.format = args.format or "text"
        args.threads = int(args.threads or 1)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
        out = Output(args.format, args.output)
        status = args.func(args, out)
        out.flush()
        return status
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, DegeneracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (AsepError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
