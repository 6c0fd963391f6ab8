"""wildram command line.

Examples::

    wildram swan --p 2 --f "1/x^3"
    wildram charform --p 2 --f "y/x^2" --format json
    wildram restrict --p 2 --f "y/x^2" --x "t" --y "c + t" --param c=1
    wildram euler --surface p2 --p 2 --f "x*y"
    wildram run job.toml
    wildram --batch a.toml b.toml
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .curves import Curve, restrict_to_curve
from .cycles import SNCSheafData, characteristic_cycle, check_integrality, curve_intersection, total_dimension_divisor
from .errors import InvariantError, ParseError, PreconditionError
from .intersection import MODELS, DivisorClass, SurfaceModel, euler_number, euler_p2
from .ramification import ASCharacter, analyze, char_form, noncharacteristic_curve_test

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCHEMA_VERSION = "1"
COMMANDS = ("swan", "charform", "charcycle", "restrict", "euler", "selftest")
EXIT_CODES = {ParseError: 2, PreconditionError: 3, InvariantError: 4}

log = logging.getLogger("wildram")


# -- job files ---------------------------------------------------------------


def _section(d: dict, name: str) -> dict:
    sec = d.get(name, {})
    if not isinstance(sec, dict):
        raise ParseError(f"[{name}] must be a table")
    return sec


def load_job(path: str) -> dict:
    """Flatten a TOML job file into the keyword form used by ``run``."""
    try:
        d = tomllib.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    job = {"command": d.get("command"), "format": d.get("format", "json")}
    ch, cv, sf = _section(d, "character"), _section(d, "curve"), _section(d, "surface")
    job.update({k: ch[k] for k in ("p", "f", "component", "dim") if k in ch})
    if cv:
        job["x"], job["y"] = cv.get("x"), cv.get("y")
        job["params"] = dict(cv.get("params", {}))
    if sf:
        job["surface"] = sf if "matrix" in sf else sf.get("name", "p2")
        for k in ("R", "rank"):
            if k in sf:
                job[k] = sf[k]
    if job["command"] not in COMMANDS:
        raise ParseError(f"{path}: command must be one of {', '.join(COMMANDS)}")
    return job


def _character(job: dict) -> ASCharacter:
    try:
        p = int(job["p"])
        f = str(job["f"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("a character needs an integer p and an expression f") from None
    return ASCharacter.parse(p, f, str(job.get("component", "D")))


def _surface(spec) -> SurfaceModel:
    if isinstance(spec, dict):
        return SurfaceModel.from_dict(spec)
    key = str(spec).lower()
    if key in MODELS:
        return MODELS[key]
    if key.endswith(".toml"):
        try:
            return SurfaceModel.from_toml(Path(spec).read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {spec}: {exc}") from None
    raise ParseError(f"unknown surface {spec!r}")


# -- commands ----------------------------------------------------------------


def cmd_swan(job):
    return analyze(_character(job)).to_dict()


def cmd_charform(job):
    return char_form(_character(job)).to_dict()


def cmd_charcycle(job):
    ch = _character(job)
    dim = int(job.get("dim") or (1 if "y" not in ch.f.variables else 2))
    data = SNCSheafData.from_reports(dim, [analyze(ch)])
    cyc = characteristic_cycle(data)
    return {
        "cycle": cyc.to_dict(),
        "total_dimension_divisor": total_dimension_divisor(data).to_dict(),
        "integrality": check_integrality(cyc).to_dict(),
    }


def _params(raw) -> dict:
    if isinstance(raw, dict):
        return {str(k): int(v) for k, v in raw.items()}
    out = {}
    for item in raw or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"parameter {item!r} must look like name=value")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise ParseError(f"parameter {name} must be an integer") from None
    return out


def cmd_restrict(job):
    ch = _character(job)
    if not job.get("x") or not job.get("y"):
        raise ParseError("restrict needs curve coordinates x and y")
    curve = Curve.parse(ch.p, job["x"], job["y"], _params(job.get("params")))
    res = restrict_to_curve(ch, curve)
    rep = analyze(ch)
    dt = total_dimension_divisor(SNCSheafData.from_reports(2, [rep]))
    bound = curve_intersection(dt, curve)
    out = {
        "restricted_dimtot": res.dimtot,
        "contact": res.contact,
        "intersection": bound,
        "inequality_holds": res.dimtot <= bound,
        "equality": res.dimtot == bound,
    }
    if rep.wild and res.contact == 1:
        y0 = curve.base_point
        if rep.form.is_degenerate_at(y0):
            out["noncharacteristic"] = None
            out["note"] = "form degenerates at the base point"
        else:
            nc = noncharacteristic_curve_test(rep.form, curve.tangent, y0)
            out["noncharacteristic"] = nc
            out["consistent"] = nc == (res.dimtot == bound)
    return out


def cmd_euler(job):
    surface = job.get("surface", "p2")
    if job.get("R") is not None:
        m = _surface(surface)
        R = job["R"]
        coeffs = [int(c) for c in (R.split(",") if isinstance(R, str) else R)]
        rank = int(job.get("rank", 1))
        return {"surface": m.name, "R": coeffs, "rank": rank, "declared_totally_wild": True,
                "chi_c": euler_number(m, rank, DivisorClass(coeffs), True)}
    if str(surface).lower() != "p2":
        raise PreconditionError("only P2 is supported for an f on A^2; give R explicitly for other surfaces")
    ch = _character(job)
    return euler_p2(ch.p, ch.f).to_dict()


def cmd_selftest(job):
    from .selftest import run_all

    rows = run_all()
    return {
        "rows": [{"name": r.name, "expected": r.expected, "got": r.got, "pass": r.ok} for r in rows],
        "passed": sum(r.ok for r in rows),
        "failed": sum(not r.ok for r in rows),
    }


HANDLERS = {
    "swan": cmd_swan,
    "charform": cmd_charform,
    "charcycle": cmd_charcycle,
    "restrict": cmd_restrict,
    "euler": cmd_euler,
    "selftest": cmd_selftest,
}


def run(job: dict) -> tuple[int, dict]:
    """Execute one job; returns (exit status, report)."""
    command = job.get("command")
    try:
        if command not in HANDLERS:
            raise ParseError(f"unknown command {command!r}")
        result = HANDLERS[command](job)
        status = 0
        if command == "selftest" and result["failed"]:
            status = 1
        report = {"schema_version": SCHEMA_VERSION, "command": command, "status": "ok" if status == 0 else "failed", "result": result}
        return status, report
    except tuple(EXIT_CODES) as exc:
        code = next(c for cls, c in EXIT_CODES.items() if isinstance(exc, cls))
        log.debug("job failed", exc_info=True)
        return code, {"schema_version": SCHEMA_VERSION, "command": command, "status": "error",
                      "error": {"type": type(exc).__name__, "message": str(exc)}}


# -- output ------------------------------------------------------------------


def _text(report: dict) -> str:
    if report["status"] == "error":
        e = report["error"]
        return f"error ({e['type']}): {e['message']}"
    res = report["result"]
    if report["command"] == "selftest":
        lines = [f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}  expected {r['expected']}  got {r['got']}" for r in res["rows"]]
        lines.append(f"{res['passed']} passed, {res['failed']} failed")
        return "\n".join(lines)
    return "\n".join(_flatten(res))


def _flatten(d, prefix=""):
    for k, v in d.items():
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}: {json.dumps(v) if isinstance(v, list) else v}"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    return _text(report)


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wildram", description="Ramification of Artin-Schreier characters in two variables.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--batch", nargs="+", metavar="JOB", help="run several TOML job files concurrently")
    parser.add_argument("--format", choices=("text", "json"), default=None, help="for --batch (default json)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")

    def common(p, character=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--job", help="read the job from a TOML file")
        if character:
            p.add_argument("--p", type=int, help="characteristic")
            p.add_argument("--f", help="defining function, e.g. 'y/x^2'")
            p.add_argument("--component", default="D", help="label of the boundary component")
        return p

    common(sub.add_parser("swan", help="slope, Swan conductor and total dimension"))
    common(sub.add_parser("charform", help="characteristic form"))
    cc = common(sub.add_parser("charcycle", help="characteristic cycle and integrality"))
    cc.add_argument("--dim", type=int, help="dimension of X (default: 1 if f has no y)")
    rs = common(sub.add_parser("restrict", help="compare a curve restriction with (DT, C)"))
    rs.add_argument("--x", help="x(t)")
    rs.add_argument("--y", help="y(t)")
    rs.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="curve constant in F_p")
    eu = common(sub.add_parser("euler", help="Euler characteristic on a surface"))
    eu.add_argument("--surface", default="p2", help="p2, p1xp1 or a TOML model file")
    eu.add_argument("--R", help="explicit R in the Picard basis, comma separated")
    eu.add_argument("--rank", type=int, default=1)
    common(sub.add_parser("selftest", help="run the reference example table"), character=False)
    rj = sub.add_parser("run", help="run a TOML job file")
    rj.add_argument("job")
    rj.add_argument("--format", choices=("text", "json"), default=None)
    return parser


def _job_from_args(args) -> dict:
    if getattr(args, "job", None):
        job = load_job(args.job)
        if args.command != "run" and job["command"] != args.command:
            raise ParseError(f"job file is for {job['command']!r}, not {args.command!r}")
        if args.format:
            job["format"] = args.format
        return job
    job = {k: v for k, v in vars(args).items() if v is not None and k not in ("batch", "verbose", "job", "param")}
    if args.command == "restrict":
        job["params"] = args.param
    return job


def _run_one_path(path: str) -> tuple[int, dict]:
    try:
        job = load_job(path)
    except ParseError as exc:
        return 2, {"schema_version": SCHEMA_VERSION, "command": None, "status": "error",
                   "error": {"type": "ParseError", "message": str(exc)}}
    return run(job)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.batch:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(_run_one_path, args.batch))
        fmt = args.format or "json"
        if fmt == "json":
            print(json.dumps({"schema_version": SCHEMA_VERSION, "jobs": [r for _, r in results]}, sort_keys=True, indent=2))
        else:
            for path, (_, report) in zip(args.batch, results):
                print(f"== {path}")
                print(_text(report))
        return max((code for code, _ in results), default=0)
    if not args.command:
        parser.print_help()
        return 2
    try:
        job = _job_from_args(args)
    except ParseError as exc:
        print(f"error (ParseError): {exc}", file=sys.stderr)
        return 2
    status, report = run(job)
    out = render(report, job.get("format") or "text")
    print(out, file=sys.stderr if status and report["status"] == "error" and job.get("format") != "json" else sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
