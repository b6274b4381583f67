"""Command-line front end.

JSON goes to standard output, diagnostics to standard error.  Exit codes:
0 success (or verified), 2 checked and rejected, 1 usage or internal error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import math
import re
import sys

from . import _accel
from .beltsum import augmentation_meridian, chain_cusp_shape
from .comprbody import build_rep, verify_structure
from .limitset import figure_packing, render_svg
from .pinch import MAX_WORD_LEN, GroupWord, enumerate_pinched, max_pinched_example, pinch_report
from .teich import FlatTorus, TorusShape, cusp_shape, short_slopes, teich_distance

log = logging.getLogger("kleinian")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2


class UsageError(Exception):
    pass


_COMPLEX = re.compile(
    r"""^[+-]?(?:
        (?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?            # real
        (?:[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?  # optional imaginary
      | (?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i      # pure imaginary
    )$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` style literals: ``5``, ``5i``, ``-i``, ``-1+1.73i``, ``2e1-3e-1i``."""
    s = str(text).strip().replace(" ", "")
    if not _COMPLEX.match(s):
        raise UsageError(f"not a complex literal: {text!r}")
    s = re.sub(r"(^|[+-])i$", r"\g<1>1i", s)
    return complex(s[:-1] + "j" if s.endswith("i") else s)


def _positive_int(text) -> int:
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise UsageError(f"expected a positive integer, got {v}")
    return v


def _nonneg_float(text) -> float:
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None
    if not (math.isfinite(v) and v >= 0):
        raise UsageError(f"expected a nonnegative number, got {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# option dest -> converter; also the set of keys a config section may use
_OPTIONS = {
    "verify": {"n": _positive_int, "a": parse_complex, "b": parse_complex, "tol": _nonneg_float},
    "shape": {"a": parse_complex, "b": parse_complex, "target": parse_complex},
    "slopes": {"u": parse_complex, "v": parse_complex, "L": _nonneg_float},
    "render": {
        "example": str, "n": _positive_int, "a": parse_complex, "b": parse_complex,
        "max_len": _positive_int, "dual": None, "output": str, "tol": _nonneg_float,
        "stroke_width": _nonneg_float, "stroke": str, "dual_stroke": str, "domain_stroke": str,
    },
    "pinch": {
        "example": str, "n": _positive_int, "a": parse_complex, "b": parse_complex,
        "word": None, "enumerate": _positive_int, "tol": _nonneg_float,
    },
    "beltsum": {"n": _positive_int, "m3": _nonneg_float, "m2": _nonneg_float},
}

_DEFAULTS = {
    "verify": {"tol": 1e-9},
    "render": {"max_len": 1, "tol": 1e-9, "stroke": "#1f3b73", "dual_stroke": "#c0392b",
               "domain_stroke": "#555555"},
    "pinch": {"tol": 1e-9},
    "beltsum": {"m3": 1.0, "m2": 1.0},
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kleinian", description="Hyperbolic structures on (1;n+1)-compression bodies.")
    p.add_argument("--config", help="key = value file with one [section] per command")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("verify", help="certify the isometric-sphere hypotheses")
    s.add_argument("--n")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--tol")

    s = sub.add_parser("shape", help="cusp shape of the lattice <a, b>")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--target")

    s = sub.add_parser("slopes", help="primitive slopes of length at most L")
    s.add_argument("--u")
    s.add_argument("--v")
    s.add_argument("--L")

    for name in ("render", "pinch"):
        s = sub.add_parser(name)
        s.add_argument("--example", choices=["max-pinched", "lemma"])
        s.add_argument("--n")
        s.add_argument("--a")
        s.add_argument("--b")
        s.add_argument("--tol")
        if name == "render":
            s.help = "SVG of the isometric spheres over a fundamental domain"
            s.add_argument("--max-len", dest="max_len")
            s.add_argument("--dual", action="store_const", const=True, default=None)
            s.add_argument("-o", "--output")
            s.add_argument("--stroke-width", dest="stroke_width")
            s.add_argument("--stroke")
            s.add_argument("--dual-stroke", dest="dual_stroke")
            s.add_argument("--domain-stroke", dest="domain_stroke")
        else:
            s.add_argument("--word", action="append", help='e.g. "a G1" (capital = inverse)')
            s.add_argument("--enumerate")

    s = sub.add_parser("beltsum", help="chain-link cusp model")
    s.add_argument("--n")
    s.add_argument("--m3")
    s.add_argument("--m2")
    return p


def _glue_negatives(argv: list[str]) -> list[str]:
    # argparse would read "-1+2i" as an option; bind it to the preceding flag
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and tok.startswith("-") \
                and _COMPLEX.match(tok.replace(" ", "")):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def _load_config(path: str, command: str) -> dict:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for section in cp.sections():
        if section not in _OPTIONS:
            raise UsageError(f"unknown config section [{section}]")
        unknown = set(cp[section]) - set(_OPTIONS[section])
        if unknown:
            raise UsageError(f"unknown keys in [{section}]: {sorted(unknown)}")
    return dict(cp[command]) if cp.has_section(command) else {}


def _resolve(args, command: str) -> dict:
    raw = {k: getattr(args, k, None) for k in _OPTIONS[command]}
    if args.config:
        for k, v in _load_config(args.config, command).items():
            if raw.get(k) is None:
                raw[k] = v
    out = {}
    for k, conv in _OPTIONS[command].items():
        v = raw.get(k)
        if v is None:
            v = _DEFAULTS.get(command, {}).get(k)
        elif k == "dual":
            v = v if isinstance(v, bool) else str(v).strip().lower() in ("1", "true", "yes", "on")
        elif k == "word":
            v = [v] if isinstance(v, str) else v
        elif conv is not None and isinstance(v, str):
            v = conv(v)
        out[k] = v
    return out


def _require(opts: dict, *names):
    missing = [n for n in names if opts.get(n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _pair(z: complex) -> list[float]:
    return [z.real + 0.0, z.imag + 0.0]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _rep_from(opts: dict):
    if opts.get("example") == "max-pinched":
        return max_pinched_example()
    if opts.get("example") == "lemma":
        return build_rep(1, 5, 5j)
    _require(opts, "n", "a", "b")
    return build_rep(opts["n"], opts["a"], opts["b"])


def cmd_verify(opts) -> int:
    _require(opts, "n", "a", "b")
    cert = verify_structure(build_rep(opts["n"], opts["a"], opts["b"]), opts["tol"])
    _emit(cert.to_json())
    if not cert.verified:
        log.info("rejected: %s", cert.reason)
    return EXIT_OK if cert.verified else EXIT_REJECTED


def cmd_shape(opts) -> int:
    _require(opts, "a", "b")
    shape = cusp_shape(opts["a"], opts["b"])
    out = {"tau": _pair(shape.tau)}
    if opts.get("target") is not None:
        out["distance"] = teich_distance(shape, TorusShape(opts["target"]))
    _emit(out)
    return EXIT_OK


def cmd_slopes(opts) -> int:
    _require(opts, "u", "v", "L")
    census = short_slopes(FlatTorus(opts["u"], opts["v"]), opts["L"])
    _emit([{"p": p, "q": q, "length": length} for (p, q), length in census])
    return EXIT_OK


def cmd_render(opts) -> int:
    _require(opts, "output")
    if opts["max_len"] > 10:
        raise UsageError("--max-len must be at most 10")
    rep = _rep_from(opts)
    pack, domain = figure_packing(rep, opts["max_len"], bool(opts.get("dual")), opts["tol"])
    render_svg(
        pack, domain, opts["output"], stroke_width=opts.get("stroke_width"),
        stroke=opts["stroke"], dual_stroke=opts["dual_stroke"], domain_stroke=opts["domain_stroke"],
    )
    log.info("wrote %s (%d circles)", opts["output"], len(pack.circles))
    out = pack.to_json()
    out["domain"] = domain.to_json()
    _emit(out)
    return EXIT_OK


def cmd_pinch(opts) -> int:
    rep = _rep_from(opts)
    if opts.get("enumerate") is not None:
        if opts["enumerate"] > MAX_WORD_LEN:
            raise UsageError(f"--enumerate must be at most {MAX_WORD_LEN}")
        reports = enumerate_pinched(rep, opts["enumerate"], opts["tol"])
    elif opts.get("word"):
        reports = [pinch_report(rep, GroupWord.parse(w), opts["tol"]) for w in opts["word"]]
    else:
        raise UsageError("give --word or --enumerate")
    _emit([r.to_json() for r in reports])
    return EXIT_OK


def cmd_beltsum(opts) -> int:
    _require(opts, "n")
    if not (opts["m3"] > 0 and opts["m2"] > 0):
        raise UsageError("--m3 and --m2 must be positive")
    shape = chain_cusp_shape(opts["n"])
    _emit({
        "n": opts["n"],
        "shape": {"tau": _pair(shape.tau)},
        "meridian": augmentation_meridian(opts["n"], opts["m3"], opts["m2"]),
    })
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "shape": cmd_shape,
    "slopes": cmd_slopes,
    "render": cmd_render,
    "pinch": cmd_pinch,
    "beltsum": cmd_beltsum,
}


def _setup_logging() -> None:
    # bind to the current stderr each call so embedding and test capture work
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.WARNING)


def main(argv=None) -> int:
    _setup_logging()
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_glue_negatives(argv))
        if args.verbose:
            log.setLevel(logging.INFO)
        if not args.command:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        _accel.set_threads()
        opts = _resolve(args, args.command)
        return COMMANDS[args.command](opts)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_ERROR
    except (ValueError, ArithmeticError, KeyError, OSError, RuntimeError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
