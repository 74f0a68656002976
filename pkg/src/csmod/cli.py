"""Command-line front end.

Subcommands: sigma, count, series, spectrum, verify, intersect.  Output
is human text by default; --format json is the stable machine
interface, --format csv emits flat tables.  Exit codes: 0 success,
1 verification failure, 2 argument or input parse failure, 3 domain
error, 4 resource-cap refusal.
"""

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .csm import (MODULE_KEYS, count_csms, csm_bruteforce, gamma_of,
                  reduced_representative, rotation_to_quat, sigma_index,
                  spectrum_member, spectrum_witness, standard_module,
                  verify_ideal_correspondence)
from .errors import (CsmodError, DomainError, ParseInputError,
                     ResourceCapError)
from .modlat import index_K, intersect
from .orders import ORDER_KEYS, hurwitz, icosian, octahedral, order_by_key
from .quat import Mat3K, Quat, axis_angle, format_quat, parse_quat
from .rings import parse_field_elem
from .series import PHI_CASES, phi_coefficients, residue_rho, zeta_identity_check

_CASE_OF_ORDER = {"hurwitz": "cub", "icosian": "ico", "octahedral": "oct"}
_ORDER_OF_CASE = {"cub": hurwitz, "ico": icosian, "oct": octahedral}

_FORMATS = ("text", "json", "csv")

_CONFIG_KEYS = ("order", "case", "max", "cap", "format", "seed", "workers")


@dataclass
class Config:
    order: str = "hurwitz"
    case: str = "cub"
    max: int | None = None
    cap: int | None = None
    format: str = "text"
    seed: int = 0
    workers: int = 1


def _positive_int(text, key):
    try:
        value = int(text)
    except ValueError:
        raise ParseInputError(f"{key} needs an integer, got {text!r}")
    if value < 1:
        raise ParseInputError(f"{key} must be at least 1")
    return value


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ParseInputError(f"cannot read config {path}: {exc}")
    out = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in _CONFIG_KEYS:
            raise ParseInputError(
                f"{path}:{lineno}: expected key=value with key in "
                f"{_CONFIG_KEYS}")
        out[key] = value
    return out


def _build_config(args) -> Config:
    cfg = Config()
    fromfile = _load_config(args.config) if getattr(args, "config", None) else {}
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is None:
            value = fromfile.get(key)
        if value is None:
            continue
        if key in ("max", "cap", "workers"):
            value = _positive_int(value, key)
        elif key == "seed":
            try:
                value = int(value)
            except ValueError:
                raise ParseInputError(f"seed needs an integer, got {value!r}")
        setattr(cfg, key, value)
    if cfg.format not in _FORMATS:
        raise ParseInputError(f"format must be one of {_FORMATS}")
    if cfg.order not in ORDER_KEYS:
        raise ParseInputError(f"order must be one of {ORDER_KEYS}")
    if cfg.case not in PHI_CASES:
        raise ParseInputError(f"case must be one of {PHI_CASES}")
    return cfg


# -- output -------------------------------------------------------------


def _emit(cfg: Config, payload: dict, rows=None, text=None) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    elif cfg.format == "csv":
        writer = csv.writer(sys.stdout)
        if rows is None:
            writer.writerow(("field", "value"))
            for key, value in payload.items():
                if key != "command":
                    writer.writerow((key, json.dumps(value)
                                     if isinstance(value, (list, dict))
                                     else value))
        else:
            writer.writerows(rows)
    else:
        for line in text or ():
            print(line)


def _module_text(module) -> str:
    return str(module)


# -- sigma --------------------------------------------------------------


def _parse_rotation(text: str, tag):
    if ";" in text:
        rows = [chunk.split(",") for chunk in text.split(";")]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ParseInputError("a rotation matrix needs 3 rows of 3 "
                                  "entries, rows separated by ';'")
        mat = Mat3K(tag, [[parse_field_elem(e.strip(), tag) for e in row]
                          for row in rows])
        return rotation_to_quat(mat)
    return parse_quat(text, tag)


def cmd_sigma(cfg: Config, args) -> int:
    order = order_by_key(cfg.order)
    q = _parse_rotation(args.rotation, order.field_tag)
    q_star = reduced_representative(order, q)
    submodule, sigma = csm_bruteforce(gamma_of(order), q)
    if order.maximal:
        assert sigma == sigma_index(order, q)
    if q.is_scalar():
        axis, cos = None, "1"
    else:
        axis_vec, cos_elem = axis_angle(q)
        axis, cos = [str(e) for e in axis_vec], str(cos_elem)
    payload = {
        "command": "sigma",
        "order": order.name,
        "rotation": args.rotation,
        "reduced_generator": format_quat(q_star),
        "sigma": sigma,
        "axis": axis,
        "cos_angle": cos,
        "csm_basis": submodule.json_columns(),
    }
    text = [
        f"order:              {order.name}",
        f"reduced generator:  {format_quat(q_star)}",
        f"coincidence index:  {sigma}",
        f"axis:               {'(identity rotation)' if axis is None else '(' + ', '.join(axis) + ')'}",
        f"cos(angle):         {cos}",
        f"csm basis:          {_module_text(submodule)}",
    ]
    _emit(cfg, payload, text=text)
    return 0


# -- count --------------------------------------------------------------


def _parse_index_range(text: str):
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            bounds = int(lo), int(hi)
        else:
            bounds = int(text), int(text)
    except ValueError:
        raise ParseInputError(f"expected an index or a..b range, got {text!r}")
    if bounds[0] < 1 or bounds[1] < bounds[0]:
        raise ParseInputError(f"bad index range {text!r}")
    return bounds


def _count_task(task):
    key, m, cap = task
    return m, count_csms(order_by_key(key), m, cap)


def cmd_count(cfg: Config, args) -> int:
    order = order_by_key(cfg.order)
    lo, hi = _parse_index_range(args.indices)
    tasks = [(order.name, m, cfg.cap) for m in range(lo, hi + 1)]
    if cfg.workers > 1 and len(tasks) > 1:
        with Pool(min(cfg.workers, len(tasks))) as pool:
            counted = pool.map(_count_task, tasks)
    else:
        counted = [_count_task(task) for task in tasks]
    counted.sort()
    case = _CASE_OF_ORDER.get(order.name)
    series = phi_coefficients(case, hi) if case else None
    table = [{"m": m, "count": count,
              "matches_series": bool(series and series.at(m) == count)}
             for m, count in counted]
    payload = {
        "command": "count",
        "order": order.name,
        "range": [lo, hi],
        "rows": table,
        "all_match": all(r["matches_series"] for r in table),
    }
    rows = [("m", "count", "matches_series")]
    rows += [(r["m"], r["count"], str(r["matches_series"]).lower())
             for r in table]
    text = [f"{'m':>6} {'count':>8}  series"]
    text += [f"{r['m']:>6} {r['count']:>8}  "
             f"{'ok' if r['matches_series'] else 'MISMATCH'}" for r in table]
    _emit(cfg, payload, rows=rows, text=text)
    return 0


# -- series -------------------------------------------------------------


def cmd_series(cfg: Config, args) -> int:
    if cfg.max is None:
        raise ParseInputError("series needs --max")
    series = phi_coefficients(cfg.case, cfg.max, cfg.cap)
    running = 0
    table = []
    for m in range(1, cfg.max + 1):
        running += series.at(m)
        table.append({"m": m, "f": series.at(m), "F": running,
                      "ratio": str(Fraction(2 * running, m * m))})
    payload = {
        "command": "series",
        "case": cfg.case,
        "max": cfg.max,
        "density": residue_rho(cfg.case),
        "rows": table,
    }
    rows = [("m", "f", "F", "ratio")]
    rows += [(r["m"], r["f"], r["F"], r["ratio"]) for r in table]
    text = [f"{'m':>6} {'f(m)':>8} {'F(m)':>10}  F(m)/(m^2/2)"]
    text += [f"{r['m']:>6} {r['f']:>8} {r['F']:>10}  {r['ratio']}"
             for r in table]
    text.append(f"asymptotic density: {residue_rho(cfg.case):.6f}")
    _emit(cfg, payload, rows=rows, text=text)
    return 0


# -- spectrum -----------------------------------------------------------


def cmd_spectrum(cfg: Config, args) -> int:
    order = _ORDER_OF_CASE[cfg.case]()
    member = spectrum_member(order, args.index)
    witness = spectrum_witness(order, args.index)
    payload = {
        "command": "spectrum",
        "case": cfg.case,
        "m": args.index,
        "member": member,
        "witness": list(witness) if witness else None,
    }
    if member:
        text = [f"yes, (k,l) = ({witness[0]}, {witness[1]})"]
    else:
        text = ["no"]
    _emit(cfg, payload, text=text)
    return 0


# -- verify -------------------------------------------------------------


def _suite_ideal_correspondence(n, seed):
    top = n if n is not None else 10
    checks = failures = 0
    for factory in (hurwitz, icosian, octahedral):
        order = factory()
        for m in range(1, top + 1):
            for q in order.enumerate_by_index(m):
                checks += 1
                if not verify_ideal_correspondence(order, q).all_ok:
                    failures += 1
    return checks, failures


def _suite_cubic_index(n, seed):
    wanted = n if n is not None else 100
    rng = random.Random(seed)
    order = hurwitz()
    lattices = [standard_module(k) for k in ("cubic", "fcc", "bcc")]
    checks = failures = 0
    while checks < wanted:
        q = Quat.zero(order.field_tag)
        for b in order.basis:
            q = q + b * rng.randint(-4, 4)
        if q.is_zero():
            continue
        sigma = sigma_index(order, q)
        if sigma > 99:
            continue
        checks += 1
        if any(csm_bruteforce(g, q)[1] != sigma for g in lattices):
            failures += 1
    return checks, failures


def _suite_zeta(n, seed):
    checks = failures = 0
    for case, default_m in (("cub", 100), ("ico", 50), ("oct", 50)):
        checks += 1
        if not zeta_identity_check(case, n if n is not None else default_m):
            failures += 1
    return checks, failures


_SUITES = {
    "ideal-correspondence": _suite_ideal_correspondence,
    "cubic-index": _suite_cubic_index,
    "zeta": _suite_zeta,
}


def cmd_verify(cfg: Config, args) -> int:
    if args.n is not None and args.n < 1:
        raise ParseInputError("--n must be at least 1")
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    table = []
    for name in names:
        checks, failures = _SUITES[name](args.n, cfg.seed)
        table.append({"suite": name, "checks": checks,
                      "failures": failures, "pass": failures == 0})
    payload = {
        "command": "verify",
        "seed": cfg.seed,
        "rows": table,
        "pass": all(r["pass"] for r in table),
    }
    rows = [("suite", "checks", "failures", "pass")]
    rows += [(r["suite"], r["checks"], r["failures"],
              str(r["pass"]).lower()) for r in table]
    text = [f"suite {r['suite']}: "
            f"{'pass' if r['pass'] else 'FAIL'} "
            f"({r['checks']} checks, {r['failures']} failures)"
            for r in table]
    _emit(cfg, payload, rows=rows, text=text)
    return 0 if payload["pass"] else 1


# -- intersect ----------------------------------------------------------


def cmd_intersect(cfg: Config, args) -> int:
    first = standard_module(args.first)
    second = standard_module(args.second)
    common = intersect(first, second)
    in_first = index_K(first, common)
    in_second = index_K(second, common)
    payload = {
        "command": "intersect",
        "first": args.first,
        "second": args.second,
        "basis": common.json_columns(),
        "index_in_first": {"generator": str(in_first.generator),
                           "absolute": in_first.absolute},
        "index_in_second": {"generator": str(in_second.generator),
                            "absolute": in_second.absolute},
    }
    text = [
        f"intersection of {args.first} and {args.second}:",
        f"  basis:  {_module_text(common)}",
        f"  index in {args.first}: {in_first} (absolute {in_first.absolute})",
        f"  index in {args.second}: {in_second} "
        f"(absolute {in_second.absolute})",
    ]
    _emit(cfg, payload, text=text)
    return 0


# -- wiring -------------------------------------------------------------


def _add_common(parser, *, order=False, case=False):
    parser.add_argument("--format", choices=_FORMATS, default=None)
    parser.add_argument("--config", default=None, metavar="PATH")
    if order:
        parser.add_argument("--order", choices=ORDER_KEYS, default=None)
    if case:
        parser.add_argument("--case", choices=PHI_CASES, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csmod",
        description="Coincidence site modules of cubic, icosahedral and "
                    "octahedral module families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="coincidence index of one rotation")
    p.add_argument("rotation", help="quaternion text, or a 3x3 matrix as "
                                    "'a,b,c; d,e,f; g,h,i'")
    _add_common(p, order=True)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("count", help="count distinct coincidence submodules")
    p.add_argument("indices", help="index m, or a range a..b")
    p.add_argument("--cap", default=None)
    p.add_argument("--workers", default=None)
    _add_common(p, order=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", help="counting-series table")
    p.add_argument("--max", default=None)
    p.add_argument("--cap", default=None)
    _add_common(p, case=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("spectrum", help="does an index occur at all")
    p.add_argument("index", type=int)
    _add_common(p, case=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=("all",) + tuple(_SUITES),
                   default="all")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("intersect", help="intersect two standard modules")
    p.add_argument("first", choices=MODULE_KEYS)
    p.add_argument("second", choices=MODULE_KEYS)
    _add_common(p)
    p.set_defaults(func=cmd_intersect)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
        return args.func(cfg, args)
    except ParseInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CsmodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
