"""Command-line front end.

Exit codes: 0 pass, 1 property violated (or numerical failure), 2 usage error.

    nehari-kit membership --map strip_f1 --class N2:2
    nehari-kit verify bounds --class N1:4 --map F2
    nehari-kit verify riccati --alpha 2 --k 1.5
    nehari-kit verify john --map strip_f1
    nehari-kit plotdata --map F0 --k 1 --rings 8 --rays 16 --output f0.csv
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import bound_for, default_rays, dominance_scan, psi_on_ray
from .catalog import NAMES, PARAMETRIC, catalog_entries, catalog_json, catalog_lookup
from .classes import ClassSpec, parse_class, parse_k
from .errors import NehariError, PreconditionError, UnknownMapError
from .john import JOHN_EVIDENCE, limsup_estimate, ratio_sweep
from .plotdata import boundary_curve, image_polylines, ray_crossings, write_polylines_csv
from .riccati import RiccatiIVP, closed_form, dominance_certificate, integrate
from .schwarzian import PolarGrid, class_membership

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SIG = 15

EXTREMAL = {("N", 2): "A_k", ("M", 2): "F0", ("N", 0): "F1", ("N", 1): "F2"}
RICCATI_TOL = 1e-7
EQUALITY_TOL = 1e-9
EQUALITY_RADII = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass
class RunConfig:
    command: str
    map: str | None = None
    k: float | None = None
    cls: str | None = None
    angles: int = 64
    radii: int = 48
    r_max: float = 0.98
    tol: float = 1e-8
    format: str = "json"
    output: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.r_max > 0.999:
            raise PreconditionError("r_max must not exceed 0.999")
        if self.tol <= 0:
            raise PreconditionError("tolerances must be positive")


# output --------------------------------------------------------------------------

def to_plain(obj):
    """Recursively convert to JSON-ready values, floats rounded to 15 significant digits."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_plain(obj.real), to_plain(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.{SIG}g}")
    return obj


def emit_json(obj) -> str:
    return json.dumps(to_plain(obj), indent=2, sort_keys=False)


def emit_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.DictWriter(buf, fieldnames=list(rows[0]))
    w.writeheader()
    for row in rows:
        w.writerow({k: (f"{v:.{SIG}g}" if isinstance(v, float) else v)
                    for k, v in to_plain(row).items()})
    return buf.getvalue()


def _write(cfg: RunConfig, report: dict, rows: list[dict] | None = None):
    text = emit_csv(rows if rows is not None else [_flatten(report)]) \
        if cfg.format == "csv" else emit_json(report)
    if cfg.output:
        Path(cfg.output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(to_plain(v))
        else:
            out[key] = v
    return out


# helpers -------------------------------------------------------------------------

def _map_for(name: str, k: float | None, spec: ClassSpec | None = None):
    if name not in NAMES:
        raise UnknownMapError(name)
    if name in PARAMETRIC and k is None and spec is not None:
        k = spec.k
    return catalog_lookup(name, k)


def _check(name: str, passed: bool, **info) -> dict:
    return {"check": name, "pass": bool(passed), **info}


# commands ------------------------------------------------------------------------

def cmd_membership(cfg: RunConfig) -> int:
    spec = parse_class(cfg.cls)
    f = _map_for(cfg.map, cfg.k, spec)
    grid = PolarGrid(cfg.angles, cfg.radii, cfg.r_max)
    rep = class_membership(f, spec, grid, cfg.tol)
    _write(cfg, {"config": asdict(cfg), "report": rep.to_dict()})
    return EXIT_PASS if rep.member else EXIT_FAIL


def equality_check(f, spec: ClassSpec, radii=EQUALITY_RADII, tol=EQUALITY_TOL) -> dict:
    r = np.asarray(radii, dtype=float)
    psi = psi_on_ray(f, 0.0, r)
    w = bound_for(spec)(r)
    err = float(np.max(np.abs(psi - w)))
    return _check("equality-on-real-ray", err <= tol, max_abs_diff=err, tol=tol,
                  radii=r.tolist())


def verify_bounds(cfg: RunConfig) -> tuple[list[dict], dict]:
    spec = parse_class(cfg.cls)
    f = _map_for(cfg.map, cfg.k, spec)
    checks = []
    if EXTREMAL.get((spec.variant, spec.alpha)) == f.name and f.params.get("k") == spec.k:
        checks.append(equality_check(f, spec))
    radii = np.linspace(0.0, min(0.95, f.max_radius), 50)
    rep = dominance_scan(f, spec, default_rays(16), radii)
    checks.append(_check("dominance", rep.dominated, min_margin=rep.min_margin,
                         location=rep.location))
    return checks, {"map": f.name, "class": spec.label}


def verify_riccati(cfg: RunConfig) -> tuple[list[dict], dict]:
    ex = cfg.extra
    ivp = RiccatiIVP(ex["alpha"], cfg.k, ex.get("variant", "N"), ex.get("x_max", 0.9))
    x = np.linspace(0.0, ivp.x_max, 91)
    sol = integrate(ivp, x)
    err = float(np.max(np.abs(sol.w - closed_form(ivp)(x))))
    checks = [
        _check("integrate-vs-closed-form", err < RICCATI_TOL, max_abs_err=err, tol=RICCATI_TOL),
        _check("monotone", bool(np.all(np.diff(sol.w) >= -1e-12)),
               min_increment=float(np.min(np.diff(sol.w)))),
    ]
    name = EXTREMAL[(ivp.variant, ivp.alpha)]
    f = catalog_lookup(name, ivp.k)
    scan = dominance_certificate(f, ivp, 0.0, 50)
    checks.append(_check("dominance-certificate", scan.dominated, map=name,
                         min_margin=scan.min_margin))
    return checks, {"ivp": asdict(ivp)}


def verify_john(cfg: RunConfig) -> tuple[list[dict], dict]:
    f = _map_for(cfg.map, cfg.k)
    sweep = ratio_sweep(f)
    checks = [_check("ratio-test", sweep.verdict == JOHN_EVIDENCE, verdict=sweep.verdict,
                     best_x=sweep.best.x, best_sup_ratio=sweep.best.sup_ratio)]
    info = {"map": f.name, "bounded": f.bounded, "john_label": f.john_label}
    if f.max_radius >= 1:
        est = limsup_estimate(f)
        info["limsup"] = {"limit": est.limit, "uncertainty": est.uncertainty}
    return checks, info


VERIFIERS = {"bounds": verify_bounds, "riccati": verify_riccati, "john": verify_john}


def cmd_verify(cfg: RunConfig) -> int:
    target = cfg.extra["target"]
    checks, info = VERIFIERS[target](cfg)
    passed = all(c["pass"] for c in checks)
    _write(cfg, {"target": target, **info, "pass": passed, "checks": checks},
           rows=[_flatten(c) for c in checks])
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_plotdata(cfg: RunConfig) -> int:
    ex = cfg.extra
    f = _map_for(cfg.map, cfg.k)
    lines = image_polylines(f, ex["rings"], ex["rays"], ex["samples"], r_max=cfg.r_max)
    out = Path(cfg.output or f"{f.name}_plotdata.csv")
    write_polylines_csv(out, lines)
    bnd_path = out.with_name(out.stem + "_boundary.csv")
    bnd = boundary_curve(f, ex.get("boundary_r", 0.98))
    write_polylines_csv(bnd_path, [bnd])
    cross = ray_crossings(lines)
    summary = {"map": f.name, "params": f.params, "polylines": len(lines),
               "polylines_csv": str(out), "boundary_csv": str(bnd_path),
               "boundary_r": min(ex.get("boundary_r", 0.98), f.max_radius),
               "ray_crossings": {"mutual": cross["mutual"],
                                 "self": sum(cross["self"].values())},
               "rays_simple": cross["simple"]}
    sys.stdout.write(emit_json(summary) + "\n")
    return EXIT_PASS


def cmd_catalog(cfg: RunConfig) -> int:
    ks = {name: cfg.k for name in PARAMETRIC} if cfg.k is not None else None
    _write(cfg, {"catalog": catalog_json(catalog_entries(ks) if ks else None)})
    return EXIT_PASS


def cmd_bounds(cfg: RunConfig) -> int:
    spec = parse_class(cfg.cls)
    prof = bound_for(spec)
    r = np.linspace(0.0, min(cfg.r_max, 0.95 if spec.alpha == 1 else cfg.r_max),
                    cfg.extra.get("n", 11))
    w = prof(r)
    rows = [{"r": float(a), "w": float(b)} for a, b in zip(r, w)]
    _write(cfg, {"class": spec.label, "description": prof.description, "samples": rows}, rows)
    return EXIT_PASS


def cmd_riccati(cfg: RunConfig) -> int:
    ex = cfg.extra
    ivp = RiccatiIVP(ex["alpha"], cfg.k, ex.get("variant", "N"), ex.get("x_max", 0.9))
    x = np.linspace(0.0, ivp.x_max, ex.get("n", 91))
    sol = integrate(ivp, x)
    exact = closed_form(ivp)(x)
    rows = [{"x": float(a), "w": float(b), "closed_form": float(c)}
            for a, b, c in zip(x, sol.w, exact)]
    _write(cfg, {"ivp": asdict(ivp), "w0": ivp.w0, "accepted_steps": len(sol.steps),
                 "max_abs_err": float(np.max(np.abs(sol.w - exact))), "samples": rows}, rows)
    return EXIT_PASS


def cmd_john(cfg: RunConfig) -> int:
    f = _map_for(cfg.map, cfg.k)
    sweep = ratio_sweep(f)
    report = {"map": f.name, "ratio_sweep": sweep.to_dict()}
    if f.max_radius >= 1:
        report["limsup"] = limsup_estimate(f).to_dict()
    _write(cfg, report)
    return EXIT_PASS


COMMANDS = {
    "membership": cmd_membership, "verify": cmd_verify, "plotdata": cmd_plotdata,
    "catalog": cmd_catalog, "bounds": cmd_bounds, "riccati": cmd_riccati, "john": cmd_john,
}


# argument parsing ----------------------------------------------------------------

def _k_arg(text: str) -> float:
    try:
        return parse_k(text)
    except PreconditionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nehari-kit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid=False):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", "-o")
        if grid:
            sp.add_argument("--angles", type=int, default=64)
            sp.add_argument("--radii", type=int, default=48)
            sp.add_argument("--r-max", type=float, default=0.98)
            sp.add_argument("--tol", type=float, default=1e-8)

    sp = sub.add_parser("membership", help="sampled class membership")
    sp.add_argument("--map", required=True)
    sp.add_argument("--k", type=_k_arg)
    sp.add_argument("--class", dest="cls", required=True)
    common(sp, grid=True)

    sp = sub.add_parser("verify", help="pass/fail property checks")
    sp.add_argument("target", choices=tuple(VERIFIERS))
    sp.add_argument("--map")
    sp.add_argument("--k", type=_k_arg)
    sp.add_argument("--class", dest="cls")
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--variant", choices=("N", "M"), default="N")
    sp.add_argument("--x-max", type=float, default=0.9)
    common(sp)

    sp = sub.add_parser("plotdata", help="image polylines as CSV")
    sp.add_argument("--map", required=True)
    sp.add_argument("--k", type=_k_arg)
    sp.add_argument("--rings", type=int, default=8)
    sp.add_argument("--rays", type=int, default=16)
    sp.add_argument("--samples", type=int, default=99)
    sp.add_argument("--r-max", type=float, default=0.98)
    sp.add_argument("--output", "-o")

    sp = sub.add_parser("catalog", help="dump the map catalog as JSON")
    sp.add_argument("--k", type=_k_arg)
    sp.add_argument("--output", "-o")

    sp = sub.add_parser("bounds", help="tabulate a sharp bound profile")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--n", type=int, default=11)
    sp.add_argument("--r-max", type=float, default=0.9)
    common(sp)

    sp = sub.add_parser("riccati", help="integrate a Riccati comparison problem")
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--k", type=_k_arg, required=True)
    sp.add_argument("--variant", choices=("N", "M"), default="N")
    sp.add_argument("--x-max", type=float, default=0.9)
    sp.add_argument("--n", type=int, default=91)
    common(sp)

    sp = sub.add_parser("john", help="John-domain diagnostics report")
    sp.add_argument("--map", required=True)
    sp.add_argument("--k", type=_k_arg)
    common(sp)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("target", "alpha", "variant", "x_max", "rings", "rays", "samples", "n"):
        if getattr(ns, key, None) is not None:
            extra[key] = getattr(ns, key)
    if ns.command == "verify":
        need = {"bounds": ("cls", "map"), "riccati": ("alpha", "k"), "john": ("map",)}
        missing = [n for n in need[ns.target] if getattr(ns, n, None) is None]
        if missing:
            raise PreconditionError(f"verify {ns.target} needs --{', --'.join(missing)}")
    return RunConfig(
        command=ns.command, map=getattr(ns, "map", None), k=getattr(ns, "k", None),
        cls=getattr(ns, "cls", None), angles=getattr(ns, "angles", 64),
        radii=getattr(ns, "radii", 48), r_max=getattr(ns, "r_max", 0.98),
        tol=getattr(ns, "tol", 1e-8), format=getattr(ns, "format", "json"),
        output=getattr(ns, "output", None), extra=extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (PreconditionError, UnknownMapError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except NehariError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc.filename or ''}: {exc.strerror or exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
