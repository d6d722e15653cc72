"""Command-line front end.

    prolate spectrum --c 10 --nmax 20 --out spectrum.csv
    prolate psi --c 20 --n 14 --out psi.csv
    prolate roots --c 20 --n 14 --out roots.csv
    prolate bounds --c 10 --n 8 --out bounds.csv
    prolate table --id 77a --out t77a.csv
    prolate figure --id 170 --out f170.csv
    prolate verify [--grid grid.txt] [--out report.csv]

Flags override values from an optional key=value config file
(``--config``).  Exit status: 0 on success / all checks passing, 1 when
verification finds failures, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from .core import ProlateContext, build_spectrum, integral_eigenvalue
from .errors import DomainError, ProlateError
from .roots import special_points
from .tables import FIGURE_IDS, HeavyJobError, TABLE_IDS, reproduce_figure, reproduce_table
from .verify import default_grid, run_verification

__all__ = ["JobSpec", "main"]

_USAGE_ERROR = 2


@dataclass(frozen=True)
class JobSpec:
    """One resolved CLI job after merging config-file and flag values."""

    command: str
    c: float | None = None
    n: int | None = None
    n_max: int | None = None
    dataset_id: str | None = None
    out: str | None = None
    tol: float = 1e-12
    heavy: bool = False
    grid_file: str | None = None
    samples: int = 1001


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"config line {line!r} is not key=value")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prolate",
        description="Prolate spheroidal wave function numerics and verification",
    )
    parser.add_argument("--config", help="key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", help="eigenvalues and kernel moduli as CSV")
    spectrum.add_argument("--c", type=float)
    spectrum.add_argument("--nmax", type=int)
    spectrum.add_argument("--tol", type=float)
    spectrum.add_argument("--out", required=True)

    psi = sub.add_parser("psi", help="sample one psi_n on a uniform grid")
    psi.add_argument("--c", type=float)
    psi.add_argument("--n", type=int)
    psi.add_argument("--tol", type=float)
    psi.add_argument("--samples", type=int)
    psi.add_argument("--out", required=True)

    roots = sub.add_parser("roots", help="special points of one psi_n")
    roots.add_argument("--c", type=float)
    roots.add_argument("--n", type=int)
    roots.add_argument("--tol", type=float)
    roots.add_argument("--out", required=True)

    bnd = sub.add_parser("bounds", help="named eigenvalue bounds for one (c, n)")
    bnd.add_argument("--c", type=float)
    bnd.add_argument("--n", type=int)
    bnd.add_argument("--tol", type=float)
    bnd.add_argument("--out", required=True)

    table = sub.add_parser("table", help="golden reference table as CSV")
    table.add_argument("--id", dest="dataset_id", choices=TABLE_IDS)
    table.add_argument("--heavy", action="store_true")
    table.add_argument("--out", required=True)

    figure = sub.add_parser("figure", help="golden figure series as CSV")
    figure.add_argument("--id", dest="dataset_id", choices=FIGURE_IDS)
    figure.add_argument("--out", required=True)

    verify = sub.add_parser("verify", help="run the full invariant suite")
    verify.add_argument("--grid", dest="grid_file", help="lines of c,n_min,n_max")
    verify.add_argument("--out", help="write the outcome table as CSV")
    return parser


def _merge_job(args: argparse.Namespace) -> JobSpec:
    config = _read_config(args.config) if args.config else {}

    def pick(flag_value, key: str, cast):
        if flag_value not in (None, False):
            return flag_value
        if key in config:
            raw = config[key]
            return cast(raw) if cast is not bool else raw.lower() in ("1", "true", "yes")
        return flag_value

    get = lambda name: getattr(args, name, None)
    return JobSpec(
        command=args.command,
        c=pick(get("c"), "c", float),
        n=pick(get("n"), "n", int),
        n_max=pick(get("nmax"), "nmax", int),
        dataset_id=pick(get("dataset_id"), "id", str),
        out=pick(get("out"), "out", str),
        tol=pick(get("tol"), "tol", float) or 1e-12,
        heavy=bool(pick(get("heavy"), "heavy", bool)),
        grid_file=pick(get("grid_file"), "grid", str),
        samples=pick(get("samples"), "samples", int) or 1001,
    )


def _require(job: JobSpec, *names: str) -> None:
    for name in names:
        if getattr(job, name) is None:
            raise DomainError(f"missing required value {name!r} (flag or config)")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _run_spectrum(job: JobSpec) -> int:
    _require(job, "c", "n_max", "out")
    spec = build_spectrum(ProlateContext(c=job.c, n_max=job.n_max, tol=job.tol))
    lines = ["n,chi,chi_over_c2,lambda_abs,mu"]
    for n in range(job.n_max + 1):
        ev = integral_eigenvalue(spec.function(n))
        lines.append(
            f"{n},{spec.chi[n]!r},{spec.chi[n] / job.c**2!r},{ev.lambda_abs!r},{ev.mu!r}"
        )
    _write(job.out, "\n".join(lines) + "\n")
    return 0


def _run_psi(job: JobSpec) -> int:
    _require(job, "c", "n", "out")
    spec = build_spectrum(ProlateContext(c=job.c, n_max=job.n, tol=job.tol))
    fn = spec.function(job.n)
    lines = ["t,psi,dpsi"]
    for t in np.linspace(-1.0, 1.0, job.samples):
        lines.append(f"{float(t)!r},{float(fn.psi(t))!r},{float(fn.dpsi(t))!r}")
    _write(job.out, "\n".join(lines) + "\n")
    return 0


def _run_roots(job: JobSpec) -> int:
    _require(job, "c", "n", "out")
    spec = build_spectrum(ProlateContext(c=job.c, n_max=job.n, tol=job.tol))
    sp = special_points(spec.function(job.n))
    lines = ["kind,index,t"]
    for i, t in enumerate(sp.t, start=1):
        lines.append(f"root_psi,{i},{float(t)!r}")
    for i, x in enumerate(sp.x, start=1):
        kind = "endpoint_formal" if (i == sp.n and sp.xn_is_formal) else "root_dpsi"
        lines.append(f"{kind},{i},{float(x)!r}")
    lines.append(f"turning,,{sp.turning!r}")
    lines.append(f"regime,,{sp.regime.value}")
    _write(job.out, "\n".join(lines) + "\n")
    return 0


def _run_bounds(job: JobSpec) -> int:
    _require(job, "c", "n", "out")
    spec = build_spectrum(ProlateContext(c=job.c, n_max=job.n, tol=job.tol))
    fn = spec.function(job.n)
    reports = bounds_mod.chi_bounds_suite(job.n, job.c, fn.chi)
    if fn.chi > job.c**2:
        reports += bounds_mod.endpoint_bounds(fn)
    lines = ["name,truth,lower,upper,rel_err_lower,rel_err_upper,holds"]
    for r in reports:
        fmt = lambda v: "" if v is None else repr(float(v))
        lines.append(
            f"{r.name},{r.truth!r},{fmt(r.lower)},{fmt(r.upper)},"
            f"{fmt(r.rel_err_lower)},{fmt(r.rel_err_upper)},{r.holds}"
        )
    _write(job.out, "\n".join(lines) + "\n")
    return 0


def _parse_grid_file(path: str) -> list[tuple[float, range]]:
    grid = []
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 3:
                raise DomainError(f"grid line {line!r} is not c,n_min,n_max")
            c, lo, hi = float(parts[0]), int(parts[1]), int(parts[2])
            grid.append((c, range(lo, hi + 1)))
    return grid


def _run_verify(job: JobSpec) -> int:
    grid = _parse_grid_file(job.grid_file) if job.grid_file else default_grid()
    report = run_verification(grid)
    sys.stdout.write(report.to_log())
    if job.out:
        _write(job.out, report.to_csv())
    return report.exit_code


def _run_table(job: JobSpec) -> int:
    _require(job, "dataset_id", "out")
    _write(job.out, reproduce_table(job.dataset_id, heavy=job.heavy))
    return 0


def _run_figure(job: JobSpec) -> int:
    _require(job, "dataset_id", "out")
    _write(job.out, reproduce_figure(job.dataset_id))
    return 0


_RUNNERS = {
    "spectrum": _run_spectrum,
    "psi": _run_psi,
    "roots": _run_roots,
    "bounds": _run_bounds,
    "table": _run_table,
    "figure": _run_figure,
    "verify": _run_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        job = _merge_job(args)
        return _RUNNERS[job.command](job)
    except (DomainError, HeavyJobError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except ProlateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
