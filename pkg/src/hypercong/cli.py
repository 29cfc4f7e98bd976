"""Batch sweep driver and command-line interface.

Three verbs: ``verify`` runs one check on one parameter tuple and prints a
human-readable report; ``sweep`` expands a parameter grid, runs every
registered check (optionally across processes) and emits JSON or CSV;
``primes`` prints sieve output.

Exit codes are a stable contract for CI: 0 when no asserted check fails,
1 when any asserted check fails (or is ill-posed), 2 on configuration or
precondition errors.  Sweep output is byte-identical for a given spec
regardless of the parallelism level: results are merged and sorted before
emission, and the echoed spec deliberately omits execution-only fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import padic
from .errors import ConfigError, HypercongError
from .series import TheoremParams
from .verify import (
    CongruenceReport,
    Verdict,
    verify_dflst_pair,
    verify_exact_identities,
    verify_guo,
    verify_lemma_suite,
    verify_sun_bernoulli,
    verify_sun_e,
    verify_taylor,
    verify_theorem1,
    verify_theorem2,
)

__all__ = ["SweepSpec", "SweepResult", "primes_upto", "run_sweep", "main", "CHECK_NAMES"]

CHECK_NAMES = (
    "theorem1",
    "theorem2",
    "guo",
    "sun-e",
    "sun-bernoulli",
    "dflst",
    "lemmas",
    "taylor",
    "identities",
)

# Checks driven by a full (n, q, p) triple with the parity/range hypotheses.
_TRIPLE_CHECKS = ("theorem1", "theorem2", "lemmas", "taylor", "identities")

# Required valuation per check, used for reports synthesized when an
# exploratory evaluation cannot even be carried out.
_REQUIRED_ORD = {
    "theorem1": 3,
    "theorem2": 3,
    "guo": 3,
    "sun-e": 5,
    "sun-bernoulli": 5,
    "dflst": 3,
    "lemmas": 1,
    "taylor": 3,
    "identities": 3,
}


def primes_upto(limit: int) -> list[int]:
    """Ascending list of all primes <= limit (empty below 2)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for a batch run."""

    check_ids: tuple[str, ...]
    n_range: tuple[int, int] = (3, 6)
    q_range: tuple[int, int] = (1, 3)
    d_range: tuple[int, int] = (4, 8)
    p_max: int = 50
    exploratory: bool = False
    parallelism: int = 1
    output_format: str = "json"
    output_path: str | None = None

    def validate(self):
        unknown = [c for c in self.check_ids if c not in CHECK_NAMES]
        if unknown:
            raise ConfigError(f"unknown check id(s): {', '.join(unknown)}")
        if not self.check_ids:
            raise ConfigError("no checks requested")
        if self.p_max < 5:
            raise ConfigError(f"p_max must be at least 5, got {self.p_max}")
        for name, (lo, hi) in (
            ("n", self.n_range),
            ("q", self.q_range),
            ("d", self.d_range),
        ):
            if lo > hi:
                raise ConfigError(f"empty {name} range {lo}..{hi}")
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be positive, got {self.parallelism}")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    reports: tuple[CongruenceReport, ...]
    summary: dict

    @property
    def exit_code(self) -> int:
        bad = (Verdict.FAILS, Verdict.ILL_POSED)
        return 1 if any(r.verdict in bad for r in self.reports) else 0


def _expand_units(spec: SweepSpec) -> list[tuple]:
    primes = primes_upto(spec.p_max)
    units = []
    nlo, nhi = spec.n_range
    qlo, qhi = spec.q_range
    dlo, dhi = spec.d_range
    morita_cap = padic.morita_cap()
    for check in spec.check_ids:
        if check in _TRIPLE_CHECKS:
            for n in range(max(nlo, 3), nhi + 1):
                for q in range(max(qlo, 1), qhi + 1):
                    for p in primes:
                        parity = n % 2 == 0 or q % 2 == 1
                        in_range = p > max(n, (q - 1) * n + 1)
                        if parity and in_range:
                            units.append((check, (("n", n), ("q", q), ("p", p)), False))
                        elif spec.exploratory:
                            units.append((check, (("n", n), ("q", q), ("p", p)), True))
        elif check == "guo":
            for d in range(max(dlo, 4), dhi + 1):
                if d % 2:
                    continue
                for p in primes:
                    if (p + 1) % d == 0:
                        units.append((check, (("d", d), ("p", p)), False))
        elif check == "sun-e":
            for p in primes:
                if p > 3:
                    units.append((check, (("p", p),), False))
        elif check == "sun-bernoulli":
            for n in range(max(nlo, 1), nhi + 1):
                for p in primes:
                    if p > 3 and n % p:
                        units.append((check, (("p", p), ("n", n)), False))
        elif check == "dflst":
            for n in range(max(nlo, 3), nhi + 1):
                for p in primes:
                    if p % n == 1 and p**3 <= morita_cap:
                        units.append((check, (("n", n), ("p", p)), False))
    return units


def _run_unit(unit: tuple) -> list[CongruenceReport]:
    check, items, tagged = unit
    params = dict(items)
    try:
        if check in _TRIPLE_CHECKS:
            tp = TheoremParams(params["n"], params["q"], params["p"], exploratory=tagged)
            if check == "theorem1":
                return [verify_theorem1(tp)]
            if check == "theorem2":
                return [verify_theorem2(tp)]
            if check == "lemmas":
                return verify_lemma_suite(tp)
            if check == "taylor":
                return verify_taylor(tp)
            return verify_exact_identities(tp)
        if check == "guo":
            return [verify_guo(params["d"], params["p"])]
        if check == "sun-e":
            return [verify_sun_e(params["p"])]
        if check == "sun-bernoulli":
            return [verify_sun_bernoulli(params["p"], params["n"])]
        if check == "dflst":
            return list(verify_dflst_pair(params["n"], params["p"]))
        raise ConfigError(f"unknown check id {check!r}")
    except (HypercongError, ZeroDivisionError):
        if not tagged:
            raise
        # Exploratory tuple the evaluators cannot even express: record the
        # attempt rather than dropping the grid point.
        return [
            CongruenceReport(check, params, _REQUIRED_ORD[check], None, None,
                             Verdict.HYPOTHESIS_VIOLATED)
        ]


def _sort_key(report: CongruenceReport):
    p = report.params
    return (report.check_id, p.get("n", 0), p.get("q", 0), p.get("d", 0), p.get("p", 0))


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Expand the grid, run every check, and return sorted reports + summary."""
    spec.validate()
    units = _expand_units(spec)
    if not units:
        raise ConfigError("the requested grid expands to no work units")
    if spec.parallelism > 1 and len(units) > 1:
        chunksize = max(1, len(units) // (spec.parallelism * 8))
        with ProcessPoolExecutor(max_workers=spec.parallelism) as pool:
            batches = list(pool.map(_run_unit, units, chunksize=chunksize))
    else:
        batches = [_run_unit(u) for u in units]
    reports = sorted((r for batch in batches for r in batch), key=_sort_key)
    summary = {v.value: 0 for v in Verdict}
    for r in reports:
        summary[r.verdict.value] += 1
    return SweepResult(spec, tuple(reports), summary)


def _ord_to_wire(value):
    if value is None:
        return None
    if value == math.inf:
        return "inf"
    return int(value)


def _report_row(report: CongruenceReport) -> dict:
    residue = report.residue_at_required
    return {
        "check_id": report.check_id,
        "params": {k: int(v) for k, v in report.params.items()},
        "required_ord": _ord_to_wire(report.required_ord),
        "achieved_ord": _ord_to_wire(report.achieved_ord),
        "residue": str(residue.value) if residue is not None else None,
        "verdict": report.verdict.value,
    }


def render_json(result: SweepResult) -> str:
    # parallelism and output destination are execution details; leaving them
    # out keeps output byte-identical across parallelism levels.
    spec = result.spec
    payload = {
        "spec": {
            "checks": list(spec.check_ids),
            "n_range": list(spec.n_range),
            "q_range": list(spec.q_range),
            "d_range": list(spec.d_range),
            "p_max": spec.p_max,
            "exploratory": spec.exploratory,
        },
        "reports": [_report_row(r) for r in result.reports],
        "summary": result.summary,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


CSV_COLUMNS = ("check_id", "n", "q", "d", "p", "required_ord", "achieved_ord",
               "residue", "verdict")


def render_csv(result: SweepResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in result.reports:
        residue = r.residue_at_required
        writer.writerow(
            [
                r.check_id,
                r.params.get("n", ""),
                r.params.get("q", ""),
                r.params.get("d", ""),
                r.params.get("p", ""),
                _ord_to_wire(r.required_ord),
                "" if r.achieved_ord is None else _ord_to_wire(r.achieved_ord),
                "" if residue is None else str(residue.value),
                r.verdict.value,
            ]
        )
    return buffer.getvalue()


def _format_report(r: CongruenceReport) -> str:
    params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
    req = _ord_to_wire(r.required_ord)
    ach = "-" if r.achieved_ord is None else _ord_to_wire(r.achieved_ord)
    residue = r.residue_at_required
    res = "-" if residue is None else residue.value
    return (
        f"{r.check_id} [{params}] verdict={r.verdict.value} "
        f"required_ord={req} achieved_ord={ach} residue={res}"
    )


def _parse_range(value) -> tuple[int, int]:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"range must have two endpoints, got {value!r}")
        return int(value[0]), int(value[1])
    if isinstance(value, int):
        return value, value
    text = str(value)
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        single = int(text)
        return single, single
    except ValueError:
        raise ConfigError(f"cannot parse range {value!r}; expected A..B") from None


def _parse_checks(value) -> tuple[str, ...]:
    if isinstance(value, str):
        parts = [c.strip() for c in value.split(",") if c.strip()]
    else:
        parts = [str(c) for c in value]
    return tuple(parts)


def _build_sweep_spec(args) -> SweepSpec:
    settings = {
        "checks": None,
        "n": "3..6",
        "q": "1..3",
        "d": "4..8",
        "p_max": 50,
        "exploratory": False,
        "parallel": 1,
        "format": "json",
        "out": None,
    }
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(loaded) - set(settings)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        settings.update(loaded)
    # explicit flags override the file
    for key, flag in (
        ("checks", args.checks),
        ("n", args.n),
        ("q", args.q),
        ("d", args.d),
        ("p_max", args.p_max),
        ("exploratory", args.exploratory),
        ("parallel", args.parallel),
        ("format", args.format),
        ("out", args.out),
    ):
        if flag is not None:
            settings[key] = flag
    if not settings["checks"]:
        raise ConfigError("no checks requested; pass --checks or a config file")
    return SweepSpec(
        check_ids=_parse_checks(settings["checks"]),
        n_range=_parse_range(settings["n"]),
        q_range=_parse_range(settings["q"]),
        d_range=_parse_range(settings["d"]),
        p_max=int(settings["p_max"]),
        exploratory=bool(settings["exploratory"]),
        parallelism=int(settings["parallel"]),
        output_format=str(settings["format"]),
        output_path=settings["out"],
    )


def _cmd_sweep(args) -> int:
    spec = _build_sweep_spec(args)
    result = run_sweep(spec)
    text = render_json(result) if spec.output_format == "json" else render_csv(result)
    if spec.output_path:
        with open(spec.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


def _cmd_verify(args) -> int:
    check = args.check
    if check not in CHECK_NAMES:
        raise ConfigError(f"unknown check id {check!r}; choose from {', '.join(CHECK_NAMES)}")

    def need(name):
        value = getattr(args, name)
        if value is None:
            raise ConfigError(f"check {check!r} requires --{name}")
        return value

    if check in _TRIPLE_CHECKS:
        tp = TheoremParams(need("n"), need("q"), need("p"), exploratory=args.exploratory)
        runner = {
            "theorem1": lambda: [verify_theorem1(tp)],
            "theorem2": lambda: [verify_theorem2(tp)],
            "lemmas": lambda: verify_lemma_suite(tp),
            "taylor": lambda: verify_taylor(tp),
            "identities": lambda: verify_exact_identities(tp),
        }[check]
        reports = runner()
    elif check == "guo":
        reports = [verify_guo(need("d"), need("p"))]
    elif check == "sun-e":
        reports = [verify_sun_e(need("p"))]
    elif check == "sun-bernoulli":
        reports = [verify_sun_bernoulli(need("p"), need("n"))]
    else:
        reports = list(verify_dflst_pair(need("n"), need("p")))
    for r in reports:
        print(_format_report(r))
    bad = (Verdict.FAILS, Verdict.ILL_POSED)
    return 1 if any(r.verdict in bad for r in reports) else 0


def _cmd_primes(args) -> int:
    if args.limit < 2:
        raise ConfigError(f"limit must be at least 2, got {args.limit}")
    for p in primes_upto(args.limit):
        print(p)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercong",
        description="Exact verification of truncated hypergeometric supercongruences.",
        epilog=(
            "Environment: HYPERCONG_MORITA_CAP overrides the p^k <= 10^7 cap on "
            "Morita Gamma precision."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run one check on one parameter tuple")
    p_verify.add_argument("check", help=f"one of: {', '.join(CHECK_NAMES)}")
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--q", type=int)
    p_verify.add_argument("--p", type=int)
    p_verify.add_argument("--d", type=int)
    p_verify.add_argument("--exploratory", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run checks over a parameter grid")
    p_sweep.add_argument("--checks", help="comma-separated check ids")
    p_sweep.add_argument("--n", help="range A..B for the exponent n")
    p_sweep.add_argument("--q", help="range A..B for the shift q")
    p_sweep.add_argument("--d", help="range A..B for the even degree d")
    p_sweep.add_argument("--p-max", dest="p_max", type=int)
    p_sweep.add_argument("--exploratory", action="store_true", default=None)
    p_sweep.add_argument("--parallel", type=int)
    p_sweep.add_argument("--format", choices=("json", "csv"))
    p_sweep.add_argument("--out", help="output path (default: stdout)")
    p_sweep.add_argument("--config", help="JSON config file; flags override it")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_primes = sub.add_parser("primes", help="emit all primes up to a limit")
    p_primes.add_argument("limit", type=int)
    p_primes.set_defaults(func=_cmd_primes)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, HypercongError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
