"""Command-line front end: ``blockforest {count,unlabeled,prufer,virial,oracle,selftest}``.

Exit codes: 0 success, 2 usage, 3 domain error, 4 internal-consistency failure.
JSON output writes exact integers as strings; TSV has a header row.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from . import labeled, mayer, oracle, prufer, selftest, unlabeled
from .algebra import DEFAULT_ORDER, WeightPoly
from .errors import BlockforestError, ConsistencyError, OracleLimitError
from .labeled import BlockSizeDistribution, CountTable

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONSISTENCY = 0, 2, 3, 4
MAX_ORDER = 40


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated invocation; defaults: tsv, order 12, precision 30, alpha = pi."""

    command: str
    species: Optional[str] = None
    n: Optional[int] = None
    format: str = "tsv"
    oracle_limit: Optional[int] = None
    precision: int = mayer.DEFAULT_PRECISION
    alpha: Optional[str] = None
    marker_truncation: Optional[int] = None
    by_distribution: bool = False
    weighted: bool = False
    rooted: bool = False
    unlabeled: bool = False
    action: Optional[str] = None
    input: Optional[str] = None
    level: str = "fast"

    def validate(self):
        if self.format not in ("tsv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.n is not None and self.n < 1:
            raise UsageError(f"n must be a positive integer, got {self.n}")
        if self.command == "unlabeled" and self.n is not None and self.n > MAX_ORDER:
            raise UsageError(f"order above {MAX_ORDER} is not supported")
        if self.command == "virial" and self.n is not None and self.n < 2:
            raise UsageError("virial needs n_max >= 2")
        if self.oracle_limit is not None and self.oracle_limit < 1:
            raise UsageError("--oracle-limit must be positive")
        if self.marker_truncation is not None and self.marker_truncation < 2:
            raise UsageError("--marker-truncation must be at least 2")
        if not 1 <= self.precision <= mayer.MAX_PRECISION:
            raise UsageError(f"--precision must lie in [1, {mayer.MAX_PRECISION}]")
        if self.weighted and self.species != "oriented":
            raise UsageError("--weighted is only available for oriented cacti")
        if self.rooted and not self.unlabeled:
            raise UsageError("--rooted applies to --unlabeled oracle counts")
        if self.alpha is not None:
            parse_alpha(self.alpha)
        return self


_ALPHA = re.compile(
    r"^\s*(?P<coef>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)?\s*\*?\s*(?P<pi>pi|π)?\s*"
    r"(?:/\s*(?P<den>[0-9]*\.?[0-9]+))?\s*$"
)


def parse_alpha(text: str, digits: int = mayer.DEFAULT_PRECISION):
    """``4pi``, ``4*pi``, ``π/2``, ``2.5`` as an mpf carrying ``digits`` plus guard digits."""
    with mpmath.workdps(digits + 20):
        return _parse_alpha(text)


def _parse_alpha(text: str):
    m = _ALPHA.match(text)
    if not m or not (m.group("coef") or m.group("pi")):
        raise UsageError(f"cannot parse alpha {text!r}; use forms like 4pi, pi/2 or 2.5")
    val = mpmath.mpf(m.group("coef") or 1)
    if m.group("pi"):
        val *= mpmath.pi
    if m.group("den"):
        val /= mpmath.mpf(m.group("den"))
    if val <= 0:
        raise UsageError("alpha must be positive")
    return val


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _dist_json(d: BlockSizeDistribution) -> dict[str, str]:
    return {str(i): str(c) for i, c in d.counts}


def _table_json(t: CountTable) -> list[dict]:
    return [{"distribution": _dist_json(d), "label": str(d), "count": str(c)} for d, c in t.rows]


def _tsv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["\t".join(header)] + ["\t".join(str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _frac(q: Fraction) -> str:
    return str(q)


def _sci(x) -> str:
    return mpmath.nstr(x, 3) if x != 0 else "0"


def _num(x, precision: int) -> str:
    return mpmath.nstr(x, precision, min_fixed=-mpmath.inf, max_fixed=mpmath.inf) if x != 0 else "0"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_count(cfg: RunConfig) -> str:
    s, n = cfg.species, cfg.n
    if cfg.by_distribution:
        t = labeled.distribution_table(s, n)
        if cfg.format == "json":
            return _json({"command": "count", "species": s, "n": str(n), "total": str(t.total), "rows": _table_json(t)})
        return _tsv(["distribution", "count"], [(str(d), c) for d, c in t.rows])
    total = labeled.labeled_total(s, n)
    if cfg.format == "json":
        return _json({"command": "count", "species": s, "n": str(n), "total": str(total)})
    return _tsv(["species", "n", "count"], [(s, n, total)])


def _int(c) -> int:
    c = Fraction(c)
    if c.denominator != 1:
        raise ConsistencyError(f"non-integer count {c}")
    return int(c)


def cmd_unlabeled(cfg: RunConfig) -> str:
    s = cfg.species
    N = cfg.n if cfg.n is not None else DEFAULT_ORDER
    b = unlabeled.bundle(s, N)
    if not cfg.weighted:
        rows = []
        for n in range(1, N + 1):
            r, u = b.rooted[n], b.unrooted[n]
            if isinstance(r, WeightPoly):
                r, u = r.at_ones(), u.at_ones()
            rows.append((n, _int(r), _int(u)))
        if cfg.format == "json":
            return _json({
                "command": "unlabeled", "species": s, "order": str(N),
                "rows": [{"n": str(n), "rooted": str(r), "unrooted": str(u)} for n, r, u in rows],
            })
        return _tsv(["n", "rooted", "unrooted"], rows)
    trunc = cfg.marker_truncation or N
    rows = []
    for n in range(1, N + 1):
        r = unlabeled.weight_table(b.rooted[n].truncate_markers(trunc), n).as_dict()
        u = unlabeled.weight_table(b.unrooted[n].truncate_markers(trunc), n).as_dict()
        for d in sorted(set(r) | set(u), key=BlockSizeDistribution.sort_key, reverse=True):
            rows.append((n, d, r.get(d, 0), u.get(d, 0)))
    if cfg.format == "json":
        return _json({
            "command": "unlabeled", "species": s, "order": str(N), "marker_truncation": str(trunc),
            "weighted_rows": [
                {"n": str(n), "monomial": _monomial(d), "distribution": _dist_json(d),
                 "rooted": str(r), "unrooted": str(u)}
                for n, d, r, u in rows
            ],
        })
    return _tsv(["n", "monomial", "rooted", "unrooted"], [(n, _monomial(d), r, u) for n, d, r, u in rows])


def _monomial(d: BlockSizeDistribution) -> str:
    if not d.counts:
        return "1"
    return "*".join(f"y{i}" if c == 1 else f"y{i}^{c}" for i, c in d.counts)


def cmd_prufer(cfg: RunConfig) -> str:
    text = cfg.input if cfg.input is not None else sys.stdin.read()
    fn = prufer.encode_text if cfg.action == "encode" else prufer.decode_text
    out = fn(text)
    if cfg.format == "json":
        key = "codes" if cfg.action == "encode" else "graphs"
        lines = out.split("\n") if out else []
        return _json({"command": "prufer", "action": cfg.action, key: lines})
    return out + "\n" if out else ""


def _terms(cs: mayer.ClusterSum) -> list[dict[str, str]]:
    # grouped by spanning-tree count gamma, increasing
    return [{"gamma": str(g), "coefficient": _frac(m)} for g, m in cs.grouped().items()]


def cmd_virial(cfg: RunConfig) -> str:
    n_max, prec = cfg.n, cfg.precision
    limit = cfg.oracle_limit if cfg.oracle_limit is not None else oracle.oracle_limit()
    if n_max > limit:
        raise OracleLimitError(f"refusing virial n_max={n_max} above the oracle limit {limit}")
    alpha = parse_alpha(cfg.alpha, prec) if cfg.alpha is not None else None
    coeffs = []
    for n in range(2, n_max + 1):
        beta = mayer.two_connected_weight_sum(n, limit)
        gamma = beta.scaled(Fraction(-(n - 1), mayer.factorial(n)))
        coeffs.append({
            "n": str(n),
            "two_connected_graphs": str(beta.graphs),
            "beta_by_gamma": _terms(beta),
            "virial_by_gamma": _terms(gamma),
            "virial_exact": f"({gamma.exact()}) * u^{n - 1}",
            "virial": _num(gamma.evaluate(alpha, prec), prec),
            "error_bound": _sci(gamma.error_bound(alpha, prec)),
        })
    r = mayer.verify_density_fixed_point(n_max, prec, alpha, limit=limit)
    residual = max(r["density_residual"], r["virial_residual"])
    agree = r["density_agree"] and r["virial_agree"] and residual < mpmath.mpf("1e-12")
    with mpmath.workdps(prec):
        u = mayer.reduced_volume(alpha)
    report = {
        "command": "virial",
        "n_max": str(n_max),
        "precision": str(prec),
        "alpha": "pi" if cfg.alpha is None else cfg.alpha,
        "u": _num(u, prec),
        "coefficients": coeffs,
        "verification": {
            "density_fixed_point_exact": r["density_agree"],
            "virial_reversion_exact": r["virial_agree"],
            "density_residual": _sci(r["density_residual"]),
            "virial_residual": _sci(r["virial_residual"]),
            "max_residual": _sci(residual),
            "verdict": "agree" if agree else "disagree",
        },
    }
    if not agree:
        cfg._failed = True  # type: ignore[attr-defined]
    if cfg.format == "json":
        return _json(report)
    rows = [(c["n"], c["two_connected_graphs"], ",".join(f'{t["gamma"]}:{t["coefficient"]}' for t in c["beta_by_gamma"]),
             c["virial_exact"], c["virial"], c["error_bound"], report["verification"]["verdict"]) for c in coeffs]
    return _tsv(["n", "two_connected_graphs", "beta_by_gamma", "virial_exact", "virial", "error_bound", "verdict"], rows)


def cmd_oracle(cfg: RunConfig) -> str:
    s, n = cfg.species, cfg.n
    limit = cfg.oracle_limit
    if cfg.unlabeled:
        method = "exhaustive" if n <= min(6, limit or oracle.oracle_limit()) else "extension"
        if method == "extension" and n > oracle.DEFAULT_EXTENSION_LIMIT:
            raise OracleLimitError(f"n={n} exceeds the extension-generation limit {oracle.DEFAULT_EXTENSION_LIMIT}")
        result = oracle.count_unlabeled(s, n, rooted=cfg.rooted, by_distribution=cfg.by_distribution,
                                        method=method, limit=limit if method == "exhaustive" else None)
    elif cfg.by_distribution:
        result = oracle.count_labeled_by_distribution(s, n, limit)
    else:
        result = oracle.count_labeled(s, n, limit)
    kind = ("unlabeled" if cfg.unlabeled else "labeled") + ("-rooted" if cfg.rooted else "")
    if isinstance(result, CountTable):
        if cfg.format == "json":
            return _json({"command": "oracle", "species": s, "n": str(n), "kind": kind,
                          "total": str(result.total), "rows": _table_json(result)})
        return _tsv(["distribution", "count"], [(str(d), c) for d, c in result.rows])
    if cfg.format == "json":
        return _json({"command": "oracle", "species": s, "n": str(n), "kind": kind, "total": str(result)})
    return _tsv(["species", "n", "kind", "count"], [(s, n, kind, result)])


def cmd_selftest(cfg: RunConfig) -> str:
    results = selftest.run(cfg.level, cfg.oracle_limit)
    cfg._failed = not all(r.passed for r in results)  # type: ignore[attr-defined]
    if cfg.format == "json":
        return _json({
            "command": "selftest", "level": cfg.level,
            "passed": all(r.passed for r in results),
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        })
    return _tsv(["check", "status", "detail"], [(r.name, "PASS" if r.passed else "FAIL", r.detail) for r in results])


COMMANDS = {
    "count": cmd_count,
    "unlabeled": cmd_unlabeled,
    "prufer": cmd_prufer,
    "virial": cmd_virial,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# Parsing and dispatch
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--oracle-limit", type=int, default=None,
                   help="largest n for exhaustive enumeration (env BLOCKFOREST_ORACLE_LIMIT, default 7)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="blockforest", description="Exact enumeration of Husimi graphs and cacti, with oracles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="labelled counts from closed formulas")
    c.add_argument("species", choices=labeled.SPECIES)
    c.add_argument("n", type=int)
    c.add_argument("--by-distribution", action="store_true")
    _common(c)

    u = sub.add_parser("unlabeled", help="unlabelled rooted and unrooted counts up to order N")
    u.add_argument("species", choices=unlabeled.UNLABELED_SPECIES)
    u.add_argument("n", type=int, nargs="?", default=None, metavar="N")
    u.add_argument("--order", type=int, default=None, help="same as N")
    u.add_argument("--weighted", action="store_true", help="y-monomial breakdown (oriented only)")
    u.add_argument("--marker-truncation", type=int, default=None)
    _common(u)

    pr = sub.add_parser("prufer", help="encode Husimi graphs or decode codes, one per line")
    pr.add_argument("action", choices=("encode", "decode"))
    pr.add_argument("input", nargs="?", default=None, help="text to convert (default: stdin)")
    _common(pr)

    v = sub.add_parser("virial", help="Gaussian-model virial coefficients with dual-route verification")
    v.add_argument("n", type=int, metavar="N_MAX")
    v.add_argument("--alpha", default=None, help="Gaussian range parameter, e.g. 4pi (default pi)")
    v.add_argument("--precision", type=int, default=mayer.DEFAULT_PRECISION, help="decimal digits")
    _common(v)

    o = sub.add_parser("oracle", help="brute-force counts by enumeration")
    o.add_argument("species", choices=oracle.ORACLE_SPECIES)
    o.add_argument("n", type=int)
    o.add_argument("--unlabeled", action="store_true")
    o.add_argument("--rooted", action="store_true")
    o.add_argument("--by-distribution", action="store_true")
    _common(o)

    s = sub.add_parser("selftest", help="run the invariant suite")
    s.add_argument("--level", choices=("fast", "full"), default="fast")
    _common(s)
    return p


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    n = getattr(ns, "n", None)
    order = getattr(ns, "order", None)
    if order is not None:
        if n is not None and n != order:
            raise UsageError("N and --order disagree")
        n = order
    return RunConfig(
        command=ns.command,
        species=getattr(ns, "species", None),
        n=n,
        format=ns.format,
        oracle_limit=ns.oracle_limit,
        precision=getattr(ns, "precision", mayer.DEFAULT_PRECISION),
        alpha=getattr(ns, "alpha", None),
        marker_truncation=getattr(ns, "marker_truncation", None),
        by_distribution=getattr(ns, "by_distribution", False),
        weighted=getattr(ns, "weighted", False),
        rooted=getattr(ns, "rooted", False),
        unlabeled=getattr(ns, "unlabeled", False),
        action=getattr(ns, "action", None),
        input=getattr(ns, "input", None),
        level=getattr(ns, "level", "fast"),
    ).validate()


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(argv)
    except UsageError as e:
        stderr.write(f"blockforest: usage error: {e}\n")
        return EXIT_USAGE
    try:
        out = COMMANDS[cfg.command](cfg)
    except ConsistencyError as e:
        stderr.write(f"blockforest: consistency failure: {e}\n")
        return EXIT_CONSISTENCY
    except UsageError as e:
        stderr.write(f"blockforest: usage error: {e}\n")
        return EXIT_USAGE
    except (BlockforestError, ValueError) as e:
        stderr.write(f"blockforest: error: {e}\n")
        return EXIT_DOMAIN
    stdout.write(out)
    if getattr(cfg, "_failed", False):
        stderr.write("blockforest: invariant check failed\n")
        return EXIT_CONSISTENCY
    return EXIT_OK


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
