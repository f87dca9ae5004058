"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 a mathematical finding
(an integrality violation or a failed verification check).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2
FORMATS = ("tsv", "json", "md")
MAX_DEFAULT_N = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    family: str = "columns"
    method: str = "auto"
    type_label: str | None = None
    orbit: str | None = None
    fmt: str = "tsv"
    cache_dir: Path | None = None
    jobs: int = 1
    allow_large: bool = False
    allow_long: bool = False
    suite: str | None = None
    output: Path | None = None


def default_cache_dir() -> Path:
    env = os.environ.get("SHUFFLE_SPECTRA_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "shuffle-spectra"


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


# -- spectra --------------------------------------------------------------------

def cmd_spectra(cfg: RunConfig) -> int:
    if cfg.type_label == "type-a":
        return _spectra_type_a(cfg)
    return _spectra_rank_one(cfg)


def _spectra_type_a(cfg: RunConfig) -> int:
    from . import operators as op
    n = cfg.n
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    if n > MAX_DEFAULT_N and not cfg.allow_large:
        raise UsageError(f"n = {n} exceeds {MAX_DEFAULT_N}; pass --allow-large")
    if n > 8:
        raise UsageError("tables are supported up to n = 8")
    try:
        table = op.simultaneous_tables(n, cfg.family, cfg.method)
    except op.IntegralityViolation as exc:
        print(f"integrality violation: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except op.BudgetError as exc:
        raise UsageError(str(exc)) from None
    if cfg.fmt == "json":
        _emit(_dump(table.to_json()), cfg)
    elif cfg.fmt == "md":
        _emit(table.to_markdown(), cfg)
    else:
        _emit(table.to_tsv(), cfg)
    for row in table.rows:
        if row.warning:
            print(f"warning: {row.warning}: {[str(e) for e in row.eigenvalues]}", file=sys.stderr)
    if table.violations:
        for v in table.violations:
            print(f"integrality violation: {v}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def _rank_one_row(item):
    from . import reflection_arrangements as ra
    label, sel = item
    fp = ra.rank_one_charpoly(label, sel)
    return label, sel, fp.text


def _rank_one_items(cfg: RunConfig):
    from . import reflection_arrangements as ra
    if cfg.type_label in (None, "rank-one"):
        items = list(ra.DEFAULT_RANK_ONE_TYPES)
        if cfg.allow_long:
            items += ra.LONG_RANK_ONE_TYPES
        if cfg.orbit:
            raise UsageError("--orbit needs --type")
        return items
    label = cfg.type_label
    family, rank = ra.parse_type(label)
    if family == "E" and rank in (7, 8) and not cfg.allow_long:
        raise UsageError(f"{label} needs --allow-long")
    rs = ra.build_root_system(label)
    if cfg.orbit:
        return [(rs.label, cfg.orbit)]
    return [(rs.label, o.label) for o in ra.hyperplane_orbits(rs)]


def _spectra_rank_one(cfg: RunConfig) -> int:
    try:
        items = _rank_one_items(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        if cfg.jobs > 1 and len(items) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                rows = list(pool.map(_rank_one_row, items))
        else:
            rows = [_rank_one_row(it) for it in items]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.fmt == "json":
        _emit(_dump({"schema": 1, "rows": [{"type": t, "orbit": o, "charpoly": c} for t, o, c in rows]}), cfg)
    elif cfg.fmt == "md":
        lines = ["| type | orbit | factored characteristic polynomial |", "|---|---|---|"]
        lines += [f"| {t} | {o} | {c} |" for t, o, c in rows]
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit("".join(f"{t}\t{o}\t{c}\n" for t, o, c in rows), cfg)
    return EXIT_OK


# -- verify -----------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _suite_factorizations(n: int) -> list[Check]:
    from . import exact_linalg as xl
    from . import operators as op
    from .perm_core import partitions
    out = []
    if n > 6:
        raise UsageError("factorizations suite supports n <= 6")
    lams = partitions(n)
    if n == 6:
        lams = random.Random(0).sample(lams, min(10, len(lams)))
    for lam in lams:
        label = "".join(map(str, lam))
        nu = op.nu_matrix(lam)
        p = op.pi_matrix(lam)
        out.append(Check(f"nu = pi^T pi [{label}]", p.transpose() * p == nu))
        up, down, nx = op.coset_square_root(lam)
        out.append(Check(f"nu = R^X XR / n_X [{label}]", up * down * Fraction(1, nx) == op.nu_element(lam)))
        if n <= 5:
            b = op.bhr_matrix(lam)
            out.append(Check(f"BHR operator = right multiplication by R^X [{label}]",
                             b == up.right_multiplication_matrix()))
            out.append(Check(f"ker nu = ker BHR [{label}]", xl.kernel_basis(nu) == xl.kernel_basis(b)))
    return out


def _suite_commutativity(n: int) -> list[Check]:
    from . import operators as op
    out = []
    for fam in op.FAMILIES:
        if n <= 6:
            out.append(Check(f"{fam} family commutes (dense, n={n})", op.family_commutes_dense(n, fam)))
        out.append(Check(f"{fam} family commutes (Fourier blocks, n={n})", op.family_commutes_blocks(n, fam)))
    return out


def _suite_integrality(n: int) -> list[Check]:
    from . import operators as op
    out = []
    for fam in op.FAMILIES:
        try:
            t = op.simultaneous_tables(n, fam, "fourier")
            out.append(Check(f"{fam} spectrum integral (n={n})", not t.violations, "; ".join(t.violations)))
        except op.IntegralityViolation as exc:
            out.append(Check(f"{fam} spectrum integral (n={n})", False, str(exc)))
    return out


def _suite_filtration(n: int) -> list[Check]:
    from . import operators as op
    r = op.kernel_filtration(n)
    return [Check(f"kernels nested (n={n})", r.nested),
            Check(f"factor dims C(n,j) d_(n-j) (n={n})", r.factor_dims == r.predicted_dims, str(r.factor_dims)),
            Check(f"w0 split C(n,j) d+-_(n-j) (n={n})", r.factor_sign_dims == r.predicted_sign_dims,
                  str(r.factor_sign_dims))]


def _suite_tableaux(n: int) -> list[Check]:
    from . import operators as op
    from .tableaux import predicted_factor
    table = op.simultaneous_tables(n, "columns", "fourier")
    got = op.factor_content(table)
    return [Check(f"tableaux prediction level j={j} (n={n})", got[j] == predicted_factor(n, j))
            for j in range(n + 1)]


def _suite_gelfand_model(n: int) -> list[Check]:
    from . import operators as op
    ok, content = op.gelfand_model_check(n)
    return [Check(f"two-block levels give each shape once (n={n})", ok, str(content))]


def _suite_brown(n: int) -> list[Check]:
    from . import exact_linalg as xl
    from . import operators as op
    if n > 5:
        raise UsageError("brown suite supports n <= 5")
    rng = random.Random(n)
    out = []
    for trial in range(20):
        w = op.random_invariant_weights(n, rng)
        mp = op.brown_min_poly(w, n)
        roots, residual, _ = xl.factor_rational_roots(mp)
        allowed = op.face_semigroup_eigenvalues(w, n)
        ok = xl.is_squarefree(mp) and residual.degree() == 0 and {r for r, _ in roots} <= allowed
        out.append(Check(f"random weights #{trial} (n={n})", ok))
    return out


def _suite_eulerian(n: int) -> list[Check]:
    from . import operators as op
    from .perm_core import longest_element
    es = op.eulerian_idempotents(n)
    zero = op.GroupAlgebraElement(n)
    total, alt = zero, zero
    for j, e in enumerate(es, start=1):
        total = total + e
        alt = alt + (-1) ** j * e
    orth = all(a * b == (a if i == j else zero) for i, a in enumerate(es) for j, b in enumerate(es))
    return [Check(f"sum e_j = 1 (n={n})", total == op.GroupAlgebraElement.identity(n)),
            Check(f"alternating sum = (-1)^n w0 (n={n})",
                  alt == (-1) ** n * op.GroupAlgebraElement.basis(longest_element(n))),
            Check(f"orthogonal idempotents (n={n})", orth)]


def _suite_gessel_reutenauer(n: int) -> list[Check]:
    from .perm_core import gessel_reutenauer_check, partitions
    out = []
    for lam in partitions(n):
        ok, mono = gessel_reutenauer_check(lam, n, n)
        out.append(Check(f"Lyndon words vs descent classes {lam}", ok, "" if ok else f"first mismatch {mono}"))
    return out


def _suite_derangements(n: int) -> list[Check]:
    from .perm_core import derangement_identities
    return [Check(name, ok) for name, ok in derangement_identities(max(n, 12)).items()]


def _suite_commuting_pairs(n: int) -> list[Check]:
    from . import operators as op
    r = op.commuting_pairs_scan(n)
    return [Check(f"commuting pairs match the two-family classification (n={n})", r.matches,
                  f"commuting={r.commuting}")]


def _suite_rank_one(n: int) -> list[Check]:
    from . import exact_linalg as xl
    from . import reflection_arrangements as ra
    out = []
    for label, sel in ra.DEFAULT_RANK_ONE_TYPES:
        rs = ra.build_root_system(label)
        o = ra.select_orbit(rs, sel)
        mu = ra.mu_minus_matrix(rs, o)
        out.append(Check(f"trace mu = |W||O|/2 [{label} {sel}]", Fraction(str(xl.trace(mu))) == Fraction(rs.order * len(o), 2)))
        if rs.crystallographic:
            r = ra.weyl_closed_forms(label, sel)
            out.append(Check(f"closed forms [{label} {sel}]", r.match))
    return out


def _suite_gelfand_pairs(n: int) -> list[Check]:
    from . import reflection_arrangements as ra
    out = []
    for label in ra.GELFAND_PAIR_TYPES:
        for r in ra.gelfand_pair_check(label):
            out.append(Check(f"multiplicity free [{r.label} {r.orbit}]", r.multiplicity_free,
                             f"commutant dim {r.commutant_dim}"))
    fp = ra.all_hyperplanes_charpoly("B2")
    out.append(Check("B2 all hyperplanes charpoly", fp.text == "(t^2-8t+8)^2 (t-16) t^3", fp.text))
    return out


SUITES = {
    "factorizations": _suite_factorizations,
    "commutativity": _suite_commutativity,
    "integrality": _suite_integrality,
    "filtration": _suite_filtration,
    "tableaux": _suite_tableaux,
    "gelfand-model": _suite_gelfand_model,
    "brown": _suite_brown,
    "eulerian": _suite_eulerian,
    "gessel-reutenauer": _suite_gessel_reutenauer,
    "derangements": _suite_derangements,
    "commuting-pairs": _suite_commuting_pairs,
    "rank-one": _suite_rank_one,
    "gelfand-pairs": _suite_gelfand_pairs,
}


def cmd_verify(cfg: RunConfig) -> int:
    n = 4 if cfg.n is None else cfg.n
    if n < 1:
        raise UsageError("--n must be positive")
    if n > MAX_DEFAULT_N and not cfg.allow_large:
        raise UsageError(f"n = {n} exceeds {MAX_DEFAULT_N}; pass --allow-large")
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    results = []
    for name in names:
        checks = SUITES[name](n)
        results.append({"suite": name, "passed": all(c.passed for c in checks),
                        "checks": [{"name": c.name, "passed": c.passed, **({"detail": c.detail} if c.detail else {})}
                                   for c in checks]})
    passed = all(r["passed"] for r in results)
    report = {"schema": 1, "n": n, "passed": passed, "suites": results}
    if cfg.fmt == "json":
        _emit(_dump(report), cfg)
    else:
        lines = []
        for r in results:
            for c in r["checks"]:
                lines.append(f"{'PASS' if c['passed'] else 'FAIL'}\t{r['suite']}\t{c['name']}")
        lines.append(f"{'PASS' if passed else 'FAIL'}\toverall")
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK if passed else EXIT_FINDING


# -- cache ---------------------------------------------------------------------------

def cmd_cache(cfg: RunConfig) -> int:
    from . import sn_characters as snc
    from .perm_core import partition_label
    d = cfg.cache_dir or default_cache_dir()
    action = cfg.suite
    try:
        if action == "build":
            if cfg.n is None or cfg.n < 1:
                raise UsageError("cache build needs --n")
            if cfg.n > MAX_DEFAULT_N + 2:
                raise UsageError("cache build supports n <= 8")
            for path in snc.build_cache(d, cfg.n):
                print(path)
        elif action == "inspect":
            if cfg.n is None:
                raise UsageError("cache inspect needs --n")
            for lam, dim in snc.inspect_cache(d, cfg.n):
                print(f"{partition_label(lam)}\t{dim}")
        elif action == "clear":
            count = snc.clear_cache(d)
            print(f"removed {count} files from {d}", file=sys.stderr)
        else:
            raise UsageError(f"unknown cache action {action!r}")
    except (OSError, ValueError) as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shuffle-spectra", description="Spectra of shuffling operators on symmetric groups "
                                                      "and rank-one operators of reflection arrangements.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectra", help="eigenspace tables and factored characteristic polynomials")
    spsub = sp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ta = spsub.add_parser("type-a", help="simultaneous eigenspace table for an operator family on Q S_n")
    ta.add_argument("--n", type=int, required=True)
    ta.add_argument("--family", choices=("columns", "two-blocks"), default="columns")
    ta.add_argument("--method", choices=("auto", "full", "fourier"), default="auto")
    ro = spsub.add_parser("rank-one", help="factored characteristic polynomials of mu_O")
    ro.add_argument("--type", dest="type_label", default=None, help='e.g. "A3", "B4", "H3", "I2(7)"')
    ro.add_argument("--orbit", default=None, help="short, long, all, or orbitK")
    ro.add_argument("--allow-long", action="store_true", help="include or allow E7 and E8")
    for q in (ta, ro):
        q.add_argument("--format", dest="fmt", choices=FORMATS, default="tsv")
        q.add_argument("--output", type=Path, default=None)
        q.add_argument("--jobs", type=int, default=1)
    ta.add_argument("--allow-large", action="store_true", help="permit n > 6")

    vp = sub.add_parser("verify", help="run verification suites")
    vp.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}, or all")
    vp.add_argument("--n", type=int, default=None)
    vp.add_argument("--format", dest="fmt", choices=("text", "json"), default="json")
    vp.add_argument("--output", type=Path, default=None)
    vp.add_argument("--allow-large", action="store_true")
    vp.add_argument("--jobs", type=int, default=1)

    cp = sub.add_parser("cache", help="build, inspect or clear representation caches")
    cp.add_argument("action", choices=("build", "inspect", "clear"))
    cp.add_argument("--n", type=int, default=None)
    cp.add_argument("--dir", type=Path, default=None, help="defaults to $SHUFFLE_SPECTRA_CACHE")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if args.command == "spectra":
        cfg.fmt, cfg.output, cfg.jobs = args.fmt, args.output, args.jobs
        if args.kind == "type-a":
            cfg.type_label, cfg.n, cfg.family = "type-a", args.n, args.family
            cfg.method, cfg.allow_large = args.method, args.allow_large
        else:
            cfg.type_label = args.type_label or "rank-one"
            cfg.orbit, cfg.allow_long = args.orbit, args.allow_long
    elif args.command == "verify":
        cfg.suite, cfg.n, cfg.fmt, cfg.output = args.suite, args.n, args.fmt, args.output
        cfg.allow_large, cfg.jobs = args.allow_large, args.jobs
    else:
        cfg.suite, cfg.n, cfg.cache_dir = args.action, args.n, args.dir
    if cfg.jobs < 1:
        raise UsageError("--jobs must be positive")
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.command == "spectra":
            return cmd_spectra(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_cache(cfg)
    except UsageError as exc:
        print(f"shuffle-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
