"""Command-line front end.

Exit codes: 0 success, 1 invalid input (or a scan that found
counterexamples), 2 cost cap on a required computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds, families
from .annihilator import (
    DEFAULT_MAX_WORK,
    CostLimitError,
    ai_search,
    exact_ai,
)
from .bounds import Symmetry, SubsetBudgetError
from .core import (
    AffineForm,
    BooleanFunction,
    ZERO,
    autocorrelation_profile,
    format_anf,
    nonlinearity,
    parse_anf,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_COST = 2

FORMATS = ("hex", "anf", "vector", "orbits")

# published value vectors for sigma sums, keyed by (n, sigma indices)
PUBLISHED_SIGMA_VECTORS = {
    (15, (2, 4, 6, 10, 12, 14)): "0011111100000011",
}

SCAN_LIMITS = {"exhaustive-n": 4, "symmetric-n": 12, "rsbf-n": 10, "random": 12}
SCAN_CHECKS = ("ai-oracle", "ai-upper", "thm1-window", "nl-bound", "cert-sound", "cor4-sound", "cor2-window")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class FunctionInput:
    format: str
    payload: str
    n: int | None = None


def _warning(code: str, message: str, **data) -> dict:
    return {"code": code, "message": message, **data}


# ---------------------------------------------------------------------------
# Input / output


def parse_function(inp: FunctionInput) -> BooleanFunction:
    fmt, text, n = inp.format, inp.payload, inp.n
    if fmt == "hex":
        return BooleanFunction.from_hex(text, n)
    if fmt == "anf":
        if n is None:
            raise UsageError("--n is required for ANF input")
        return parse_anf(text, n).truth_table()
    if fmt == "vector":
        v = families.SimplifiedValueVector.parse(text)
        if n is not None and v.n != n:
            raise UsageError(f"value vector has n={v.n}, but --n {n} was given")
        return families.symmetric_expand(v)
    if fmt == "orbits":
        if n is None:
            raise UsageError("--n is required for orbit files")
        return families.rsbf_expand(families.parse_orbit_file(text, n))
    raise UsageError(f"unknown format {fmt!r}")


def serialize_function(f: BooleanFunction, fmt: str) -> str:
    if fmt == "hex":
        return f.to_hex()
    if fmt == "anf":
        return format_anf(f.anf())
    if fmt == "vector":
        return str(families.value_vector(f))
    if fmt == "orbits":
        return families.format_orbit_file(families.rsbf_spec_of(f))
    raise UsageError(f"unknown format {fmt!r}")


def _read_payload(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return fh.read()
    return arg


def _emit(obj: dict, output: str) -> None:
    if output == "json":
        print(json.dumps(obj, indent=2))
        return
    for key, value in obj.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}: {value}")


def _int_list(text: str) -> list[int]:
    return [int(x, 0) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# Certificates


def _auto_symmetry(f: BooleanFunction) -> Symmetry:
    if bounds.is_symmetric(f):
        return Symmetry.SYMMETRIC
    if bounds.is_rotation_symmetric(f):
        return Symmetry.ROTATION
    return Symmetry.GENERIC


def certificate_for(f: BooleanFunction, method: str, args) -> bounds.AiCertificate:
    """Run one certifier by its CLI name; raises on unmet preconditions."""
    if method == "thm2":
        return bounds.theorem2_certificate(f)
    if method == "cor4":
        return bounds.corollary4_bound(families.value_vector(f))
    if method == "coverage":
        sym = Symmetry(args.symmetry.upper()) if getattr(args, "symmetry", None) else _auto_symmetry(f)
        return bounds.coverage_certifier(f, sym, budget=getattr(args, "subset_budget", bounds.DEFAULT_SUBSET_BUDGET))
    if method == "cor1":
        form_text = getattr(args, "form", None) or "+".join(f"x{i + 1}" for i in range(f.n))
        p = parse_anf(form_text, f.n)
        if p.degree() != 1:
            raise UsageError("--form must be an affine form of degree 1")
        mask = sum(1 << (u.bit_length() - 1) for u in p.monomials() if u)
        form = AffineForm(mask, p.coeffs & 1)
        return bounds.corollary1_certificate(f, form)
    if method == "cor5":
        h_size = getattr(args, "h_size", None)
        if h_size is None:
            raise UsageError("cor5 needs --h-size")
        return bounds.corollary5_bound(f.n, h_size)
    raise UsageError(f"unknown certification method {method!r}")


# ---------------------------------------------------------------------------
# Commands


def analyze(f: BooleanFunction, *, exact=None, certify=None, budget=DEFAULT_MAX_WORK, args=None) -> dict:
    """Build the analysis report.

    ``exact`` is None (skip), True (full search) or a maximal degree.
    ``certify`` lists certifier names; None selects thm2, cor4 when symmetric
    and coverage, skipping any whose preconditions fail.
    """
    warnings = []
    deg = f.degree()
    delta, pc = autocorrelation_profile(f)
    symmetric = bounds.is_symmetric(f)
    report = {
        "n": f.n,
        "weight": f.weight,
        "balanced": f.is_balanced(),
        "degree": "ZERO" if deg is ZERO else deg,
        "nonlinearity": nonlinearity(f),
        "delta": delta,
        "pc_order": pc,
        "rotation_symmetric": bounds.is_rotation_symmetric(f),
        "symmetric": symmetric,
    }
    if exact is not None:
        d_max = None if exact is True else exact
        try:
            res = ai_search(f, d_max, max_work=budget)
        except CostLimitError as e:
            warnings.append(_warning("AI_COST_CAP", str(e)))
        else:
            if res is None:
                warnings.append(
                    _warning("AI_ABOVE_SEARCH", f"no annihilator of degree <= {d_max}", min_ai=d_max + 1)
                )
            else:
                report["ai_exact"] = res.ai
    explicit = certify is not None
    methods = certify if explicit else ["thm2", "cor4", "coverage"]
    if not explicit and not symmetric:
        methods = [m for m in methods if m != "cor4"]
    certs = []
    for m in methods:
        try:
            certs.append(certificate_for(f, m, args).to_dict())
        except SubsetBudgetError:
            if explicit:
                raise
            warnings.append(_warning("COVERAGE_SKIPPED", "coordinate subset count exceeds the budget"))
        except (bounds.NotSymmetricError, bounds.NotBalancedError) as e:
            if explicit:
                raise
            warnings.append(_warning("CERTIFIER_SKIPPED", str(e), method=m))
    report["ai_lower_bounds"] = certs
    if "ai_exact" in report:
        for c in certs:
            if c["bound"] > report["ai_exact"]:
                raise AssertionError(f"certificate {c['method']} exceeds the exact AI")
    report["warnings"] = warnings
    return report


def construct(family: str, args) -> dict:
    warnings = []
    record = {"family": family}
    cert = None
    if family == "majority":
        v = families.majority_vector(args.n)
        f = families.symmetric_expand(v)
        record["value_vector"] = str(v)
    elif family == "sigma-sum":
        ks = tuple(sorted(set(_int_list(args.k))))
        v = families.elementary_symmetric_sum(args.n, ks)
        f = families.symmetric_expand(v)
        record["value_vector"] = str(v)
        record["sigmas"] = list(ks)
        published = PUBLISHED_SIGMA_VECTORS.get((args.n, ks))
        if published is not None and published != str(v):
            pv = families.SimplifiedValueVector.parse(published)
            positions = [i for i in range(args.n + 1) if pv[i] != v[i]]
            warnings.append(
                _warning(
                    "PUBLISHED_VECTOR_MISMATCH",
                    "computed value vector differs from the published one for this sigma sum",
                    computed=str(v),
                    published=published,
                    positions=positions,
                    U_computed=bounds.corollary4_bound(v).evidence["U"],
                    U_published=bounds.corollary4_bound(pv).evidence["U"],
                )
            )
    elif family == "example2":
        v = families.example2_vector(args.n, args.i, weight0=args.weight0)
        f = families.symmetric_expand(v)
        t, claimed = families.example2_claimed_bound(args.n, args.i)
        cert = bounds.corollary4_bound(v)
        record["value_vector"] = str(v)
        record["claimed"] = {"t": t, "bound": claimed}
        if cert.bound < claimed:
            warnings.append(
                _warning(
                    "CLAIM_NOT_CERTIFIED",
                    "closed-form bound is below the claimed family bound for this weight-0 value",
                    claimed=claimed,
                    certified=cert.bound,
                    weight0=args.weight0,
                )
            )
    elif family == "corollary3":
        case = families.Corollary3Case.ODD if args.n % 2 else families.Corollary3Case.EVEN
        parity = bounds.ParityTail.ODD_PARITY_TAIL if args.parity == "odd" else bounds.ParityTail.EVEN_PARITY_TAIL
        low = [int(c) for c in (args.low or "0" * bounds.corollary3_threshold(args.n))]
        v = families.corollary3_vector(args.n, case, parity, low)
        f = families.symmetric_expand(v)
        record["value_vector"] = str(v)
        record["distances_to_parity"] = list(bounds.corollary3_distances(f))
    elif family == "orbit-swap":
        h = [families.orbit_of(args.n, r) for r in _int_list(args.h or "")]
        hp = [families.orbit_of(args.n, r) for r in _int_list(args.h_prime or "")]
        res = families.orbit_swap_construction(args.n, h, hp)
        f = res.function
        cert = res.certificate
        record["orbits_swapped"] = {
            "H": [{"representative": o.representative, "size": o.size} for o in res.h],
            "H_prime": [{"representative": o.representative, "size": o.size} for o in res.h_prime],
        }
        if cert.evidence.get("power_of_two_edge"):
            cov = bounds.coverage_certifier(f, Symmetry.ROTATION)
            warnings.append(
                _warning(
                    "CLOSED_FORM_EDGE",
                    "|H| is within one of a power of two; the closed form may overstate, use the coverage bound",
                    closed_form=cert.bound,
                    coverage=cov.bound,
                )
            )
    elif family == "even-balanced":
        f, imbalance = families.nearest_balanced_even_variant(args.n)
        record["imbalance"] = imbalance
        if imbalance:
            warnings.append(
                _warning("NOT_BALANCED", "no rotation-invariant choice on the middle weight balances f", imbalance=imbalance)
            )
    else:
        raise UsageError(f"unknown family {family!r}")
    if cert is None and bounds.is_symmetric(f):
        cert = bounds.corollary4_bound(families.value_vector(f))
    record["n"] = f.n
    record["format"] = args.emit
    record["function"] = serialize_function(f, args.emit)
    record["certificate"] = cert.to_dict() if cert else None
    record["warnings"] = warnings
    return record


def _scan_functions(mode: str, n: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    if mode == "exhaustive-n":
        for t in range(1 << (1 << n)):
            yield BooleanFunction(n, t)
    elif mode == "symmetric-n":
        for k in range(1 << (n + 1)):
            yield families.symmetric_expand(families.SimplifiedValueVector(n, tuple(k >> i & 1 for i in range(n + 1))))
    elif mode == "rsbf-n":
        for _ in range(count):
            yield families.random_rsbf(n, rng)
    elif mode == "random":
        for _ in range(count):
            yield BooleanFunction(n, int.from_bytes(rng.bytes(max(1, (1 << n) // 8)), "little") & ((1 << (1 << n)) - 1))
    else:
        raise UsageError(f"unknown scan mode {mode!r}")


def scan(mode: str, n: int, checks, *, count: int = 1000, seed: int = 0) -> dict:
    from . import oracle
    from .core import coordinate_subspace

    if mode not in SCAN_LIMITS:
        raise UsageError(f"unknown scan mode {mode!r}")
    if not 1 <= n <= SCAN_LIMITS[mode]:
        raise CostLimitError(f"{mode} scans are limited to n <= {SCAN_LIMITS[mode]}")
    checks = list(checks)
    for c in checks:
        if c not in SCAN_CHECKS:
            raise UsageError(f"unknown check {c!r}")
    oracle_ai = oracle.brute_force_ai_all(n) if "ai-oracle" in checks and mode == "exhaustive-n" else None
    if "ai-oracle" in checks and oracle_ai is None and n > oracle.BRUTE_FORCE_MAX_N:
        raise CostLimitError(f"the brute-force oracle is limited to n <= {oracle.BRUTE_FORCE_MAX_N}")
    t = bounds.half_up(n)
    bad = []
    checked = 0
    max_ai = 0
    subspaces = []
    if "cor2-window" in checks:
        for r in range(1, min(3, n - 1) + 1):
            for b in range(1 << r):
                subspaces.append(coordinate_subspace(n, {i + 1: b >> i & 1 for i in range(r)}))
    for f in _scan_functions(mode, n, count, seed):
        checked += 1
        ai = exact_ai(f).ai
        max_ai = max(max_ai, ai)
        failed = []
        if "ai-oracle" in checks:
            ref = oracle_ai[f.table] if oracle_ai is not None else oracle.brute_force_ai(f)
            if ref != ai:
                failed.append("ai-oracle")
        if "ai-upper" in checks and ai > t:
            failed.append("ai-upper")
        if "thm1-window" in checks and not all(bounds.weight_window_check(f, d) for d in range(ai)):
            failed.append("thm1-window")
        if "nl-bound" in checks and nonlinearity(f) < bounds.nl_bound_from_ai(n, ai):
            failed.append("nl-bound")
        if "cor2-window" in checks and ai >= 1:
            if not all(bounds.restricted_weight_window_check(f, L, ai) for L in subspaces):
                failed.append("cor2-window")
        if "cert-sound" in checks:
            certs = [bounds.theorem2_certificate(f)]
            if n >= 2:
                sym = _auto_symmetry(f)
                if sym is not Symmetry.GENERIC or n <= 12:
                    certs.append(bounds.coverage_certifier(f, sym))
            if any(c.bound > ai for c in certs):
                failed.append("cert-sound")
        if "cor4-sound" in checks and bounds.is_symmetric(f):
            if bounds.corollary4_bound(families.value_vector(f)).bound > ai:
                failed.append("cor4-sound")
        for c in failed:
            bad.append({"check": c, "table": f.to_hex()})
    return {
        "mode": mode,
        "n": n,
        "checks": checks,
        "checked": checked,
        "max_ai": max_ai,
        "counterexamples": bad,
    }


# ---------------------------------------------------------------------------
# Argument parsing


def _add_input(p):
    p.add_argument("input", help="payload, @file, or - for stdin")
    p.add_argument("--format", choices=FORMATS, default="hex")
    p.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boolai", description="Algebraic immunity of Boolean functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pa = sub.add_parser("analyze", help="weight, spectra, exact AI and lower bounds")
    _add_input(pa)
    pa.add_argument("--exact-ai", nargs="?", const="all", default=None, metavar="MAX_D")
    pa.add_argument("--certify", help="comma list of thm2,cor1,cor4,coverage")
    pa.add_argument("--budget", type=int, default=DEFAULT_MAX_WORK, help="exact-AI work cap (rows*cols)")
    pa.add_argument("--subset-budget", type=int, default=bounds.DEFAULT_SUBSET_BUDGET)
    pa.add_argument("--symmetry", choices=["generic", "symmetric", "rotation"])
    pa.add_argument("--form", help="affine form for cor1, e.g. 'x1+x2+1'")
    pa.add_argument("--output", choices=["json", "text"], default="json")

    pc = sub.add_parser("construct", help="build a member of a function family")
    pc.add_argument("family", choices=["majority", "sigma-sum", "example2", "corollary3", "orbit-swap", "even-balanced"])
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--k", help="sigma indices, e.g. 2,4,6")
    pc.add_argument("--i", type=int, help="example2 parameter")
    pc.add_argument("--weight0", type=int, choices=[0, 1], default=0, help="example2 value at weight 0")
    pc.add_argument("--parity", choices=["odd", "even"], default="odd")
    pc.add_argument("--low", help="corollary3 low-weight values as a 0/1 string")
    pc.add_argument("--h", help="orbit representatives moved to 1 (comma list, 0x.. allowed)")
    pc.add_argument("--h-prime", dest="h_prime", help="orbit representatives moved to 0")
    pc.add_argument("--emit", choices=FORMATS, default="hex")
    pc.add_argument("--output", choices=["json", "text"], default="json")

    pe = sub.add_parser("certify", help="run one certifier")
    _add_input(pe)
    pe.add_argument("--method", required=True, choices=["thm2", "cor1", "cor4", "cor5", "coverage"])
    pe.add_argument("--symmetry", choices=["generic", "symmetric", "rotation"])
    pe.add_argument("--subset-budget", type=int, default=bounds.DEFAULT_SUBSET_BUDGET)
    pe.add_argument("--form")
    pe.add_argument("--h-size", type=int)
    pe.add_argument("--output", choices=["json", "text"], default="json")

    ps = sub.add_parser("scan", help="check invariants over a family of functions")
    ps.add_argument("mode", choices=list(SCAN_LIMITS))
    ps.add_argument("n", type=int)
    ps.add_argument("--check", default="ai-upper", help="comma list of " + ",".join(SCAN_CHECKS))
    ps.add_argument("--count", type=int, default=1000)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--output", choices=["json", "text"], default="json")
    return parser


def _run(args) -> int:
    if args.command == "construct":
        _emit(construct(args.family, args), args.output)
        return EXIT_OK
    if args.command == "scan":
        checks = [c.strip() for c in args.check.split(",") if c.strip()]
        summary = scan(args.mode, args.n, checks, count=args.count, seed=args.seed)
        _emit(summary, args.output)
        return EXIT_OK if not summary["counterexamples"] else EXIT_INVALID
    f = parse_function(FunctionInput(args.format, _read_payload(args.input), args.n))
    if args.command == "analyze":
        exact = None
        if args.exact_ai is not None:
            exact = True if args.exact_ai == "all" else int(args.exact_ai)
        certify = [m.strip() for m in args.certify.split(",")] if args.certify else None
        _emit(analyze(f, exact=exact, certify=certify, budget=args.budget, args=args), args.output)
        return EXIT_OK
    cert = certificate_for(f, args.method, args)
    _emit(cert.to_dict(), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (CostLimitError, SubsetBudgetError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COST
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
