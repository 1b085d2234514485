"""Verification suites and the report they produce.

A suite expands into jobs, one per case; each job yields claim records. The
report orders claims by id, so it does not depend on scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .symgroup import MAX_N, CapacityError, Composition, Partition, is_prime

SUITES = ("descent", "idempotents", "sequence", "characters")
DEFAULT_MAX_N = 6

DEFAULT_CASES = {
    "descent": [{"n": n} for n in range(1, 6)] + [{"n": n, "p": p} for n in range(1, 7) for p in (2, 3, 5)],
    "idempotents": [{"n": n, "p": p} for n in range(2, 7) for p in (2, 3, 5)],
    "sequence": [{"k": 1, "p": 2}, {"k": 1, "p": 3}, {"k": 1, "p": 5}, {"k": 2, "p": 3}, {"k": 3, "p": 2}],
    "characters": [{"p": 3}],
}


class UsageError(ValueError):
    """Bad configuration; maps to exit status 2."""


@dataclass
class SuiteConfig:
    suite: str
    cases: list[dict] = dc_field(default_factory=list)
    field: str | None = None
    cache_dir: str | None = None
    workers: int = 1
    max_n: int = DEFAULT_MAX_N
    timings: bool = False

    def validate(self) -> None:
        if self.suite not in SUITES + ("all",):
            raise UsageError(f"unknown suite {self.suite!r}")
        if self.max_n > MAX_N:
            raise CapacityError(f"--max-n {self.max_n} refused: the hard ceiling is {MAX_N}")
        if self.workers < 1:
            raise UsageError("--workers must be positive")
        if self.field is not None:
            from .fields import field_from_name

            try:
                field_from_name(self.field)
            except ValueError as exc:
                raise UsageError(f"bad --field {self.field!r}: {exc}") from exc
        for suite, case in self.jobs():
            n = case_degree(suite, case)
            if n > self.max_n:
                raise CapacityError(f"case {format_case(case)} needs n={n} > max-n {self.max_n}")
            p = case.get("p")
            if p is not None and p != 0 and not is_prime(p):
                raise UsageError(f"p={p} is not prime")

    def jobs(self) -> list[tuple[str, dict]]:
        suites = SUITES if self.suite == "all" else (self.suite,)
        out = []
        for s in suites:
            cases = self.cases or DEFAULT_CASES[s]
            for case in cases:
                _check_case_keys(s, case)
                out.append((s, case))
        return out

    def echo(self) -> dict:
        return {
            "suite": self.suite,
            "cases": [format_case(c) for c in self.cases],
            "field": self.field,
            "max_n": self.max_n,
            "workers": self.workers,
        }


def _check_case_keys(suite: str, case: dict) -> None:
    needed = {
        "descent": ({"n"}, {"n", "p"}),
        "idempotents": ({"n", "p"},),
        "sequence": ({"k", "p"},),
        "characters": ({"p"},),
    }[suite]
    if set(case) not in needed:
        wanted = " or ".join(",".join(sorted(k)) for k in needed)
        raise UsageError(f"suite {suite} needs cases with keys {wanted}, got {format_case(case)}")


def case_degree(suite: str, case: dict) -> int:
    if suite == "sequence":
        return case["k"] * case["p"]
    if suite == "characters":
        return 2 * case["p"]
    return case["n"]


def parse_case(text: str) -> dict:
    """``"n=6,p=3"`` -> ``{"n": 6, "p": 3}``."""
    out = {}
    for tok in text.split(","):
        key, sep, value = tok.partition("=")
        key = key.strip()
        if not sep or key not in ("n", "k", "p") or key in out:
            raise UsageError(f"bad case {text!r}")
        try:
            out[key] = int(value)
        except ValueError as exc:
            raise UsageError(f"bad case {text!r}") from exc
        if out[key] < 0 or (key != "p" and out[key] < 1):
            raise UsageError(f"bad case {text!r}")
    return out


def format_case(case: dict) -> str:
    return ",".join(f"{k}={case[k]}" for k in ("k", "n", "p") if k in case)


# ------------------------------------------------------------ claims


@dataclass
class Claim:
    id: str
    anchor: str
    computed: Any
    expected: Any
    provenance: str
    passed: bool
    ms: int | None = None

    def record(self, timings: bool) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "computed": jsonable(self.computed),
            "expected": jsonable(self.expected),
            "provenance": self.provenance,
            "pass": bool(self.passed),
        }
        if timings and self.ms is not None:
            out["ms"] = self.ms
        return out


def jsonable(x):
    """Exact, float-free JSON value."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (Partition, Composition)):
        return str(x)
    if isinstance(x, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy integer
        return jsonable(x.item())
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed in reports")
    return str(x)


class _Recorder:
    def __init__(self, prefix: str):
        self.prefix = prefix
        self.claims: list[Claim] = []

    def claim(self, name, anchor, provenance, fn: Callable[[], tuple[Any, Any]], compare=None):
        """Run ``fn`` returning ``(computed, expected)``; exceptions fail the claim."""
        start = time.perf_counter()
        try:
            computed, expected = fn()
            ok = compare(computed, expected) if compare else computed == expected
        except Exception as exc:  # noqa: BLE001 - recorded as a failed claim
            computed, expected, ok = f"error: {type(exc).__name__}: {exc}", None, False
        ms = int((time.perf_counter() - start) * 1000)
        self.claims.append(
            Claim(f"{self.prefix}/{name}", anchor, computed, expected, provenance, ok, ms)
        )


def _descent_job(case: dict, cfg: dict) -> list[Claim]:
    from .descent import (
        DescentAlgebra,
        descent_basis,
        dynkin_omega,
        radical_report,
        structure_constants_by_matrices,
    )
    from .fields import ZZ, field_for_characteristic, field_from_name
    from .symgroup import compositions, refines

    n = case["n"]
    p = case.get("p")
    if p is not None:
        field = field_for_characteristic(p)
    elif cfg.get("field"):
        field = field_from_name(cfg["field"])
    else:
        field = ZZ
    p = p or field.characteristic
    rec = _Recorder(f"descent/{format_case(case)}")
    D = DescentAlgebra(n, field)
    DZ = DescentAlgebra(n, ZZ)
    comps = D.compositions

    def leading_injective():
        leads = {D.leading_permutation(mu) for mu in comps}
        return len(leads), len(comps)

    rec.claim("basis-leading-terms", "X^mu are linearly independent via distinct leading permutations",
              "derived", leading_injective)

    def multiplicative():
        bad = []
        for lam in comps:
            for mu in comps:
                lhs = D.solomon_hom(D.X(lam) * D.X(mu))
                rhs = D.young_character(lam) * D.young_character(mu)
                if lhs != rhs:
                    bad.append(f"{lam}|{mu}")
        return bad, []

    rec.claim("solomon-multiplicative", "c(X^lam X^mu) = c(X^lam) c(X^mu)", "claimed", multiplicative)

    if field == ZZ:
        def nonneg_and_refining():
            bad = []
            for lam in comps:
                for mu in comps:
                    for nu, c in DZ.structure_constants(lam, mu).items():
                        if c < 0 or not refines(nu, lam):
                            bad.append(f"{lam}|{mu}|{nu}")
            return bad, []

        rec.claim("structure-constants-support", "c_{lam mu nu} >= 0 and c = 0 unless nu <= lam",
                  "claimed", nonneg_and_refining)

        if n <= 5:
            def matrix_rule():
                bad = [f"{lam}|{mu}" for lam in comps for mu in comps
                       if DZ.structure_constants(lam, mu) != structure_constants_by_matrices(lam, mu)]
                return bad, []

            rec.claim("structure-constants-matrix-rule",
                      "c_{lam mu nu} counts matrices with row sums lam, column sums mu, reading word nu",
                      "derived", matrix_rule)

        def omega_kills():
            w = dynkin_omega(n, ZZ)
            bad = [str(mu) for mu in compositions(n)
                   if mu != Composition((n,)) and not (descent_basis(mu, ZZ) * w).is_zero()]
            return bad, []

        rec.claim("X-omega-vanishing", "X^mu omega_n = 0 whenever mu != (n)", "claimed", omega_kills)

        def omega_square():
            w = dynkin_omega(n, ZZ)
            return w * w == w.scale(n), True

        rec.claim("omega-square", "omega_n^2 = n omega_n", "claimed", omega_square)

        def omega_in_span():
            DZ.from_group_algebra(dynkin_omega(n, ZZ))
            return True, True

        rec.claim("omega-in-descent-algebra", "omega_n lies in the span of the X^mu", "claimed", omega_in_span)

    if p:
        def radical():
            r = radical_report(n, p)
            return {"kernel_dim": r.kernel_dim, "nilpotency_index": r.nilpotency_index,
                    "bounded": r.nilpotency_index <= D.dim}, None

        rec.claim("radical-nilpotent", "Rad D_{n,F} = ker c_{n,F} is nilpotent", "claimed", radical,
                  compare=lambda c, _e: c["bounded"])

        def radical_dim():
            from .symgroup import p_regular_partitions

            return radical_report(n, p).kernel_dim, D.dim - len(p_regular_partitions(n, p))

        rec.claim("radical-dimension", "dim ker c_{n,F} = 2^(n-1) - #p-regular partitions",
                  "derived", radical_dim)
    return rec.claims


def _idempotent_job(case: dict, cfg: dict) -> list[Claim]:
    from .idempotents import (
        CacheError,
        InvariantError,
        expected_ideal_dimension,
        get_system,
        ideal_dimension,
    )
    from .symgroup import p_regular_partitions

    n, p = case["n"], case["p"]
    rec = _Recorder(f"idempotents/{format_case(case)}")
    holder = {}

    def build():
        try:
            holder["system"] = get_system(n, p, cfg.get("cache_dir"))
        except CacheError as exc:
            return f"cache invalid: {exc}", "valid"
        holder["system"].validate()
        return "valid", "valid"

    rec.claim("system-valid", "mutually orthogonal primitive idempotents summing to 1", "claimed", build)
    system = holder.get("system")
    if system is None:
        return rec.claims

    rec.claim("count", "idempotents are indexed by p-regular partitions", "claimed",
              lambda: (len(system), len(p_regular_partitions(n, p))))

    def invariants():
        try:
            system.validate()
        except InvariantError as exc:
            return exc.property, "none violated"
        return "none violated", "none violated"

    rec.claim("invariants", "e^2 = e, e e' = 0, sum e = 1, c(e_mu) = ch_mu", "claimed", invariants)
    rec.claim("e_n-normalization", "a_(n) = 1 in e_n", "claimed",
              lambda: (system.e_n.coefficient(Composition((n,))), 1))

    if p:
        for mu, e in system.items():
            rec.claim(f"ideal-dimension/{mu}", "dim e_mu F S_n = |C_mu,F|", "claimed",
                      lambda e=e, mu=mu: (ideal_dimension(e), expected_ideal_dimension(mu, p)))
    return rec.claims


def _sequence_job(case: dict, cfg: dict) -> list[Claim]:
    from .idempotents import get_system
    from .lie import verify_kp_sequence

    k, p = case["k"], case["p"]
    rec = _Recorder(f"sequence/{format_case(case)}")
    holder = {}

    def run():
        system = get_system(k * p, p, cfg.get("cache_dir"))
        holder["report"] = verify_kp_sequence(k, p, system)
        return holder["report"].passed, True

    rec.claim("verified", "0 -> L_n -> e_n F S_n -> S^p(L_k) -> 0 is exact", "claimed", run)
    report = holder.get("report")
    if report is None:
        return rec.claims
    rec.claim("dimensions", "(dim L_n, dim e_n F S_n, dim S^p(L_k)) = ((n-1)!, |C_(n),F|, |C_kappa|)",
              "claimed", lambda: (list(report.dims), list(report.expected_dims)))
    for i, check in enumerate(report.checks):
        rec.claim(f"check-{i:02d}", check.name, "claimed",
                  lambda c=check: (c.passed if c.passed else c.detail, True))
    return rec.claims


def _character_job(case: dict, cfg: dict) -> list[Claim]:
    from .characters import (
        abacus_of_label,
        abacus_of_partition,
        gap_label,
        p_core,
        partition_of_abacus,
        principal_block_test,
        verify_2p,
        verify_spl2,
    )
    from .symgroup import partitions

    p = case["p"]
    rec = _Recorder(f"characters/{format_case(case)}")
    if p == 2 or not is_prime(p):
        rec.claim("odd-prime", "p is an odd prime", "plumbing", lambda: (p, "odd prime"))
        return rec.claims

    def round_trip():
        bad = [str(lam) for lam in partitions(2 * p)
               if partition_of_abacus(abacus_of_partition(lam, p)) != lam]
        return bad, []

    rec.claim("abacus-round-trip", "abacus with p runners and 2p beads", "derived", round_trip)

    def block_oracle():
        bad = [str(lam) for lam in partitions(2 * p)
               if principal_block_test(lam, p) != (len(p_core(lam, p)) == 0)]
        return bad, []

    rec.claim("principal-block-vs-core", "principal block iff empty p-core", "derived", block_oracle)

    def labels():
        seen = {}
        for lam in partitions(2 * p):
            lb = gap_label(abacus_of_partition(lam, p))
            if lb is not None:
                seen[lb] = lam
        return all(partition_of_abacus(abacus_of_label(lb, p)) == lam for lb, lam in seen.items()), True

    rec.claim("abacus-labels", "<i,j> and <i> label the principal block", "derived", labels)

    spl2 = verify_spl2(p)
    for name, ok in spl2.checks.items():
        rec.claim(f"spl2/{name}", name, "claimed", lambda ok=ok: (ok, True))
    even = {str(lam): 1 for lam in partitions(2 * p)
            if all(m % 2 == 0 for m in lam.multiplicities().values())}
    rec.claim("spl2/decomposition", "character of S^p(L_2) is the sum over partitions with even multiplicities",
              "claimed", lambda: (spl2.values["decomposition"], even))
    rec.claim("spl2/principal", "principal block component of S^p(L_2)", "claimed",
              lambda: (spl2.values["principal"], spl2.values["claimed_principal"]))
    rec.claim("spl2/exponent-note", "plumbing", "derived",
              lambda: (spl2.notes[0], "2-part exponent taken as p-2i-1"),
              compare=lambda c, e: c.startswith(e))

    two_p = verify_2p(p)
    for name, ok in two_p.checks.items():
        rec.claim(f"2p/{name}", name, "claimed", lambda ok=ok: (ok, True))
    rec.claim("2p/complement", "L_2p minus the claimed summand is a character", "derived",
              lambda: (two_p.values["complement"], "nonnegative integer multiplicities"),
              compare=lambda c, _e: two_p.checks["complement is a character"]
              and all(v > 0 for v in c.values()))

    if p == 5:
        def displayed():
            A = abacus_of_label((1, 3), 5)
            return {"partition": str(partition_of_abacus(A)), "rows": A.render()}, {
                "partition": "3,2,2,2,1", "rows": ["ooooo", ".o.oo", "o.o.."]}

        rec.claim("abacus-example", "<1,3> at p=5 is (3,2,2,2,1)", "claimed", displayed)
    return rec.claims


JOBS = {
    "descent": _descent_job,
    "idempotents": _idempotent_job,
    "sequence": _sequence_job,
    "characters": _character_job,
}


def _run_job(args) -> list[Claim]:
    suite, case, cfg = args
    return JOBS[suite](case, cfg)


@dataclass
class VerificationReport:
    config: dict
    claims: list[Claim]
    timings: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failed(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    def to_record(self) -> dict:
        return {
            "tool": "descent-lie",
            "version": __version__,
            "config": self.config,
            "claims": [c.record(self.timings) for c in self.claims],
            "summary": {"claims": len(self.claims), "failed": len(self.failed())},
            "pass": self.passed,
        }


def run_suite(config: SuiteConfig) -> VerificationReport:
    config.validate()
    jobs = [(s, c, {"field": config.field, "cache_dir": config.cache_dir}) for s, c in config.jobs()]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(j) for j in jobs]
    claims = sorted((c for r in results for c in r), key=lambda c: c.id)
    return VerificationReport(config.echo(), claims, config.timings)


__all__ = [
    "Claim",
    "SuiteConfig",
    "UsageError",
    "VerificationReport",
    "format_case",
    "parse_case",
    "run_suite",
]
