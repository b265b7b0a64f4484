"""
Case construction and execution for ``fmzv verify``.

A-side cases compare residues prime by prime; S-side cases either check
an exact real identity or, for formula statements, report a heuristic
modulo-ζ(2) verdict on each t-coefficient of the difference.
"""

import asyncio
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from mpmath import mp, mpf

from app.core.config import settings
from app.core.exceptions import AccuracyError, CapabilityError, HypothesisError
from app.core.logging import app_logger
from app.core.performance import Stopwatch, measure_performance
from app.models.schemas import CaseReport, Status, TheoremCase, VerifyReport
from app.services import appendix
from app.services.modzeta2 import Verdict, reduce_with_confirmation
from app.services.numeric import format_real, precision
from app.services.padic import AnValue, prime_window
from app.services.theorems import THEOREMS, Side, Theorem, get_theorem, ind_step, ind_step_terms

MAX_LISTED_MISMATCHES = 5

# suites of exact rational identities that are not parameterized by a level
EXACT_SUITES = ("appendix", "ind-step", "pfd")
SUITE_LIMITS = {"appendix": {"amax": 30}, "ind-step": {"kmax": 12}, "pfd": {"count": 50}}


def _report(case: TheoremCase, status: Status, **fields) -> CaseReport:
    return CaseReport(case=case.case_id, theorem_id=case.theorem_id, params=dict(case.params),
                      side=case.side, n=case.n, status=status, **fields)


def _floor_status(compared: int) -> Tuple[Status, Optional[str]]:
    if compared < settings.min_primes_compared:
        return Status.INCONCLUSIVE, (
            f"only {compared} primes compared; at least {settings.min_primes_compared} required")
    return Status.PASS, None


def _compare(case: TheoremCase, lhs: AnValue, rhs: AnValue, skipped: Dict[int, str]) -> CaseReport:
    compared, mismatched = lhs.compare(rhs)
    skipped = {**skipped, **lhs.all_skipped(rhs)}
    skipped = dict(sorted(skipped.items()))
    if mismatched:
        listed = "; ".join(f"p={p}: {lhs.residue(p)} vs {rhs.residue(p)}"
                           for p in mismatched[:MAX_LISTED_MISMATCHES])
        app_logger.warning(f"{case.case_id}: {len(mismatched)} mismatching primes")
        return _report(case, Status.FAIL, primes_compared=len(compared), skipped=skipped,
                       detail=f"{len(mismatched)} mismatches ({listed})")
    status, detail = _floor_status(len(compared))
    if status is Status.INCONCLUSIVE:
        app_logger.warning(f"{case.case_id}: {detail}")
    return _report(case, status, primes_compared=len(compared), skipped=skipped, detail=detail)


def verify_A(case: TheoremCase) -> CaseReport:
    """Compare both sides of an A-side statement on every prime above its threshold."""
    theorem = get_theorem(case.theorem_id)
    n = case.n
    threshold = theorem.min_prime(case.params, n)
    window = prime_window(*case.window)
    used = tuple(p for p in window if p >= threshold)
    below = {p: f"p < {threshold}" for p in window if p < threshold}
    try:
        if theorem.is_formula:
            lhs = theorem.lhs_A(case.params, used, n)
            rhs = theorem.rhs(case.params, n).truncate(n).evaluate_A(used, n)
        else:
            lhs, rhs = theorem.relation(case.params, used, n)
    except CapabilityError as exc:
        app_logger.warning(f"{case.case_id}: {exc}")
        return _report(case, Status.INCONCLUSIVE, skipped=below, detail=str(exc))
    app_logger.debug(f"{case.case_id}: {len(below)} primes below threshold {threshold}")
    return _compare(case, lhs, rhs, below)


def recurrence_check(case: TheoremCase) -> CaseReport:
    """The per-prime recurrence together with the rational induction step for its (k, r, i)."""
    report = verify_A(case)
    k, r, i = case.params["k"], case.params["r"], case.params["i"]
    star = case.theorem_id.endswith("-star")
    problems = []
    if ind_step(k, r, i, star=star) != 0:
        problems.append(f"induction step = {ind_step(k, r, i, star=star)}")
    problems.extend(f"{name} terms = {value}" for name, value in ind_step_terms(k, r, i).items() if value)
    if problems:
        report.status = Status.FAIL
        report.detail = "; ".join(problems)
    return report


def verify_S_exact(case: TheoremCase) -> CaseReport:
    """|lhs - rhs| <= FMZV_NUMERIC_TOLERANCE for an exact real identity."""
    theorem = get_theorem(case.theorem_id)
    try:
        with precision(case.digits):
            lhs, rhs = theorem.real_identity(case.params, case.digits)
            error = abs(lhs - rhs)
            text = mp.nstr(error, 5)
    except (AccuracyError, CapabilityError) as exc:
        app_logger.warning(f"{case.case_id}: {exc}")
        return _report(case, Status.INCONCLUSIVE, detail=str(exc))
    if error <= mpf(settings.numeric_tolerance):
        return _report(case, Status.PASS, max_abs_error=text)
    return _report(case, Status.FAIL, max_abs_error=text,
                   detail=f"lhs = {format_real(lhs, 20)}, rhs = {format_real(rhs, 20)}")


def diagnose_S(case: TheoremCase) -> CaseReport:
    """
    Heuristic modulo-ζ(2) verdict on each t-coefficient of
    ζ_Ŝ(lhs) - rhs(t) for a formula statement.  Never gates the run.
    """
    theorem = get_theorem(case.theorem_id)
    n = case.n
    weight = theorem.weight(case.params)
    rhs_poly = theorem.rhs(case.params, n).truncate(n)

    def difference(digits: int):
        return theorem.lhs_S(case.params, n, digits) - rhs_poly.evaluate_S(n, digits)

    verdicts = []
    worst = mpf(0)
    for level in range(n):
        try:
            result = reduce_with_confirmation(lambda d: difference(d)[level], weight + level, case.digits)
        except (AccuracyError, CapabilityError) as exc:
            verdicts.append(f"t^{level}: {exc}")
            continue
        if result.residual is not None:
            worst = max(worst, result.residual)
        verdicts.append(f"t^{level}: {result.describe()}")
        if result.verdict is Verdict.INCONCLUSIVE:
            app_logger.debug(f"{case.case_id}: t^{level} inconclusive")
    return _report(case, Status.DIAGNOSTIC, detail="; ".join(verdicts), max_abs_error=mp.nstr(worst, 5))


def _suite_case(name: str, status: Status, detail: str) -> CaseReport:
    return CaseReport(case=name, theorem_id=name, side="A", status=status, detail=detail)


def verify_suite(name: str, limits: Optional[Mapping[str, Optional[int]]] = None) -> CaseReport:
    """
    Run an exact rational suite: ``appendix``, ``ind-step`` or ``pfd``.

    Raises:
        HypothesisError: For an unknown suite name
    """
    chosen = dict(SUITE_LIMITS.get(name, {}))
    chosen.update({key: value for key, value in (limits or {}).items() if value is not None and key in chosen})
    with Stopwatch() as sw:
        if name == "appendix":
            amax = chosen["amax"]
            rows = [appendix.appendix_row(a, b) for a, b in appendix.square_grid(amax)]
            bad = [f"({row['a']},{row['b']})" for row in rows if row["status"] != "pass"]
            label = f"{len(rows)} (a,b) pairs with a,b <= {amax}"
        elif name == "ind-step":
            rows = [appendix.ind_step_row(*kri) for kri in appendix.ind_step_grid(chosen["kmax"])]
            keys = ("step", "step_star", "first", "second", "third", "fourth")
            bad = [f"({row['k']},{row['r']},{row['i']})" for row in rows if any(row[key] for key in keys)]
            label = f"{len(rows)} (k,r,i) triples with k <= {chosen['kmax']}"
        elif name == "pfd":
            samples = appendix.pfd_samples(chosen["count"])
            bad = []
            for n, x in samples:
                lhs, rhs = appendix.pfd_identity(n, x)
                if lhs != rhs:
                    bad.append(f"(n={n}, x={x})")
            label = f"{len(samples)} sampled (n, x)"
        else:
            raise HypothesisError(f"unknown exact suite {name!r}")
    if bad:
        report = _suite_case(name, Status.FAIL, f"{len(bad)} failures: {', '.join(bad[:MAX_LISTED_MISMATCHES])}")
    else:
        report = _suite_case(name, Status.PASS, label)
    report.wall_ms = sw.elapsed_ms
    return report


def run_case(case: TheoremCase) -> CaseReport:
    """Dispatch a case to the check its statement and side call for."""
    theorem = get_theorem(case.theorem_id)
    with Stopwatch() as sw:
        if theorem.side is Side.S:
            report = verify_S_exact(case)
        elif case.side == "S":
            report = diagnose_S(case)
        elif case.theorem_id in ("recurrence", "recurrence-star"):
            report = recurrence_check(case)
        else:
            report = verify_A(case)
    report.wall_ms = sw.elapsed_ms
    app_logger.debug(f"{case.case_id}: {report.status.value} in {sw.elapsed_ms} ms")
    return report


def _run_payload(payload: Dict[str, Any]) -> Dict[str, Any]:
    report = run_case(TheoremCase(**payload))
    return {**report.model_dump(), "wall_ms": report.wall_ms}


async def run_cases(cases: List[TheoremCase], jobs: Optional[int] = None) -> List[CaseReport]:
    """
    Run cases across worker processes; reports come back in input order
    whatever the number of workers.
    """
    jobs = jobs or settings.effective_jobs
    if jobs <= 1 or len(cases) <= 1:
        return [run_case(case) for case in cases]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [loop.run_in_executor(pool, _run_payload, case.model_dump()) for case in cases]
        results = await asyncio.gather(*futures)
    return [CaseReport(**result) for result in results]


def _levels_for(theorem: Theorem, n: Optional[int]) -> Tuple[Optional[int], ...]:
    if theorem.side is Side.S:
        return (None,)
    if n is None:
        return theorem.levels
    return (n,) if n in theorem.levels else ()


def build_cases(ids: Iterable[str], n: Optional[int], window: Tuple[int, int], digits: int,
                limits: Optional[Mapping[str, Optional[int]]] = None, side: str = "A",
                params: Optional[Mapping[str, Any]] = None) -> List[TheoremCase]:
    """
    Expand statement ids into cases.  Explicit ids at an unsupported level
    are an error; ``all`` quietly keeps the levels each statement covers.

    Raises:
        HypothesisError: If a named statement does not cover level ``n`` or a
            single-case parameter set violates its hypotheses
    """
    ids = list(ids)
    explicit = ids != ["all"]
    if not explicit:
        ids = [tid for tid, theorem in THEOREMS.items()
               if side == "A" or theorem.side is Side.S or theorem.is_formula]
    cases = []
    for theorem_id in ids:
        theorem = get_theorem(theorem_id)
        if side == "S" and theorem.side is Side.A and not theorem.is_formula:
            raise HypothesisError(f"{theorem_id} has no closed form to compare on the S side")
        levels = _levels_for(theorem, n)
        if not levels:
            if explicit:
                raise HypothesisError(f"{theorem_id} is stated for n in {theorem.levels}, got n={n}")
            continue
        grid = [dict(params)] if params else theorem.cases(limits)
        case_side = "S" if theorem.side is Side.S else side
        for level in levels:
            for q in grid:
                cases.append(TheoremCase(theorem_id=theorem_id, params=q, side=case_side, n=level,
                                         window=window, digits=digits))
    return cases


def window_note(window: Tuple[int, int]) -> str:
    low, high = window
    return (f"residues compared on primes {low}..{high}; formula statements use only p >= wt+n+1; "
            f"a case passes with at least {settings.min_primes_compared} compared primes")


@measure_performance
def verify(ids: List[str], n: Optional[int], window: Tuple[int, int], digits: int,
           limits: Optional[Mapping[str, Optional[int]]] = None, side: str = "A",
           params: Optional[Mapping[str, Any]] = None, jobs: Optional[int] = None) -> VerifyReport:
    """Build, run and aggregate; exact suites run in-process after the theorem cases."""
    suites = [tid for tid in ids if tid in EXACT_SUITES]
    theorem_ids = [tid for tid in ids if tid not in EXACT_SUITES]
    if ids == ["all"]:
        suites = list(EXACT_SUITES) if side == "A" else []
    cases = build_cases(theorem_ids, n, window, digits, limits, side, params) if theorem_ids else []
    app_logger.info(f"running {len(cases)} cases and {len(suites)} exact suites")
    reports = asyncio.run(run_cases(cases, jobs))
    reports.extend(verify_suite(name, limits) for name in suites)
    report = VerifyReport.from_cases(reports, window_note=window_note(window))
    app_logger.info(f"summary: {report.summary}")
    return report
