import random
from itertools import product
from typing import Dict, List, Tuple

from dedekind_pcoef.collections import KNOWN_DEDEKIND_NUMBERS, ComputationMethod, ComputationReport
from dedekind_pcoef.config import (
    DEFAULT_MAX_N,
    DEFAULT_MAX_N_ORACLE,
    DEFAULT_ORACLE_SAMPLE_SEED,
    DEFAULT_ORACLE_SEARCH_LIMIT,
)
from dedekind_pcoef.exceptions import CapabilityException, ConsistencyException, InvalidInputException
from dedekind_pcoef.formulas import create_formula
from dedekind_pcoef.lattice import (
    Antichain,
    PairIndex,
    SystemInstance,
    connector_number_codes,
    count_solutions,
    iter_antichain_codes,
    iter_interval_codes,
    p_general_codes,
    solution_census,
)
from dedekind_pcoef.lattice.utils import subset_tables
from dedekind_pcoef.run_config import RunConfig
from dedekind_pcoef.shard_runner import ShardRunner
from dedekind_pcoef.utils import engine_logger


def compute(config: RunConfig) -> ComputationReport:
    """Runs a formula as configured. A complete result is checked against the known
    Dedekind numbers.

    Args:
        config (RunConfig): The run config.

    Raises:
        CapabilityException: If n is above the method cap.
        ConsistencyException: If a complete result differs from the known value.

    Returns:
        ComputationReport: The report.
    """
    config.validate()
    formula = create_formula(config.method, config.base_n, reduce_symmetry=config.reduce_symmetry)
    runner = ShardRunner(
        formula,
        workers=config.workers,
        shard_count=config.shard_count,
        checkpoint_path=config.checkpoint_path,
        stop_after=config.stop_after,
    )
    runner.pipe_to_logger()
    report = runner.run()

    if report.complete and report.target < len(KNOWN_DEDEKIND_NUMBERS):
        known = KNOWN_DEDEKIND_NUMBERS[report.target]
        if report.result != known:
            raise ConsistencyException(
                f"{config.method}(n={config.base_n}) gave {report.result}, expected D({report.target}) = {known}",
                context={
                    "method": str(config.method),
                    "n": config.base_n,
                    "result": str(report.result),
                    "expected": str(known),
                },
            )
    engine_logger.info(f"{config.method}(n={config.base_n}) = {report.result} in {report.seconds:.3f}s")
    return report


def _run(method: ComputationMethod, n: int, reduce_symmetry: bool = False, **kwargs) -> ComputationReport:
    return compute(RunConfig(method, n, reduce_symmetry=reduce_symmetry, **kwargs))


def brute_force_D(n: int, reduce_symmetry: bool = False) -> int:  # noqa: N802
    """D(n) by enumerating every antichain over n elements"""
    return _run(ComputationMethod.BruteForce, n, reduce_symmetry=reduce_symmetry).result


def d_nplus2(n: int, reduce_symmetry: bool = False, **kwargs) -> ComputationReport:
    """D(n+2) as a sum over the D(n+1) pairs alpha <= beta of D_n.

    Args:
        n (int): The base set size.
        reduce_symmetry (bool, optional): Sum over alpha classes. Defaults to False.
        kwargs: RunConfig arguments (workers, shard_count, checkpoint_path, stop_after).

    Returns:
        ComputationReport: The report.
    """
    return _run(ComputationMethod.NPlus2, n, reduce_symmetry=reduce_symmetry, **kwargs)


def wiedemann_d_nplus2(n: int, reduce_symmetry: bool = False, **kwargs) -> int:
    return _run(ComputationMethod.Wiedemann, n, reduce_symmetry=reduce_symmetry, **kwargs).result


def d_nplus3(n: int, reduce_symmetry: bool = False, **kwargs) -> ComputationReport:
    """D(n+3) from three variable systems. For n <= 1 the report details carry the table rows."""
    return _run(ComputationMethod.NPlus3, n, reduce_symmetry=reduce_symmetry, **kwargs)


def d_nplus4(n: int, reduce_symmetry: bool = False, **kwargs) -> ComputationReport:
    """D(n+4) from two four variable systems. For n = 0 the report details carry every
    nonzero combination and the interval product histogram.
    """
    return _run(ComputationMethod.NPlus4, n, reduce_symmetry=reduce_symmetry, **kwargs)


def applicable_methods(target: int, limits: Dict[ComputationMethod, int] = None) -> List[Tuple[ComputationMethod, int]]:
    """The (method, base set size) pairs computing D(target) within the capability caps"""
    limits = limits or DEFAULT_MAX_N
    methods = []
    for method in ComputationMethod:
        n = target - method.offset
        if 0 <= n <= limits[method]:
            methods.append((method, n))
    return methods


def consistency_matrix(max_n: int, limits: Dict[ComputationMethod, int] = None) -> dict:
    """Computes D(m) for m = 0..max_n by every applicable method and compares them.

    Args:
        max_n (int): The largest Dedekind index.
        limits (Dict[ComputationMethod, int], optional): Capability caps. Defaults to config.

    Raises:
        ConsistencyException: On any disagreement, with the divergent values as context.

    Returns:
        dict: The matrix, by Dedekind index.
    """
    if max_n < 0:
        raise InvalidInputException(f"max_n must be non negative, got {max_n}")
    matrix = {}
    for target in range(max_n + 1):
        values: Dict[str, str] = {}
        for method, n in applicable_methods(target, limits):
            values[f"{method}({n})"] = str(_run(method, n, limits=limits).result)
        if len(set(values.values())) > 1:
            raise ConsistencyException(
                f"Methods disagree on D({target})", context={"target": target, "values": values}
            )
        matrix[target] = {"values": values, "agree": True}
        engine_logger.info(f"D({target}): {len(values)} methods agree")
    return matrix


def _check_instance(alpha_code: int, beta_codes: Tuple[int, ...], r: int, expected: int, n: int):
    value = p_general_codes(alpha_code, beta_codes, r)
    mismatch = value != expected
    if r == 2 and not mismatch and expected > 0:
        mismatch = (1 << connector_number_codes(alpha_code, beta_codes[0], n)) != expected
    if mismatch:
        alpha = Antichain.from_code(alpha_code, n)
        betas = [str(Antichain.from_code(b, n)) for b in beta_codes]
        raise ConsistencyException(
            f"P-coefficient {value} differs from the oracle count {expected}",
            context={"n": n, "r": r, "alpha": str(alpha), "betas": betas, "value": value, "expected": expected},
        )


def oracle_check(
    n: int,
    r: int,
    samples: int = None,
    seed: int = DEFAULT_ORACLE_SAMPLE_SEED,
    max_n: int = DEFAULT_MAX_N_ORACLE,
    limit: int = DEFAULT_ORACLE_SEARCH_LIMIT,
) -> dict:
    """Certifies the P-coefficients against direct solution counting.

    Without samples every system over D_n is checked: the census of all r-tuples gives the
    solution count of every solvable system, and the P-coefficients over all systems must
    add up to D(n)^r (no mass on unsolvable ones). With samples, seeded random systems are
    solved by backtracking, half of them built from a random tuple (solvable) and half with
    random right hand sides.

    Args:
        n (int): The base set size.
        r (int): The number of variables (2..4).
        samples (int, optional): The number of random systems. Defaults to None (exhaustive).
        seed (int, optional): The random seed. Defaults to config.
        max_n (int, optional): The oracle capability cap. Defaults to config.
        limit (int, optional): The largest search the oracle attempts. Defaults to config.

    Raises:
        ConsistencyException: On the first mismatch.

    Returns:
        dict: A summary of the check.
    """
    if r < 2 or r > 4:
        raise InvalidInputException(f"r must be in 2..4, got {r}")
    if n < 0 or n > max_n:
        raise CapabilityException(f"Oracle checks are capped at n <= {max_n}", cap_name="max_n_oracle", cap_value=max_n)

    codes = list(iter_antichain_codes(n))
    pair_count = len(PairIndex.all_pairs(r))
    checked = 0
    solvable = 0

    if samples is None:
        if len(codes) ** (1 + pair_count) > limit:
            raise CapabilityException(
                f"Exhaustive check of {len(codes)}^{1 + pair_count} systems is above the limit {limit}, use samples",
                cap_name="oracle_search",
                cap_value=limit,
            )
        census = solution_census(n, r, max_tuples=limit)
        for (alpha_code, beta_codes), expected in census.items():
            _check_instance(alpha_code, beta_codes, r, expected, n)
            solvable += 1

        top_code = subset_tables(n).universe
        total = 0
        for alpha_code in codes:
            members = list(iter_interval_codes(alpha_code, top_code, n))
            for beta_codes in product(members, repeat=pair_count):
                total += p_general_codes(alpha_code, beta_codes, r)
                checked += 1
        if total != len(codes) ** r:
            raise ConsistencyException(
                f"P-coefficients over all systems add up to {total}, expected {len(codes) ** r}",
                context={"n": n, "r": r, "total": str(total), "expected": str(len(codes) ** r)},
            )
        mode = "exhaustive"
    else:
        if samples < 0:
            raise InvalidInputException(f"samples must be non negative, got {samples}")
        rng = random.Random(seed)
        pairs = [(p.k - 1, p.l - 1) for p in PairIndex.all_pairs(r)]
        top_code = subset_tables(n).universe
        for idx in range(samples):
            if idx % 2 == 0:
                chi = [rng.choice(codes) for _ in range(r)]
                alpha_code = chi[0]
                for code in chi[1:]:
                    alpha_code &= code
                beta_codes = tuple(chi[k] | chi[l] for k, l in pairs)
            else:
                alpha_code = rng.choice(codes)
                members = list(iter_interval_codes(alpha_code, top_code, n))
                beta_codes = tuple(rng.choice(members) for _ in pairs)
            inst = SystemInstance(
                Antichain.from_code(alpha_code, n), [Antichain.from_code(b, n) for b in beta_codes], r=r
            )
            expected = count_solutions(inst)
            _check_instance(alpha_code, beta_codes, r, expected, n)
            checked += 1
            solvable += 1 if expected > 0 else 0
        mode = "sampled"

    engine_logger.info(f"Oracle check n={n} r={r} ({mode}): {checked} systems agree")
    return {"n": n, "r": r, "mode": mode, "systems": checked, "solvable": solvable, "seed": seed}
