from collections import Counter
from itertools import product
from typing import Dict, List, Tuple

import yaml

from dedekind_pcoef.exceptions import ConsistencyException
from dedekind_pcoef.formulas import NPlus3Formula, NPlus4Formula, complement_pair_positions
from dedekind_pcoef.lattice import Antichain, SystemInstance, count_solutions, p_general_codes
from dedekind_pcoef.utils import engine_logger, resolve_path

TABLES_PATH = resolve_path("./tables.yaml")

RowKey = Tuple[str, int, int]


def load_tables(path: str = TABLES_PATH) -> dict:
    with open(path, "r") as raw:
        return yaml.safe_load(raw)


class TableMismatches:
    def __init__(self):
        self.mismatches: List[str] = []

    def expect(self, name: str, actual, expected):
        if actual != expected:
            self.mismatches.append(f"{name}: got {actual}, expected {expected}")

    def raise_if_any(self):
        if len(self.mismatches) > 0:
            raise ConsistencyException(
                f"{len(self.mismatches)} table values were not reproduced", context={"mismatches": self.mismatches}
            )


def _row_key(row: dict) -> Tuple[str, Tuple[str, ...]]:
    return row["alpha"], tuple(row["betas"])


def _oracle_p(alpha: Antichain, betas: List[Antichain]) -> int:
    return count_solutions(SystemInstance(alpha, betas))


def check_nplus3(expected: dict, mismatches: TableMismatches) -> dict:
    """Reproduces the grouped rows of the D(n+3) formula for one base set size"""
    n = expected["n"]
    formula = NPlus3Formula(n, collect_details=True)
    shard = formula.evaluate_range(0, 0, len(formula.items))
    mismatches.expect(f"nplus3(n={n}) result", shard.partial_sum, expected["result"])

    rows = {_row_key(r): r for r in shard.details.get("rows", [])}
    expected_rows = {_row_key(r): r for r in expected["rows"]}
    mismatches.expect(f"nplus3(n={n}) row keys", sorted(rows.keys()), sorted(expected_rows.keys()))
    for key, row in expected_rows.items():
        actual = rows.get(key, {})
        for field in ["eq", "p", "weight", "total"]:
            mismatches.expect(f"nplus3(n={n}) row {key} {field}", actual.get(field), row[field])
        oracle = _oracle_p(Antichain.parse(row["alpha"], n), [Antichain.parse(b, n) for b in row["betas"]])
        mismatches.expect(f"nplus3(n={n}) row {key} oracle p", oracle, row["p"])
    return {"n": n, "result": str(shard.partial_sum), "rows": len(rows)}


def _zero_one_tuple(k: int) -> List[Antichain]:
    return [Antichain.parse("{0}" if i < k else "{}", 0) for i in range(6)]


def _lower_p(alpha: Antichain, betas: List[Antichain]) -> int:
    return p_general_codes(alpha.code, tuple(b.code for b in betas), 4)


def _upper_instance(epsilon: Antichain, deltas: List[Antichain]) -> Tuple[Antichain, List[Antichain]]:
    complement = complement_pair_positions(4)
    return epsilon.dual(), [deltas[complement[i]].dual() for i in range(6)]


def _upper_p(epsilon: Antichain, deltas: List[Antichain]) -> int:
    alpha, betas = _upper_instance(epsilon, deltas)
    return _lower_p(alpha, betas)


def _class_sizes(values: Dict[Tuple[int, ...], int], fixed: str) -> Counter:
    # the number of 0/1 tuples sharing the count of {0} entries and the coefficient
    sizes: Counter = Counter()
    for bits, p in values.items():
        sizes[(fixed, sum(bits), p)] += 1
    return sizes


def check_pcoef_rows(rows: List[dict], upper: bool, mismatches: TableMismatches) -> Dict[RowKey, str]:
    """Checks the coefficient rows of the four variable systems over D_0.

    Args:
        rows (List[dict]): The rows (lower: alpha, upper: epsilon).
        upper (bool): True for the upper systems.
        mismatches (TableMismatches): The mismatch collector.

    Returns:
        Dict[RowKey, str]: The row names by (antichain, k, P).
    """
    label = "epsilon" if upper else "alpha"
    evaluate = _upper_p if upper else _lower_p
    index: Dict[RowKey, str] = {}
    for row in rows:
        fixed = Antichain.parse(row[label], 0)
        k = row["k"]
        tuple_p = {
            bits: evaluate(fixed, [Antichain.parse("{0}" if b else "{}", 0) for b in bits])
            for bits in product((0, 1), repeat=6)
        }
        sizes = _class_sizes(tuple_p, row[label])
        p = evaluate(fixed, _zero_one_tuple(k))
        mismatches.expect(f"{row['name']} p", p, row["p"])
        mismatches.expect(f"{row['name']} eq", sizes[(row[label], k, p)], row["eq"])

        if upper:
            alpha, betas = _upper_instance(fixed, _zero_one_tuple(k))
        else:
            alpha, betas = fixed, _zero_one_tuple(k)
        mismatches.expect(f"{row['name']} oracle p", _oracle_p(alpha, betas), row["p"])
        index[(row[label], k, row["p"])] = row["name"]
    return index


def check_nplus4(expected: dict, mismatches: TableMismatches) -> dict:
    """Reproduces the coefficient rows, the nonzero combinations and the interval product
    histogram of the D(n+4) formula over the empty base set.
    """
    n = expected["n"]
    lower_index = check_pcoef_rows(expected["lower_rows"], False, mismatches)
    upper_index = check_pcoef_rows(expected["upper_rows"], True, mismatches)

    formula = NPlus4Formula(n, collect_details=True)
    shard = formula.evaluate_range(0, 0, len(formula.items))
    mismatches.expect(f"nplus4(n={n}) result", shard.partial_sum, expected["result"])

    histogram = {int(k): v for k, v in shard.details.get("histogram", {}).items()}
    mismatches.expect(f"nplus4(n={n}) histogram", histogram, {int(k): v for k, v in expected["histogram"].items()})
    mismatches.expect(
        f"nplus4(n={n}) expansion", sum(k * v for k, v in histogram.items()), expected["result"]
    )

    combinations: Counter = Counter()
    for combination in shard.details.get("combinations", []):
        lower = (combination["alpha"], combination["betas"].count("{0}"), combination["p_lower"])
        upper = (combination["epsilon"], combination["deltas"].count("{0}"), combination["p_upper"])
        combinations[(lower_index.get(lower, str(lower)), upper_index.get(upper, str(upper)))] += 1
    expected_combinations = {(c["lower"], c["upper"]): c["count"] for c in expected["combinations"]}
    mismatches.expect(f"nplus4(n={n}) combinations", dict(combinations), expected_combinations)

    return {
        "n": n,
        "result": str(shard.partial_sum),
        "histogram": {str(k): v for k, v in sorted(histogram.items(), reverse=True)},
        "combinations": len(combinations),
    }


def reproduce_tables(path: str = TABLES_PATH) -> dict:
    """Reproduces every worked table, row by row.

    Args:
        path (str, optional): The tables file. Defaults to the packaged tables.

    Raises:
        ConsistencyException: Listing every value that was not reproduced.

    Returns:
        dict: A summary of the reproduced tables.
    """
    tables = load_tables(path)
    mismatches = TableMismatches()
    summary = {
        "nplus3": [check_nplus3(expected, mismatches) for expected in tables["nplus3"]],
        "nplus4": check_nplus4(tables["nplus4"], mismatches),
    }
    mismatches.raise_if_any()
    engine_logger.info("All tables reproduced")
    return summary
