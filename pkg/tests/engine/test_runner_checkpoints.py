import json

import pytest

from tests.utils import logging
from dedekind_pcoef.checkpoints import CheckpointFile, CheckpointRecord
from dedekind_pcoef.collections import ComputationMethod, ShardResult
from dedekind_pcoef.engine import d_nplus2, d_nplus3
from dedekind_pcoef.exceptions import CheckpointException
from dedekind_pcoef.formulas import create_formula
from dedekind_pcoef.shard_runner import ShardRunner


def read_records(path):
    with open(path, "r") as raw:
        return [json.loads(line) for line in raw.read().split("\n") if len(line.strip()) > 0]


@pytest.mark.parametrize("workers", [1, 2, 8])
def test_workers_give_identical_reports(workers):
    reference = d_nplus2(3, shard_count=7)
    report = d_nplus2(3, workers=workers, shard_count=7)
    assert report.result == reference.result == 7581
    assert report.terms == reference.terms
    assert report.shard_digest == reference.shard_digest
    assert report.workers == workers


@pytest.mark.slow
@pytest.mark.parametrize("workers", [1, 2, 8])
def test_workers_give_identical_reports_at_four(workers):
    report = d_nplus2(4, workers=workers, shard_count=32)
    assert report.result == 7828354
    assert report.terms == 7581
    assert report.shard_digest == d_nplus2(4, shard_count=32).shard_digest


def test_workers_merge_details_in_shard_order():
    reference = d_nplus3(1, shard_count=3)
    report = d_nplus3(1, workers=3, shard_count=3)
    assert report.details == reference.details


def test_shard_ranges_cover_the_items():
    formula = create_formula(ComputationMethod.NPlus2, 3)
    ranges = formula.shard_ranges(7)
    assert len(ranges) == 7
    assert ranges[0][0] == 0 and ranges[-1][1] == 20
    assert all(a[1] == b[0] for a, b in zip(ranges, ranges[1:]))
    # never more shards than items
    assert len(formula.shard_ranges(1000)) == 20


def test_runner_emits_shard_events():
    completed = []
    runner = ShardRunner(create_formula(ComputationMethod.NPlus2, 2), workers=2, shard_count=4)
    runner.on(runner.shard_completed_event_name, lambda *args: completed.append(args))
    report = runner.run()
    assert report.result == 168
    assert len(completed) == 4


def test_stop_and_resume(tmp_path):
    path = str(tmp_path / "nplus2.jsonl")
    partial = d_nplus2(3, checkpoint_path=path, shard_count=10, stop_after=4)
    assert not partial.complete
    assert len(read_records(path)) == 4

    resumed = d_nplus2(3, checkpoint_path=path, shard_count=10, workers=3)
    assert resumed.complete
    assert resumed.result == 7581
    records = read_records(path)
    assert sorted(r["shard_id"] for r in records) == list(range(10))
    assert resumed.shard_digest == partial.shard_digest
    logging.info(f"Resumed run: {resumed.as_dict(include_details=False)}")


def test_resume_of_a_finished_run(tmp_path):
    path = str(tmp_path / "done.jsonl")
    first = d_nplus2(2, checkpoint_path=path, shard_count=3)
    second = d_nplus2(2, checkpoint_path=path, shard_count=3)
    assert first.result == second.result == 168
    assert len(read_records(path)) == 3


def test_checkpoint_of_another_run_is_refused(tmp_path):
    path = str(tmp_path / "other.jsonl")
    d_nplus2(2, checkpoint_path=path, shard_count=4, stop_after=2)
    with pytest.raises(CheckpointException):
        d_nplus2(3, checkpoint_path=path, shard_count=4)
    with pytest.raises(CheckpointException):
        d_nplus2(2, checkpoint_path=path, shard_count=4, reduce_symmetry=True)


def test_empty_checkpoint_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    report = d_nplus2(2, checkpoint_path=str(path), shard_count=2)
    assert report.complete and report.result == 168


def test_torn_trailing_record_is_dropped(tmp_path):
    path = tmp_path / "torn.jsonl"
    d_nplus2(3, checkpoint_path=str(path), shard_count=10, stop_after=3)
    with open(path, "a") as raw:
        raw.write('{"shard_id": 3, "partial')

    report = d_nplus2(3, checkpoint_path=str(path), shard_count=10)
    assert report.complete
    assert report.result == 7581
    assert sorted(r["shard_id"] for r in read_records(path)) == list(range(10))


def test_corrupt_record_is_refused(tmp_path):
    path = tmp_path / "corrupt.jsonl"
    d_nplus2(2, checkpoint_path=str(path), shard_count=4, stop_after=2)
    lines = path.read_text().split("\n")
    path.write_text("\n".join([lines[0], "not json", lines[1], ""]))
    with pytest.raises(CheckpointException):
        d_nplus2(2, checkpoint_path=str(path), shard_count=4)


def test_duplicate_shard_is_refused(tmp_path):
    path = tmp_path / "duplicate.jsonl"
    d_nplus2(2, checkpoint_path=str(path), shard_count=4, stop_after=1)
    line = path.read_text().split("\n")[0]
    path.write_text(f"{line}\n{line}\n")
    with pytest.raises(CheckpointException):
        d_nplus2(2, checkpoint_path=str(path), shard_count=4)


def test_checkpoint_record_validation(tmp_path):
    record = CheckpointRecord(ShardResult(2, 10**30, 5, {"rows": []}), "abc")
    assert CheckpointRecord.from_dict(record.as_dict()).result == record.result
    with pytest.raises(CheckpointException):
        CheckpointRecord.from_dict({"shard_id": 1, "partial_sum": "x", "term_count": "1", "digest": "a"})
    with pytest.raises(CheckpointException):
        CheckpointRecord.from_dict({"shard_id": 1, "partial_sum": "1", "term_count": "1", "digest": 4})

    checkpoint = CheckpointFile(str(tmp_path / "missing.jsonl"))
    assert not checkpoint.exists()
    assert checkpoint.load({}) == {}


def test_interrupted_halfway_and_resumed(tmp_path):
    path = str(tmp_path / "half.jsonl")
    partial = d_nplus2(4, checkpoint_path=path, shard_count=16, stop_after=8, workers=2)
    assert not partial.complete
    resumed = d_nplus2(4, checkpoint_path=path, shard_count=16, workers=2)
    assert resumed.result == 7828354
    assert resumed.terms == d_nplus2(4, shard_count=16).terms
