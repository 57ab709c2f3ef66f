import json
import os
from typing import Dict, Optional

from zthreading.decorators import thread_synchronized

from dedekind_pcoef.collections import ShardResult
from dedekind_pcoef.exceptions import CheckpointException
from dedekind_pcoef.utils import engine_logger, resolve_path


class CheckpointRecord:
    def __init__(self, result: ShardResult, digest: str):
        """A completed shard, as stored in the checkpoint file.

        Args:
            result (ShardResult): The shard result.
            digest (str): The digest of the shard parameter range.
        """
        self.result = result
        self.digest = digest

    @property
    def shard_id(self) -> int:
        return self.result.shard_id

    def as_dict(self) -> dict:
        return {
            "shard_id": self.result.shard_id,
            "partial_sum": str(self.result.partial_sum),
            "term_count": str(self.result.term_count),
            "digest": self.digest,
            "details": self.result.details,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "CheckpointRecord":
        try:
            result = ShardResult(
                int(record["shard_id"]),
                int(record["partial_sum"]),
                int(record["term_count"]),
                record.get("details", None) or {},
            )
            digest = record["digest"]
        except (KeyError, TypeError, ValueError) as ex:
            raise CheckpointException(f"Invalid checkpoint record: {ex}") from ex
        if not isinstance(digest, str):
            raise CheckpointException("Invalid checkpoint record, the digest must be a string")
        return cls(result, digest)


class CheckpointFile:
    def __init__(self, path: str):
        """An append only, newline delimited json file of completed shard records.

        Args:
            path (str): The file path (relative paths are resolved against the working directory).
        """
        self.path = resolve_path(path, os.getcwd())

    def exists(self) -> bool:
        return os.path.isfile(self.path)

    def load(self, expected_digests: Dict[int, str]) -> Dict[int, CheckpointRecord]:
        """Loads the completed shards. A torn trailing record (interrupted write) is dropped
        with a warning and cut from the file.

        Args:
            expected_digests (Dict[int, str]): The shard digests of the current run, by shard id.

        Raises:
            CheckpointException: On a corrupt record, a duplicate shard id or a digest that
                does not match the current run.

        Returns:
            Dict[int, CheckpointRecord]: The records by shard id. Empty if there is no file.
        """
        if not self.exists():
            return {}

        with open(self.path, "r") as raw:
            lines = raw.read().split("\n")

        records: Dict[int, CheckpointRecord] = {}
        valid_length = 0
        offset = 0
        for idx, line in enumerate(lines):
            line_length = len(line) + (1 if idx < len(lines) - 1 else 0)
            if len(line.strip()) == 0:
                offset += line_length
                valid_length = offset
                continue
            try:
                record = CheckpointRecord.from_dict(json.loads(line))
            except (json.JSONDecodeError, CheckpointException) as ex:
                if idx == len(lines) - 1:
                    engine_logger.warning(f"Ignoring a torn trailing record in checkpoint {self.path}")
                    self._truncate(valid_length)
                    break
                raise CheckpointException(f"Corrupt checkpoint {self.path}, line {idx + 1}: {ex}") from ex

            if record.shard_id in records:
                raise CheckpointException(f"Corrupt checkpoint {self.path}, duplicate shard id {record.shard_id}")
            if expected_digests.get(record.shard_id, None) != record.digest:
                raise CheckpointException(
                    f"Checkpoint {self.path} does not match the current run (shard {record.shard_id} digest differs)"
                )
            records[record.shard_id] = record
            offset += line_length
            valid_length = offset

        engine_logger.info(f"Loaded {len(records)} completed shards from checkpoint {self.path}")
        return records

    def _truncate(self, length: int):
        with open(self.path, "r+") as raw:
            raw.truncate(length)

    @thread_synchronized
    def append(self, record: CheckpointRecord):
        with open(self.path, "a") as raw:
            raw.write(json.dumps(record.as_dict()) + "\n")
            raw.flush()


def open_checkpoint(path: Optional[str]) -> Optional[CheckpointFile]:
    return CheckpointFile(path) if path else None
