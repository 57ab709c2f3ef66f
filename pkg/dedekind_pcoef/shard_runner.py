import logging
import time
import traceback
from logging import Logger
from typing import Dict, List, Optional, Tuple
from uuid import uuid4

from zthreading.decorators import thread_synchronized
from zthreading.events import Event, EventHandler
from zthreading.tasks import Task

from dedekind_pcoef.checkpoints import CheckpointFile, CheckpointRecord, open_checkpoint
from dedekind_pcoef.collections import ComputationReport, ShardResult
from dedekind_pcoef.config import SHOW_RUN_ID_IN_LOGS
from dedekind_pcoef.formulas import Formula, merge_details
from dedekind_pcoef.utils import engine_logger, stable_digest


class ShardRunner(EventHandler):
    shard_completed_event_name = "shard_completed"
    show_run_id_on_logs: bool = None

    def __init__(
        self,
        formula: Formula,
        workers: int = 1,
        shard_count: int = 64,
        checkpoint_path: str = None,
        stop_after: int = None,
        logger: Logger = engine_logger,
        show_progress_logs: bool = True,
    ):
        """Runs a formula over shards of its outer sum on a pool of worker threads. Completed
        shards are appended to the checkpoint (if any) by the coordinator, and a resumed run
        skips them. The partial sums are merged in shard id order.

        Args:
            formula (Formula): The formula to evaluate.
            workers (int, optional): The number of worker threads. Defaults to 1.
            shard_count (int, optional): The requested number of shards. Defaults to 64.
            checkpoint_path (str, optional): The checkpoint file path. Defaults to None.
            stop_after (int, optional): Stop after this many shards were completed in this run,
                leaving the report incomplete (an interrupted run). Defaults to None.
            logger (Logger, optional): The logger to write to. Defaults to engine_logger.
            show_progress_logs (bool, optional): If true, log the shard progress. Defaults to True.
        """
        super().__init__()
        assert workers >= 1, ValueError("workers must be at least 1")
        assert shard_count >= 1, ValueError("shard_count must be at least 1")

        self.formula = formula
        self.workers = workers
        self.logger: Logger = logger if logger is not None else engine_logger
        self.show_progress_logs = show_progress_logs
        self.stop_after = stop_after
        self.checkpoint: Optional[CheckpointFile] = open_checkpoint(checkpoint_path)
        self._id = str(uuid4())

        self.shard_ranges: List[Tuple[int, int]] = formula.shard_ranges(shard_count)
        self.shard_digests: Dict[int, str] = {
            shard_id: formula.shard_digest(len(self.shard_ranges), shard_id, start, stop)
            for shard_id, (start, stop) in enumerate(self.shard_ranges)
        }

        self._results: Dict[int, ShardResult] = {}
        self._pending: List[int] = []
        self._completed_in_run = 0
        self._errors: List[Exception] = []

        if self.show_run_id_on_logs is None:
            self.show_run_id_on_logs = SHOW_RUN_ID_IN_LOGS

    @property
    def id(self) -> str:
        return self._id

    @property
    def shard_count(self) -> int:
        return len(self.shard_ranges)

    @property
    def run_digest(self) -> str:
        return stable_digest(*[self.shard_digests[i] for i in range(self.shard_count)])

    def log(self, *args, level=logging.INFO):
        """Log in the runner logger.

        Args:
            level ([type], optional): The log level. Defaults to logging.INFO.
        """
        marker = f"shard-runner-{self.id}" if self.show_run_id_on_logs else "shard-runner"
        if self.show_progress_logs:
            self.logger.log(level, f"{{{marker}}}: {args[0] if len(args)>0 else ''}", *args[1:])

    def pipe_to_logger(self, logger: Logger = None) -> EventHandler:
        """Pipes the runner error events to a logger.

        Args:
            logger (Logger, optional): The logger to pipe to. Defaults to the runner logger.

        Returns:
            EventHandler: The handler which is the event pipe.
        """
        logger = logger or self.logger

        def process_log_event(ev: Event):
            if ev.name == self.error_event_name:
                err: Exception = ev.args[-1] if len(ev.args) > 0 else Exception("Unknown error")
                msg = (
                    "\n".join(traceback.format_exception(err.__class__, err, err.__traceback__))
                    if isinstance(err, Exception)
                    else err
                )
                logger.error(msg)

        bind_handler = EventHandler(on_event=process_log_event)
        self.pipe(bind_handler)
        return bind_handler

    @thread_synchronized
    def _next_shard(self) -> Optional[int]:
        if len(self._errors) > 0 or len(self._pending) == 0:
            return None
        if self.stop_after is not None and self._completed_in_run >= self.stop_after:
            return None
        # reserve the slot now so concurrent workers do not overrun stop_after
        self._completed_in_run += 1
        return self._pending.pop(0)

    @thread_synchronized
    def _complete_shard(self, result: ShardResult):
        self._results[result.shard_id] = result
        if self.checkpoint is not None:
            self.checkpoint.append(CheckpointRecord(result, self.shard_digests[result.shard_id]))
        self.emit(self.shard_completed_event_name, result)
        self.log(
            f"Shard {result.shard_id + 1}/{self.shard_count} done ({len(self._results)} complete)",
            level=logging.DEBUG,
        )

    @thread_synchronized
    def _fail(self, err: Exception):
        self._errors.append(err)

    def _work(self):
        while True:
            shard_id = self._next_shard()
            if shard_id is None:
                return
            start, stop = self.shard_ranges[shard_id]
            try:
                result = self.formula.evaluate_range(shard_id, start, stop)
            except Exception as ex:
                self._fail(ex)
                self.emit_error(ex)
                return
            self._complete_shard(result)

    def run(self) -> ComputationReport:
        """Runs (or resumes) the formula.

        Raises:
            CheckpointException: If the checkpoint does not belong to this run.

        Returns:
            ComputationReport: The report, incomplete if the run was stopped early.
        """
        started = time.time()
        if self.checkpoint is not None:
            for shard_id, record in self.checkpoint.load(self.shard_digests).items():
                self._results[shard_id] = record.result
            if len(self._results) > 0:
                self.log(f"Resuming, {len(self._results)}/{self.shard_count} shards already complete")

        self._pending = [i for i in range(self.shard_count) if i not in self._results]
        self.log(
            f"Running {self.formula.method} for n={self.formula.n}"
            + f" over {len(self._pending)} shards with {self.workers} workers"
        )
        if len(self._pending) > 0:
            self.formula.prepare()

        tasks: List[Task] = []
        for idx in range(min(self.workers, max(1, len(self._pending)))):
            task = Task(
                self._work,
                use_async_loop=False,
                use_daemon_thread=True,
                thread_name=f"{self.__class__.__name__} {id(self)} worker {idx}",
            )
            tasks.append(task)
            task.start()
        Task.wait_for_all(tasks)

        if len(self._errors) > 0:
            raise self._errors[0]

        complete = len(self._results) == self.shard_count
        result = 0
        terms = 0
        details = {}
        for shard_id in sorted(self._results.keys()):
            shard = self._results[shard_id]
            result += shard.partial_sum
            terms += shard.term_count
            merge_details(details, shard.details)

        if not complete:
            self.log(
                f"Stopped with {len(self._results)}/{self.shard_count} shards complete",
                level=logging.WARNING,
            )

        return ComputationReport(
            method=self.formula.method,
            n=self.formula.n,
            result=result,
            terms=terms,
            seconds=time.time() - started,
            shard_count=self.shard_count,
            shard_digest=self.run_digest,
            workers=self.workers,
            reduce_symmetry=self.formula.reduce_symmetry,
            cache=self.formula.counter.stats.as_dict(),
            complete=complete,
            details=details,
        )
