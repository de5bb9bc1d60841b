"""Matrix families, seeded sampling and the parallel batch runner."""
from __future__ import annotations

import asyncio
import itertools
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from config import settings
from systems.charmatrix import ReducedVectorMatrix, cyclic_matrix, is_characteristic, parse_matrix
from systems.cobordism import pontryagin_report, sw_report
from systems.database import ResultStore
from systems.errors import BadParams, BottbordError, InfeasibleSpec
from systems.models import FamilyKind, FamilySpec, ResultRecord
from systems.polynomial import Coefficients
from systems.polytope import SimplexProduct, make_product
from utils.helpers import format_duration, worker_count

logger = logging.getLogger(__name__)

TASKS = frozenset({"sw", "pontryagin"})
Position = Tuple[int, int]


class FamilyEnumerator:
    """Deterministic stream of valid matrices described by a FamilySpec."""

    def __init__(self, spec: FamilySpec):
        self.spec = spec
        try:
            self.P: SimplexProduct = make_product(spec.dims)
        except BottbordError as e:
            raise InfeasibleSpec(f"Bad family dims: {e}")
        self.mode = Coefficients.parse(spec.coefficients)
        self.skipped = 0
        self._check()

    def _check(self):
        kind = self.spec.kind
        if kind is FamilyKind.CYCLIC:
            if not all(d == 1 for d in self.P.dims):
                raise InfeasibleSpec("Cyclic families live over cubes (all dims 1)")
            if self.P.m < 2:
                raise InfeasibleSpec("Cyclic families need at least two factors")
            if self.mode is not Coefficients.INTEGER:
                raise InfeasibleSpec("Cyclic families are integer families")
            if self.spec.bound < 1:
                raise InfeasibleSpec("Cyclic entries are nonzero; bound must be >= 1")
        if kind is FamilyKind.EXPLICIT and self.spec.rows is None:
            raise InfeasibleSpec("Explicit families need rows")

    @property
    def target_product(self) -> int:
        if self.spec.target_product is not None:
            return self.spec.target_product
        return 2 if self.P.m % 2 == 0 else -2

    def entry_values(self) -> List[int]:
        if self.mode.is_mod_two:
            return [0, 1]
        return list(range(-self.spec.bound, self.spec.bound + 1))

    def free_positions(self) -> List[Position]:
        """(row, column) cells that vary across the family."""
        offsets = self.P.block_offsets()
        cells = []
        for i in range(self.P.m):
            for j in range(self.P.m):
                if j == i:
                    continue
                if self.spec.kind is FamilyKind.TRIANGULAR and j < i:
                    continue
                cells.extend((i, offsets[j] + k) for k in range(self.P.dims[j]))
        return cells

    def cardinality(self) -> int:
        """Number of candidates before the characteristic filter."""
        kind = self.spec.kind
        if kind is FamilyKind.EXPLICIT:
            return len(self.spec.rows or [])
        if kind is FamilyKind.CYCLIC:
            return sum(1 for _ in self._cyclic_vectors())
        return len(self.entry_values()) ** len(self.free_positions())

    def _fill(self, values: Sequence[int]) -> ReducedVectorMatrix:
        offsets = self.P.block_offsets()
        rows = [[0] * self.P.n for _ in range(self.P.m)]
        for i, d in enumerate(self.P.dims):
            for k in range(d):
                rows[i][offsets[i] + k] = 1
        for (r, c), value in zip(self.free_positions(), values):
            rows[r][c] = value
        return parse_matrix(self.P.dims, self.mode, rows)

    def _cyclic_vectors(self) -> Iterator[Tuple[int, ...]]:
        values = [v for v in range(-self.spec.bound, self.spec.bound + 1) if v != 0]
        for b in itertools.product(values, repeat=self.P.m):
            prod = 1
            for x in b:
                prod *= x
            if prod == self.target_product:
                yield b

    def _candidates(self) -> Iterator[ReducedVectorMatrix]:
        kind = self.spec.kind
        if kind is FamilyKind.CYCLIC:
            for b in self._cyclic_vectors():
                yield cyclic_matrix(b)
        elif kind is FamilyKind.EXPLICIT:
            for rows in self.spec.rows or []:
                yield parse_matrix(self.P.dims, self.mode, rows)
        else:
            count = len(self.free_positions())
            for values in itertools.product(self.entry_values(), repeat=count):
                yield self._fill(values)

    def __iter__(self) -> Iterator[ReducedVectorMatrix]:
        emitted = 0
        for A in self._candidates():
            if self.spec.cap is not None and emitted >= self.spec.cap:
                return
            if not is_characteristic(A):
                self.skipped += 1
                continue
            emitted += 1
            yield A

    def sample(self, count: int, rng: random.Random) -> List[ReducedVectorMatrix]:
        """Up to `count` random valid members (with replacement for product families)."""
        kind = self.spec.kind
        if kind in (FamilyKind.CYCLIC, FamilyKind.EXPLICIT):
            members = list(self)
            return rng.sample(members, min(count, len(members)))

        values = self.entry_values()
        cells = len(self.free_positions())
        out: List[ReducedVectorMatrix] = []
        attempts = 0
        while len(out) < count and attempts < settings.MAX_SAMPLE_ATTEMPTS:
            attempts += 1
            A = self._fill([rng.choice(values) for _ in range(cells)])
            if is_characteristic(A):
                out.append(A)
            else:
                self.skipped += 1
        if len(out) < count:
            logger.warning(f"Sampled only {len(out)}/{count} valid matrices over {list(self.P.dims)} "
                           f"after {attempts} attempts")
        return out


def enum_family(spec: FamilySpec) -> Iterator[ReducedVectorMatrix]:
    return iter(FamilyEnumerator(spec))


def sample_family(spec: FamilySpec, count: int, rng: Optional[random.Random] = None) -> List[ReducedVectorMatrix]:
    return FamilyEnumerator(spec).sample(count, rng or random.Random(settings.SEED))


def evaluate_instance(A: ReducedVectorMatrix, tasks: Iterable[str] = TASKS) -> ResultRecord:
    P = A.product
    tasks = set(tasks)
    record = ResultRecord(dims=list(A.dims), mode=A.mode.value, rows=A.to_rows())
    if "sw" in tasks:
        sw = sw_report(P, A)
        record.sw_all_zero = sw.all_zero
        record.sw_numbers = dict(sw.values)
    if "pontryagin" in tasks:
        pont = pontryagin_report(P, A)
        if pont is not None and pont.applicable:
            record.pontryagin_all_zero = pont.all_zero
            record.pontryagin_numbers = dict(pont.values)
    record.created_at = datetime.now(timezone.utc).isoformat()
    return record


class BatchRunner:
    def __init__(self, store: ResultStore, threads: Optional[int] = None):
        self.store = store
        self.workers = worker_count(threads)

    async def batch_run(self, spec: FamilySpec, tasks: Iterable[str] = TASKS, fresh: bool = False) -> Dict[str, int]:
        """Evaluate every family member in a worker pool and append the records in family order.

        `fresh` truncates the store first.
        """
        tasks = frozenset(tasks)
        unknown = tasks - TASKS
        if unknown:
            raise BadParams(f"Unknown batch tasks: {sorted(unknown)}")

        started = time.perf_counter()
        enumerator = FamilyEnumerator(spec)
        matrices = list(enumerator)
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            records = await asyncio.gather(
                *(loop.run_in_executor(pool, evaluate_instance, A, tasks) for A in matrices)
            )
        if fresh:
            await self.store.clear()
        await self.store.append_records(records)

        summary = {
            "total": len(records),
            "skipped": enumerator.skipped,
            "sw_nonzero": sum(1 for r in records if r.sw_all_zero is False),
            "pontryagin_nonzero": sum(1 for r in records if r.pontryagin_all_zero is False),
        }
        logger.info(f"Batch over {list(spec.dims)} ({spec.kind.value}): {summary} "
                    f"with {self.workers} workers in {format_duration(time.perf_counter() - started)}")
        return summary


def run_batch(spec: FamilySpec, output: str, tasks: Iterable[str] = TASKS,
              threads: Optional[int] = None, fresh: bool = False) -> Dict[str, int]:
    return asyncio.run(BatchRunner(ResultStore(output), threads).batch_run(spec, tasks, fresh))
