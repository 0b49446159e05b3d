"""Parallel sampling jobs built from fixed-size RNG blocks.

Work is split into blocks of ``BLOCK_SIZE`` samples; block ``j`` of a
job is always drawn from stream ``base_stream + j`` of the job's master
seed.  Because the block decomposition depends only on the sample count,
results are bit-identical for any worker count, and a shorter run is a
prefix of a longer one with the same seed.
"""

from __future__ import annotations

import multiprocessing
import os

import numpy as np

from .errors import DomainError
from .histogram import JointHistogram
from .sampling import Ensemble, SeedSpec, sample_amplitudes
from .states import (
    concurrence,
    entanglement_from_concurrence,
    mutual_information,
    probabilities,
)

BLOCK_SIZE = 250_000

# Excess of MI over the entanglement bound tolerated before a sample
# counts as a violation.
BOUND_TOL = 1e-9


def observables(amplitudes) -> tuple[np.ndarray, np.ndarray]:
    """(concurrence, mutual information) arrays for a batch of states."""
    return (
        np.atleast_1d(concurrence(amplitudes)),
        np.atleast_1d(mutual_information(probabilities(amplitudes))),
    )


def block_plan(n: int, block_size: int = BLOCK_SIZE) -> list[tuple[int, int]]:
    """(block_index, count) pairs covering ``n`` samples."""
    if n < 1:
        raise DomainError("sample count must be at least 1")
    if block_size < 1:
        raise DomainError("block size must be at least 1")
    plan = []
    done = 0
    index = 0
    while done < n:
        take = min(block_size, n - done)
        plan.append((index, take))
        done += take
        index += 1
    return plan


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        return max(os.cpu_count() or 1, 1)
    if workers < 1:
        raise DomainError("worker count must be at least 1")
    return int(workers)


def _run_tasks(task, args_list, workers: int):
    # Streamed so a long job never holds every partial result at once;
    # all consumers reduce with commutative operations.
    if workers == 1 or len(args_list) == 1:
        for args in args_list:
            yield task(args)
        return
    with multiprocessing.Pool(processes=min(workers, len(args_list))) as pool:
        yield from pool.imap_unordered(task, args_list, chunksize=1)


def _histogram_block(args) -> np.ndarray:
    kind, master_seed, stream_id, count, delta_c, delta_i = args
    amplitudes = sample_amplitudes(
        Ensemble(kind), SeedSpec(master_seed, stream_id), count
    )
    c, i = observables(amplitudes)
    local = JointHistogram(delta_c, delta_i)
    local.accumulate_many(c, i)
    return local.counts


def run_histogram_job(
    kind: Ensemble,
    n: int,
    master_seed: int,
    delta_c: float,
    delta_i: float,
    workers: int | None = None,
    base_stream: int = 0,
    block_size: int = BLOCK_SIZE,
) -> JointHistogram:
    """Sample ``n`` states and histogram their (C, I) pairs.

    Deterministic in (kind, n, master_seed, deltas, base_stream,
    block_size); the worker count only affects wall time.
    """
    workers = resolve_workers(workers)
    kind = Ensemble(kind)
    out = JointHistogram(delta_c, delta_i)
    args_list = [
        (kind.value, master_seed, base_stream + j, count, delta_c, delta_i)
        for j, count in block_plan(n, block_size)
    ]
    for counts in _run_tasks(_histogram_block, args_list, workers):
        out.counts += counts
    out.total = n
    return out


def _bound_block(args) -> tuple[int, float]:
    kind, master_seed, stream_id, count, tol = args
    amplitudes = sample_amplitudes(
        Ensemble(kind), SeedSpec(master_seed, stream_id), count
    )
    c, i = observables(amplitudes)
    excess = i - entanglement_from_concurrence(c) - tol
    return int(np.count_nonzero(excess > 0.0)), float(excess.max())


def run_bound_scan(
    kind: Ensemble,
    n: int,
    master_seed: int,
    tol: float = BOUND_TOL,
    workers: int | None = None,
    base_stream: int = 0,
    block_size: int = BLOCK_SIZE,
) -> tuple[int, float]:
    """Count samples whose MI exceeds the entanglement bound plus ``tol``.

    Returns (violations, max_excess) where max_excess is the largest
    amount by which any sample exceeded the tolerated bound (clipped at
    zero when there are no violations).
    """
    workers = resolve_workers(workers)
    kind = Ensemble(kind)
    args_list = [
        (kind.value, master_seed, base_stream + j, count, tol)
        for j, count in block_plan(n, block_size)
    ]
    violations = 0
    max_excess = 0.0
    for bad, excess in _run_tasks(_bound_block, args_list, workers):
        violations += bad
        max_excess = max(max_excess, excess)
    return violations, max(max_excess, 0.0)
