"""Streaming, mergeable 2D histograms of (concurrence, mutual information).

Counts are exact 64-bit integers, so merging partial histograms from
parallel workers is associative, commutative, and bit-reproducible.
Both axes cover [0, 1] with half-open bins [k*delta, (k+1)*delta); the
final bin is closed so that values exactly equal to 1 are kept.

Serialized forms
----------------
Joint histogram CSV: a header line

    # joint_histogram delta_c=<v> delta_i=<v> total=<n>

optionally followed by further ``#`` comment lines (callers may add
self-describing metadata), then one ``c_bin_index,i_bin_index,count``
row per nonzero bin in row-major order.  Densities serialize as
``bin_center,density`` rows, slice statistics as
``i_center,c_star,mean_c,std_c,count`` rows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .errors import (
    DomainError,
    EmptyHistogramError,
    EmptySliceError,
    OutOfRangeError,
    ShapeMismatchError,
)

# Values may poke out of [0, 1] by at most this much before they are an error.
_EDGE_TOL = 1e-12

_CSV_HEADER_PREFIX = "# joint_histogram "


def bin_count(delta: float) -> int:
    """Number of bins of width ``delta`` needed to cover [0, 1]."""
    if not 0.0 < delta <= 1.0:
        raise DomainError(f"bin width {delta!r} outside (0, 1]")
    inverse = 1.0 / delta
    nearest = round(inverse)
    if abs(inverse - nearest) < 1e-9:
        return int(nearest)
    return int(math.ceil(inverse))


def bin_edges(delta: float, nbins: int) -> np.ndarray:
    """Bin edges over [0, 1]; the last edge is pinned to 1.0."""
    edges = delta * np.arange(nbins + 1, dtype=np.float64)
    edges[-1] = 1.0
    return edges


def bin_centers(delta: float, nbins: int) -> np.ndarray:
    edges = bin_edges(delta, nbins)
    return 0.5 * (edges[:-1] + edges[1:])


def _bin_indices(values: np.ndarray, delta: float, nbins: int) -> np.ndarray:
    idx = (values / delta).astype(np.int64)
    return np.minimum(idx, nbins - 1)


def _clip_unit_interval(values: np.ndarray, what: str) -> np.ndarray:
    if values.size and (
        np.min(values) < -_EDGE_TOL or np.max(values) > 1.0 + _EDGE_TOL
    ):
        raise OutOfRangeError(f"{what} values outside [0, 1] beyond tolerance")
    return np.clip(values, 0.0, 1.0)


@dataclass
class Density1D:
    """Binned probability density over [0, 1].

    ``values[k]`` is the density on bin k; sum(values) * delta == 1 for
    any non-empty source histogram.
    """

    label: str
    delta: float
    values: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return bin_centers(self.delta, len(self.values))

    def integral(self) -> float:
        return float(np.sum(self.values) * self.delta)


@dataclass(frozen=True)
class SliceStats:
    """Summary of the concurrence distribution within one MI slice."""

    i_center: float
    i_halfwidth: float
    c_star: float
    mean_c: float
    std_c: float
    count: int


class JointHistogram:
    """Mergeable 2D histogram over [0, 1] x [0, 1].

    A histogram instance is single-writer; build one per worker and
    combine with :meth:`merge`.  Reads on a finished histogram are safe
    from any number of threads.
    """

    def __init__(self, delta_c: float, delta_i: float):
        self.delta_c = float(delta_c)
        self.delta_i = float(delta_i)
        self.nbins_c = bin_count(self.delta_c)
        self.nbins_i = bin_count(self.delta_i)
        self.counts = np.zeros((self.nbins_c, self.nbins_i), dtype=np.uint64)
        self.total = 0

    # -- construction ------------------------------------------------

    def accumulate(self, c: float, i: float) -> None:
        """Add a single (concurrence, mutual information) observation."""
        self.accumulate_many(np.atleast_1d(c), np.atleast_1d(i))

    def accumulate_many(self, c, i) -> None:
        """Add a batch of observations from two equal-length arrays."""
        c = np.asarray(c, dtype=np.float64).ravel()
        i = np.asarray(i, dtype=np.float64).ravel()
        if c.shape != i.shape:
            raise ShapeMismatchError("c and i batches must have the same length")
        if c.size == 0:
            return
        c = _clip_unit_interval(c, "concurrence")
        i = _clip_unit_interval(i, "mutual information")
        idx_c = _bin_indices(c, self.delta_c, self.nbins_c)
        idx_i = _bin_indices(i, self.delta_i, self.nbins_i)
        flat = np.bincount(
            idx_c * self.nbins_i + idx_i, minlength=self.nbins_c * self.nbins_i
        )
        self.counts += flat.astype(np.uint64).reshape(self.counts.shape)
        self.total += int(c.size)

    def merge(self, other: "JointHistogram") -> "JointHistogram":
        """Elementwise sum with an identically binned histogram."""
        if (self.delta_c, self.delta_i) != (other.delta_c, other.delta_i):
            raise ShapeMismatchError("histograms have different bin widths")
        out = JointHistogram(self.delta_c, self.delta_i)
        out.counts = self.counts + other.counts
        out.total = self.total + other.total
        return out

    def coarsen(self, factor_c: int, factor_i: int) -> "JointHistogram":
        """Exact rebinning by integer factors along each axis."""
        if self.nbins_c % factor_c or self.nbins_i % factor_i:
            raise ShapeMismatchError("coarsening factors must divide the bin counts")
        out = JointHistogram(self.delta_c * factor_c, self.delta_i * factor_i)
        if out.counts.shape != (self.nbins_c // factor_c, self.nbins_i // factor_i):
            raise ShapeMismatchError("coarsened bin widths do not tile [0, 1]")
        out.counts = (
            self.counts.reshape(
                out.nbins_c, factor_c, out.nbins_i, factor_i
            ).sum(axis=(1, 3), dtype=np.uint64)
        )
        out.total = self.total
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, JointHistogram):
            return NotImplemented
        return (
            (self.delta_c, self.delta_i, self.total)
            == (other.delta_c, other.delta_i, other.total)
            and np.array_equal(self.counts, other.counts)
        )

    # -- bin geometry --------------------------------------------------

    def centers(self, axis: str) -> np.ndarray:
        delta, nbins = self._axis(axis)
        return bin_centers(delta, nbins)

    def _axis(self, axis: str):
        axis = axis.lower()
        if axis == "c":
            return self.delta_c, self.nbins_c
        if axis == "i":
            return self.delta_i, self.nbins_i
        raise ValueError("axis must be 'c' or 'i'")

    # -- densities and statistics ---------------------------------------

    def marginal(self, axis: str) -> Density1D:
        """Marginal density over concurrence (axis='c') or MI (axis='i')."""
        if self.total == 0:
            raise EmptyHistogramError("cannot normalize an empty histogram")
        delta, _ = self._axis(axis)
        sums = self.counts.sum(axis=1 if axis.lower() == "c" else 0, dtype=np.float64)
        return Density1D(axis.upper(), delta, sums / (self.total * delta))

    def _slice_bins(self, axis: str, lo: float, hi: float) -> np.ndarray:
        centers = self.centers(axis)
        return np.flatnonzero((centers >= lo) & (centers <= hi))

    def concurrence_slice(self, i_lo: float, i_hi: float) -> Density1D:
        """Conditional density of concurrence given MI in [i_lo, i_hi].

        A bin belongs to the slice when its center lies in the closed
        interval, which keeps the boundaries robust to 1-ulp edge
        effects.
        """
        if not 0.0 <= i_lo < i_hi <= 1.0:
            raise DomainError("slice bounds must satisfy 0 <= lo < hi <= 1")
        return self._conditional("c", "i", i_lo, i_hi)

    def mi_slice(self, c_lo: float, c_hi: float) -> Density1D:
        """Conditional density of MI given concurrence in [c_lo, c_hi]."""
        if not 0.0 <= c_lo < c_hi <= 1.0:
            raise DomainError("slice bounds must satisfy 0 <= lo < hi <= 1")
        return self._conditional("i", "c", c_lo, c_hi)

    def _conditional(self, keep: str, sliced: str, lo: float, hi: float) -> Density1D:
        picked = self._slice_bins(sliced, lo, hi)
        if picked.size == 0:
            raise EmptySliceError(f"no {sliced}-bins with centers in [{lo}, {hi}]")
        if sliced == "i":
            block = self.counts[:, picked]
            sums = block.sum(axis=1, dtype=np.float64)
        else:
            block = self.counts[picked, :]
            sums = block.sum(axis=0, dtype=np.float64)
        in_slice = float(sums.sum())
        if in_slice == 0.0:
            raise EmptySliceError(f"slice [{lo}, {hi}] over {sliced} holds no counts")
        delta, _ = self._axis(keep)
        return Density1D(keep.upper(), delta, sums / (in_slice * delta))

    def slice_stats(self, i_center: float, i_halfwidth: float) -> SliceStats:
        """Peak position, mean, and spread of concurrence in one MI slice.

        The peak is the center of the highest bin of the sliced counts
        (ties resolve to the lowest bin); mean and standard deviation are
        taken over bin centers weighted by counts.
        """
        if i_halfwidth <= 0.0:
            raise DomainError("slice halfwidth must be positive")
        lo = i_center - i_halfwidth
        hi = i_center + i_halfwidth
        picked = self._slice_bins("i", lo, hi)
        if picked.size == 0:
            raise EmptySliceError(f"no i-bins with centers in [{lo}, {hi}]")
        sums = self.counts[:, picked].sum(axis=1, dtype=np.float64)
        count = int(sums.sum())
        if count == 0:
            raise EmptySliceError(f"slice around i={i_center} holds no counts")
        centers = self.centers("c")
        weights = sums / count
        mean = float(weights @ centers)
        second = float(weights @ (centers * centers))
        return SliceStats(
            i_center=float(i_center),
            i_halfwidth=float(i_halfwidth),
            c_star=float(centers[int(np.argmax(sums))]),
            mean_c=mean,
            std_c=math.sqrt(max(second - mean * mean, 0.0)),
            count=count,
        )

    # -- serialization ---------------------------------------------------

    def header_line(self) -> str:
        return (
            f"{_CSV_HEADER_PREFIX}delta_c={self.delta_c!r} "
            f"delta_i={self.delta_i!r} total={self.total}"
        )

    def write_csv(self, stream: IO[str], meta: dict | None = None) -> None:
        stream.write(self.header_line() + "\n")
        if meta:
            pairs = " ".join(f"{k}={v}" for k, v in meta.items())
            stream.write(f"# meta {pairs}\n")
        rows, cols = np.nonzero(self.counts)
        values = self.counts[rows, cols]
        for r, c, v in zip(rows.tolist(), cols.tolist(), values.tolist()):
            stream.write(f"{r},{c},{v}\n")

    def to_json_dict(self, meta: dict | None = None) -> dict:
        rows, cols = np.nonzero(self.counts)
        values = self.counts[rows, cols]
        payload = {
            "delta_c": self.delta_c,
            "delta_i": self.delta_i,
            "total": self.total,
            "bins": [
                [int(r), int(c), int(v)]
                for r, c, v in zip(rows.tolist(), cols.tolist(), values.tolist())
            ],
        }
        if meta:
            payload["meta"] = dict(meta)
        return payload

    def write_json(self, stream: IO[str], meta: dict | None = None) -> None:
        json.dump(self.to_json_dict(meta), stream, sort_keys=True, separators=(",", ":"))
        stream.write("\n")

    @classmethod
    def read_csv(cls, stream: IO[str]) -> "JointHistogram":
        header = None
        for line in stream:
            line = line.strip()
            if line:
                header = line
                break
        if header is None or not header.startswith(_CSV_HEADER_PREFIX):
            raise ValueError("missing '# joint_histogram' header line")
        fields = dict(
            token.split("=", 1) for token in header[len(_CSV_HEADER_PREFIX):].split()
        )
        hist = cls(float(fields["delta_c"]), float(fields["delta_i"]))
        declared_total = int(fields["total"])
        for line in stream:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            r, c, v = line.split(",")
            hist.counts[int(r), int(c)] += np.uint64(int(v))
        hist.total = int(hist.counts.sum())
        if hist.total != declared_total:
            raise ValueError(
                f"histogram corrupt: header total {declared_total} != "
                f"sum of counts {hist.total}"
            )
        return hist

    @classmethod
    def from_json_dict(cls, payload: dict) -> "JointHistogram":
        hist = cls(float(payload["delta_c"]), float(payload["delta_i"]))
        for r, c, v in payload["bins"]:
            hist.counts[int(r), int(c)] += np.uint64(int(v))
        hist.total = int(hist.counts.sum())
        if hist.total != int(payload["total"]):
            raise ValueError("histogram corrupt: total does not match bins")
        return hist

    @classmethod
    def read_json(cls, stream: IO[str]) -> "JointHistogram":
        return cls.from_json_dict(json.load(stream))


def load_histogram(path) -> JointHistogram:
    """Read a histogram file, sniffing CSV vs JSON from the first byte."""
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.read(1)
        fh.seek(0)
        if first == "{":
            return JointHistogram.read_json(fh)
        return JointHistogram.read_csv(fh)


def write_density_csv(density: Density1D, stream: IO[str]) -> None:
    """Emit ``bin_center,density`` rows for a 1D density."""
    stream.write("bin_center,density\n")
    for center, value in zip(density.centers.tolist(), density.values.tolist()):
        stream.write(f"{center!r},{value!r}\n")


def write_slice_stats_csv(rows: Iterable[SliceStats], stream: IO[str]) -> None:
    """Emit ``i_center,c_star,mean_c,std_c,count`` rows."""
    stream.write("i_center,c_star,mean_c,std_c,count\n")
    for row in rows:
        stream.write(
            f"{row.i_center!r},{row.c_star!r},{row.mean_c!r},{row.std_c!r},{row.count}\n"
        )
