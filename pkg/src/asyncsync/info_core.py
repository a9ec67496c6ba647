"""Distribution algebra, information measures, empirical types, capacity.

Conventions used throughout the package:

* every information quantity is in nats (natural logarithm);
* 0 ln 0 = 0 and 0 ln(0/0) = 0; a positive numerator over a zero
  denominator yields +inf, propagated as ``math.inf`` (never NaN);
* probabilities are stored linearly, type-class probabilities are
  evaluated in the log domain through ``lgamma`` so denominators up to
  10**6 stay representable.

Construction of the probability containers validates normalization to
1e-12; operations that return fresh distributions clamp round-off
negatives at -1e-15 and renormalize exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Dist",
    "CondDist",
    "JointDist",
    "Dmc",
    "EmpiricalType",
    "entropy",
    "kl_divergence",
    "mutual_information",
    "output_marginal",
    "joint_from",
    "empirical_type",
    "joint_empirical_type",
    "capacity",
    "divergence_to_noise",
    "sync_threshold",
    "type_class_log_prob",
    "bucket_shift",
    "load_channel",
    "save_channel",
    "ChannelFormatError",
]

SUM_TOL = 1e-12
NEG_CLAMP = -1e-15


def _prob_array(values, name: str, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if arr.min(initial=0.0) < NEG_CLAMP:
        raise ValueError(f"{name} has negative entries below {NEG_CLAMP}")
    np.clip(arr, 0.0, None, out=arr)
    total = float(arr.sum())
    if abs(total - 1.0) > SUM_TOL:
        raise ValueError(f"{name} sums to {total!r}, not 1 within {SUM_TOL}")
    arr /= total
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Dist:
    """Probability vector over a finite alphabet."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _prob_array(self.probs, "probs", 1))

    @property
    def size(self) -> int:
        return self.probs.shape[0]

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i: int) -> float:
        return float(self.probs[i])


@dataclass(frozen=True, eq=False)
class CondDist:
    """Conditional kernel: one output Dist per input symbol."""

    rows: np.ndarray

    def __post_init__(self):
        arr = np.array(self.rows, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"rows must be a 2-d matrix, got shape {arr.shape}")
        rows = np.stack([_prob_array(r, f"row {x}", 1) for x, r in enumerate(arr)])
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    def row(self, x: int) -> Dist:
        return Dist(self.rows[x])


@dataclass(frozen=True, eq=False)
class JointDist:
    """Joint distribution over a product alphabet X x Y."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _prob_array(self.probs, "probs", 2))

    @property
    def shape(self) -> tuple[int, int]:
        return self.probs.shape

    def marginal_x(self) -> Dist:
        return Dist(self.probs.sum(axis=1))

    def marginal_y(self) -> Dist:
        return Dist(self.probs.sum(axis=0))


@dataclass(frozen=True, eq=False)
class Dmc:
    """Discrete memoryless channel with a designated noise input.

    ``kernel.rows[star_index]`` is the output distribution observed when no
    codeword symbol is being transmitted.
    """

    kernel: CondDist
    star_index: int

    def __post_init__(self):
        if not isinstance(self.kernel, CondDist):
            object.__setattr__(self, "kernel", CondDist(self.kernel))
        if not 0 <= self.star_index < self.kernel.input_size:
            raise ValueError(
                f"star_index {self.star_index} out of range for "
                f"{self.kernel.input_size} inputs"
            )
        reachable = self.kernel.rows.max(axis=0) > 0.0
        if not reachable.all():
            dead = np.flatnonzero(~reachable).tolist()
            raise ValueError(f"outputs {dead} are unreachable from every input")

    @property
    def input_size(self) -> int:
        return self.kernel.input_size

    @property
    def output_size(self) -> int:
        return self.kernel.output_size

    @property
    def star_row(self) -> Dist:
        return self.kernel.row(self.star_index)

    def row(self, x: int) -> Dist:
        return self.kernel.row(x)


@dataclass(frozen=True, eq=False)
class EmpiricalType:
    """Integer symbol counts of a finite sequence (1-d) or pair sequence (2-d)."""

    counts: np.ndarray

    def __post_init__(self):
        arr = np.array(self.counts, dtype=np.int64)
        if arr.ndim not in (1, 2):
            raise ValueError(f"counts must be 1-d or 2-d, got shape {arr.shape}")
        if arr.size == 0 or (arr < 0).any():
            raise ValueError("counts must be non-empty and non-negative")
        if arr.sum() <= 0:
            raise ValueError("counts must sum to a positive length")
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @property
    def n(self) -> int:
        """Sequence length (the type's denominator)."""
        return int(self.counts.sum())

    def as_dist(self) -> Dist:
        if self.counts.ndim != 1:
            raise ValueError("as_dist needs 1-d counts, use as_joint for pairs")
        return Dist(self.counts / self.n)

    def as_joint(self) -> JointDist:
        if self.counts.ndim != 2:
            raise ValueError("as_joint needs 2-d counts")
        return JointDist(self.counts / self.n)


def entropy(p: Dist) -> float:
    """Shannon entropy in nats, 0 ln 0 = 0."""
    v = p.probs
    pos = v > 0.0
    return float(-(v[pos] * np.log(v[pos])).sum())


def kl_divergence(p: Dist, q: Dist) -> float:
    """D(p || q) in nats; +inf when p puts mass outside q's support."""
    if p.size != q.size:
        raise ValueError(f"alphabet mismatch: {p.size} vs {q.size}")
    pv, qv = p.probs, q.probs
    pos = pv > 0.0
    if np.any(qv[pos] == 0.0):
        return math.inf
    return float((pv[pos] * (np.log(pv[pos]) - np.log(qv[pos]))).sum())


def mutual_information(j: JointDist) -> float:
    """I(J) = D(J || J_X x J_Y), always finite and non-negative."""
    m = j.probs
    px = m.sum(axis=1)
    py = m.sum(axis=0)
    pos = m > 0.0
    ref = np.outer(px, py)
    val = float((m[pos] * (np.log(m[pos]) - np.log(ref[pos]))).sum())
    return max(val, 0.0)


def output_marginal(p: Dist, q: Dmc) -> Dist:
    """Output distribution (PQ)_Y of input distribution p pushed through q."""
    if p.size != q.input_size:
        raise ValueError(f"input size mismatch: {p.size} vs {q.input_size}")
    return Dist(p.probs @ q.kernel.rows)


def joint_from(p: Dist, v: CondDist) -> JointDist:
    """Joint distribution with entries p(x) v(y|x)."""
    if p.size != v.input_size:
        raise ValueError(f"input size mismatch: {p.size} vs {v.input_size}")
    return JointDist(p.probs[:, None] * v.rows)


def empirical_type(seq, size: int | None = None) -> EmpiricalType:
    """Symbol counts of a sequence; ``size`` fixes the alphabet width."""
    arr = np.asarray(seq, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("sequence must be non-empty and 1-d")
    if arr.min() < 0:
        raise ValueError("symbols must be non-negative integers")
    k = int(arr.max()) + 1 if size is None else size
    if arr.max() >= k:
        raise ValueError(f"symbol {int(arr.max())} out of range for alphabet {k}")
    return EmpiricalType(np.bincount(arr, minlength=k))


def joint_empirical_type(
    xseq, yseq, x_size: int | None = None, y_size: int | None = None
) -> EmpiricalType:
    """Pairwise counts of two equal-length sequences, as a 2-d type."""
    xs = np.asarray(xseq, dtype=np.int64)
    ys = np.asarray(yseq, dtype=np.int64)
    if xs.size == 0:
        raise ValueError("sequences must be non-empty")
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("sequences must be 1-d and of equal length")
    kx = int(xs.max()) + 1 if x_size is None else x_size
    ky = int(ys.max()) + 1 if y_size is None else y_size
    if xs.max() >= kx or ys.max() >= ky:
        raise ValueError("symbol out of range for declared alphabet sizes")
    flat = np.bincount(xs * ky + ys, minlength=kx * ky)
    return EmpiricalType(flat.reshape(kx, ky))


def capacity(
    q: Dmc, gap_tol: float = 1e-12, max_iter: int = 100_000
) -> tuple[float, Dist]:
    """Channel capacity by alternating maximization (Blahut-Arimoto).

    Returns the best lower bound I(PQ) at the final input distribution,
    stopping once the dual gap max_x D(Q_x||W) - I drops below ``gap_tol``.
    """
    rows = q.kernel.rows
    nx = rows.shape[0]
    logp = np.full(nx, -math.log(nx))
    supp = rows > 0.0
    logrows = np.where(supp, np.log(np.where(supp, rows, 1.0)), 0.0)
    lower = 0.0
    for _ in range(max_iter):
        p = np.exp(logp - logp.max())
        p /= p.sum()
        w = p @ rows
        # c_x = D(Q_x || W); W covers every row's support while p > 0
        logw = np.where(w > 0.0, np.log(np.where(w > 0.0, w, 1.0)), -math.inf)
        c = np.where(supp, rows * (logrows - logw[None, :]), 0.0).sum(axis=1)
        lower = float(p @ c)
        upper = float(c.max())
        if upper - lower < gap_tol:
            break
        logp = logp + c
        logp -= logp.max()
    p = np.exp(logp - logp.max())
    p /= p.sum()
    return max(lower, 0.0), Dist(p)


def divergence_to_noise(q: Dmc, x: int) -> float:
    """D(Q(.|x) || Q(.|star)) for one input symbol."""
    if not 0 <= x < q.input_size:
        raise ValueError(f"input index {x} out of range for {q.input_size} inputs")
    return kl_divergence(q.row(x), q.star_row)


def sync_threshold(q: Dmc) -> float:
    """Largest asynchronism exponent with vanishing error: max_x D(Q_x || Q_star).

    +inf when some input can produce an output the noise never produces.
    """
    return max(divergence_to_noise(q, x) for x in range(q.input_size))


def type_class_log_prob(p: Dist, t: EmpiricalType, s: int) -> float:
    """Exact log-probability that an i.i.d. p sample of length s has type t.

    Multinomial coefficient times the atom probabilities, in the log domain;
    -inf when t puts counts where p has no mass.
    """
    counts = t.counts.reshape(-1)
    if t.n != s:
        raise ValueError(f"type denominator {t.n} does not match s={s}")
    probs = p.probs.reshape(-1)
    if counts.shape[0] != probs.shape[0]:
        raise ValueError(
            f"alphabet mismatch: type has {counts.shape[0]} atoms, "
            f"distribution has {probs.shape[0]}"
        )
    out = math.lgamma(s + 1)
    for c, pa in zip(counts.tolist(), probs.tolist()):
        if c == 0:
            continue
        if pa == 0.0:
            return -math.inf
        out += c * math.log(pa) - math.lgamma(c + 1)
    return out


def bucket_shift(t: EmpiricalType, a1: int, a2: int) -> EmpiricalType:
    """Move 3 counts from atom a1 to atom a2, keeping the denominator."""
    counts = t.counts.reshape(-1).copy()
    for idx in (a1, a2):
        if not 0 <= idx < counts.shape[0]:
            raise ValueError(f"atom index {idx} out of range")
    if counts[a1] < 3:
        raise ValueError(f"atom {a1} has count {int(counts[a1])} < 3")
    counts[a1] -= 3
    counts[a2] += 3
    return EmpiricalType(counts.reshape(t.counts.shape))


class ChannelFormatError(ValueError):
    """Raised for malformed channel files, with the offending line number."""


def save_channel(q: Dmc, path) -> None:
    """Write a channel in the key-value text format read by load_channel."""
    lines = [
        f"input_size = {q.input_size}",
        f"output_size = {q.output_size}",
        f"star_index = {q.star_index}",
    ]
    for r in q.kernel.rows:
        lines.append("row = " + " ".join(repr(float(v)) for v in r))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_channel(path) -> Dmc:
    """Parse the key-value channel format; rejects bad rows by line number."""
    header: dict[str, int] = {}
    rows: list[np.ndarray] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ChannelFormatError(f"line {lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if key in ("input_size", "output_size", "star_index"):
                try:
                    header[key] = int(value)
                except ValueError:
                    raise ChannelFormatError(
                        f"line {lineno}: {key} must be an integer, got {value!r}"
                    ) from None
            elif key == "row":
                try:
                    vals = np.array([float(v) for v in value.split()], dtype=np.float64)
                except ValueError:
                    raise ChannelFormatError(
                        f"line {lineno}: row entries must be numbers"
                    ) from None
                if "output_size" in header and vals.size != header["output_size"]:
                    raise ChannelFormatError(
                        f"line {lineno}: row has {vals.size} entries, "
                        f"expected {header['output_size']}"
                    )
                if vals.min(initial=0.0) < 0.0:
                    raise ChannelFormatError(f"line {lineno}: negative probability")
                if abs(vals.sum() - 1.0) > 1e-9:
                    raise ChannelFormatError(
                        f"line {lineno}: row sums to {vals.sum()!r}, not stochastic"
                    )
                rows.append(vals / vals.sum())
            else:
                raise ChannelFormatError(f"line {lineno}: unknown key {key!r}")
    for key in ("input_size", "output_size", "star_index"):
        if key not in header:
            raise ChannelFormatError(f"missing {key}")
    if len(rows) != header["input_size"]:
        raise ChannelFormatError(
            f"expected {header['input_size']} rows, found {len(rows)}"
        )
    return Dmc(CondDist(np.stack(rows)), star_index=header["star_index"])
