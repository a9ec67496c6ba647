"""Constructors for the example channels and randomized test channels.

All constructors return a Dmc whose last input row is the noise symbol
unless stated otherwise; spec strings like ``kind=gaussian,snr=4.0`` map
onto them for the CLI.
"""

from __future__ import annotations

import math

import numpy as np

from .info_core import CondDist, Dmc, load_channel

__all__ = [
    "gaussian_hard_decision",
    "bsc_with_star",
    "noiseless_with_star",
    "random_dmc",
    "from_spec",
]


def gaussian_hard_decision(snr: float) -> Dmc:
    """Antipodal signaling with unit-variance noise and sign detection.

    Inputs are {+1, -1, idle}; the idle symbol sits at amplitude zero, so the
    sign detector outputs +1 or -1 with probability 1/2 each. The flip
    probability is the Gaussian upper tail beyond sqrt(snr), computed through
    erfc to keep ~1e-16 relative accuracy.
    """
    if not snr > 0.0:
        raise ValueError(f"snr must be positive, got {snr}")
    eps = 0.5 * math.erfc(math.sqrt(snr / 2.0))
    rows = np.array(
        [
            [1.0 - eps, eps],
            [eps, 1.0 - eps],
            [0.5, 0.5],
        ]
    )
    return Dmc(CondDist(rows), star_index=2)


def bsc_with_star(eps: float) -> Dmc:
    """Binary symmetric channel whose noise input shares the row of input 0.

    The idle symbol is realized as a third input duplicating input 0, which
    keeps the channel shape uniform while the noise statistics equal those of
    transmitting a zero.
    """
    if not 0.0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    rows = np.array(
        [
            [1.0 - eps, eps],
            [eps, 1.0 - eps],
            [1.0 - eps, eps],
        ]
    )
    return Dmc(CondDist(rows), star_index=2)


def noiseless_with_star() -> Dmc:
    """Noiseless binary subchannel plus an idle input that outputs fair coins."""
    rows = np.array(
        [
            [1.0, 0.0],
            [0.0, 1.0],
            [0.5, 0.5],
        ]
    )
    return Dmc(CondDist(rows), star_index=2)


def random_dmc(inputs: int, outputs: int, seed: int, min_prob: float = 0.0) -> Dmc:
    """Random channel with rows flat on the simplex, floored at min_prob.

    Flooring pins every entry below min_prob at exactly min_prob and rescales
    the remaining mass; pinning repeats until no entry sits below the floor,
    so rows stay stochastic with all entries >= min_prob.
    """
    if inputs < 2 or outputs < 2:
        raise ValueError("need at least 2 inputs and 2 outputs")
    if min_prob < 0.0:
        raise ValueError("min_prob must be non-negative")
    if min_prob * outputs >= 1.0:
        raise ValueError(
            f"min_prob {min_prob} leaves no free mass for {outputs} outputs"
        )
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    rows = rng.dirichlet(np.ones(outputs), size=inputs)
    if min_prob > 0.0:
        for r in rows:
            pinned = np.zeros(outputs, dtype=bool)
            while True:
                low = (r < min_prob) & ~pinned
                if not low.any():
                    break
                pinned |= low
                r[pinned] = min_prob
                free = ~pinned
                spare = 1.0 - min_prob * pinned.sum()
                r[free] *= spare / r[free].sum()
    return Dmc(CondDist(rows), star_index=0)


def from_spec(spec: str) -> Dmc:
    """Build a channel from a ``kind=...,param=value`` string or a file path.

    Kinds: noiseless_star; bsc_star (eps); gaussian (snr);
    random (inputs, outputs, seed, min_prob); file (path).
    """
    text = spec.strip()
    if "=" not in text:
        return load_channel(text)
    fields: dict[str, str] = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        if not _ or not key.strip():
            raise ValueError(f"malformed channel spec fragment {part!r}")
        fields[key.strip().lower()] = value.strip()
    kind = fields.pop("kind", None)
    if kind is None:
        raise ValueError("channel spec needs a kind=... field")
    if kind == "noiseless_star":
        _reject_extras(kind, fields)
        return noiseless_with_star()
    if kind == "bsc_star":
        eps = float(fields.pop("eps"))
        _reject_extras(kind, fields)
        return bsc_with_star(eps)
    if kind == "gaussian":
        snr = float(fields.pop("snr"))
        _reject_extras(kind, fields)
        return gaussian_hard_decision(snr)
    if kind == "random":
        inputs = int(fields.pop("inputs"))
        outputs = int(fields.pop("outputs"))
        seed = int(fields.pop("seed"))
        min_prob = float(fields.pop("min_prob", "0"))
        _reject_extras(kind, fields)
        return random_dmc(inputs, outputs, seed, min_prob)
    if kind == "file":
        return load_channel(fields.pop("path"))
    raise ValueError(f"unknown channel kind {kind!r}")


def _reject_extras(kind: str, fields: dict) -> None:
    if fields:
        raise ValueError(f"unexpected fields for kind={kind}: {sorted(fields)}")
