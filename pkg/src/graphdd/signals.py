"""Random graph-signal models used as experiment inputs, plus additive noise.

All generated signals are normalized to unit l2 norm before any noise is
added, so recovery errors read directly as relative errors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, as_rng
from .spectral import Spectrum

SIGNAL_KINDS = ("linear-diffusion", "median", "bandlimited", "constant")


@dataclass(frozen=True)
class SignalModel:
    """Declarative description of a signal generator.

    kind "linear-diffusion": a sparse seed vector diffused `taps` times
    through the adjacency with random tap coefficients. kind "median":
    a diffusion signal where each node is replaced by the median of its
    neighbors. kind "bandlimited": a random combination of the first
    `bandwidth` spectral basis vectors. kind "constant": the normalized
    all-ones vector.
    """

    kind: str = "linear-diffusion"
    taps: int = 6
    sparsity: int | None = None
    bandwidth: int | None = None

    def __post_init__(self):
        if self.kind not in SIGNAL_KINDS:
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.taps < 1:
            raise ValueError("taps must be >= 1")
        if self.sparsity is not None and self.sparsity < 1:
            raise ValueError("sparsity must be >= 1")
        if self.kind == "bandlimited" and (self.bandwidth is None or self.bandwidth < 1):
            raise ValueError("bandlimited signals need bandwidth >= 1")


def default_sparsity(n: int) -> int:
    return max(1, round(0.15 * n))


def unit_normalize(x: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise ValueError("cannot normalize an all-zero signal")
    return x / norm


def diffusion_signal(g: Graph, model: SignalModel = SignalModel(), seed=0) -> np.ndarray:
    """Unit-norm linear diffusion signal sum_t h_t A^t s.

    The seed vector s has exactly `sparsity` nonzero entries (default
    0.15 n) at uniform-random positions; seed values and the tap
    coefficients h_t are i.i.d. standard Gaussian. Deterministic per seed:
    positions, then values, then taps are drawn in that order.
    """
    if model.kind != "linear-diffusion":
        raise ValueError(f"expected a linear-diffusion model, got {model.kind!r}")
    n = g.n
    sparsity = model.sparsity if model.sparsity is not None else default_sparsity(n)
    if sparsity > n:
        raise ValueError(f"sparsity {sparsity} exceeds node count {n}")
    rng = as_rng(seed)
    positions = rng.choice(n, size=sparsity, replace=False)
    seed_vec = np.zeros(n)
    seed_vec[positions] = rng.standard_normal(sparsity)
    taps = rng.standard_normal(model.taps)
    acc = taps[0] * seed_vec
    power = seed_vec
    for h in taps[1:]:
        power = g.adjacency @ power
        acc = acc + h * power
    return unit_normalize(acc)


def median_filter(g: Graph, base: np.ndarray) -> np.ndarray:
    """Replace each node value by the median over its neighbors.

    Isolated nodes keep their own value; even neighbor counts use the
    midpoint of the two central values.
    """
    base = np.asarray(base, dtype=float)
    if base.shape != (g.n,):
        raise ValueError(f"signal has length {base.size}, expected {g.n}")
    out = base.copy()
    for i in range(g.n):
        nbrs = g.neighbors(i)
        if nbrs.size:
            out[i] = np.median(base[nbrs])
    return out


def median_signal(g: Graph, base: np.ndarray) -> np.ndarray:
    """Unit-norm median-filtered version of `base`."""
    return unit_normalize(median_filter(g, base))


def add_noise(x: np.ndarray, noise_power: float, seed=0) -> tuple[np.ndarray, float]:
    """Add white Gaussian noise with total expected energy `noise_power`.

    Each entry gets variance noise_power / n, so E||w||^2 = noise_power.
    Returns (noisy signal, per-entry noise variance).
    """
    if noise_power < 0:
        raise ValueError("noise_power must be nonnegative")
    x = np.asarray(x, dtype=float)
    sigma2 = noise_power / x.size
    if noise_power == 0.0:
        return x.copy(), 0.0
    rng = as_rng(seed)
    return x + np.sqrt(sigma2) * rng.standard_normal(x.size), sigma2


def generate_signal(g: Graph, model: SignalModel, seed=0, spectrum: Spectrum | None = None) -> np.ndarray:
    """Draw a unit-norm signal of the configured kind on graph `g`.

    Bandlimited signals need the graph `spectrum`; median signals are
    median-filtered diffusion signals.
    """
    rng = as_rng(seed)
    if model.kind == "constant":
        return np.full(g.n, 1.0 / np.sqrt(g.n))
    if model.kind == "linear-diffusion":
        return diffusion_signal(g, model, rng)
    if model.kind == "median":
        base = diffusion_signal(g, SignalModel(taps=model.taps, sparsity=model.sparsity), rng)
        return median_signal(g, base)
    if model.kind == "bandlimited":
        if spectrum is None:
            raise ValueError("bandlimited signals require the graph spectrum")
        if model.bandwidth > g.n:
            raise ValueError("bandwidth exceeds node count")
        coeffs = rng.standard_normal(model.bandwidth)
        return unit_normalize(spectrum.eigenvectors[:, : model.bandwidth] @ coeffs)
    raise AssertionError(model.kind)
