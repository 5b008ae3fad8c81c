"""Closed-form expectations and phase-boundary probes for clique complexes of G(n, p).

Every value here is a pure function of (n, p, k).  The Monte Carlo harness
treats these as oracles, so nothing in this module may depend on the sampling
code.  Evaluation is direct while the binomial coefficients fit in a float and
falls back to log space (lgamma) for large n; the two paths agree to at least
ten significant digits wherever both are representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "RegimeSpec",
    "dimension_estimate",
    "expected_bad_pairs",
    "expected_faces",
    "expected_faces_second_moment",
    "threshold_probe",
]


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")


def _check_nk(n: int, k: int) -> None:
    if n < 0 or k < 0:
        raise ValueError(f"n and k must be nonnegative, got n={n}, k={k}")


def _log_comb(n: int, k: int) -> float:
    # requires 0 <= k <= n
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _logsumexp(values: list[float]) -> float:
    top = max(values)
    if top == -math.inf:
        return top
    return top + math.log(math.fsum(math.exp(v - top) for v in values))


def expected_faces(n: int, p: float, k: int) -> float:
    """Expected number of k-faces, C(n, k+1) * p^C(k+1, 2).

    A k-face is a (k+1)-clique; each candidate vertex set needs all C(k+1, 2)
    internal edges present.
    """
    _check_p(p)
    _check_nk(n, k)
    if n < k + 1:
        return 0.0
    if p == 0.0:
        return float(n) if k == 0 else 0.0
    exponent = math.comb(k + 1, 2)
    try:
        direct = float(math.comb(n, k + 1)) * p**exponent
    except OverflowError:
        direct = math.inf
    if math.isfinite(direct) and direct > 0.0:
        return direct
    return math.exp(_log_comb(n, k + 1) + exponent * math.log(p))


def expected_faces_second_moment(n: int, p: float, k: int) -> float:
    """Expected square of the k-face count.

    Grouping ordered pairs of (k+1)-sets by overlap size m gives
    C(n, k+1) * sum_{m=0}^{k+1} C(k+1, m) C(n-k-1, k+1-m) p^(2C(k+1,2) - C(m,2));
    the overlap contributes C(m, 2) shared edge requirements.
    """
    _check_p(p)
    _check_nk(n, k)
    if n < k + 1:
        return 0.0
    if p == 0.0:
        return float(n) ** 2 if k == 0 else 0.0
    base = 2 * math.comb(k + 1, 2)
    logp = math.log(p)
    logs = []
    for m in range(k + 2):
        ways = math.comb(k + 1, m) * math.comb(n - k - 1, k + 1 - m)
        if ways:
            logs.append(math.log(ways) + (base - math.comb(m, 2)) * logp)
    log_value = _log_comb(n, k + 1) + _logsumexp(logs)
    try:
        inner = math.fsum(
            float(math.comb(k + 1, m) * math.comb(n - k - 1, k + 1 - m))
            * p ** (base - math.comb(m, 2))
            for m in range(k + 2)
        )
        direct = float(math.comb(n, k + 1)) * inner
    except OverflowError:
        direct = math.inf
    if math.isfinite(direct) and direct > 0.0:
        return direct
    return math.exp(log_value)


def expected_bad_pairs(n: int, p: float, k: int) -> float:
    """Expected number of k-face pairs sharing a (k-1)-face.

    Such a pair spans k+2 vertices with a choice of the two private vertices,
    and needs every spanned edge except the one between the private pair:
    C(k+2, 2) * C(n, k+2) * p^(C(k+2,2) - 1), with exponent k(k+3)/2.
    """
    _check_p(p)
    _check_nk(n, k)
    if n < k + 2:
        return 0.0
    factor = math.comb(k + 2, 2)
    exponent = factor - 1
    if p == 0.0:
        return float(factor * math.comb(n, k + 2)) if exponent == 0 else 0.0
    try:
        direct = float(factor * math.comb(n, k + 2)) * p**exponent
    except OverflowError:
        direct = math.inf
    if math.isfinite(direct) and direct > 0.0:
        return direct
    return math.exp(math.log(factor) + _log_comb(n, k + 2) + exponent * math.log(p))


def dimension_estimate(n: int, p: float) -> float:
    """Heuristic dimension of the clique complex of G(n, p): -2 log n / log p.

    The exponent comes from the expected clique count: C(n, d+1) p^C(d+1, 2)
    crosses 1 near d = -2 log n / log p.  Defined only for 0 < p < 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"dimension estimate needs 0 < p < 1, got {p!r}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return -2.0 * math.log(n) / math.log(p)


def threshold_probe(
    n: int,
    k: int,
    offset: float = 0.0,
    l: int | None = None,
    margin: float = 0.2,
) -> dict[str, float]:
    """Labeled probe probabilities bracketing the phase diagram at dimension k.

    All logarithms are natural.  Values are raw formula outputs and can exceed
    1 for very small n; callers clamp if they need a probability.

    p_vanish_below
        n^(-1/k - margin).  Below the exponent -1/k dimension-k homology is
        expected to vanish; the margin keeps finite n clear of the boundary,
        where the asymptotic statement says nothing.
    p_middle
        n^((-1/k - 1/(k+1))/2), the midpoint exponent of the window where
        dimension-k homology is expected to be nontrivial.
    p_connect
        (((2k+1) log n + offset) / n)^(1/(2k+1)).  Above this the complex is
        expected to be k-connected, so homology through dimension k vanishes.
    p_common_l
        ((l log n + offset) / n)^(1/l), the threshold for every l vertices
        having a common neighbor.  Present only when l is given.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if margin <= 0.0:
        raise ValueError(f"margin must be positive, got {margin!r}")
    logn = math.log(n)
    probes = {
        "p_vanish_below": n ** (-1.0 / k - margin),
        "p_middle": n ** ((-1.0 / k - 1.0 / (k + 1)) / 2.0),
        "p_connect": (((2 * k + 1) * logn + offset) / n) ** (1.0 / (2 * k + 1)),
    }
    if l is not None:
        if l < 1:
            raise ValueError(f"l must be at least 1, got {l}")
        probes["p_common_l"] = ((l * logn + offset) / n) ** (1.0 / l)
    return probes


@dataclass(frozen=True)
class RegimeSpec:
    """One sampling point of the phase diagram.

    The edge probability is given either directly (``p``) or as an exponent
    (``alpha``, meaning p = n^alpha); exactly one of the two must be set.
    ``omega`` is the additive offset fed to threshold formulas.
    """

    n: int
    k: int
    alpha: float | None = None
    p: float | None = None
    omega: float = 0.0

    def __post_init__(self) -> None:
        if (self.alpha is None) == (self.p is None):
            raise ValueError("exactly one of alpha and p must be set")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.k < 0:
            raise ValueError(f"k must be nonnegative, got {self.k}")
        if self.p is not None:
            _check_p(self.p)

    @property
    def probability(self) -> float:
        """The edge probability, resolving alpha against n when needed."""
        if self.p is not None:
            return self.p
        value = float(self.n) ** self.alpha
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"n^alpha = {value!r} is not a probability")
        return value
