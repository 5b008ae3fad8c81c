"""Seeded Monte Carlo sweeps over clique complexes of G(n, p).

A sweep is a grid of (n, p) points with a fixed number of trials per
point.  Every trial derives its own random stream from (master seed, n,
exact bits of p, trial index), so reshaping the grid or adding trials
never changes existing records.  All stages of a trial are deterministic
given the config; wall-times are recorded only on request, so two runs
of the same config produce byte-identical output files regardless of the
parallelism degree.
"""

from __future__ import annotations

import concurrent.futures
import csv
import dataclasses
import json
import math
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .analytic import RegimeSpec, expected_faces
from .complexes import build_clique_complex
from .detectors import (
    CertificateError,
    build_retraction,
    find_sphere_certificate,
    vanishing_certificate,
    verify_retraction,
)
from .graphs import common_neighbor_all, generate_gnp
from .homology import (
    CROSSCHECK_PRIME,
    DEFAULT_PRIME,
    CoefficientSpec,
    SizeGuardError,
    betti_crosscheck,
    integer_homology,
    is_probable_prime,
    reduced_betti,
)
from .morse import adjacent_kface_pairs, lex_critical_faces, random_matching_field
from .rng import RandomSource, float_bits, hash64

__all__ = [
    "STREAM_DETECT",
    "STREAM_GNP",
    "STREAM_MORSE",
    "MeshulamReport",
    "SummaryRow",
    "SweepConfig",
    "SweepResult",
    "TrialRecord",
    "emit",
    "meshulam_suite",
    "run_sweep",
    "run_trial",
    "summarize",
]

# substream tags; one fixed tag per consumer inside a trial
STREAM_GNP = 1
STREAM_MORSE = 2
STREAM_DETECT = 3

_CSV_COLUMNS = (
    "trial_id", "n", "p", "alpha", "k", "seed", "f_vector", "betti",
    "truncated", "critical_lex", "d_pairs", "cert_found", "cert_verified",
    "vanish_cert", "time_ms_total",
)


@dataclass(frozen=True)
class SweepConfig:
    """Declarative sweep description; ``from_json`` documents the file format.

    Exactly one of ``p_list`` and ``alpha_list`` must be given (``alpha``
    meaning p = n^alpha).  ``max_dim`` defaults to ``k_max + 1``, the least
    depth that makes the dimension-``k_max`` Betti number exact.  A
    ``detector_budget`` of None means 50·n restarts; 0 disables the sphere
    search.  ``record_times`` defaults to False so outputs are byte-stable.
    """

    n_list: tuple[int, ...]
    p_list: tuple[float, ...] | None = None
    alpha_list: tuple[float, ...] | None = None
    k_max: int = 1
    trials: int = 1
    master_seed: int = 0
    max_dim: int | None = None
    prime: int = DEFAULT_PRIME
    paranoid: bool = False
    detector_budget: int | None = None
    max_faces_per_dim: int = 2_000_000
    snf_limit: int = 2000
    record_times: bool = False
    jobs: int = 1
    out_dir: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        if self.p_list is not None:
            object.__setattr__(self, "p_list",
                               tuple(float(p) for p in self.p_list))
        if self.alpha_list is not None:
            object.__setattr__(self, "alpha_list",
                               tuple(float(a) for a in self.alpha_list))
        if not self.n_list:
            raise ValueError("n_list must be nonempty")
        if any(n < 1 for n in self.n_list):
            raise ValueError("every n must be positive")
        if (self.p_list is None) == (self.alpha_list is None):
            raise ValueError("exactly one of p_list and alpha_list must be set")
        if self.p_list is not None:
            if not self.p_list:
                raise ValueError("p_list must be nonempty")
            for p in self.p_list:
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"p must lie in [0, 1], got {p!r}")
        if self.alpha_list is not None and not self.alpha_list:
            raise ValueError("alpha_list must be nonempty")
        if self.k_max < 0:
            raise ValueError("k_max must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_dim is not None and self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")
        if not is_probable_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.detector_budget is not None and self.detector_budget < 0:
            raise ValueError("detector_budget must be nonnegative")
        if self.max_faces_per_dim < 1:
            raise ValueError("max_faces_per_dim must be positive")
        if self.snf_limit < 0:
            raise ValueError("snf_limit must be nonnegative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @property
    def resolved_max_dim(self) -> int:
        return self.max_dim if self.max_dim is not None else self.k_max + 1

    def budget_for(self, n: int) -> int:
        return self.detector_budget if self.detector_budget is not None else 50 * n

    def points(self) -> list[RegimeSpec]:
        out = []
        for n in self.n_list:
            if self.p_list is not None:
                out.extend(RegimeSpec(n=n, k=self.k_max, p=p)
                           for p in self.p_list)
            else:
                out.extend(RegimeSpec(n=n, k=self.k_max, alpha=a)
                           for a in self.alpha_list)
        return out


@dataclass(frozen=True)
class TrialRecord:
    """Observables of one trial.

    Vector fields cover the stored dimensions of the complex.  Counters
    tied to the target dimension k (``d_pairs``, ``removed_pairs``) are
    None when truncation made them unknowable; ``critical_lex`` simply
    stops at the first dimension whose critical set is unknowable.
    """

    trial_id: str
    n: int
    p: float
    alpha: float | None
    k: int
    seed: int
    f_vector: tuple[int, ...]
    betti: tuple[int, ...]
    exact: tuple[bool, ...]
    truncated: bool
    critical_lex: tuple[int, ...]
    d_pairs: int | None
    removed_pairs: int | None
    cert_found: bool
    cert_verified: bool
    vanish_cert: str
    paranoid_ok: bool | None
    times_ms: dict[str, float]
    time_ms_total: float
    error: str | None = None

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)

    def csv_row(self) -> list[str]:
        return [
            self.trial_id,
            str(self.n),
            repr(self.p),
            "" if self.alpha is None else repr(self.alpha),
            str(self.k),
            str(self.seed),
            ";".join(str(x) for x in self.f_vector),
            ";".join(str(x) for x in self.betti),
            "true" if self.truncated else "false",
            ";".join(str(x) for x in self.critical_lex),
            "" if self.d_pairs is None else str(self.d_pairs),
            "true" if self.cert_found else "false",
            "true" if self.cert_verified else "false",
            self.vanish_cert,
            repr(self.time_ms_total),
        ]


def trial_stream_id(n: int, p: float, index: int) -> int:
    """Stable per-trial stream id from n, the bits of p, and the index."""
    return hash64(n, float_bits(p), index)


def run_trial(cfg: SweepConfig, point: RegimeSpec, index: int) -> TrialRecord:
    """One deterministic trial: graph, complex, homology, matchings, detectors."""
    n = point.n
    p = point.probability
    k = cfg.k_max
    seed_id = trial_stream_id(n, p, index)
    src = RandomSource(cfg.master_seed, stream_id=seed_id)
    times: dict[str, float] = {}

    def clock(stage: str, t0: float) -> None:
        times[stage] = (time.perf_counter() - t0) * 1000.0 if cfg.record_times else 0.0

    t = time.perf_counter()
    g = generate_gnp(n, p, src.substream(STREAM_GNP))
    clock("graph", t)

    t = time.perf_counter()
    X = build_clique_complex(g, cfg.resolved_max_dim, cfg.max_faces_per_dim)
    clock("complex", t)

    t = time.perf_counter()
    summary = reduced_betti(X, CoefficientSpec.prime_field(cfg.prime))
    clock("homology", t)

    t = time.perf_counter()
    crit: list[int] = []
    for d in range(k + 1):
        if d > X.dim:
            if X.exhausted:
                crit.append(0)
                continue
            break
        if d + 1 <= X.dim or X.exhausted:
            crit.append(int(lex_critical_faces(X, d).size))
        else:
            break
    d_pairs: int | None
    removed: int | None
    if k <= X.dim:
        d_pairs = adjacent_kface_pairs(X, k)
        if k >= 1:
            _, repair = random_matching_field(X, k, src.substream(STREAM_MORSE))
            removed = int(repair.removed)
        else:
            removed = 0
    elif X.exhausted:
        d_pairs = 0
        removed = 0
    else:
        d_pairs = None
        removed = None
    clock("morse", t)

    t = time.perf_counter()
    cert_found = False
    cert_verified = False
    vanish = ""
    if k >= 1:
        budget = cfg.budget_for(n)
        if budget > 0:
            cert = find_sphere_certificate(g, k, budget,
                                           src.substream(STREAM_DETECT))
            if cert is not None:
                cert_found = True
                try:
                    retraction = build_retraction(g, cert)
                    cert_verified = verify_retraction(g, retraction, cert)
                except CertificateError:
                    cert_verified = False
        verdict = vanishing_certificate(g, k)
        if verdict.guaranteed_zero:
            vanish = verdict.reason or ""
    clock("detect", t)

    paranoid_ok: bool | None = None
    if cfg.paranoid and index % 100 == 0:
        t = time.perf_counter()
        paranoid_ok = _paranoid_check(X, summary, cfg)
        clock("paranoid", t)

    total = math.fsum(times.values()) if cfg.record_times else 0.0
    return TrialRecord(
        trial_id=f"n{n}-p{p:.6g}-k{k}-t{index}",
        n=n, p=p, alpha=point.alpha, k=k, seed=seed_id,
        f_vector=X.f_vector(), betti=summary.reduced, exact=summary.exact,
        truncated=not X.exhausted, critical_lex=tuple(crit),
        d_pairs=d_pairs, removed_pairs=removed,
        cert_found=cert_found, cert_verified=cert_verified,
        vanish_cert=vanish, paranoid_ok=paranoid_ok,
        times_ms=times, time_ms_total=total,
    )


def _paranoid_check(X, summary, cfg: SweepConfig) -> bool:
    """Second-prime crosscheck plus, when sizes allow, an integer spot-check."""
    other = CROSSCHECK_PRIME if cfg.prime != CROSSCHECK_PRIME else DEFAULT_PRIME
    report = betti_crosscheck(X, primes=(cfg.prime, other),
                              face_limit=cfg.snf_limit)
    if not report.agreed:
        for d, check in report.integer_checks.items():
            if check.torsion:
                continue  # genuine torsion explains the disagreement
            if check.rank not in (report.summaries[0].reduced[d],
                                  report.summaries[1].reduced[d]):
                return False
        if report.skipped_dims:
            return False
    k = cfg.k_max
    if k < len(summary.reduced) and summary.exact[k]:
        try:
            z = integer_homology(X, k, face_limit=cfg.snf_limit)
        except SizeGuardError:
            return report.agreed or not report.skipped_dims
        if z.torsion == () and z.rank != summary.reduced[k]:
            return False
    return True


def _error_record(cfg: SweepConfig, point: RegimeSpec, index: int,
                  exc: Exception) -> TrialRecord:
    p = point.probability
    return TrialRecord(
        trial_id=f"n{point.n}-p{p:.6g}-k{cfg.k_max}-t{index}",
        n=point.n, p=p, alpha=point.alpha, k=cfg.k_max,
        seed=trial_stream_id(point.n, p, index),
        f_vector=(), betti=(), exact=(), truncated=True, critical_lex=(),
        d_pairs=None, removed_pairs=None, cert_found=False,
        cert_verified=False, vanish_cert="", paranoid_ok=None,
        times_ms={}, time_ms_total=0.0,
        error=f"{type(exc).__name__}: {exc}",
    )


def _safe_trial(cfg: SweepConfig, point: RegimeSpec, index: int) -> TrialRecord:
    try:
        return run_trial(cfg, point, index)
    except Exception as exc:  # a failed trial must not kill the sweep
        return _error_record(cfg, point, index, exc)


def _sweep_task(args) -> TrialRecord:
    cfg, point, index = args
    return _safe_trial(cfg, point, index)


@dataclass(frozen=True)
class SummaryRow:
    """Aggregates for one (n, p) point at the target dimension k.

    Rates are over the trials whose dimension-k Betti number is exact
    (``known_trials``); ratio statistics additionally require f_k > 0.
    ``cert_verified_rate`` is relative to found certificates.
    """

    n: int
    p: float
    alpha: float | None
    k: int
    trials: int
    known_trials: int
    error_trials: int
    truncated_trials: int
    prob_nonzero: float
    mean_betti_over_f: float
    stderr_betti_over_f: float
    mean_f: float
    expected_f: float
    cert_hit_rate: float
    cert_verified_rate: float

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)


def _knows_betti(r: TrialRecord, k: int) -> bool:
    if r.error is not None:
        return False
    if k < len(r.exact):
        return bool(r.exact[k])
    return not r.truncated  # no stored k-faces; zero only if nothing was cut


def _betti_at(r: TrialRecord, k: int) -> int:
    return r.betti[k] if k < len(r.betti) else 0


def _f_at(r: TrialRecord, k: int) -> int | None:
    if k < len(r.f_vector):
        return r.f_vector[k]
    return None if r.truncated else 0


def _summary_row(point: RegimeSpec, k: int,
                 group: list[TrialRecord]) -> SummaryRow:
    ok = [r for r in group if r.error is None]
    known = [r for r in group if _knows_betti(r, k)]
    nonzero = sum(1 for r in known if _betti_at(r, k) != 0)
    ratios = []
    for r in known:
        f = _f_at(r, k)
        if f:
            ratios.append(_betti_at(r, k) / f)
    fks = [f for r in ok if (f := _f_at(r, k)) is not None]
    hits = sum(1 for r in ok if r.cert_found)
    verified = sum(1 for r in ok if r.cert_verified)
    stderr = (statistics.stdev(ratios) / math.sqrt(len(ratios))
              if len(ratios) >= 2 else 0.0)
    return SummaryRow(
        n=point.n, p=point.probability, alpha=point.alpha, k=k,
        trials=len(group), known_trials=len(known),
        error_trials=sum(1 for r in group if r.error is not None),
        truncated_trials=sum(1 for r in group if r.truncated),
        prob_nonzero=nonzero / len(known) if known else 0.0,
        mean_betti_over_f=statistics.fmean(ratios) if ratios else 0.0,
        stderr_betti_over_f=stderr,
        mean_f=statistics.fmean(fks) if fks else 0.0,
        expected_f=expected_faces(point.n, point.probability, k),
        cert_hit_rate=hits / len(ok) if ok else 0.0,
        cert_verified_rate=verified / hits if hits else 0.0,
    )


def summarize(cfg: SweepConfig, records: list[TrialRecord]) -> list[SummaryRow]:
    """Per-point aggregates recomputed from the raw records."""
    points = cfg.points()
    if len(records) != len(points) * cfg.trials:
        raise ValueError("record count does not match the config grid")
    rows = []
    for i, point in enumerate(points):
        group = records[i * cfg.trials:(i + 1) * cfg.trials]
        rows.append(_summary_row(point, cfg.k_max, group))
    return rows


@dataclass(frozen=True)
class SweepResult:
    records: list[TrialRecord]
    summary: list[SummaryRow]
    paths: dict[str, str] | None = None


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """All trials of the grid, optionally in parallel; output order and
    content depend only on the config, never on scheduling."""
    points = cfg.points()
    tasks = [(point, index) for point in points for index in range(cfg.trials)]
    if cfg.jobs > 1:
        payload = [(cfg, point, index) for point, index in tasks]
        chunk = max(1, len(payload) // (cfg.jobs * 4))
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_sweep_task, payload, chunksize=chunk))
    else:
        records = [_safe_trial(cfg, point, index) for point, index in tasks]
    summary = summarize(cfg, records)
    paths = None
    if cfg.out_dir is not None:
        paths = emit(records, cfg.out_dir)
        spath = Path(cfg.out_dir) / "summary.json"
        try:
            with open(spath, "w") as fh:
                json.dump([row.to_json_dict() for row in summary], fh,
                          sort_keys=True, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise OSError(f"writing {spath}: {exc}") from exc
        paths["summary"] = str(spath)
    return SweepResult(records, summary, paths)


def emit(records: list[TrialRecord], out_dir,
         basename: str = "trials",
         formats: tuple[str, ...] = ("csv", "jsonl")) -> dict[str, str]:
    """Write records under out_dir; returns {format: path}."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, str] = {}
    for fmt in formats:
        if fmt == "csv":
            path = out / f"{basename}.csv"
            try:
                with open(path, "w", newline="") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(_CSV_COLUMNS)
                    for r in records:
                        writer.writerow(r.csv_row())
            except OSError as exc:
                raise OSError(f"writing {path}: {exc}") from exc
        elif fmt == "jsonl":
            path = out / f"{basename}.jsonl"
            try:
                with open(path, "w") as fh:
                    for r in records:
                        fh.write(json.dumps(r.to_json_dict(), sort_keys=True))
                        fh.write("\n")
            except OSError as exc:
                raise OSError(f"writing {path}: {exc}") from exc
        else:
            raise ValueError(f"unknown format {fmt!r}")
        paths[fmt] = str(path)
    return paths


@dataclass(frozen=True)
class MeshulamReport:
    """Outcome of sampling the common-neighbor vanishing hypothesis."""

    n: int
    p: float
    k: int
    trials: int
    hypothesis_count: int
    violations: tuple[int, ...]  # trial indices; soundness demands empty
    unchecked: tuple[int, ...]   # hypothesis held but homology was cut off


def meshulam_suite(n: int, p: float, k: int, trials: int,
                   seed: int) -> MeshulamReport:
    """Sample G(n, p); whenever every 2k+2 vertices share a common
    neighbor, homology through dimension k must vanish.

    Trials reuse the sweep stream derivation, so a meshulam run at
    (n, p, index) sees the same graph as a sweep trial there.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    l = 2 * k + 2
    if l > n:
        return MeshulamReport(n, float(p), k, trials, 0, (), ())
    hyp = 0
    violations: list[int] = []
    unchecked: list[int] = []
    for index in range(trials):
        src = RandomSource(seed, stream_id=trial_stream_id(n, p, index))
        g = generate_gnp(n, p, src.substream(STREAM_GNP))
        holds, _ = common_neighbor_all(g, l)
        if not holds:
            continue
        hyp += 1
        X = build_clique_complex(g, k + 1)
        s = reduced_betti(X)
        stored = len(s.reduced)
        known = all(s.exact[:min(k + 1, stored)]) and (stored > k or X.exhausted)
        if not known:
            unchecked.append(index)
        elif any(b != 0 for b in s.reduced[:k + 1]):
            violations.append(index)
    return MeshulamReport(n, float(p), k, trials, hyp,
                          tuple(violations), tuple(unchecked))
