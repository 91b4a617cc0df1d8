"""Desk-scale surveys of zeta_d over sixth-power-free d, with an NDJSON cache.

Counting conventions:

* zeta_d < |d|^alpha is tested as hhat_min < alpha * log|d|.
* d with no non-torsion point inside the search box count as non-violators.
* N*_{alpha,eps} uses e^{h_f(P)} < C |d|^{6 alpha}.  C = e^GAP_BOUND absorbs
  the bounded difference 6 hhat - h_f, so every d counted by N_{alpha,eps}
  contributes a point to N*_{alpha,eps}.
"""

from __future__ import annotations

import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .curve import MordellCurve, is_torsion, point_from_json, point_to_json, to_primitive_triple
from .heights import GAP_BOUND, height_f
from .integer_lab import sixth_power_free_sieve, square_part
from .param import decompose
from .search import PointRecord, SearchBound, ZetaResult, search_nontorsion, zeta_from_records

log = logging.getLogger(__name__)

IMPLIED_CONSTANT = math.exp(GAP_BOUND)
DEFAULT_EPSILON = 0.05


class CacheError(ValueError):
    pass


def box_value(curve: MordellCurve, P) -> int:
    return decompose(curve, to_primitive_triple(curve, P)).box_value()


@dataclass(frozen=True)
class SurveyRecord:
    d: int
    square_part: int
    zeta_outcome: ZetaResult
    search_bound: SearchBound
    tol: float
    points: tuple[PointRecord, ...] = ()

    @property
    def hhat_min(self) -> Optional[float]:
        return self.zeta_outcome.value if self.zeta_outcome.found else None

    @property
    def h_f_min(self) -> Optional[float]:
        return min((p.h_f for p in self.points), default=None)

    def restricted(self, bound: int) -> "SurveyRecord":
        """The same survey entry as if searched with a smaller box."""
        if bound > self.search_bound.search_height:
            raise ValueError("can only restrict to a smaller bound")
        curve = MordellCurve(self.d)
        pts = tuple(p for p in self.points if box_value(curve, p.point) <= bound)
        sb = SearchBound(bound)
        return SurveyRecord(self.d, self.square_part, zeta_from_records(list(pts), sb), sb, self.tol, pts)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "bound": self.search_bound.search_height,
            "tol": self.tol,
            "square_part": self.square_part,
            "points": [
                {"point": point_to_json(p.point), "hhat": p.hhat, "h_f": p.h_f} for p in self.points
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SurveyRecord":
        d = int(obj["d"])
        curve = MordellCurve(d)
        pts = []
        for item in obj["points"]:
            P = point_from_json(item["point"])
            if P.is_identity or not curve.contains(P):
                raise CacheError(f"cached point {item['point']} is not on E_{d}")
            if is_torsion(curve, P) or not float(item["hhat"]) > 0:
                raise CacheError(f"cached point {item['point']} on E_{d} is torsion")
            if abs(height_f(P).value - float(item["h_f"])) > 1e-9:
                raise CacheError(f"cached h_f of {item['point']} on E_{d} is wrong")
            pts.append(PointRecord(P, float(item["hhat"]), float(item["h_f"])))
        pts.sort(key=lambda r: (r.hhat, r.h_f, r.point.x, r.point.y))
        sq = square_part(d).square_part
        if int(obj["square_part"]) != sq:
            raise CacheError(f"cached square part of {d} is wrong")
        sb = SearchBound(int(obj["bound"]))
        return cls(d, sq, zeta_from_records(pts, sb), sb, float(obj["tol"]), tuple(pts))


def compute_record(d: int, bound: int, tol: float) -> SurveyRecord:
    curve = MordellCurve(d)
    sb = SearchBound(bound)
    pts = tuple(search_nontorsion(curve, sb, tol))
    return SurveyRecord(d, square_part(d).square_part, zeta_from_records(list(pts), sb), sb, tol, pts)


def _compute_record_args(args):
    return compute_record(*args)


class SurveyCache:
    """Newline-delimited JSON records keyed by (d, tol); the largest bound wins."""

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._records: dict[tuple[int, float], SurveyRecord] = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        self._merge(SurveyRecord.from_json(json.loads(line)))

    def _merge(self, rec: SurveyRecord) -> None:
        key = (rec.d, rec.tol)
        old = self._records.get(key)
        if old is None or rec.search_bound.search_height > old.search_bound.search_height:
            self._records[key] = rec

    def get(self, d: int, bound: int, tol: float) -> Optional[SurveyRecord]:
        rec = self._records.get((d, tol))
        if rec is None or rec.search_bound.search_height < bound:
            return None
        if rec.search_bound.search_height == bound:
            return rec
        return rec.restricted(bound)

    def put(self, rec: SurveyRecord) -> None:
        self._merge(rec)
        if self.path:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")

    def __len__(self):
        return len(self._records)


def collect_records(
    ds: Iterable[int], bound: int, tol: float, cache: Optional[SurveyCache] = None, jobs: int = 1
) -> dict[int, SurveyRecord]:
    cache = cache if cache is not None else SurveyCache()
    out: dict[int, SurveyRecord] = {}
    todo = []
    for d in ds:
        rec = cache.get(d, bound, tol)
        if rec is None:
            todo.append(d)
        else:
            out[d] = rec
    if todo:
        log.info("searching %d curves (bound %d), %d cached", len(todo), bound, len(out))
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            fresh = list(ex.map(_compute_record_args, [(d, bound, tol) for d in todo], chunksize=64))
    else:
        fresh = [compute_record(d, bound, tol) for d in todo]
    for rec in fresh:
        cache.put(rec)
        out[rec.d] = rec
    return out


@dataclass(frozen=True)
class SurveyTable:
    X: int
    alpha: float
    epsilon: float
    bound: SearchBound
    tol: float
    records: tuple[SurveyRecord, ...]
    counts: dict = field(default_factory=dict)
    implied_constant: float = IMPLIED_CONSTANT

    def metadata(self) -> dict:
        return {
            "X": self.X,
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "bound": self.bound.search_height,
            "tol": self.tol,
            "implied_constant": self.implied_constant,
            "none_found_counted_as": "non-violator",
        }


def tabulate(
    records: Iterable[SurveyRecord],
    X: int,
    alpha: float,
    epsilon: float,
    bound,
    tol: float,
    implied_constant: float = IMPLIED_CONSTANT,
) -> SurveyTable:
    """Counts N_alpha, N*_alpha, N_{alpha,eps}, N*_{alpha,eps} over |d| <= X."""
    sb = bound if isinstance(bound, SearchBound) else SearchBound(int(bound))
    recs = tuple(sorted((r for r in records if abs(r.d) <= X), key=lambda r: r.d))
    log_c = math.log(implied_constant)
    n_alpha = n_star = n_alpha_eps = n_star_eps = 0
    for r in recs:
        log_d = math.log(abs(r.d))
        cut = alpha * log_d
        small_sq_d = r.square_part < abs(r.d) ** epsilon
        violator = r.hhat_min is not None and r.hhat_min < cut
        n_alpha += violator
        n_alpha_eps += violator and small_sq_d
        n_star += sum(1 for p in r.points if p.hhat < cut)
        if r.square_part < X ** epsilon:
            n_star_eps += sum(1 for p in r.points if p.h_f < 6 * alpha * log_d + log_c)
    counts = {
        "S6_size": len(recs),
        "N_alpha": n_alpha,
        "N_star_alpha": n_star,
        "N_alpha_eps": n_alpha_eps,
        "N_star_alpha_eps": n_star_eps,
    }
    return SurveyTable(X, alpha, epsilon, sb, tol, recs, counts, implied_constant)


def run_survey(
    X: int,
    alpha: float,
    epsilon: float = DEFAULT_EPSILON,
    bound=10 ** 6,
    tol: float = 1e-5,
    cache: Optional[SurveyCache] = None,
    jobs: int = 1,
    implied_constant: float = IMPLIED_CONSTANT,
) -> SurveyTable:
    if X < 1:
        raise ValueError("X must be >= 1")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    sb = bound if isinstance(bound, SearchBound) else SearchBound(int(bound))
    recs = collect_records(sixth_power_free_sieve(X), sb.search_height, tol, cache, jobs)
    return tabulate(recs.values(), X, alpha, epsilon, sb, tol, implied_constant)


def check_table(table: SurveyTable) -> list[str]:
    """Invariant violations of a survey table (empty when consistent)."""
    c = table.counts
    bad = []
    if c["N_alpha"] > c["S6_size"]:
        bad.append("N_alpha > #S6(X)")
    if c["N_alpha"] > c["N_star_alpha"]:
        bad.append("N_alpha > N*_alpha")
    if c["N_alpha_eps"] > c["N_alpha"]:
        bad.append("N_alpha_eps > N_alpha")
    if c["N_alpha_eps"] > c["N_star_alpha_eps"]:
        bad.append("N_alpha_eps > N*_alpha_eps")
    for r in table.records:
        if r.square_part != square_part(r.d).square_part:
            bad.append(f"square part of {r.d}")
        if r.zeta_outcome.found != (r.hhat_min is not None):
            bad.append(f"hhat_min presence for {r.d}")
    return bad


def density_report(tables: Sequence[SurveyTable]) -> list[tuple[int, float, float]]:
    """(X, N_alpha / #S6(X), fraction with square part >= X^eps), ordered by X."""
    if not tables:
        return []
    t0 = tables[0]
    for t in tables[1:]:
        if (t.alpha, t.epsilon, t.bound, t.tol) != (t0.alpha, t0.epsilon, t0.bound, t0.tol):
            raise ValueError("tables must share alpha, epsilon, bound and tol")
    rows = []
    for t in sorted(tables, key=lambda t: t.X):
        size = t.counts["S6_size"]
        tail = sum(1 for r in t.records if r.square_part >= t.X ** t.epsilon)
        rows.append((t.X, t.counts["N_alpha"] / size, tail / size))
    return rows


CSV_COLUMNS = ("d", "square_part", "outcome", "hhat_min", "h_f_min", "witness_x", "witness_y")


def table_rows(table: SurveyTable) -> list[list[str]]:
    rows = []
    for r in table.records:
        w = r.zeta_outcome.witness
        rows.append([
            str(r.d),
            str(r.square_part),
            r.zeta_outcome.outcome,
            "" if r.hhat_min is None else repr(r.hhat_min),
            "" if r.h_f_min is None else repr(r.h_f_min),
            "" if w is None else f"{w.x.numerator}/{w.x.denominator}",
            "" if w is None else f"{w.y.numerator}/{w.y.denominator}",
        ])
    return rows
