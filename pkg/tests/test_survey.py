import json
import math

import pytest

from mordell.curve import MordellCurve, point
from mordell.integer_lab import sixth_power_free_sieve, square_part
from mordell.survey import (
    CacheError,
    SurveyCache,
    SurveyRecord,
    check_table,
    collect_records,
    density_report,
    run_survey,
    tabulate,
)


def test_x1_counts_zero():
    t = run_survey(1, 2 / 9, 0.05, 10 ** 4, 1e-5)
    assert t.counts == {"S6_size": 2, "N_alpha": 0, "N_star_alpha": 0, "N_alpha_eps": 0, "N_star_alpha_eps": 0}


def test_x10_has_d2_witness():
    t = run_survey(10, 2 / 9, 0.05, 10 ** 4, 1e-5)
    rec = {r.d: r for r in t.records}[2]
    assert rec.zeta_outcome.found and rec.zeta_outcome.witness == point(-1, 1)
    assert rec.square_part == 1
    assert check_table(t) == []


def test_counts_monotone_in_alpha():
    recs = collect_records(sixth_power_free_sieve(300), 10 ** 5, 1e-5)
    lo = tabulate(recs.values(), 300, 0.1, 0.05, 10 ** 5, 1e-5).counts
    hi = tabulate(recs.values(), 300, 2 / 9, 0.05, 10 ** 5, 1e-5).counts
    for k in ("N_alpha", "N_star_alpha", "N_alpha_eps", "N_star_alpha_eps"):
        assert lo[k] <= hi[k]


def test_counts_monotone_in_bound():
    a = run_survey(200, 2 / 9, 0.05, 10 ** 4, 1e-5)
    b = run_survey(200, 2 / 9, 0.05, 10 ** 5, 1e-5)
    for k, v in a.counts.items():
        assert b.counts[k] >= v


def test_table_invariants(survey_records):
    for X in (1000, 10_000):
        for alpha in (1 / 6 - 0.01, 2 / 9, 0.5):
            t = tabulate(survey_records.values(), X, alpha, 0.05, 10 ** 6, 1e-5)
            c = t.counts
            assert check_table(t) == []
            assert c["N_alpha"] <= c["N_star_alpha"]
            assert c["N_alpha_eps"] <= c["N_star_alpha_eps"]
            for r in t.records:
                assert r.square_part == square_part(r.d).square_part
                assert (r.hhat_min is not None) == r.zeta_outcome.found


def test_cache_round_trip_and_restriction(tmp_path):
    path = tmp_path / "cache.ndjson"
    ds = sixth_power_free_sieve(60)
    fresh = collect_records(ds, 10 ** 5, 1e-5, SurveyCache(str(path)))
    again = collect_records(ds, 10 ** 5, 1e-5, SurveyCache(str(path)))
    assert {d: r.points for d, r in fresh.items()} == {d: r.points for d, r in again.items()}
    small_direct = collect_records(ds, 10 ** 4, 1e-5)
    small_cached = collect_records(ds, 10 ** 4, 1e-5, SurveyCache(str(path)))
    for d in ds:
        assert [p.point for p in small_direct[d].points] == [p.point for p in small_cached[d].points]
        assert small_cached[d].search_bound.search_height == 10 ** 4


def test_cache_merge_keeps_larger_bound(tmp_path):
    path = tmp_path / "c.ndjson"
    cache = SurveyCache(str(path))
    collect_records([2, 3], 10 ** 3, 1e-5, cache)
    collect_records([2, 3], 10 ** 5, 1e-5, cache)
    reloaded = SurveyCache(str(path))
    assert len(reloaded) == 2
    assert reloaded.get(2, 10 ** 5, 1e-5).search_bound.search_height == 10 ** 5
    assert reloaded.get(2, 10 ** 6, 1e-5) is None


@pytest.mark.parametrize("bad", [
    {"point": {"x": "0/1", "y": "1/1"}, "hhat": 0.5, "h_f": 0.0},      # off E_2
    {"point": {"x": "2/1", "y": "3/1"}, "hhat": 0.5, "h_f": 2.19722},  # torsion point of E_1, off E_2
])
def test_cache_rejects_invalid_points(tmp_path, bad):
    obj = {"d": 2, "bound": 100, "tol": 1e-5, "square_part": 1, "points": [bad]}
    path = tmp_path / "bad.ndjson"
    path.write_text(json.dumps(obj) + "\n")
    with pytest.raises(CacheError):
        SurveyCache(str(path))


def test_cache_rejects_torsion_point(tmp_path):
    obj = {"d": 1, "bound": 100, "tol": 1e-5, "square_part": 1,
           "points": [{"point": {"x": "2/1", "y": "3/1"}, "hhat": 0.5, "h_f": math.log(9)}]}
    path = tmp_path / "bad.ndjson"
    path.write_text(json.dumps(obj) + "\n")
    with pytest.raises(CacheError):
        SurveyCache(str(path))


def test_density_report_single_and_ladder():
    t = run_survey(50, 2 / 9, 0.05, 10 ** 4, 1e-5)
    (row,) = density_report([t])
    assert row[0] == 50 and 0 <= row[1] <= 1 and 0 <= row[2] <= 1
    recs = {}
    for d in sixth_power_free_sieve(10_000):
        recs[d] = SurveyRecord(d, square_part(d).square_part, _none(), _sb(), 1e-5)
    tables = [tabulate(recs.values(), X, 2 / 9, 0.05, 10, 1e-5) for X in (10_000, 1000, 3000)]
    rows = density_report(tables)
    assert [r[0] for r in rows] == [1000, 3000, 10_000]
    tails = [r[2] for r in rows]
    assert all(t > 0 for t in tails)
    assert tails[0] > tails[1] > tails[2]


def test_density_report_rejects_mixed_parameters():
    a = run_survey(10, 2 / 9, 0.05, 10 ** 3, 1e-5)
    b = run_survey(10, 0.1, 0.05, 10 ** 3, 1e-5)
    with pytest.raises(ValueError):
        density_report([a, b])


def test_parameter_validation():
    for args in [(0, 0.2, 0.05), (10, 0.0, 0.05), (10, 1.0, 0.05), (10, 0.2, 0.0)]:
        with pytest.raises(ValueError):
            run_survey(*args, bound=10)


def _none():
    from mordell.search import ZetaResult
    return ZetaResult(_sb())


def _sb():
    from mordell.search import SearchBound
    return SearchBound(10)
