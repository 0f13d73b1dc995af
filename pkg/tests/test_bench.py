import random

from efxcost.bench import SUITES, format_table, has_partition, packable, run_suite

from oracles import equal_sum_split, fits_bins


def test_ground_truth_helpers_match_oracles():
    rng = random.Random(71)
    for _ in range(200):
        S = [rng.randint(1, 9) for _ in range(rng.randint(1, 7))]
        assert has_partition(S) == equal_sum_split(S)
        assert has_partition(S, equal_size=True) == equal_sum_split(S, equal_size=True)
    for _ in range(100):
        bins, B = rng.randint(1, 3), rng.randint(2, 6)
        sizes = [rng.randint(1, B) for _ in range(rng.randint(1, 7))]
        assert packable(sizes, B, bins) == fits_bins(sizes, B, bins)


def test_every_suite_agrees():
    reports = [run_suite(name, seed=1) for name in SUITES]
    assert all(r.ok and r.instances > 0 for r in reports), format_table(reports)
