"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
PASS lines and timings.
"""
import json
import random
import time
from decimal import Decimal
from fractions import Fraction

import pytest

from convexlab.audit import PASS, audit_theorem, check_cauchy_schwarz, check_holder, check_lemma_e15
from convexlab.cli import main as cli_main
from convexlab.corpus import chain_corpus, load_fixture
from convexlab.energy import DIFFERENCE, SUM, energy
from convexlab.families import growth_scan
from convexlab.functions import RECIPROCAL, SQUARE
from convexlab.incidence import build_instance, count_incidences
from convexlab.seeding import derive_seed
from convexlab.sets import NumberSet
from oracles import ap_energy_closed_form, ap_energy_summation, quadruple_energy

ACCEPTANCE_SEED = 31415926


def announce(number: int, message: str) -> None:
    print(f"\nACCEPTANCE {number}: PASS - {message}")


def seeded_rng(label: str) -> random.Random:
    return random.Random(derive_seed(ACCEPTANCE_SEED, label))


def random_rational_set(rng: random.Random, min_size: int, max_size: int,
                        max_num: int = 10 ** 6, max_den: int = 64) -> NumberSet:
    size = rng.randint(min_size, max_size)
    vals = set()
    while len(vals) < size:
        vals.add(Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)))
    return NumberSet(vals)


def random_positive_set(rng: random.Random, max_size: int) -> NumberSet:
    size = rng.randint(2, max_size)
    vals = set()
    while len(vals) < size:
        vals.add(Fraction(rng.randint(1, 400), rng.randint(1, 8)))
    return NumberSet(vals)


def test_criterion_1_exact_inequality_suite():
    """1,000 seeded random pairs: bridge, Holder, and all Cauchy-Schwarz forms PASS in < 60 s."""
    rng = seeded_rng("criterion1")
    start = time.perf_counter()
    fails = 0
    for _ in range(1000):
        a = random_rational_set(rng, 2, 64)
        b = random_rational_set(rng, 2, 64)
        reports = [check_lemma_e15(a, b), check_holder(a)]
        reports += list(check_cauchy_schwarz(a, "sum"))
        reports += list(check_cauchy_schwarz(a, "diff"))
        reports += list(check_cauchy_schwarz(a, "cross", b))
        fails += sum(1 for r in reports if r.verdict != PASS)
    elapsed = time.perf_counter() - start
    assert fails == 0
    assert elapsed < 60, f"inequality suite took {elapsed:.1f}s (budget 60s)"
    announce(1, f"1000 random pairs, 0 FAILs, {elapsed:.1f}s")


def test_criterion_2_energy_oracle_equivalence():
    """delta-route == sigma-route == quadruple-loop count for 100 random pairs, |A| <= 16."""
    rng = seeded_rng("criterion2")
    for _ in range(100):
        a = random_rational_set(rng, 2, 16, max_num=1000, max_den=16)
        b = random_rational_set(rng, 2, 16, max_num=1000, max_den=16)
        via_delta = energy(a, b, via=DIFFERENCE)
        via_sigma = energy(a, b, via=SUM)
        oracle = quadruple_energy(a, b)
        assert via_delta == via_sigma == oracle
    announce(2, "100 random pairs, delta == sigma == quadruple oracle exactly")


def test_criterion_3_ap_closed_form():
    """E(AP_n, AP_n) == (2n^3+n)/3 for every n in 2..512, against the summation oracle."""
    for n in range(2, 513):
        ap = NumberSet(range(n))
        e = energy(ap, ap)
        assert e == ap_energy_closed_form(n) == ap_energy_summation(n), f"n={n}"
    announce(3, "E(AP_n) == (2n^3+n)/3 for all n in 2..512")


@pytest.fixture(scope="module")
def st_instances():
    rng = seeded_rng("criterion4")
    instances = []
    for i in range(200):
        fn = SQUARE if i % 2 == 0 else RECIPROCAL
        a = random_positive_set(rng, 16)
        b = random_positive_set(rng, 16)
        c = random_positive_set(rng, 16)
        grid, family = build_instance(fn, a, b, c)
        report = count_incidences(grid, family)
        instances.append((fn, a, b, c, report))
    return instances


def test_criterion_4_szemeredi_trotter_bound(st_instances):
    """200 seeded instances, exact incidence count within 4(PL)^(2/3)+4P+L, < 120 s."""
    start = time.perf_counter()
    violations = [r for _, _, _, _, r in st_instances if not r.st_bound_holds]
    elapsed = time.perf_counter() - start
    assert not violations
    assert elapsed < 120
    announce(4, f"200 instances, 0 incidence-bound violations")


def test_criterion_5_rich_point_cap(st_instances):
    """No point of any instance lies on more than min(|B|, |C|) curves."""
    for fn, a, b, c, report in st_instances:
        assert report.max_point_curves <= min(len(b), len(c)), (fn.name, len(b), len(c))
    announce(5, "rich-point cap min(|B|,|C|) holds on all 200 instances")


def test_criterion_6_theorem_chain_regression():
    """Chains on squares and random-convex, n in {8,16,32,64}: constant-free PASS,
    ratios finite/positive and within 10% of committed fixtures."""
    fixtures = load_fixture("chain_ratios.json")["chains"]
    checked = 0
    for key, which, fn, a in chain_corpus():
        chain = audit_theorem(which, fn, a)
        for step in chain.steps:
            assert step.verdict in (PASS, "REPORT_ONLY"), (key, step.name)
        assert Fraction(chain.final_ratio) > 0
        stored = fixtures[key]
        pairs = [(chain.final_ratio, stored["finalRatio"])]
        for step in chain.report_only_steps():
            ratio = Fraction(step.ratio)
            assert ratio > 0
            pairs.append((step.ratio, stored["steps"][step.name]))
        for got, want in pairs:
            got_d, want_d = Decimal(got), Decimal(want)
            assert abs(got_d - want_d) <= abs(want_d) * Decimal("0.10"), (key, got, want)
        checked += 1
    assert checked == 24
    announce(6, f"{checked} chains, every ratio within 10% of fixtures")


def test_criterion_7_search_determinism(tmp_path, capsys):
    """Identical configs give byte-identical traces; workers change nothing."""
    config = {"objective": "diffProdRatio", "set_size": 8, "iterations": 60,
              "seed": 11, "restarts": 2}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config))

    outputs = []
    for args in (["search", "--config", str(cfg_path)],
                 ["search", "--config", str(cfg_path)],
                 ["search", "--config", str(cfg_path), "--workers", "4"]):
        code = cli_main(args)
        assert code == 0
        outputs.append(capsys.readouterr().out.encode())
    assert outputs[0] == outputs[1] == outputs[2]
    announce(7, "byte-identical traces across reruns and worker counts")


def test_criterion_8_growth_sanity():
    """Squares diffset slope >= 1.4 over {64,...,512}; AP sumset slope 1.0 +- 0.01."""
    squares = growth_scan("squares", None, [64, 128, 256, 512])
    diff_slope = squares.ls_slopes["diffset"]
    assert diff_slope >= Fraction(14, 10), float(diff_slope)
    ap = growth_scan("AP", None, [64, 128, 256, 512])
    sum_slope = ap.ls_slopes["sumset"]
    assert abs(sum_slope - 1) <= Fraction(1, 100), float(sum_slope)
    announce(8, f"squares diff slope {float(diff_slope):.3f} >= 1.4; "
                f"AP sum slope {float(sum_slope):.4f} within 1.0 +- 0.01")
