"""One check line per acceptance criterion; criterion 15 is reported but not gating."""

import pytest

from stratcone.suites import SUITES, SuiteConfig, run_suites

CRITERIA = sorted(((number, name) for name, (number, _) in SUITES.items()))


@pytest.mark.parametrize("number,suite", CRITERIA, ids=[f"criterion-{n:02d}-{s}" for n, s in CRITERIA])
def test_acceptance_criterion(number, suite, capsys):
    results = run_suites([suite], SuiteConfig(seed=0))
    gating = all(r.gating for r in results)
    failed = [r for r in results if not r.passed]
    worst = max(results, key=lambda r: (not r.passed, r.value / r.tolerance if r.tolerance > 0 else r.value))
    status = "PASS" if not failed else ("FAIL" if gating else "WARN")
    note = "" if gating else " [non-gating]"
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {suite:<17s} {status}{note}: {len(results) - len(failed)}/{len(results)} checks, "
              f"worst {worst.name} value={worst.value:.3e} tol={worst.tolerance:.1e}")
        for r in failed:
            print(f"    failing: {r.name} value={r.value:.3e} tol={r.tolerance:.1e}")
    assert results, "suite produced no checks"
    if gating:
        assert not failed, [r.name for r in failed]
