"""Quick pass over the randomized theorem suites at reduced trial counts.

The full counts run in CI via `cekit verify <suite>` or the acceptance
tests; this is the two-minute tour.
"""
from cekit.suites import DEFAULT_TRIALS, SUITES

QUICK = {
    "schur": 500,
    "alpha-mono": 300,
    "ordering": 50,
    "subadd": 50,
    "tensor-id": 30,
    "continuity": 50,
    "locc": 50,
    "swap-consistency": 10,
    "roof-separable": 3,
    "roof-eof": 2,
}

for name, runner in SUITES.items():
    result = runner(seed=0, trials=QUICK[name])
    status = "pass" if result.passed else "FAIL"
    print(f"{name:>18}: {status} ({result.trials} trials, full run uses {DEFAULT_TRIALS[name]})")
    for failure in result.failures[:3]:
        print(f"    {failure}")
