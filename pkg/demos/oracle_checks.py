"""Print the independent-oracle suite as a table.

Same computation as `spdckit validate`, kept as a script so the report
reads next to the other demos.
Run from the repo root: python3 demos/oracle_checks.py
"""

from spdckit.validation import run_all_oracles

reports = run_all_oracles()
width = max(len(r.name) for r in reports)
print(f"{'check'.ljust(width)}  {'main':>13}  {'oracle':>13}  {'rel diff':>9}  ok")
for r in reports:
    print(
        f"{r.name.ljust(width)}  {r.main_value:13.6e}  {r.oracle_value:13.6e}"
        f"  {r.rel_diff:9.2e}  {'yes' if r.passed else 'NO'}"
    )

bad = [r for r in reports if not r.passed]
print()
if bad:
    print(f"{len(bad)} check(s) failed")
    raise SystemExit(1)
print(f"all {len(reports)} dual-route checks agree within tolerance")
