"""One line per acceptance criterion: ``pytest tests/test_acceptance.py -v -s``."""
import pytest

from reflmon.acceptance import CRITERIA


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    import sys
    from reflmon.acceptance import run_all
    results = run_all()
    for name, ok, detail, dt in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail} ({dt:.1f}s)")
    sys.exit(0 if all(r[1] for r in results) else 1)
