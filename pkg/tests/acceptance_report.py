"""Shared sink for acceptance-criterion result lines.

test_acceptance.py appends one line per criterion; the conftest terminal
hook prints the block after the run so every pass/fail verdict is visible
in plain pytest output.
"""

LINES: list[str] = []


def record(number: int, ok: bool, elapsed: float, budget: float, label: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    LINES.append(
        f"ACCEPTANCE {number:2d}: {verdict} ({elapsed:.2f}s of {budget:g}s) {label}"
    )
