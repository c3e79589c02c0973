"""Collects one result line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(number: int, ok: bool, text: str, elapsed: float | None = None) -> str:
    tail = f" ({elapsed:.3f} s)" if elapsed is not None else ""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}{tail}"
    LINES.append(line)
    print(line)
    return line
