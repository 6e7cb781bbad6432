"""Collects one verdict line per acceptance criterion for the terminal summary."""

RESULTS = {}


def record(number, passed, detail):
    RESULTS[number] = (passed, detail)
    print(line(number))


def line(number):
    passed, detail = RESULTS[number]
    return f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {detail}"
