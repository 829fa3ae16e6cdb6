"""Canonical syndrome categories.

The six categories cover the symptom classes the classifiers are trained
for. The tuple order is the fixed schema order used everywhere a stable
ordering matters (API responses, report rows, dashboard segments).
"""

SYNDROMES = (
    "constitutional",
    "respiratory",
    "gastrointestinal",
    "hemorrhagic",
    "rash",
    "neurological",
)


def validate_syndrome(name: str) -> str:
    if name not in SYNDROMES:
        raise ValueError(f"unknown syndrome {name!r}; expected one of {', '.join(SYNDROMES)}")
    return name
