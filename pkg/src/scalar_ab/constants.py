"""CODATA 2018 values used for SI conversions."""

ELEMENTARY_CHARGE = 1.602176634e-19  # C
PLANCK = 6.62607015e-34  # J s
HBAR = 1.054571817e-34  # J s (CODATA 2018 recommended, truncated)

SI = "SI"
NATURAL = "natural"
UNIT_SYSTEMS = (SI, NATURAL)

TABLE = (
    ("elementary_charge", ELEMENTARY_CHARGE, "C"),
    ("planck", PLANCK, "J s"),
    ("hbar", HBAR, "J s"),
)


def unit_constants(unit_system: str) -> tuple[float, float]:
    """Return ``(charge, hbar)`` for a unit-system tag."""
    if unit_system == SI:
        return ELEMENTARY_CHARGE, HBAR
    if unit_system == NATURAL:
        return 1.0, 1.0
    raise ValueError(f"unknown unit system {unit_system!r}; expected one of {UNIT_SYSTEMS}")
