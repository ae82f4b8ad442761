"""Global working-precision mode.

Two modes are supported:

* ``"binary64"``   -- IEEE double precision everywhere (the default);
* ``"extended"``   -- software floats with 50 significant digits (mpmath),
                      used by the kernels that opt in (polynomial roots,
                      Airy evaluation, the moment quadratures of ``mop``).

The mode is a run-wide, effectively immutable setting: set it once before
doing any numerics.  Binary64 is enough for everything except the multiple
orthogonal polynomials beyond n ~ 20, whose moment matrices become too
ill-conditioned for double precision.
"""

import mpmath

EXTENDED_DPS = 50

_MODE = "binary64"


def set_precision(mode: str) -> None:
    """Select the working precision, ``"binary64"`` or ``"extended"``."""
    global _MODE
    if mode not in ("binary64", "extended"):
        raise ValueError(f"unknown precision mode {mode!r}")
    _MODE = mode
    if mode == "extended":
        mpmath.mp.dps = EXTENDED_DPS


def get_precision() -> str:
    """Return the active precision mode."""
    return _MODE
