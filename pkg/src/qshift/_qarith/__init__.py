"""Exact rational kernel with backend selection.

Every rational number in the package is a ``Q``.  Two interchangeable
backends exist:

* ``speedups`` -- a Cython extension type with the same semantics,
  noticeably faster on the small rationals that dominate real workloads;
* ``pure`` -- stdlib :class:`fractions.Fraction`;

The compiled backend is preferred when importable.  Set the environment
variable ``QSHIFT_BACKEND=pure`` (or ``speedups``) to force a choice;
forcing ``speedups`` raises if the extension was not built.

Both backends produce identical exact values, so every artifact the
package writes (traces, reports, golden files) is byte-identical across
backends.
"""

import os

_requested = os.environ.get("QSHIFT_BACKEND", "").strip().lower()
if _requested not in ("", "pure", "speedups"):
    raise RuntimeError(
        f"QSHIFT_BACKEND must be 'pure' or 'speedups', got {_requested!r}"
    )

if _requested == "pure":
    from .pure import Q

    BACKEND = "pure"
elif _requested == "speedups":
    from ._speedups import Q

    BACKEND = "speedups"
else:
    try:
        from ._speedups import Q

        BACKEND = "speedups"
    except ImportError:
        from .pure import Q

        BACKEND = "pure"

__all__ = ["Q", "BACKEND"]
