"""Backend selection for the evaluation kernels.

The compiled extension is preferred when importable; set ``REPKIT_PURE=1``
(before the first repkit import) to force the pure-Python kernels.  Both
backends return identical bytes for identical arguments — the test suite
checks this whenever the extension is present.
"""

from __future__ import annotations

import os

from repkit import _kernels_py

if os.environ.get("REPKIT_PURE"):
    _impl = _kernels_py
else:
    try:
        from repkit import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py

action_atom_bits = _impl.action_atom_bits
group_atom_bits = _impl.group_atom_bits


def backend_name() -> str:
    return "compiled" if _impl is not _kernels_py else "pure"
