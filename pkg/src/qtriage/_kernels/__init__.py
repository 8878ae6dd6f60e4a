"""Hot-kernel backend selection.

The compiled extension is used when it imported cleanly; the numpy fallback
otherwise. Set QTRIAGE_BACKEND=py or QTRIAGE_BACKEND=native to force one
(forcing ``native`` raises if the extension is unavailable).
"""

from __future__ import annotations

import os

from qtriage._kernels import pybackend

try:
    from qtriage._kernels import _native
except ImportError:
    _native = None

_forced = os.environ.get("QTRIAGE_BACKEND", "").strip().lower()
if _forced == "py":
    backend = pybackend
elif _forced == "native":
    if _native is None:
        raise ImportError("QTRIAGE_BACKEND=native but the compiled extension is missing")
    backend = _native
else:
    backend = _native if _native is not None else pybackend

BACKEND_NAME = "native" if backend is _native else "py"

fnv1a64 = backend.fnv1a64
hash_tokens = backend.hash_tokens
sqdist = backend.sqdist
logreg_loss_grad = backend.logreg_loss_grad
svm_epochs = backend.svm_epochs
best_split_feature = backend.best_split_feature
RATIO_TIE_EPS = pybackend.RATIO_TIE_EPS
