"""Selects the PBW straightening kernel: compiled extension if available,
pure Python otherwise.  Set BETHELIM_PURE=1 to force the pure backend."""

import os

if os.environ.get("BETHELIM_PURE"):
    from . import _pbw_py as _impl
else:
    try:
        from . import _pbw_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pbw_py as _impl

BACKEND = _impl.BACKEND
RSH = _impl.RSH
ISH = _impl.ISH

ypack = _impl.ypack
yunpack = _impl.yunpack
ydeg = _impl.ydeg
epack = _impl.epack
eunpack = _impl.eunpack
ygen_commutator = _impl.ygen_commutator
egen_commutator = _impl.egen_commutator
ymul_mono = _impl.ymul_mono
emul_mono = _impl.emul_mono
ymul = _impl.ymul
emul = _impl.emul
clear_caches = _impl.clear_caches
