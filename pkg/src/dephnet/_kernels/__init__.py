"""Hot numeric kernels: numba-jitted by default, pure numpy on request.

Set DEPHNET_DISABLE_NUMBA=1 to force the numpy implementations (useful for
debugging and for benchmarking the jit speedup); the numpy path is also the
automatic fallback when numba is unavailable. Both backends expose the same
functions with identical semantics:

    rk4_samples(G, v0, dz, total_steps, stride, zero_idx) -> (K+1, E)
    segment_single_chunk(H0, noise, dz_seg, checks, psi0) -> (C, n, n)
    segment_two_chunk(H0, noise, dz_seg, checks, amp0, sign) -> (C, D, D)
    wiener_single_chunk(beta, kappa, gamma, dn, dz, checks, psi0) -> (C, n, n)
    wiener_two_chunk(beta, kappa, gamma, dn, dz, checks, amp0, sign) -> (C, D, D)
    segment_propagators(H0, noise, dz_seg, checks) -> (C, n, n)
    wiener_propagators(beta, kappa, gamma, dn, dz, checks) -> (C, n, n)
"""

import os

_FORCE_NUMPY = os.environ.get("DEPHNET_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")

if not _FORCE_NUMPY:
    try:
        from . import numba_backend as _backend
        BACKEND = "numba"
    except ImportError:
        from . import numpy_backend as _backend
        BACKEND = "numpy"
else:
    from . import numpy_backend as _backend
    BACKEND = "numpy"

rk4_samples = _backend.rk4_samples
segment_single_chunk = _backend.segment_single_chunk
segment_two_chunk = _backend.segment_two_chunk
wiener_single_chunk = _backend.wiener_single_chunk
wiener_two_chunk = _backend.wiener_two_chunk
segment_propagators = _backend.segment_propagators
wiener_propagators = _backend.wiener_propagators
