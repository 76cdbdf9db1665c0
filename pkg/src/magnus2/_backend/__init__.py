"""Kernel backend selection.

The hot real-matrix kernels exist twice: a Cython extension (``_core``) and
a pure-Python twin (``_pure``) with identical signatures and semantics.
Whichever is importable wins; the extension is preferred.  ``BACKEND``
reports the choice, ``benchmarks/bench_backends.py`` compares the two.
"""

try:
    from ._core import (  # noqa: F401
        BACKEND,
        ac,
        bch_log_norm,
        cos_big,
        exp2,
        lexp_product,
        log2,
        log2_norm,
        mul,
        op_norm,
        signed_conorm,
        sin_big,
    )
except ImportError:
    from ._pure import (  # noqa: F401
        BACKEND,
        ac,
        bch_log_norm,
        cos_big,
        exp2,
        lexp_product,
        log2,
        log2_norm,
        mul,
        op_norm,
        signed_conorm,
        sin_big,
    )
