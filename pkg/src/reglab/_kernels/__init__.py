"""Series convolution and reduction kernels: compiled when available, pure Python otherwise.

Set ``REGLAB_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as py

BACKEND = "python"
conv_int = py.conv_int
conv_prec = py.conv_prec
reduce_numerators = py.reduce_numerators

if not os.environ.get("REGLAB_PURE_PYTHON"):
    try:
        from . import _ckernels as c
    except ImportError:
        c = None
    else:
        BACKEND = "cython"
        conv_int = c.conv_int
        conv_prec = c.conv_prec
        reduce_numerators = c.reduce_numerators

__all__ = ["BACKEND", "conv_int", "conv_prec", "reduce_numerators", "py"]
