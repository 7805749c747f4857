"""Backend selection for the row-echelon accumulator.

The compiled extension keeps every stored entry below 2**31 and raises
OverflowError the moment an operation would breach that bound; callers
are expected to catch it and rerun on the pure backend, which uses
arbitrary-precision ints.  Set GAMMAFILT_PURE=1 to skip the extension
entirely (mainly for benchmarking and debugging).
"""

import os

from ._accum_pure import Accumulator as PureAccumulator
from ._accum_pure import xgcd

__all__ = ["Accumulator", "PureAccumulator", "CompiledAccumulator",
           "BACKEND", "xgcd"]

CompiledAccumulator = None

if not os.environ.get("GAMMAFILT_PURE"):
    try:
        from ._accum import Accumulator as CompiledAccumulator
    except ImportError:
        CompiledAccumulator = None

if CompiledAccumulator is not None:
    Accumulator = CompiledAccumulator
    BACKEND = "compiled"
else:
    Accumulator = PureAccumulator
    BACKEND = "pure"
