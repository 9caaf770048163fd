"""Allocation accounting for the workspace contracts.

Measures Python-heap traffic around a callable with tracemalloc: the net
retained bytes after the call and the peak transient above the baseline.
The compiled kernels keep their state in scalars and caller-provided
buffers, so a constant, n-independent peak here is the observable form of
the O(1)-extra-workspace contract; the weighted-rectangle solver, which is
allowed linear auxiliary storage, shows a peak growing with the input.
"""

from __future__ import annotations

import gc
import tracemalloc


def measure(fn, *args, **kwargs):
    """Run fn and return (result, net_bytes, peak_bytes) of Python-heap use."""
    gc.collect()
    was_tracing = tracemalloc.is_tracing()
    if not was_tracing:
        tracemalloc.start()
    base, _ = tracemalloc.get_traced_memory()
    tracemalloc.reset_peak()
    result = fn(*args, **kwargs)
    current, peak = tracemalloc.get_traced_memory()
    if not was_tracing:
        tracemalloc.stop()
    return result, max(0, current - base), max(0, peak - base)
