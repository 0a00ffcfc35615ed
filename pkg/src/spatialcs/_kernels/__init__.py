"""Kernel backend selection.

The hot inner loops (implication-table construction, distributivity scan,
space-function enumeration, and the distributed-space combination step) exist
twice: a compiled Cython extension (``_fastcore``) and a pure-Python twin
(``pure``). The compiled one is preferred when importable; setting the
environment variable ``SPATIALCS_BACKEND=pure`` forces the fallback.
``use_backend()`` switches at runtime, which the backend benchmark relies on.

Both backends implement identical semantics, including operation counts, so
nothing observable depends on which one is active.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

try:
    from . import _fastcore
except ImportError:  # extension not built; pure fallback
    _fastcore = None

if os.environ.get("SPATIALCS_BACKEND") == "pure" or _fastcore is None:
    _active = pure
else:
    _active = _fastcore


def backend_name() -> str:
    return _active.NAME


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if _fastcore is not None else ("pure",)


def use_backend(name: str) -> None:
    global _active
    if name == "pure":
        _active = pure
    elif name == "compiled":
        if _fastcore is None:
            raise RuntimeError("compiled kernel backend is not available")
        _active = _fastcore
    else:
        raise ValueError(f"unknown backend {name!r}")


def _flat(lists, dtype=np.int32):
    off = np.zeros(len(lists) + 1, dtype=np.int32)
    for i, l in enumerate(lists):
        off[i + 1] = off[i] + len(l)
    flat = np.fromiter((x for l in lists for x in l), dtype=dtype, count=int(off[-1]))
    return flat, off


def heyting_table(leq, join, meet, top):
    if _active is pure:
        return pure.heyting_table(leq, join, meet, top)
    return _fastcore.heyting_table(np.ascontiguousarray(leq, dtype=np.uint8), join, meet, top)


def distributivity_witness(join, meet):
    return _active.distributivity_witness(join, meet)


def oracle_scan(join, leq, bottom, order, prev_below, cands, elem_irr,
                check_s2, accumulate, leaf_cap):
    if _active is pure:
        return pure.oracle_scan(join, leq, bottom, order, prev_below, cands,
                                elem_irr, check_s2, accumulate, leaf_cap)
    pb_flat, pb_off = _flat(prev_below)
    cand_flat, cand_off = _flat(cands)
    ei_flat, ei_off = _flat(elem_irr)
    return _fastcore.oracle_scan(
        join, np.ascontiguousarray(leq, dtype=np.uint8), bottom,
        np.asarray(order, dtype=np.int32),
        pb_flat, pb_off, cand_flat, cand_off, ei_flat, ei_off,
        bool(check_s2), bool(accumulate), int(leaf_cap))


def delta_combine(tab_j, tab_k, join, meet, impl, leq, variant, top):
    if _active is pure:
        return pure.delta_combine(tab_j, tab_k, join, meet, impl, leq, variant, top)
    impl_arr = impl if impl is not None else join
    return _fastcore.delta_combine(
        np.asarray(tab_j, dtype=np.int32), np.asarray(tab_k, dtype=np.int32),
        join, meet, impl_arr, np.ascontiguousarray(leq, dtype=np.uint8),
        int(variant), int(top))
