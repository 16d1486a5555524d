"""Compiled inner loops for 2-to-1 verification.

Images are counted with a small per-value counter; a count reaching 3 aborts
the candidate at once, and the final sweep rejects any value hit exactly once.
"""
import numba as nb
import numpy as np


@nb.njit(cache=True)
def _check_table(table, counts):
    size = table.shape[0]
    ok = True
    for x in range(size):
        v = table[x]
        c = counts[v] + 1
        counts[v] = c
        if c == 3:
            ok = False
            break
    if ok:
        for v in range(size):
            if counts[v] == 1:
                ok = False
                break
    counts[:] = 0
    return ok


def check_table(table: np.ndarray) -> bool:
    table = np.ascontiguousarray(table, dtype=np.int64)
    if table.size == 0 or table.size & (table.size - 1):
        raise ValueError("function table length must be a power of two")
    if table.min() < 0 or table.max() >= table.size:
        raise ValueError("function table values out of range")
    counts = np.zeros(table.size, dtype=np.uint8)
    return bool(_check_table(table, counts))


@nb.njit(cache=True)
def scan_coefficients(exp, log_mono, trace_part, c_logs, out):
    """For each c = g^c_logs[i], test whether x -> c*m(x) + t(x) is 2-to-1.

    log_mono[x] is log_g of the monomial value m(x) (negative for m(x) = 0);
    trace_part[x] is t(x).  out[i] receives the verdict for c_logs[i].
    """
    size = trace_part.shape[0]
    counts = np.zeros(size, dtype=np.uint8)
    for ci in range(c_logs.shape[0]):
        lc = c_logs[ci]
        ok = True
        for x in range(size):
            lx = log_mono[x]
            v = trace_part[x]
            if lx >= 0:
                v ^= exp[lc + lx]
            c = counts[v] + 1
            counts[v] = c
            if c == 3:
                ok = False
                break
        if ok:
            for v in range(size):
                if counts[v] == 1:
                    ok = False
                    break
        counts[:] = 0
        out[ci] = ok
