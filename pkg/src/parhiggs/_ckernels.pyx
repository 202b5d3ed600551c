# cython: language_level=3, boundscheck=False, wraparound=False
"""int64 convolution with overflow detection.

Raises OverflowError whenever an input does not fit in 64 bits or an
intermediate product/sum overflows; callers then retry in pure Python.
"""
from libc.stdlib cimport malloc, free


cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow" (long long a, long long b, long long *res) nogil
    bint add_ovf "__builtin_add_overflow" (long long a, long long b, long long *res) nogil


def convolve(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef long long *ca = <long long *> malloc(na * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *out = <long long *> malloc((na + nb - 1) * sizeof(long long))
    cdef long long p
    cdef bint bad = False
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError()
    try:
        # conversion raises OverflowError for values outside int64
        for i in range(na):
            ca[i] = a[i]
        for j in range(nb):
            cb[j] = b[j]
        with nogil:
            for i in range(na + nb - 1):
                out[i] = 0
            for i in range(na):
                if ca[i] == 0:
                    continue
                for j in range(nb):
                    if mul_ovf(ca[i], cb[j], &p) or add_ovf(out[i + j], p, &out[i + j]):
                        bad = True
                        break
                if bad:
                    break
        if bad:
            raise OverflowError("int64 overflow in convolution")
        return [out[i] for i in range(na + nb - 1)]
    finally:
        free(ca)
        free(cb)
        free(out)
