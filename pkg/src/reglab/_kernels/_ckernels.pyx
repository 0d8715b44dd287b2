# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled series convolution kernels."""
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    typedef __int128 i128;
    static inline uint64_t lo64(__int128 x) { return (uint64_t)x; }
    static inline int64_t hi64(__int128 x) { return (int64_t)(x >> 64); }
    """
    ctypedef long long i128
    uint64_t lo64(i128 x)
    int64_t hi64(i128 x)

from ._pykernels import conv_int as _conv_int_py


def conv_int(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef int bits = max(max(abs(x) for x in a).bit_length(), 1) + \
        max(max(abs(y) for y in b).bit_length(), 1) + (min(na, nb)).bit_length()
    if bits > 125 or max(abs(x) for x in a).bit_length() > 62 or max(abs(y) for y in b).bit_length() > 62:
        return _conv_int_py(a, b)
    cdef int64_t[::1] ca = memoryview_from(a)
    cdef int64_t[::1] cb = memoryview_from(b)
    cdef Py_ssize_t n = na + nb - 1
    out = [0] * n
    cdef i128 acc
    cdef Py_ssize_t k, jlo, jhi
    for k in range(n):
        acc = 0
        jlo = k - na + 1 if k - na + 1 > 0 else 0
        jhi = k if k < nb - 1 else nb - 1
        for j in range(jlo, jhi + 1):
            acc += <i128>ca[k - j] * <i128>cb[j]
        out[k] = (<object>hi64(acc) << 64) + <object>lo64(acc)
    return out


cdef int64_t[::1] memoryview_from(seq):
    import array
    return array.array("q", seq)


def conv_prec(va, ma, vb, mb):
    cdef Py_ssize_t na = len(va), nb = len(vb), i, j
    if na == 0 or nb == 0:
        return []
    import array
    cdef long long[::1] cva = array.array("q", va)
    cdef long long[::1] cma = array.array("q", ma)
    cdef long long[::1] cvb = array.array("q", vb)
    cdef long long[::1] cmb = array.array("q", mb)
    cdef long long[::1] out = array.array("q", [1 << 40]) * (na + nb - 1)
    cdef long long t, u, mi, vi
    for i in range(na):
        mi = cma[i]
        vi = cva[i]
        for j in range(nb):
            t = mi + cvb[j]
            u = cmb[j] + vi
            if u < t:
                t = u
            if t < out[i + j]:
                out[i + j] = t
    return list(out)


cdef list _POW = []
cdef long _POW_P = 0


cdef object _ppow(long p, long k):
    global _POW, _POW_P
    if p != _POW_P:
        _POW = [1]
        _POW_P = p
    while len(_POW) <= k:
        _POW.append(_POW[len(_POW) - 1] * p)
    return _POW[k]


def reduce_numerators(long p, long cap, long shift, nums, precs):
    cdef Py_ssize_t n = len(nums), i
    cdef long strip, mod_exp, t, m, need = shift
    cdef list out = list(nums)
    cdef list pr = [0] * n
    cdef object a, scale, pp = p
    for i in range(n):
        m = precs[i]
        if m > cap:
            m = cap
        pr[i] = m
        if -m > need:
            need = -m
    if need > shift:
        scale = _ppow(p, need - shift)
        out = [x * scale for x in out]
        shift = need
    strip = shift
    for i in range(n):
        mod_exp = <long>pr[i] + shift
        if mod_exp > 0:
            a = out[i] % _ppow(p, mod_exp)
        else:
            a = 0
        out[i] = a
        if strip > 0:
            if a:
                t = 0
                while a % pp == 0:
                    a = a // pp
                    t += 1
            else:
                t = mod_exp
            if t < strip:
                strip = t
    if strip > 0:
        d = _ppow(p, strip)
        out = [x // d for x in out]
        shift -= strip
    while out and out[len(out) - 1] == 0 and <long>pr[len(pr) - 1] >= cap:
        out.pop()
        pr.pop()
    return shift, out, pr
