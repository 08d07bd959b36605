# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed kernels for truncated rational power series.

Same contract as ``harmdens._pykernels``: Fraction sequences in, lists of
Fractions out. Inputs are loaded once into ``mpq_t`` buffers, all inner
loops run in C, and results are converted back at the end.
"""

from libc.stdlib cimport malloc, free
from cpython.long cimport PyLong_AsLongAndOverflow, PyLong_FromLong

from fractions import Fraction

from harmdens._pykernels import _from_coprime


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpq_struct* mpq_ptr

    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    bint mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_div(mpq_ptr, mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)


cdef class _Buf:
    """Owned array of initialised ``mpq_t`` values."""
    cdef __mpq_struct* v
    cdef Py_ssize_t n

    def __cinit__(self, Py_ssize_t n):
        cdef Py_ssize_t i
        self.n = n
        self.v = <__mpq_struct*>malloc(max(n, 1) * sizeof(__mpq_struct))
        if self.v == NULL:
            raise MemoryError()
        for i in range(n):
            mpq_init(&self.v[i])

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.v != NULL:
            for i in range(self.n):
                mpq_clear(&self.v[i])
            free(self.v)


cdef int _set_mpz(mpz_ptr z, object value) except -1:
    cdef int overflow = 0
    cdef long small = PyLong_AsLongAndOverflow(value, &overflow)
    if overflow == 0:
        mpz_set_si(z, small)
    else:
        text = format(value, "x").encode("ascii")
        mpz_set_str(z, text, 16)
    return 0


cdef object _get_int(mpz_ptr z):
    cdef size_t size
    cdef char* text
    if mpz_fits_slong_p(z):
        return PyLong_FromLong(mpz_get_si(z))
    size = mpz_sizeinbase(z, 16) + 2
    text = <char*>malloc(size)
    if text == NULL:
        raise MemoryError()
    try:
        mpz_get_str(text, 16, z)
        return int(text, 16)
    finally:
        free(text)


cdef _Buf _load(object seq, Py_ssize_t n):
    # Fractions are already reduced with positive denominators.
    cdef _Buf buf = _Buf(n)
    cdef Py_ssize_t i, m = min(len(seq), n)
    for i in range(m):
        x = seq[i]
        _set_mpz(mpq_numref(&buf.v[i]), x.numerator)
        _set_mpz(mpq_denref(&buf.v[i]), x.denominator)
    return buf


cdef list _dump(_Buf buf, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list out = []
    for i in range(n):
        out.append(_from_coprime(_get_int(mpq_numref(&buf.v[i])),
                                 _get_int(mpq_denref(&buf.v[i]))))
    return out


cdef void _mul_into(__mpq_struct* out, __mpq_struct* a, Py_ssize_t na,
                    __mpq_struct* b, Py_ssize_t nb, Py_ssize_t n,
                    __mpq_struct* tmp) noexcept:
    cdef Py_ssize_t i, j, jmax
    for i in range(n):
        mpq_set_si(&out[i], 0, 1)
    for i in range(min(na, n)):
        if mpq_sgn(&a[i]) == 0:
            continue
        jmax = min(nb, n - i)
        for j in range(jmax):
            if mpq_sgn(&b[j]) == 0:
                continue
            mpq_mul(tmp, &a[i], &b[j])
            mpq_add(&out[i + j], &out[i + j], tmp)


def mul(a, b, Py_ssize_t n):
    cdef Py_ssize_t na = min(len(a), n), nb = min(len(b), n)
    cdef _Buf A = _load(a, na), B = _load(b, nb), C = _Buf(n), T = _Buf(1)
    _mul_into(C.v, A.v, na, B.v, nb, n, T.v)
    return _dump(C, n)


def compose(outer, inner, Py_ssize_t n):
    cdef Py_ssize_t no = len(outer), ni = min(len(inner), n), k, i
    cdef _Buf O = _load(outer, no), I = _load(inner, ni)
    cdef _Buf R = _Buf(n), S = _Buf(n), T = _Buf(1)
    cdef __mpq_struct* res = R.v
    cdef __mpq_struct* scratch = S.v
    cdef __mpq_struct* swap
    if no == 0 or n == 0:
        return _dump(R, n)
    mpq_set(&res[0], &O.v[no - 1])
    for k in range(no - 2, -1, -1):
        _mul_into(scratch, res, n, I.v, ni, n, T.v)
        mpq_add(&scratch[0], &scratch[0], &O.v[k])
        swap = res
        res = scratch
        scratch = swap
    if res != R.v:
        for i in range(n):
            mpq_set(&R.v[i], &res[i])
    return _dump(R, n)


cdef void _pow_into(__mpq_struct* b, __mpq_struct* a, Py_ssize_t na,
                    __mpq_struct* alpha, Py_ssize_t n,
                    __mpq_struct* acc, __mpq_struct* c,
                    __mpq_struct* t) noexcept:
    cdef Py_ssize_t k, j
    if n == 0:
        return
    mpq_set_si(&b[0], 1, 1)
    for k in range(1, n):
        mpq_set_si(acc, 0, 1)
        for j in range(1, min(k, na - 1) + 1):
            if mpq_sgn(&a[j]) == 0:
                continue
            # c = alpha*j - (k - j)
            mpq_set_si(t, j, 1)
            mpq_mul(c, alpha, t)
            mpq_set_si(t, k - j, 1)
            mpq_sub(c, c, t)
            mpq_mul(c, c, &a[j])
            mpq_mul(c, c, &b[k - j])
            mpq_add(acc, acc, c)
        mpq_set_si(t, k, 1)
        mpq_div(&b[k], acc, t)


def pow_series(a, p, q, Py_ssize_t n):
    cdef Py_ssize_t na = min(len(a), n)
    cdef _Buf A = _load(a, na), B = _Buf(n), W = _Buf(4)
    alpha = Fraction(p, q)
    _set_mpz(mpq_numref(&W.v[0]), alpha.numerator)
    _set_mpz(mpq_denref(&W.v[0]), alpha.denominator)
    _pow_into(B.v, A.v, na, &W.v[0], n, &W.v[1], &W.v[2], &W.v[3])
    return _dump(B, n)


def exp_series(a, Py_ssize_t n):
    cdef Py_ssize_t na = min(len(a), n), k, j
    cdef _Buf A = _load(a, na), B = _Buf(n), W = _Buf(3)
    cdef __mpq_struct* b = B.v
    cdef __mpq_struct* acc = &W.v[0]
    cdef __mpq_struct* c = &W.v[1]
    cdef __mpq_struct* t = &W.v[2]
    if n == 0:
        return []
    mpq_set_si(&b[0], 1, 1)
    for k in range(1, n):
        mpq_set_si(acc, 0, 1)
        for j in range(1, min(k, na - 1) + 1):
            if mpq_sgn(&A.v[j]) == 0:
                continue
            mpq_set_si(t, j, 1)
            mpq_mul(c, t, &A.v[j])
            mpq_mul(c, c, &b[k - j])
            mpq_add(acc, acc, c)
        mpq_set_si(t, k, 1)
        mpq_div(&b[k], acc, t)
    return _dump(B, n)


def log_series(a, Py_ssize_t n):
    cdef Py_ssize_t na = min(len(a), n), k, j
    cdef _Buf A = _load(a, na), B = _Buf(n), W = _Buf(3)
    cdef __mpq_struct* b = B.v
    cdef __mpq_struct* acc = &W.v[0]
    cdef __mpq_struct* c = &W.v[1]
    cdef __mpq_struct* t = &W.v[2]
    for k in range(1, n):
        if k < na:
            mpq_set_si(t, k, 1)
            mpq_mul(acc, t, &A.v[k])
        else:
            mpq_set_si(acc, 0, 1)
        for j in range(1, min(k - 1, na - 1) + 1):
            if mpq_sgn(&A.v[j]) == 0:
                continue
            mpq_set_si(t, k - j, 1)
            mpq_mul(c, t, &A.v[j])
            mpq_mul(c, c, &b[k - j])
            mpq_sub(acc, acc, c)
        mpq_set_si(t, k, 1)
        mpq_div(&b[k], acc, t)
    return _dump(B, n)


def revert(a, Py_ssize_t n):
    cdef Py_ssize_t m = n - 1, k, i
    cdef _Buf B = _Buf(n)
    cdef _Buf A, H, P, Q, W
    cdef __mpq_struct* hk
    cdef __mpq_struct* scratch
    cdef __mpq_struct* swap
    if n <= 1:
        return _dump(B, n)
    # h = (a/r)**-1, truncated to m coefficients
    A = _load(a[1:n], m)
    H = _Buf(m)
    P = _Buf(m)
    Q = _Buf(m)
    W = _Buf(4)
    mpq_set_si(&W.v[0], -1, 1)
    _pow_into(H.v, A.v, m, &W.v[0], m, &W.v[1], &W.v[2], &W.v[3])
    for i in range(m):
        mpq_set(&P.v[i], &H.v[i])
    hk = P.v
    scratch = Q.v
    mpq_set_si(&B.v[1], 1, 1)
    for k in range(2, n):
        _mul_into(scratch, hk, m, H.v, m, m, &W.v[1])
        swap = hk
        hk = scratch
        scratch = swap
        mpq_set_si(&W.v[2], k, 1)
        mpq_div(&B.v[k], &hk[k - 1], &W.v[2])
    return _dump(B, n)
