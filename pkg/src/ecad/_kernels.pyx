# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled univariate integer kernels; see _kernels_py for the contract."""


def eval_hom(list coeffs, object num, object den):
    cdef Py_ssize_t n = len(coeffs)
    cdef Py_ssize_t i
    cdef object acc, dpow
    if n == 0:
        return 0
    acc = coeffs[n - 1]
    dpow = 1
    for i in range(n - 2, -1, -1):
        dpow = dpow * den
        acc = acc * num + coeffs[i] * dpow
    return acc


def sign_at(list coeffs, object num, object den):
    v = eval_hom(coeffs, num, den)
    return (v > 0) - (v < 0)


def sign_variations(list coeffs):
    cdef int count = 0
    cdef int last = 0
    cdef int s
    for c in coeffs:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


def taylor_shift1(list coeffs):
    cdef list a = list(coeffs)
    cdef Py_ssize_t n = len(a) - 1
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] = a[j] + a[j + 1]
    return a


def halve(list coeffs):
    cdef Py_ssize_t n = len(coeffs) - 1
    cdef Py_ssize_t i
    return [coeffs[i] << (n - i) for i in range(n + 1)]


def descartes_01(list coeffs):
    return sign_variations(taylor_shift1(coeffs[::-1]))
