"""Pure-Python univariate integer kernels.

Polynomials are lists of ints, constant term first. ``_kernels.pyx`` mirrors
this module function for function; ``ecad.kernels`` picks one at import.
"""


def eval_hom(coeffs, num, den):
    """Return den**d * f(num/den) as an exact integer (d = len(coeffs) - 1)."""
    n = len(coeffs)
    if n == 0:
        return 0
    acc = coeffs[n - 1]
    dpow = 1
    for i in range(n - 2, -1, -1):
        dpow *= den
        acc = acc * num + coeffs[i] * dpow
    return acc


def sign_at(coeffs, num, den):
    v = eval_hom(coeffs, num, den)
    return (v > 0) - (v < 0)


def sign_variations(coeffs):
    count = 0
    last = 0
    for c in coeffs:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def taylor_shift1(coeffs):
    """Coefficients of f(x + 1)."""
    a = list(coeffs)
    n = len(a) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] += a[j + 1]
    return a


def halve(coeffs):
    """Coefficients of 2**d * f(x / 2)."""
    n = len(coeffs) - 1
    return [c << (n - i) for i, c in enumerate(coeffs)]


def descartes_01(coeffs):
    """Sign variations of (x+1)**d f(1/(x+1)); bounds the roots in (0, 1)."""
    return sign_variations(taylor_shift1(coeffs[::-1]))
