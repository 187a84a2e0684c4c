"""Polynomials in q as ascending coefficient tuples; () is zero."""


def ptrim(a):
    a = tuple(a)
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    return ptrim(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))


def pneg(a):
    return tuple(-x for x in a)


def psub(a, b):
    return padd(a, pneg(b))


def pshift(a, k):
    """Multiply by q**k."""
    return ((0,) * k + tuple(a)) if a else ()


def pscale(a, c):
    return ptrim(tuple(c * x for x in a)) if c else ()


def pdeg(a):
    return len(a) - 1


def pcoeff(a, k):
    return a[k] if 0 <= k < len(a) else 0


ZERO = ()
ONE = (1,)
