# cython: language_level=3
"""Term-level kernels for sparse polynomial arithmetic (compiled twin).

Signature-for-signature compatible with ``_poly_core`` and preferred at
import time when the build produced this module.  Over a prime field the
loops run on C integers: packed exponent keys occupy three 20-bit lanes
(under 2**60) and coefficient products stay under 2**62, so ``long long``
arithmetic is exact.  The rational case (``p == 0``) keeps Python object
arithmetic because coefficients may be Fractions.
"""


def add_terms(dict a, dict b, long long p):
    cdef dict out = dict(a)
    cdef long long s
    if p:
        for k, c in b.items():
            s = <long long> out.get(k, 0) + <long long> c
            if s >= p:
                s -= p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    else:
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def sub_terms(dict a, dict b, long long p):
    cdef dict out = dict(a)
    cdef long long s
    if p:
        for k, c in b.items():
            s = <long long> out.get(k, 0) - <long long> c
            if s < 0:
                s += p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    else:
        for k, c in b.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def neg_terms(dict a, long long p):
    if p:
        return {k: p - <long long> c for k, c in a.items()}
    return {k: -c for k, c in a.items()}


def scale_terms(dict a, c, long long p):
    # c is a nonzero field element, so no term can vanish over a prime field
    # or the rationals.
    cdef long long cc
    if p:
        cc = <long long> c
        return {k: (<long long> v * cc) % p for k, v in a.items()}
    return {k: v * c for k, v in a.items()}


def mul_terms(dict a, dict b, long long p):
    cdef dict out = {}
    addmul_into(out, a, b, p, 1)
    return out


def addmul_into(dict acc, dict a, dict b, long long p, int sign):
    """acc += sign * a * b, with sign in {+1, -1}."""
    cdef long long ca, s, k
    if len(a) > len(b):
        a, b = b, a
    if p:
        for ka, ca_obj in a.items():
            ca = <long long> ca_obj
            if sign < 0:
                ca = -ca
            for kb, cb in b.items():
                k = <long long> ka + <long long> kb
                s = (<long long> acc.get(k, 0) + ca * <long long> cb) % p
                if s < 0:
                    s += p
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
    else:
        for ka, ca_obj in a.items():
            cv = -ca_obj if sign < 0 else ca_obj
            for kb, cb in b.items():
                kk = ka + kb
                v = acc.get(kk, 0) + cv * cb
                if v:
                    acc[kk] = v
                else:
                    acc.pop(kk, None)


def scale_into(dict acc, dict a, c, long long p, int sign):
    """acc += sign * c * a for a field scalar c."""
    cdef long long cc, s
    if p:
        cc = <long long> c
        if sign < 0:
            cc = -cc
        for k, v in a.items():
            s = (<long long> acc.get(k, 0) + <long long> v * cc) % p
            if s < 0:
                s += p
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    else:
        cv = -c if sign < 0 else c
        for k, v in a.items():
            w = acc.get(k, 0) + v * cv
            if w:
                acc[k] = w
            else:
                acc.pop(k, None)
