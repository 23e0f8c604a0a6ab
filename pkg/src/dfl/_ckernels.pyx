# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact predicates.

Coordinates that fit the per-predicate magnitude limit are evaluated in
128-bit integer arithmetic, which is exact within those limits. Anything
larger is handed to the pure-Python kernels, so results are exact for every
input.
"""
from dfl import _pykernels as _py

cdef extern from *:
    ctypedef long long i128 "__int128"

# largest |coordinate| for which every intermediate product fits in int128
cdef long long ORIENT2D_LIMIT = 1LL << 60
cdef long long ORIENT3D_LIMIT = 1LL << 40
cdef long long INCIRCLE_LIMIT = 1LL << 28
cdef long long INSPHERE_LIMIT = 1LL << 22


cdef inline int _sign(i128 x) nogil:
    return (x > 0) - (x < 0)


cdef inline bint _load(object p, Py_ssize_t n, long long *out, long long limit):
    cdef Py_ssize_t i
    cdef long long v
    for i in range(n):
        try:
            v = p[i]
        except (OverflowError, TypeError):
            return False
        if v >= limit or v <= -limit:
            return False
        out[i] = v
    return True


def orient2d(a, b, c):
    cdef long long pa[2]
    cdef long long pb[2]
    cdef long long pc[2]
    if not (_load(a, 2, pa, ORIENT2D_LIMIT) and _load(b, 2, pb, ORIENT2D_LIMIT)
            and _load(c, 2, pc, ORIENT2D_LIMIT)):
        return _py.orient2d(a, b, c)
    cdef i128 det = (<i128>(pb[0] - pa[0]) * (pc[1] - pa[1])
                     - <i128>(pb[1] - pa[1]) * (pc[0] - pa[0]))
    return _sign(det)


def incircle(a, b, c, d):
    cdef long long pa[2]
    cdef long long pb[2]
    cdef long long pc[2]
    cdef long long pd[2]
    if not (_load(a, 2, pa, INCIRCLE_LIMIT) and _load(b, 2, pb, INCIRCLE_LIMIT)
            and _load(c, 2, pc, INCIRCLE_LIMIT) and _load(d, 2, pd, INCIRCLE_LIMIT)):
        return _py.incircle(a, b, c, d)
    cdef i128 adx = pa[0] - pd[0]
    cdef i128 ady = pa[1] - pd[1]
    cdef i128 bdx = pb[0] - pd[0]
    cdef i128 bdy = pb[1] - pd[1]
    cdef i128 cdx = pc[0] - pd[0]
    cdef i128 cdy = pc[1] - pd[1]
    cdef i128 alift = adx * adx + ady * ady
    cdef i128 blift = bdx * bdx + bdy * bdy
    cdef i128 clift = cdx * cdx + cdy * cdy
    cdef i128 det = (alift * (bdx * cdy - cdx * bdy)
                     + blift * (cdx * ady - adx * cdy)
                     + clift * (adx * bdy - bdx * ady))
    return _sign(det)


def orient3d(a, b, c, d):
    cdef long long pa[3]
    cdef long long pb[3]
    cdef long long pc[3]
    cdef long long pd[3]
    if not (_load(a, 3, pa, ORIENT3D_LIMIT) and _load(b, 3, pb, ORIENT3D_LIMIT)
            and _load(c, 3, pc, ORIENT3D_LIMIT) and _load(d, 3, pd, ORIENT3D_LIMIT)):
        return _py.orient3d(a, b, c, d)
    cdef i128 bx = pb[0] - pa[0]
    cdef i128 by = pb[1] - pa[1]
    cdef i128 bz = pb[2] - pa[2]
    cdef i128 cx = pc[0] - pa[0]
    cdef i128 cy = pc[1] - pa[1]
    cdef i128 cz = pc[2] - pa[2]
    cdef i128 dx = pd[0] - pa[0]
    cdef i128 dy = pd[1] - pa[1]
    cdef i128 dz = pd[2] - pa[2]
    cdef i128 det = (bx * (cy * dz - cz * dy)
                     - by * (cx * dz - cz * dx)
                     + bz * (cx * dy - cy * dx))
    return _sign(det)


def insphere(a, b, c, d, e):
    cdef long long p[4][3]
    cdef long long pe[3]
    cdef i128 r[4][4]
    cdef int i
    if not (_load(a, 3, p[0], INSPHERE_LIMIT) and _load(b, 3, p[1], INSPHERE_LIMIT)
            and _load(c, 3, p[2], INSPHERE_LIMIT) and _load(d, 3, p[3], INSPHERE_LIMIT)
            and _load(e, 3, pe, INSPHERE_LIMIT)):
        return _py.insphere(a, b, c, d, e)
    for i in range(4):
        r[i][0] = p[i][0] - pe[0]
        r[i][1] = p[i][1] - pe[1]
        r[i][2] = p[i][2] - pe[2]
        r[i][3] = r[i][0] * r[i][0] + r[i][1] * r[i][1] + r[i][2] * r[i][2]
    cdef i128 ab = r[0][0] * r[1][1] - r[1][0] * r[0][1]
    cdef i128 bc = r[1][0] * r[2][1] - r[2][0] * r[1][1]
    cdef i128 cd = r[2][0] * r[3][1] - r[3][0] * r[2][1]
    cdef i128 da = r[3][0] * r[0][1] - r[0][0] * r[3][1]
    cdef i128 ac = r[0][0] * r[2][1] - r[2][0] * r[0][1]
    cdef i128 bd = r[1][0] * r[3][1] - r[3][0] * r[1][1]
    cdef i128 abc = r[0][2] * bc - r[1][2] * ac + r[2][2] * ab
    cdef i128 bcd = r[1][2] * cd - r[2][2] * bd + r[3][2] * bc
    cdef i128 cda = r[2][2] * da + r[3][2] * ac + r[0][2] * cd
    cdef i128 dab = r[3][2] * ab + r[0][2] * bd + r[1][2] * da
    cdef i128 det = (r[3][3] * abc - r[2][3] * dab) + (r[1][3] * cda - r[0][3] * bcd)
    return -_sign(det)
