"""Pure-Python exact predicate kernels on integer coordinates.

Every function takes points as tuples of Python ints and returns the sign
(-1, 0, 1) of the corresponding determinant. Python ints never overflow, so
these are exact for any input magnitude.
"""


def _sign(x):
    return (x > 0) - (x < 0)


def orient2d(a, b, c):
    """Sign of det[b - a, c - a]; positive when a, b, c turn counter-clockwise."""
    return _sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def incircle(a, b, c, d):
    """Sign of the lifted 3x3 determinant; positive when d is inside the
    circle through a, b, c and a, b, c are counter-clockwise."""
    adx = a[0] - d[0]
    ady = a[1] - d[1]
    bdx = b[0] - d[0]
    bdy = b[1] - d[1]
    cdx = c[0] - d[0]
    cdy = c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdx * cdy - cdx * bdy)
           + blift * (cdx * ady - adx * cdy)
           + clift * (adx * bdy - bdx * ady))
    return _sign(det)


def orient3d(a, b, c, d):
    """Sign of det[b - a, c - a, d - a]; positive for a right-handed tetrahedron."""
    bx = b[0] - a[0]
    by = b[1] - a[1]
    bz = b[2] - a[2]
    cx = c[0] - a[0]
    cy = c[1] - a[1]
    cz = c[2] - a[2]
    dx = d[0] - a[0]
    dy = d[1] - a[1]
    dz = d[2] - a[2]
    det = (bx * (cy * dz - cz * dy)
           - by * (cx * dz - cz * dx)
           + bz * (cx * dy - cy * dx))
    return _sign(det)


def insphere(a, b, c, d, e):
    """Sign of the lifted 4x4 determinant.

    Positive when e is inside the sphere through a, b, c, d and
    ``orient3d(a, b, c, d)`` is positive; the caller normalises orientation.
    """
    rows = []
    for p in (a, b, c, d):
        x = p[0] - e[0]
        y = p[1] - e[1]
        z = p[2] - e[2]
        rows.append((x, y, z, x * x + y * y + z * z))
    (ax, ay, az, al), (bx, by, bz, bl), (cx, cy, cz, cl), (dx, dy, dz, dl) = rows
    ab = ax * by - bx * ay
    bc = bx * cy - cx * by
    cd = cx * dy - dx * cy
    da = dx * ay - ax * dy
    ac = ax * cy - cx * ay
    bd = bx * dy - dx * by
    abc = az * bc - bz * ac + cz * ab
    bcd = bz * cd - cz * bd + dz * bc
    cda = cz * da + dz * ac + az * cd
    dab = dz * ab + az * bd + bz * da
    det = (dl * abc - cl * dab) + (bl * cda - al * bcd)
    # this cofactor layout is negative for "inside" with a positive base
    return -_sign(det)
