"""Independent brute-force oracles for the plug-in estimators.

Both walk a refined grid in extended precision and count observations
directly, sharing no code with the package.
"""
import mpmath

MP_DPS = 40


def _info(s, beta):
    if s == 1:
        return mpmath.mpf(1) if beta == 0 else mpmath.mpf(0)
    return (-mpmath.log(s)) ** beta


def oracle_phr(x, alpha, beta, c=1.0, refine=3):
    """Integrate w**c S(w) (-ln S(w))**beta over [min x, max x) on a refined grid."""
    with mpmath.workdps(MP_DPS):
        return _phr(x, alpha, beta, c, refine)


def _phr(x, alpha, beta, c, refine):
    x = sorted(float(v) for v in x)
    n = len(x)
    pts = sorted(set(x))
    grid = []
    for a, b in zip(pts[:-1], pts[1:]):
        grid.extend(a + (b - a) * k / refine for k in range(refine))
    grid.append(pts[-1])
    total = mpmath.mpf(0)
    for a, b in zip(grid[:-1], grid[1:]):
        s = mpmath.mpf(int(sum(v > a for v in x))) / n
        cell = (mpmath.mpf(b) ** (c + 1) - mpmath.mpf(a) ** (c + 1)) / (c + 1)
        total += cell * s * _info(s, beta)
    return float(mpmath.mpf(alpha) ** beta * total / mpmath.gamma(beta + 1))


def oracle_two_sample(x, y, beta, c=1.0, refine=3):
    with mpmath.workdps(MP_DPS):
        return _two_sample(x, y, beta, c, refine)


def _two_sample(x, y, beta, c, refine):
    n, m = len(x), len(y)
    pts = sorted(set([0.0, *map(float, x), *map(float, y)]))
    grid = []
    for a, b in zip(pts[:-1], pts[1:]):
        grid.extend(a + (b - a) * k / refine for k in range(refine))
    grid.append(pts[-1])
    total = mpmath.mpf(0)
    for a, b in zip(grid[:-1], grid[1:]):
        sx = mpmath.mpf(int(sum(v > a for v in x))) / n
        sy = mpmath.mpf(int(sum(v > a for v in y))) / m
        if sx == 0 or sy == 0:
            continue
        cell = (mpmath.mpf(b) ** (c + 1) - mpmath.mpf(a) ** (c + 1)) / (c + 1)
        total += cell * sx * _info(sy, beta)
    return float(total / mpmath.gamma(beta + 1))
