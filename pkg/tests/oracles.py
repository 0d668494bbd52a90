"""Independent brute-force oracles. Nothing here imports kummerkit."""

from itertools import product


def _irreducible_quadratic(p):
    # monic t^2 + a t + b with no root in F_p; chosen independently of the
    # library's t^2 - c model
    for a in range(p):
        for b in range(1, p):
            if all((t * t + a * t + b) % p for t in range(p)):
                return a, b
    raise AssertionError("no irreducible quadratic")


class GFp2:
    """F_{p^2} as pairs (x, y) = x + y t with t^2 = -a t - b."""

    def __init__(self, p):
        self.p = p
        self.a, self.b = _irreducible_quadratic(p)

    def elements(self):
        return product(range(self.p), repeat=2)

    def add(self, u, v):
        return ((u[0] + v[0]) % self.p, (u[1] + v[1]) % self.p)

    def mul(self, u, v):
        p, a, b = self.p, self.a, self.b
        x0 = u[0] * v[0]
        x1 = u[0] * v[1] + u[1] * v[0]
        x2 = u[1] * v[1]
        return ((x0 - b * x2) % p, (x1 - a * x2) % p)

    def embed(self, c):
        return (c % self.p, 0)


def count_points_fp(p, coeffs):
    """#C(F_p) of y^2 = f(x) by counting every (x, y) pair."""
    def f(x):
        return sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p
    affine = 0
    for x in range(p):
        fx = f(x)
        affine += sum(1 for y in range(p) if (y * y - fx) % p == 0)
    deg = max(i for i, c in enumerate(coeffs) if c % p)
    if deg == 5:
        inf = 1
    else:
        lead = coeffs[deg] % p
        inf = 2 if any((y * y - lead) % p == 0 for y in range(1, p)) else 0
    return affine + inf


def count_points_fp2(p, coeffs):
    """#C(F_{p^2}) by tabulating squares over an independent model of F_{p^2}."""
    K = GFp2(p)
    squares = {}
    for y in K.elements():
        s = K.mul(y, y)
        squares[s] = squares.get(s, 0) + 1
    affine = 0
    for x in K.elements():
        acc = (0, 0)
        for c in reversed(coeffs):
            acc = K.add(K.mul(acc, x), K.embed(c))
        affine += squares.get(acc, 0)
    deg = max(i for i, c in enumerate(coeffs) if c % p)
    return affine + (1 if deg == 5 else 2)


def humbert_scan_brute(delta, d_max):
    """All (case, d, k) with d <= d_max whose formula gives delta."""
    forms = {
        "I": lambda d, k: 8 * d ** 2 + 9 - 2 * k,
        "II": lambda d, k: 8 * d * (d + 1) + 9 - 2 * k,
        "III": lambda d, k: 8 * d ** 2 + 8 - 2 * k,
        "IV": lambda d, k: 8 * d * (d + 1) + 12 - 2 * k,
    }
    return sorted((case, d, k) for case, fn in forms.items()
                  for d in range(1, d_max + 1) for k in (4, 6, 8, 10, 12)
                  if fn(d, k) == delta)


def partition_count(n):
    """Number of partitions of n, by the standard coin-change recurrence."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def det3_mod(m, p):
    (a, b, c), (d, e, f), (g, h, i) = m
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p


def conic_recheck(p, coeffs, points, line):
    """Re-verify a conic from raw integers: incidences, tangency, irreducibility.

    coeffs are for x0^2, x0x1, x0x2, x1^2, x1x2, x2^2.
    """
    a00, a01, a02, a11, a12, a22 = coeffs

    def Q(x):
        x0, x1, x2 = x
        return (a00 * x0 * x0 + a01 * x0 * x1 + a02 * x0 * x2
                + a11 * x1 * x1 + a12 * x1 * x2 + a22 * x2 * x2) % p

    incid = all(Q(P) == 0 for P in points)
    # a point on the line count: tangent iff exactly one projective point of
    # the line lies on the conic (p odd, conic not containing the line)
    la, lb, lc = line
    line_pts = [(x0, x1, x2) for x0, x1, x2 in _proj_points(p)
                if (la * x0 + lb * x1 + lc * x2) % p == 0]
    on = [P for P in line_pts if Q(P) == 0]
    tangent = len(on) == 1
    inv2 = pow(2, -1, p)
    m = [[2 * a00 * inv2, a01 * inv2, a02 * inv2],
         [a01 * inv2, 2 * a11 * inv2, a12 * inv2],
         [a02 * inv2, a12 * inv2, 2 * a22 * inv2]]
    irreducible = det3_mod(m, p) != 0
    return incid, tangent, irreducible


def _proj_points(p):
    for a in range(p):
        for b in range(p):
            yield (1, a, b)
    for b in range(p):
        yield (0, 1, b)
    yield (0, 0, 1)


def rank_mod_p(rows, p):
    m = [[x % p for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def conic_eval_rows(points, p):
    """Rows (x0^2, x0x1, x0x2, x1^2, x1x2, x2^2) evaluated at each point."""
    return [[x0 * x0, x0 * x1, x0 * x2, x1 * x1, x1 * x2, x2 * x2] for x0, x1, x2 in points]
