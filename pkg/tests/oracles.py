"""Brute-force reference computations used to freeze expected values.

Everything here is deliberately naive and shares no code with the package.
"""
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import gcd


def det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        out *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return sign * out


def brute_facets(vertices):
    """Facet inequalities (a, b) with a.x + b >= 0 of a full-dimensional polytope."""
    d = len(vertices[0])
    found = set()
    for S in combinations(vertices, d):
        # normal of the hyperplane through S via cofactors
        rows = [list(v) + [1] for v in S]
        normal = []
        for j in range(d + 1):
            minor = [r[:j] + r[j + 1:] for r in rows]
            normal.append((-1) ** j * det(minor))
        if all(x == 0 for x in normal[:d]):
            continue
        vals = [sum(n * x for n, x in zip(normal, list(v) + [1])) for v in vertices]
        if all(v >= 0 for v in vals):
            f = normal
        elif all(v <= 0 for v in vals):
            f = [-x for x in normal]
        else:
            continue
        g = 0
        for x in f:
            g = gcd(g, int(x))
        found.add(tuple(int(x) // g for x in f))
    return sorted(found)


def box_points(vertices, m, strict=False):
    """Lattice points of m*P for full-dimensional P by a bounding-box scan."""
    facets = brute_facets(vertices)
    d = len(vertices[0])
    lo = [m * min(v[i] for v in vertices) for i in range(d)]
    hi = [m * max(v[i] for v in vertices) for i in range(d)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        ok = True
        for f in facets:
            val = sum(a * b for a, b in zip(f[:d], x)) + m * f[d]
            if val < 0 or (strict and val == 0):
                ok = False
                break
        if ok:
            out.append(x)
    return out


def magic_squares(m):
    """3x3 nonnegative integer matrices with all line sums m."""
    out = []
    for a, b, d, e in product(range(m + 1), repeat=4):
        c, f = m - a - b, m - d - e
        g, h = m - a - d, m - b - e
        i = m - g - h
        M = (a, b, c, d, e, f, g, h, i)
        if min(M) >= 0 and c + f + i == m:
            out.append(M)
    return out


def series_numerator(counts, exponent):
    """Multiply sum counts[m] t^m by (1 - t) exponent times, one factor at a time."""
    s = list(counts)
    for _ in range(exponent):
        s = [s[0]] + [s[i] - s[i - 1] for i in range(1, len(s))]
    return s


def determinantal_divisors(A):
    """Elementary divisors d_k / d_(k-1) from gcds of k x k minors."""
    m, n = len(A), len(A[0])
    prev = 1
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(det([[A[r][c] for c in cols] for r in rows])))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def lower_hull_bruteforce(points, heights):
    """Cells of the regular subdivision via every (d+1)-subset's lifted hyperplane."""
    d = len(points[0])
    lifted = [list(map(Fraction, p)) + [Fraction(h)] for p, h in zip(points, heights)]
    cells = set()
    for S in combinations(range(len(points)), d + 1):
        base = [points[i] for i in S]
        if det([[Fraction(a) - Fraction(b) for a, b in zip(p, base[0])] for p in base[1:]]) == 0:
            continue
        # height of the plane through S at each point: solve for (c, c0) with c.x + c0 = h
        A = [list(map(Fraction, points[i])) + [Fraction(1)] for i in S]
        rhs = [lifted[i][-1] for i in S]
        coef = _solve(A, rhs)
        plane = [sum(c * x for c, x in zip(coef[:d], p)) + coef[d] for p in points]
        if all(lifted[i][-1] >= plane[i] for i in range(len(points))):
            cells.add(tuple(i for i in range(len(points)) if lifted[i][-1] == plane[i]))
    return sorted(cells)


def _solve(A, b):
    n = len(A)
    M = [row[:] + [bi] for row, bi in zip(A, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


# M-sequences -----------------------------------------------------------------


def _monomials(nvars, degree):
    """Exponent vectors of the given degree in lexicographic order, largest first."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def _divisors_one_down(e):
    return [e[:i] + (e[i] - 1,) + e[i + 1:] for i in range(len(e)) if e[i] > 0]


def lex_segment_oracle(v):
    """Standard monomials of the lex ideal: the lex-smallest v_i monomials per degree."""
    if not v or v[0] != 1 or any(x < 0 for x in v):
        return False
    if len(v) == 1:
        return True
    n = v[1]
    prev = {tuple([0] * n)}
    for i in range(1, len(v)):
        mons = _monomials(n, i)
        if v[i] > len(mons):
            return False
        chosen = set(mons[len(mons) - v[i]:]) if v[i] else set()
        if any(dv not in prev for e in chosen for dv in _divisors_one_down(e)):
            return False
        prev = chosen
    return True


def order_ideal_exists(v):
    """Exhaustive search for an order ideal of monomials with Hilbert function v."""
    if not v or v[0] != 1 or any(x < 0 for x in v):
        return False
    if len(v) == 1:
        return True
    n = v[1]

    def extend(i, prev):
        if i == len(v):
            return True
        allowed = [e for e in _monomials(n, i) if all(dv in prev for dv in _divisors_one_down(e))]
        if v[i] > len(allowed):
            return False
        for chosen in combinations(allowed, v[i]):
            if extend(i + 1, set(chosen)):
                return True
        return False

    return extend(1, {tuple([0] * n)})


def irreducibles(points_by_degree):
    """Irreducible elements of a graded monoid given its elements degree by degree.

    ``points_by_degree[k]`` lists the elements of degree k (k >= 1) as tuples;
    an element is reducible when it is a sum of two lower-degree elements.
    """
    elements = set()
    out = []
    for k in sorted(points_by_degree):
        for x in points_by_degree[k]:
            if not any(tuple(a - b for a, b in zip(x, y)) in elements for y in elements):
                out.append(x)
        elements.update(points_by_degree[k])
    return sorted(out)


def cone_points(vertices, top):
    """Lattice points (x, k) of the cone over a full-dimensional polytope, 1 <= k <= top."""
    return {k: [tuple(x) + (k,) for x in box_points(vertices, k)] for k in range(1, top + 1)}
