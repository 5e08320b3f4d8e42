"""
Dense linear algebra over a FiniteField, on raw packed-int entries.
"""

from __future__ import annotations


def rref(F, rows, ncols=None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        s = inv(pr[c])
        if s != 1:
            pr = rows[r] = [mul(x, s) for x in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = neg(rows[i][c])
                row = rows[i]
                rows[i] = [add(x, mul(f, y)) if y else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(F, rows):
    return len(rref(F, rows)[0])


def kernel(F, rows, ncols):
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def solve(F, rows, rhs, ncols):
    """One solution x of M x = rhs (free variables set to 0), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def det(F, mat):
    n = len(mat)
    a = [list(r) for r in mat]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = F.neg(d)
        d = F.mul(d, a[c][c])
        s = F.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                f = F.neg(F.mul(a[i][c], s))
                a[i] = [F.add(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
    return d


class Echelon:
    """Incrementally grown echelon basis, for span-membership tests."""

    def __init__(self, F, ncols):
        self.F = F
        self.ncols = ncols
        self.rows = {}  # pivot column -> row normalised to 1 at the pivot

    def reduce(self, row):
        F = self.F
        row = list(row)
        for c in range(self.ncols):
            x = row[c]
            if x and c in self.rows:
                f = F.neg(x)
                prow = self.rows[c]
                for j in range(c, self.ncols):
                    if prow[j]:
                        row[j] = F.add(row[j], F.mul(f, prow[j]))
        return row

    def add(self, row):
        row = self.reduce(row)
        for c in range(self.ncols):
            if row[c]:
                s = self.F.inv(row[c])
                self.rows[c] = [self.F.mul(x, s) for x in row]
                return True
        return False

    def contains(self, row):
        return not any(self.reduce(row))

    def __len__(self):
        return len(self.rows)
