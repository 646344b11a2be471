"""Exact rational linear algebra and a phase-one simplex (Bland's rule).

Matrices are lists of rows. Entries may be ints or Fractions; results are
Fractions. Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

Matrix = list[list[Fraction]]


def to_fractions(a: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_fractions(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                ri = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], ri)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1]) if a else 0


def nullspace(a: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column."""
    if not a:
        if ncols is None:
            raise ValueError("nullspace of an empty matrix needs ncols")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    cols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Unique solution of a square system, or None if singular."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def _integer_rows(c: Sequence[Sequence], d: Sequence) -> tuple[list[list[int]], list[int]]:
    """Scale each row of [c | d] to integers with a nonnegative right-hand side."""
    rows, rhs = [], []
    for row, val in zip(c, d):
        ints = list(row) + [val]
        if not all(type(x) is int for x in ints):
            fr = [Fraction(x) for x in ints]
            den = lcm(*(x.denominator for x in fr))
            ints = [int(x * den) for x in fr]
        if ints[-1] < 0:
            ints = [-x for x in ints]
        rows.append(ints[:-1])
        rhs.append(ints[-1])
    return rows, rhs


class _Tableau:
    """Simplex tableau in fraction-free form: true entries are ``t[i][j] / den``.

    Pivoting keeps every entry an integer (each update divides exactly by the
    previous pivot), which is much faster than Fraction arithmetic.
    """

    def __init__(self, rows: list[list[int]], rhs: list[int]):
        m = len(rows)
        self.nvars = len(rows[0]) if rows else 0
        self.m = m
        self.width = self.nvars + m
        # columns: original vars, one artificial per row, rhs
        self.t = [rows[i] + [int(j == i) for j in range(m)] + [rhs[i]] for i in range(m)]
        self.basis = [self.nvars + i for i in range(m)]
        self.den = 1
        # reduced costs of "minimize the sum of artificials"
        cost = [0] * (self.width + 1)
        for i in range(m):
            for j in range(self.nvars):
                cost[j] -= self.t[i][j]
            cost[self.width] -= self.t[i][self.width]
        self.cost = cost

    def pivot(self, r: int, c: int) -> None:
        t, den = self.t, self.den
        p = t[r][c]
        if p <= 0:
            raise ArithmeticError("fraction-free simplex needs a positive pivot")
        row = t[r]
        nz = [(j, x) for j, x in enumerate(row) if x != 0]
        for i in range(self.m):
            if i == r:
                continue
            ti = t[i]
            f = ti[c]
            if f == 0:
                t[i] = [x * p // den for x in ti] if p != den else ti
                continue
            new = [x * p for x in ti]
            for j, x in nz:
                new[j] -= f * x
            t[i] = [x // den for x in new]
        f = self.cost[c]
        new = [x * p for x in self.cost]
        if f != 0:
            for j, x in nz:
                new[j] -= f * x
        self.cost = [x // den for x in new]
        self.den = p
        self.basis[r] = c

    def run_phase_one(self) -> bool:
        w = self.width
        while True:
            enter = next((j for j in range(w) if self.cost[j] < 0), None)
            if enter is None:
                break
            leave = -1
            best_num = best_den = 0
            for i in range(self.m):
                coef = self.t[i][enter]
                if coef > 0:
                    num = self.t[i][w]
                    # compare num/coef with best_num/best_den
                    if leave < 0:
                        better = True
                    else:
                        lhs, rhs_ = num * best_den, best_num * coef
                        better = lhs < rhs_ or (lhs == rhs_ and self.basis[i] < self.basis[leave])
                    if better:
                        leave, best_num, best_den = i, num, coef
            if leave < 0:
                # phase one is bounded below by 0
                raise ArithmeticError("phase-one simplex found an unbounded direction")
            self.pivot(leave, enter)
        return self.cost[w] == 0

    def value(self, i: int) -> Fraction:
        return Fraction(self.t[i][self.width], self.den)


def feasible_point(c: Sequence[Sequence], d: Sequence) -> Optional[list[Fraction]]:
    """A point of {x >= 0 : c x = d}, or None if empty.

    Phase one of the simplex method with Bland's rule, so it always
    terminates; ``c`` may have no rows (then x = 0 is returned).
    """
    nvars = len(c[0]) if c else 0
    if not c:
        return [Fraction(0)] * nvars
    tab = _Tableau(*_integer_rows(c, d))
    if not tab.run_phase_one():
        return None
    x = [Fraction(0)] * nvars
    for i, var in enumerate(tab.basis):
        if var < nvars:
            x[var] = tab.value(i)
    return x


def basic_feasible_solution(c: Sequence[Sequence], d: Sequence) -> Optional[tuple[list[Fraction], list[int]]]:
    """A vertex of {x >= 0 : c x = d} together with its basis.

    ``c`` must have full row rank. Artificial variables left in the basis at
    level zero are pivoted out on any nonzero original column.
    """
    nvars = len(c[0])
    tab = _Tableau(*_integer_rows(c, d))
    if not tab.run_phase_one():
        return None
    for i in range(tab.m):
        if tab.basis[i] >= nvars:
            col = next((j for j in range(nvars) if tab.t[i][j] != 0 and j not in tab.basis), None)
            if col is None:
                raise ArithmeticError("constraint matrix is not of full row rank")
            if tab.t[i][col] < 0:
                # the row has value 0, so negating it keeps the system equivalent
                tab.t[i] = [-x for x in tab.t[i]]
            tab.pivot(i, col)
    x = [Fraction(0)] * nvars
    for i, var in enumerate(tab.basis):
        x[var] = tab.value(i)
    return x, list(tab.basis)
