"""Sparse exact linear algebra over Q: incremental echelon and kernels.

Rows are homogeneous equations (dict column -> Fraction).  Columns are
eliminated in a caller-supplied priority order; putting the offset
unknowns first means no surviving pivot row on the remaining columns
mentions an offset, so the kernel restricted to those columns is exactly
the projection of the full solution space.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)


class KernelSolver:
    def __init__(self, priority):
        self.priority = priority
        self.pivots = {}  # pivot column -> normalized row (row[pivot] == 1)
        self._clean = None

    def add_row(self, row):
        row = {k: v for k, v in row.items() if v}
        while row:
            piv = min(row, key=self.priority)
            hit = self.pivots.get(piv)
            if hit is None:
                inv = 1 / row[piv]
                self.pivots[piv] = {k: v * inv for k, v in row.items()}
                self._clean = None
                return True
            c = row.pop(piv)
            for k, v in hit.items():
                if k == piv:
                    continue
                newv = row.get(k, _ZERO) - c * v
                if newv:
                    row[k] = newv
                else:
                    row.pop(k, None)
        return False

    def rank(self):
        return len(self.pivots)

    def pivot_columns(self):
        return set(self.pivots)

    def _cleaned(self):
        """Fully reduced pivot rows: entries on the pivot and free columns."""
        if self._clean is not None:
            return self._clean
        clean = {}
        for piv in sorted(self.pivots, key=self.priority, reverse=True):
            row = dict(self.pivots[piv])
            for k in [k for k in row if k != piv and k in self.pivots]:
                v = row.pop(k)
                for c, a in clean[k].items():
                    if c == k:
                        continue
                    newv = row.get(c, _ZERO) + v * a
                    if newv:
                        row[c] = newv
                    else:
                        row.pop(c, None)
            clean[piv] = row
        self._clean = clean
        return clean

    def kernel_on(self, cols):
        """Kernel basis vectors restricted to ``cols``, one per free column.

        Valid as a basis of the projected solution space provided every
        column outside ``cols`` precedes ``cols`` in the priority order.
        """
        clean = self._cleaned()
        out = []
        colset = set(cols)
        pivot_rows = [
            (p, r) for p, r in clean.items() if p in colset
        ]
        for free in cols:
            if free in self.pivots:
                continue
            vec = {free: Fraction(1)}
            for p, r in pivot_rows:
                a = r.get(free)
                if a:
                    vec[p] = -a
            out.append(vec)
        return out
