"""Sparse exact linear algebra over the rationals.

Rows are dicts column -> coefficient.  Coefficients are gmpy2.mpq when
available (it ships with the polynomial ground types), plain Fractions
otherwise; both are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = Fraction


def rational_nullspace(rows: List[Dict[int, Fraction]], ncols: int):
    """Basis of the nullspace of a sparse rational matrix.

    Returns a list of dense Fraction vectors.  Reduction keeps rows sparse
    and fully back-substitutes, so the pivot structure is an actual RREF.
    """
    pivots: Dict[int, Dict[int, object]] = {}  # pivot col -> reduced row
    for raw in rows:
        row = {c: _mpq(v.numerator, v.denominator) if isinstance(v, Fraction) else _mpq(v)
               for c, v in raw.items() if v}
        row = _reduce(row, pivots)
        if not row:
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        # eliminate the new pivot column from the existing pivot rows
        for pcol, prow in pivots.items():
            if col in prow:
                factor = prow.pop(col)
                for c, v in row.items():
                    if c == col:
                        continue
                    nv = prow.get(c, 0) - factor * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[col] = row
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pcol, prow in pivots.items():
            coeff = prow.get(fc)
            if coeff:
                vec[pcol] = -Fraction(coeff.numerator, coeff.denominator)
        basis.append(vec)
    return basis


def _reduce(row, pivots):
    # eliminate every pivot column present, not only the leading one; the
    # inserted row must end up supported on its own pivot and free columns
    while True:
        hit = [c for c in row if c in pivots]
        if not hit:
            return row
        for col in hit:
            prow = pivots[col]
            factor = row.pop(col, None)
            if factor is None:
                continue
            for c, v in prow.items():
                if c == col:
                    continue
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
