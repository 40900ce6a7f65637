"""
Exact linear algebra over the rationals.

Thin helpers around sympy's DomainMatrix over QQ. Matrices act on column
vectors; subspaces are stored as lists of rows in reduced echelon form.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

Scalar = Union[int, str, Fraction, Rational]
Row = List  # list of QQ elements

ZERO = QQ(0)
ONE = QQ(1)


def qq(value: Scalar):
    """
    Converts an int, "p/q" string, Fraction or sympy Rational into a QQ element.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            parsed = Rational(value.strip())
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        if not isinstance(parsed, Rational):
            raise ValueError(f"not a rational number: {value!r}")
        return QQ.from_sympy(parsed)
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def fmt(value) -> str:
    num, den = QQ.numer(value), QQ.denom(value)
    return str(num) if den == 1 else f"{num}/{den}"


def is_integral(value) -> bool:
    return QQ.denom(value) == 1


def as_int(value) -> int:
    if not is_integral(value):
        raise ValueError(f"{fmt(value)} is not an integer")
    return int(QQ.numer(value))


def zeros(nrows: int, ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZERO] * ncols for _ in range(nrows)], (nrows, ncols), QQ)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix(
        [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], (n, n), QQ
    )


def sparse(dod: Dict[int, Dict[int, object]], shape: Tuple[int, int]) -> DomainMatrix:
    """
    Builds a sparse matrix from a {row: {col: value}} mapping.
    """
    clean = {i: {j: v for j, v in row.items() if v} for i, row in dod.items()}
    clean = {i: row for i, row in clean.items() if row}
    return DomainMatrix(clean, shape, QQ)


def is_zero(m: DomainMatrix) -> bool:
    if 0 in m.shape:
        return True
    return m.is_zero_matrix


def rref(m: DomainMatrix) -> Tuple[List[Row], Tuple[int, ...]]:
    """
    Reduced row echelon form: returns the nonzero rows and the pivot columns.

    Pivots are leftmost with leading entry 1.
    """
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return [], ()
    reduced, pivots = m.rref()
    rows = reduced.to_list()
    return [rows[i] for i in range(len(pivots))], tuple(pivots)


def rank(m: DomainMatrix) -> int:
    if 0 in m.shape:
        return 0
    return m.rank()


def _identity_rows(n: int) -> List[Row]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def nullspace(m: DomainMatrix) -> List[Row]:
    """
    Basis of {x : m x = 0}, one row per basis vector.
    """
    nrows, ncols = m.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return _identity_rows(ncols)
    return m.nullspace().to_list()


def sparse_nullspace(
    dod: Dict[int, Dict[int, object]], nrows: int, ncols: int
) -> List[Row]:
    """
    Null space of a sparse system; rows of the result are dense lists.
    """
    if ncols == 0:
        return []
    if nrows == 0 or not any(dod.values()):
        return _identity_rows(ncols)
    return sparse(dod, (nrows, ncols)).nullspace().to_list()


def row_basis(rows: Sequence[Row], ncols: int) -> List[Row]:
    """
    Canonical basis (RREF rows) of the span of the given rows.
    """
    if not rows:
        return []
    return rref(DomainMatrix([list(r) for r in rows], (len(rows), ncols), QQ))[0]


def primitive(row: Row) -> List[int]:
    """
    Scales a rational row to a primitive integer row with positive leading entry.
    """
    den = 1
    for x in row:
        den = lcm(den, int(QQ.denom(x)))
    ints = [int(QQ.numer(x * den)) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def reduce_against(vec: Row, basis: Sequence[Row], pivots: Sequence[int]) -> Row:
    """
    Reduces vec modulo the span of an RREF basis; the result vanishes on pivots.
    """
    out = list(vec)
    for row, p in zip(basis, pivots):
        c = out[p]
        if c:
            out = [a - c * b for a, b in zip(out, row)]
    return out


def pivots_of(basis: Sequence[Row]) -> List[int]:
    return [next(j for j, x in enumerate(row) if x) for row in basis]


def in_span(vec: Row, basis: Sequence[Row]) -> bool:
    """
    Membership test against an RREF basis.
    """
    return not any(reduce_against(vec, basis, pivots_of(basis)))


def matvec(m: DomainMatrix, vec: Row) -> Row:
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return [ZERO] * nrows
    column = DomainMatrix([[x] for x in vec], (ncols, 1), QQ)
    return [row[0] for row in (m.to_dense() * column).to_list()]


def columns(m: DomainMatrix) -> List[Row]:
    return m.transpose().to_list()


def from_columns(cols: Sequence[Row], nrows: int) -> DomainMatrix:
    if not cols:
        return zeros(nrows, 0)
    return DomainMatrix([list(c) for c in cols], (len(cols), nrows), QQ).transpose()


def trace(m: DomainMatrix):
    rows = m.to_list()
    return sum((rows[i][i] for i in range(len(rows))), ZERO)


def direct_sum(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    (ra, ca), (rb, cb) = a.shape, b.shape
    top = a.hstack(zeros(ra, cb)) if cb else a
    bottom = zeros(rb, ca).hstack(b) if ca else b
    if ra == 0:
        return bottom
    if rb == 0:
        return top
    return top.vstack(bottom)


def solve_in_rows(basis: Sequence[Row], vec: Row) -> Optional[Row]:
    """
    Coefficients c with Σ c_k basis[k] = vec for linearly independent rows, or None.
    """
    k = len(basis)
    if k == 0:
        return [] if not any(vec) else None
    n = len(vec)
    aug = [[basis[j][i] for j in range(k)] + [vec[i]] for i in range(n)]
    rows, pivots = rref(DomainMatrix(aug, (n, k + 1), QQ))
    if k in pivots:
        return None
    coeffs = [ZERO] * k
    for r, p in enumerate(pivots):
        coeffs[p] = rows[r][k]
    return coeffs
