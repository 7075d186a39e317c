"""Exact minor computation and coefficientwise total-positivity certificates.

A matrix of polynomials is *x-totally positive of order r* when every minor
of order <= r has nonnegative coefficients.  Everything here is a statement
about a finite truncation, and reports carry the truncation size so the
certificates stay honest about what was actually checked.

Sequence containers follow the mathematical indexing of tridiagonal
matrices: diagonal s_0, s_1, ..., superdiagonal r_0, r_1, ..., subdiagonal
t_1, t_2, ...; list arguments for t therefore carry an unused placeholder at
index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .polyring import Poly, VarContext, render
from .triangles import COLUMN_WALK, RecurrenceSpec, build_triangle

PolySeq = Sequence[Poly]


class HypothesisError(ValueError):
    """A check's stated hypotheses are violated (as opposed to its
    conclusion failing)."""


@dataclass
class PolyMatrix:
    """Dense rectangular matrix of polynomials sharing one context."""

    ctx: VarContext
    entries: list[list[Poly]]

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def submatrix(self, rows, cols) -> list[list[Poly]]:
        return [[self.entries[r][c] for c in cols] for r in rows]


def hankel(seq: PolySeq, size: int) -> PolyMatrix:
    """Hankel truncation: entry (i, j) = seq[i+j]."""
    if len(seq) < 2 * size - 1:
        raise ValueError(
            f"need {2 * size - 1} sequence entries for a {size}x{size} Hankel block, "
            f"got {len(seq)}"
        )
    ctx = seq[0].ctx
    return PolyMatrix(ctx, [[seq[i + j] for j in range(size)] for i in range(size)])


def tridiag(s: PolySeq, r: PolySeq, t: PolySeq, size: int) -> PolyMatrix:
    """Leading principal block of the tridiagonal matrix J(r, s, t)."""
    ctx = s[0].ctx
    zero = ctx.zero
    m = [[zero] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = s[i]
        if i + 1 < size:
            m[i][i + 1] = r[i]
            m[i + 1][i] = t[i + 1]
    return PolyMatrix(ctx, m)


def jstar(s: PolySeq, r: PolySeq, t: PolySeq, size: int) -> PolyMatrix:
    """Variant with unit superdiagonal and subdiagonal r_(i-1) t_i."""
    ctx = s[0].ctx
    zero = ctx.zero
    m = [[zero] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = s[i]
        if i + 1 < size:
            m[i][i + 1] = ctx.one
            m[i + 1][i] = r[i] * t[i + 1]
    return PolyMatrix(ctx, m)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def _det_cofactor(m: PolyMatrix, rows: tuple, cols: tuple, memo: dict) -> Poly:
    """Cofactor expansion along the last row, memoized on (rows, cols)."""
    if len(rows) == 1:
        return m.entries[rows[0]][cols[0]]
    key = (rows, cols)
    d = memo.get(key)
    if d is not None:
        return d
    rest = rows[:-1]
    last = rows[-1]
    order = len(rows)
    d = m.ctx.zero
    row_entries = m.entries[last]
    for idx in range(order):
        e = row_entries[cols[idx]]
        if not e:
            continue
        sub = _det_cofactor(m, rest, cols[:idx] + cols[idx + 1 :], memo)
        if not sub:
            continue
        p = e * sub
        d = d + p if (order - 1 + idx) % 2 == 0 else d - p
    memo[key] = d
    return d


def _det_bareiss(entries: list[list[Poly]]) -> Poly:
    """Fraction-free elimination; every division is exact."""
    n = len(entries)
    ctx = entries[0][0].ctx
    m = [row[:] for row in entries]
    sign = 1
    prev = ctx.one
    for i in range(n - 1):
        piv = next((r for r in range(i, n) if m[r][i]), None)
        if piv is None:
            return ctx.zero
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                num = m[i][i] * m[r][c] - m[r][i] * m[i][c]
                q = num.exact_div(prev)
                if q is None:  # cannot happen for true matrix data
                    raise ArithmeticError("non-exact division in fraction-free elimination")
                m[r][c] = q
            m[r][i] = ctx.zero
        prev = m[i][i]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def minor(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Poly:
    """Exact determinant of the selected square submatrix."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError(f"minor needs equally many rows and columns, got {rows}/{cols}")
    if len(rows) == 0:
        return m.ctx.one
    if max(rows) >= m.nrows or max(cols) >= m.ncols:
        raise ValueError("row/column index out of range")
    if len(rows) <= 4:
        return _det_cofactor(m, rows, cols, {})
    return _det_bareiss(m.submatrix(rows, cols))


# ---------------------------------------------------------------------------
# total positivity reports
# ---------------------------------------------------------------------------


@dataclass
class TPWitness:
    """Smallest (order, rows, cols) minor with a negative coefficient."""

    order: int
    rows: tuple
    cols: tuple
    minor: Poly
    monomial: str
    coeff: object

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "minor": render(self.minor),
            "monomial": self.monomial,
            "coeff": str(self.coeff),
        }


@dataclass
class TPReport:
    """Outcome of a coefficientwise total-positivity check at a truncation."""

    nrows: int
    ncols: int
    order: int
    ok: bool
    witness: TPWitness | None = None
    contiguous_only: bool = False
    minors_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "truncation": [self.nrows, self.ncols],
            "order": self.order,
            "contiguous_only": self.contiguous_only,
            "minors_checked": self.minors_checked,
            "result": "pass" if self.ok else "fail",
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _first_negative(p: Poly):
    """First negative coefficient in descending graded-lex order, or None."""
    for key in sorted(p.terms, reverse=True):
        c = p.terms[key]
        if c < 0:
            exps = p.ctx.unpack(key)
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}"
                for nm, e in zip(p.ctx.names, exps)
                if e
            ) or "1"
            return mono, c
    return None


def _subset_iter(n: int, m: int, contiguous: bool):
    if contiguous:
        return (tuple(range(i, i + m)) for i in range(n - m + 1))
    return combinations(range(n), m)


def is_totally_positive(
    m: PolyMatrix,
    order: int,
    contiguous_only: bool = False,
    jobs: int = 1,
) -> TPReport:
    """Check every minor of order <= ``order`` for nonnegative coefficients.

    Scans orders ascending and subsets in lexicographic order, so a failure
    report carries the minimal witness.  ``contiguous_only`` restricts to
    contiguous row/column windows (a fast pre-filter, not a certificate).
    ``jobs`` > 1 distributes the enumeration over worker processes.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    order = min(order, m.nrows, m.ncols)
    if jobs > 1 and not contiguous_only:
        return _is_tp_parallel(m, order, jobs)
    memo: dict = {}
    checked = 0
    for size in range(1, order + 1):
        for rows in _subset_iter(m.nrows, size, contiguous_only):
            for cols in _subset_iter(m.ncols, size, contiguous_only):
                if size <= 4:
                    d = _det_cofactor(m, rows, cols, memo)
                else:
                    d = _det_bareiss(m.submatrix(rows, cols))
                checked += 1
                bad = _first_negative(d)
                if bad is not None:
                    return TPReport(
                        m.nrows, m.ncols, order, False,
                        TPWitness(size, rows, cols, d, bad[0], bad[1]),
                        contiguous_only, checked,
                    )
    return TPReport(m.nrows, m.ncols, order, True, None, contiguous_only, checked)


def _tp_chunk(payload):
    """Worker: check one batch of row-subset groups; return first failure."""
    matrix, groups = payload
    memo: dict = {}
    checked = 0
    for rows in groups:
        size = len(rows)
        for cols in combinations(range(matrix.ncols), size):
            if size <= 4:
                d = _det_cofactor(matrix, rows, cols, memo)
            else:
                d = _det_bareiss(matrix.submatrix(rows, cols))
            checked += 1
            bad = _first_negative(d)
            if bad is not None:
                return checked, (size, rows, cols, d, bad[0], bad[1])
    return checked, None


def _is_tp_parallel(m: PolyMatrix, order: int, jobs: int) -> TPReport:
    from multiprocessing import get_context

    groups = [
        rows
        for size in range(1, order + 1)
        for rows in combinations(range(m.nrows), size)
    ]
    chunks = [groups[i::jobs] for i in range(jobs)]
    with get_context("fork").Pool(jobs) as pool:
        results = pool.map(_tp_chunk, [(m, chunk) for chunk in chunks])
    checked = sum(c for c, _ in results)
    failures = [f for _, f in results if f is not None]
    if not failures:
        return TPReport(m.nrows, m.ncols, order, True, None, False, checked)
    size, rows, cols, d, mono, coeff = min(failures, key=lambda f: (f[0], f[1], f[2]))
    return TPReport(
        m.nrows, m.ncols, order, False,
        TPWitness(size, rows, cols, d, mono, coeff), False, checked,
    )


# ---------------------------------------------------------------------------
# log-convexity ladder
# ---------------------------------------------------------------------------


def l_operator(seq: PolySeq) -> list[Poly]:
    """One log-convexity step: output i-1 holds seq[i-1]*seq[i+1] - seq[i]^2."""
    if len(seq) < 3:
        raise ValueError("need at least three entries")
    return [seq[i - 1] * seq[i + 1] - seq[i] * seq[i] for i in range(1, len(seq) - 1)]


@dataclass
class LCXReport:
    """Outcome of the iterated log-convexity check."""

    k: int
    ok: bool
    failed_stage: int | None = None
    failed_index: int | None = None
    witness: Poly | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "result": "pass" if self.ok else "fail",
            "failed_stage": self.failed_stage,
            "failed_index": self.failed_index,
            "witness": render(self.witness) if self.witness is not None else None,
        }


def _hankel_window_det(seq: PolySeq, center: int, size: int) -> Poly:
    lo = center - (size - 1)
    entries = [[seq[lo + a + b] for b in range(size)] for a in range(size)]
    return _det_cofactor(
        PolyMatrix(seq[0].ctx, entries),
        tuple(range(size)),
        tuple(range(size)),
        {},
    )


def check_k_log_convex(seq: PolySeq, k: int, cross_validate: bool = True) -> LCXReport:
    """Iterate the log-convexity operator k times, requiring nonnegative
    coefficients at every stage.

    With ``cross_validate`` the second and third stages are recomputed from
    Hankel-window determinants through the identities

        L^2 at c = seq[c] * det3(c)
        L^3 at c = g * (seq[c]^2 * det4(c) + det3(c-1) * det3(c+1)),
                   g = seq[c-1] seq[c+1] - seq[c]^2

    and both evaluation routes are asserted equal.
    """
    if not 1 <= k <= 3:
        raise ValueError("k must be between 1 and 3")
    if len(seq) < 2 * k + 1:
        raise ValueError(f"need at least {2 * k + 1} entries for k={k}")
    cur = list(seq)
    for stage in range(1, k + 1):
        cur = l_operator(cur)
        if cross_validate and stage == 2:
            for j, v in enumerate(cur):
                c = j + 2
                want = seq[c] * _hankel_window_det(seq, c, 3)
                if v != want:
                    raise ArithmeticError(
                        "second-stage determinant identity failed; "
                        "the implementation is inconsistent"
                    )
        if cross_validate and stage == 3:
            for j, v in enumerate(cur):
                c = j + 3
                gap = seq[c - 1] * seq[c + 1] - seq[c] * seq[c]
                want = gap * (
                    seq[c] * seq[c] * _hankel_window_det(seq, c, 4)
                    + _hankel_window_det(seq, c - 1, 3)
                    * _hankel_window_det(seq, c + 1, 3)
                )
                if v != want:
                    raise ArithmeticError(
                        "third-stage determinant identity failed; "
                        "the implementation is inconsistent"
                    )
        for i, v in enumerate(cur):
            if not v.is_nonneg():
                return LCXReport(k, False, stage, i, v)
    return LCXReport(k, True)


# ---------------------------------------------------------------------------
# tridiagonal criteria
# ---------------------------------------------------------------------------


def _geq(p: Poly, q) -> bool:
    return (p - q).is_nonneg()


def tridiagonal_tp_criteria(
    s: PolySeq, r: PolySeq, t: PolySeq, upto: int
) -> set[str]:
    """Which of the four coefficientwise dominance criteria hold up to ``upto``.

    Precondition (checked): the entries themselves are coefficientwise
    nonnegative.  Sequences must cover s_0..s_upto, r_0..r_upto and
    t_1..t_(upto+1).

      i:    s_0 >= r_0          and  s_n >= r_n + t_n
      ii:   s_0 >= t_1          and  s_n >= r_(n-1) + t_(n+1)
      iii:  s_0 >= 1            and  s_n >= r_(n-1) t_n + 1
      iv:   s_0 >= r_0 t_1      and  s_n >= r_n t_(n+1) + 1
    """
    if len(s) < upto + 1 or len(r) < upto + 1 or len(t) < upto + 2:
        raise ValueError("sequences too short for the requested range")
    for name, seq, start in (("s", s, 0), ("r", r, 0), ("t", t, 1)):
        for i in range(start, upto + 2 if name == "t" else upto + 1):
            if not seq[i].is_nonneg():
                raise HypothesisError(
                    f"{name}_{i} = {seq[i]} has a negative coefficient"
                )
    one = s[0].ctx.one
    results = set()
    if _geq(s[0], r[0]) and all(_geq(s[n], r[n] + t[n]) for n in range(1, upto + 1)):
        results.add("i")
    if _geq(s[0], t[1]) and all(
        _geq(s[n], r[n - 1] + t[n + 1]) for n in range(1, upto + 1)
    ):
        results.add("ii")
    if _geq(s[0], one) and all(
        _geq(s[n], r[n - 1] * t[n] + one) for n in range(1, upto + 1)
    ):
        results.add("iii")
    if _geq(s[0], r[0] * t[1]) and all(
        _geq(s[n], r[n] * t[n + 1] + one) for n in range(1, upto + 1)
    ):
        results.add("iv")
    return results


def check_perturbed_tridiagonal(
    s: PolySeq,
    r: PolySeq,
    t: PolySeq,
    diag_add: PolySeq,
    super_sub: PolySeq,
    sub_sub: PolySeq,
    size: int,
    order: int,
) -> TPReport:
    """Verify by direct minors that the perturbed tridiagonal matrix
    (diagonal + diag_add, superdiagonal - super_sub, subdiagonal - sub_sub)
    stays x-TP of the given order.

    Hypotheses (HypothesisError when violated): all base entries and all
    perturbations are coefficientwise nonnegative, the subtractions stay
    nonnegative, and the base matrix itself passes the order-``order`` check.
    """
    for name, seq, lo, hi in (
        ("s", s, 0, size), ("r", r, 0, size - 1), ("t", t, 1, size),
        ("diag_add", diag_add, 0, size),
        ("super_sub", super_sub, 0, size - 1),
        ("sub_sub", sub_sub, 1, size),
    ):
        for i in range(lo, hi):
            if not seq[i].is_nonneg():
                raise HypothesisError(f"{name}[{i}] has a negative coefficient")
    for i in range(size - 1):
        if not (r[i] - super_sub[i]).is_nonneg():
            raise HypothesisError(f"superdiagonal perturbation exceeds r_{i}")
    for i in range(1, size):
        if not (t[i] - sub_sub[i]).is_nonneg():
            raise HypothesisError(f"subdiagonal perturbation exceeds t_{i}")
    base = is_totally_positive(tridiag(s, r, t, size), order)
    if not base.ok:
        raise HypothesisError(
            f"base tridiagonal matrix is not TP_{order} at size {size}: "
            f"witness {base.witness.to_dict()}"
        )
    perturbed = tridiag(
        [s[i] + diag_add[i] for i in range(size)],
        [r[i] - super_sub[i] for i in range(size - 1)] + [s[0].ctx.zero],
        [s[0].ctx.zero] + [t[i] - sub_sub[i] for i in range(1, size)],
        size,
    )
    return is_totally_positive(perturbed, order)


# ---------------------------------------------------------------------------
# Hankel factorization of a column walk
# ---------------------------------------------------------------------------


def _star_spec(spec: RecurrenceSpec) -> RecurrenceSpec:
    """Associated walk with unit upsteps and downstep weights r_(k-1) t_k,
    which shares the original walk's first column."""
    ctx = spec.ctx
    rc, sc, tc = spec.coeffs
    if isinstance(rc, Poly) and isinstance(tc, Poly):
        k = ctx.var("k")
        tstar = rc.substitute_poly("k", k - 1) * tc
    else:
        nt = min(_len_or_big(rc) + 1, _len_or_big(tc))
        tstar = tuple(
            ctx.zero if i == 0 else spec.walk_coeff(0, i - 1) * spec.walk_coeff(2, i)
            for i in range(nt)
        )
    return RecurrenceSpec(ctx, COLUMN_WALK, (ctx.one, sc, tstar))


def _len_or_big(c) -> int:
    return 10**9 if isinstance(c, Poly) else len(c)


def check_hankel_factorization(spec: RecurrenceSpec, size: int) -> bool:
    """Entrywise identity D* V* (D*)^T = Hankel(first column) at ``size``.

    D* is the unit-upstep walk associated with the given column walk and
    V*_k = prod_{i<=k} t_i r_(i-1).  The build is column-truncated at
    size-1, which is exact for every entry the identity reads (paths above
    that height cannot return to column zero within 2(size-1) steps).
    """
    if spec.kind != COLUMN_WALK:
        raise ValueError("the factorization check needs a column-walk spec")
    ctx = spec.ctx
    depth = 2 * (size - 1)
    star = build_triangle(_star_spec(spec), depth, max_col=size - 1)
    v = [ctx.one]
    for i in range(1, size):
        v.append(v[-1] * spec.walk_coeff(2, i) * spec.walk_coeff(0, i - 1))
    for n in range(size):
        for m in range(n, size):
            acc = ctx.zero
            for k in range(min(n, m) + 1):
                a, b = star.entry(n, k), star.entry(m, k)
                if a and b:
                    acc = acc + a * b * v[k]
            if acc != star.entry(n + m, 0):
                return False
    return True


def walk_hankel(spec: RecurrenceSpec, size: int) -> PolyMatrix:
    """Hankel truncation of a column walk's first column."""
    t = build_triangle(spec, 2 * (size - 1), max_col=size - 1)
    return hankel(t.first_column(), size)
