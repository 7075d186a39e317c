"""Triangle recurrences: declarative specs, materialization and transforms.

Two recurrence shapes are supported.  A *row-shift* triangle reads

    T[n][k] = c0(n,k) * T[n-1][k] + c1(n,k) * T[n-1][k-1] + c2(n,k) * T[n-1][k-2]

and a *column-walk* triangle reads

    D[n][k] = r(k-1) * D[n-1][k-1] + s(k) * D[n-1][k] + t(k+1) * D[n-1][k+1],

both with T[0][0] = 1 and entries zero unless 0 <= k <= n.  Coefficients are
polynomials in the reserved indeterminates ``n``/``k`` plus any parameters.

Specs whose true coefficients have a monomial denominator m (for example a
bare parameter) are stored *cleared*: the stored coefficients equal m times
the true ones, and the materialized rows then equal m^n times the true rows.
The ``Triangle.scale`` field records m so checks can multiply through.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .polyring import Poly, VarContext

PolySeq = Sequence[Poly]

ROW_SHIFT = "row-shift"
COLUMN_WALK = "column-walk"


@dataclass(frozen=True)
class RecurrenceSpec:
    """Declarative description of a triangle recurrence.

    For ``row-shift``, ``coeffs`` is (c0, c1, c2), polynomials in n, k and
    parameters.  For ``column-walk`` it is (r, s, t), each either a
    polynomial in k or an explicit per-level tuple of polynomials.
    """

    ctx: VarContext
    kind: Literal["row-shift", "column-walk"]
    coeffs: tuple
    denominator: Poly | None = None

    def __post_init__(self):
        if self.kind not in (ROW_SHIFT, COLUMN_WALK):
            raise ValueError(f"unknown recurrence kind {self.kind!r}")
        if self.kind == ROW_SHIFT and len(self.coeffs) not in (2, 3):
            raise ValueError("row-shift spec needs coefficients (c0, c1[, c2])")
        if self.kind == COLUMN_WALK and len(self.coeffs) != 3:
            raise ValueError("column-walk spec needs coefficients (r, s, t)")
        if self.denominator is not None and len(self.denominator.terms) != 1:
            raise ValueError("denominator must be a single monomial")

    # -- coefficient access ------------------------------------------------

    def shift_coeff(self, j: int, n: int, k: int) -> Poly:
        """Stored c_j evaluated at integer row/column indices."""
        if j >= len(self.coeffs):
            return self.ctx.zero
        return self.coeffs[j].specialize({"n": n, "k": k})

    def walk_coeff(self, which: int, k: int) -> Poly:
        """Stored walk coefficient (0=r, 1=s, 2=t) at level k."""
        c = self.coeffs[which]
        if isinstance(c, Poly):
            return c.specialize({"k": k})
        if k < 0 or k >= len(c):
            raise IndexError(
                f"walk coefficient {('r', 's', 't')[which]}[{k}] not provided"
            )
        return c[k]

    def specialize(self, assignment: dict) -> RecurrenceSpec:
        """Substitute rational values for parameters in every coefficient."""

        def sub(c):
            if isinstance(c, Poly):
                return c.specialize(assignment)
            return tuple(p.specialize(assignment) for p in c)

        den = self.denominator
        if den is not None:
            den = den.specialize(assignment)
        return RecurrenceSpec(self.ctx, self.kind, tuple(sub(c) for c in self.coeffs), den)


@dataclass
class Triangle:
    """Materialized triangle rows; ``rows[n]`` has length n+1 (or less when
    column-truncated).  Stored entries equal scale^n times the true entries."""

    ctx: VarContext
    rows: list[list[Poly]]
    spec: RecurrenceSpec | None = None
    scale: Poly | None = None
    provenance: str = ""

    def __post_init__(self):
        if self.scale is None:
            self.scale = self.ctx.one

    @property
    def depth(self) -> int:
        return len(self.rows) - 1

    def entry(self, n: int, k: int) -> Poly:
        if 0 <= n <= self.depth and 0 <= k < len(self.rows[n]):
            return self.rows[n][k]
        return self.ctx.zero

    def first_column(self) -> list[Poly]:
        return [row[0] for row in self.rows]

    def row_gf(self, n: int, var: str = "q") -> Poly:
        """Row generating function: sum of rows[n][k] * var^k."""
        if n > self.depth:
            raise IndexError(f"row {n} beyond materialized depth {self.depth}")
        q = self.ctx.var(var)
        acc = self.ctx.zero
        for k, e in enumerate(self.rows[n]):
            if e:
                acc = acc + e * q**k
        return acc

    def row_gfs(self, var: str = "q") -> list[Poly]:
        return [self.row_gf(n, var) for n in range(self.depth + 1)]

    def satisfies(self, spec: RecurrenceSpec | None = None) -> bool:
        """Exact recurrence-residual check of every materialized entry."""
        spec = spec or self.spec
        if spec is None:
            raise ValueError("no recurrence spec to check against")
        if self.entry(0, 0) != self.ctx.one:
            return False
        for n in range(1, self.depth + 1):
            prev = self.rows[n - 1]
            for k in range(len(self.rows[n])):
                want = _step(spec, prev, n, k)
                if self.rows[n][k] != want:
                    return False
        return True


def _step(spec: RecurrenceSpec, prev: list[Poly], n: int, k: int) -> Poly:
    """One recurrence application producing entry (n, k) from row n-1."""
    ctx = spec.ctx
    acc = ctx.zero
    if spec.kind == ROW_SHIFT:
        for j in range(len(spec.coeffs)):
            kk = k - j
            if 0 <= kk < len(prev) and prev[kk]:
                c = spec.shift_coeff(j, n, k)
                if c:
                    acc = acc + c * prev[kk]
    else:
        if 1 <= k and k - 1 < len(prev) and prev[k - 1]:
            c = spec.walk_coeff(0, k - 1)
            if c:
                acc = acc + c * prev[k - 1]
        if k < len(prev) and prev[k]:
            c = spec.walk_coeff(1, k)
            if c:
                acc = acc + c * prev[k]
        if k + 1 < len(prev) and prev[k + 1]:
            c = spec.walk_coeff(2, k + 1)
            if c:
                acc = acc + c * prev[k + 1]
    return acc


def build_triangle(
    spec: RecurrenceSpec, depth: int, max_col: int | None = None
) -> Triangle:
    """Materialize rows 0..depth; entries outside 0 <= k <= n are zero.

    ``max_col`` truncates columns.  Entries at k = max_col then miss the
    inflow from column max_col+1, so a truncated build is only exact for
    the entries a height-bounded use (first column, leading rows) can reach;
    callers pick max_col accordingly.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    ctx = spec.ctx
    rows = [[ctx.one]]
    for n in range(1, depth + 1):
        prev = rows[-1]
        width = n if max_col is None else min(n, max_col)
        rows.append([_step(spec, prev, n, k) for k in range(width + 1)])
    return Triangle(ctx, rows, spec=spec, scale=spec.denominator or ctx.one)


# ---------------------------------------------------------------------------
# triangle-level transforms
# ---------------------------------------------------------------------------


def _require_full(t: Triangle, what: str) -> None:
    # transforms read every entry; a column-truncated build would silently
    # contribute zeros where the true triangle has entries
    if any(len(row) != n + 1 for n, row in enumerate(t.rows)):
        raise ValueError(f"{what} needs a fully materialized triangle")


def reciprocal(t: Triangle) -> Triangle:
    """Index-reversed triangle: entry (n, k) becomes entry (n, n-k)."""
    _require_full(t, "index reversal")
    rows = [list(reversed(row)) for row in t.rows]
    return Triangle(t.ctx, rows, spec=None, scale=t.scale,
                    provenance=f"reciprocal({t.provenance or 'triangle'})")


def gamma_binomial(t: Triangle, gamma: Poly) -> Triangle:
    """Weighted binomial transform: out[n][k] = sum_i C(n,i) gamma^(n-i) t[i][k]."""
    _require_full(t, "the binomial transform")
    if t.scale != t.ctx.one:
        raise ValueError("gamma-binomial transform needs an unscaled triangle")
    ctx = t.ctx
    gpow = [ctx.one]
    for _ in range(t.depth):
        gpow.append(gpow[-1] * gamma)
    rows = []
    for n in range(t.depth + 1):
        row = []
        for k in range(n + 1):
            acc = ctx.zero
            for i in range(k, n + 1):
                e = t.entry(i, k)
                if e:
                    acc = acc + ctx.const(math.comb(n, i)) * gpow[n - i] * e
            row.append(acc)
        rows.append(row)
    return Triangle(ctx, rows, spec=None, scale=ctx.one,
                    provenance="gamma-binomial")


def shift_row_gf(
    t: Triangle,
    shift: Poly,
    var: str = "q",
    den: Poly | None = None,
) -> Triangle:
    """Coefficient triangle of the argument-shifted row polynomials.

    Plain form (den=None): new row n holds the coefficients of
    B_n(q) = A_n(q + shift).  With ``den`` given, the substitution is
    q -> (q*den + shift)/den and the result is cleared by den^n, i.e. the
    output rows hold den^n * A_n((q*den + shift)/den); the output scale
    is multiplied by den accordingly.  ``den`` must not involve ``var``.
    """
    _require_full(t, "the argument shift")
    ctx = t.ctx
    q = ctx.var(var)
    if den is not None and den.degree_in(var):
        raise ValueError(f"clearing denominator must not involve {var!r}")
    image = q * den + shift if den is not None else q + shift
    rows = []
    for n in range(t.depth + 1):
        acc = ctx.zero
        dpow = ctx.one
        # Horner from the top coefficient down: sum_k A[n][k] image^k den^(n-k)
        for k in range(n, -1, -1):
            e = t.entry(n, k)
            term = e * dpow if den is not None else e
            acc = acc * image + term
            if den is not None:
                dpow = dpow * den
        parts = acc.coeffs_in(var)
        if parts and max(parts) > n:
            raise ValueError("shifted row has degree above the row index")
        rows.append([parts.get(k, ctx.zero) for k in range(n + 1)])
    scale = t.scale if den is None else t.scale * den
    return Triangle(ctx, rows, spec=None, scale=scale, provenance="argument-shift")


def companion_spec(
    ctx: VarContext,
    a0: Poly,
    a1: Poly,
    a2: Poly,
    b0: Poly,
    b1: Poly,
    b2: Poly,
    d: Poly,
) -> RecurrenceSpec:
    """Two-term companion recurrence of the general four-term triangle.

    The companion array A satisfies

        A[n][k] = (a0 n + a1 k + a2) A[n-1][k]
                + ([b0 + d(a1-a0)] n + (b1 - 2 d a1) k + b2 + d(a1-a2)) A[n-1][k-1]

    and its row polynomials reproduce the four-term triangle's through the
    substitution checked by :func:`check_companion_relation`.
    """
    n, k = ctx.var("n"), ctx.var("k")
    c0 = a0 * n + a1 * k + a2
    c1 = (b0 + d * (a1 - a0)) * n + (b1 - 2 * d * a1) * k + b2 + d * (a1 - a2)
    return RecurrenceSpec(ctx, ROW_SHIFT, (c0, c1))


def check_companion_relation(
    t_four: Triangle,
    t_comp: Triangle,
    lam: Poly,
    d: Poly,
    upto: int,
    var: str = "q",
) -> bool:
    """True iff stored row polys satisfy T_n(q) = sum_k A[n][k] q^k (lam+d q)^(n-k).

    The four-term triangle may be denominator-cleared (scale lam); the
    comparison multiplies the companion side by scale^n, which is exactly
    the denominator-cleared form of T_n(q) = (lam+d q)^n A_n(q/(lam+d q)).
    """
    if t_comp.scale != t_comp.ctx.one:
        raise ValueError("companion triangle must be unscaled")
    if upto > t_four.depth or upto > t_comp.depth:
        raise ValueError("triangles not materialized deep enough")
    ctx = t_four.ctx
    q = ctx.var(var)
    base = lam + d * q
    for n in range(upto + 1):
        # Horner in base, ascending k: ends at sum_k A[n][k] q^k base^(n-k)
        rhs = ctx.zero
        qpow = ctx.one
        for k in range(n + 1):
            rhs = rhs * base + t_comp.entry(n, k) * qpow
            qpow = qpow * q
        lhs = t_four.row_gf(n, var)
        if lhs != rhs * t_four.scale**n:
            return False
    return True


def triangle_convolution(
    m: Triangle, xs: PolySeq, ys: PolySeq, upto: int
) -> list[Poly]:
    """z_n = sum_k m[n][k] x_k y_(n-k) for n <= upto."""
    if upto > m.depth:
        raise ValueError("triangle not materialized deep enough")
    if len(xs) <= upto or len(ys) <= upto:
        raise ValueError("input sequences too short for requested length")
    out = []
    for n in range(upto + 1):
        acc = m.ctx.zero
        for k in range(n + 1):
            e = m.entry(n, k)
            if e:
                acc = acc + e * xs[k] * ys[n - k]
        out.append(acc)
    return out


def check_product_formula(
    t: Triangle,
    factor: Poly,
    upto: int,
    var: str = "q",
    eval_at: Poly | None = None,
) -> bool:
    """True iff row polynomials equal the running product of ``factor``.

    ``factor`` is a polynomial in the reserved index ``k``; the n-th row
    value is compared against scale^n * prod_{k=1..n} factor(k).  With
    ``eval_at`` given, rows are first evaluated at var = eval_at.
    """
    if upto > t.depth:
        raise ValueError("triangle not materialized deep enough")
    ctx = t.ctx
    running = ctx.one
    spow = ctx.one
    for n in range(upto + 1):
        if n:
            running = running * factor.specialize({"k": n})
            spow = spow * t.scale
        gf = t.row_gf(n, var)
        if eval_at is not None:
            gf = gf.substitute_poly(var, eval_at)
        if gf != running * spow:
            return False
    return True


# ---------------------------------------------------------------------------
# golden-file round trip
# ---------------------------------------------------------------------------


def write_golden(t: Triangle, path) -> None:
    """One row per line, canonical polynomial text, tab-separated."""
    with open(path, "w") as fh:
        for row in t.rows:
            fh.write("\t".join(str(e) for e in row) + "\n")


def read_golden(ctx: VarContext, path) -> list[list[Poly]]:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            rows.append([ctx.parse(cell) for cell in line.split("\t")])
    return rows
