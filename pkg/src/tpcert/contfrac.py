"""Stieltjes and Jacobi continued fractions as formal power series.

An S-fraction with coefficients alpha_0, alpha_1, ... denotes

    1 / (1 - alpha_0 z / (1 - alpha_1 z / (1 - ...)))

and a J-fraction with coefficients s_0, s_1, ... and r_1, r_2, ... denotes

    1 / (1 - s_0 z - r_1 z^2 / (1 - s_1 z - r_2 z^2 / (1 - ...))).

The two are linked by the contraction identity

    s_0 = alpha_0,   s_n = alpha_{2n-1} + alpha_{2n},
    r_n = alpha_{2n-2} * alpha_{2n-1}          (n >= 1),

whose indexing is pinned here by the executable contract
``expand(contract(s), N) == expand(s, N)`` rather than by subscript
bookkeeping.  Coefficients can be given as explicit lists or as closed-form
polynomials in a level variable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .polyring import Poly, RatFunc, SeriesPoly, VarContext


class DegenerateFraction(ValueError):
    """Raised when an operation needs a continued-fraction level that does
    not exist (terminated fraction or missing coefficient)."""


def _value_at(form: Poly, level_var: str, i: int) -> Poly:
    return form.specialize({level_var: i})


@dataclass(frozen=True)
class SFraction:
    """S-fraction coefficients, list-backed or closed-form-backed.

    Closed forms give alpha_{2n} and alpha_{2n+1} as polynomials in
    ``level_var``; both backings may be present (they must then agree,
    which the tests assert).
    """

    ctx: VarContext
    alphas: tuple | None = None
    even_form: Poly | None = None
    odd_form: Poly | None = None
    level_var: str = "n"

    def __post_init__(self):
        if self.alphas is None and (self.even_form is None or self.odd_form is None):
            raise ValueError("need either an alpha list or both closed forms")
        if self.alphas is not None and not self.alphas:
            raise ValueError("alpha list must not be empty")

    @classmethod
    def from_list(cls, ctx: VarContext, alphas: Sequence) -> SFraction:
        return cls(ctx, alphas=tuple(alphas))

    @classmethod
    def from_forms(
        cls, even_form: Poly, odd_form: Poly, level_var: str = "n"
    ) -> SFraction:
        return cls(even_form.ctx, even_form=even_form, odd_form=odd_form,
                   level_var=level_var)

    def alpha(self, i: int) -> Poly:
        """alpha_i; prefers the explicit list when present."""
        if self.alphas is not None:
            if i >= len(self.alphas):
                raise DegenerateFraction(f"alpha_{i} not provided")
            return self.alphas[i]
        form = self.even_form if i % 2 == 0 else self.odd_form
        return _value_at(form, self.level_var, i // 2)


@dataclass(frozen=True)
class JFraction:
    """J-fraction coefficients; values are Poly or (after extraction) RatFunc.

    ``r_list[i]`` stores r_{i+1}; accessors take the mathematical index.
    ``s0`` overrides the closed form at level 0, which is how contraction
    records s_0 = alpha_0 when the closed form does not specialize to it.
    """

    ctx: VarContext
    s_list: tuple | None = None
    r_list: tuple | None = None
    s_form: Poly | None = None
    r_form: Poly | None = None
    s0: Poly | None = None
    level_var: str = "n"
    terminated: bool = False
    degenerate_level: int | None = None

    @classmethod
    def from_lists(cls, ctx: VarContext, s: Sequence, r: Sequence, **kw) -> JFraction:
        return cls(ctx, s_list=tuple(s), r_list=tuple(r), **kw)

    @classmethod
    def from_forms(
        cls, s_form: Poly, r_form: Poly, level_var: str = "n", s0: Poly | None = None
    ) -> JFraction:
        return cls(s_form.ctx, s_form=s_form, r_form=r_form,
                   level_var=level_var, s0=s0)

    def s(self, i: int):
        if i == 0 and self.s0 is not None:
            return self.s0
        if self.s_list is not None:
            if i >= len(self.s_list):
                raise DegenerateFraction(f"s_{i} not provided")
            return self.s_list[i]
        return _value_at(self.s_form, self.level_var, i)

    def r(self, i: int):
        if i < 1:
            raise IndexError("r coefficients start at index 1")
        if self.r_list is not None:
            if i - 1 >= len(self.r_list):
                raise DegenerateFraction(f"r_{i} not provided")
            return self.r_list[i - 1]
        return _value_at(self.r_form, self.level_var, i)

    def is_polynomial(self) -> bool:
        """True when every listed coefficient is (narrowable to) a Poly."""
        entries = list(self.s_list or ()) + list(self.r_list or ())
        return all(not isinstance(e, RatFunc) or e.is_poly() for e in entries)

    def narrowed(self) -> JFraction:
        """Copy with RatFunc entries narrowed to Poly; raises if impossible."""

        def narrow(v):
            return v.as_poly() if isinstance(v, RatFunc) else v

        out = self
        if self.s_list is not None:
            out = replace(out, s_list=tuple(narrow(v) for v in self.s_list))
        if self.r_list is not None:
            out = replace(out, r_list=tuple(narrow(v) for v in self.r_list))
        return out


def contract(sf: SFraction) -> JFraction:
    """J-fraction equal, as a series, to the given S-fraction.

    Uses the convention alpha_{-1} = 0, so s_0 = alpha_0.
    """
    ctx = sf.ctx
    if sf.alphas is None:
        n = ctx.var(sf.level_var)
        odd_prev = sf.odd_form.substitute_poly(sf.level_var, n - 1)
        even_prev = sf.even_form.substitute_poly(sf.level_var, n - 1)
        return JFraction.from_forms(
            s_form=odd_prev + sf.even_form,
            r_form=even_prev * odd_prev,
            level_var=sf.level_var,
            s0=sf.alpha(0),
        )
    alphas = sf.alphas
    top = len(alphas) - 1
    s = [alphas[0]]
    for m in range(1, top // 2 + 1):
        s.append(alphas[2 * m - 1] + alphas[2 * m])
    r = []
    for m in range(1, (top + 1) // 2 + 1):
        r.append(alphas[2 * m - 2] * alphas[2 * m - 1])
    return JFraction.from_lists(ctx, s, r)


def _poly_coeff(value, what: str) -> Poly:
    if isinstance(value, RatFunc):
        if not value.is_poly():
            raise ValueError(f"{what} is not polynomial: {value}")
        return value.as_poly()
    return value


def j_expand(jf: JFraction, depth: int) -> SeriesPoly:
    """First depth+1 series coefficients of a J-fraction.

    Implemented through the associated unit-upstep column walk
    D[n][k] = D[n-1][k-1] + s_k D[n-1][k] + r_{k+1} D[n-1][k+1], whose first
    column carries the series; coefficient n only involves s and r levels
    up to n, and the walk is height-truncated at what depth can reach.
    """
    ctx = jf.ctx
    s_cache: dict[int, Poly] = {}
    r_cache: dict[int, Poly] = {}

    def s_at(k):
        if k not in s_cache:
            s_cache[k] = _poly_coeff(jf.s(k), f"s_{k}")
        return s_cache[k]

    def r_at(k):
        if k not in r_cache:
            try:
                r_cache[k] = _poly_coeff(jf.r(k), f"r_{k}")
            except DegenerateFraction:
                if jf.terminated:
                    r_cache[k] = ctx.zero
                else:
                    raise
        return r_cache[k]

    # Columns above a zero r level are pruned: every walk returning to
    # column zero from height k descends through weight r_k, so mass above
    # the first vanishing r contributes nothing.  A terminated fraction is
    # the same situation with the zero recorded explicitly.
    cap = depth
    if jf.terminated and jf.degenerate_level is not None:
        cap = jf.degenerate_level - 1

    out = [ctx.one]
    row = [ctx.one]
    for n in range(1, depth + 1):
        # the walk rises at most one column per step
        width = min(n, depth - n, cap, len(row))
        if width == len(row) and not r_at(width):
            cap = width - 1
            width = cap
        new = []
        for k in range(width + 1):
            acc = ctx.zero
            if k >= 1 and k - 1 < len(row) and row[k - 1]:
                acc = acc + row[k - 1]
            if k < len(row) and row[k]:
                sk = s_at(k)
                if sk:
                    acc = acc + sk * row[k]
            if k + 1 < len(row) and row[k + 1]:
                rk = r_at(k + 1)
                if rk:
                    acc = acc + rk * row[k + 1]
            new.append(acc)
        row = new
        out.append(row[0])
    return SeriesPoly(ctx, out)


def s_expand(sf: SFraction, depth: int) -> SeriesPoly:
    """First depth+1 series coefficients of an S-fraction."""
    return j_expand(contract(sf), depth)


def extract_jfraction(f: SeriesPoly, levels: int) -> JFraction:
    """Recover J-fraction coefficients from a series with constant term 1.

    At each level the defining relation 1/f_i = 1 - s_i z - r_{i+1} z^2 f_{i+1}
    yields s_i and r_{i+1} over the coefficient fraction field; two series
    orders are consumed per level, so ``f.depth >= 2*levels`` is required.
    A level with r identically zero terminates the fraction: the prefix is
    returned with ``terminated`` set and the zero level recorded.
    """
    ctx = f.ctx
    if f.depth < 2 * levels:
        raise ValueError(f"series depth {f.depth} < 2*levels = {2 * levels}")
    one = RatFunc.from_poly(ctx.one)
    first = f.coeffs[0]
    if isinstance(first, Poly):
        cur = [RatFunc.from_poly(c) for c in f.coeffs]
    else:
        cur = list(f.coeffs)
    if cur[0] != one:
        raise ValueError("extraction needs constant term 1")
    s: list[RatFunc] = []
    r: list[RatFunc] = []
    terminated = False
    degenerate_level = None
    i = 0
    while i <= levels and len(cur) >= 2:
        g = SeriesPoly(ctx, cur).reciprocal().coeffs
        s.append(-g[1])
        if i == levels or len(cur) < 3:
            break
        ri = -g[2]
        r.append(ri)
        if ri.is_zero():
            terminated = True
            degenerate_level = i + 1
            break
        cur = [-g[j] / ri for j in range(2, len(cur))]
        i += 1
    return JFraction.from_lists(
        ctx, s, r, terminated=terminated, degenerate_level=degenerate_level
    )


def rising_product_series(a: Poly, b: Poly, c: Poly, depth: int) -> SeriesPoly:
    """Exact truncation of  1 + sum_{n>=1} z^n prod_{k=0}^{n-1} (a+bk)/(1-c(k+1)z).

    Each geometric factor is expanded to the working depth before
    multiplying, so the result is the honest series truncation.
    """
    ctx = a.ctx
    out = [ctx.zero] * (depth + 1)
    out[0] = ctx.one
    prod = SeriesPoly.constant(ctx, 1, depth)
    for n in range(1, depth + 1):
        factor_num = a + b * (n - 1)
        w = c * n
        geo = [ctx.one]
        for _ in range(depth):
            geo.append(geo[-1] * w)
        prod = prod.scale(factor_num).mul(SeriesPoly(ctx, geo))
        for m in range(depth - n + 1):
            if prod.coeffs[m]:
                out[m + n] = out[m + n] + prod.coeffs[m]
    return SeriesPoly(ctx, out)


def cf_match(
    triangle,
    fraction,
    depth: int,
    var: str = "q",
    prescaled: bool = False,
    eval_at: Poly | None = None,
) -> bool:
    """True iff the triangle's row polynomials match the fraction's series.

    Coefficient n of the expansion is compared against the stored row
    polynomial; a scaled triangle multiplies the expansion coefficient by
    scale^n, unless the fraction is already the cleared one (``prescaled``),
    in which case its expansion equals the stored rows directly.  With
    ``eval_at`` the rows are first evaluated at var = eval_at (for fractions
    that describe the rows at a fixed argument).
    """
    if depth > triangle.depth:
        raise ValueError("triangle not materialized deep enough")
    if isinstance(fraction, SFraction):
        series = s_expand(fraction, depth)
    else:
        series = j_expand(fraction, depth)
    spow = triangle.ctx.one
    for n in range(depth + 1):
        expected = series[n] if prescaled else series[n] * spow
        got = triangle.row_gf(n, var)
        if eval_at is not None:
            got = got.substitute_poly(var, eval_at)
        if got != expected:
            return False
        if not prescaled:
            spow = spow * triangle.scale
    return True


def jfraction_split(jf: JFraction, sf: SFraction, levels: int) -> "Poly | None":
    """Check that the S-fraction data splits the J-fraction coefficients:

        s(i) = alpha_even(i) + alpha_odd(i-1)   (i >= 0, odd evaluated at -1)
        r(m) = alpha_even(m-1) * alpha_odd(m-1) (m >= 1).

    Returns the leftover alpha_odd(-1) absorbed into s(0) when the split
    holds (zero for a literal contraction), or None when it does not.
    When the leftover and all alphas are coefficientwise nonnegative this
    is exactly the dominance data the tridiagonal criteria consume.
    """
    if sf.even_form is None or sf.odd_form is None:
        raise ValueError("split check needs closed-form alpha data")
    lv = sf.level_var
    for i in range(levels + 1):
        want = sf.even_form.specialize({lv: i}) + sf.odd_form.specialize({lv: i - 1})
        if jf.s(i) != want:
            return None
    for m in range(1, levels + 1):
        want = sf.even_form.specialize({lv: m - 1}) * sf.odd_form.specialize({lv: m - 1})
        if jf.r(m) != want:
            return None
    return sf.odd_form.specialize({lv: -1})


def triangle_jfraction(spec) -> JFraction:
    """J-fraction of a column walk's first-column generating function.

    For walk coefficients (r_k, s_k, t_k) the fraction has s-sequence s_k
    and r-sequence r_{k-1} t_k.
    """
    from .triangles import COLUMN_WALK  # local import to avoid a cycle

    if spec.kind != COLUMN_WALK:
        raise ValueError("triangle_jfraction needs a column-walk spec")
    ctx = spec.ctx
    rc, sc, tc = spec.coeffs
    if isinstance(rc, Poly) and isinstance(sc, Poly) and isinstance(tc, Poly):
        k = ctx.var("k")
        r_form = rc.substitute_poly("k", k - 1) * tc
        return JFraction.from_forms(s_form=sc, r_form=r_form, level_var="k")
    s_list = tuple(spec.walk_coeff(1, i) for i in range(_walk_len(sc)))
    nr = min(_walk_len(rc), _walk_len(tc) - 1) if _walk_len(tc) > 0 else 0
    r_list = tuple(spec.walk_coeff(0, i) * spec.walk_coeff(2, i + 1) for i in range(nr))
    return JFraction.from_lists(ctx, s_list, r_list)


def _walk_len(c) -> int:
    return 10**9 if isinstance(c, Poly) else len(c)
