"""Tests for triangle materialization and the triangle-level transforms."""

import math

import pytest

from tpcert.polyring import VarContext
from tpcert.triangles import (
    COLUMN_WALK,
    ROW_SHIFT,
    RecurrenceSpec,
    Triangle,
    build_triangle,
    check_companion_relation,
    check_product_formula,
    companion_spec,
    gamma_binomial,
    read_golden,
    reciprocal,
    shift_row_gf,
    triangle_convolution,
    write_golden,
)


@pytest.fixture
def ctx():
    return VarContext(["n", "k", "q", "lam", "gamma", "a2"])


def pascal(ctx, depth=8):
    return build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (ctx.one, ctx.one)), depth)


def eulerian(ctx, depth=7):
    n, k = ctx.var("n"), ctx.var("k")
    return build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (k, n - k + 1)), depth)


def stirling2(ctx, depth=7):
    return build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (ctx.var("k"), ctx.one)), depth)


def bell_walk(ctx, depth=6):
    k = ctx.var("k")
    return build_triangle(RecurrenceSpec(ctx, COLUMN_WALK, (ctx.one, k + 1, k)), depth)


def ints(row):
    return [int(e.const_value()) for e in row]


def test_pascal_rows(ctx):
    t = pascal(ctx, 2)
    assert [ints(r) for r in t.rows] == [[1], [1, 1], [1, 2, 1]]


def test_eulerian_row4(ctx):
    assert ints(eulerian(ctx, 4).rows[4]) == [0, 1, 11, 11, 1]


def test_stirling2_row4_and_gf(ctx):
    t = stirling2(ctx, 4)
    assert ints(t.rows[4]) == [0, 1, 7, 6, 1]
    assert t.row_gf(3) == ctx.parse("q + 3*q^2 + q^3")
    assert t.row_gf(0) == ctx.one


def test_boundary_and_base_invariants(ctx):
    t = eulerian(ctx, 6)
    assert t.entry(0, 0) == ctx.one
    assert t.entry(3, -1).is_zero() and t.entry(3, 4).is_zero()
    assert all(len(t.rows[n]) == n + 1 for n in range(7))


def test_recurrence_residual(ctx):
    for t in (pascal(ctx, 6), eulerian(ctx, 6), stirling2(ctx, 6), bell_walk(ctx, 6)):
        assert t.satisfies()
    bad = eulerian(ctx, 4)
    bad.rows[3][1] = bad.rows[3][1] + ctx.one
    assert not bad.satisfies()


def test_negative_depth_rejected(ctx):
    with pytest.raises(ValueError):
        build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (ctx.one, ctx.one)), -1)


def test_row_gf_out_of_range(ctx):
    with pytest.raises(IndexError):
        pascal(ctx, 3).row_gf(4)


class TestReciprocal:
    def test_pascal_symmetric(self, ctx):
        t = pascal(ctx, 6)
        assert reciprocal(t).rows == t.rows

    def test_index_reversal(self, ctx):
        t = Triangle(ctx, [[ctx.one], [ctx.zero, ctx.one], [ctx.zero, ctx.one, ctx.one]])
        assert [ints(r) for r in reciprocal(t).rows] == [[1], [1, 0], [1, 1, 0]]

    def test_row_gf_identity(self, ctx):
        # reciprocal rows carry q^n T_n(1/q): coefficient j moves to n-j
        t = eulerian(ctx, 5)
        tr = reciprocal(t)
        for n in range(6):
            got = tr.row_gf(n)
            want = sum(
                (t.entry(n, j) * ctx.var("q") ** (n - j) for j in range(n + 1)),
                ctx.zero,
            )
            assert got == want

    def test_eulerian_descent_reversal(self, ctx):
        # enumeration symmetry: reversing a permutation maps k-1 descents to
        # n-k descents, so the reciprocal equals the triangle shifted one
        # column left
        t = eulerian(ctx, 5)
        tr = reciprocal(t)
        for n in range(1, 6):
            assert tr.rows[n][:-1] == t.rows[n][1:]
            assert tr.rows[n][-1].is_zero()

    def test_involution(self, ctx):
        t = eulerian(ctx, 5)
        assert reciprocal(reciprocal(t)).rows == t.rows


class TestGammaBinomial:
    def test_first_column_powers(self, ctx):
        # input with first column delta(n=0): transform gives gamma^n
        rows = [[ctx.one]] + [
            [ctx.zero] * (n + 1) for n in range(1, 5)
        ]
        t = Triangle(ctx, rows)
        g = gamma_binomial(t, ctx.one)
        assert all(g.rows[n][0] == ctx.one for n in range(5))
        gg = gamma_binomial(t, ctx.var("gamma"))
        assert all(gg.rows[n][0] == ctx.var("gamma") ** n for n in range(5))

    def test_gamma_zero_is_identity(self, ctx):
        t = bell_walk(ctx, 6)
        assert gamma_binomial(t, ctx.zero).rows == t.rows

    def test_composition_adds_weights(self, ctx):
        c = VarContext(["n", "k", "q", "g1", "g2"])
        t = build_triangle(
            RecurrenceSpec(c, COLUMN_WALK, (c.one, c.var("k") + 1, c.var("k"))), 6
        )
        lhs = gamma_binomial(gamma_binomial(t, c.var("g1")), c.var("g2"))
        rhs = gamma_binomial(t, c.var("g1") + c.var("g2"))
        assert lhs.rows == rhs.rows

    def test_shifted_walk_recurrence(self, ctx):
        # transformed walk satisfies the original with s_k replaced by gamma+s_k
        t = bell_walk(ctx, 6)
        g = ctx.var("a2")
        tg = gamma_binomial(t, g)
        k = ctx.var("k")
        shifted = RecurrenceSpec(ctx, COLUMN_WALK, (ctx.one, g + k + 1, k))
        assert tg.satisfies(shifted)

    def test_row_gf_identity(self, ctx):
        t = bell_walk(ctx, 6)
        g = ctx.var("gamma")
        tg = gamma_binomial(t, g)
        for n in range(7):
            want = sum(
                (
                    ctx.const(math.comb(n, i)) * g ** (n - i) * t.row_gf(i)
                    for i in range(n + 1)
                ),
                ctx.zero,
            )
            assert tg.row_gf(n) == want


class TestShift:
    def test_single_row(self, ctx):
        t = Triangle(ctx, [[ctx.one], [ctx.zero, ctx.one]])  # A_1(q) = q
        sh = shift_row_gf(t, ctx.var("lam"))
        assert sh.rows[1] == [ctx.var("lam"), ctx.one]

    def test_shift_zero_identity(self, ctx):
        t = eulerian(ctx, 5)
        assert shift_row_gf(t, ctx.zero).rows == t.rows

    def test_round_trip(self, ctx):
        t = stirling2(ctx, 5)
        lam = ctx.var("lam")
        assert shift_row_gf(shift_row_gf(t, lam), -lam).rows == t.rows

    def test_shifted_triangle_recurrence(self):
        # base recurrence (a0 n - lam b1 k + a2 | b0 n + b1 k + b2); after the
        # shift by lam the rows satisfy the same with the first coefficient
        # (a0 + lam b0) n + lam b1 k + a2 + lam (b1 + b2)
        c = VarContext(["n", "k", "q", "a0", "a2", "b0", "b1", "b2", "lam"])
        n, k, q, a0, a2, b0, b1, b2, lam = (c.var(v) for v in c.names)
        base = RecurrenceSpec(
            c, ROW_SHIFT, (a0 * n - lam * b1 * k + a2, b0 * n + b1 * k + b2)
        )
        shifted_spec = RecurrenceSpec(
            c,
            ROW_SHIFT,
            (
                (a0 + lam * b0) * n + lam * b1 * k + a2 + lam * (b1 + b2),
                b0 * n + b1 * k + b2,
            ),
        )
        t = build_triangle(base, 6)
        assert shift_row_gf(t, lam).satisfies(shifted_spec)

    def test_cleared_shift_with_denominator(self, ctx):
        # den^n A_n((q den + shift)/den) stays polynomial and scales the rows
        t = stirling2(ctx, 4)
        den = ctx.parse("lam + 1")
        sh = shift_row_gf(t, ctx.const(2), den=den)
        assert sh.scale == den
        q = ctx.var("q")
        for n in range(5):
            want = sum(
                (
                    t.entry(n, j) * (q * den + 2) ** j * den ** (n - j)
                    for j in range(n + 1)
                ),
                ctx.zero,
            )
            assert sh.row_gf(n) == want


class TestCompanion:
    def test_degenerate_matches_base_spec(self):
        # with no second shift the companion recurrence is the original
        # two-term one (unit clearing factor)
        c = VarContext(["n", "k", "q", "a0", "a1", "a2", "b0", "b1", "b2"])
        n, k, q, a0, a1, a2, b0, b1, b2 = (c.var(v) for v in c.names)
        comp = companion_spec(c, a0, a1, a2, b0, b1, b2, c.zero)
        assert comp.coeffs[0] == a0 * n + a1 * k + a2
        assert comp.coeffs[1] == b0 * n + b1 * k + b2

    def test_relation_holds_and_detects_corruption(self):
        c = VarContext(["n", "k", "q", "a0", "a1", "a2", "b0", "b1", "b2", "d", "lam"])
        zero = c.zero
        vals = {v: c.var(v) for v in ("a0", "a1", "a2", "b0", "b1", "b2", "d", "lam")}
        from tpcert.families import general_four_term_spec

        spec = general_four_term_spec(
            c, vals["a0"], vals["a1"], vals["a2"], vals["b0"], vals["b1"],
            vals["b2"], vals["d"], vals["lam"],
        )
        t = build_triangle(spec, 5)
        comp = companion_spec(
            c, vals["a0"], vals["a1"], vals["a2"], vals["b0"], vals["b1"],
            vals["b2"], vals["d"],
        )
        tc = build_triangle(comp, 5)
        assert check_companion_relation(t, tc, vals["lam"], vals["d"], 5)
        tc.rows[3][1] = tc.rows[3][1] + c.one
        assert not check_companion_relation(t, tc, vals["lam"], vals["d"], 5)

    def test_identity_when_no_shift_weight(self, ctx):
        # d = 0, lam = 1: the relation is plain equality of triangles
        t = pascal(ctx, 5)
        assert check_companion_relation(t, t, ctx.one, ctx.zero, 5)


class TestConvolution:
    def test_ones_gives_powers_of_two(self, ctx):
        t = pascal(ctx, 8)
        ones = [ctx.one] * 9
        z = triangle_convolution(t, ones, ones, 8)
        assert [int(v.const_value()) for v in z] == [2**n for n in range(9)]

    def test_delta_is_identity(self, ctx):
        t = pascal(ctx, 8)
        xs = [ctx.const(math.factorial(n)) for n in range(9)]
        delta = [ctx.one] + [ctx.zero] * 8
        z = triangle_convolution(t, xs, delta, 8)
        assert z == xs

    def test_length_checks(self, ctx):
        t = pascal(ctx, 3)
        with pytest.raises(ValueError):
            triangle_convolution(t, [ctx.one] * 2, [ctx.one] * 4, 3)


class TestProductFormula:
    def test_rising_product(self, ctx):
        # c0 = n-1, c1 = 1: rows multiply up as ((k-1) + q)
        n = ctx.var("n")
        t = build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (n - 1, ctx.one)), 6)
        assert check_product_formula(t, ctx.parse("k - 1 + q"), 6)
        assert not check_product_formula(t, ctx.parse("k + q"), 6)

    def test_factorial_and_double_factorial_counts(self, ctx):
        n = ctx.var("n")
        t = build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (n - 1, ctx.one)), 8)
        assert [int(g.specialize({"q": 1}).const_value()) for g in t.row_gfs()] == [
            math.factorial(i) for i in range(9)
        ]
        t2 = build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (n, n - 1)), 8)
        assert [int(g.specialize({"q": 1}).const_value()) for g in t2.row_gfs()] == [
            math.prod(range(1, 2 * i, 2)) if i else 1 for i in range(9)
        ]


def test_golden_round_trip(tmp_path, ctx):
    t = eulerian(ctx, 5)
    path = tmp_path / "eulerian.tsv"
    write_golden(t, path)
    assert read_golden(ctx, path) == t.rows


def test_walk_column_truncation_keeps_first_column(ctx):
    full = bell_walk(ctx, 8)
    cut = build_triangle(full.spec, 8, max_col=4)
    assert cut.first_column() == full.first_column()


def test_reciprocal_rejects_truncated_triangle(ctx):
    cut = build_triangle(bell_walk(ctx, 8).spec, 8, max_col=4)
    with pytest.raises(ValueError):
        reciprocal(cut)


def test_depth_zero_triangle(ctx):
    t = build_triangle(RecurrenceSpec(ctx, ROW_SHIFT, (ctx.one, ctx.one)), 0)
    assert t.rows == [[ctx.one]] and t.satisfies()


def test_spec_validation():
    c = VarContext(["n", "k", "q"])
    with pytest.raises(ValueError):
        RecurrenceSpec(c, "diagonal-walk", (c.one, c.one))
    with pytest.raises(ValueError):
        RecurrenceSpec(c, ROW_SHIFT, (c.one,))
    with pytest.raises(ValueError):
        RecurrenceSpec(c, COLUMN_WALK, (c.one, c.one))
    with pytest.raises(ValueError):
        RecurrenceSpec(c, ROW_SHIFT, (c.one, c.one), denominator=c.parse("q + 1"))


def test_walk_list_coefficients_out_of_range(ctx):
    spec = RecurrenceSpec(
        ctx, COLUMN_WALK, ((ctx.one,), (ctx.one, ctx.one), (ctx.zero, ctx.one))
    )
    t = build_triangle(spec, 1)
    assert t.satisfies()
    with pytest.raises(IndexError):
        build_triangle(spec, 3)
