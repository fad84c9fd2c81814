#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wz/expand.hpp"
#include "wz/seeds.hpp"
#include "wz/wz.hpp"

#include <random>

using namespace wz;

namespace {

std::mt19937 rng(90125);

URat urat(long num, long den = 1) { return URat(rat_of(num, den)); }

HarmonicAtom H(int s, int d = 1, Rat g = Rat(1)) { return HarmonicAtom{s, d, g}; }

} // namespace

TEST_CASE("harmonic atom evaluation") {
    CHECK(atom_value(H(1), 3) == rat_of(11, 6));            // 1 + 1/2 + 1/3
    CHECK(atom_value(H(2), 4) == rat_of(205, 144));         // 1 + 1/4 + 1/9 + 1/16
    CHECK(atom_value(H(1, 2), 2) == rat_of(25, 12));        // H_4
    CHECK(atom_value(H(1, 1, rat_of(1, 2)), 2) == rat_of(8, 3)); // 2 + 2/3
}

TEST_CASE("evaluate_harmonic_expr and H(1/2) identity") {
    HarmonicExpr e = HarmonicExpr::atom(H(1, 1, rat_of(1, 2)));
    // H_n(1/2) = 2 H_{2n} - H_n
    for (long n = 1; n <= 12; ++n) {
        Rat lhs = evaluate_harmonic_expr(e, n);
        Rat rhs = 2 * atom_value(H(1, 2), n) - atom_value(H(1), n);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("harmonic_reduce rewrites gamma = 1/2") {
    HarmonicExpr e = HarmonicExpr::atom(H(2, 1, rat_of(1, 2)));
    HarmonicExpr r = harmonic_reduce(e);
    HarmonicExpr expect =
        HarmonicExpr::atom(H(2, 2), urat(4)) + HarmonicExpr::atom(H(2, 1), urat(-1));
    CHECK(r == expect);
}

TEST_CASE("harmonic_reduce contracts complete orbits") {
    HarmonicExpr e = HarmonicExpr::atom(H(1, 1, rat_of(1, 3))) +
                     HarmonicExpr::atom(H(1, 1, rat_of(2, 3))) + HarmonicExpr::atom(H(1, 1));
    HarmonicExpr r = harmonic_reduce(e);
    CHECK(r == HarmonicExpr::atom(H(1, 3), urat(3)));

    // U_n = H_n(1/6) is kept as an atom
    HarmonicExpr u = HarmonicExpr::atom(H(1, 1, rat_of(1, 6)));
    CHECK(harmonic_reduce(u) == u);
}

TEST_CASE("harmonic_reduce is idempotent and evaluation-invariant") {
    std::uniform_int_distribution<int> ds(1, 3), dd(1, 2), dg(1, 3), dc(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        HarmonicExpr e;
        for (int t = 0; t < 3; ++t) {
            HarmonicMono m;
            int atoms = rng() % 3;
            for (int a = 0; a < atoms; ++a)
                m.push_back(H(ds(rng), dd(rng), rat_of(1, dg(rng))));
            std::sort(m.begin(), m.end());
            e.add_term(m, urat(dc(rng), 1 + (rng() % 3)));
        }
        HarmonicExpr r = harmonic_reduce(e);
        CHECK(harmonic_reduce(r) == r);
        for (long n = 1; n <= 8; ++n) CHECK(e.eval(n) == r.eval(n));
    }
}

TEST_CASE("pochhammer_expand: first orders") {
    // gamma=1: coefficient of a^1 is H_n
    ParamSeries s = pochhammer_expand(Rat(1), AffineExpr::sym(Sym::a), AffineExpr::sym(Sym::n),
                                      Sym::n, 2);
    MIdx a1{}, a2{};
    a1.e[0] = 1;
    a2.e[0] = 2;
    CHECK(s.at(a1) == HarmonicExpr::atom(H(1)));
    // coefficient of a^2 is (H_n^2 - H_n^(2))/2
    HarmonicExpr expect2;
    expect2.add_term({H(1), H(1)}, urat(1, 2));
    expect2.add_term({H(2)}, urat(-1, 2));
    CHECK(s.at(a2) == expect2);

    // gamma=1/2, order 1: coefficient is 2 H_{2n} - H_n after reduction
    ParamSeries h = pochhammer_expand(rat_of(1, 2), AffineExpr::sym(Sym::a),
                                      AffineExpr::sym(Sym::n), Sym::n, 1);
    HarmonicExpr expect_h = HarmonicExpr::atom(H(1, 2), urat(2)) + HarmonicExpr::atom(H(1), urat(-1));
    CHECK(h.at(a1) == expect_h);
}

TEST_CASE("finite-product oracle: expansion coefficients match literal products") {
    // For small n and order <= 4, expand prod_{i<dn}(gamma + i + s) literally
    // as a polynomial in one parameter and compare against the series.
    std::vector<std::tuple<Rat, int>> cases = {
        {Rat(1), 1}, {rat_of(1, 2), 1}, {rat_of(1, 3), 2}, {rat_of(2, 3), 1}, {Rat(1), 2}};
    for (auto& [gamma, dil] : cases) {
        ParamSeries s = pochhammer_factor_series(gamma, AffineExpr::sym(Sym::a), dil, 4);
        for (long n = 1; n <= 6; ++n) {
            // literal product over i of (gamma + i + a) / (gamma + i), a poly in a
            MultiPoly prod(Rat(1));
            for (long i = 0; i < dil * n; ++i) {
                Rat base = gamma + Rat(i);
                prod *= (MultiPoly::var(Sym::a) + MultiPoly(base)) * (Rat(1) / base);
            }
            for (int j = 0; j <= 4; ++j) {
                MIdx m{};
                m.e[0] = static_cast<uint8_t>(j);
                Rat expect = prod.coeff_of(Sym::a, j).is_zero()
                                 ? Rat(0)
                                 : prod.coeff_of(Sym::a, j).constant_value();
                Rat mine = s.at(m).eval(n);
                CHECK(mine == expect);
            }
        }
    }
}

TEST_CASE("expansion is multiplicative on random factor pairs") {
    std::uniform_int_distribution<int> dg(1, 3), dd(1, 2);
    for (int trial = 0; trial < 6; ++trial) {
        Rat g1 = rat_of(1, dg(rng)), g2 = rat_of(1, dg(rng));
        int d1 = dd(rng), d2 = dd(rng);
        AffineExpr s1 = AffineExpr::sym(Sym::a) + AffineExpr::sym(Sym::b, rat_of(1, 2));
        AffineExpr s2 = AffineExpr::sym(Sym::b, Rat(-1));
        ParamSeries f1 = pochhammer_factor_series(g1, s1, d1, 3);
        ParamSeries f2 = pochhammer_factor_series(g2, s2, d2, 3);
        ParamSeries prod = f1 * f2;
        // evaluate both routes at a few n
        for (long n = 1; n <= 4; ++n) {
            for (auto& [m, c] : prod.coef()) {
                Rat direct = c.eval(n);
                Rat conv(0);
                for (auto& [m1, c1] : f1.coef())
                    for (auto& [m2, c2] : f2.coef())
                        if (m1.plus(m2) == m) conv += c1.eval(n) * c2.eval(n);
                CHECK(direct == conv);
            }
        }
    }
}

TEST_CASE("expand_summand: Example I coefficients match the paper displays") {
    GammaTerm F = instantiate_term_expr("Dougall5F4(a, b, c, 1+d-n, k+e+n)");
    auto p = find_wz_mate(F);
    REQUIRE(p.has_value());
    IdentitySkeleton sk = assemble_identity(*p, -1, true);
    SymMap zeros{};
    CoeffTable table = expand_summand(sk.rhs, zeros, 1);
    REQUIRE(table.start == 1);

    // base must be a_n = (-1/4)^n (1)_n / (1/2)_n
    SymMap none{};
    for (long n = 1; n <= 6; ++n) {
        Rat an = rat_pow(rat_of(-1, 4), n) * rat_pochhammer(Rat(1), n) / rat_pochhammer(rat_of(1, 2), n);
        CHECK(table.base.eval(none, n) == an);
    }

    // degree 0: 5/n^3
    MIdx m0{};
    REQUIRE(table.entry(m0) != nullptr);
    for (long n = 1; n <= 6; ++n)
        CHECK(table.entry(m0)->eval(n) == Rat(5) / rat_pow(Rat(n), 3));

    // degree a^1: -5 H_{2n}/n^3 - 6/n^4 ; degree b^1: 10 H_n/n^3 - 3/n^4
    MIdx ma{}, mb{}, me{};
    ma.e[0] = 1;
    mb.e[1] = 1;
    me.e[4] = 1;
    REQUIRE(table.entry(ma) != nullptr);
    REQUIRE(table.entry(mb) != nullptr);
    for (long n = 1; n <= 6; ++n) {
        Rat n3 = rat_pow(Rat(n), 3), n4 = rat_pow(Rat(n), 4);
        Rat expect_a = Rat(-5) * atom_value(H(1, 2), n) / n3 - Rat(6) / n4;
        Rat expect_b = Rat(10) * atom_value(H(1), n) / n3 - Rat(3) / n4;
        CHECK(table.entry(ma)->eval(n) == expect_a);
        CHECK(table.entry(mb)->eval(n) == expect_b);
        // [e^1] equals [a^1] per the paper's list
        CHECK(table.entry(me)->eval(n) == expect_a);
    }
}

TEST_CASE("degree-0 column matches eval_summand") {
    GammaTerm t = instantiate_term_expr("Gauss2F1(a, b, c+1/2, k)");
    NormalForm nf = normal_form_at(t, Sym::k);
    SymMap zeros{};
    CoeffTable table = expand_summand(nf.summand, zeros, 0);
    SymMap zero_params{};
    for (Sym s : {Sym::a, Sym::b, Sym::c, Sym::d, Sym::e}) zero_params[sym_index(s)] = Rat(0);
    for (long m = std::max(1L, table.start); m <= table.start + 8; ++m) {
        Rat direct = nf.summand.eval(zero_params, m);
        Rat via = table.eval_entry(MIdx{}, m);
        CHECK(direct == via);
    }
}
