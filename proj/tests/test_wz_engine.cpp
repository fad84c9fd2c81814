#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wz/seeds.hpp"
#include "wz/wz.hpp"

#include <random>

using namespace wz;

namespace {

std::mt19937 rng(551234);

SymMap generic_params() {
    SymMap m{};
    std::uniform_int_distribution<int> num(1, 6);
    std::uniform_int_distribution<int> whole(-2, 2);
    for (Sym s : {Sym::a, Sym::b, Sym::c, Sym::d, Sym::e})
        m[sym_index(s)] = Rat(whole(rng)) + rat_of(num(rng), 7);
    return m;
}

GammaTerm gamma_of(const std::string& arg, int pow = 1) {
    GammaTerm t;
    t.add_gamma(parse_affine_expr(arg), pow);
    return t;
}

} // namespace

TEST_CASE("gosper decides the classic cases") {
    // t(k) = k * k!  ->  T(k) = k!, certificate 1/k
    GammaTerm t1 = gamma_of("k+1");
    t1.prefactor = RatFunc::var(Sym::k);
    auto c1 = gosper(t1, Sym::k);
    REQUIRE(c1.has_value());
    CHECK(*c1 == RatFunc(MultiPoly(Rat(1)), MultiPoly::var(Sym::k)));

    // t(k) = 1/k has no hypergeometric antidifference
    GammaTerm t2 = gamma_of("k") * gamma_of("k+1", -1);
    auto c2 = gosper(t2, Sym::k);
    CHECK(!c2.has_value());

    // t(k) = 1  ->  T(k) = k
    GammaTerm t3;
    auto c3 = gosper(t3, Sym::k);
    REQUIRE(c3.has_value());
    CHECK(*c3 == RatFunc::var(Sym::k));

    // t(k) = k has certificate (k-1)/2: T = k(k-1)/2
    GammaTerm t4;
    t4.prefactor = RatFunc::var(Sym::k);
    auto c4 = gosper(t4, Sym::k);
    REQUIRE(c4.has_value());
    CHECK(*c4 == RatFunc(MultiPoly::var(Sym::k) - MultiPoly(Rat(1)), MultiPoly(Rat(2))));
}

TEST_CASE("gosper on a parameterized term") {
    // t(k) = (a)_k has antidifference (a)_k * (k + something)? check decision only:
    // sum of (a)_k: T(k+1)-T(k) = (a)_k with T = (a)_k (k+a-1)/(a-1)
    GammaTerm t = gamma_of("a+k") * gamma_of("a", -1);
    auto c = gosper(t, Sym::k);
    REQUIRE(c.has_value());
    RatFunc expect(MultiPoly::var(Sym::k) + MultiPoly::var(Sym::a) - MultiPoly(Rat(1)),
                   MultiPoly::var(Sym::a) - MultiPoly(Rat(1)));
    CHECK(*c == expect);
}

TEST_CASE("find_wz_mate on Gamma(n+k) is decision-consistent") {
    GammaTerm F = gamma_of("n+k");
    auto p = find_wz_mate(F);
    REQUIRE(p.has_value());
    CHECK(verify_wz(*p));
}

TEST_CASE("find_wz_mate: Example I instantiation") {
    GammaTerm F = instantiate_term_expr("Dougall5F4(a, b, c, 1+d-n, k+e+n)");
    auto p = find_wz_mate(F);
    REQUIRE(p.has_value());
    CHECK(verify_wz(*p));

    // broken certificate must fail verification
    WZPair broken = *p;
    broken.certificate = broken.certificate + RatFunc(Rat(1));
    CHECK(!verify_wz(broken));
}

TEST_CASE("telescoping holds numerically on an integer grid") {
    GammaTerm F = instantiate_term_expr("Dougall5F4(a, b, c, 1+d-n, k+e+n)");
    auto p = find_wz_mate(F);
    REQUIRE(p.has_value());
    RatFunc rho_n = F.shift_quotient(Sym::n);
    RatFunc rho_k = F.shift_quotient(Sym::k);

    for (int rep = 0; rep < 3; ++rep) {
        SymMap params = generic_params();
        // values relative to F(0,0) via quotient products
        const int N = 9;
        std::vector<std::vector<Rat>> val(N + 2, std::vector<Rat>(N + 2));
        try {
            val[0][0] = 1;
            for (int n = 0; n <= N; ++n) {
                SymMap at = params;
                at[sym_index(Sym::n)] = Rat(n);
                if (n > 0) {
                    SymMap prev = params;
                    prev[sym_index(Sym::n)] = Rat(n - 1);
                    prev[sym_index(Sym::k)] = Rat(0);
                    val[n][0] = val[n - 1][0] * rho_n.eval_all(prev);
                }
                for (int k = 0; k <= N; ++k) {
                    SymMap cur = params;
                    cur[sym_index(Sym::n)] = Rat(n);
                    cur[sym_index(Sym::k)] = Rat(k);
                    if (k > 0) {
                        SymMap pk = cur;
                        pk[sym_index(Sym::k)] = Rat(k - 1);
                        val[n][k] = val[n][k - 1] * rho_k.eval_all(pk);
                    }
                }
            }
            for (int n = 0; n < N; ++n)
                for (int k = 0; k < N; ++k) {
                    SymMap cur = params;
                    cur[sym_index(Sym::n)] = Rat(n);
                    cur[sym_index(Sym::k)] = Rat(k);
                    SymMap curk1 = cur;
                    curk1[sym_index(Sym::k)] = Rat(k + 1);
                    Rat lhs = val[n + 1][k] - val[n][k];
                    Rat rhs = p->certificate.eval_all(curk1) * val[n][k + 1] -
                              p->certificate.eval_all(cur) * val[n][k];
                    CHECK(lhs == rhs);
                }
        } catch (const error&) {
            continue; // pole at this draw, try another
        }
    }
}

TEST_CASE("assemble_identity: Example I degree-0 is the Apery summand") {
    GammaTerm F = instantiate_term_expr("Dougall5F4(a, b, c, 1+d-n, k+e+n)");
    auto p = find_wz_mate(F);
    REQUIRE(p.has_value());
    IdentitySkeleton sk = assemble_identity(*p, -1, true);
    CHECK(sk.boundary_status == BoundaryStatus::clean);
    CHECK(sk.rhs.start == 1);

    // at (a..e) = 0 the rhs summand must equal a_n * 5/n^3 with
    // a_n = (-1/4)^n (1)_n / (1/2)_n
    SymMap zero{};
    for (Sym s : {Sym::a, Sym::b, Sym::c, Sym::d, Sym::e}) zero[sym_index(s)] = Rat(0);
    for (long n = 1; n <= 10; ++n) {
        Rat an = rat_pow(rat_of(-1, 4), n) * rat_pochhammer(Rat(1), n) / rat_pochhammer(rat_of(1, 2), n);
        Rat expect = an * Rat(5) / rat_pow(Rat(n), 3);
        CHECK(sk.rhs.eval(zero, n) == expect);
    }

    // lhs at k >= 0: F(0,k) / gamma-constant; check the ratio against the
    // shift quotient of F at n=0 to make sure the split is consistent
    RatFunc rho_k0 = F.subst(Sym::n, AffineExpr(Rat(0))).shift_quotient(Sym::k);
    SymMap params = generic_params();
    for (int attempt = 0; attempt < 5; ++attempt, params = generic_params()) {
        try {
            for (long k = 1; k <= 6; ++k) {
                SymMap at = params;
                at[sym_index(Sym::k)] = Rat(k - 1);
                CHECK(sk.lhs.eval(params, k) / sk.lhs.eval(params, k - 1) == rho_k0.eval_all(at));
            }
            break;
        } catch (const error&) {
            continue;
        }
    }
}
