#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wz/gamma_numeric.hpp"
#include "wz/parser.hpp"
#include "wz/pochhammer.hpp"
#include "wz/seeds.hpp"

#include <random>

using namespace wz;

namespace {

std::mt19937 rng(77813);

SymMap random_params(int span = 5) {
    SymMap m{};
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 3);
    for (Sym s : {Sym::a, Sym::b, Sym::c, Sym::d, Sym::e})
        m[sym_index(s)] = rat_of(num(rng), den(rng));
    return m;
}

GammaTerm gamma_of(const std::string& arg, int pow = 1) {
    GammaTerm t;
    t.add_gamma(parse_affine_expr(arg), pow);
    return t;
}

} // namespace

TEST_CASE("parse_term_expr on the paper instantiations") {
    auto [name, args] = parse_term_expr("Dougall5F4(a, b, c, 1+d-n, k+e+n)");
    CHECK(name == "Dougall5F4");
    REQUIRE(args.size() == 5);
    CHECK(args[0] == AffineExpr::sym(Sym::a));
    AffineExpr d_arg = AffineExpr(Rat(1)) + AffineExpr::sym(Sym::d) - AffineExpr::sym(Sym::n);
    CHECK(args[3] == d_arg);
    AffineExpr k_arg = AffineExpr::sym(Sym::k) + AffineExpr::sym(Sym::e) + AffineExpr::sym(Sym::n);
    CHECK(args[4] == k_arg);

    auto [name2, args2] = parse_term_expr("Seed9(1+a-2*n, 1/2+b-n, 1/2+c-n, k+d+n)");
    CHECK(name2 == "Seed9");
    CHECK(args2.size() == 4);
    CHECK(args2[1].constant == rat_of(1, 2));
    CHECK(args2[1].coeff(Sym::n) == Rat(-1));

    CHECK_THROWS_AS(parse_term_expr("Gauss2F1(a,b"), parse_error);
    CHECK_THROWS_AS(parse_term_expr("Gauss2F1(a, 1/0, c, k)"), parse_error);
    CHECK_THROWS_AS(parse_term_expr("Gauss2F1(a, x, c, k)"), parse_error);
}

TEST_CASE("parse / print / parse round-trip") {
    std::vector<std::string> exprs = {"a", "1+d-n", "k+e+n", "1/2+b-n", "2*a-b-d-e+k+1/2",
                                      "-a+3*d-2", "a+c-d+k+3/2"};
    for (auto& s : exprs) {
        AffineExpr e1 = parse_affine_expr(s);
        AffineExpr e2 = parse_affine_expr(e1.str());
        CHECK(e1 == e2);
    }
}

TEST_CASE("shift_quotient basics") {
    CHECK(gamma_of("k+1").shift_quotient(Sym::k) ==
          RatFunc::poly(MultiPoly::var(Sym::k) + MultiPoly(Rat(1))));
    CHECK(gamma_of("2*a+k").shift_quotient(Sym::k) ==
          RatFunc::poly(MultiPoly::var(Sym::a) * Rat(2) + MultiPoly::var(Sym::k)));

    // (1)_n/(1/2)_n * (1/4)^n * (-1)^n as a Gamma term
    GammaTerm t = gamma_of("n+1") * gamma_of("n+1/2", -1) * gamma_of("1/2");
    t.add_const_power(rat_of(1, 4), AffineExpr::sym(Sym::n));
    t.sign_exponent = AffineExpr::sym(Sym::n);
    RatFunc q = t.shift_quotient(Sym::n);
    // -(n+1)/(4n+2)
    RatFunc expect(-(MultiPoly::var(Sym::n) + MultiPoly(Rat(1))),
                   MultiPoly::var(Sym::n) * Rat(4) + MultiPoly(Rat(2)));
    CHECK(q == expect);

    GammaTerm bad = gamma_of("a");
    bad.add_gamma(AffineExpr::sym(Sym::k, rat_of(1, 2)), 1);
    CHECK_THROWS_AS(bad.shift_quotient(Sym::k), error);
}

TEST_CASE("shift quotient is multiplicative") {
    GammaTerm t1 = gamma_of("n+1") * gamma_of("a+2*n") * gamma_of("b+n", -1);
    GammaTerm t2 = gamma_of("n+1/2", -1) * gamma_of("c+n");
    t1.add_const_power(Rat(2), AffineExpr::sym(Sym::n, Rat(3)));
    RatFunc q1 = t1.shift_quotient(Sym::n);
    RatFunc q2 = t2.shift_quotient(Sym::n);
    RatFunc q12 = (t1 * t2).shift_quotient(Sym::n);
    CHECK(q12 == q1 * q2);
}

TEST_CASE("normal_form splits constant and summand") {
    // Gamma(n+1)/Gamma(n+1/2) -> const Gamma(1)/Gamma(1/2), summand (1)_n/(1/2)_n
    GammaTerm t = gamma_of("n+1") * gamma_of("n+1/2", -1);
    NormalForm nf = normal_form(t, Sym::n);
    CHECK(nf.summand.factors.size() == 2);
    CHECK(nf.summand.ratio_base == Rat(1));
    CHECK(nf.summand.start == 0);
    REQUIRE(nf.gamma_constant.gamma_factors.size() == 2);

    SymMap none{};
    CHECK(nf.summand.eval(none, 2) == Rat(1 * 2) / (rat_of(1, 2) * rat_of(3, 2)));

    // with ratio base 4^{-n}
    GammaTerm t2 = t;
    t2.add_const_power(Rat(4), AffineExpr::sym(Sym::n, Rat(-1)));
    NormalForm nf2 = normal_form(t2, Sym::n);
    CHECK(nf2.summand.ratio_base == rat_of(1, 4));

    // Gamma(n) is singular at the base point
    CHECK_THROWS_AS(normal_form(gamma_of("n"), Sym::n), error);
    // ... but has a valid normal form from n >= 1
    NormalForm nf3 = normal_form_at(gamma_of("n"), Sym::n);
    CHECK(nf3.summand.start == 1);
    CHECK(nf3.summand.eval(none, 4) == Rat(6)); // (4-1)! = 6
}

TEST_CASE("normal form summand ratio matches shift quotient") {
    // spec invariant: eval(summand at m)/eval(at m-1) == shift_quotient at m-1
    std::vector<std::string> terms = {"Gauss2F1(a,b,c,k)", "Seed1(a,c,k)", "Seed10(a,d,k)",
                                      "Dougall5F4(a,b,c,d,k)"};
    for (auto& txt : terms) {
        GammaTerm t = instantiate_term_expr(txt);
        for (int trial = 0; trial < 6; ++trial) {
            SymMap params = random_params();
            try {
                NormalForm nf = normal_form_at(t, Sym::k);
                RatFunc q = t.shift_quotient(Sym::k);
                for (long m = std::max(1L, nf.summand.start + 1); m <= nf.summand.start + 12; ++m) {
                    Rat vm = nf.summand.eval(params, m);
                    Rat vm1 = nf.summand.eval(params, m - 1);
                    if (vm1 == 0) continue;
                    SymMap at = params;
                    at[sym_index(Sym::k)] = Rat(m - 1);
                    Rat expect = q.eval_all(at);
                    CHECK(vm / vm1 == expect);
                }
                break; // this parameter draw worked
            } catch (const error&) {
                continue; // pole at this random point; resample
            }
        }
    }
}

TEST_CASE("seed catalog shape") {
    auto& seeds = seed_catalog();
    REQUIRE(seeds.size() == 13);
    std::vector<std::string> names;
    std::vector<size_t> arities;
    for (auto& s : seeds) {
        names.push_back(s.name);
        arities.push_back(s.slots.size());
    }
    std::vector<std::string> want_names = {"Gauss2F1", "Dixon3F2",  "Watson3F2",   "Dougall5F4",
                                           "Dougall7F6", "Balanced3F2", "Seed1",   "Seed2",
                                           "Seed3",     "Seed4",     "Seed7",     "Seed9",
                                           "Seed10"};
    std::vector<size_t> want_arity = {4, 4, 4, 5, 6, 5, 3, 4, 4, 3, 5, 4, 3};
    CHECK(names == want_names);
    CHECK(arities == want_arity);
    CHECK(find_seed("Gauss2F1").slots ==
          std::vector<Sym>{Sym::a, Sym::b, Sym::c, Sym::k});
    CHECK(find_seed("Dougall7F6").slots ==
          std::vector<Sym>{Sym::a, Sym::b, Sym::c, Sym::d, Sym::e, Sym::k});
}

TEST_CASE("instantiate checks arity and integrality") {
    auto& g = find_seed("Gauss2F1");
    CHECK_THROWS_AS(instantiate(g, {AffineExpr::sym(Sym::a), AffineExpr::sym(Sym::b)}), error);
    CHECK_THROWS_AS(instantiate_term_expr("Gauss2F1(a, b, c, k+1/2*n)"), error);
    GammaTerm f = instantiate_term_expr("Dougall5F4(a, b, c, 1+d-n, k+e+n)");
    CHECK(f.gamma_factors.size() > 5);
}

TEST_CASE("every seed is hypergeometric in k at random rational slot values") {
    for (auto& s : seed_catalog()) {
        GammaTerm t = s.tmpl;
        CHECK_NOTHROW(t.shift_quotient(Sym::k));
    }
}

TEST_CASE("seed transcription golden check against numeric Gamma products") {
    // evaluate each seed at a generic rational point two ways: via normal
    // form in k (exact pochhammer evaluation relative to k=0) and via the
    // mpfr Gamma-product oracle.  The constant (-1)^{params} factor cancels
    // in the ratio T(m)/T(0), so it is stripped before evaluating.
    mpfr_prec_t prec = 256;
    for (auto& s : seed_catalog()) {
        GammaTerm t = s.tmpl;
        t.sign_exponent = AffineExpr::sym(Sym::k, t.sign_exponent.coeff(Sym::k));
        bool done = false;
        for (int trial = 0; trial < 200 && !done; ++trial) {
            SymMap params{};
            std::uniform_int_distribution<int> num(1, 6);
            std::uniform_int_distribution<int> whole(1, 4);
            for (Sym ps : {Sym::a, Sym::b, Sym::c, Sym::d, Sym::e})
                params[sym_index(ps)] = Rat(whole(rng)) + rat_of(num(rng), 7);
            try {
                NormalForm nf = normal_form_at(t, Sym::k);
                if (nf.summand.start > 0) continue;
                long m = 3;
                Rat ratio_exact = nf.summand.eval(params, m) / nf.summand.eval(params, 0);
                SymMap at0 = params, atm = params;
                at0[sym_index(Sym::k)] = Rat(0);
                atm[sym_index(Sym::k)] = Rat(m);
                BigFloat v0 = eval_gamma_term_numeric(t, at0, prec);
                BigFloat vm = eval_gamma_term_numeric(t, atm, prec);
                BigFloat ratio_num = vm / v0;
                BigFloat diff = ratio_num - BigFloat::from_rat(ratio_exact, prec);
                CHECK(diff.certified_below_pow10(40));
                done = true;
            } catch (const error&) {
                continue; // pole; resample
            }
        }
        CHECK_MESSAGE(done, "no valid evaluation point found for seed ", s.name);
    }
}
