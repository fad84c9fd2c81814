#ifndef WZ_GAMMA_TERM_HPP
#define WZ_GAMMA_TERM_HPP

#include "wz/affine.hpp"
#include "wz/ratfunc.hpp"

#include <map>

namespace wz {

// A product of polynomial factors with integer exponents (num > 0, den < 0)
// and a rational scalar.  Used to carry shift quotients in factored form so
// Gosper's decomposition can cancel factors cheaply.
struct FactoredRat {
    Rat scalar{1};
    std::vector<std::pair<MultiPoly, int>> factors;

    void push(const MultiPoly& p, int exp) {
        if (exp == 0) return;
        if (p.is_constant()) {
            scalar *= rat_pow(p.constant_value(), exp);
            return;
        }
        // keep factors integer-primitive, fold content into the scalar
        Rat c = p.integer_content();
        scalar *= rat_pow(c, exp);
        MultiPoly pp = p * (Rat(1) / c);
        for (auto& [f, e] : factors) {
            if (f == pp) {
                e += exp;
                return;
            }
        }
        factors.emplace_back(pp, exp);
    }

    void mul(const FactoredRat& o) {
        scalar *= o.scalar;
        for (auto& [f, e] : o.factors) push(f, e);
    }

    RatFunc to_ratfunc() const {
        MultiPoly num(scalar), den(Rat(1));
        for (auto& [f, e] : factors) {
            if (e > 0) num *= f.pow(e);
            else den *= f.pow(-e);
        }
        return RatFunc(num, den);
    }

    // Convert to a canonical rational function, cancelling factor pairs
    // structurally: exact matches were merged by push(); a primitive linear
    // factor divides a chunk iff its pseudo-remainder vanishes; nonlinear
    // pairs get a full gcd.  Afterwards numerator and denominator are
    // pairwise coprime and the cheap constructor applies.
    RatFunc to_ratfunc_smart() const {
        std::vector<MultiPoly> num, den;
        for (auto& [f, e] : factors)
            for (int i = 0; i < std::abs(e); ++i) (e > 0 ? num : den).push_back(f);

        auto shared_var = [](const MultiPoly& x, const MultiPoly& y) -> std::optional<Sym> {
            for (int i = kNumSyms - 1; i >= 0; --i)
                if (x.depends_on(static_cast<Sym>(i)) && y.depends_on(static_cast<Sym>(i)))
                    return static_cast<Sym>(i);
            return std::nullopt;
        };

        for (auto& df : den) {
            if (df.is_constant()) continue;
            for (auto& nf : num) {
                if (nf.is_constant()) continue;
                bool n_lin = nf.total_degree() <= 1, d_lin = df.total_degree() <= 1;
                if (n_lin && d_lin) continue; // merged by push() if equal, else coprime
                auto v = shared_var(nf, df);
                if (!v) continue;
                if (n_lin != d_lin) {
                    const MultiPoly& lin = n_lin ? nf : df;
                    MultiPoly& big = n_lin ? df : nf;
                    if (big.degree(*v) < 1 || lin.degree(*v) < 1) continue;
                    MultiPoly r = pseudo_rem(big, lin, *v);
                    if (r.is_zero()) {
                        big = exact_divide(big, lin, *v);
                        (n_lin ? nf : df) = MultiPoly(Rat(1));
                    }
                } else {
                    MultiPoly g = poly_gcd(nf, df, *v);
                    if (!g.is_constant()) {
                        nf = exact_divide(nf, g, *v);
                        df = exact_divide(df, g, *v);
                    }
                }
                if (df.is_constant()) break;
            }
        }
        MultiPoly np(scalar), dp(Rat(1));
        for (auto& f : num) np = f.is_constant() ? np * f.constant_value() : np * f;
        for (auto& f : den) dp = f.is_constant() ? dp * f.constant_value() : dp * f;
        return RatFunc::from_reduced(np, dp);
    }

    Rat eval_all(const SymMap& vals) const {
        Rat r = scalar;
        for (auto& [f, e] : factors) {
            Rat v = f.eval_all(vals);
            if (v == 0 && e < 0) throw error("factored quotient: pole at evaluation point");
            r *= rat_pow(v, e);
        }
        return r;
    }
};

// Proper hypergeometric term:
//   prefactor * (-1)^{sign_exponent} * prod base^{exponent} * prod Gamma(arg)^{power}
// with affine arguments/exponents over {a..e,n,k}.
class GammaTerm {
public:
    RatFunc prefactor{Rat(1)};
    AffineExpr sign_exponent;                         // argument of (-1)^.
    std::vector<std::pair<Rat, AffineExpr>> const_powers; // (base > 0, exponent)
    std::vector<std::pair<AffineExpr, int>> gamma_factors; // (argument, power), merged

    GammaTerm() = default;
    explicit GammaTerm(RatFunc pref) : prefactor(std::move(pref)) {}

    bool is_zero() const { return prefactor.is_zero(); }

    void add_gamma(const AffineExpr& arg, int power) {
        if (power == 0) return;
        for (auto& [a, p] : gamma_factors) {
            if (a == arg) {
                p += power;
                return;
            }
        }
        gamma_factors.emplace_back(arg, power);
    }

    void add_const_power(const Rat& base, const AffineExpr& expo) {
        if (base <= 0) throw error("const power base must be positive");
        if (base == 1) return;
        for (auto& [b, e] : const_powers) {
            if (b == base) {
                e = e + expo;
                return;
            }
        }
        const_powers.emplace_back(base, expo);
    }

    void cleanup() {
        std::erase_if(gamma_factors, [](auto& f) { return f.second == 0; });
        std::erase_if(const_powers, [](auto& f) {
            return f.second.is_constant() && f.second.constant == 0;
        });
        std::sort(gamma_factors.begin(), gamma_factors.end(),
                  [](auto& x, auto& y) { return x.first < y.first; });
        std::sort(const_powers.begin(), const_powers.end(),
                  [](auto& x, auto& y) { return x.first < y.first; });
        // normalize sign exponent modulo 2 in the constant part
        Rat c = sign_exponent.constant;
        if (is_integer(c)) {
            Int m = c.get_num() % 2;
            if (m < 0) m += 2;
            sign_exponent.constant = Rat(m);
        }
    }

    GammaTerm operator*(const GammaTerm& o) const {
        GammaTerm r = *this;
        r.prefactor = r.prefactor * o.prefactor;
        r.sign_exponent = r.sign_exponent + o.sign_exponent;
        for (auto& [b, e] : o.const_powers) r.add_const_power(b, e);
        for (auto& [a, p] : o.gamma_factors) r.add_gamma(a, p);
        r.cleanup();
        return r;
    }

    GammaTerm scaled(const RatFunc& f) const {
        GammaTerm r = *this;
        r.prefactor = r.prefactor * f;
        return r;
    }

    // Substitute symbols by affine expressions everywhere (simultaneously).
    GammaTerm subst(const std::map<Sym, AffineExpr>& repl) const {
        GammaTerm r;
        std::array<std::optional<MultiPoly>, kNumSyms> polys{};
        for (auto& [s, ae] : repl) polys[sym_index(s)] = ae.to_poly();
        r.prefactor = prefactor.subst_all(polys);
        r.sign_exponent = sign_exponent.subst(repl);
        for (auto& [b, e] : const_powers) r.add_const_power(b, e.subst(repl));
        for (auto& [a, p] : gamma_factors) r.add_gamma(a.subst(repl), p);
        r.cleanup();
        return r;
    }

    GammaTerm subst(Sym s, const AffineExpr& e) const { return subst(std::map<Sym, AffineExpr>{{s, e}}); }

    // T(var+1)/T(var) as a factored rational function.  Every Gamma argument
    // must have an integer coefficient on var, otherwise the term is not
    // hypergeometric in var.
    FactoredRat shift_quotient_factored(Sym var) const {
        FactoredRat out;
        // prefactor ratio
        if (prefactor.is_zero()) throw error("shift quotient of zero term");
        {
            MultiPoly vshift = MultiPoly::var(var) + MultiPoly(Rat(1));
            MultiPoly n1 = prefactor.num().subst(var, vshift);
            MultiPoly d1 = prefactor.den().subst(var, vshift);
            out.push(n1, 1);
            out.push(prefactor.den(), 1);
            out.push(d1, -1);
            out.push(prefactor.num(), -1);
        }
        // sign factor
        {
            Rat c = sign_exponent.coeff(var);
            if (!is_integer(c)) throw error("sign exponent has non-integer coefficient on shift variable");
            if (to_long(c) % 2 != 0) out.scalar = -out.scalar;
        }
        // constant powers
        for (auto& [b, e] : const_powers) {
            Rat c = e.coeff(var);
            if (!is_integer(c)) throw error("constant power has non-integer coefficient on shift variable");
            out.scalar *= rat_pow(b, to_long(c));
        }
        // gamma factors: Gamma(arg + c)/Gamma(arg) = (arg)_c
        for (auto& [arg, p] : gamma_factors) {
            Rat cr = arg.coeff(var);
            if (!is_integer(cr))
                throw error("Gamma argument " + arg.str() + " is not hypergeometric in " + sym_name(var));
            long c = to_long(cr);
            if (c == 0) continue;
            MultiPoly base = arg.to_poly();
            if (c > 0) {
                for (long j = 0; j < c; ++j) out.push(base + MultiPoly(Rat(j)), p);
            } else {
                for (long j = 1; j <= -c; ++j) out.push(base - MultiPoly(Rat(j)), -p);
            }
        }
        return out;
    }

    RatFunc shift_quotient(Sym var) const { return shift_quotient_factored(var).to_ratfunc_smart(); }

    std::string str() const {
        std::ostringstream os;
        os << prefactor.str();
        if (!(sign_exponent.is_constant() && sign_exponent.constant == 0))
            os << " * (-1)^(" << sign_exponent.str() << ")";
        for (auto& [b, e] : const_powers) os << " * " << b.get_str() << "^(" << e.str() << ")";
        for (auto& [a, p] : gamma_factors) {
            os << " * Gamma(" << a.str() << ")";
            if (p != 1) os << "^" << p;
        }
        return os.str();
    }
};

inline GammaTerm shift_quotient_term(const GammaTerm& t, Sym var, long by) {
    // T(var + by) as a GammaTerm (affine substitution var -> var + by)
    AffineExpr repl = AffineExpr::sym(var) + Rat(by);
    return t.subst(var, repl);
}

} // namespace wz

#endif
