#ifndef WZ_POCHHAMMER_HPP
#define WZ_POCHHAMMER_HPP

#include "wz/gamma_term.hpp"
#include "wz/upoly.hpp"

namespace wz {

// One rising-factorial factor (gamma + shift)_{dilation * index}^power with
// gamma in (0,1] and shift a parameter-only linear form (zero constant).
// Anchoring all integer offsets into the rational prefactor keeps the
// factor list pole-free for every index >= 0 at the expansion point.
struct PochFactor {
    Rat gamma;         // in (0,1]
    AffineExpr shift;  // linear in a..e, constant 0
    int dilation = 1;  // >= 1
    int power = 1;     // nonzero, merged

    bool same_base(const PochFactor& o) const {
        return gamma == o.gamma && shift == o.shift && dilation == o.dilation;
    }
    bool operator<(const PochFactor& o) const {
        if (dilation != o.dilation) return dilation < o.dilation;
        if (gamma != o.gamma) return gamma < o.gamma;
        if (!(shift == o.shift)) return shift < o.shift;
        return power < o.power;
    }
    std::string str(Sym index) const {
        std::ostringstream os;
        AffineExpr base = shift + gamma;
        os << "(" << base.str() << ")_{" << dilation << sym_name(index) << "}";
        if (power != 1) os << "^" << power;
        return os.str();
    }
};

class PochhammerSummand {
public:
    Sym index = Sym::n;
    long start = 0;      // summation / validity start
    Rat ratio_base{1};   // z in z^index
    RatFunc prefactor{Rat(1)}; // rational in index and parameters
    std::vector<PochFactor> factors;

    void add_factor(const Rat& gamma, const AffineExpr& shift, int dilation, int power) {
        if (power == 0) return;
        if (gamma <= 0 || gamma > 1) throw error("poch factor gamma out of (0,1]");
        if (dilation < 1) throw error("poch factor dilation must be >= 1");
        PochFactor f{gamma, shift, dilation, power};
        for (auto& g : factors) {
            if (g.same_base(f)) {
                g.power += power;
                return;
            }
        }
        factors.push_back(std::move(f));
    }

    void cleanup() {
        std::erase_if(factors, [](const PochFactor& f) { return f.power == 0; });
        std::sort(factors.begin(), factors.end());
    }

    PochhammerSummand operator*(const PochhammerSummand& o) const {
        if (index != o.index) throw error("summand product: mismatched index symbols");
        PochhammerSummand r = *this;
        r.start = std::max(start, o.start);
        r.ratio_base *= o.ratio_base;
        r.prefactor = r.prefactor * o.prefactor;
        for (auto& f : o.factors) r.add_factor(f.gamma, f.shift, f.dilation, f.power);
        r.cleanup();
        return r;
    }

    // Exact value at integer index m with given parameter values.
    Rat eval(const SymMap& params, long m) const {
        if (m < 0) throw error("eval_summand: negative index");
        SymMap vals = params;
        vals[sym_index(index)] = Rat(m);
        Rat v = prefactor.eval_all(vals) * rat_pow(ratio_base, m);
        for (auto& f : factors) {
            Rat base = f.gamma + f.shift.eval(params);
            long len = static_cast<long>(f.dilation) * m;
            Rat p(1);
            for (long j = 0; j < len; ++j) {
                Rat term = base + Rat(j);
                if (term == 0 && f.power < 0)
                    throw error("eval_summand: factor " + f.str(index) + " vanishes at index " +
                                std::to_string(m));
                p *= term;
            }
            if (p == 0 && f.power < 0)
                throw error("eval_summand: factor " + f.str(index) + " vanishes at index " + std::to_string(m));
            v *= rat_pow(p, f.power);
        }
        return v;
    }

    std::string str() const {
        std::ostringstream os;
        os << prefactor.str();
        if (ratio_base != 1) os << " * (" << ratio_base.get_str() << ")^" << sym_name(index);
        for (auto& f : factors) os << " * " << f.str(index);
        return os.str();
    }
};

struct NormalForm {
    GammaTerm gamma_constant;   // index-free
    PochhammerSummand summand;  // valid for index >= summand.start
};

namespace detail {

// gamma in (0,1] with q = gamma + m, m integer.
inline void anchor_gamma(const Rat& q, Rat& gamma, long& m) {
    if (is_integer(q)) {
        gamma = Rat(1);
        m = to_long(q) - 1;
    } else {
        Int fl = floor_rat(q);
        gamma = q - Rat(fl);
        m = to_long(fl);
    }
}

// (base + L)_m with integer m, pushed as linear factors: exponent sign says
// whether the whole pochhammer sits in the numerator or denominator.
inline void push_poch_tail(FactoredRat& fr, const MultiPoly& base_plus_L, long m, int exp) {
    if (m >= 0) {
        for (long j = 0; j < m; ++j) fr.push(base_plus_L + MultiPoly(Rat(j)), exp);
    } else {
        for (long j = 1; j <= -m; ++j) fr.push(base_plus_L - MultiPoly(Rat(j)), -exp);
    }
}

// Nonnegative integer values m where the polynomial (in `index`, with
// parameter coefficients) vanishes identically in the parameters.  Roots of
// a cheap rational specialization give the candidate set; each candidate is
// confirmed symbolically.
inline std::vector<long> structural_integer_roots(const MultiPoly& p, Sym index, long cap = 100000) {
    std::vector<long> roots;
    if (p.is_zero()) return roots;
    long d = p.degree(index);
    if (d <= 0) return roots;
    for (int attempt = 0; attempt < 8; ++attempt) {
        SymMap spec{};
        for (int i = 0; i < kNumSyms; ++i)
            if (static_cast<Sym>(i) != index) spec[i] = rat_of(2 * i + 3 + 11 * attempt, 7);
        MultiPoly sp = p.eval_partial(spec);
        if (sp.degree(index) != d) continue; // degenerate draw
        auto cs = sp.coeffs_in(index);
        Rat lead = cs[d].constant_value();
        Rat maxq(0);
        for (long j = 0; j < d; ++j) {
            Rat q = abs(cs[j].constant_value() / lead);
            if (q > maxq) maxq = q;
        }
        Rat b = maxq + 1;
        if (b > Rat(cap)) throw error("structural_integer_roots: root bound exceeds scan cap");
        long bound = to_long(ceil_rat(b));
        for (long m = 0; m <= bound; ++m) {
            Rat v(0);
            for (long j = d; j >= 0; --j) v = v * Rat(m) + cs[j].constant_value();
            if (v == 0) {
                // confirm symbolically
                if (p.subst(index, MultiPoly(Rat(m))).is_zero()) roots.push_back(m);
            }
        }
        return roots;
    }
    throw error("structural_integer_roots: all specializations degenerate");
}

} // namespace detail

// Split a Gamma-product term t(index) into an index-free Gamma constant and
// a Pochhammer summand with lengths exactly dilation*index, so that
// t(index) = gamma_constant * summand(index) for index >= summand.start.
inline NormalForm normal_form_at(const GammaTerm& t, Sym index) {
    Sym other = index == Sym::n ? Sym::k : Sym::n;
    auto check_free = [&](const AffineExpr& e, const char* what) {
        if (e.depends_on(other))
            throw error(std::string("normal_form: ") + what + " still depends on " + sym_name(other));
    };

    NormalForm out;
    PochhammerSummand& s = out.summand;
    s.index = index;
    if (t.prefactor.num().depends_on(other) || t.prefactor.den().depends_on(other))
        throw error("normal_form: prefactor depends on the other index symbol");
    FactoredRat fr;
    fr.push(t.prefactor.num(), 1);
    fr.push(t.prefactor.den(), -1);

    GammaTerm& c = out.gamma_constant;

    // sign factor
    check_free(t.sign_exponent, "sign exponent");
    {
        Rat ci = t.sign_exponent.coeff(index);
        if (!is_integer(ci)) throw error("normal_form: sign exponent not integral in index");
        if (to_long(ci) % 2 != 0) s.ratio_base = -s.ratio_base;
        AffineExpr rest = t.sign_exponent;
        rest.set(index, Rat(0));
        c.sign_exponent = c.sign_exponent + rest;
    }

    // constant powers b^{e}
    for (auto& [b, e] : t.const_powers) {
        check_free(e, "constant power exponent");
        Rat ci = e.coeff(index);
        if (!is_integer(ci)) throw error("normal_form: constant power exponent not integral in index");
        s.ratio_base *= rat_pow(b, to_long(ci));
        AffineExpr rest = e;
        rest.set(index, Rat(0));
        c.add_const_power(b, rest);
    }

    // Gamma factors
    for (auto& [arg, p] : t.gamma_factors) {
        check_free(arg, "Gamma argument");
        Rat ci = arg.coeff(index);
        if (!is_integer(ci)) throw error("normal_form: Gamma argument " + arg.str() + " not integral in index");
        long cdil = to_long(ci);
        AffineExpr params_part = arg;
        params_part.set(index, Rat(0));
        Rat q = params_part.constant;
        params_part.constant = 0; // now pure parameter linear form

        if (cdil == 0) {
            c.add_gamma(arg, p);
            continue;
        }

        if (cdil > 0) {
            Rat gamma;
            long m;
            detail::anchor_gamma(q, gamma, m);
            // Gamma(q + P + c*idx) = Gamma(gamma+P) * (gamma+P)_{c*idx} * (gamma+P+c*idx)_m
            AffineExpr base = params_part + gamma;
            c.add_gamma(base, p);
            s.add_factor(gamma, params_part, static_cast<int>(cdil), p);
            MultiPoly bL = base.to_poly() + MultiPoly::var(index) * Rat(cdil);
            detail::push_poch_tail(fr, bL, m, p);
        } else {
            long C0 = -cdil;
            // Gamma(x - N) = Gamma(x) * (-1)^N / (1-x)_N with x = q+P, N = C0*idx
            if (params_part.is_constant() && is_integer(q) && q <= 0)
                throw error("normal_form: Gamma(" + arg.str() + ") hits a nonpositive integer");
            AffineExpr x = params_part + q;
            c.add_gamma(x, p);
            if ((C0 * p) % 2 != 0) s.ratio_base = -s.ratio_base;
            // (1 - q - P)_{C0*idx}: anchor 1-q
            Rat gamma2;
            long m2;
            detail::anchor_gamma(Rat(1) - q, gamma2, m2);
            AffineExpr base2 = (params_part * Rat(-1)) + gamma2;
            // (base2 + m2)_{L} = (base2)_L * (base2 + L)_{m2} / (base2)_{m2}
            s.add_factor(gamma2, params_part * Rat(-1), static_cast<int>(C0), -p);
            MultiPoly b2L = base2.to_poly() + MultiPoly::var(index) * Rat(C0);
            detail::push_poch_tail(fr, b2L, m2, -p);
            // (base2)_{m2}^{+p} is constant in the index: rational in params
            detail::push_poch_tail(fr, base2.to_poly(), m2, p);
        }
    }

    s.prefactor = fr.to_ratfunc_smart();
    s.cleanup();
    c.cleanup();

    // start: beyond any structural pole of the prefactor denominator
    long start = 0;
    for (long m : detail::structural_integer_roots(s.prefactor.den(), index))
        start = std::max(start, m + 1);
    s.start = start;
    return out;
}

// Spec-facing normal form anchored at index = 0: errors if the term is
// singular there.
inline NormalForm normal_form(const GammaTerm& t, Sym index) {
    NormalForm nf = normal_form_at(t, index);
    if (nf.summand.start > 0)
        throw error("normal_form: term is singular at base point " + std::string(1, sym_name(index)) +
                    "=0 (valid only from " + std::to_string(nf.summand.start) + ")");
    return nf;
}

// eval_summand operation (spec surface).
inline Rat eval_summand(const PochhammerSummand& s, const SymMap& params, long index_value) {
    return s.eval(params, index_value);
}

} // namespace wz

#endif
