#ifndef WZ_RATFUNC_HPP
#define WZ_RATFUNC_HPP

#include "wz/polyops.hpp"

namespace wz {

#ifdef WZ_DEBUG_DUMP
void wz_debug_dump_pair(const MultiPoly&, const MultiPoly&, const MultiPoly&);
#endif

// Canonical rational function num/den over Q[a..e,n,k]:
//   den != 0, gcd(num, den) = 1, den integer-primitive with positive
//   leading coefficient under grlex.  Equal fractions have identical
//   representations.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rat(1)) {}
    explicit RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
    RatFunc(MultiPoly num, MultiPoly den) { normalize(std::move(num), std::move(den)); }
    static RatFunc poly(MultiPoly p) {
        RatFunc f;
        f.num_ = std::move(p);
        f.den_ = MultiPoly(Rat(1));
        return f;
    }
    // Caller guarantees gcd(num, den) = 1; only the scale is normalized.
    static RatFunc from_reduced(MultiPoly num, MultiPoly den) {
        if (den.is_zero()) throw error("rational function with zero denominator");
        RatFunc f;
        if (num.is_zero()) {
            f.den_ = MultiPoly(Rat(1));
            return f;
        }
        Rat dc = den.integer_content();
        f.num_ = num * (Rat(1) / dc);
        f.den_ = den * (Rat(1) / dc);
        return f;
    }
    static RatFunc var(Sym s) { return poly(MultiPoly::var(s)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool is_one() const { return is_constant() && !is_zero() && constant_value() == 1; }

    // Sum/product of reduced fractions stays reduced when computed the
    // classical way (Knuth 4.5.1); only small cross-gcds are needed.
    RatFunc operator+(const RatFunc& o) const { return add_impl(o, false); }
    RatFunc operator-(const RatFunc& o) const { return add_impl(o, true); }
    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return RatFunc(Rat(0));
        MultiPoly a = num_, b = den_, c = o.num_, d = o.den_;
        MultiPoly g1 = cross_gcd(a, d);
        if (!g1.is_constant()) {
            Sym v = main_sym(g1);
            try {
            a = exact_divide(a, g1, v);
            d = exact_divide(d, g1, v);
            } catch (const error&) {
#ifdef WZ_DEBUG_DUMP
                wz_debug_dump_pair(a, d, g1);
#endif
                throw;
            }
        }
        MultiPoly g2 = cross_gcd(c, b);
        if (!g2.is_constant()) {
            Sym v = main_sym(g2);
            try {
            c = exact_divide(c, g2, v);
            b = exact_divide(b, g2, v);
            } catch (const error&) {
#ifdef WZ_DEBUG_DUMP
                wz_debug_dump_pair(c, b, g2);
#endif
                throw;
            }
        }
        return RatFunc::from_reduced(a * c, b * d);
    }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw error("rational function division by zero");
        return *this * RatFunc::from_reduced(o.den_, o.num_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc operator*(const Rat& c) const { return RatFunc(num_ * c, den_); }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc pow(long e) const {
        if (e >= 0) {
            RatFunc r(Rat(1));
            for (long i = 0; i < e; ++i) r = r * *this;
            return r;
        }
        if (is_zero()) throw error("zero to negative power");
        RatFunc inv = RatFunc(den_, num_);
        return inv.pow(-e);
    }

    RatFunc subst(Sym s, const MultiPoly& p) const {
        return RatFunc(num_.subst(s, p), den_.subst(s, p));
    }

    RatFunc subst_all(const std::array<std::optional<MultiPoly>, kNumSyms>& repl) const {
        return RatFunc(num_.subst_all(repl), den_.subst_all(repl));
    }

    RatFunc eval_partial(const SymMap& vals) const {
        MultiPoly d = den_.eval_partial(vals);
        if (d.is_zero()) throw error("rational function: denominator vanished under specialization");
        return RatFunc(num_.eval_partial(vals), d);
    }

    Rat eval_all(const SymMap& vals) const {
        Rat d = den_.eval_all(vals);
        if (d == 0) throw error("rational function evaluation: division by zero");
        return num_.eval_all(vals) / d;
    }

    std::string str() const {
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
        std::string ns = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
        std::string ds = den_.terms().size() > 1 ? "(" + den_.str() + ")" : den_.str();
        return ns + "/" + ds;
    }

private:
    static Sym main_sym(const MultiPoly& p) {
        for (int i = kNumSyms - 1; i >= 0; --i)
            if (p.depends_on(static_cast<Sym>(i))) return static_cast<Sym>(i);
        return Sym::a;
    }
    static MultiPoly cross_gcd(const MultiPoly& x, const MultiPoly& y) {
        if (x.is_constant() || y.is_constant()) return MultiPoly(Rat(1));
        std::optional<Sym> shared;
        for (int i = kNumSyms - 1; i >= 0; --i)
            if (x.depends_on(static_cast<Sym>(i)) && y.depends_on(static_cast<Sym>(i))) {
                shared = static_cast<Sym>(i);
                break;
            }
        if (!shared) return MultiPoly(Rat(1));
        return poly_gcd(x, y, *shared);
    }

    RatFunc add_impl(const RatFunc& o, bool negate) const {
        const MultiPoly& a = num_;
        const MultiPoly& b = den_;
        MultiPoly c = negate ? -o.num_ : o.num_;
        const MultiPoly& d = o.den_;
        if (is_zero()) return RatFunc::from_reduced(std::move(c), d);
        if (o.is_zero()) return *this;
        MultiPoly d1 = cross_gcd(b, d);
        if (d1.is_constant()) {
            // gcd(ad + cb, bd) = 1 automatically
            return RatFunc::from_reduced(a * d + c * b, b * d);
        }
        Sym v = main_sym(d1);
        MultiPoly b1 = exact_divide(b, d1, v);
        MultiPoly dd1 = exact_divide(d, d1, v);
        MultiPoly t = a * dd1 + c * b1;
        if (t.is_zero()) return RatFunc(Rat(0));
        MultiPoly d2 = cross_gcd(t, d1);
        if (d2.is_constant()) return RatFunc::from_reduced(std::move(t), b1 * d);
        Sym v2 = main_sym(d2);
        t = exact_divide(t, d2, v2);
        MultiPoly den_out = b1 * exact_divide(d, d2, v2);
        return RatFunc::from_reduced(std::move(t), std::move(den_out));
    }

    void normalize(MultiPoly num, MultiPoly den) {
        if (den.is_zero()) throw error("rational function with zero denominator");
        if (num.is_zero()) {
            num_ = MultiPoly();
            den_ = MultiPoly(Rat(1));
            return;
        }
        if (!den.is_constant()) {
            Sym main = Sym::a;
            for (int i = kNumSyms - 1; i >= 0; --i)
                if (den.depends_on(static_cast<Sym>(i))) {
                    main = static_cast<Sym>(i);
                    break;
                }
            if (!num.is_constant()) {
                MultiPoly g = poly_gcd(num, den, main);
                if (!g.is_constant()) {
                    num = exact_divide(num, g, main);
                    den = exact_divide(den, g, main);
                }
            }
        }
        Rat dc = den.integer_content();
        num_ = num * (Rat(1) / dc);
        den_ = den * (Rat(1) / dc);
    }

    MultiPoly num_, den_;
};

inline RatFunc operator*(const Rat& c, const RatFunc& f) { return f * c; }

// ratfunc_normalize: public entry matching the canonicalization contract.
inline RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den) {
    return RatFunc(num, den);
}

} // namespace wz

#endif
