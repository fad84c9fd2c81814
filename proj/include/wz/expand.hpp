#ifndef WZ_EXPAND_HPP
#define WZ_EXPAND_HPP

#include "wz/harmonic.hpp"
#include "wz/pochhammer.hpp"

namespace wz {

// Multi-index over the auxiliary parameters a..e.
struct MIdx {
    std::array<uint8_t, 5> e{};
    int total() const {
        int t = 0;
        for (auto x : e) t += x;
        return t;
    }
    bool operator<(const MIdx& o) const {
        int ta = total(), tb = o.total();
        if (ta != tb) return ta < tb;
        return e < o.e;
    }
    bool operator==(const MIdx& o) const { return e == o.e; }
    MIdx plus(const MIdx& o) const {
        MIdx r;
        for (int i = 0; i < 5; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    std::string str() const {
        std::ostringstream os;
        const char* names = "abcde";
        bool any = false;
        for (int i = 0; i < 5; ++i)
            if (e[i]) {
                os << names[i];
                if (e[i] > 1) os << "^" << int(e[i]);
                any = true;
            }
        return any ? os.str() : "1";
    }
};

// Truncated power series in the parameters with HarmonicExpr coefficients.
class ParamSeries {
public:
    explicit ParamSeries(int order = 0) : order_(order) {}
    static ParamSeries one(int order) {
        ParamSeries s(order);
        s.coef_[MIdx{}] = HarmonicExpr(URat(Rat(1)));
        return s;
    }
    static ParamSeries constant(int order, HarmonicExpr c) {
        ParamSeries s(order);
        if (!c.is_zero()) s.coef_[MIdx{}] = std::move(c);
        return s;
    }

    int order() const { return order_; }
    const std::map<MIdx, HarmonicExpr>& coef() const { return coef_; }
    HarmonicExpr at(const MIdx& m) const {
        auto it = coef_.find(m);
        return it == coef_.end() ? HarmonicExpr() : it->second;
    }

    void add(const MIdx& m, const HarmonicExpr& c) {
        if (m.total() > order_ || c.is_zero()) return;
        auto it = coef_.find(m);
        if (it == coef_.end()) coef_.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) coef_.erase(it);
        }
    }

    ParamSeries operator+(const ParamSeries& o) const {
        ParamSeries r = *this;
        for (auto& [m, c] : o.coef_) r.add(m, c);
        return r;
    }
    ParamSeries operator*(const ParamSeries& o) const {
        ParamSeries r(order_);
        for (auto& [m1, c1] : coef_) {
            for (auto& [m2, c2] : o.coef_) {
                if (m1.total() + m2.total() > order_) continue;
                r.add(m1.plus(m2), c1 * c2);
            }
        }
        return r;
    }

    // multiplicative inverse; the constant term must be invertible
    ParamSeries inverse() const {
        auto it = coef_.find(MIdx{});
        if (it == coef_.end()) throw error("series inverse: zero constant term");
        const HarmonicExpr& c0 = it->second;
        if (c0.terms().size() != 1 || !c0.terms().begin()->first.empty())
            throw error("series inverse: constant term is not a pure rational function");
        URat c0r = c0.terms().begin()->second;
        // u = 1 - (this / c0); inverse = (1/c0) * sum u^k
        ParamSeries u(order_);
        for (auto& [m, c] : coef_) {
            if (m.total() == 0) continue;
            u.add(m, c * (URat(Rat(-1)) / c0r));
        }
        ParamSeries acc = one(order_);
        ParamSeries pow = one(order_);
        for (int k = 1; k <= order_; ++k) {
            pow = pow * u;
            if (pow.coef_.empty()) break;
            acc = acc + pow;
        }
        ParamSeries r(order_);
        for (auto& [m, c] : acc.coef_) r.add(m, c * (URat(Rat(1)) / c0r));
        return r;
    }

    ParamSeries pow_int(int e) const {
        ParamSeries r = one(order_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    void reduce() {
        std::map<MIdx, HarmonicExpr> out;
        for (auto& [m, c] : coef_) {
            HarmonicExpr red = harmonic_reduce(c);
            if (!red.is_zero()) out.emplace(m, std::move(red));
        }
        coef_ = std::move(out);
    }

private:
    int order_;
    std::map<MIdx, HarmonicExpr> coef_;
};

namespace detail {

inline int param_index(Sym s) {
    int i = sym_index(s);
    if (i >= 5) throw error("not an auxiliary parameter symbol");
    return i;
}

// Elementary symmetric functions e_j of {1/(gamma+i)} over i < dilation*n,
// via Newton's identities from the power sums p_t = H_{dn}^{(t)}(gamma).
inline std::vector<HarmonicExpr> elementary_sums(const Rat& gamma, int dilation, int order) {
    std::vector<HarmonicExpr> p(order + 1), e(order + 1);
    for (int t = 1; t <= order; ++t)
        p[t] = HarmonicExpr::atom(HarmonicAtom{t, dilation, gamma});
    e[0] = HarmonicExpr(URat(Rat(1)));
    for (int j = 1; j <= order; ++j) {
        HarmonicExpr acc;
        Rat sign(1);
        for (int t = 1; t <= j; ++t) {
            HarmonicExpr term = e[j - t] * p[t];
            acc += term * URat(sign);
            sign = -sign;
        }
        e[j] = acc * URat(rat_of(1, j));
    }
    return e;
}

// series of the linear form sum coeff_s * x_s
inline ParamSeries linear_form_series(const AffineExpr& shift, int order) {
    ParamSeries s(order);
    for (auto& [sym, c] : shift.coeffs) {
        MIdx m{};
        m.e[param_index(sym)] = 1;
        s.add(m, HarmonicExpr(URat(c)));
    }
    return s;
}

} // namespace detail

// (gamma + shift)_{dilation * n} as a parameter series whose coefficients are
// harmonic expressions, divided through by the parameter-free value
// (gamma)_{dilation*n}.  This is the series expansion behind coefficient
// extraction: the degree-j coefficient of a single-parameter shift is the
// elementary harmonic sum of depth j, already reduced to power-sum atoms.
inline ParamSeries pochhammer_factor_series(const Rat& gamma, const AffineExpr& shift, int dilation,
                                            int order) {
    auto e = detail::elementary_sums(gamma, dilation, order);
    ParamSeries s = detail::linear_form_series(shift, order);
    ParamSeries acc = ParamSeries::one(order);
    ParamSeries spow = ParamSeries::one(order);
    for (int j = 1; j <= order; ++j) {
        spow = spow * s;
        ParamSeries term = spow;
        ParamSeries out(order);
        for (auto& [m, c] : term.coef()) out.add(m, c * e[j]);
        acc = acc + out;
    }
    return acc;
}

// Spec surface: the expansion of (gamma + a)_length for a single parameter.
inline ParamSeries pochhammer_expand(const Rat& gamma, const AffineExpr& shift,
                                     const AffineExpr& length, Sym index, int order) {
    Rat dil = length.coeff(index);
    if (!is_integer(dil) || dil <= 0) throw error("pochhammer_expand: length must be d*index");
    AffineExpr rest = length;
    rest.set(index, Rat(0));
    if (!(rest.is_constant() && rest.constant == 0))
        throw error("pochhammer_expand: length offsets are handled by the summand normal form");
    if (gamma <= 0 || gamma > 1) throw error("pochhammer_expand: gamma outside (0,1]");
    ParamSeries s = pochhammer_factor_series(gamma, shift, static_cast<int>(to_long(dil)), order);
    s.reduce();
    return s;
}

struct CoeffTable {
    PochhammerSummand base; // parameter-free factor (prefactor 1)
    long start = 0;
    int order = 0;
    std::map<MIdx, HarmonicExpr> entries;

    const HarmonicExpr* entry(const MIdx& m) const {
        auto it = entries.find(m);
        return it == entries.end() ? nullptr : &it->second;
    }

    // exact value of base * entry at integer n
    Rat eval_entry(const MIdx& m, long n) const {
        auto it = entries.find(m);
        if (it == entries.end()) return Rat(0);
        SymMap none{};
        return base.eval(none, n) * it->second.eval(n);
    }
};

// Taylor expansion of the rational prefactor in the parameters around zero.
inline ParamSeries prefactor_series(const RatFunc& pref, int order) {
    auto split = [&](const MultiPoly& p) {
        ParamSeries s(order);
        for (auto& [ev, c] : p.terms()) {
            MIdx m{};
            int tot = 0;
            for (int i = 0; i < 5; ++i) {
                m.e[i] = static_cast<uint8_t>(ev[i]);
                tot += ev[i];
            }
            if (tot > order) continue;
            long npow = ev[sym_index(Sym::n)];
            if (ev[sym_index(Sym::k)] != 0) throw error("prefactor depends on k");
            Upoly mono = Upoly::x(npow) * c;
            s.add(m, HarmonicExpr(URat::poly(mono)));
        }
        return s;
    };
    ParamSeries num = split(pref.num());
    ParamSeries den = split(pref.den());
    return num * den.inverse();
}

// Substitute parameters -> point + fresh offsets, re-anchoring each factor.
inline PochhammerSummand substitute_point(const PochhammerSummand& s, const SymMap& point) {
    bool all_zero = true;
    for (int i = 0; i < 5; ++i)
        if (point[i] && *point[i] != 0) all_zero = false;
    if (all_zero) return s;

    PochhammerSummand out;
    out.index = s.index;
    out.start = s.start;
    out.ratio_base = s.ratio_base;
    std::array<std::optional<MultiPoly>, kNumSyms> repl{};
    for (int i = 0; i < 5; ++i)
        if (point[i]) repl[i] = MultiPoly::var(static_cast<Sym>(i)) + MultiPoly(*point[i]);
    out.prefactor = s.prefactor.subst_all(repl);

    FactoredRat extra;
    extra.push(out.prefactor.num(), 1);
    extra.push(out.prefactor.den(), -1);
    out.prefactor = RatFunc(Rat(1));

    for (auto& f : s.factors) {
        Rat shift_val(0);
        for (auto& [sym, c] : f.shift.coeffs) {
            if (point[sym_index(sym)]) shift_val += c * *point[sym_index(sym)];
        }
        Rat q = f.gamma + shift_val;
        Rat gamma2;
        long m2;
        detail::anchor_gamma(q, gamma2, m2);
        out.add_factor(gamma2, f.shift, f.dilation, f.power);
        // (B + m2)_{L} = (B)_L * (B + L)_{m2} / (B)_{m2}, B = gamma2 + shift
        AffineExpr base2 = f.shift + gamma2;
        MultiPoly bL = base2.to_poly() + MultiPoly::var(s.index) * Rat(f.dilation);
        detail::push_poch_tail(extra, bL, m2, f.power);
        detail::push_poch_tail(extra, base2.to_poly(), m2, -f.power);
    }
    out.prefactor = extra.to_ratfunc_smart();
    out.cleanup();
    long start = 0;
    for (long m : detail::structural_integer_roots(out.prefactor.den(), out.index))
        start = std::max(start, m + 1);
    out.start = std::max(out.start, start);
    return out;
}

// Full multivariate expansion of a summand around a parameter point.
inline CoeffTable expand_summand(const PochhammerSummand& input, const SymMap& point, int order) {
    PochhammerSummand s = substitute_point(input, point);
    if (s.index != Sym::n) {
        // tables are functions of n; relabel the index symbol
        PochhammerSummand t = s;
        t.index = Sym::n;
        t.prefactor = s.prefactor.subst(s.index, MultiPoly::var(Sym::n));
        s = t;
    }

    ParamSeries acc = prefactor_series(s.prefactor, order);
    for (auto& f : s.factors) {
        ParamSeries fs = pochhammer_factor_series(f.gamma, f.shift, f.dilation, order);
        int p = f.power;
        if (p < 0) {
            fs = fs.inverse();
            p = -p;
        }
        for (int i = 0; i < p; ++i) acc = acc * fs;
    }
    acc.reduce();

    CoeffTable table;
    table.start = s.start;
    table.order = order;
    table.base.index = Sym::n;
    table.base.start = s.start;
    table.base.ratio_base = s.ratio_base;
    table.base.prefactor = RatFunc(Rat(1));
    for (auto& f : s.factors) table.base.add_factor(f.gamma, AffineExpr(), f.dilation, f.power);
    table.base.cleanup();
    for (auto& [m, c] : acc.coef()) table.entries.emplace(m, c);
    return table;
}

} // namespace wz

#endif
