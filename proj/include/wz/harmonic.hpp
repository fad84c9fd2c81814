#ifndef WZ_HARMONIC_HPP
#define WZ_HARMONIC_HPP

#include "wz/upoly.hpp"

#include <map>

namespace wz {

// H_{d n}^{(s)}(gamma) = sum_{i=0}^{d n - 1} (i + gamma)^{-s}
struct HarmonicAtom {
    int s = 1;        // order, >= 1
    int dilation = 1; // argument is dilation * n
    Rat gamma{1};     // in (0,1]

    bool operator==(const HarmonicAtom& o) const {
        return s == o.s && dilation == o.dilation && gamma == o.gamma;
    }
    bool operator<(const HarmonicAtom& o) const {
        if (dilation != o.dilation) return dilation < o.dilation;
        if (gamma != o.gamma) return gamma < o.gamma;
        return s < o.s;
    }
    int weight() const { return s; }
    std::string str() const {
        std::ostringstream os;
        os << "H";
        if (dilation != 1) os << "[" << dilation << "n]";
        os << "^(" << s << ")";
        if (gamma != 1) os << "(" << gamma.get_str() << ")";
        return os.str();
    }
};

// sorted multiset of atoms
using HarmonicMono = std::vector<HarmonicAtom>;

inline HarmonicMono mono_mul(const HarmonicMono& a, const HarmonicMono& b) {
    HarmonicMono m = a;
    m.insert(m.end(), b.begin(), b.end());
    std::sort(m.begin(), m.end());
    return m;
}

inline int mono_weight(const HarmonicMono& m) {
    int w = 0;
    for (auto& a : m) w += a.s;
    return w;
}

// Cache of exact harmonic prefix sums, keyed by (s, gamma).
class HarmonicCache {
public:
    // value of sum_{i=0}^{N-1} (i+gamma)^{-s}
    const Rat& prefix(int s, const Rat& gamma, long N) {
        auto& v = table_[{s, gamma}];
        if (v.empty()) v.push_back(Rat(0));
        while ((long)v.size() <= N) {
            long i = (long)v.size() - 1;
            Rat term = Rat(1) / rat_pow(gamma + Rat(i), s);
            v.push_back(v.back() + term);
        }
        return v[N];
    }
    static HarmonicCache& global() {
        static thread_local HarmonicCache c;
        return c;
    }

private:
    std::map<std::pair<int, Rat>, std::vector<Rat>> table_;
};

inline Rat atom_value(const HarmonicAtom& a, long n) {
    return HarmonicCache::global().prefix(a.s, a.gamma, a.dilation * n);
}

// Q(n)-linear combination of harmonic monomials.
class HarmonicExpr {
public:
    using TermMap = std::map<HarmonicMono, URat>;

    HarmonicExpr() = default;
    explicit HarmonicExpr(URat c) {
        if (!c.is_zero()) terms_[{}] = std::move(c);
    }
    static HarmonicExpr atom(const HarmonicAtom& a, URat coeff = URat(Rat(1))) {
        HarmonicExpr e;
        if (!coeff.is_zero()) e.terms_[{a}] = std::move(coeff);
        return e;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const HarmonicExpr& o) const { return terms_ == o.terms_; }

    void add_term(const HarmonicMono& m, const URat& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    HarmonicExpr operator+(const HarmonicExpr& o) const {
        HarmonicExpr r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    HarmonicExpr operator-(const HarmonicExpr& o) const {
        HarmonicExpr r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    HarmonicExpr operator*(const HarmonicExpr& o) const {
        HarmonicExpr r;
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
        return r;
    }
    HarmonicExpr operator*(const URat& c) const {
        if (c.is_zero()) return HarmonicExpr();
        HarmonicExpr r = *this;
        for (auto& [m, cc] : r.terms_) cc = cc * c;
        return r;
    }
    HarmonicExpr operator*(const Rat& c) const { return *this * URat(c); }
    HarmonicExpr& operator+=(const HarmonicExpr& o) { return *this = *this + o; }

    Rat eval(long n) const {
        Rat acc(0);
        for (auto& [m, c] : terms_) {
            Rat t = c.eval(Rat(n));
            for (auto& a : m) t *= atom_value(a, n);
            acc += t;
        }
        return acc;
    }

    bool defined_at(long n) const {
        for (auto& [m, c] : terms_)
            if (!c.defined_at(Rat(n))) return false;
        return true;
    }

    int max_weight() const {
        int w = 0;
        for (auto& [m, c] : terms_) w = std::max(w, mono_weight(m));
        return w;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (auto& a : m) os << "*" << a.str();
        }
        return os.str();
    }

private:
    TermMap terms_;
};

inline HarmonicExpr operator*(const URat& c, const HarmonicExpr& e) { return e * c; }

// Canonical reduction:
//  - gamma = 1/2 atoms rewrite via H_{dn}^{(s)}(1/2) = 2^s H_{2dn}^{(s)} - H_{dn}^{(s)};
//  - complete gamma-orbits {1/d, ..., (d-1)/d, 1} at equal coefficients merge
//    into d^s H_{d*D*n}^{(s)};
//  - other fractional gamma atoms stay.
inline HarmonicExpr harmonic_reduce(const HarmonicExpr& e) {
    // pass 1: substitute all gamma = 1/2 atoms
    HarmonicExpr cur;
    for (auto& [m, c] : e.terms()) {
        // expand the product over atoms
        std::vector<std::pair<HarmonicMono, Rat>> expanded = {{HarmonicMono{}, Rat(1)}};
        for (auto& a : m) {
            std::vector<std::pair<HarmonicMono, Rat>> next;
            if (a.gamma == rat_of(1, 2)) {
                HarmonicAtom dbl{a.s, 2 * a.dilation, Rat(1)};
                HarmonicAtom same{a.s, a.dilation, Rat(1)};
                for (auto& [mm, cc] : expanded) {
                    HarmonicMono m1 = mm;
                    m1.push_back(dbl);
                    next.emplace_back(std::move(m1), cc * rat_pow(Rat(2), a.s));
                    HarmonicMono m2 = mm;
                    m2.push_back(same);
                    next.emplace_back(std::move(m2), -cc);
                }
            } else {
                for (auto& [mm, cc] : expanded) {
                    HarmonicMono m1 = mm;
                    m1.push_back(a);
                    next.emplace_back(std::move(m1), cc);
                }
            }
            expanded = std::move(next);
        }
        for (auto& [mm, cc] : expanded) {
            HarmonicMono sorted = mm;
            std::sort(sorted.begin(), sorted.end());
            cur.add_term(sorted, c * cc);
        }
    }

    // pass 2: complete-orbit contraction
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [m, c] : cur.terms()) {
            // candidate orbit: pick a fractional atom gamma = p/q with q > 2
            for (size_t ai = 0; ai < m.size() && !changed; ++ai) {
                const HarmonicAtom& a = m[ai];
                if (a.gamma == 1 || a.gamma.get_den() <= 2) continue;
                long d = to_long(Int(a.gamma.get_den()));
                // context = m without this atom
                HarmonicMono context = m;
                context.erase(context.begin() + ai);
                // check all orbit members present with identical coefficient
                bool all = true;
                for (long j = 1; j <= d && all; ++j) {
                    HarmonicAtom member{a.s, a.dilation, rat_of(j, d)};
                    HarmonicMono key = context;
                    key.push_back(member);
                    std::sort(key.begin(), key.end());
                    auto it = cur.terms().find(key);
                    if (it == cur.terms().end() || !(it->second == c)) all = false;
                }
                if (!all) continue;
                URat lambda = c;
                HarmonicExpr delta;
                for (long j = 1; j <= d; ++j) {
                    HarmonicAtom member{a.s, a.dilation, rat_of(j, d)};
                    HarmonicMono key = context;
                    key.push_back(member);
                    std::sort(key.begin(), key.end());
                    delta.add_term(key, -lambda);
                }
                HarmonicAtom merged{a.s, static_cast<int>(d) * a.dilation, Rat(1)};
                HarmonicMono key = context;
                key.push_back(merged);
                std::sort(key.begin(), key.end());
                delta.add_term(key, lambda * rat_pow(Rat(d), a.s));
                cur += delta;
                changed = true;
            }
            if (changed) break;
        }
    }
    return cur;
}

inline Rat evaluate_harmonic_expr(const HarmonicExpr& e, long n) {
    if (n <= 0) throw error("evaluate_harmonic_expr: n must be positive");
    if (!e.defined_at(n)) throw error("harmonic expression has a pole at n=" + std::to_string(n));
    return e.eval(n);
}

} // namespace wz

#endif
