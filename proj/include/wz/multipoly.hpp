#ifndef WZ_MULTIPOLY_HPP
#define WZ_MULTIPOLY_HPP

#include "wz/basics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace wz {

// Exponent vector over the fixed symbol set.
struct ExpVec {
    std::array<int32_t, kNumSyms> e{};

    int32_t total() const {
        int32_t t = 0;
        for (auto x : e) t += x;
        return t;
    }
    int32_t operator[](int i) const { return e[i]; }
    int32_t& operator[](int i) { return e[i]; }
    int32_t at(Sym s) const { return e[sym_index(s)]; }

    ExpVec plus(const ExpVec& o) const {
        ExpVec r;
        for (int i = 0; i < kNumSyms; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    ExpVec minus(const ExpVec& o) const {
        ExpVec r;
        for (int i = 0; i < kNumSyms; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    bool is_zero() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    bool operator==(const ExpVec& o) const { return e == o.e; }
};

// Graded lexicographic order, grading by total degree, ties broken
// lexicographically with a > ... > k downstream (a weighs most).
struct GrlexLess {
    bool operator()(const ExpVec& x, const ExpVec& y) const {
        int32_t tx = x.total(), ty = y.total();
        if (tx != ty) return tx < ty;
        for (int i = 0; i < kNumSyms; ++i)
            if (x.e[i] != y.e[i]) return x.e[i] < y.e[i];
        return false;
    }
};

// Sparse multivariate polynomial over Q in the fixed seven symbols.
class MultiPoly {
public:
    using TermMap = std::map<ExpVec, Rat, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(const Rat& c) {
        if (c != 0) terms_[ExpVec{}] = c;
    }
    static MultiPoly var(Sym s, int32_t pow = 1) {
        MultiPoly p;
        ExpVec v;
        v[sym_index(s)] = pow;
        p.terms_[v] = Rat(1);
        return p;
    }
    static MultiPoly mono(const ExpVec& v, const Rat& c) {
        MultiPoly p;
        if (c != 0) p.terms_[v] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw error("poly is not constant");
        return terms_.begin()->second;
    }

    // Leading term under grlex.
    const std::pair<const ExpVec, Rat>& leading() const {
        if (terms_.empty()) throw error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    int32_t total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

    int32_t degree(Sym s) const {
        int32_t d = -1;
        int i = sym_index(s);
        for (auto& [ev, c] : terms_) d = std::max(d, ev[i]);
        return terms_.empty() ? -1 : d;
    }

    bool depends_on(Sym s) const {
        int i = sym_index(s);
        for (auto& [ev, c] : terms_)
            if (ev[i] > 0) return true;
        return false;
    }

    void add_term(const ExpVec& v, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(v);
        if (it == terms_.end()) {
            terms_.emplace(v, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [ev, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (auto& [ev, c] : o.terms_) r.add_term(ev, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (auto& [ev, c] : o.terms_) r.add_term(ev, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        size_t n1 = terms_.size(), n2 = o.terms_.size();
        if (n1 == 0 || n2 == 0) return MultiPoly();
        if (n1 * n2 <= 4096) {
            MultiPoly r;
            for (auto& [ev1, c1] : terms_)
                for (auto& [ev2, c2] : o.terms_) r.add_term(ev1.plus(ev2), c1 * c2);
            return r;
        }
        // hash-accumulated product for large operands
        struct EvHash {
            size_t operator()(const ExpVec& v) const {
                size_t h = 1469598103934665603ull;
                for (int i = 0; i < kNumSyms; ++i) {
                    h ^= static_cast<size_t>(static_cast<uint32_t>(v.e[i]));
                    h *= 1099511628211ull;
                }
                return h;
            }
        };
        struct EvEq {
            bool operator()(const ExpVec& a, const ExpVec& b) const { return a.e == b.e; }
        };
        std::unordered_map<ExpVec, Rat, EvHash, EvEq> acc;
        acc.reserve(std::max(n1, n2) * 4);
        for (auto& [ev1, c1] : terms_)
            for (auto& [ev2, c2] : o.terms_) {
                ExpVec ev = ev1.plus(ev2);
                auto [it, fresh] = acc.try_emplace(ev);
                if (fresh) it->second = c1 * c2;
                else it->second += c1 * c2;
            }
        MultiPoly r;
        for (auto& [ev, c] : acc)
            if (c != 0) r.terms_.emplace(ev, std::move(c));
        return r;
    }
    MultiPoly operator*(const Rat& c) const {
        if (c == 0) return MultiPoly();
        MultiPoly r = *this;
        for (auto& [ev, cc] : r.terms_) cc *= c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    MultiPoly pow(long e) const {
        if (e < 0) throw error("poly pow with negative exponent");
        MultiPoly r(Rat(1));
        MultiPoly b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Coefficient of s^d, a polynomial in the remaining symbols.
    MultiPoly coeff_of(Sym s, int32_t d) const {
        MultiPoly r;
        int i = sym_index(s);
        for (auto& [ev, c] : terms_)
            if (ev[i] == d) {
                ExpVec v = ev;
                v[i] = 0;
                r.add_term(v, c);
            }
        return r;
    }

    // Dense coefficient list in s: result[j] = coeff of s^j.
    std::vector<MultiPoly> coeffs_in(Sym s) const {
        int32_t d = degree(s);
        std::vector<MultiPoly> out(std::max<int32_t>(d + 1, 1));
        int i = sym_index(s);
        for (auto& [ev, c] : terms_) {
            ExpVec v = ev;
            v[i] = 0;
            out[ev[i]].add_term(v, c);
        }
        return out;
    }

    static MultiPoly from_coeffs(Sym s, const std::vector<MultiPoly>& cs) {
        MultiPoly r;
        MultiPoly x = var(s);
        MultiPoly xp(Rat(1));
        for (size_t j = 0; j < cs.size(); ++j) {
            r += cs[j] * xp;
            if (j + 1 < cs.size()) xp *= x;
        }
        return r;
    }

    // Substitute s -> p (a polynomial), via Horner on the coefficient list.
    MultiPoly subst(Sym s, const MultiPoly& p) const {
        if (!depends_on(s)) return *this;
        auto cs = coeffs_in(s);
        MultiPoly r;
        for (size_t j = cs.size(); j-- > 0;) r = r * p + cs[j];
        return r;
    }

    // Simultaneous substitution of several symbols.
    MultiPoly subst_all(const std::array<std::optional<MultiPoly>, kNumSyms>& repl) const {
        MultiPoly r;
        for (auto& [ev, c] : terms_) {
            MultiPoly t(c);
            ExpVec rest{};
            for (int i = 0; i < kNumSyms; ++i) {
                if (ev[i] == 0) continue;
                if (repl[i]) t *= repl[i]->pow(ev[i]);
                else rest[i] = ev[i];
            }
            r += t * MultiPoly::mono(rest, Rat(1));
        }
        return r;
    }

    // Partial evaluation: substitute rational values for the given symbols.
    MultiPoly eval_partial(const SymMap& vals) const {
        // power tables avoid repeated rat_pow calls
        std::array<std::vector<Rat>, kNumSyms> pows;
        for (int i = 0; i < kNumSyms; ++i) {
            if (!vals[i]) continue;
            int32_t d = degree(static_cast<Sym>(i));
            if (d < 0) continue;
            pows[i].resize(d + 1);
            pows[i][0] = Rat(1);
            for (int32_t e = 1; e <= d; ++e) pows[i][e] = pows[i][e - 1] * *vals[i];
        }
        MultiPoly r;
        for (auto& [ev, c] : terms_) {
            Rat coef = c;
            ExpVec v = ev;
            for (int i = 0; i < kNumSyms; ++i) {
                if (vals[i] && ev[i] > 0) {
                    coef *= pows[i][ev[i]];
                    v[i] = 0;
                }
            }
            r.add_term(v, coef);
        }
        return r;
    }

    Rat eval_all(const SymMap& vals) const {
        Rat acc(0);
        for (auto& [ev, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < kNumSyms; ++i) {
                if (ev[i] > 0) {
                    if (!vals[i]) throw error(std::string("eval: no value for symbol ") + kSymNames[i]);
                    t *= rat_pow(*vals[i], ev[i]);
                }
            }
            acc += t;
        }
        return acc;
    }

    // Multiply through by the lcm of coefficient denominators; returns the lcm.
    Int clear_denominators() {
        Int l(1);
        for (auto& [ev, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        if (l != 1)
            for (auto& [ev, c] : terms_) c *= Rat(l);
        return l;
    }

    // gcd of integer coefficients (call after clear_denominators), signed by
    // the leading coefficient.
    Rat integer_content() const {
        if (terms_.empty()) return Rat(0);
        Int g(0);
        Int l(1);
        for (auto& [ev, c] : terms_) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        }
        Rat content = Rat(g) / Rat(l);
        if (leading().second < 0) content = -content;
        return content;
    }

    // exponentwise minimum over all terms (the monomial content)
    ExpVec monomial_content() const {
        ExpVec m{};
        bool first = true;
        for (auto& [ev, c] : terms_) {
            if (first) {
                m = ev;
                first = false;
            } else {
                for (int i = 0; i < kNumSyms; ++i) m[i] = std::min(m[i], ev[i]);
            }
        }
        return m;
    }

    MultiPoly divide_monomial(const ExpVec& m) const {
        MultiPoly r;
        for (auto& [ev, c] : terms_) r.terms_.emplace(ev.minus(m), c);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rat& c = it->second;
            if (!first) os << (c >= 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            first = false;
            Rat ac = abs(c);
            bool unit = (ac == 1) && !it->first.is_zero();
            if (!unit) os << ac.get_str();
            bool any = false;
            for (int i = 0; i < kNumSyms; ++i) {
                if (it->first[i] > 0) {
                    if (any || !unit) os << "*";
                    os << kSymNames[i];
                    if (it->first[i] > 1) os << "^" << it->first[i];
                    any = true;
                }
            }
            if (!any && unit) os << "1";
        }
        return os.str();
    }

private:
    TermMap terms_;
};

inline MultiPoly operator*(const Rat& c, const MultiPoly& p) { return p * c; }

} // namespace wz

#endif
