#ifndef WZ_UPOLY_HPP
#define WZ_UPOLY_HPP

#include "wz/basics.hpp"

#include <sstream>

namespace wz {

// Dense univariate polynomial over Q.  The variable is abstract; in the
// expansion pipeline it is always the summation index.
class Upoly {
public:
    Upoly() = default;
    explicit Upoly(const Rat& c) {
        if (c != 0) c_.push_back(c);
    }
    static Upoly x(long pow = 1) {
        Upoly p;
        p.c_.assign(pow + 1, Rat(0));
        p.c_[pow] = 1;
        return p;
    }
    static Upoly from_coeffs(std::vector<Rat> cs) {
        Upoly p;
        p.c_ = std::move(cs);
        p.trim();
        return p;
    }

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Rat coeff(long i) const { return i >= 0 && i < (long)c_.size() ? c_[i] : Rat(0); }
    const Rat& lead() const {
        if (c_.empty()) throw error("lead of zero upoly");
        return c_.back();
    }
    bool is_constant() const { return c_.size() <= 1; }
    Rat constant_value() const { return c_.empty() ? Rat(0) : c_[0]; }

    Upoly operator-() const {
        Upoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    Upoly operator+(const Upoly& o) const {
        Upoly r;
        r.c_.resize(std::max(c_.size(), o.c_.size()), Rat(0));
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
        r.trim();
        return r;
    }
    Upoly operator-(const Upoly& o) const { return *this + (-o); }
    Upoly operator*(const Upoly& o) const {
        if (is_zero() || o.is_zero()) return Upoly();
        Upoly r;
        r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.trim();
        return r;
    }
    Upoly operator*(const Rat& s) const {
        if (s == 0) return Upoly();
        Upoly r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    Upoly& operator+=(const Upoly& o) { return *this = *this + o; }
    Upoly& operator-=(const Upoly& o) { return *this = *this - o; }
    Upoly& operator*=(const Upoly& o) { return *this = *this * o; }
    bool operator==(const Upoly& o) const { return c_ == o.c_; }

    Upoly pow(long e) const {
        Upoly r(Rat(1)), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    Rat eval(const Rat& v) const {
        Rat acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
        return acc;
    }

    // substitute x -> x + shift
    Upoly shift(const Rat& s) const {
        Upoly r;
        for (size_t i = c_.size(); i-- > 0;) r = r * (Upoly::x() + Upoly(s)) + Upoly(c_[i]);
        return r;
    }

    Upoly derivative() const {
        if (c_.size() <= 1) return Upoly();
        Upoly r;
        r.c_.resize(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat((long)i);
        r.trim();
        return r;
    }

    // Quotient/remainder over Q.
    std::pair<Upoly, Upoly> divmod(const Upoly& d) const {
        if (d.is_zero()) throw error("upoly division by zero");
        Upoly q, r = *this;
        long dd = d.degree();
        while (!r.is_zero() && r.degree() >= dd) {
            long sh = r.degree() - dd;
            Rat f = r.lead() / d.lead();
            Upoly t = Upoly::x(sh) * f;
            q += t;
            r -= t * d;
        }
        return {q, r};
    }

    // Make integer-primitive with positive leading coefficient.
    Upoly primitive() const {
        if (is_zero()) return *this;
        Int l(1), g(0);
        for (auto& v : c_) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
        }
        Rat scale = Rat(l) / Rat(g);
        if (lead() < 0) scale = -scale;
        return *this * scale;
    }

    std::string str(char var = 'n') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            Rat v = c_[i];
            if (!first) os << (v > 0 ? " + " : " - ");
            else if (v < 0) os << "-";
            first = false;
            Rat av = abs(v);
            if (i == 0 || av != 1) os << av.get_str();
            if (i > 0) {
                if (av != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline Upoly upoly_gcd(Upoly a, Upoly b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    a = a.primitive();
    b = b.primitive();
    while (!b.is_zero()) {
        Upoly r = a.divmod(b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive();
    }
    return a;
}

// Canonical univariate rational function: den primitive with positive lead,
// gcd(num, den) = 1.
class URat {
public:
    URat() : num_(), den_(Rat(1)) {}
    explicit URat(const Rat& c) : num_(c), den_(Rat(1)) {}
    URat(Upoly num, Upoly den) { normalize(std::move(num), std::move(den)); }
    static URat poly(Upoly p) {
        URat r;
        r.num_ = std::move(p);
        r.den_ = Upoly(Rat(1));
        return r;
    }

    const Upoly& num() const { return num_; }
    const Upoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    URat operator+(const URat& o) const { return URat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    URat operator-(const URat& o) const { return URat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    URat operator*(const URat& o) const { return URat(num_ * o.num_, den_ * o.den_); }
    URat operator/(const URat& o) const {
        if (o.is_zero()) throw error("URat division by zero");
        return URat(num_ * o.den_, den_ * o.num_);
    }
    URat operator-() const {
        URat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    URat operator*(const Rat& c) const { return URat(num_ * c, den_); }
    URat& operator+=(const URat& o) { return *this = *this + o; }
    URat& operator*=(const URat& o) { return *this = *this * o; }
    bool operator==(const URat& o) const { return num_ == o.num_ && den_ == o.den_; }

    bool defined_at(const Rat& v) const { return den_.eval(v) != 0; }
    Rat eval(const Rat& v) const {
        Rat d = den_.eval(v);
        if (d == 0) throw error("URat evaluation at pole");
        return num_.eval(v) / d;
    }

    std::string str(char var = 'n') const {
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str(var);
        std::string ns = num_.degree() > 0 ? "(" + num_.str(var) + ")" : num_.str(var);
        std::string ds = den_.degree() > 0 ? "(" + den_.str(var) + ")" : den_.str(var);
        return ns + "/" + ds;
    }

private:
    void normalize(Upoly num, Upoly den) {
        if (den.is_zero()) throw error("URat with zero denominator");
        if (num.is_zero()) {
            num_ = Upoly();
            den_ = Upoly(Rat(1));
            return;
        }
        Upoly g = upoly_gcd(num, den);
        if (g.degree() > 0) {
            num = num.divmod(g).first;
            den = den.divmod(g).first;
        }
        Upoly dp = den.primitive();
        Rat scale = den.lead() / dp.lead();
        num_ = num * (Rat(1) / scale);
        den_ = dp;
    }

    Upoly num_, den_;
};

inline URat operator*(const Rat& c, const URat& f) { return f * c; }

} // namespace wz

#endif
