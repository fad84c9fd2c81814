#ifndef WZ_BIGFLOAT_HPP
#define WZ_BIGFLOAT_HPP

#include "wz/basics.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

namespace wz {

// Thin RAII wrapper around mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// Midpoint-radius value: |true - value| <= err, with err maintained as a
// rigorous upper bound (all radius arithmetic rounds up).
class BigFloat {
public:
    BigFloat() : val_(64), err_(kErrPrec) {
        mpfr_set_zero(val_.get(), 1);
        mpfr_set_zero(err_.get(), 1);
    }

    static BigFloat zero(mpfr_prec_t prec) {
        BigFloat r;
        mpfr_set_prec(r.val_.get(), prec);
        mpfr_set_zero(r.val_.get(), 1);
        return r;
    }

    static BigFloat from_rat(const Rat& q, mpfr_prec_t prec) {
        BigFloat r = zero(prec);
        mpfr_set_q(r.val_.get(), q.get_mpq_t(), MPFR_RNDN);
        r.bump_rounding();
        return r;
    }

    static BigFloat from_long(long v, mpfr_prec_t prec) {
        BigFloat r = zero(prec);
        mpfr_set_si(r.val_.get(), v, MPFR_RNDN);
        return r; // exact
    }

    // value with a caller-supplied absolute error bound (e.g. plugin data)
    static BigFloat from_decimal(const std::string& dec, long certified_digits, mpfr_prec_t prec) {
        BigFloat r = zero(prec);
        if (mpfr_set_str(r.val_.get(), dec.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.val_.get()))
            throw error("bad decimal literal: " + dec);
        r.bump_rounding();
        Mpfr extra(kErrPrec);
        mpfr_set_ui(extra.get(), 10, MPFR_RNDU);
        mpfr_pow_si(extra.get(), extra.get(), -certified_digits, MPFR_RNDU);
        mpfr_add(r.err_.get(), r.err_.get(), extra.get(), MPFR_RNDU);
        return r;
    }

    mpfr_srcptr value() const { return val_.get(); }
    mpfr_srcptr err() const { return err_.get(); }
    mpfr_prec_t prec() const { return mpfr_get_prec(val_.get()); }
    bool is_exact_zero() const { return mpfr_zero_p(val_.get()) && mpfr_zero_p(err_.get()); }

    double err_log10() const {
        if (mpfr_zero_p(err_.get())) return -1e9;
        return mpfr_get_d(err_.get(), MPFR_RNDU) == 0
                   ? static_cast<double>(mpfr_get_exp(err_.get())) * 0.30103
                   : std::log10(std::abs(mpfr_get_d(err_.get(), MPFR_RNDU)));
    }

    // certified |x| upper / lower bounds
    Mpfr abs_upper() const {
        Mpfr u(kErrPrec);
        mpfr_abs(u.get(), val_.get(), MPFR_RNDU);
        mpfr_add(u.get(), u.get(), err_.get(), MPFR_RNDU);
        return u;
    }
    Mpfr abs_lower() const {
        Mpfr l(kErrPrec);
        mpfr_abs(l.get(), val_.get(), MPFR_RNDD);
        mpfr_sub(l.get(), l.get(), err_.get(), MPFR_RNDD);
        if (mpfr_sgn(l.get()) < 0) mpfr_set_zero(l.get(), 1);
        return l;
    }

    // |this| certified below 10^-digits?
    bool certified_below_pow10(long digits) const {
        Mpfr u = abs_upper();
        Mpfr t(kErrPrec);
        mpfr_set_ui(t.get(), 10, MPFR_RNDD);
        mpfr_pow_si(t.get(), t.get(), -digits, MPFR_RNDD);
        return mpfr_cmp(u.get(), t.get()) < 0;
    }

    bool certified_nonzero() const {
        Mpfr l = abs_lower();
        return mpfr_sgn(l.get()) > 0;
    }

    BigFloat operator-() const {
        BigFloat r = *this;
        mpfr_neg(r.val_.get(), r.val_.get(), MPFR_RNDN);
        return r;
    }

    BigFloat operator+(const BigFloat& o) const {
        BigFloat r = zero(std::max(prec(), o.prec()));
        mpfr_add(r.val_.get(), val_.get(), o.val_.get(), MPFR_RNDN);
        mpfr_add(r.err_.get(), err_.get(), o.err_.get(), MPFR_RNDU);
        r.bump_rounding();
        return r;
    }
    BigFloat operator-(const BigFloat& o) const { return *this + (-o); }

    BigFloat operator*(const BigFloat& o) const {
        BigFloat r = zero(std::max(prec(), o.prec()));
        mpfr_mul(r.val_.get(), val_.get(), o.val_.get(), MPFR_RNDN);
        // err = |a| eb + |b| ea + ea eb
        Mpfr t(kErrPrec), u(kErrPrec);
        mpfr_abs(t.get(), val_.get(), MPFR_RNDU);
        mpfr_mul(t.get(), t.get(), o.err_.get(), MPFR_RNDU);
        mpfr_abs(u.get(), o.val_.get(), MPFR_RNDU);
        mpfr_mul(u.get(), u.get(), err_.get(), MPFR_RNDU);
        mpfr_add(t.get(), t.get(), u.get(), MPFR_RNDU);
        mpfr_mul(u.get(), err_.get(), o.err_.get(), MPFR_RNDU);
        mpfr_add(r.err_.get(), t.get(), u.get(), MPFR_RNDU);
        r.bump_rounding();
        return r;
    }

    BigFloat operator/(const BigFloat& o) const {
        Mpfr denom_low = o.abs_lower();
        if (mpfr_sgn(denom_low.get()) <= 0) throw error("ball division: denominator interval contains zero");
        BigFloat r = zero(std::max(prec(), o.prec()));
        mpfr_div(r.val_.get(), val_.get(), o.val_.get(), MPFR_RNDN);
        // err <= (ea + |result| * eb) / (|b| - eb)
        Mpfr t(kErrPrec), u(kErrPrec);
        mpfr_abs(t.get(), r.val_.get(), MPFR_RNDU);
        mpfr_mul(t.get(), t.get(), o.err_.get(), MPFR_RNDU);
        mpfr_add(t.get(), t.get(), err_.get(), MPFR_RNDU);
        mpfr_div(u.get(), t.get(), denom_low.get(), MPFR_RNDU);
        mpfr_set(r.err_.get(), u.get(), MPFR_RNDU);
        r.bump_rounding();
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }

    BigFloat mul_rat(const Rat& q, mpfr_prec_t prec_hint = 0) const {
        return *this * from_rat(q, prec_hint ? prec_hint : prec());
    }

    BigFloat pow_int(long e) const {
        if (e == 0) return from_long(1, prec());
        bool inv = e < 0;
        unsigned long m = inv ? -e : e;
        BigFloat base = *this, acc = from_long(1, prec());
        while (m) {
            if (m & 1) acc = acc * base;
            base = base * base;
            m >>= 1;
        }
        if (inv) return from_long(1, prec()) / acc;
        return acc;
    }

    BigFloat sqrt() const {
        Mpfr low = abs_lower();
        if (mpfr_sgn(val_.get()) < 0 || mpfr_sgn(low.get()) <= 0)
            throw error("ball sqrt: argument not certainly positive");
        BigFloat r = zero(prec());
        mpfr_sqrt(r.val_.get(), val_.get(), MPFR_RNDN);
        // |sqrt(x) - sqrt(x0)| <= err / (2 sqrt(low))
        Mpfr t(kErrPrec);
        mpfr_sqrt(t.get(), low.get(), MPFR_RNDD);
        mpfr_mul_ui(t.get(), t.get(), 2, MPFR_RNDD);
        mpfr_div(t.get(), err_.get(), t.get(), MPFR_RNDU);
        mpfr_set(r.err_.get(), t.get(), MPFR_RNDU);
        r.bump_rounding();
        return r;
    }

    // widen the radius by an externally derived bound
    void add_error(const Mpfr& extra) { mpfr_add(err_.get(), err_.get(), extra.get(), MPFR_RNDU); }
    void add_error_pow10(long digits10) {
        Mpfr t(kErrPrec);
        mpfr_set_ui(t.get(), 10, MPFR_RNDU);
        mpfr_pow_si(t.get(), t.get(), -digits10, MPFR_RNDU);
        add_error(t);
    }

    // Decimal string showing only certified digits.
    std::string str() const {
        if (mpfr_zero_p(val_.get())) {
            std::ostringstream os;
            os << "0 (+/- " << err_str() << ")";
            return os.str();
        }
        long digits = certified_decimal_digits();
        if (digits < 1) return "uncertain (+/- " + err_str() + ")";
        std::ostringstream os;
        char* s = nullptr;
        mpfr_exp_t e;
        s = mpfr_get_str(nullptr, &e, 10, digits, val_.get(), MPFR_RNDN);
        std::string m(s);
        mpfr_free_str(s);
        bool neg = m[0] == '-';
        if (neg) m = m.substr(1);
        os << (neg ? "-" : "") << "0." << m << "e" << e;
        return os.str();
    }

    std::string err_str() const {
        if (mpfr_zero_p(err_.get())) return "0";
        char buf[64];
        mpfr_snprintf(buf, sizeof buf, "%.3Re", err_.get());
        return buf;
    }

    // number of certified significant decimal digits of the midpoint
    long certified_decimal_digits() const {
        if (mpfr_zero_p(err_.get())) return prec() * 30103L / 100000L;
        if (mpfr_zero_p(val_.get())) return 0;
        Mpfr q(kErrPrec);
        mpfr_abs(q.get(), val_.get(), MPFR_RNDD);
        mpfr_div(q.get(), q.get(), err_.get(), MPFR_RNDD);
        if (mpfr_sgn(q.get()) <= 0) return 0;
        mpfr_log10(q.get(), q.get(), MPFR_RNDD);
        long d = mpfr_get_si(q.get(), MPFR_RNDD);
        return std::max(0L, d);
    }

private:
    static constexpr mpfr_prec_t kErrPrec = 64;

    void bump_rounding() {
        // account for the final rounding of val_: 1 ulp is a safe bound
        if (mpfr_zero_p(val_.get()) || !mpfr_number_p(val_.get())) return;
        Mpfr ulp(kErrPrec);
        mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(val_.get()) - prec(), MPFR_RNDU);
        mpfr_add(err_.get(), err_.get(), ulp.get(), MPFR_RNDU);
    }

    Mpfr val_;
    Mpfr err_;
};

inline mpfr_prec_t prec_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(static_cast<double>(digits) * 3.3219281 + 48);
}

} // namespace wz

#endif
