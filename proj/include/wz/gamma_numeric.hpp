#ifndef WZ_GAMMA_NUMERIC_HPP
#define WZ_GAMMA_NUMERIC_HPP

#include "wz/bigfloat.hpp"
#include "wz/gamma_term.hpp"

namespace wz {

// High-precision numeric evaluation of a Gamma-product term at a rational
// point.  Used as the independent oracle for the transcribed seed catalog.
inline BigFloat eval_gamma_term_numeric(const GammaTerm& t, const SymMap& vals, mpfr_prec_t prec) {
    BigFloat acc = BigFloat::from_rat(t.prefactor.eval_all(vals), prec);

    {
        Rat se = t.sign_exponent.eval(vals);
        if (!is_integer(se)) throw error("numeric eval: sign exponent is not an integer at this point");
        if (to_long(se) % 2 != 0) acc = -acc;
    }

    for (auto& [base, expo] : t.const_powers) {
        Rat e = expo.eval(vals);
        BigFloat b = BigFloat::zero(prec);
        Mpfr bb(prec), ee(prec);
        mpfr_set_q(bb.get(), base.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(ee.get(), e.get_mpq_t(), MPFR_RNDN);
        mpfr_pow(const_cast<mpfr_ptr>(b.value()), bb.get(), ee.get(), MPFR_RNDN);
        // base and exponent are exact at this precision only if representable;
        // widen by a few ulps to cover both roundings
        Mpfr extra(64);
        mpfr_set_ui_2exp(extra.get(), 256, mpfr_get_exp(b.value()) - prec, MPFR_RNDU);
        b.add_error(extra);
        acc = acc * b;
    }

    for (auto& [arg, p] : t.gamma_factors) {
        Rat x = arg.eval(vals);
        if (is_integer(x) && x <= 0)
            throw error("numeric eval: Gamma(" + arg.str() + ") at nonpositive integer");
        BigFloat g = BigFloat::zero(prec);
        Mpfr xx(prec);
        mpfr_set_q(xx.get(), x.get_mpq_t(), MPFR_RNDN);
        mpfr_gamma(const_cast<mpfr_ptr>(g.value()), xx.get(), MPFR_RNDN);
        Mpfr extra(64);
        mpfr_set_ui_2exp(extra.get(), 256, mpfr_get_exp(g.value()) - prec, MPFR_RNDU);
        g.add_error(extra);
        acc = acc * g.pow_int(p);
    }
    return acc;
}

} // namespace wz

#endif
