#ifndef WZ_WZ_HPP
#define WZ_WZ_HPP

#include "wz/gosper.hpp"

namespace wz {

struct WZPair {
    GammaTerm F;
    GammaTerm G;          // G = certificate * F
    RatFunc certificate;  // rational in (a..e, n, k)
};

// Apply Gosper in k to F(n+1,k) - F(n,k) = (rho_n - 1) F(n,k).  The shift
// quotient of the difference term is assembled in factored form; only the
// difference numerator W = num(rho_n) - den(rho_n) is expanded.
inline std::optional<WZPair> find_wz_mate(const GammaTerm& F) {
    FactoredRat frn = F.shift_quotient_factored(Sym::n);
    MultiPoly pos(frn.scalar), neg(Rat(1));
    for (auto& [f, e] : frn.factors)
        for (int i = 0; i < std::abs(e); ++i) {
            if (e > 0) pos *= f;
            else neg *= f;
        }
    MultiPoly W = pos - neg;
    if (W.is_zero()) return WZPair{F, F.scaled(RatFunc(Rat(0))), RatFunc(Rat(0))};

    FactoredRat rho = F.shift_quotient_factored(Sym::k);
    MultiPoly k1 = MultiPoly::var(Sym::k) + MultiPoly(Rat(1));
    rho.push(W.subst(Sym::k, k1), 1);
    rho.push(W, -1);
    for (auto& [f, e] : frn.factors)
        if (e < 0) {
            rho.push(f, -e);                    // den(rho_n)(k)
            rho.push(f.subst(Sym::k, k1), e);   // / den(rho_n)(k+1)
        }

    auto cert_t = detail::gosper_factored(rho, Sym::k);
    if (!cert_t) return std::nullopt;
    // cert = cert_t * (rho_n - 1), assembled with the denominator factored
    FactoredRat fc;
    fc.push(cert_t->num(), 1);
    fc.push(cert_t->den(), -1);
    fc.push(W, 1);
    for (auto& [f, e] : frn.factors)
        if (e < 0) fc.push(f, e);
    RatFunc cert = fc.to_ratfunc_smart();
    return WZPair{F, F.scaled(cert), cert};
}

// Exact check of F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k), divided by F(n,k):
//
//   rho_n - 1 = cert(n,k+1) rho_k - cert(n,k).
//
// With W/V = rho_n - 1 (V a product of tracked factors), u/v = rho_k
// (factored), cert = N/D, the relation multiplied through by
// D(k) D(k+1) v V is the polynomial identity
//
//   kscalar N(k+1) u D(k) V  -  N D(k+1) v V  =  W D(k) D(k+1) v.
//
// D is factored by trial division against the V-factors so that the big
// difference numerator W is only ever multiplied by small pieces.
inline bool verify_wz(const WZPair& p) {
    MultiPoly k1 = MultiPoly::var(Sym::k) + MultiPoly(Rat(1));

    FactoredRat frn = p.F.shift_quotient_factored(Sym::n);
    MultiPoly pos(frn.scalar), neg(Rat(1));
    std::vector<MultiPoly> Vfac;
    for (auto& [f, e] : frn.factors)
        for (int i = 0; i < std::abs(e); ++i) {
            if (e > 0) pos *= f;
            else {
                neg *= f;
                Vfac.push_back(f);
            }
        }
    MultiPoly W = pos - neg;

    if (p.certificate.is_zero()) return W.is_zero();
    if (W.is_zero()) return p.certificate.is_zero();

    FactoredRat frk = p.F.shift_quotient_factored(Sym::k);
    std::vector<MultiPoly> ufac, vfac;
    Rat kscalar = frk.scalar;
    for (auto& [f, e] : frk.factors)
        for (int i = 0; i < std::abs(e); ++i) (e > 0 ? ufac : vfac).push_back(f);

    const MultiPoly& N = p.certificate.num();

    // factor the certificate denominator against the V-linears
    std::vector<MultiPoly> Dfac;
    MultiPoly core = p.certificate.den();
    for (auto& v : Vfac) {
        if (core.is_constant()) break;
        Sym dv = Sym::k;
        if (!v.depends_on(dv))
            for (int s = 0; s < kNumSyms; ++s)
                if (v.depends_on(static_cast<Sym>(s))) {
                    dv = static_cast<Sym>(s);
                    break;
                }
        if (core.degree(dv) < v.degree(dv)) continue;
        MultiPoly r = pseudo_rem(core, v, dv);
        if (r.is_zero()) {
            core = exact_divide(core, v, dv);
            Dfac.push_back(v);
        }
    }
    Dfac.push_back(core); // residual chunk (small for genuine certificates)

    auto mul_list = [&](MultiPoly acc, const std::vector<MultiPoly>& fs, bool shifted) {
        for (auto& f : fs) {
            if (f.is_constant()) acc = acc * f.constant_value();
            else acc *= shifted ? f.subst(Sym::k, k1) : f;
        }
        return acc;
    };

    // The two V-carrying terms share the factor V, so compare
    //   [kscalar N(k+1) u D(k) - N D(k+1) v] * V  ==  W * [D(k) D(k+1) v],
    // keeping the single product involving W for last.
    MultiPoly a1 = N.subst(Sym::k, k1) * Rat(kscalar);
    a1 = mul_list(std::move(a1), ufac, false);
    a1 = mul_list(std::move(a1), Dfac, false);
    MultiPoly a2 = N;
    a2 = mul_list(std::move(a2), Dfac, true);
    a2 = mul_list(std::move(a2), vfac, false);
    MultiPoly bracket = a1 - a2;

    // Generically gcd(W, V) = 1, so the identity forces W | bracket; checking
    // quotient * V == D(k) D(k+1) v keeps every product small.  If the
    // division fails, fall back to comparing the fully expanded sides.
    try {
        Sym dv = Sym::k;
        if (!W.depends_on(dv)) throw error("W independent of k");
        MultiPoly qt = exact_divide(bracket, W, dv);
        MultiPoly lhs_small = mul_list(std::move(qt), Vfac, false);
        MultiPoly rhs_small = mul_list(MultiPoly(Rat(1)), Dfac, false);
        rhs_small = mul_list(std::move(rhs_small), Dfac, true);
        rhs_small = mul_list(std::move(rhs_small), vfac, false);
        return lhs_small == rhs_small;
    } catch (const error&) {
        MultiPoly lhs = mul_list(std::move(bracket), Vfac, false);
        MultiPoly rhs = W;
        rhs = mul_list(std::move(rhs), Dfac, false);
        rhs = mul_list(std::move(rhs), Dfac, true);
        rhs = mul_list(std::move(rhs), vfac, false);
        return (lhs - rhs).is_zero();
    }
}

enum class BoundaryStatus { clean, has_g_tail, has_F_limit, unknown };

inline const char* boundary_status_name(BoundaryStatus s) {
    switch (s) {
        case BoundaryStatus::clean: return "clean";
        case BoundaryStatus::has_g_tail: return "has_g_tail";
        case BoundaryStatus::has_F_limit: return "has_F_limit";
        default: return "unknown";
    }
}

struct IdentitySkeleton {
    PochhammerSummand lhs; // in k, from F(0,k)
    PochhammerSummand rhs; // in n, from G(n + n_shift, 0)
    BoundaryStatus boundary_status = BoundaryStatus::unknown;
    long n_shift = 0;
};

namespace detail {

// Ratio of two index-free Gamma-product constants as a rational function of
// the parameters, when Gamma and power factors cancel up to integer shifts.
inline std::optional<RatFunc> gamma_const_ratio(const GammaTerm& num, const GammaTerm& den) {
    if (!num.prefactor.is_constant() || !den.prefactor.is_constant())
        throw error("gamma_const_ratio: constants carry non-trivial prefactors");
    if (den.prefactor.is_zero()) throw error("gamma_const_ratio: zero denominator constant");
    RatFunc out(num.prefactor.constant_value() / den.prefactor.constant_value());

    // signs: (-1)^{e_num - e_den} must have an integer-constant exponent
    AffineExpr se = num.sign_exponent - den.sign_exponent;
    if (!se.is_constant()) return std::nullopt;
    if (!is_integer(se.constant)) return std::nullopt;
    if (to_long(se.constant) % 2 != 0) out = out * Rat(-1);

    // constant powers must cancel to integer exponents
    {
        std::vector<std::pair<Rat, AffineExpr>> pows = num.const_powers;
        for (auto& [b, e] : den.const_powers) {
            bool merged = false;
            for (auto& [b2, e2] : pows)
                if (b2 == b) {
                    e2 = e2 - e;
                    merged = true;
                    break;
                }
            if (!merged) pows.emplace_back(b, e * Rat(-1));
        }
        for (auto& [b, e] : pows) {
            if (!e.is_constant()) return std::nullopt;
            if (e.constant == 0) continue;
            if (!is_integer(e.constant)) return std::nullopt;
            out = out * rat_pow(b, to_long(e.constant));
        }
    }

    // Gamma factors: group by parameter part plus fractional constant;
    // within a group everything reduces to the smallest argument.
    std::vector<std::pair<AffineExpr, int>> gam = num.gamma_factors;
    for (auto& [a, p] : den.gamma_factors) {
        bool merged = false;
        for (auto& [a2, p2] : gam)
            if (a2 == a) {
                p2 -= p;
                merged = true;
                break;
            }
        if (!merged) gam.emplace_back(a, -p);
    }
    std::erase_if(gam, [](auto& g) { return g.second == 0; });

    while (!gam.empty()) {
        // find a partner differing by a nonzero integer
        bool reduced = false;
        for (size_t i = 0; i < gam.size() && !reduced; ++i) {
            for (size_t j = 0; j < gam.size() && !reduced; ++j) {
                if (i == j) continue;
                AffineExpr diff = gam[i].first - gam[j].first;
                if (!diff.is_constant() || !is_integer(diff.constant)) continue;
                long m = to_long(diff.constant);
                if (m <= 0) continue;
                // Gamma(x + m) = Gamma(x) * (x)_m with x = gam[j].first
                MultiPoly x = gam[j].first.to_poly();
                MultiPoly poch(Rat(1));
                for (long step = 0; step < m; ++step) poch *= x + MultiPoly(Rat(step));
                out = out * RatFunc::poly(poch).pow(gam[i].second);
                gam[j].second += gam[i].second;
                gam.erase(gam.begin() + i);
                std::erase_if(gam, [](auto& g) { return g.second == 0; });
                reduced = true;
            }
        }
        if (!reduced) break;
    }
    if (!gam.empty()) return std::nullopt;
    return out;
}

} // namespace detail

// Build the summation identity sum_k lhs(k) = sum_n rhs(n) from a WZ pair,
// following the paper's sum_{n>=1} G(n-1,0) convention via n_shift.
// Cleanness of the boundary is never decided here; the caller asserts it.
inline IdentitySkeleton assemble_identity(const WZPair& p, long n_shift, bool assume_clean) {
    IdentitySkeleton out;
    out.n_shift = n_shift;
    out.boundary_status = assume_clean ? BoundaryStatus::clean : BoundaryStatus::has_g_tail;

    GammaTerm lhs_term = p.F.subst(Sym::n, AffineExpr(Rat(0)));
    NormalForm lnf = normal_form_at(lhs_term, Sym::k);

    std::map<Sym, AffineExpr> shift_map{{Sym::n, AffineExpr::sym(Sym::n) + Rat(n_shift)},
                                        {Sym::k, AffineExpr(Rat(0))}};
    GammaTerm rhs_term = p.G.subst(shift_map);
    NormalForm rnf = normal_form_at(rhs_term, Sym::n);

    auto ratio = detail::gamma_const_ratio(rnf.gamma_constant, lnf.gamma_constant);
    if (!ratio)
        throw error("assemble_identity: boundary Gamma constants do not reduce to a rational ratio");

    out.lhs = lnf.summand;
    out.rhs = rnf.summand;
    out.rhs.prefactor = out.rhs.prefactor * *ratio;

    long forced_start = std::max(0L, -n_shift);
    if (rnf.summand.start > forced_start)
        throw error("assemble_identity: normal form starts later than the shift allows");
    out.rhs.start = forced_start;
    return out;
}

} // namespace wz

#endif
