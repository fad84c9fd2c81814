#ifndef WZ_POLYOPS_HPP
#define WZ_POLYOPS_HPP

#include "wz/multipoly.hpp"
#include "wz/upoly.hpp"

#include <random>

#ifdef WZ_PROFILE
#include <chrono>
struct WzProf {
    long gcd_calls = 0, gcd_ms = 0, heu_calls = 0, heu_ms = 0, cert_calls = 0, cert_ms = 0,
         prs_calls = 0, prs_ms = 0, ed_calls = 0, ed_ms = 0;
    static WzProf& get() { static WzProf w; return w; }
    static long now() {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now().time_since_epoch())
            .count();
    }
    void print() const {
        fprintf(stderr,
                "[prof] gcd %ld calls %ld ms | heu %ld calls %ld ms | cert %ld calls %ld ms | prs %ld calls %ld ms | exdiv %ld calls %ld ms\n",
                gcd_calls, gcd_ms, heu_calls, heu_ms, cert_calls, cert_ms, prs_calls, prs_ms,
                ed_calls, ed_ms);
    }
};
struct WzProfGuard {
    long* slot;
    long t0;
    WzProfGuard(long* calls, long* ms) : slot(ms), t0(WzProf::now()) { ++*calls; }
    ~WzProfGuard() { *slot += WzProf::now() - t0; }
};
#define WZ_PROF(field) \
    WzProfGuard _wzg(&WzProf::get().field##_calls, &WzProf::get().field##_ms)
#else
#define WZ_PROF(field)
#endif

namespace wz {

// Exact polynomial division; throws if q does not divide p.
// Division is organized along the given main variable.
inline MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& q, Sym var) {
    WZ_PROF(ed);
    if (q.is_zero()) throw error("exact_divide by zero");
    if (p.is_zero()) return MultiPoly();
    if (q.is_constant()) return p * (Rat(1) / q.constant_value());

    auto qc = q.coeffs_in(var);
    int32_t dq = static_cast<int32_t>(qc.size()) - 1;
    const MultiPoly& qlead = qc[dq];

    MultiPoly rem = p;
    std::vector<MultiPoly> quot;
    while (!rem.is_zero()) {
        int32_t dr = rem.degree(var);
        if (dr < dq) throw error("exact_divide: not divisible (remainder)");
        MultiPoly rlead = rem.coeff_of(var, dr);
        // rlead must be divisible by qlead in the coefficient ring; recurse
        // on a lower variable, or fall back to constant division.
        MultiPoly c;
        if (qlead.is_constant()) {
            c = rlead * (Rat(1) / qlead.constant_value());
        } else {
            Sym sub = var;
            for (int i = 0; i < kNumSyms; ++i) {
                if (static_cast<Sym>(i) != var &&
                    (qlead.depends_on(static_cast<Sym>(i)) || rlead.depends_on(static_cast<Sym>(i)))) {
                    sub = static_cast<Sym>(i);
                    break;
                }
            }
            if (sub == var) throw error("exact_divide: cannot pick sub-variable");
            c = exact_divide(rlead, qlead, sub);
        }
        if ((int32_t)quot.size() < dr - dq + 1) quot.resize(dr - dq + 1);
        quot[dr - dq] = c;
        MultiPoly xshift = MultiPoly::var(var, dr - dq);
        rem -= c * xshift * q;
        if (!rem.is_zero() && rem.degree(var) >= dr) throw error("exact_divide: no progress");
    }
    return MultiPoly::from_coeffs(var, quot);
}

// Pseudo-remainder of p by q in var: lc(q)^(dp-dq+1) * p = Q*q + R.
inline MultiPoly pseudo_rem(const MultiPoly& p, const MultiPoly& q, Sym var) {
    int32_t dq = q.degree(var);
    if (dq < 0) throw error("pseudo_rem by zero");
    MultiPoly r = p;
    MultiPoly qlead = q.coeff_of(var, dq);
    int32_t dr = r.degree(var);
    long steps = dr - dq + 1;
    if (steps <= 0) return r;
    while (!r.is_zero() && (dr = r.degree(var)) >= dq) {
        MultiPoly rlead = r.coeff_of(var, dr);
        r = r * qlead - rlead * MultiPoly::var(var, dr - dq) * q;
        --steps;
    }
    // Keep the classical normalization lc(q)^(dp-dq+1).
    while (steps-- > 0) r = r * qlead;
    return r;
}

MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q, Sym var);

namespace detail {

// Fast certificate of coprimality: a degree-preserving specialization maps
// any nontrivial common divisor to a nontrivial common divisor of the
// specialized polynomials.  A common factor must depend on some shared
// symbol, so checking a trivial univariate gcd for every shared symbol
// certifies gcd = 1.  Returns false when no certificate was obtained.
inline bool certify_coprime(const MultiPoly& p, const MultiPoly& q) {
    WZ_PROF(cert);
    static thread_local std::mt19937 rng(0x5eed1234);
    std::uniform_int_distribution<long> num(-997, 997);
    std::uniform_int_distribution<long> den(1, 37);
    for (int s = 0; s < kNumSyms; ++s) {
        Sym sym = static_cast<Sym>(s);
        long dp = p.degree(sym), dq = q.degree(sym);
        if (dp < 1 || dq < 1) continue; // no common factor can involve sym
        bool certified = false;
        int plausible = 0;
        for (int attempt = 0; attempt < 4 && !certified; ++attempt) {
            SymMap spec{};
            for (int i = 0; i < kNumSyms; ++i)
                if (i != s) spec[i] = rat_of(num(rng), den(rng));
            MultiPoly ps = p.eval_partial(spec);
            MultiPoly qs = q.eval_partial(spec);
            if (ps.degree(sym) != dp || qs.degree(sym) != dq) continue;
            auto to_up = [&](const MultiPoly& m) {
                auto cs = m.coeffs_in(sym);
                std::vector<Rat> out(cs.size());
                for (size_t i = 0; i < cs.size(); ++i) out[i] = cs[i].constant_value();
                return Upoly::from_coeffs(out);
            };
            Upoly g = upoly_gcd(to_up(ps), to_up(qs));
            if (g.degree() == 0) certified = true;
            else if (++plausible >= 2) return false; // likely a real common factor
        }
        if (!certified) return false;
    }
    return true;
}

// Heuristic gcd by integer evaluation at a large point with balanced-adic
// reconstruction; the candidate is verified by exact division, so the result
// is unconditionally correct.  Returns nullopt when the heuristic fails.
inline Int poly_height(const MultiPoly& p) {
    Int h(0);
    for (auto& [ev, c] : p.terms()) {
        Int a = abs(c.get_num());
        if (a > h) h = a;
    }
    return h;
}

inline std::optional<MultiPoly> gcdheu(const MultiPoly& p, const MultiPoly& q,
                                       const std::vector<Sym>& vars, int depth = 0) {
    WZ_PROF(heu);
    if (vars.empty()) {
        Int g;
        if (!p.is_constant() || !q.is_constant()) return std::nullopt;
        Rat pc = p.constant_value(), qc = q.constant_value();
        if (pc.get_den() != 1 || qc.get_den() != 1) return std::nullopt;
        mpz_gcd(g.get_mpz_t(), pc.get_num().get_mpz_t(), qc.get_num().get_mpz_t());
        return MultiPoly(Rat(g));
    }
    Sym x = vars.back();
    std::vector<Sym> rest(vars.begin(), vars.end() - 1);
    long degcap = std::max(p.degree(x), q.degree(x));
    if (degcap < 0) return std::nullopt;

    static thread_local std::mt19937 xi_rng(0xbadc0de);
    std::uniform_int_distribution<long> jitter(0, 1 << 12);
    // candidates are verified by division, so xi only needs to be likely
    // lucky, not provably large
    Int xi = 2 * std::min(poly_height(p), poly_height(q)) + 29 + 2 * jitter(xi_rng);
    for (int attempt = 0; attempt < 5; ++attempt) {
        MultiPoly pe, qe;
        {
            SymMap spec{};
            spec[sym_index(x)] = Rat(xi);
            pe = p.eval_partial(spec);
            qe = q.eval_partial(spec);
        }
        if (pe.is_zero() || qe.is_zero()) {
            xi = xi * 2 + 1;
            continue;
        }
        auto gamma = gcdheu(pe, qe, rest, depth + 1);
        if (gamma && !gamma->is_zero()) {
            // balanced xi-adic lift of gamma along x
            MultiPoly g;
            MultiPoly cur = *gamma;
            long i = 0;
            bool ok = true;
            while (!cur.is_zero()) {
                if (i > degcap) {
                    ok = false;
                    break;
                }
                MultiPoly ci;
                for (auto& [ev, c] : cur.terms()) {
                    if (c.get_den() != 1) {
                        ok = false;
                        break;
                    }
                    Int r;
                    mpz_mod(r.get_mpz_t(), c.get_num().get_mpz_t(), xi.get_mpz_t());
                    if (r * 2 > xi) r -= xi;
                    if (r != 0) ci.add_term(ev, Rat(r));
                }
                if (!ok) break;
                ExpVec xv{};
                xv[sym_index(x)] = static_cast<int32_t>(i);
                g += ci * MultiPoly::mono(xv, Rat(1));
                cur = (cur - ci) * Rat(Rat(1) / Rat(xi));
                ++i;
            }
            if (ok && !g.is_zero()) {
                g = g * (Rat(1) / g.integer_content());
                bool divides = true;
                if (!g.is_constant()) {
                    Sym dv = x;
                    if (!g.depends_on(dv))
                        for (int s = 0; s < kNumSyms; ++s)
                            if (g.depends_on(static_cast<Sym>(s))) {
                                dv = static_cast<Sym>(s);
                                break;
                            }
                    try {
                        exact_divide(p, g, dv);
                        exact_divide(q, g, dv);
                    } catch (const error&) {
                        divides = false;
                    }
                }
                if (divides) return g;
            }
        }
        xi = xi * 3 / 2 + 31 + 2 * jitter(xi_rng);
        if (attempt >= 2) xi = xi * xi / 3 + 5; // escalate if small points keep failing
    }
    return std::nullopt;
}

// Content of p with respect to var: gcd of the coefficients, which live in
// the remaining symbols.
inline MultiPoly poly_content(const MultiPoly& p, Sym var) {
    auto cs = p.coeffs_in(var);
    MultiPoly g;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        if (g.is_zero()) {
            g = c;
            continue;
        }
        if (g.is_constant()) break;
        Sym sub = var;
        for (int i = 0; i < kNumSyms; ++i) {
            if (static_cast<Sym>(i) != var && (g.depends_on(static_cast<Sym>(i)) || c.depends_on(static_cast<Sym>(i)))) {
                sub = static_cast<Sym>(i);
                break;
            }
        }
        if (sub == var) {
            // both are rational constants
            g = MultiPoly(Rat(1));
            break;
        }
        g = poly_gcd(g, c, sub);
    }
    if (g.is_zero()) return g;
    if (g.is_constant()) return MultiPoly(Rat(1));
    return g;
}

// Normalize to integer-primitive with positive leading coefficient.
inline MultiPoly make_primitive(MultiPoly p) {
    if (p.is_zero()) return p;
    Rat c = p.integer_content();
    return p * (Rat(1) / c);
}

} // namespace detail

// Primitive greatest common divisor with respect to var, computed by a
// primitive pseudo-remainder sequence with recursive content handling.
MultiPoly poly_gcd_inner(const MultiPoly& p, const MultiPoly& q, Sym var);



// Primitive greatest common divisor.  Monomial contents are split off
// directly, and every candidate from the inner strategies is verified by
// exact division before being returned.
inline MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q, Sym var) {
    WZ_PROF(gcd);
    if (p.is_zero() && q.is_zero()) throw error("gcd(0,0)");
    if (p.is_zero()) return detail::make_primitive(q);
    if (q.is_zero()) return detail::make_primitive(p);
    if (p.is_constant() || q.is_constant()) return MultiPoly(Rat(1));

    ExpVec mp = p.monomial_content(), mq = q.monomial_content();
    ExpVec shared{};
    bool have_mono = false;
    for (int i = 0; i < kNumSyms; ++i) {
        shared[i] = std::min(mp[i], mq[i]);
        if (shared[i] > 0) have_mono = true;
    }
    MultiPoly pr = mp.is_zero() ? p : p.divide_monomial(mp);
    MultiPoly qr = mq.is_zero() ? q : q.divide_monomial(mq);

    MultiPoly core = poly_gcd_inner(pr, qr, var);

    // verify: a wrong core would silently corrupt canonical forms downstream
    if (!core.is_constant()) {
        Sym dv = var;
        if (!core.depends_on(dv))
            for (int s = 0; s < kNumSyms; ++s)
                if (core.depends_on(static_cast<Sym>(s))) {
                    dv = static_cast<Sym>(s);
                    break;
                }
        try {
            exact_divide(pr, core, dv);
            exact_divide(qr, core, dv);
        } catch (const error&) {
            throw error("poly_gcd: inner strategy produced a non-divisor (please report)");
        }
    } else {
        core = MultiPoly(Rat(1));
    }
    if (have_mono) core *= MultiPoly::mono(shared, Rat(1));
    return detail::make_primitive(core);
}

inline MultiPoly poly_gcd_inner(const MultiPoly& p, const MultiPoly& q, Sym var) {
    if (p.is_constant() || q.is_constant()) return MultiPoly(Rat(1));

    // mutual trial division: one pseudo-remainder decides "p divides q" when
    // the degrees in some shared variable are close, which covers the common
    // case of one operand being a factor of the other
    {
        auto try_divides = [&](const MultiPoly& small, const MultiPoly& big) -> bool {
            for (int s = 0; s < kNumSyms; ++s) {
                Sym sym = static_cast<Sym>(s);
                long ds = small.degree(sym), db = big.degree(sym);
                if (ds < 1 || db < ds) continue;
                if (db - ds > 4) continue; // too many reduction steps to be cheap
                size_t lc_terms = small.coeff_of(sym, ds).terms().size();
                if ((db - ds + 1) * big.terms().size() * lc_terms > 6000000) continue;
                try {
                    MultiPoly r = pseudo_rem(big, small, sym);
                    if (r.is_zero()) {
                        exact_divide(big, small, sym);
                        return true;
                    }
                } catch (const error&) {
                }
                return false;
            }
            return false;
        };
        if (try_divides(p, q)) return detail::make_primitive(p);
        if (try_divides(q, p)) return detail::make_primitive(q);
    }

    if (detail::certify_coprime(p, q)) return MultiPoly(Rat(1));

    // heuristic evaluation gcd; verified by exact division, with maximality
    // certified by coprimality of the cofactors (otherwise fall through to
    // the primitive remainder sequence)
    {
        std::vector<Sym> vars;
        for (int i = 0; i < kNumSyms; ++i) {
            Sym s = static_cast<Sym>(i);
            if (p.depends_on(s) || q.depends_on(s)) vars.push_back(s);
        }
        MultiPoly pz = detail::make_primitive(p);
        MultiPoly qz = detail::make_primitive(q);
        auto h = detail::gcdheu(pz, qz, vars);
        if (h && !h->is_constant()) {
            MultiPoly g = detail::make_primitive(*h);
            Sym dv = var;
            if (!g.depends_on(dv))
                for (int s = 0; s < kNumSyms; ++s)
                    if (g.depends_on(static_cast<Sym>(s))) {
                        dv = static_cast<Sym>(s);
                        break;
                    }
            try {
                MultiPoly cp = exact_divide(pz, g, dv);
                MultiPoly cq = exact_divide(qz, g, dv);
                if (detail::certify_coprime(cp, cq)) return g;
            } catch (const error&) {
            }
        }
    }

    int32_t dp = p.degree(var), dq = q.degree(var);
    if (dp < 0 || dq < 0) throw error("poly_gcd: bad main variable");
    if (dp == 0 || dq == 0) {
        // One operand is free of var; gcd divides it, so gcd is the content gcd.
        MultiPoly cp = dp == 0 ? p : detail::poly_content(p, var);
        MultiPoly cq = dq == 0 ? q : detail::poly_content(q, var);
        if (cp.is_constant() || cq.is_constant()) return MultiPoly(Rat(1));
        Sym sub = var;
        for (int i = 0; i < kNumSyms; ++i)
            if (static_cast<Sym>(i) != var && (cp.depends_on(static_cast<Sym>(i)) || cq.depends_on(static_cast<Sym>(i)))) {
                sub = static_cast<Sym>(i);
                break;
            }
        if (sub == var) return MultiPoly(Rat(1));
        return detail::make_primitive(poly_gcd(cp, cq, sub));
    }

    MultiPoly a = dp >= dq ? p : q;
    MultiPoly b = dp >= dq ? q : p;
    MultiPoly ca = detail::poly_content(a, var);
    MultiPoly cb = detail::poly_content(b, var);
    MultiPoly content_gcd(Rat(1));
    if (!ca.is_constant() && !cb.is_constant()) {
        Sym sub = var;
        for (int i = 0; i < kNumSyms; ++i)
            if (static_cast<Sym>(i) != var && (ca.depends_on(static_cast<Sym>(i)) || cb.depends_on(static_cast<Sym>(i)))) {
                sub = static_cast<Sym>(i);
                break;
            }
        if (sub != var) content_gcd = poly_gcd(ca, cb, sub);
    }
    if (!ca.is_constant()) a = exact_divide(a, ca, var);
    if (!cb.is_constant()) b = exact_divide(b, cb, var);
    a = detail::make_primitive(a);
    b = detail::make_primitive(b);

    while (true) {
        MultiPoly r = pseudo_rem(a, b, var);
        if (r.is_zero()) break;
        if (r.degree(var) <= 0) {
            b = MultiPoly(Rat(1));
            break;
        }
        // the gcd of the monomial-content-free inputs has no monomial factor,
        // so remainders can be stripped of theirs outright
        ExpVec mr = r.monomial_content();
        if (!mr.is_zero()) r = r.divide_monomial(mr);
        MultiPoly cr = detail::poly_content(r, var);
        if (!cr.is_constant()) r = exact_divide(r, cr, var);
        r = detail::make_primitive(r);
        a = b;
        b = r;
    }
    MultiPoly g = detail::make_primitive(b * content_gcd);
    return g;
}

// Resultant of p and q with respect to var, as the determinant of the
// Sylvester matrix, computed fraction-free (Bareiss) over the coefficient
// ring.  Exact division steps pick an auxiliary variable automatically.
inline MultiPoly poly_resultant(const MultiPoly& p, const MultiPoly& q, Sym var) {
    int32_t dp = p.degree(var), dq = q.degree(var);
    if (dp <= 0 && dq <= 0) throw error("resultant: both inputs constant in variable");
    if (p.is_zero() || q.is_zero()) return MultiPoly();
    if (dp == 0) return p.pow(dq);
    if (dq == 0) return q.pow(dp);

    auto pc = p.coeffs_in(var);
    auto qc = q.coeffs_in(var);
    int n = dp + dq;
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n));
    for (int r = 0; r < dq; ++r)
        for (int j = 0; j <= dp; ++j) m[r][r + j] = pc[dp - j];
    for (int r = 0; r < dp; ++r)
        for (int j = 0; j <= dq; ++j) m[dq + r][r + j] = qc[dq - j];

    auto pick_aux = [&](const MultiPoly& x, const MultiPoly& y) -> std::optional<Sym> {
        for (int i = 0; i < kNumSyms; ++i) {
            Sym s = static_cast<Sym>(i);
            if (s != var && (x.depends_on(s) || y.depends_on(s))) return s;
        }
        return std::nullopt;
    };

    MultiPoly prev(Rat(1));
    int sign = 1;
    for (int c = 0; c < n - 1; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return MultiPoly(); // singular: resultant 0
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < n; ++j) {
                MultiPoly num = m[r][j] * m[c][c] - m[r][c] * m[c][j];
                if (prev.is_constant()) {
                    m[r][j] = num * (Rat(1) / prev.constant_value());
                } else if (num.is_zero()) {
                    m[r][j] = MultiPoly();
                } else {
                    auto aux = pick_aux(num, prev);
                    m[r][j] = aux ? exact_divide(num, prev, *aux) : num * (Rat(1) / prev.constant_value());
                }
            }
            m[r][c] = MultiPoly();
        }
        prev = m[c][c];
    }
    MultiPoly det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

} // namespace wz

#endif
