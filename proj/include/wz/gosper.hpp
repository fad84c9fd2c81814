#ifndef WZ_GOSPER_HPP
#define WZ_GOSPER_HPP

#include "wz/gamma_term.hpp"
#include "wz/pochhammer.hpp"

#include <map>
#include <random>
#include <set>

namespace wz {

namespace detail {

// Nonnegative integer roots of a rational-coefficient univariate polynomial,
// complete by Cauchy-bound scan on the squarefree part.
inline std::vector<long> integer_roots_nonneg(const Upoly& p, long cap = 200000) {
    std::vector<long> roots;
    if (p.is_zero()) throw error("integer roots of the zero polynomial");
    Upoly q = p;
    {
        std::vector<Rat> cs = q.coeffs();
        size_t v = 0;
        while (v < cs.size() && cs[v] == 0) ++v;
        if (v > 0) {
            roots.push_back(0);
            cs.erase(cs.begin(), cs.begin() + v);
            q = Upoly::from_coeffs(cs);
        }
    }
    if (q.degree() < 1) return roots;
    Upoly g = upoly_gcd(q, q.derivative());
    if (g.degree() > 0) q = q.divmod(g).first;
    Rat maxq(0);
    for (long j = 0; j < q.degree(); ++j) {
        Rat r = abs(q.coeff(j) / q.lead());
        if (r > maxq) maxq = r;
    }
    Rat bound = maxq + 1;
    if (bound > Rat(cap)) throw error("integer root scan bound exceeds cap");
    long b = to_long(ceil_rat(bound));
    for (long m = 1; m <= b; ++m)
        if (q.eval(Rat(m)) == 0) roots.push_back(m);
    return roots;
}

inline Upoly multipoly_to_upoly(const MultiPoly& p, Sym var) {
    auto cs = p.coeffs_in(var);
    std::vector<Rat> out(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].is_constant()) throw error("multipoly_to_upoly: residual symbols");
        out[i] = cs[i].constant_value();
    }
    return Upoly::from_coeffs(out);
}

// Candidate shifts j >= 0 with gcd(fa(x), fb(x+j)) nontrivial.  A true
// dispersion survives any degree-preserving rational specialization, so the
// shifts where the specialized univariate gcd is nontrivial form a superset
// of the true dispersions; the caller confirms each candidate symbolically.
// The scan range is bounded by the root bounds of the specialized inputs.
inline std::vector<long> pair_dispersions(const MultiPoly& fa, const MultiPoly& fb, Sym var) {
    long da = fa.degree(var), db = fb.degree(var);
    if (da < 1 || db < 1) return {};

    if (da == 1 && db == 1) {
        // u1 (v0 + v1 j) - v1 u0 = 0 must hold identically in the parameters
        MultiPoly u1 = fa.coeff_of(var, 1), u0 = fa.coeff_of(var, 0);
        MultiPoly v1 = fb.coeff_of(var, 1), v0 = fb.coeff_of(var, 0);
        MultiPoly r1 = u1 * v0 - v1 * u0;
        MultiPoly r2 = u1 * v1;
        if (r1.is_zero()) return {0};
        // r1 = -j * r2 for a rational integer j
        auto& ln = r1.leading();
        auto& ld = r2.leading();
        if (!(ln.first == ld.first)) return {};
        Rat q = -(ln.second / ld.second);
        if (!is_integer(q) || q < 0) return {};
        if (!(r1 == r2 * (-q))) return {};
        return {to_long(q)};
    }

    static thread_local std::mt19937 rng(0xd15e9);
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 3);
    // Fujiwara-style root-magnitude bound, computed with generous slack in
    // log2 via integer bit lengths
    auto root_bound = [](const Upoly& u) -> double {
        double lead_num = mpz_sizeinbase(u.lead().get_num().get_mpz_t(), 2);
        double lead_den = mpz_sizeinbase(u.lead().get_den().get_mpz_t(), 2);
        double best = 0;
        long d = u.degree();
        for (long i = 0; i < d; ++i) {
            if (u.coeff(i) == 0) continue;
            double cn = mpz_sizeinbase(u.coeff(i).get_num().get_mpz_t(), 2);
            double cd = mpz_sizeinbase(u.coeff(i).get_den().get_mpz_t(), 2);
            double log_ratio = (cn - cd) - (lead_num - lead_den) + 2;
            best = std::max(best, log_ratio / static_cast<double>(d - i));
        }
        return best + 2; // log2 of the bound
    };
    double best_bound_log = 1e9;
    Upoly best_ua, best_ub;
    bool have = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
        SymMap spec{};
        for (int i = 0; i < kNumSyms; ++i)
            if (static_cast<Sym>(i) != var) {
                long nv = num(rng);
                spec[i] = rat_of(nv == 0 ? 1 : nv, den(rng));
            }
        MultiPoly a = fa.eval_partial(spec);
        MultiPoly b = fb.eval_partial(spec);
        if (a.degree(var) != da || b.degree(var) != db) continue;
        Upoly ua = multipoly_to_upoly(a, var);
        Upoly ub = multipoly_to_upoly(b, var);
        double bl = std::max(root_bound(ua), root_bound(ub)) + 1; // sum of two roots <= 2*max
        if (bl < best_bound_log) {
            best_bound_log = bl;
            best_ua = ua;
            best_ub = ub;
            have = true;
        }
        if (bl <= 12) break; // small enough, stop sampling
    }
    if (!have || best_bound_log > 15)
        throw error("pair_dispersions: no usable specialization (root bound too large)");
    long bound = static_cast<long>(std::ldexp(1.0, static_cast<int>(best_bound_log) + 1)) + 2;
    std::vector<long> out;
    Upoly ubj = best_ub;
    for (long j = 0; j <= bound; ++j) {
        if (upoly_gcd(best_ua, ubj).degree() > 0) out.push_back(j);
        if (j < bound) ubj = ubj.shift(Rat(1));
    }
    return out;
}

struct FactorLists {
    Rat scalar{1};
    std::vector<MultiPoly> num, den; // flattened, integer-primitive factors
};

inline FactorLists factor_lists(const FactoredRat& fr) {
    FactorLists out;
    out.scalar = fr.scalar;
    for (auto& [f, e] : fr.factors)
        for (int i = 0; i < std::abs(e); ++i) (e > 0 ? out.num : out.den).push_back(f);
    return out;
}

struct GosperDecomposition {
    MultiPoly A, B, C; // rho = A(x) C(x+1) / (B(x) C(x))
};

// Factor-pairwise Gosper decomposition: cancellations and dispersion
// extractions never multiply the big chunks together.
inline GosperDecomposition gosper_decompose_lists(FactorLists L, Sym var) {
    auto shift_poly = [&](const MultiPoly& p, long by) {
        return p.subst(var, MultiPoly::var(var) + MultiPoly(Rat(by)));
    };
    auto divide_by = [&](MultiPoly& target, const MultiPoly& g) {
        Sym dv = var;
        if (!g.depends_on(dv))
            for (int s = 0; s < kNumSyms; ++s)
                if (g.depends_on(static_cast<Sym>(s))) {
                    dv = static_cast<Sym>(s);
                    break;
                }
        target = exact_divide(target, g, dv);
    };

    // dispersion events per factor pair; only those pairs are revisited
    std::map<long, std::vector<std::pair<size_t, size_t>>> events;
    for (size_t i = 0; i < L.num.size(); ++i)
        for (size_t l = 0; l < L.den.size(); ++l)
            for (long j : pair_dispersions(L.num[i], L.den[l], var))
                events[j].emplace_back(i, l);

    std::vector<MultiPoly> cfactors;
    for (auto& [j, pairs] : events) {
        for (auto& [i, l] : pairs) {
            MultiPoly& fa = L.num[i];
            MultiPoly& fb = L.den[l];
            if (fa.is_constant() || !fa.depends_on(var)) continue;
            if (fb.is_constant() || !fb.depends_on(var)) continue;
            while (true) {
                MultiPoly fbj = shift_poly(fb, j);
                if (fa.is_constant() || fbj.is_constant()) break;
                MultiPoly g = poly_gcd(fa, fbj, var);
                if (g.degree(var) < 1) break;
                divide_by(fa, g);
                MultiPoly gback = shift_poly(g, -j);
                divide_by(fb, gback);
                if (j > 0)
                    for (long s = 1; s <= j; ++s) cfactors.push_back(shift_poly(g, -s));
            }
        }
    }

    GosperDecomposition d;
    d.A = MultiPoly(L.scalar);
    for (auto& f : L.num) d.A = f.is_constant() ? d.A * f.constant_value() : d.A * f;
    d.B = MultiPoly(Rat(1));
    for (auto& f : L.den) d.B = f.is_constant() ? d.B * f.constant_value() : d.B * f;
    d.C = MultiPoly(Rat(1));
    for (auto& f : cfactors) d.C *= f;
    // normalize the scalar: keep B integer-primitive positive-lead
    Rat bc = d.B.integer_content();
    d.A = d.A * (Rat(1) / bc);
    d.B = d.B * (Rat(1) / bc);
    return d;
}

// Solve the linear system M s = rhs over the fraction field of the
// multivariate polynomial ring by peeling: rows are processed from the
// highest power down, and whenever a row involves exactly one still-unknown
// coefficient, that coefficient is solved by a single division.  Rows
// coupling several unknowns are deferred and revisited; a small dense
// elimination mops up whatever remains.  This keeps intermediate objects at
// the scale of the true solution instead of at minor scale.  Returns nullopt
// when inconsistent.
inline std::optional<std::vector<RatFunc>> solve_poly_system(std::vector<std::vector<MultiPoly>> mp,
                                                             std::vector<MultiPoly> rhsp) {
    size_t rows = mp.size(), cols = rows ? mp[0].size() : 0;
    std::vector<std::optional<RatFunc>> sol(cols);
    std::vector<bool> row_done(rows, false);

    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t ri = rows; ri-- > 0;) {
            if (row_done[ri]) continue;
            std::vector<size_t> unknown;
            for (size_t j = 0; j < cols; ++j)
                if (!mp[ri][j].is_zero() && !sol[j]) unknown.push_back(j);
            if (unknown.size() > 1) continue;
            // residual = rhs - sum over known columns
            RatFunc acc = RatFunc::poly(rhsp[ri]);
            for (size_t j = 0; j < cols; ++j)
                if (!mp[ri][j].is_zero() && sol[j]) acc = acc - RatFunc::poly(mp[ri][j]) * *sol[j];
            if (unknown.empty()) {
                if (!acc.is_zero()) return std::nullopt;
            } else {
                sol[unknown[0]] = acc / RatFunc::poly(mp[ri][unknown[0]]);
            }
            row_done[ri] = true;
            progress = true;
        }
    }

    // leftover coupled rows: small dense elimination over the free unknowns
    std::vector<size_t> freecols;
    for (size_t j = 0; j < cols; ++j)
        if (!sol[j]) freecols.push_back(j);
    if (!freecols.empty()) {
        std::vector<std::vector<RatFunc>> m;
        std::vector<RatFunc> rhs;
        for (size_t ri = 0; ri < rows; ++ri) {
            if (row_done[ri]) continue;
            std::vector<RatFunc> row(freecols.size());
            bool nontrivial = false;
            for (size_t j = 0; j < freecols.size(); ++j) {
                row[j] = RatFunc::poly(mp[ri][freecols[j]]);
                if (!row[j].is_zero()) nontrivial = true;
            }
            RatFunc acc = RatFunc::poly(rhsp[ri]);
            for (size_t j = 0; j < cols; ++j)
                if (!mp[ri][j].is_zero() && sol[j]) acc = acc - RatFunc::poly(mp[ri][j]) * *sol[j];
            if (!nontrivial) {
                if (!acc.is_zero()) return std::nullopt;
                continue;
            }
            m.push_back(std::move(row));
            rhs.push_back(std::move(acc));
        }
        size_t r = 0, nr = m.size(), nc = freecols.size();
        std::vector<size_t> pivot_col;
        for (size_t c = 0; c < nc && r < nr; ++c) {
            size_t best = nr;
            size_t best_size = SIZE_MAX;
            for (size_t i = r; i < nr; ++i)
                if (!m[i][c].is_zero()) {
                    size_t sz = m[i][c].num().terms().size() + m[i][c].den().terms().size();
                    if (sz < best_size) {
                        best = i;
                        best_size = sz;
                    }
                }
            if (best == nr) continue;
            std::swap(m[best], m[r]);
            std::swap(rhs[best], rhs[r]);
            for (size_t i = r + 1; i < nr; ++i) {
                if (m[i][c].is_zero()) continue;
                RatFunc f = m[i][c] / m[r][c];
                for (size_t j = c + 1; j < nc; ++j)
                    if (!m[r][j].is_zero()) m[i][j] = m[i][j] - f * m[r][j];
                rhs[i] = rhs[i] - f * rhs[r];
                m[i][c] = RatFunc(Rat(0));
            }
            pivot_col.push_back(c);
            ++r;
        }
        for (size_t i = r; i < nr; ++i)
            if (!rhs[i].is_zero()) return std::nullopt;
        std::vector<RatFunc> sub(nc, RatFunc(Rat(0)));
        for (size_t pi = r; pi-- > 0;) {
            size_t c = pivot_col[pi];
            RatFunc acc = rhs[pi];
            for (size_t j = c + 1; j < nc; ++j)
                if (!m[pi][j].is_zero()) acc = acc - m[pi][j] * sub[j];
            sub[c] = acc / m[pi][c];
        }
        for (size_t j = 0; j < nc; ++j) sol[freecols[j]] = sub[j];
    }

    std::vector<RatFunc> out(cols, RatFunc(Rat(0)));
    for (size_t j = 0; j < cols; ++j)
        if (sol[j]) out[j] = *sol[j];
    return out;
}

// Core of Gosper's algorithm on a factored shift quotient.  `rho_check` is
// the same quotient as a canonical rational function, used for the final
// certificate verification.
inline std::optional<RatFunc> gosper_factored(const FactoredRat& rho_fr, Sym var) {
    auto L = factor_lists(rho_fr);
    auto d = gosper_decompose_lists(std::move(L), var);

    MultiPoly B1 = d.B.subst(var, MultiPoly::var(var) - MultiPoly(Rat(1)));
    long da = d.A.degree(var);
    long db = B1.degree(var);
    long dc = d.C.degree(var);

    long deg = -1;
    if (da != db) {
        deg = dc - std::max(da, db);
    } else {
        MultiPoly lcA = d.A.coeff_of(var, da);
        MultiPoly lcB = B1.coeff_of(var, db);
        if (!(lcA == lcB)) {
            deg = dc - da;
        } else {
            long d1 = dc - da + 1;
            long d2 = -1;
            MultiPoly a1 = da >= 1 ? d.A.coeff_of(var, da - 1) : MultiPoly();
            MultiPoly b1 = db >= 1 ? B1.coeff_of(var, db - 1) : MultiPoly();
            MultiPoly diff = b1 - a1;
            if (diff.is_zero()) {
                d2 = 0;
            } else if (lcA.is_constant() && diff.is_constant()) {
                Rat q = diff.constant_value() / lcA.constant_value();
                if (is_integer(q)) d2 = to_long(q);
            } else if (!lcA.is_constant()) {
                auto& ln = diff.leading();
                auto& ld = lcA.leading();
                if (ln.first == ld.first) {
                    Rat q = ln.second / ld.second;
                    if (is_integer(q) && diff == lcA * q) d2 = to_long(q);
                }
            }
            deg = std::max(d1, d2);
        }
    }
    if (deg < 0) return std::nullopt;

    auto acs = d.A.coeffs_in(var);
    auto bcs = B1.coeffs_in(var);
    auto ccs = d.C.coeffs_in(var);
    long maxpow = std::max({da + deg, db + deg, dc});
    size_t rows = maxpow + 1, cols = deg + 1;
    std::vector<std::vector<MultiPoly>> m(rows, std::vector<MultiPoly>(cols));
    std::vector<MultiPoly> rhs(rows);

    std::vector<std::vector<Rat>> binom(deg + 1, std::vector<Rat>(deg + 1, Rat(0)));
    for (long i = 0; i <= deg; ++i) {
        binom[i][0] = 1;
        for (long j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rat(0));
    }

    for (long rpow = 0; rpow <= maxpow; ++rpow) {
        for (long i = 0; i <= deg; ++i) {
            MultiPoly entry;
            for (long j = 0; j <= da; ++j) {
                long mm = rpow - j;
                if (mm >= 0 && mm <= i && !acs[j].is_zero()) entry += acs[j] * binom[i][mm];
            }
            long bj = rpow - i;
            if (bj >= 0 && bj <= db && !bcs[bj].is_zero()) entry -= bcs[bj];
            m[rpow][i] = std::move(entry);
        }
        rhs[rpow] = rpow <= dc ? ccs[rpow] : MultiPoly();
    }

    // The certificate is correct iff the Gosper equation
    // A s(x+1) - B(x-1) s(x) = C holds; the decomposition invariant
    // rho = A C(x+1) / (B C) is maintained by construction (every division
    // step is exact or throws).  A solution candidate from the fast pivot
    // path is accepted only if the equation checks out; otherwise the full
    // symbolic elimination decides.
    auto check_and_build = [&](const std::vector<RatFunc>& sol) -> std::optional<RatFunc> {
        RatFunc s_rf(Rat(0));
        for (long i = 0; i <= deg; ++i)
            s_rf = s_rf + sol[i] * RatFunc::poly(MultiPoly::var(var, i));
        const MultiPoly& s_num = s_rf.num();
        const MultiPoly& s_den = s_rf.den();
        MultiPoly s_shift_num = s_num.subst(var, MultiPoly::var(var) + MultiPoly(Rat(1)));
        MultiPoly s_shift_den = s_den.subst(var, MultiPoly::var(var) + MultiPoly(Rat(1)));
        MultiPoly lhs = d.A * s_shift_num * s_den - B1 * s_num * s_shift_den;
        MultiPoly rhs2 = d.C * s_den * s_shift_den;
        if (!(lhs == rhs2)) return std::nullopt;
        return RatFunc::poly(B1) * s_rf / RatFunc::poly(d.C);
    };

    auto sol = solve_poly_system(std::move(m), std::move(rhs));
    if (!sol) return std::nullopt;
    return check_and_build(*sol);
}

} // namespace detail

// Gosper's decision procedure: given a term t hypergeometric in var, find a
// rational certificate R with T = R*t satisfying T(var+1) - T(var) = t, or
// decide that no hypergeometric antidifference exists.  The decision is
// exact over the parameterized field: candidate dispersions come from a
// specialized resultant and are confirmed symbolically, and any certificate
// is re-verified against the shift quotient before being returned.
inline std::optional<RatFunc> gosper(const GammaTerm& t, Sym var) {
    return detail::gosper_factored(t.shift_quotient_factored(var), var);
}

} // namespace wz

#endif
