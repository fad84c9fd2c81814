#ifndef WZ_BASICS_HPP
#define WZ_BASICS_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wz {

using Int = mpz_class;
using Rat = mpq_class;

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// The fixed symbol universe.  Everything symbolic lives over these seven
// symbols; the canonical order a<b<c<d<e<n<k matches the monomial order.
enum class Sym : int { a = 0, b, c, d, e, n, k };

inline constexpr int kNumSyms = 7;

inline constexpr std::array<char, kNumSyms> kSymNames = {'a', 'b', 'c', 'd', 'e', 'n', 'k'};

inline char sym_name(Sym s) { return kSymNames[static_cast<int>(s)]; }

inline std::optional<Sym> sym_from_char(char c) {
    for (int i = 0; i < kNumSyms; ++i)
        if (kSymNames[i] == c) return static_cast<Sym>(i);
    return std::nullopt;
}

inline int sym_index(Sym s) { return static_cast<int>(s); }

// Values assigned to symbols for evaluation / specialization.
using SymMap = std::array<std::optional<Rat>, kNumSyms>;

inline Rat rat_of(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw error("integer too large for machine word: " + z.get_str());
    return z.get_si();
}

inline long to_long(const Rat& r) {
    if (!is_integer(r)) throw error("expected integer, got " + r.get_str());
    return to_long(Int(r.get_num()));
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = e > 0 ? base : Rat(1) / base;
    unsigned long m = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), b.get_num().get_mpz_t(), m);
    mpz_pow_ui(out.get_den_mpz_t(), b.get_den().get_mpz_t(), m);
    out.canonicalize();
    return out;
}

// Rising factorial (x)_m for rational x and integer m (negative m allowed,
// (x)_{-m} = 1/(x-m)_m).  Throws on division by zero.
inline Rat rat_pochhammer(const Rat& x, long m) {
    if (m >= 0) {
        Rat p(1);
        for (long j = 0; j < m; ++j) p *= x + Rat(j);
        return p;
    }
    Rat p(1);
    for (long j = 1; j <= -m; ++j) {
        Rat f = x - Rat(j);
        if (f == 0) throw error("pochhammer: zero factor in (x)_{negative}");
        p *= f;
    }
    return Rat(1) / p;
}

// Parse "p", "-p/q" style rational literals.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw error("empty rational literal");
    try {
        Rat r(s);
        r.canonicalize();
        if (r.get_den() == 0) throw error("zero denominator in rational literal: " + s);
        return r;
    } catch (const std::invalid_argument&) {
        throw error("malformed rational literal: '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

} // namespace wz

#endif
