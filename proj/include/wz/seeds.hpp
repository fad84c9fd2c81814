#ifndef WZ_SEEDS_HPP
#define WZ_SEEDS_HPP

#include "wz/gamma_term.hpp"
#include "wz/parser.hpp"

namespace wz {

struct SeedSpec {
    std::string name;
    std::vector<Sym> slots; // ordered, final slot is always k
    GammaTerm tmpl;
    std::string origin_note;
};

namespace detail {

inline GammaTerm build_seed(const std::string& prefactor_poly, const std::string& sign,
                            const std::vector<std::pair<long, std::string>>& const_pows,
                            const std::vector<std::string>& num_gammas,
                            const std::vector<std::string>& den_gammas) {
    GammaTerm t;
    if (!prefactor_poly.empty())
        t.prefactor = RatFunc::poly(parse_affine_expr(prefactor_poly).to_poly());
    if (!sign.empty()) t.sign_exponent = parse_affine_expr(sign);
    for (auto& [base, expo] : const_pows) t.add_const_power(Rat(base), parse_affine_expr(expo));
    for (auto& g : num_gammas) t.add_gamma(parse_affine_expr(g), 1);
    for (auto& g : den_gammas) t.add_gamma(parse_affine_expr(g), -1);
    t.cleanup();
    return t;
}

inline std::vector<Sym> slots_of(const std::string& letters) {
    std::vector<Sym> out;
    for (char c : letters) out.push_back(*sym_from_char(c));
    return out;
}

} // namespace detail

// The thirteen WZ-seeds, entered as flat Gamma-factor lists.
inline const std::vector<SeedSpec>& seed_catalog() {
    static const std::vector<SeedSpec> catalog = [] {
        using detail::build_seed;
        using detail::slots_of;
        std::vector<SeedSpec> v;

        v.push_back({"Gauss2F1", slots_of("abck"),
                     build_seed("", "", {},
                                {"c-a", "a+k", "c-b", "b+k"},
                                {"a", "b", "k+1", "c+k", "-a-b+c"}),
                     "Gauss 2F1 summation formula"});

        v.push_back({"Dixon3F2", slots_of("abck"),
                     build_seed("", "", {},
                                {"a-b+1", "a-c+1", "2*a+k", "b+k", "c+k", "2*a-b-c+1"},
                                {"a", "b", "c", "k+1", "a-b-c+1", "2*a-b+k+1", "2*a-c+k+1"}),
                     "Dixon 3F2 summation formula"});

        v.push_back({"Watson3F2", slots_of("abck"),
                     build_seed("", "", {{2, "-2*a-2*b+2*c"}},
                                {"-a+c+1/2", "2*a+k", "-b+c+1/2", "2*b+k", "c+k"},
                                {"a", "b", "k+1", "2*c+k", "-a-b+c+1/2", "a+b+k+1/2"}),
                     "Watson 3F2 summation formula"});

        v.push_back({"Dougall5F4", slots_of("abcdk"),
                     build_seed("a+2*k", "", {},
                                {"a+k", "b+k", "c+k", "d+k", "a-b-c+1", "a-b-d+1", "a-c-d+1"},
                                {"b", "c", "d", "k+1", "a-b+k+1", "a-c+k+1", "a-d+k+1", "a-b-c-d+1"}),
                     "very-well-poised 5F4 summation formula"});

        v.push_back({"Dougall7F6", slots_of("abcdek"),
                     build_seed("a+2*k", "a+e", {},
                                {"a+k", "b+k", "c+k", "d+k", "e+k", "a-b-c+1", "a-b-d+1", "a-c-d+1",
                                 "-a+b+c+e", "-a+b+d+e", "-a+c+d+e", "2*a-b-c-d-e+k+1"},
                                {"b", "c", "d", "e", "k+1", "-a+b+e", "a-b+k+1", "-a+c+e", "a-c+k+1",
                                 "-a+d+e", "a-d+k+1", "a-e+k+1", "a-b-c-d+1", "2*a-b-c-d-e+1",
                                 "-a+b+c+d+e+k"}),
                     "very-well-poised 2-balanced terminating 7F6 summation formula"});

        v.push_back({"Balanced3F2", slots_of("abcdk"),
                     build_seed("", "a+b+c-d", {},
                                {"d-a", "a+k", "d-b", "b+k", "d-c", "c+k"},
                                {"a", "b", "c", "k+1", "d+k", "-a-b+d", "-a-c+d", "-b-c+d",
                                 "a+b+c-d+k+1"}),
                     "1-balanced terminating 3F2 summation formula"});

        v.push_back({"Seed1", slots_of("ack"),
                     build_seed("", "", {{2, "a-2*c-2*k"}},
                                {"-a+2*c-1", "a+2*k"},
                                {"a", "k+1", "-a+c-1/2", "c+k"}),
                     "a -> a/2, b -> a/2+1/2 in Gauss2F1"});

        v.push_back({"Seed2", slots_of("acdk"),
                     build_seed("", "a+c-d", {{2, "-2*c-2*k"}},
                                {"-a+2*d-1", "a+2*k", "d-c", "c+k"},
                                {"a", "c", "k+1", "-a+d-1/2", "d+k", "-a-2*c+2*d-1", "a+c-d+k+3/2"}),
                     "a -> a/2, b -> a/2+1/2 in Balanced3F2"});

        v.push_back({"Seed3", slots_of("abdk"),
                     build_seed("a+2*k", "", {{2, "2*d"}},
                                {"a-b+1/2", "a+k", "b+2*k", "d+k", "2*a-b-2*d+1"},
                                {"b", "d", "k+1", "a-b-d+1/2", "2*a-b+2*k+1", "a-d+k+1"}),
                     "b -> b/2, c -> b/2+1/2 in Dougall5F4"});

        v.push_back({"Seed4", slots_of("abk"),
                     build_seed("a+2*k", "", {{3, "b+1"}},
                                {"3*a-2*b", "a+k", "b+3*k"},
                                {"b", "k+1", "a-b", "3*a-b+3*k+1"}),
                     "b -> b/3, c -> b/3+1/3, d -> b/3+2/3 in Dougall5F4"});

        v.push_back({"Seed7", slots_of("abdek"),
                     build_seed("a+2*k", "a+e", {},
                                {"a-b+1/2", "a+k", "b+2*k", "d+k", "e+k", "2*a-b-2*d+1",
                                 "-a+b+e+1/2", "-2*a+b+2*d+2*e", "2*a-b-d-e+k+1/2"},
                                {"b", "d", "e", "k+1", "a-b-d+1/2", "-2*a+b+2*e", "2*a-b+2*k+1",
                                 "-a+d+e", "a-d+k+1", "a-e+k+1", "2*a-b-d-e+1/2",
                                 "-a+b+d+e+k+1/2"}),
                     "b -> b/2, c -> b/2+1/2 in Dougall7F6"});

        v.push_back({"Seed9", slots_of("abdk"),
                     build_seed("a+2*k", "d", {{2, "4*a-2*b-2*d"}},
                                {"a-b+1/2", "a+k", "b+2*k", "d+2*k", "-2*a+2*b+d+1", "-2*a+b+2*d+1",
                                 "2*a-b-d+k"},
                                {"b", "d", "k+1", "-a+d+1/2", "-2*a+b+d", "2*a-b+2*k+1",
                                 "2*a-d+2*k+1", "-a+b+d+k+1"}),
                     "b -> b/2, c -> b/2+1/2, d -> d/2, e -> d/2+1/2 in Dougall7F6"});

        v.push_back({"Seed10", slots_of("adk"),
                     build_seed("", "a-d", {{3, "-a-3*k"}},
                                {"-a+3*d-2", "a+3*k"},
                                {"a", "k+1", "-2*a+3*d-3", "d+k", "a-d+k+2"}),
                     "a -> a/3, b -> a/3+1/3, c -> a/3+2/3 in Balanced3F2"});

        return v;
    }();
    return catalog;
}

inline const std::vector<SeedSpec>& list_seeds() { return seed_catalog(); }

inline const SeedSpec& find_seed(const std::string& name) {
    for (auto& s : seed_catalog())
        if (s.name == name) return s;
    throw error("unknown seed '" + name + "'");
}

// Substitute the slot symbols by affine arguments.  The coefficients of n
// and k in every argument must be integers (the A_i and K of the seed
// definition).
inline GammaTerm instantiate(const SeedSpec& spec, const std::vector<AffineExpr>& args) {
    if (args.size() != spec.slots.size())
        throw error("seed " + spec.name + " expects " + std::to_string(spec.slots.size()) +
                    " arguments, got " + std::to_string(args.size()));
    std::map<Sym, AffineExpr> repl;
    for (size_t i = 0; i < args.size(); ++i) {
        for (Sym idx : {Sym::n, Sym::k}) {
            Rat c = args[i].coeff(idx);
            if (!is_integer(c))
                throw error("seed argument '" + args[i].str() + "' has non-integer coefficient on " +
                            sym_name(idx) + "; integer shifts are required");
        }
        repl[spec.slots[i]] = args[i];
    }
    return spec.tmpl.subst(repl);
}

inline GammaTerm instantiate_term_expr(const std::string& text) {
    auto [name, args] = parse_term_expr(text);
    return instantiate(find_seed(name), args);
}

} // namespace wz

#endif
