#ifndef WZ_AFFINE_HPP
#define WZ_AFFINE_HPP

#include "wz/multipoly.hpp"

#include <map>
#include <sstream>

namespace wz {

// Affine expression q0 + sum q_i * sym_i with exact rational coefficients.
struct AffineExpr {
    Rat constant{0};
    std::map<Sym, Rat> coeffs; // no zero entries

    AffineExpr() = default;
    explicit AffineExpr(const Rat& c) : constant(c) {}
    static AffineExpr sym(Sym s, const Rat& c = Rat(1)) {
        AffineExpr e;
        e.set(s, c);
        return e;
    }

    void set(Sym s, const Rat& c) {
        if (c == 0) coeffs.erase(s);
        else coeffs[s] = c;
    }
    Rat coeff(Sym s) const {
        auto it = coeffs.find(s);
        return it == coeffs.end() ? Rat(0) : it->second;
    }
    bool is_constant() const { return coeffs.empty(); }
    bool depends_on(Sym s) const { return coeffs.count(s) > 0; }

    AffineExpr operator+(const AffineExpr& o) const {
        AffineExpr r = *this;
        r.constant += o.constant;
        for (auto& [s, c] : o.coeffs) r.set(s, r.coeff(s) + c);
        return r;
    }
    AffineExpr operator-(const AffineExpr& o) const { return *this + (o * Rat(-1)); }
    AffineExpr operator*(const Rat& c) const {
        AffineExpr r;
        if (c == 0) return r;
        r.constant = constant * c;
        for (auto& [s, cc] : coeffs) r.coeffs[s] = cc * c;
        return r;
    }
    AffineExpr operator+(const Rat& c) const {
        AffineExpr r = *this;
        r.constant += c;
        return r;
    }
    bool operator==(const AffineExpr& o) const { return constant == o.constant && coeffs == o.coeffs; }
    bool operator<(const AffineExpr& o) const {
        if (constant != o.constant) return constant < o.constant;
        auto it1 = coeffs.begin();
        auto it2 = o.coeffs.begin();
        for (; it1 != coeffs.end() && it2 != o.coeffs.end(); ++it1, ++it2) {
            if (it1->first != it2->first) return it1->first < it2->first;
            if (it1->second != it2->second) return it1->second < it2->second;
        }
        return it1 == coeffs.end() && it2 != o.coeffs.end();
    }

    // Substitute each symbol by an affine expression (slot instantiation).
    AffineExpr subst(const std::map<Sym, AffineExpr>& repl) const {
        AffineExpr r(constant);
        for (auto& [s, c] : coeffs) {
            auto it = repl.find(s);
            if (it == repl.end()) r.set(s, r.coeff(s) + c);
            else r = r + it->second * c;
        }
        return r;
    }

    Rat eval(const SymMap& vals) const {
        Rat acc = constant;
        for (auto& [s, c] : coeffs) {
            if (!vals[sym_index(s)]) throw error(std::string("affine eval: no value for ") + sym_name(s));
            acc += c * *vals[sym_index(s)];
        }
        return acc;
    }

    // Evaluate only some symbols, keeping the rest symbolic.
    AffineExpr eval_partial(const SymMap& vals) const {
        AffineExpr r(constant);
        for (auto& [s, c] : coeffs) {
            if (vals[sym_index(s)]) r.constant += c * *vals[sym_index(s)];
            else r.set(s, c);
        }
        return r;
    }

    MultiPoly to_poly() const {
        MultiPoly p(constant);
        for (auto& [s, c] : coeffs) p += MultiPoly::var(s) * c;
        return p;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        auto emit = [&](const Rat& c, const std::string& unit) {
            if (c == 0) return;
            Rat ac = abs(c);
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c > 0 ? "+" : "-");
            }
            if (unit.empty()) os << ac.get_str();
            else if (ac == 1) os << unit;
            else os << ac.get_str() << "*" << unit;
        };
        emit(constant, "");
        for (auto& [s, c] : coeffs) emit(c, std::string(1, sym_name(s)));
        if (first) os << "0";
        return os.str();
    }
};

} // namespace wz

#endif
