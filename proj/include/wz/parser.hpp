#ifndef WZ_PARSER_HPP
#define WZ_PARSER_HPP

#include "wz/affine.hpp"
#include "wz/upoly.hpp"

#include <cctype>

namespace wz {

class parse_error : public error {
public:
    parse_error(const std::string& msg, size_t pos)
        : error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

// Parser for seed-instantiation expressions:
//
//   term     := IDENT '(' affine (',' affine)* ')'
//   affine   := ['+'|'-'] monomial (('+'|'-') monomial)*
//   monomial := rational | rational '*' symbol | symbol
//   rational := INT | INT '/' INT
//   symbol   := 'a'..'e' | 'n' | 'k'
//
// Only affine expressions are admitted; every seed argument in the catalog
// and the examples is affine.
class TermExprParser {
public:
    explicit TermExprParser(std::string text) : s_(std::move(text)) {}

    std::pair<std::string, std::vector<AffineExpr>> parse() {
        skip_ws();
        std::string name = parse_ident();
        skip_ws();
        expect('(');
        std::vector<AffineExpr> args;
        args.push_back(parse_affine());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            args.push_back(parse_affine());
            skip_ws();
        }
        expect(')');
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("trailing input", pos_);
        return {name, args};
    }

    AffineExpr parse_affine_full() {
        AffineExpr e = parse_affine();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("trailing input", pos_);
        return e;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c) {
        if (peek() != c) throw parse_error(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string parse_ident() {
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (pos_ == start) throw parse_error("expected identifier", pos_);
        return s_.substr(start, pos_ - start);
    }

    Rat parse_rational() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw parse_error("expected number", pos_);
        std::string nums = s_.substr(start, pos_ - start);
        skip_ws();
        if (peek() == '/') {
            size_t save = pos_;
            ++pos_;
            skip_ws();
            size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == dstart) {
                pos_ = save; // not a fraction after all
            } else {
                std::string dens = s_.substr(dstart, pos_ - dstart);
                if (parse_rat(dens) == 0) throw parse_error("zero denominator", dstart);
                return parse_rat(nums + "/" + dens);
            }
        }
        return parse_rat(nums);
    }

    AffineExpr parse_affine() {
        AffineExpr acc;
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (s_[pos_] == '-') sign = -1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                break;
            }
            acc = acc + parse_monomial() * Rat(sign);
            first = false;
            skip_ws();
            if (peek() != '+' && peek() != '-') break;
        }
        if (first) throw parse_error("expected affine expression", pos_);
        return acc;
    }

    AffineExpr parse_monomial() {
        skip_ws();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rat q = parse_rational();
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                Sym s = parse_symbol();
                return AffineExpr::sym(s, q);
            }
            return AffineExpr(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            Sym s = parse_symbol();
            return AffineExpr::sym(s);
        }
        throw parse_error("expected rational or symbol", pos_);
    }

    Sym parse_symbol() {
        char c = peek();
        auto s = sym_from_char(c);
        if (!s) throw parse_error(std::string("unknown symbol '") + c + "'", pos_);
        ++pos_;
        // guard against identifiers like "ab"
        if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
            throw parse_error("unknown symbol (multi-letter name)", pos_ - 1);
        return *s;
    }

    std::string s_;
    size_t pos_ = 0;
};

inline std::pair<std::string, std::vector<AffineExpr>> parse_term_expr(const std::string& text) {
    return TermExprParser(text).parse();
}

inline AffineExpr parse_affine_expr(const std::string& text) {
    return TermExprParser(text).parse_affine_full();
}

// Small recursive-descent parser for univariate rational expressions in n,
// used by the bundled manifest and the CLI for entering coefficient
// functions like "(205*n^2-160*n+32)/n^5".
class URatParser {
public:
    explicit URatParser(std::string text) : s_(std::move(text)) {}

    URat parse() {
        URat r = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) throw parse_error("trailing input", pos_);
        return r;
    }

private:
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    URat parse_sum() {
        URat acc = parse_product();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + parse_product();
            } else if (c == '-') {
                ++pos_;
                acc = acc - parse_product();
            } else {
                return acc;
            }
        }
    }

    URat parse_product() {
        URat acc = parse_unary();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * parse_unary();
            } else if (c == '/') {
                ++pos_;
                acc = acc / parse_unary();
            } else {
                return acc;
            }
        }
    }

    URat parse_unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -parse_unary();
        }
        if (c == '+') {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    URat parse_power() {
        URat base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos_;
            }
            long e = parse_int();
            URat p(Rat(1));
            for (long i = 0; i < e; ++i) p = p * base;
            return neg ? URat(Rat(1)) / p : p;
        }
        return base;
    }

    URat parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            URat r = parse_sum();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (c == 'n') {
            ++pos_;
            return URat::poly(Upoly::x());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return URat(Rat(parse_int()));
        throw parse_error("expected atom", pos_);
    }

    long parse_int() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw parse_error("expected integer", pos_);
        return std::stol(s_.substr(start, pos_ - start));
    }

    std::string s_;
    size_t pos_ = 0;
};

inline URat parse_urat(const std::string& text) { return URatParser(text).parse(); }

} // namespace wz

#endif
