#pragma once

// Small infix parser for exact ternary forms, e.g. "Y^2*Z - X^3 - X^2*Z" or
// "(X^2 + Y^2 - Z^2)*(X + Y)". Coefficients are integers or p/q literals;
// the imaginary unit is written I.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <tuple>

#include "severi/polynomial.hpp"

namespace severi {

namespace detail {

class FormParser {
public:
    explicit FormParser(std::string_view s) : s_(s) {}

    using Sparse = std::map<std::tuple<int, int, int>, QComplex>;

    Sparse parse() {
        Sparse p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    static Sparse mul(const Sparse& a, const Sparse& b) {
        Sparse out;
        for (const auto& [ea, va] : a)
            for (const auto& [eb, vb] : b) {
                auto e = std::make_tuple(std::get<0>(ea) + std::get<0>(eb), std::get<1>(ea) + std::get<1>(eb),
                                         std::get<2>(ea) + std::get<2>(eb));
                out[e] += va * vb;
            }
        prune(out);
        return out;
    }
    static void prune(Sparse& p) {
        for (auto it = p.begin(); it != p.end();) it = it->second.is_zero() ? p.erase(it) : std::next(it);
    }
    static Sparse constant(QComplex v) {
        Sparse p;
        if (!v.is_zero()) p[{0, 0, 0}] = std::move(v);
        return p;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("form parse error at column " + std::to_string(pos_ + 1) + ": " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }

    Sparse expr() {
        Sparse acc;
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        for (;;) {
            Sparse t = term();
            for (auto& [e, v] : t) acc[e] += negate ? -v : v;
            if (eat('+'))
                negate = false;
            else if (eat('-'))
                negate = true;
            else
                break;
        }
        prune(acc);
        return acc;
    }

    Sparse term() {
        Sparse acc = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                acc = mul(acc, factor());
                continue;
            }
            if (pos_ < s_.size() && (s_[pos_] == '(' || std::isalnum(static_cast<unsigned char>(s_[pos_])))) {
                acc = mul(acc, factor());
                continue;
            }
            if (eat('/')) {
                int den = integer();
                if (den == 0) fail("division by zero");
                for (auto& [e, v] : acc) v /= QComplex(den);
                continue;
            }
            return acc;
        }
    }

    Sparse factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        Sparse base;
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            base = expr();
            if (!eat(')')) fail("expected ')'");
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            base = constant(QComplex(integer()));
        } else if (c == 'X' || c == 'Y' || c == 'Z' || c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            base[{u == 'X', u == 'Y', u == 'Z'}] = QComplex(1);
        } else if (c == 'I' || c == 'i') {
            ++pos_;
            base = constant(QComplex(Rational(0), Rational(1)));
        } else {
            fail(std::string("unexpected '") + c + "'");
        }
        if (eat('^')) {
            int e = integer();
            Sparse p = constant(QComplex(1));
            for (int k = 0; k < e; ++k) p = mul(p, base);
            return p;
        }
        return base;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExactForm parse_form(std::string_view text) {
    auto sparse = detail::FormParser(text).parse();
    if (sparse.empty()) throw Error("the zero form does not define a curve");
    const auto& [e0, v0] = *sparse.begin();
    const int d = std::get<0>(e0) + std::get<1>(e0) + std::get<2>(e0);
    std::vector<std::pair<Exponent, QComplex>> terms;
    for (const auto& [e, v] : sparse) {
        Exponent ex{std::get<0>(e), std::get<1>(e), std::get<2>(e)};
        if (ex.total() != d) throw Error("form is not homogeneous: '" + std::string(text) + "'");
        terms.emplace_back(ex, v);
    }
    return ExactForm::from_terms(d, terms);
}

}  // namespace severi
