/**
 * @file expression.hpp
 * @brief Text form of superfunctions: parser, elaborator and canonical printer.
 *
 * Grammar:
 *
 *     expr  := term (("+" | "-") term)*
 *     term  := unary (("*" | "/") unary)*
 *     unary := "-" unary | atom ("^" ["-"] integer)?
 *     atom  := "(" expr ")" | identifier | integer | "i" | "zeta(" integer "," integer ")"
 *
 * Identifiers may carry a weight suffix, "x@(1,0)" or "x@1". There is no
 * implicit multiplication. Division by a superfunction with odd content goes
 * through invert().
 */
#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hgraded/error.hpp"
#include "hgraded/super_rational.hpp"

namespace hgraded {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Sum, Difference, Product, Quotient, Negation, Power, Variable, Integer, ImaginaryUnit, Zeta };

    Kind kind;
    std::vector<ExprPtr> operands;
    std::string name;        // Variable
    mpz_class integer;       // Integer literal
    long exponent = 0;       // Power
    int zeta_order = 1;      // Zeta
    long zeta_power = 0;     // Zeta
    std::size_t position = 0;
};

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    static std::shared_ptr<Expr> node(Expr::Kind kind, std::size_t pos, std::vector<ExprPtr> operands = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->position = pos;
        e->operands = std::move(operands);
        return e;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        while (true) {
            skip_space();
            const std::size_t at = pos_;
            if (accept('+')) left = node(Expr::Kind::Sum, at, {left, parse_term()});
            else if (accept('-')) left = node(Expr::Kind::Difference, at, {left, parse_term()});
            else return left;
        }
    }

    ExprPtr parse_term() {
        ExprPtr left = parse_unary();
        while (true) {
            skip_space();
            const std::size_t at = pos_;
            if (accept('*')) left = node(Expr::Kind::Product, at, {left, parse_unary()});
            else if (accept('/')) left = node(Expr::Kind::Quotient, at, {left, parse_unary()});
            else return left;
        }
    }

    ExprPtr parse_unary() {
        skip_space();
        const std::size_t at = pos_;
        if (accept('-')) return node(Expr::Kind::Negation, at, {parse_unary()});
        ExprPtr base = parse_atom();
        skip_space();
        const std::size_t caret = pos_;
        if (accept('^')) {
            bool negative = accept('-');
            skip_space();
            mpz_class value = parse_integer_literal();
            if (value > 1000000) throw ParseError("exponent too large", caret);
            auto p = node(Expr::Kind::Power, caret, {base});
            p->exponent = negative ? -value.get_si() : value.get_si();
            return p;
        }
        return base;
    }

    mpz_class parse_integer_literal() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected an integer", start);
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    ExprPtr parse_atom() {
        skip_space();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto e = node(Expr::Kind::Integer, at);
            e->integer = parse_integer_literal();
            return e;
        }
        if (is_identifier_start(c)) {
            std::string id = parse_identifier();
            if (id == "i") return node(Expr::Kind::ImaginaryUnit, at);
            if (id == "zeta") {
                expect('(');
                mpz_class n = parse_integer_literal();
                expect(',');
                bool negative = accept('-');
                mpz_class k = parse_integer_literal();
                expect(')');
                if (n < 1 || n > 100000) throw ParseError("zeta order must be between 1 and 100000", at);
                auto e = node(Expr::Kind::Zeta, at);
                e->zeta_order = static_cast<int>(n.get_si());
                e->zeta_power = negative ? -mpz_class(k % n).get_si() : mpz_class(k % n).get_si();
                return e;
            }
            auto e = node(Expr::Kind::Variable, at);
            e->name = std::move(id);
            return e;
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", at);
    }

    /// Reads an identifier with optional weight suffix, returning the canonical "name@(k,...)".
    std::string parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_identifier_char(text_[pos_])) ++pos_;
        std::string base(text_.substr(start, pos_ - start));
        if (pos_ >= text_.size() || text_[pos_] != '@') return base;
        ++pos_;
        std::vector<std::string> parts;
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            if (!accept(')')) {
                do parts.push_back(parse_integer_literal().get_str());
                while (accept(','));
                expect(')');
            }
        } else {
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected weight after '@'", pos_);
            parts.push_back(parse_integer_literal().get_str());
        }
        std::string canonical = base + "@(";
        for (std::size_t k = 0; k < parts.size(); ++k) canonical += (k ? "," : "") + parts[k];
        return canonical + ")";
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Syntax only; identifiers are not resolved.
inline ExprPtr parse_ast(std::string_view text) { return detail::ExpressionParser(text).parse(); }

/// Resolves identifiers against `sig` and evaluates exactly.
inline SuperRational elaborate(const Expr& e, const SignaturePtr& sig) {
    switch (e.kind) {
    case Expr::Kind::Sum:
        return elaborate(*e.operands[0], sig) + elaborate(*e.operands[1], sig);
    case Expr::Kind::Difference:
        return elaborate(*e.operands[0], sig) - elaborate(*e.operands[1], sig);
    case Expr::Kind::Product:
        return elaborate(*e.operands[0], sig) * elaborate(*e.operands[1], sig);
    case Expr::Kind::Quotient: {
        SuperRational divisor = elaborate(*e.operands[1], sig);
        if (divisor.is_zero()) throw MathError("division by zero at position " + std::to_string(e.position));
        if (divisor.numerator().even_part().is_zero())
            throw MathError("divisor at position " + std::to_string(e.position) +
                            " is not invertible (its even part vanishes)");
        return elaborate(*e.operands[0], sig) * divisor.inverted();
    }
    case Expr::Kind::Negation:
        return -elaborate(*e.operands[0], sig);
    case Expr::Kind::Power: {
        SuperRational base = elaborate(*e.operands[0], sig);
        if (e.exponent < 0 && base.numerator().even_part().is_zero())
            throw MathError("negative power of a non-invertible superfunction at position " +
                            std::to_string(e.position));
        return base.pow(e.exponent);
    }
    case Expr::Kind::Variable: {
        if (!sig->find(e.name)) throw ParseError("unknown identifier '" + e.name + "'", e.position);
        return SuperRational::variable(sig, e.name);
    }
    case Expr::Kind::Integer:
        return SuperRational::constant(sig, Cyclotomic(Rational(e.integer)));
    case Expr::Kind::ImaginaryUnit:
        return SuperRational::constant(sig, Cyclotomic::root_of_unity(4, 1));
    case Expr::Kind::Zeta:
        return SuperRational::constant(sig, Cyclotomic::root_of_unity(e.zeta_order, e.zeta_power));
    }
    throw Error("unhandled expression node");
}

/// Parses and elaborates; the result is normalized for display.
inline SuperRational parse_expression(std::string_view text, const SignaturePtr& sig) {
    return elaborate(*parse_ast(text), sig).normalized();
}

namespace detail {

/// Coefficient as a parseable product factor. Returns (negative, text); text is
/// empty for magnitude 1.
inline std::pair<bool, std::string> format_coefficient(const Cyclotomic& c) {
    const auto& coeffs = c.coefficients();
    const int n = c.conductor();
    auto symbol = [&](std::size_t k) -> std::string {
        if (n % 4 == 0 && static_cast<int>(k) * 4 == n) return "i";
        return "zeta(" + std::to_string(n) + "," + std::to_string(k) + ")";
    };
    std::size_t nonzero = 0, last = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0) ++nonzero, last = k;
    if (nonzero == 1) {
        const Rational& r = coeffs[last];
        Rational mag = abs(r);
        std::string text;
        if (last == 0) text = mag == 1 ? "" : rational_to_string(mag);
        else text = mag == 1 ? symbol(last) : rational_to_string(mag) + "*" + symbol(last);
        return {r < 0, text};
    }
    std::string text = "(";
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const Rational& r = coeffs[k];
        if (r == 0) continue;
        Rational mag = abs(r);
        if (first) text += r < 0 ? "-" : "";
        else text += r < 0 ? " - " : " + ";
        if (k == 0) text += rational_to_string(mag);
        else text += mag == 1 ? symbol(k) : rational_to_string(mag) + "*" + symbol(k);
        first = false;
    }
    return {false, text + ")"};
}

inline std::string format_monomial(const Monomial& m, const Signature& sig) {
    std::string out;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (!m.exponents[i]) continue;
        if (!out.empty()) out += "*";
        out += sig.even()[i].name;
        if (m.exponents[i] > 1) out += "^" + std::to_string(m.exponents[i]);
    }
    for (std::size_t j = 0; j < sig.odd_count(); ++j) {
        if (!(m.odd & (OddMask{1} << j))) continue;
        if (!out.empty()) out += "*";
        out += sig.odd()[j].name;
    }
    return out;
}

inline std::string format_polynomial(const SuperPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        auto [negative, coeff] = format_coefficient(c);
        std::string mono = format_monomial(m, *p.signature());
        std::string body;
        if (mono.empty()) body = coeff.empty() ? "1" : coeff;
        else body = coeff.empty() ? mono : coeff + "*" + mono;
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        out += body;
        first = false;
    }
    return out;
}

inline bool is_single_factor(const SuperPolynomial& p) {
    if (p.size() != 1) return false;
    const auto& [m, c] = *p.terms().begin();
    if (!c.is_one()) return false;
    int factors = m.odd_degree();
    for (auto e : m.exponents) factors += e ? 1 : 0;
    return factors == 1;
}

}  // namespace detail

/// Canonical text; parse_expression(format_expression(f), sig) == f.
inline std::string format_expression(const SuperRational& f) {
    SuperRational n = f.normalized();
    if (n.is_zero()) return "0";
    const SuperPolynomial& den = n.denominator();
    if (den.is_constant() && den.constant_term().is_one()) return detail::format_polynomial(n.numerator());
    std::string num = detail::format_polynomial(n.numerator());
    if (n.numerator().size() > 1) num = "(" + num + ")";
    std::string d = detail::format_polynomial(den);
    if (!detail::is_single_factor(den)) d = "(" + d + ")";
    return num + "/" + d;
}

}  // namespace hgraded
