/**
 * @file super_rational.hpp
 * @brief Superfunctions N/D with a purely even, nonzero denominator.
 *
 * No gcd reduction is performed. Two superfunctions are equal iff
 * N1*D2 == N2*D1. normalized() only strips a common monomial factor and
 * makes the leading denominator coefficient 1, which keeps printed output
 * stable without changing the value.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hgraded/error.hpp"
#include "hgraded/super_polynomial.hpp"

namespace hgraded {

class SuperRational {
public:
    explicit SuperRational(SignaturePtr sig)
        : num_(sig), den_(SuperPolynomial::constant(sig, Cyclotomic(1))) {}

    /// Polynomial superfunction.
    SuperRational(SuperPolynomial numerator)  // NOLINT: polynomials are superfunctions
        : num_(std::move(numerator)), den_(SuperPolynomial::constant(num_.signature(), Cyclotomic(1))) {}

    SuperRational(SuperPolynomial numerator, SuperPolynomial denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        require_same_signature(num_.signature(), den_.signature());
        if (den_.is_zero()) throw MathError("zero denominator");
        if (den_.has_odd_content())
            throw MathError("denominator must not contain odd coordinates; use invert() for general division");
    }

    static SuperRational constant(SignaturePtr sig, const Cyclotomic& c) {
        return SuperRational(SuperPolynomial::constant(std::move(sig), c));
    }

    static SuperRational variable(SignaturePtr sig, std::string_view name) {
        return SuperRational(SuperPolynomial::variable(std::move(sig), name));
    }

    const SignaturePtr& signature() const noexcept { return num_.signature(); }
    const SuperPolynomial& numerator() const noexcept { return num_; }
    const SuperPolynomial& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    /// Grassmann parity of the numerator terms (the denominator is even).
    std::optional<Parity> parity() const { return num_.parity(); }

    SuperRational operator-() const { return SuperRational(-num_, den_, Unchecked{}); }

    friend SuperRational operator+(const SuperRational& a, const SuperRational& b) {
        require_same_signature(a.signature(), b.signature());
        if (b.is_zero()) return a;
        if (a.is_zero()) return b;
        if (a.den_ == b.den_) return SuperRational(a.num_ + b.num_, a.den_, Unchecked{});
        if (b.den_.is_constant()) {
            const Cyclotomic s = b.den_.constant_term().inverse();
            return SuperRational(a.num_ + (a.den_ * b.num_).scaled(s), a.den_, Unchecked{});
        }
        if (a.den_.is_constant()) return b + a;
        return SuperRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Unchecked{});
    }

    friend SuperRational operator-(const SuperRational& a, const SuperRational& b) { return a + (-b); }

    friend SuperRational operator*(const SuperRational& a, const SuperRational& b) {
        require_same_signature(a.signature(), b.signature());
        if (a.den_.is_constant() && b.den_.is_constant()) {
            const Cyclotomic s = (a.den_.constant_term() * b.den_.constant_term()).inverse();
            return SuperRational((a.num_ * b.num_).scaled(s));
        }
        return SuperRational(a.num_ * b.num_, a.den_ * b.den_, Unchecked{});
    }

    friend SuperRational operator/(const SuperRational& a, const SuperRational& b) { return a * b.inverted(); }

    SuperRational& operator+=(const SuperRational& o) { return *this = *this + o; }
    SuperRational& operator-=(const SuperRational& o) { return *this = *this - o; }
    SuperRational& operator*=(const SuperRational& o) { return *this = *this * o; }

    SuperRational scaled(const Cyclotomic& s) const { return SuperRational(num_.scaled(s), den_, Unchecked{}); }

    SuperRational pow(long e) const {
        if (e < 0) return inverted().pow(-e);
        return SuperRational(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Unchecked{});
    }

    /// Multiplicative inverse. Writing the numerator as N_ev + n with n nilpotent,
    /// 1/N = (1/N_ev) * sum_k (-n/N_ev)^k, a finite sum.
    SuperRational inverted() const { return SuperRational(den_) * invert_polynomial(num_); }

    static SuperRational invert_polynomial(const SuperPolynomial& p) {
        SuperPolynomial even = p.even_part();
        if (even.is_zero()) throw MathError("superfunction is not invertible: its even part vanishes");
        SuperPolynomial nilpotent = p - even;
        if (nilpotent.is_zero()) return SuperRational(SuperPolynomial::constant(p.signature(), Cyclotomic(1)), even);
        // Powers (-n)^k until they vanish; at most one past the number of odd coordinates.
        std::vector<SuperPolynomial> powers{SuperPolynomial::constant(p.signature(), Cyclotomic(1))};
        const SuperPolynomial minus_n = -nilpotent;
        while (true) {
            SuperPolynomial next = powers.back() * minus_n;
            if (next.is_zero()) break;
            powers.push_back(std::move(next));
        }
        const unsigned top = static_cast<unsigned>(powers.size() - 1);
        SuperPolynomial numerator(p.signature());
        for (unsigned k = 0; k <= top; ++k) numerator += powers[k] * even.pow(top - k);
        return SuperRational(std::move(numerator), even.pow(top + 1), Unchecked{});
    }

    /// Same value with common monomial factors removed and a monic leading denominator term.
    SuperRational normalized() const {
        if (num_.is_zero()) return SuperRational(signature());
        const std::size_t n = signature()->even_count();
        std::vector<std::uint32_t> common(n, UINT32_MAX);
        auto shrink = [&](const SuperPolynomial& p) {
            for (const auto& [m, c] : p.terms())
                for (std::size_t i = 0; i < n; ++i) common[i] = std::min(common[i], m.exponents[i]);
        };
        shrink(num_);
        shrink(den_);
        const bool has_common = std::any_of(common.begin(), common.end(), [](auto e) { return e > 0; });
        const Cyclotomic lead = den_.terms().begin()->second;
        const Cyclotomic inv = lead.is_one() ? Cyclotomic(1) : lead.inverse();
        auto rebuild = [&](const SuperPolynomial& p) {
            SuperPolynomial r(signature());
            for (const auto& [m, c] : p.terms()) {
                Monomial mm = m;
                if (has_common)
                    for (std::size_t i = 0; i < n; ++i) mm.exponents[i] -= common[i];
                r.add_term(std::move(mm), lead.is_one() ? c : c * inv);
            }
            return r;
        };
        return SuperRational(rebuild(num_), rebuild(den_), Unchecked{});
    }

    /// Cross-multiplication equality.
    friend bool operator==(const SuperRational& a, const SuperRational& b) {
        if (!same_signature(a.signature(), b.signature())) return false;
        if (a.den_ == b.den_) return a.num_ == b.num_;
        if (a.num_.is_zero() || b.num_.is_zero()) return a.num_.is_zero() && b.num_.is_zero();
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

private:
    struct Unchecked {};
    SuperRational(SuperPolynomial numerator, SuperPolynomial denominator, Unchecked)
        : num_(std::move(numerator)), den_(std::move(denominator)) {}

    SuperPolynomial num_;
    SuperPolynomial den_;
};

/// Inverse of a superfunction whose even part is nonzero.
inline SuperRational invert(const SuperRational& f) { return f.inverted(); }

}  // namespace hgraded
