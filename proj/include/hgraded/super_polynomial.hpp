/**
 * @file super_polynomial.hpp
 * @brief Polynomials in commuting even and anticommuting odd coordinates.
 *
 * A monomial is x^a * xi_{j1} * ... * xi_{jr} with j1 < ... < jr; any sign
 * produced by reordering odd factors lives in the coefficient.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgraded/cyclotomic.hpp"
#include "hgraded/error.hpp"
#include "hgraded/signature.hpp"

namespace hgraded {

using OddMask = std::uint64_t;

struct Monomial {
    std::vector<std::uint32_t> exponents;  // one per even coordinate
    OddMask odd = 0;                        // bit j set <=> xi_j present

    std::uint64_t even_degree() const {
        std::uint64_t d = 0;
        for (auto e : exponents) d += e;
        return d;
    }
    int odd_degree() const { return std::popcount(odd); }
    Parity parity() const { return static_cast<Parity>(odd_degree() & 1); }
    bool is_one() const {
        for (auto e : exponents)
            if (e) return false;
        return odd == 0;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Display and storage order: even part graded-lex (higher degree first, then
/// lexicographically larger exponent vectors first), then the odd subset
/// (fewer factors first, then lexicographic on the index list).
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.even_degree(), db = b.even_degree();
        if (da != db) return da > db;
        if (a.exponents != b.exponents) return a.exponents > b.exponents;
        const int ca = a.odd_degree(), cb = b.odd_degree();
        if (ca != cb) return ca < cb;
        OddMask x = a.odd, y = b.odd;
        while (x && y) {
            const int lx = std::countr_zero(x), ly = std::countr_zero(y);
            if (lx != ly) return lx < ly;
            x &= x - 1;
            y &= y - 1;
        }
        return false;
    }
};

/// Sign of xi_A * xi_B once rewritten in ascending order; 0 when A and B overlap.
inline int koszul_sign(OddMask a, OddMask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (OddMask rest = b; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const OddMask above = j >= 63 ? 0 : (~OddMask{0} << (j + 1));
        inversions += std::popcount(a & above);
    }
    return (inversions & 1) ? -1 : 1;
}

class SuperPolynomial {
public:
    using Terms = std::map<Monomial, Cyclotomic, MonomialOrder>;

    explicit SuperPolynomial(SignaturePtr sig) : sig_(std::move(sig)) {
        if (!sig_) throw MathError("null signature");
    }

    static SuperPolynomial constant(SignaturePtr sig, const Cyclotomic& c) {
        SuperPolynomial p(std::move(sig));
        p.add_term(p.unit_monomial(), c);
        return p;
    }

    static SuperPolynomial variable(SignaturePtr sig, VariableRef ref) {
        SuperPolynomial p(std::move(sig));
        Monomial m = p.unit_monomial();
        if (ref.parity == Parity::Even) m.exponents.at(ref.index) = 1;
        else {
            if (ref.index >= p.sig_->odd_count()) throw MathError("odd coordinate index out of range");
            m.odd = OddMask{1} << ref.index;
        }
        p.add_term(std::move(m), Cyclotomic(1));
        return p;
    }

    static SuperPolynomial variable(SignaturePtr sig, std::string_view name) {
        auto ref = sig->find(name);
        if (!ref) throw MathError("unknown coordinate '" + std::string(name) + "'");
        return variable(std::move(sig), *ref);
    }

    const SignaturePtr& signature() const noexcept { return sig_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Monomial unit_monomial() const { return Monomial{std::vector<std::uint32_t>(sig_->even_count(), 0), 0}; }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

    /// Coefficient of the unit monomial.
    Cyclotomic constant_term() const {
        auto it = terms_.find(unit_monomial());
        return it == terms_.end() ? Cyclotomic(0) : it->second;
    }

    bool has_odd_content() const {
        for (const auto& [m, c] : terms_)
            if (m.odd) return true;
        return false;
    }

    /// Terms without odd factors.
    SuperPolynomial even_part() const {
        return filtered([](const Monomial& m) { return m.odd == 0; });
    }

    SuperPolynomial filtered(const std::function<bool(const Monomial&)>& keep) const {
        SuperPolynomial r(sig_);
        for (const auto& [m, c] : terms_)
            if (keep(m)) r.terms_.emplace_hint(r.terms_.end(), m, c);
        return r;
    }

    void add_term(Monomial m, const Cyclotomic& c) {
        if (c.is_zero()) return;
        if (m.exponents.size() != sig_->even_count()) throw MathError("monomial arity does not match signature");
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Weight of a monomial: product of coordinate weights with multiplicity.
    Character monomial_weight(const Monomial& m) const {
        const auto& g = sig_->group();
        std::vector<int> acc(g.rank(), 0);
        for (std::size_t i = 0; i < m.exponents.size(); ++i) {
            if (!m.exponents[i]) continue;
            const auto& w = sig_->even()[i].weight.residues;
            for (std::size_t k = 0; k < acc.size(); ++k)
                acc[k] = static_cast<int>((acc[k] + static_cast<long>(w[k]) * m.exponents[i]) % g.factors()[k]);
        }
        for (OddMask rest = m.odd; rest; rest &= rest - 1) {
            const auto& w = sig_->odd()[static_cast<std::size_t>(std::countr_zero(rest))].weight.residues;
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = (acc[k] + w[k]) % g.factors()[k];
        }
        return Character{std::move(acc)};
    }

    /// Total Grassmann parity if all terms agree, nullopt otherwise (zero is both: reports Even).
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [m, c] : terms_) {
            if (p && *p != m.parity()) return std::nullopt;
            p = m.parity();
        }
        return p.value_or(Parity::Even);
    }

    SuperPolynomial operator-() const {
        SuperPolynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    SuperPolynomial& operator+=(const SuperPolynomial& o) {
        require_same_signature(sig_, o.sig_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SuperPolynomial& operator-=(const SuperPolynomial& o) {
        require_same_signature(sig_, o.sig_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }

    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
        require_same_signature(a.sig_, b.sig_);
        SuperPolynomial r(a.sig_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                const int sign = koszul_sign(ma.odd, mb.odd);
                if (sign == 0) continue;
                Monomial m{ma.exponents, ma.odd | mb.odd};
                for (std::size_t i = 0; i < m.exponents.size(); ++i) m.exponents[i] += mb.exponents[i];
                Cyclotomic c = ca * cb;
                r.add_term(std::move(m), sign > 0 ? c : -c);
            }
        }
        return r;
    }

    SuperPolynomial& operator*=(const SuperPolynomial& o) { return *this = *this * o; }

    SuperPolynomial scaled(const Cyclotomic& s) const {
        SuperPolynomial r(sig_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
        return r;
    }

    SuperPolynomial pow(unsigned e) const {
        SuperPolynomial result = constant(sig_, Cyclotomic(1));
        SuperPolynomial base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    /// Rescales each monomial by a factor depending only on the monomial.
    template <typename F>
    SuperPolynomial map_coefficients(F&& factor) const {
        SuperPolynomial r(sig_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * factor(m));
        return r;
    }

    friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
        if (!same_signature(a.sig_, b.sig_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
        return true;
    }

    /// Largest exponent of each even coordinate, and which odd coordinates occur.
    std::pair<std::vector<std::uint32_t>, OddMask> support() const {
        std::vector<std::uint32_t> maxima(sig_->even_count(), 0);
        OddMask odd = 0;
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = 0; i < maxima.size(); ++i) maxima[i] = std::max(maxima[i], m.exponents[i]);
            odd |= m.odd;
        }
        return {maxima, odd};
    }

private:
    SignaturePtr sig_;
    Terms terms_;
};

}  // namespace hgraded
