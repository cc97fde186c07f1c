/**
 * @file abelian_group.hpp
 * @brief Finite abelian groups Z_q1 x ... x Z_qt, their characters and parity maps.
 *
 * Characters are labelled by residue tuples (k_1, ..., k_t): the tuple k
 * denotes the character g -> prod_i zeta_{q_i}^(k_i g_i). This fixes one
 * isomorphism Ch(G) ~ G once and for all; every weight in the library is such
 * a tuple.
 */
#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "hgraded/cyclotomic.hpp"
#include "hgraded/error.hpp"

namespace hgraded {

namespace detail {

inline std::string tuple_to_string(const std::vector<int>& values) {
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(values[i]);
    }
    return s + ")";
}

}  // namespace detail

/// Element (g_1, ..., g_t) of G, 0 <= g_i < q_i.
struct GroupElement {
    std::vector<int> residues;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
    std::string to_string() const { return detail::tuple_to_string(residues); }
};

/// Character of G labelled by its residue tuple (k_1, ..., k_t).
struct Character {
    std::vector<int> residues;

    friend bool operator==(const Character&, const Character&) = default;
    friend auto operator<=>(const Character&, const Character&) = default;
    std::string to_string() const { return detail::tuple_to_string(residues); }
};

/// Element of Z_2.
enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

inline std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

class FiniteAbelianGroup {
public:
    static constexpr long default_order_bound = 4096;

    /// The trivial group (no factors).
    FiniteAbelianGroup() = default;

    explicit FiniteAbelianGroup(std::vector<int> factors, long order_bound = default_order_bound)
        : factors_(std::move(factors)) {
        for (int q : factors_) {
            if (q < 2) throw MathError("cyclic factor must be >= 2, got " + std::to_string(q));
            order_ *= q;
            if (order_ > order_bound)
                throw MathError("group order exceeds bound " + std::to_string(order_bound));
            exponent_ = std::lcm(exponent_, q);
        }
    }

    /// Parses "q1xq2x...xqt", e.g. "2x2". "1" denotes the trivial group.
    static FiniteAbelianGroup parse(std::string_view spec, long order_bound = default_order_bound);

    const std::vector<int>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    long order() const noexcept { return order_; }
    int exponent() const noexcept { return exponent_; }

    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += "x";
            s += std::to_string(factors_[i]);
        }
        return s;
    }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

    bool contains(const std::vector<int>& residues) const {
        if (residues.size() != factors_.size()) return false;
        for (std::size_t i = 0; i < residues.size(); ++i)
            if (residues[i] < 0 || residues[i] >= factors_[i]) return false;
        return true;
    }
    bool contains(const GroupElement& g) const { return contains(g.residues); }
    bool contains(const Character& chi) const { return contains(chi.residues); }

    GroupElement identity() const { return {std::vector<int>(factors_.size(), 0)}; }
    Character trivial_character() const { return {std::vector<int>(factors_.size(), 0)}; }

    /// Reduces an arbitrary integer tuple componentwise.
    std::vector<int> reduce(std::vector<int> residues) const {
        check_length(residues);
        for (std::size_t i = 0; i < residues.size(); ++i) {
            residues[i] %= factors_[i];
            if (residues[i] < 0) residues[i] += factors_[i];
        }
        return residues;
    }

    GroupElement element(std::vector<int> residues) const { return {reduce(std::move(residues))}; }
    Character character(std::vector<int> residues) const { return {reduce(std::move(residues))}; }

    /// Elements in lexicographic residue order.
    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        for (auto& t : enumerate()) out.push_back({std::move(t)});
        return out;
    }

    /// Characters in lexicographic residue order.
    std::vector<Character> characters() const {
        std::vector<Character> out;
        for (auto& t : enumerate()) out.push_back({std::move(t)});
        return out;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        require(a);
        require(b);
        return {combine(a.residues, b.residues, 1)};
    }
    GroupElement negate(const GroupElement& a) const {
        require(a);
        return {combine(std::vector<int>(a.residues.size(), 0), a.residues, -1)};
    }

    Character multiply(const Character& a, const Character& b) const {
        require(a);
        require(b);
        return {combine(a.residues, b.residues, 1)};
    }
    Character inverse(const Character& a) const {
        require(a);
        return {combine(std::vector<int>(a.residues.size(), 0), a.residues, -1)};
    }

    /// Index e in [0, N) with chi(g) = zeta_N^e, N the exponent.
    long character_exponent(const Character& chi, const GroupElement& g) const {
        require(chi);
        require(g);
        long e = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            e += static_cast<long>(chi.residues[i]) * g.residues[i] * (exponent_ / factors_[i]);
        return e % exponent_;
    }

    /// Exact value chi(g) in Q(zeta_N), N the exponent of G.
    Cyclotomic evaluate(const Character& chi, const GroupElement& g) const {
        return Cyclotomic::root_of_unity(exponent_, character_exponent(chi, g));
    }

    /// Rows indexed by characters, columns by elements, both in lexicographic order.
    std::vector<std::vector<Cyclotomic>> character_table() const {
        std::vector<std::vector<Cyclotomic>> table;
        const auto elems = elements();
        for (const auto& chi : characters()) {
            std::vector<Cyclotomic> row;
            row.reserve(elems.size());
            for (const auto& g : elems) row.push_back(evaluate(chi, g));
            table.push_back(std::move(row));
        }
        return table;
    }

private:
    void check_length(const std::vector<int>& residues) const {
        if (residues.size() != factors_.size())
            throw MathError("residue tuple " + detail::tuple_to_string(residues) + " has wrong length for group " +
                            to_string());
    }

    template <typename T>
    void require(const T& value) const {
        check_length(value.residues);
        if (!contains(value))
            throw MathError("residue tuple " + value.to_string() + " does not belong to group " + to_string());
    }

    std::vector<int> combine(const std::vector<int>& a, const std::vector<int>& b, int sign) const {
        std::vector<int> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = (a[i] + sign * b[i]) % factors_[i];
            if (r[i] < 0) r[i] += factors_[i];
        }
        return r;
    }

    std::vector<std::vector<int>> enumerate() const {
        std::vector<std::vector<int>> out;
        out.reserve(static_cast<std::size_t>(order_));
        std::vector<int> cur(factors_.size(), 0);
        for (long n = 0; n < order_; ++n) {
            out.push_back(cur);
            for (std::size_t i = factors_.size(); i-- > 0;) {
                if (++cur[i] < factors_[i]) break;
                cur[i] = 0;
            }
        }
        return out;
    }

    std::vector<int> factors_;
    long order_ = 1;
    int exponent_ = 1;
};

inline FiniteAbelianGroup make_group(std::vector<int> factors,
                                     long order_bound = FiniteAbelianGroup::default_order_bound) {
    return FiniteAbelianGroup(std::move(factors), order_bound);
}

inline FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec, long order_bound) {
    if (spec == "1" || spec.empty()) return FiniteAbelianGroup();
    std::vector<int> factors;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t end = spec.find('x', pos);
        if (end == std::string_view::npos) end = spec.size();
        std::string_view part = spec.substr(pos, end - pos);
        if (part.empty() || part.size() > 9 || part.find_first_not_of("0123456789") != std::string_view::npos)
            throw ParseError("invalid group spec '" + std::string(spec) + "'", pos);
        factors.push_back(std::stoi(std::string(part)));
        pos = end + 1;
    }
    try {
        return FiniteAbelianGroup(std::move(factors), order_bound);
    } catch (const MathError& e) {
        throw ParseError(std::string("invalid group spec '") + std::string(spec) + "': " + e.what());
    }
}

/// Homomorphism Ch(G) -> Z_2, chi -> sum k_i p_i mod 2. Surjectivity is not required.
class ParityMap {
public:
    ParityMap() = default;

    ParityMap(const FiniteAbelianGroup& group, std::vector<int> bits) : bits_(std::move(bits)) {
        if (bits_.size() != group.rank())
            throw MathError("parity map has " + std::to_string(bits_.size()) + " bits but group " +
                            group.to_string() + " has rank " + std::to_string(group.rank()));
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i] != 0 && bits_[i] != 1) throw MathError("parity bits must be 0 or 1");
            if (bits_[i] == 1 && group.factors()[i] % 2 != 0)
                throw MathError("parity bit 1 on odd cyclic factor Z_" + std::to_string(group.factors()[i]) +
                                " is not a homomorphism");
        }
    }

    /// All-zero parity map.
    static ParityMap trivial(const FiniteAbelianGroup& group) {
        return ParityMap(group, std::vector<int>(group.rank(), 0));
    }

    /// Parses a bit string such as "11" or "0".
    static ParityMap parse(const FiniteAbelianGroup& group, std::string_view bits) {
        std::vector<int> values;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] != '0' && bits[i] != '1') throw ParseError("invalid parity spec '" + std::string(bits) + "'", i);
            values.push_back(bits[i] - '0');
        }
        try {
            return ParityMap(group, std::move(values));
        } catch (const MathError& e) {
            throw ParseError(std::string("invalid parity spec: ") + e.what());
        }
    }

    const std::vector<int>& bits() const noexcept { return bits_; }

    Parity operator()(const Character& chi) const {
        if (chi.residues.size() != bits_.size()) throw MathError("character does not match parity map rank");
        int s = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) s += chi.residues[i] * bits_[i];
        return static_cast<Parity>(s & 1);
    }

    std::string to_string() const {
        std::string s;
        for (int b : bits_) s += static_cast<char>('0' + b);
        return s;
    }

    friend bool operator==(const ParityMap&, const ParityMap&) = default;

private:
    std::vector<int> bits_;
};

inline Parity parity_of(const ParityMap& pm, const Character& chi) { return pm(chi); }

}  // namespace hgraded
