/**
 * @file signature.hpp
 * @brief Coordinate systems of graded domains and superdomains.
 *
 * A graded signature lists even and odd coordinates together with their
 * weights in Ch(G); the parity of every weight must agree with the list the
 * coordinate is declared in. A super signature has the trivial group, every
 * weight is the identity and the Grassmann parity comes from the declaration
 * alone.
 */
#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgraded/abelian_group.hpp"
#include "hgraded/error.hpp"

namespace hgraded {

enum class SignatureKind { Graded, Super };

struct Variable {
    std::string name;
    Character weight;
    Parity parity;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Position of a coordinate inside a signature.
struct VariableRef {
    Parity parity;
    std::size_t index;

    friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

/// "name@(k1,...,kt)".
inline std::string weighted_name(std::string_view base, const Character& weight) {
    return std::string(base) + "@" + weight.to_string();
}

namespace detail {

inline bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_reserved_name(std::string_view base) { return base == "i" || base == "zeta"; }

}  // namespace detail

/// Splits "x@(1,0)" or "x@1" into base name and residue tuple; a bare name has no tuple.
inline std::pair<std::string, std::optional<std::vector<int>>> split_weighted_name(std::string_view text) {
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("invalid variable name '" + std::string(text) + "': " + why);
    };
    const std::size_t at = text.find('@');
    std::string_view base = text.substr(0, at);
    if (base.empty() || !detail::is_identifier_start(base[0])) throw fail("must start with a letter or '_'");
    for (char c : base)
        if (!detail::is_identifier_char(c)) throw fail("unexpected character");
    if (at == std::string_view::npos) return {std::string(base), std::nullopt};

    std::string_view rest = text.substr(at + 1);
    bool parens = !rest.empty() && rest.front() == '(';
    if (parens) {
        if (rest.back() != ')') throw fail("unbalanced parentheses");
        rest = rest.substr(1, rest.size() - 2);
    }
    std::vector<int> residues;
    if (parens && rest.empty()) return {std::string(base), residues};
    std::size_t pos = 0;
    while (true) {
        std::size_t end = rest.find(',', pos);
        if (end == std::string_view::npos) end = rest.size();
        std::string_view part = rest.substr(pos, end - pos);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        if (part.empty() || part.size() > 9 || part.find_first_not_of("0123456789") != std::string_view::npos)
            throw fail("weight components must be nonnegative integers");
        residues.push_back(std::stoi(std::string(part)));
        if (end == rest.size()) break;
        if (!parens) throw fail("multi-component weights need parentheses");
        pos = end + 1;
    }
    return {std::string(base), std::move(residues)};
}

class Signature;
using SignaturePtr = std::shared_ptr<const Signature>;

class Signature {
public:
    /// Graded signature. Names are used verbatim; weights must lie in the group
    /// and have parity matching the list (even/odd) they appear in.
    static SignaturePtr graded(FiniteAbelianGroup group, ParityMap parity,
                               std::vector<std::pair<std::string, Character>> even,
                               std::vector<std::pair<std::string, Character>> odd) {
        auto sig = std::shared_ptr<Signature>(new Signature(SignatureKind::Graded, std::move(group), std::move(parity)));
        for (auto& [name, w] : even) sig->push(std::move(name), std::move(w), Parity::Even);
        for (auto& [name, w] : odd) sig->push(std::move(name), std::move(w), Parity::Odd);
        sig->finish();
        return sig;
    }

    /// Graded signature from names in the "name@(k1,...)" scheme; bare names get weight e.
    static SignaturePtr graded_from_names(const FiniteAbelianGroup& group, const ParityMap& parity,
                                          const std::vector<std::string>& even, const std::vector<std::string>& odd) {
        auto convert = [&](const std::vector<std::string>& names) {
            std::vector<std::pair<std::string, Character>> out;
            for (const auto& text : names) {
                auto [base, residues] = split_weighted_name(text);
                Character w = group.trivial_character();
                if (residues) {
                    if (!group.contains(*residues))
                        throw MathError("weight " + detail::tuple_to_string(*residues) + " of '" + text +
                                        "' is not a character of group " + group.to_string());
                    w = Character{*residues};
                    out.emplace_back(weighted_name(base, w), w);
                } else {
                    out.emplace_back(base, w);
                }
            }
            return out;
        };
        return graded(group, parity, convert(even), convert(odd));
    }

    /// Superdomain coordinates: trivial group, parity from the declaration.
    static SignaturePtr super(std::vector<std::string> even, std::vector<std::string> odd) {
        auto sig = std::shared_ptr<Signature>(new Signature(SignatureKind::Super, FiniteAbelianGroup(), ParityMap()));
        for (auto& name : even) sig->push(std::move(name), Character{}, Parity::Even);
        for (auto& name : odd) sig->push(std::move(name), Character{}, Parity::Odd);
        sig->finish();
        return sig;
    }

    SignatureKind kind() const noexcept { return kind_; }
    bool is_graded() const noexcept { return kind_ == SignatureKind::Graded; }
    const FiniteAbelianGroup& group() const noexcept { return group_; }
    const ParityMap& parity_map() const noexcept { return parity_; }

    const std::vector<Variable>& even() const noexcept { return even_; }
    const std::vector<Variable>& odd() const noexcept { return odd_; }
    std::size_t even_count() const noexcept { return even_.size(); }
    std::size_t odd_count() const noexcept { return odd_.size(); }
    std::size_t size() const noexcept { return even_.size() + odd_.size(); }

    const Variable& variable(VariableRef ref) const {
        return ref.parity == Parity::Even ? even_.at(ref.index) : odd_.at(ref.index);
    }

    /// Variables in declaration order: all even ones, then all odd ones.
    std::vector<VariableRef> refs() const {
        std::vector<VariableRef> out;
        for (std::size_t i = 0; i < even_.size(); ++i) out.push_back({Parity::Even, i});
        for (std::size_t i = 0; i < odd_.size(); ++i) out.push_back({Parity::Odd, i});
        return out;
    }

    std::optional<VariableRef> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Number of coordinates of each weight (n_chi).
    std::map<Character, int> dimension_vector() const {
        std::map<Character, int> dims;
        for (const auto& v : even_) ++dims[v.weight];
        for (const auto& v : odd_) ++dims[v.weight];
        return dims;
    }

    std::string describe() const {
        std::string s = is_graded() ? "graded[" + group_.to_string() + "|" + parity_.to_string() + "](" : "super(";
        for (std::size_t i = 0; i < even_.size(); ++i) s += (i ? "," : "") + even_[i].name;
        s += " | ";
        for (std::size_t i = 0; i < odd_.size(); ++i) s += (i ? "," : "") + odd_[i].name;
        return s + ")";
    }

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.kind_ == b.kind_ && a.group_ == b.group_ && a.parity_ == b.parity_ && a.even_ == b.even_ &&
               a.odd_ == b.odd_;
    }

private:
    Signature(SignatureKind kind, FiniteAbelianGroup group, ParityMap parity)
        : kind_(kind), group_(std::move(group)), parity_(std::move(parity)) {
        if (kind_ == SignatureKind::Graded) parity_ = ParityMap(group_, parity_.bits());
    }

    void push(std::string name, Character weight, Parity parity) {
        auto [base, residues] = split_weighted_name(name);
        if (detail::is_reserved_name(base)) throw MathError("'" + base + "' is a reserved name");
        if (kind_ == SignatureKind::Graded) {
            if (!group_.contains(weight))
                throw MathError("weight " + weight.to_string() + " of '" + name + "' is not a character of group " +
                                group_.to_string());
            if (parity_(weight) != parity)
                throw MathError("coordinate '" + name + "' is declared " + hgraded::to_string(parity) +
                                " but its weight " + weight.to_string() + " has " +
                                hgraded::to_string(parity_(weight)) + " parity");
        }
        auto& list = parity == Parity::Even ? even_ : odd_;
        VariableRef ref{parity, list.size()};
        if (!index_.emplace(name, ref).second) throw MathError("duplicate coordinate name '" + name + "'");
        list.push_back({std::move(name), std::move(weight), parity});
    }

    void finish() {
        if (odd_.size() > 64) throw MathError("at most 64 odd coordinates are supported");
    }

    SignatureKind kind_;
    FiniteAbelianGroup group_;
    ParityMap parity_;
    std::vector<Variable> even_;
    std::vector<Variable> odd_;
    std::map<std::string, VariableRef> index_;
};

inline bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_signature(const SignaturePtr& a, const SignaturePtr& b) {
    if (!same_signature(a, b))
        throw ValidationError(ValidationError::Kind::SignatureMismatch, "", a ? a->describe() : "null",
                              b ? b->describe() : "null");
}

}  // namespace hgraded
