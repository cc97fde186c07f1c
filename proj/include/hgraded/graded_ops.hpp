/**
 * @file graded_ops.hpp
 * @brief Group action, weights and homogeneous decomposition of superfunctions.
 *
 * G acts on a coordinate of weight h by g . v = h(g) v, hence on a monomial by
 * the value of its weight. A superfunction F is homogeneous of weight chi when
 * g . F = chi(g) F for all g, and its chi-component is
 *
 *     F_chi = (1/|G|) sum_g chi(g) (g^{-1} . F).
 *
 * decompose() evaluates this without summing rational functions: the
 * denominator D is multiplied by its translates act(gamma, D) over
 * representatives gamma of G/Stab(D), where Stab(D) is the set of g acting on
 * D by a scalar. The product is homogeneous, so the projection reduces to
 * sorting numerator monomials by weight. decompose_oracle() sums the |G|
 * translates literally and serves as an independent check.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgraded/abelian_group.hpp"
#include "hgraded/error.hpp"
#include "hgraded/super_rational.hpp"

namespace hgraded {

namespace detail {

inline void require_element(const Signature& sig, const GroupElement& g) {
    if (!sig.group().contains(g))
        throw MathError("group element " + g.to_string() + " does not belong to group " + sig.group().to_string());
}

inline void require_character(const Signature& sig, const Character& chi) {
    if (!sig.group().contains(chi))
        throw MathError("character " + chi.to_string() + " does not belong to group " + sig.group().to_string());
}

/// Common weight of all monomials, nullopt when they differ; zero polynomials have none.
inline std::optional<Character> common_weight(const SuperPolynomial& p) {
    std::optional<Character> w;
    for (const auto& [m, c] : p.terms()) {
        Character mw = p.monomial_weight(m);
        if (w && *w != mw) return std::nullopt;
        w = std::move(mw);
    }
    return w;
}

}  // namespace detail

/// g . p, rescaling each monomial by the value of its weight at g.
inline SuperPolynomial act(const GroupElement& g, const SuperPolynomial& p) {
    const Signature& sig = *p.signature();
    detail::require_element(sig, g);
    const auto& group = sig.group();
    return p.map_coefficients([&](const Monomial& m) {
        return Cyclotomic::root_of_unity(group.exponent(), group.character_exponent(p.monomial_weight(m), g));
    });
}

inline SuperRational act(const GroupElement& g, const SuperRational& f) {
    return SuperRational(act(g, f.numerator()), act(g, f.denominator()));
}

/// N/D rewritten as N'/D' with D' homogeneous of weight `denominator_weight`.
struct NormedFraction {
    SuperPolynomial numerator;
    SuperPolynomial denominator;
    Character denominator_weight;
};

inline NormedFraction norm_denominator(const SuperRational& f) {
    const SuperPolynomial& den = f.denominator();
    if (auto w = detail::common_weight(den)) return {f.numerator(), den, *w};

    const Signature& sig = *f.signature();
    const auto& group = sig.group();
    std::vector<Character> weights;
    for (const auto& [m, c] : den.terms()) weights.push_back(den.monomial_weight(m));

    auto stabilizes = [&](const GroupElement& g) {
        const long first = group.character_exponent(weights.front(), g);
        for (const auto& w : weights)
            if (group.character_exponent(w, g) != first) return false;
        return true;
    };
    const auto elements = group.elements();
    std::vector<GroupElement> stabilizer;
    for (const auto& g : elements)
        if (stabilizes(g)) stabilizer.push_back(g);

    std::set<GroupElement> covered;
    SuperPolynomial multiplier = SuperPolynomial::constant(f.signature(), Cyclotomic(1));
    for (const auto& gamma : elements) {
        if (covered.count(gamma)) continue;
        for (const auto& k : stabilizer) covered.insert(group.add(gamma, k));
        if (gamma != group.identity()) multiplier *= act(gamma, den);
    }
    SuperPolynomial normed = den * multiplier;
    auto w = detail::common_weight(normed);
    if (!w) throw MathError("internal error: normed denominator is not homogeneous");
    return {f.numerator() * multiplier, std::move(normed), *w};
}

/// Weight of a nonzero superfunction, or nullopt when it is inhomogeneous.
inline std::optional<Character> weight_of(const SuperRational& f) {
    if (f.is_zero()) throw MathError("the zero function has no weight");
    NormedFraction nf = norm_denominator(f);
    auto w = detail::common_weight(nf.numerator);
    if (!w) return std::nullopt;
    const auto& group = f.signature()->group();
    return group.multiply(*w, group.inverse(nf.denominator_weight));
}

inline std::optional<Character> weight_of(const SuperPolynomial& p) { return weight_of(SuperRational(p)); }

/// True iff g . F = chi(g) F for every g. The zero function is homogeneous of every weight.
inline bool is_homogeneous(const SuperRational& f, const Character& chi) {
    detail::require_character(*f.signature(), chi);
    if (f.is_zero()) return true;
    auto w = weight_of(f);
    return w && *w == chi;
}

/// Homogeneous components F_chi keyed by weight; zero components are omitted.
inline std::map<Character, SuperRational> decompose(const SuperRational& f) {
    std::map<Character, SuperRational> out;
    if (f.is_zero()) return out;
    NormedFraction nf = norm_denominator(f);
    const auto& group = f.signature()->group();
    const Character den_inverse = group.inverse(nf.denominator_weight);

    std::map<Character, SuperPolynomial> buckets;
    for (const auto& [m, c] : nf.numerator.terms()) {
        Character chi = group.multiply(nf.numerator.monomial_weight(m), den_inverse);
        auto it = buckets.try_emplace(std::move(chi), f.signature()).first;
        it->second.add_term(m, c);
    }
    for (auto& [chi, num] : buckets)
        if (!num.is_zero()) out.emplace(chi, SuperRational(std::move(num), nf.denominator).normalized());
    return out;
}

/// The averaging formula applied literally: |G| translates summed as rational functions.
inline std::map<Character, SuperRational> decompose_oracle(const SuperRational& f) {
    const auto& sig = f.signature();
    const auto& group = sig->group();
    const auto elements = group.elements();

    // g^{-1} . F for every g, normalized so translates with proportional
    // denominators share an identical one.
    std::vector<SuperRational> translates;
    translates.reserve(elements.size());
    for (const auto& g : elements) translates.push_back(act(group.negate(g), f).normalized());

    const Cyclotomic inv_order(Rational(1) / Rational(group.order()));
    std::map<Character, SuperRational> out;
    for (const auto& chi : group.characters()) {
        std::vector<std::pair<SuperPolynomial, SuperPolynomial>> buckets;  // (denominator, numerator sum)
        for (std::size_t idx = 0; idx < elements.size(); ++idx) {
            const Cyclotomic weight = group.evaluate(chi, elements[idx]);
            const auto& t = translates[idx];
            auto it = std::find_if(buckets.begin(), buckets.end(),
                                   [&](const auto& b) { return b.first == t.denominator(); });
            if (it == buckets.end()) buckets.emplace_back(t.denominator(), t.numerator().scaled(weight));
            else it->second += t.numerator().scaled(weight);
        }
        SuperRational sum(sig);
        for (auto& [den, num] : buckets)
            if (!num.is_zero()) sum += SuperRational(std::move(num), std::move(den));
        if (!sum.is_zero()) out.emplace(chi, sum.scaled(inv_order).normalized());
    }
    return out;
}

/// Replaces each coordinate of F's signature by the corresponding image
/// (declaration order: even coordinates, then odd ones). All images must share
/// one target signature and match the parity of the coordinate they replace.
inline SuperRational substitute(const SuperRational& f, const std::vector<SuperRational>& images,
                                SignaturePtr target) {
    const Signature& src = *f.signature();
    if (images.size() != src.size()) {
        const auto refs = src.refs();
        const std::string missing = images.size() < refs.size() ? src.variable(refs[images.size()]).name : "";
        throw ValidationError(ValidationError::Kind::MissingImage, missing, "", "");
    }
    const auto refs = src.refs();
    for (std::size_t k = 0; k < refs.size(); ++k) {
        const auto& var = src.variable(refs[k]);
        require_same_signature(target, images[k].signature());
        auto p = images[k].parity();
        if (!images[k].is_zero() && p != var.parity)
            throw ValidationError(ValidationError::Kind::ParityMismatch, var.name, to_string(var.parity),
                                  p ? to_string(*p) : "mixed");
    }

    const std::size_t ne = src.even_count();
    auto [max_n, odd_n] = f.numerator().support();
    auto [max_d, odd_d] = f.denominator().support();
    std::vector<std::uint32_t> max_e(ne);
    for (std::size_t i = 0; i < ne; ++i) max_e[i] = std::max(max_n[i], max_d[i]);
    const OddMask odd_used = odd_n | odd_d;

    // Lazily cached powers of image numerators/denominators.
    std::vector<std::vector<SuperPolynomial>> num_pow(ne), den_pow(ne);
    auto power = [&](std::vector<SuperPolynomial>& cache, const SuperPolynomial& base, std::uint32_t k)
        -> const SuperPolynomial& {
        if (cache.empty()) cache.push_back(SuperPolynomial::constant(target, Cyclotomic(1)));
        while (cache.size() <= k) cache.push_back(cache.back() * base);
        return cache[k];
    };

    auto substitute_poly = [&](const SuperPolynomial& p) {
        SuperPolynomial out(target);
        for (const auto& [m, c] : p.terms()) {
            SuperPolynomial term = SuperPolynomial::constant(target, c);
            for (std::size_t i = 0; i < ne; ++i) {
                if (max_e[i] == 0) continue;
                const auto& img = images[i];
                term = term * power(num_pow[i], img.numerator(), m.exponents[i]);
                if (!img.denominator().is_constant() || !img.denominator().constant_term().is_one())
                    term = term * power(den_pow[i], img.denominator(), max_e[i] - m.exponents[i]);
            }
            for (OddMask rest = odd_used; rest; rest &= rest - 1) {
                const auto j = static_cast<std::size_t>(std::countr_zero(rest));
                const auto& img = images[ne + j];
                if (m.odd & (OddMask{1} << j)) term = term * img.numerator();
                else if (!img.denominator().is_constant() || !img.denominator().constant_term().is_one())
                    term = term * img.denominator();
            }
            out += term;
        }
        return out;
    };

    SuperPolynomial new_num = substitute_poly(f.numerator());
    SuperPolynomial new_den = substitute_poly(f.denominator());
    if (new_den.is_zero()) throw MathError("substitution produced an identically zero denominator");
    if (new_den.even_part().is_zero())
        throw MathError("substitution produced a non-invertible denominator (its even part vanishes)");
    if (!new_den.has_odd_content()) return SuperRational(std::move(new_num), std::move(new_den)).normalized();
    return (SuperRational(std::move(new_num)) * SuperRational::invert_polynomial(new_den)).normalized();
}

/// Name-keyed variant; every coordinate of F's signature must be assigned.
inline SuperRational substitute(const SuperRational& f, const std::map<std::string, SuperRational>& assignment,
                                SignaturePtr target) {
    std::vector<SuperRational> images;
    for (const auto& ref : f.signature()->refs()) {
        const auto& name = f.signature()->variable(ref).name;
        auto it = assignment.find(name);
        if (it == assignment.end()) throw ValidationError(ValidationError::Kind::MissingImage, name, "", "");
        images.push_back(it->second);
    }
    return substitute(f, images, std::move(target));
}

/// Sets every coordinate of non-identity weight, and every odd coordinate, to zero.
inline SuperRational restrict_to_base(const SuperRational& f) {
    const Signature& sig = *f.signature();
    const Character e = sig.group().trivial_character();
    std::vector<bool> kept(sig.even_count());
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = sig.even()[i].weight == e;
    auto on_base = [&](const Monomial& m) {
        if (m.odd) return false;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (!kept[i] && m.exponents[i]) return false;
        return true;
    };
    SuperPolynomial den = f.denominator().filtered(on_base);
    if (den.is_zero()) throw MathError("denominator vanishes identically on the base");
    return SuperRational(f.numerator().filtered(on_base), std::move(den)).normalized();
}

/// Numeric value at a point of the even coordinates, one complex number per odd monomial.
inline std::map<OddMask, std::complex<double>> evaluate_even(const SuperRational& f,
                                                             const std::vector<std::complex<double>>& point) {
    const Signature& sig = *f.signature();
    if (point.size() != sig.even_count())
        throw MathError("evaluation point has " + std::to_string(point.size()) + " entries, expected " +
                        std::to_string(sig.even_count()));
    auto monomial_value = [&](const Monomial& m) {
        std::complex<double> v = 1.0;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (std::uint32_t k = 0; k < m.exponents[i]; ++k) v *= point[i];
        return v;
    };
    std::complex<double> den = 0.0;
    for (const auto& [m, c] : f.denominator().terms()) den += embed_complex(c) * monomial_value(m);
    if (std::abs(den) <= 1e-12) throw MathError("denominator vanishes at the evaluation point");
    std::map<OddMask, std::complex<double>> out;
    for (const auto& [m, c] : f.numerator().terms()) out[m.odd] += embed_complex(c) * monomial_value(m);
    for (auto& [mask, v] : out) v /= den;
    return out;
}

inline std::map<OddMask, std::complex<double>> evaluate_even(
    const SuperRational& f, const std::map<std::string, std::complex<double>>& point) {
    const Signature& sig = *f.signature();
    std::vector<std::complex<double>> values;
    for (const auto& v : sig.even()) {
        auto it = point.find(v.name);
        if (it == point.end()) throw MathError("no value given for '" + v.name + "'");
        values.push_back(it->second);
    }
    return evaluate_even(f, values);
}

}  // namespace hgraded
