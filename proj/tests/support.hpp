// Random generators shared by the unit tests and the acceptance suite.
#pragma once

#include <algorithm>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hgraded/hgraded.hpp"

namespace hgraded {

// Readable values in test failure messages.
inline void PrintTo(const SuperRational& f, std::ostream* os) { *os << format_expression(f); }
inline void PrintTo(const Cyclotomic& c, std::ostream* os) { *os << c.to_string(); }
inline void PrintTo(const GroupElement& g, std::ostream* os) { *os << g.to_string(); }
inline void PrintTo(const Character& chi, std::ostream* os) { *os << chi.to_string(); }

}  // namespace hgraded

namespace hgraded::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Every factor list q_1 <= q_2 <= ... with q_i >= 2 and product <= max_order.
inline std::vector<std::vector<int>> factor_multisets(int max_order) {
    std::vector<std::vector<int>> out{{}};
    std::vector<int> current;
    auto rec = [&](auto&& self, int min_factor, int remaining) -> void {
        for (int q = min_factor; q <= remaining; ++q) {
            current.push_back(q);
            out.push_back(current);
            self(self, q, remaining / q);
            current.pop_back();
        }
    };
    rec(rec, 2, max_order);
    return out;
}

inline FiniteAbelianGroup random_group(Rng& rng, int max_order) {
    auto all = factor_multisets(max_order);
    auto factors = all[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(all.size()) - 1))];
    std::shuffle(factors.begin(), factors.end(), rng);
    return FiniteAbelianGroup(factors);
}

/// Random parity map; bits on odd factors are forced to 0.
inline ParityMap random_parity(Rng& rng, const FiniteAbelianGroup& group) {
    std::vector<int> bits;
    for (int q : group.factors()) bits.push_back(q % 2 == 0 && coin(rng) ? 1 : 0);
    return ParityMap(group, bits);
}

inline std::vector<Character> characters_of_parity(const FiniteAbelianGroup& g, const ParityMap& pm, Parity p) {
    std::vector<Character> out;
    for (auto& chi : g.characters())
        if (pm(chi) == p) out.push_back(chi);
    return out;
}

/// Graded signature with even coordinates x0.. and odd coordinates t0.. of random weights.
/// Odd coordinates are only created when an odd weight exists.
inline SignaturePtr random_graded_signature(Rng& rng, const FiniteAbelianGroup& g, const ParityMap& pm, int max_even,
                                            int max_odd) {
    const auto even_w = characters_of_parity(g, pm, Parity::Even);
    const auto odd_w = characters_of_parity(g, pm, Parity::Odd);
    const int n_even = uniform(rng, 1, max_even);
    const int n_odd = odd_w.empty() ? 0 : uniform(rng, 0, max_odd);
    std::vector<std::pair<std::string, Character>> even, odd;
    for (int i = 0; i < n_even; ++i)
        even.emplace_back("x" + std::to_string(i), even_w[static_cast<std::size_t>(uniform(rng, 0, int(even_w.size()) - 1))]);
    for (int j = 0; j < n_odd; ++j)
        odd.emplace_back("t" + std::to_string(j), odd_w[static_cast<std::size_t>(uniform(rng, 0, int(odd_w.size()) - 1))]);
    return Signature::graded(g, pm, even, odd);
}

/// Small nonzero coefficient; with probability p_root a root of unity of the given order times an integer.
inline Cyclotomic random_coefficient(Rng& rng, int root_order = 1, double p_root = 0.0) {
    int k = uniform(rng, -4, 4);
    if (k == 0) k = 1;
    Cyclotomic c(k);
    if (root_order > 1 && coin(rng, p_root)) c = c * root_of_unity(root_order, uniform(rng, 0, root_order - 1));
    return c;
}

inline Monomial random_monomial(Rng& rng, const Signature& sig, int max_degree, bool allow_odd = true) {
    Monomial m{std::vector<std::uint32_t>(sig.even_count(), 0), 0};
    int degree = uniform(rng, 0, max_degree);
    for (int d = 0; d < degree && sig.even_count() > 0; ++d)
        ++m.exponents[static_cast<std::size_t>(uniform(rng, 0, int(sig.even_count()) - 1))];
    if (allow_odd)
        for (std::size_t j = 0; j < sig.odd_count(); ++j)
            if (coin(rng, 0.3)) m.odd |= OddMask{1} << j;
    return m;
}

inline SuperPolynomial random_polynomial(Rng& rng, const SignaturePtr& sig, int max_degree, int max_terms,
                                         bool allow_odd = true) {
    SuperPolynomial p(sig);
    const int root_order = sig->group().exponent();
    const int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t)
        p.add_term(random_monomial(rng, *sig, max_degree, allow_odd), random_coefficient(rng, root_order, 0.3));
    return p;
}

/// Nonzero purely even polynomial with at most max_terms terms.
inline SuperPolynomial random_denominator(Rng& rng, const SignaturePtr& sig, int max_degree, int max_terms) {
    while (true) {
        SuperPolynomial d = random_polynomial(rng, sig, max_degree, max_terms, false);
        if (!d.is_zero()) return d;
    }
}

inline SuperRational random_rational(Rng& rng, const SignaturePtr& sig, int max_degree) {
    SuperPolynomial num = random_polynomial(rng, sig, max_degree, 4);
    if (coin(rng, 0.25)) return SuperRational(num);
    return SuperRational(num, random_denominator(rng, sig, max_degree, 3));
}

/// Polynomial of the given Grassmann parity in the coordinates of a superdomain.
inline SuperPolynomial random_parity_polynomial(Rng& rng, const SignaturePtr& sig, Parity parity, int max_degree,
                                                int max_terms, OddMask forbidden_odd = 0,
                                                std::size_t forbidden_even = SIZE_MAX) {
    SuperPolynomial p(sig);
    const int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms * 4 && p.size() < static_cast<std::size_t>(terms); ++t) {
        Monomial m = random_monomial(rng, *sig, max_degree);
        m.odd &= ~forbidden_odd;
        if (forbidden_even < m.exponents.size()) m.exponents[forbidden_even] = 0;
        if (m.parity() != parity) continue;
        p.add_term(std::move(m), Cyclotomic(uniform(rng, 1, 3) * (coin(rng) ? 1 : -1)));
    }
    return p;
}

/// Random polynomial superdomain morphism source -> target.
inline Morphism random_polynomial_morphism(Rng& rng, const SignaturePtr& source, const SignaturePtr& target,
                                           int max_degree = 2) {
    std::vector<SuperRational> images;
    for (const auto& ref : target->refs())
        images.emplace_back(random_parity_polynomial(rng, source, ref.parity, max_degree, 3));
    return make_morphism(source, target, std::move(images));
}

/// Superdomain with even coordinates <prefix>0.. and odd coordinates <odd_prefix>0...
inline SignaturePtr superdomain(const std::string& prefix, const std::string& odd_prefix, int n_even, int n_odd) {
    std::vector<std::string> even, odd;
    for (int i = 0; i < n_even; ++i) even.push_back(prefix + std::to_string(i));
    for (int j = 0; j < n_odd; ++j) odd.push_back(odd_prefix + std::to_string(j));
    return Signature::super(even, odd);
}

/// Elementary shear source -> target (same shape) and its inverse: coordinate k is moved
/// by a polynomial in the other coordinates, every other coordinate is copied.
inline std::pair<Morphism, Morphism> random_shear(Rng& rng, const SignaturePtr& source, const SignaturePtr& target) {
    const auto refs = source->refs();
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 0, int(refs.size()) - 1));
    const VariableRef moved = refs[k];
    const OddMask forbid_odd = moved.parity == Parity::Odd ? OddMask{1} << moved.index : 0;
    const std::size_t forbid_even = moved.parity == Parity::Even ? moved.index : SIZE_MAX;
    SuperPolynomial shift = random_parity_polynomial(rng, source, moved.parity, 2, 2, forbid_odd, forbid_even);

    auto build = [&](const SignaturePtr& from, const SignaturePtr& to, int sign) {
        std::vector<SuperRational> images;
        for (std::size_t j = 0; j < refs.size(); ++j) {
            SuperPolynomial img = SuperPolynomial::variable(from, refs[j]);
            if (j == k) {
                SuperPolynomial moved_shift(from);
                for (const auto& [m, c] : shift.terms()) moved_shift.add_term(m, c);
                img += sign > 0 ? moved_shift : -moved_shift;
            }
            images.emplace_back(std::move(img));
        }
        return make_morphism(from, to, std::move(images));
    };
    return {build(source, target, +1), build(target, source, -1)};
}

/// Three charts A, B, C with transitions built from shears, so every cocycle identity holds.
inline Atlas random_three_chart_atlas(Rng& rng, int n_even, int n_odd) {
    SignaturePtr a = superdomain("x", "xi", n_even, n_odd);
    SignaturePtr b = superdomain("y", "eta", n_even, n_odd);
    SignaturePtr c = superdomain("z", "om", n_even, n_odd);
    auto [ab1, ba1] = random_shear(rng, a, b);
    auto [bb, bb_inv] = random_shear(rng, b, b);
    Morphism ab = compose(bb, ab1);
    Morphism ba = compose(ba1, bb_inv);
    auto [bc, cb] = random_shear(rng, b, c);
    Atlas atlas;
    atlas.add_chart("A", a);
    atlas.add_chart("B", b);
    atlas.add_chart("C", c);
    atlas.add_transition("A", "B", ab);
    atlas.add_transition("B", "A", ba);
    atlas.add_transition("B", "C", bc);
    atlas.add_transition("C", "B", cb);
    atlas.add_transition("A", "C", compose(bc, ab));
    atlas.add_transition("C", "A", compose(ba, cb));
    return atlas;
}

}  // namespace hgraded::testing
