/**
 * @file covering.hpp
 * @brief H-coverings of superdomains and supermanifolds, graded lifts and atlases.
 *
 * The covering of a superdomain with coordinates (x_i | xi_j) is the graded
 * domain with one copy x_i@g for every even-parity weight g and one copy
 * xi_j@h for every odd-parity weight h. The projection p pulls x_i back to the
 * sum of its copies. A morphism phi from a graded domain into the superdomain
 * lifts uniquely through p: the copy x_i@g is sent to the g-component of
 * phi*(x_i).
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgraded/error.hpp"
#include "hgraded/expression.hpp"
#include "hgraded/morphism.hpp"

namespace hgraded {

namespace detail {

inline std::vector<Character> weights_of_parity(const FiniteAbelianGroup& group, const ParityMap& parity, Parity p) {
    std::vector<Character> out;
    for (auto& chi : group.characters())
        if (parity(chi) == p) out.push_back(std::move(chi));
    return out;
}

inline void require_super(const Signature& sig, const char* what) {
    if (sig.is_graded()) throw MathError(std::string(what) + " must be a superdomain signature, got " + sig.describe());
}

}  // namespace detail

/// Graded coordinates x@g (|g| even) and xi@h (|h| odd), copies grouped per coordinate
/// and ordered lexicographically by weight.
inline SignaturePtr covering_signature(const Signature& super_sig, const FiniteAbelianGroup& group,
                                       const ParityMap& parity) {
    detail::require_super(super_sig, "covered domain");
    const auto even_weights = detail::weights_of_parity(group, parity, Parity::Even);
    const auto odd_weights = detail::weights_of_parity(group, parity, Parity::Odd);
    if (super_sig.odd_count() > 0 && odd_weights.empty())
        throw MathError("parity map " + parity.to_string() + " on group " + group.to_string() +
                        " has no odd weights, so odd coordinates have no graded copies");
    std::vector<std::pair<std::string, Character>> even, odd;
    for (const auto& v : super_sig.even())
        for (const auto& g : even_weights) even.emplace_back(weighted_name(v.name, g), g);
    for (const auto& v : super_sig.odd())
        for (const auto& h : odd_weights) odd.emplace_back(weighted_name(v.name, h), h);
    return Signature::graded(group, parity, std::move(even), std::move(odd));
}

/// Covering projection p: covering -> superdomain, p*(x) = sum of the copies of x.
inline Morphism covering_map(const SignaturePtr& super_sig, const FiniteAbelianGroup& group, const ParityMap& parity) {
    SignaturePtr cover = covering_signature(*super_sig, group, parity);
    const auto even_weights = detail::weights_of_parity(group, parity, Parity::Even);
    const auto odd_weights = detail::weights_of_parity(group, parity, Parity::Odd);
    std::vector<SuperRational> images;
    for (const auto& v : super_sig->even()) {
        SuperPolynomial sum(cover);
        for (const auto& g : even_weights) sum += SuperPolynomial::variable(cover, weighted_name(v.name, g));
        images.emplace_back(std::move(sum));
    }
    for (const auto& v : super_sig->odd()) {
        SuperPolynomial sum(cover);
        for (const auto& h : odd_weights) sum += SuperPolynomial::variable(cover, weighted_name(v.name, h));
        images.emplace_back(std::move(sum));
    }
    return make_morphism(cover, super_sig, std::move(images));
}

/// Unique graded lift Phi of phi: graded domain -> superdomain through the covering
/// of phi's target: Phi*(x@g) is the g-component of phi*(x).
inline Morphism lift_mixed(const Morphism& phi) {
    const Signature& src = *phi.source();
    const Signature& dst = *phi.target();
    if (!src.is_graded()) throw MathError("lift_mixed needs a graded source domain");
    detail::require_super(dst, "lift target");
    SignaturePtr cover = covering_signature(dst, src.group(), src.parity_map());
    const auto even_weights = detail::weights_of_parity(src.group(), src.parity_map(), Parity::Even);
    const auto odd_weights = detail::weights_of_parity(src.group(), src.parity_map(), Parity::Odd);

    std::vector<SuperRational> images;
    images.reserve(cover->size());
    auto distribute = [&](const SuperRational& image, const std::vector<Character>& weights) {
        auto components = decompose(image);
        for (const auto& g : weights) {
            auto it = components.find(g);
            images.push_back(it == components.end() ? SuperRational(phi.source()) : it->second);
            if (it != components.end()) components.erase(it);
        }
        if (!components.empty())
            throw MathError("internal error: component of weight " + components.begin()->first.to_string() +
                            " has the wrong parity");
    };
    const auto refs = dst.refs();
    for (std::size_t k = 0; k < refs.size(); ++k)
        distribute(phi.images()[k], refs[k].parity == Parity::Even ? even_weights : odd_weights);
    return make_morphism(phi.source(), cover, std::move(images));
}

/// Graded lift Psi of a superdomain morphism psi: U -> U', with p' o Psi = psi o p.
inline Morphism lift_super(const Morphism& psi, const FiniteAbelianGroup& group, const ParityMap& parity) {
    detail::require_super(*psi.source(), "source of the lifted morphism");
    detail::require_super(*psi.target(), "target of the lifted morphism");
    Morphism p = covering_map(psi.source(), group, parity);
    std::optional<Morphism> phi;
    try {
        phi = compose(psi, p);
    } catch (const ValidationError&) {
        throw;
    } catch (const MathError& e) {
        throw MathError(std::string("morphism is singular along the covering: ") + e.what());
    }
    return lift_mixed(*phi);
}

/// Checks phi = p o Phi coordinatewise, p the covering projection of phi's target.
inline bool lift_commutes(const Morphism& lift, const Morphism& phi) {
    const auto& g = phi.source()->group();
    const auto& pm = phi.source()->parity_map();
    Morphism p = covering_map(phi.target(), g, pm);
    return morphism_eq(compose(p, lift), phi);
}

/// Charts with transition maps. transitions[{a, b}] is the morphism chart a -> chart b,
/// i.e. it expresses b's coordinates in terms of a's.
struct Atlas {
    std::optional<FiniteAbelianGroup> group;
    std::optional<ParityMap> parity;
    std::map<std::string, SignaturePtr> charts;
    std::map<std::pair<std::string, std::string>, Morphism> transitions;

    void add_chart(const std::string& id, SignaturePtr sig) {
        if (!charts.emplace(id, std::move(sig)).second) throw MathError("duplicate chart '" + id + "'");
    }

    void add_transition(const std::string& from, const std::string& to, Morphism m) {
        auto a = charts.find(from), b = charts.find(to);
        if (a == charts.end() || b == charts.end())
            throw MathError("transition " + from + "->" + to + " refers to an unknown chart");
        if (from == to) throw MathError("transition from chart '" + from + "' to itself");
        require_same_signature(a->second, m.source());
        require_same_signature(b->second, m.target());
        transitions.insert_or_assign({from, to}, std::move(m));
    }

    bool is_graded() const {
        for (const auto& [id, sig] : charts)
            if (sig->is_graded()) return true;
        return false;
    }
};

struct CocycleFailure {
    enum class Kind { MissingInverse, Pair, Triple, Singular };

    Kind kind;
    std::vector<std::string> charts;  // the loop a -> b -> a or a -> b -> c -> a
    std::string message;
    /// Coordinates of the first chart whose composite image differs from the coordinate.
    std::vector<std::pair<std::string, std::string>> residuals;  // (coordinate, composite image)
};

struct CocycleReport {
    bool passed = true;
    std::size_t pairs_checked = 0;
    std::size_t triples_checked = 0;
    /// Identities are verified as global rational identities; overlap domains are not modeled.
    bool formal_identity = true;
    std::vector<CocycleFailure> failures;
};

inline std::string to_string(CocycleFailure::Kind kind) {
    switch (kind) {
    case CocycleFailure::Kind::MissingInverse: return "missing-inverse";
    case CocycleFailure::Kind::Pair: return "pair";
    case CocycleFailure::Kind::Triple: return "triple";
    case CocycleFailure::Kind::Singular: return "singular";
    }
    return "unknown";
}

namespace detail {

inline std::string loop_name(const std::vector<std::string>& charts) {
    std::string s;
    for (const auto& c : charts) s += c + "->";
    return s + charts.front();
}

/// Composes the transitions along `loop` (ending back at loop.front()) and records a
/// failure unless the composite is the identity.
inline void check_loop(const Atlas& atlas, const std::vector<std::string>& loop, CocycleFailure::Kind kind,
                       CocycleReport& report) {
    try {
        std::optional<Morphism> acc;
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const auto& step = atlas.transitions.at({loop[k], loop[(k + 1) % loop.size()]});
            acc = acc ? compose(step, *acc) : step;
        }
        if (is_identity(*acc)) return;
        CocycleFailure failure{kind, loop, "composite " + loop_name(loop) + " is not the identity", {}};
        const auto refs = acc->source()->refs();
        for (std::size_t k = 0; k < refs.size(); ++k) {
            const auto var = SuperRational(SuperPolynomial::variable(acc->source(), refs[k]));
            if (!(acc->images()[k] == var))
                failure.residuals.emplace_back(acc->source()->variable(refs[k]).name,
                                               format_expression(acc->images()[k]));
        }
        report.failures.push_back(std::move(failure));
    } catch (const MathError& e) {
        report.failures.push_back({CocycleFailure::Kind::Singular, loop,
                                   "composite " + loop_name(loop) + " could not be formed: " + e.what(), {}});
    }
}

}  // namespace detail

/// Verifies psi_ba o psi_ab = id for every declared pair and psi_ca o psi_bc o psi_ab = id
/// for every triangle of declared transitions.
inline CocycleReport check_cocycle(const Atlas& atlas) {
    CocycleReport report;
    for (const auto& [key, m] : atlas.transitions) {
        const auto& [a, b] = key;
        if (!atlas.transitions.count({b, a})) {
            report.failures.push_back({CocycleFailure::Kind::MissingInverse, {a, b},
                                       "transition " + a + "->" + b + " has no reverse " + b + "->" + a, {}});
            continue;
        }
        ++report.pairs_checked;
        detail::check_loop(atlas, {a, b}, CocycleFailure::Kind::Pair, report);
    }
    std::vector<std::string> ids;
    for (const auto& [id, sig] : atlas.charts) ids.push_back(id);
    auto has = [&](const std::string& x, const std::string& y) { return atlas.transitions.count({x, y}) > 0; };
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = 0; j < ids.size(); ++j)
            for (std::size_t k = 0; k < ids.size(); ++k) {
                // One rotation per cyclic orientation: the first chart is the smallest id.
                if (j <= i || k <= i || j == k) continue;
                const auto &a = ids[i], &b = ids[j], &c = ids[k];
                if (!has(a, b) || !has(b, c) || !has(c, a)) continue;
                ++report.triples_checked;
                detail::check_loop(atlas, {a, b, c}, CocycleFailure::Kind::Triple, report);
            }
    report.passed = report.failures.empty();
    return report;
}

/// Covering atlas: every chart replaced by its covering domain and every transition
/// by its graded lift. The input must pass check_cocycle.
inline Atlas lift_atlas(const Atlas& atlas, const FiniteAbelianGroup& group, const ParityMap& parity) {
    if (atlas.is_graded()) throw MathError("atlas is already graded");
    CocycleReport report = check_cocycle(atlas);
    if (!report.passed) throw MathError("input atlas violates the cocycle condition: " + report.failures.front().message);
    Atlas lifted;
    lifted.group = group;
    lifted.parity = parity;
    for (const auto& [id, sig] : atlas.charts) lifted.add_chart(id, covering_signature(*sig, group, parity));
    for (const auto& [key, m] : atlas.transitions) {
        Morphism lift = lift_super(m, group, parity);
        lifted.add_transition(key.first, key.second,
                              make_morphism(lifted.charts.at(key.first), lifted.charts.at(key.second), lift.images()));
    }
    return lifted;
}

}  // namespace hgraded
