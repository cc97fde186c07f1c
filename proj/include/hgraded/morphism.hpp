/**
 * @file morphism.hpp
 * @brief Morphisms of graded domains and superdomains as coordinate-image maps.
 *
 * A morphism A -> B assigns to every coordinate of B a superfunction over A
 * (its pullback). Into a graded target, the image of a coordinate of weight g
 * must be homogeneous of weight g; into a super target only the Grassmann
 * parity is constrained. Composition is substitution.
 */
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgraded/error.hpp"
#include "hgraded/graded_ops.hpp"

namespace hgraded {

class Morphism {
public:
    const SignaturePtr& source() const noexcept { return source_; }
    const SignaturePtr& target() const noexcept { return target_; }

    /// Pullbacks of the target coordinates in declaration order (even, then odd).
    const std::vector<SuperRational>& images() const noexcept { return images_; }

    const SuperRational& image(std::string_view target_var) const {
        auto ref = target_->find(target_var);
        if (!ref) throw MathError("unknown target coordinate '" + std::string(target_var) + "'");
        return images_[index_of(*ref)];
    }

    bool is_graded() const noexcept { return target_->is_graded(); }

    /// Pullback of an arbitrary superfunction on the target.
    SuperRational pullback(const SuperRational& f) const {
        require_same_signature(target_, f.signature());
        return substitute(f, images_, source_);
    }

    friend Morphism make_morphism(SignaturePtr source, SignaturePtr target, std::vector<SuperRational> images);

private:
    Morphism(SignaturePtr source, SignaturePtr target, std::vector<SuperRational> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

    std::size_t index_of(VariableRef ref) const {
        return ref.parity == Parity::Even ? ref.index : target_->even_count() + ref.index;
    }

    SignaturePtr source_;
    SignaturePtr target_;
    std::vector<SuperRational> images_;
};

/// Validates and builds a morphism source -> target. Images are ordered like target->refs().
/// Graded targets get weight and parity checks, super targets parity checks only.
inline Morphism make_morphism(SignaturePtr source, SignaturePtr target, std::vector<SuperRational> images) {
    const auto refs = target->refs();
    if (images.size() < refs.size())
        throw ValidationError(ValidationError::Kind::MissingImage, target->variable(refs[images.size()]).name, "", "");
    if (images.size() > refs.size()) throw MathError("more images than target coordinates");
    for (std::size_t k = 0; k < refs.size(); ++k) {
        const Variable& var = target->variable(refs[k]);
        SuperRational& img = images[k];
        if (!same_signature(img.signature(), source))
            throw ValidationError(ValidationError::Kind::SignatureMismatch, var.name, source->describe(),
                                  img.signature()->describe());
        if (img.is_zero()) continue;
        auto p = img.parity();
        if (p != var.parity)
            throw ValidationError(ValidationError::Kind::ParityMismatch, var.name, to_string(var.parity),
                                  p ? to_string(*p) : "mixed");
        if (target->is_graded()) {
            if (!(source->group() == target->group()) || !(source->parity_map() == target->parity_map()))
                throw ValidationError(ValidationError::Kind::SignatureMismatch, var.name,
                                      "source graded by " + target->group().to_string(),
                                      "source graded by " + source->group().to_string());
            auto w = weight_of(img);
            if (!w || *w != var.weight)
                throw ValidationError(ValidationError::Kind::WeightMismatch, var.name, var.weight.to_string(),
                                      w ? w->to_string() : "inhomogeneous");
        }
    }
    return Morphism(std::move(source), std::move(target), std::move(images));
}

namespace detail {

inline std::vector<SuperRational> images_by_name(const Signature& target,
                                                 const std::map<std::string, SuperRational>& images) {
    std::vector<SuperRational> ordered;
    for (const auto& ref : target.refs()) {
        const auto& name = target.variable(ref).name;
        auto it = images.find(name);
        if (it == images.end()) throw ValidationError(ValidationError::Kind::MissingImage, name, "", "");
        ordered.push_back(it->second);
    }
    for (const auto& [name, img] : images)
        if (!target.find(name)) throw MathError("'" + name + "' is not a coordinate of the target");
    return ordered;
}

}  // namespace detail

inline Morphism make_graded_morphism(SignaturePtr source, SignaturePtr target,
                                     const std::map<std::string, SuperRational>& images) {
    if (!target->is_graded() || !source->is_graded())
        throw MathError("graded morphisms need graded source and target signatures");
    auto ordered = detail::images_by_name(*target, images);
    return make_morphism(std::move(source), std::move(target), std::move(ordered));
}

inline Morphism make_super_morphism(SignaturePtr source, SignaturePtr target,
                                    const std::map<std::string, SuperRational>& images) {
    if (target->is_graded()) throw MathError("super morphisms need a superdomain target");
    auto ordered = detail::images_by_name(*target, images);
    return make_morphism(std::move(source), std::move(target), std::move(ordered));
}

inline Morphism identity_morphism(const SignaturePtr& sig) {
    std::vector<SuperRational> images;
    for (const auto& ref : sig->refs()) images.push_back(SuperRational(SuperPolynomial::variable(sig, ref)));
    return make_morphism(sig, sig, std::move(images));
}

/// second o first: A -> B -> C, pulled back by substitution.
inline Morphism compose(const Morphism& second, const Morphism& first) {
    if (!same_signature(first.target(), second.source()))
        throw ValidationError(ValidationError::Kind::SignatureMismatch, "", second.source()->describe(),
                              first.target()->describe());
    std::vector<SuperRational> images;
    images.reserve(second.images().size());
    for (const auto& img : second.images()) images.push_back(substitute(img, first.images(), first.source()));
    return make_morphism(first.source(), second.target(), std::move(images));
}

/// Coordinatewise cross-multiplication equality.
inline bool morphism_eq(const Morphism& a, const Morphism& b) {
    if (!same_signature(a.source(), b.source()) || !same_signature(a.target(), b.target())) return false;
    for (std::size_t k = 0; k < a.images().size(); ++k)
        if (!(a.images()[k] == b.images()[k])) return false;
    return true;
}

inline bool is_identity(const Morphism& m) {
    if (!same_signature(m.source(), m.target())) return false;
    const auto refs = m.source()->refs();
    for (std::size_t k = 0; k < refs.size(); ++k)
        if (!(m.images()[k] == SuperRational(SuperPolynomial::variable(m.source(), refs[k])))) return false;
    return true;
}

}  // namespace hgraded
