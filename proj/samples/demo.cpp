// Lifts the standard atlas of the projective superline to its Z4-covering.
#include <iostream>

#include "hgraded/hgraded.hpp"

int main() {
    using namespace hgraded;

    auto u1 = Signature::super({"x"}, {"xi"});
    auto u2 = Signature::super({"y"}, {"eta"});
    Atlas atlas;
    atlas.add_chart("U1", u1);
    atlas.add_chart("U2", u2);
    atlas.add_transition("U1", "U2",
                         make_super_morphism(u1, u2, {{"y", parse_expression("1/x", u1)},
                                                      {"eta", parse_expression("xi/x", u1)}}));
    atlas.add_transition("U2", "U1",
                         make_super_morphism(u2, u1, {{"x", parse_expression("1/y", u2)},
                                                      {"xi", parse_expression("eta/y", u2)}}));

    const auto z4 = FiniteAbelianGroup::parse("4");
    Atlas covering = lift_atlas(atlas, z4, ParityMap::parse(z4, "1"));

    const Morphism& psi = covering.transitions.at({"U1", "U2"});
    const auto refs = psi.target()->refs();
    for (std::size_t k = 0; k < refs.size(); ++k)
        std::cout << psi.target()->variable(refs[k]).name << " = " << format_expression(psi.images()[k]) << '\n';

    CocycleReport report = check_cocycle(covering);
    std::cout << "cocycle " << (report.passed ? "holds" : "fails") << '\n';

    SuperRational f = parse_expression("x@(0)^2 + x@(0)*x@(2) + xi@(1)*xi@(3)", covering.charts.at("U1"));
    for (const auto& [chi, part] : decompose(f)) std::cout << chi.to_string() << ": " << format_expression(part) << '\n';
}
