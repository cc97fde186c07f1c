#include <gtest/gtest.h>

#include "support.hpp"

using namespace hgraded;
using namespace hgraded::testing;

namespace {

std::vector<std::string> names(const std::vector<Variable>& vars) {
    std::vector<std::string> out;
    for (const auto& v : vars) out.push_back(v.name);
    return out;
}

Morphism projective_line_chart_map() {
    auto u = Signature::super({"x"}, {}), v = Signature::super({"y"}, {});
    return make_super_morphism(u, v, {{"y", parse_expression("1/x", u)}});
}

Morphism projective_superline_chart_map() {
    auto u = Signature::super({"x"}, {"xi"}), v = Signature::super({"y"}, {"eta"});
    return make_super_morphism(u, v, {{"y", parse_expression("1/x", u)}, {"eta", parse_expression("xi/x", u)}});
}

Atlas two_chart_atlas(bool broken) {
    auto u = Signature::super({"x"}, {}), v = Signature::super({"y"}, {});
    Atlas atlas;
    atlas.add_chart("1", u);
    atlas.add_chart("2", v);
    atlas.add_transition("1", "2", make_super_morphism(u, v, {{"y", parse_expression("1/x", u)}}));
    atlas.add_transition("2", "1", make_super_morphism(v, u, {{"x", parse_expression(broken ? "1/y + 1" : "1/y", v)}}));
    return atlas;
}

}  // namespace

TEST(CoveringSignature, ProjectiveLineOverZ2) {
    auto z2 = FiniteAbelianGroup::parse("2");
    auto cover = covering_signature(*Signature::super({"x"}, {}), z2, ParityMap::trivial(z2));
    EXPECT_EQ(names(cover->even()), (std::vector<std::string>{"x@(0)", "x@(1)"}));
    EXPECT_TRUE(cover->odd().empty());
}

TEST(CoveringSignature, ProjectiveSuperlineOverZ4) {
    auto z4 = FiniteAbelianGroup::parse("4");
    auto cover = covering_signature(*Signature::super({"x"}, {"xi"}), z4, ParityMap::parse(z4, "1"));
    EXPECT_EQ(names(cover->even()), (std::vector<std::string>{"x@(0)", "x@(2)"}));
    EXPECT_EQ(names(cover->odd()), (std::vector<std::string>{"xi@(1)", "xi@(3)"}));
}

TEST(CoveringSignature, EmptyDomainAndMissingOddWeights) {
    auto z3 = FiniteAbelianGroup::parse("3");
    EXPECT_EQ(covering_signature(*Signature::super({}, {}), z3, ParityMap::trivial(z3))->size(), 0u);
    EXPECT_THROW(covering_signature(*Signature::super({"x"}, {"xi"}), z3, ParityMap::trivial(z3)), MathError);
}

TEST(CoveringSignature, CountsCopiesPerParity) {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_group(rng, 16);
        auto pm = random_parity(rng, g);
        const auto n_even = characters_of_parity(g, pm, Parity::Even).size();
        const auto n_odd = characters_of_parity(g, pm, Parity::Odd).size();
        auto sig = superdomain("x", "xi", 2, n_odd ? 1 : 0);
        auto cover = covering_signature(*sig, g, pm);
        EXPECT_EQ(cover->even_count(), 2 * n_even);
        EXPECT_EQ(cover->odd_count(), sig->odd_count() * n_odd);
    }
}

TEST(CoveringMap, SumsTheCopies) {
    auto z4 = FiniteAbelianGroup::parse("4");
    auto sig = Signature::super({"x"}, {"xi"});
    auto p = covering_map(sig, z4, ParityMap::parse(z4, "1"));
    EXPECT_EQ(p.image("x"), parse_expression("x@0 + x@2", p.source()));
    EXPECT_EQ(p.image("xi"), parse_expression("xi@1 + xi@3", p.source()));
}

TEST(CoveringMap, TrivialGroupRenamesCoordinates) {
    FiniteAbelianGroup trivial;
    auto sig = Signature::super({"x"}, {});
    auto p = covering_map(sig, trivial, ParityMap::trivial(trivial));
    EXPECT_EQ(names(p.source()->even()), (std::vector<std::string>{"x@()"}));
    EXPECT_EQ(p.image("x"), parse_expression("x@()", p.source()));
}

TEST(LiftSuper, ProjectiveLineGolden) {
    auto z2 = FiniteAbelianGroup::parse("2");
    auto lift = lift_super(projective_line_chart_map(), z2, ParityMap::trivial(z2));
    const auto& src = lift.source();
    EXPECT_EQ(lift.image("y@(0)"), parse_expression("x@0/(x@0^2 - x@1^2)", src));
    EXPECT_EQ(lift.image("y@(1)"), parse_expression("-x@1/(x@0^2 - x@1^2)", src));
}

TEST(LiftSuper, ProjectiveSuperlineGolden) {
    auto z4 = FiniteAbelianGroup::parse("4");
    auto lift = lift_super(projective_superline_chart_map(), z4, ParityMap::parse(z4, "1"));
    const auto& src = lift.source();
    EXPECT_EQ(lift.image("y@(0)"), parse_expression("x@0/(x@0^2 - x@2^2)", src));
    EXPECT_EQ(lift.image("y@(2)"), parse_expression("-x@2/(x@0^2 - x@2^2)", src));
    EXPECT_EQ(lift.image("eta@(1)"), parse_expression("(x@0*xi@1 - x@2*xi@3)/(x@0^2 - x@2^2)", src));
    EXPECT_EQ(lift.image("eta@(3)"), parse_expression("(x@0*xi@3 - x@2*xi@1)/(x@0^2 - x@2^2)", src));
}

TEST(LiftSuper, CommutesWithTheProjections) {
    auto z4 = FiniteAbelianGroup::parse("4");
    auto pm = ParityMap::parse(z4, "1");
    auto psi = projective_superline_chart_map();
    auto lift = lift_super(psi, z4, pm);
    auto p = covering_map(psi.source(), z4, pm);
    EXPECT_TRUE(lift_commutes(lift, compose(psi, p)));
}

TEST(LiftSuper, IdentityLiftsToIdentity) {
    Rng rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_group(rng, 12);
        auto pm = random_parity(rng, g);
        bool has_odd = !characters_of_parity(g, pm, Parity::Odd).empty();
        auto sig = superdomain("x", "xi", 2, has_odd ? 2 : 0);
        EXPECT_TRUE(is_identity(lift_super(identity_morphism(sig), g, pm)));
    }
}

TEST(LiftMixed, ProjectionLiftsToIdentity) {
    auto z4 = FiniteAbelianGroup::parse("4");
    auto p = covering_map(Signature::super({"x"}, {"xi"}), z4, ParityMap::parse(z4, "1"));
    EXPECT_TRUE(is_identity(lift_mixed(p)));
}

TEST(LiftMixed, HomogeneousImageLandsInOneCopy) {
    auto z3 = FiniteAbelianGroup::parse("3");
    auto pm = ParityMap::trivial(z3);
    auto w = Signature::graded_from_names(z3, pm, {"a@1", "b@2"}, {});
    auto target = Signature::super({"y"}, {});
    auto phi = make_super_morphism(w, target, {{"y", parse_expression("a@1^2/b@2^2", w)}});
    auto lift = lift_mixed(phi);
    EXPECT_EQ(lift.image("y@(1)"), phi.image("y"));
    EXPECT_TRUE(lift.image("y@(0)").is_zero());
    EXPECT_TRUE(lift.image("y@(2)").is_zero());
}

TEST(LiftMixed, RandomLiftsCommute) {
    Rng rng(63);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_group(rng, 8);
        auto pm = random_parity(rng, g);
        auto w = random_graded_signature(rng, g, pm, 2, 2);
        bool has_odd = w->odd_count() > 0;
        auto target = superdomain("y", "eta", 2, has_odd ? 1 : 0);
        std::vector<SuperRational> images;
        for (const auto& ref : target->refs()) {
            SuperPolynomial p(w);
            for (int k = 0; k < 6 && p.is_zero(); ++k) {
                auto candidate = random_polynomial(rng, w, 2, 3);
                p = candidate.filtered([&](const Monomial& m) { return m.parity() == ref.parity; });
            }
            images.emplace_back(SuperRational(p, random_denominator(rng, w, 1, 2)));
        }
        auto phi = make_morphism(w, target, images);
        EXPECT_TRUE(lift_commutes(lift_mixed(phi), phi));
    }
}

TEST(LiftSuper, IsFunctorial) {
    Rng rng(64);
    auto z4 = FiniteAbelianGroup::parse("4");
    auto pm = ParityMap::parse(z4, "1");
    auto a = superdomain("a", "s", 2, 1), b = superdomain("b", "t", 1, 1), c = superdomain("c", "u", 2, 1);
    for (int trial = 0; trial < 8; ++trial) {
        auto f = random_polynomial_morphism(rng, a, b), g = random_polynomial_morphism(rng, b, c);
        EXPECT_TRUE(morphism_eq(lift_super(compose(g, f), z4, pm),
                                compose(lift_super(g, z4, pm), lift_super(f, z4, pm))));
    }
}

TEST(LiftSuper, InverseMapsLiftToInverseLifts) {
    auto z4 = FiniteAbelianGroup::parse("4");
    auto pm = ParityMap::parse(z4, "1");
    auto psi = projective_superline_chart_map();
    auto u = psi.source(), v = psi.target();
    auto psi_inv = make_super_morphism(v, u, {{"x", parse_expression("1/y", v)}, {"xi", parse_expression("eta/y", v)}});
    EXPECT_TRUE(is_identity(compose(lift_super(psi_inv, z4, pm), lift_super(psi, z4, pm))));
}

TEST(Cocycle, StandardProjectiveLinePasses) {
    auto report = check_cocycle(two_chart_atlas(false));
    EXPECT_TRUE(report.passed);
    EXPECT_TRUE(report.formal_identity);
    EXPECT_EQ(report.pairs_checked, 2u);
}

TEST(Cocycle, BrokenAtlasNamesThePairAndResidual) {
    auto report = check_cocycle(two_chart_atlas(true));
    ASSERT_FALSE(report.passed);
    ASSERT_EQ(report.failures.size(), 2u);
    const auto& first = report.failures.front();
    EXPECT_EQ(first.kind, CocycleFailure::Kind::Pair);
    EXPECT_EQ(first.charts, (std::vector<std::string>{"1", "2"}));
    ASSERT_EQ(first.residuals.size(), 1u);
    EXPECT_EQ(first.residuals[0].first, "x");
    EXPECT_EQ(first.residuals[0].second, "x + 1");
    const auto& second = report.failures.back();
    EXPECT_EQ(second.charts, (std::vector<std::string>{"2", "1"}));
    EXPECT_EQ(second.residuals[0].second, "y/(y + 1)");
}

TEST(Cocycle, MissingReverseTransitionIsReported) {
    auto atlas = two_chart_atlas(false);
    atlas.transitions.erase({"2", "1"});
    auto report = check_cocycle(atlas);
    ASSERT_FALSE(report.passed);
    EXPECT_EQ(report.failures.front().kind, CocycleFailure::Kind::MissingInverse);
}

TEST(Cocycle, IdentityAtlasPasses) {
    auto u = superdomain("x", "xi", 2, 1);
    Atlas atlas;
    for (const char* id : {"a", "b", "c"}) atlas.add_chart(id, u);
    for (const char* from : {"a", "b", "c"})
        for (const char* to : {"a", "b", "c"})
            if (std::string(from) != to) atlas.add_transition(from, to, identity_morphism(u));
    auto report = check_cocycle(atlas);
    EXPECT_TRUE(report.passed);
    EXPECT_EQ(report.pairs_checked, 6u);
    EXPECT_EQ(report.triples_checked, 2u);
}

TEST(Cocycle, RandomThreeChartAtlasPassesAndPerturbationFailsATriple) {
    Rng rng(65);
    for (int trial = 0; trial < 5; ++trial) {
        auto atlas = random_three_chart_atlas(rng, 2, 1);
        ASSERT_TRUE(check_cocycle(atlas).passed);
        auto [ac, ca] = random_shear(rng, atlas.charts.at("A"), atlas.charts.at("C"));
        auto tampered = atlas;
        tampered.add_transition("A", "C", compose(atlas.transitions.at({"A", "C"}), compose(ca, ac)));
        ASSERT_TRUE(check_cocycle(tampered).passed);  // still the same map: ca o ac = id
        auto shear = random_shear(rng, atlas.charts.at("C"), atlas.charts.at("C")).first;
        if (is_identity(shear)) continue;
        tampered.add_transition("A", "C", compose(shear, atlas.transitions.at({"A", "C"})));
        auto report = check_cocycle(tampered);
        EXPECT_FALSE(report.passed);
        bool has_triple = false;
        for (const auto& f : report.failures) has_triple |= f.kind == CocycleFailure::Kind::Triple;
        EXPECT_TRUE(has_triple);
    }
}

TEST(LiftAtlas, ProjectiveLine) {
    auto z2 = FiniteAbelianGroup::parse("2");
    auto lifted = lift_atlas(two_chart_atlas(false), z2, ParityMap::trivial(z2));
    EXPECT_TRUE(check_cocycle(lifted).passed);
    const auto& t = lifted.transitions.at({"1", "2"});
    EXPECT_EQ(t.image("y@(1)"), parse_expression("-x@1/(x@0^2 - x@1^2)", t.source()));
}

TEST(LiftAtlas, SingleChart) {
    auto z2 = FiniteAbelianGroup::parse("2");
    Atlas atlas;
    atlas.add_chart("only", Signature::super({"x"}, {"xi"}));
    auto lifted = lift_atlas(atlas, z2, ParityMap::parse(z2, "1"));
    EXPECT_EQ(lifted.charts.size(), 1u);
    EXPECT_TRUE(lifted.transitions.empty());
    EXPECT_EQ(lifted.charts.at("only")->even_count(), 1u);
    EXPECT_EQ(lifted.charts.at("only")->odd_count(), 1u);
}

TEST(LiftAtlas, RejectsBrokenInputAndPreservesCocycles) {
    auto z2 = FiniteAbelianGroup::parse("2");
    EXPECT_THROW(lift_atlas(two_chart_atlas(true), z2, ParityMap::trivial(z2)), MathError);
    Rng rng(66);
    auto z4 = FiniteAbelianGroup::parse("4");
    for (int trial = 0; trial < 3; ++trial) {
        auto lifted = lift_atlas(random_three_chart_atlas(rng, 2, 1), z4, ParityMap::parse(z4, "1"));
        auto report = check_cocycle(lifted);
        EXPECT_TRUE(report.passed);
        EXPECT_EQ(report.triples_checked, 2u);
    }
}
