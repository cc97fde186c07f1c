#include <gtest/gtest.h>

#include "support.hpp"

using namespace hgraded;
using namespace hgraded::testing;

namespace {

struct Z4Domains {
    FiniteAbelianGroup g = FiniteAbelianGroup::parse("4");
    ParityMap pm = ParityMap::parse(g, "1");
    SignaturePtr src = Signature::graded_from_names(g, pm, {"x@0", "x@2"}, {"xi@1", "xi@3"});
    SignaturePtr dst = Signature::graded_from_names(g, pm, {"y@2"}, {"eta@1"});
};

ValidationError::Kind failure_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no ValidationError";
    return ValidationError::Kind::MissingImage;
}

}  // namespace

TEST(Morphism, AcceptsWeightPreservingImages) {
    Z4Domains d;
    auto m = make_graded_morphism(d.src, d.dst,
                                  {{"y@(2)", parse_expression("x@2/x@0 + xi@1*xi@1", d.src)},
                                   {"eta@(1)", parse_expression("x@0*xi@1 + x@2*xi@3", d.src)}});
    EXPECT_TRUE(m.is_graded());
    EXPECT_EQ(m.image("eta@(1)"), parse_expression("x@0*xi@1 + x@2*xi@3", d.src));
}

TEST(Morphism, ReportsWeightParityAndMissingImageErrors) {
    Z4Domains d;
    EXPECT_EQ(failure_kind([&] {
                  make_graded_morphism(d.src, d.dst, {{"y@(2)", parse_expression("x@0", d.src)},
                                                      {"eta@(1)", parse_expression("xi@1", d.src)}});
              }),
              ValidationError::Kind::WeightMismatch);
    EXPECT_EQ(failure_kind([&] {
                  make_graded_morphism(d.src, d.dst, {{"y@(2)", parse_expression("xi@1*x@0", d.src)},
                                                      {"eta@(1)", parse_expression("xi@1", d.src)}});
              }),
              ValidationError::Kind::ParityMismatch);
    EXPECT_EQ(failure_kind([&] {
                  make_graded_morphism(d.src, d.dst, {{"y@(2)", parse_expression("x@2", d.src)}});
              }),
              ValidationError::Kind::MissingImage);
    EXPECT_EQ(failure_kind([&] {
                  make_graded_morphism(d.src, d.dst, {{"y@(2)", parse_expression("x@2 + x@0", d.src)},
                                                      {"eta@(1)", parse_expression("xi@1", d.src)}});
              }),
              ValidationError::Kind::WeightMismatch);
}

TEST(Morphism, SuperTargetsOnlyCheckParity) {
    auto u = superdomain("x", "xi", 1, 1), v = superdomain("y", "eta", 1, 1);
    EXPECT_NO_THROW(make_super_morphism(u, v, {{"y0", parse_expression("x0^2 + xi0*xi0", u)},
                                                {"eta0", parse_expression("x0*xi0", u)}}));
    EXPECT_THROW(make_super_morphism(u, v, {{"y0", parse_expression("xi0", u)}, {"eta0", parse_expression("xi0", u)}}),
                 ValidationError);
    EXPECT_THROW(make_super_morphism(u, v, {{"y0", parse_expression("x0", u)},
                                            {"eta0", parse_expression("xi0", u)},
                                            {"zz", parse_expression("x0", u)}}),
                 MathError);
}

TEST(Morphism, PullbackIsAnAlgebraHomomorphism) {
    Rng rng(51);
    auto u = superdomain("x", "xi", 2, 2), v = superdomain("y", "eta", 2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_polynomial_morphism(rng, u, v);
        auto f = random_rational(rng, v, 2), h = random_rational(rng, v, 2);
        try {
            EXPECT_EQ(m.pullback(f * h), m.pullback(f) * m.pullback(h));
            EXPECT_EQ(m.pullback(f + h), m.pullback(f) + m.pullback(h));
        } catch (const MathError&) {
            // a random denominator can pull back to zero; nothing to compare
        }
    }
}

TEST(Morphism, CompositionIsAssociativeWithIdentityUnits) {
    Rng rng(52);
    auto a = superdomain("a", "s", 2, 1), b = superdomain("b", "t", 1, 2), c = superdomain("c", "u", 2, 1),
         d = superdomain("d", "w", 1, 1);
    for (int trial = 0; trial < 15; ++trial) {
        auto f = random_polynomial_morphism(rng, a, b), g = random_polynomial_morphism(rng, b, c),
             h = random_polynomial_morphism(rng, c, d);
        EXPECT_TRUE(morphism_eq(compose(h, compose(g, f)), compose(compose(h, g), f)));
        EXPECT_TRUE(morphism_eq(compose(identity_morphism(b), f), f));
        EXPECT_TRUE(morphism_eq(compose(f, identity_morphism(a)), f));
    }
    EXPECT_TRUE(is_identity(identity_morphism(a)));
}

TEST(Morphism, ComposeRejectsMismatchedSignatures) {
    auto a = superdomain("a", "s", 1, 0), b = superdomain("b", "t", 1, 0);
    auto f = identity_morphism(a), g = identity_morphism(b);
    EXPECT_THROW(compose(g, f), ValidationError);
}

TEST(Morphism, GradedMorphismsCommuteWithTheAction) {
    Z4Domains d;
    auto m = make_graded_morphism(d.src, d.dst,
                                  {{"y@(2)", parse_expression("x@2/(x@0^2 + x@2^2)", d.src)},
                                   {"eta@(1)", parse_expression("x@0*xi@1 - x@2*xi@3", d.src)}});
    auto f = parse_expression("(y@2^3 + y@2*eta@1)/(1 + y@2^2)", d.dst);
    for (const auto& g : d.g.elements()) EXPECT_EQ(act(g, m.pullback(f)), m.pullback(act(g, f)));
}

TEST(Morphism, InverseShearsComposeToIdentity) {
    Rng rng(53);
    auto a = superdomain("x", "xi", 2, 2), b = superdomain("y", "eta", 2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        auto [f, f_inv] = random_shear(rng, a, b);
        EXPECT_TRUE(is_identity(compose(f_inv, f)));
        EXPECT_TRUE(is_identity(compose(f, f_inv)));
    }
}
