#include <gtest/gtest.h>

#include <fstream>

#include "curvelab/raag.hpp"
#include "properties.hpp"

using namespace curvelab;

namespace {

Graph resolve(const nlohmann::json& j) {
    if (j.is_string()) return *catalog_graph(j.get<std::string>());
    return graph_from_json(j);
}

nlohmann::json load(const std::string& name) {
    std::ifstream f(std::string(CURVELAB_DATA_DIR) + "/" + name);
    return nlohmann::json::parse(f);
}

} // namespace

TEST(Raag, ParseAndFormat) {
    const Raag a(gamma0());
    EXPECT_EQ(a.format(a.parse("a b^-1 q")), "a b^-1 q");
    EXPECT_EQ(a.format(a.parse("1")), "1");
    EXPECT_THROW(a.parse("z"), InvalidInput);
}

TEST(Raag, NormalFormExamples) {
    const Raag a(gamma0());
    // a and c do not commute, a and q do
    EXPECT_EQ(a.format(a.normal_form(a.parse("q a q^-1"))), "a");
    EXPECT_EQ(a.format(a.normal_form(a.parse("c a"))), "c a");
    EXPECT_EQ(a.format(a.normal_form(a.parse("b a"))), "a b");
    EXPECT_TRUE(a.is_identity(a.parse("a b a^-1 b^-1")));
    EXPECT_FALSE(a.is_identity(a.parse("a c a^-1 c^-1")));
}

TEST(Raag, NormalFormAgreesWithRewriting) {
    const auto r = props::normal_form_oracle(500, 21);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Ball, Gamma0RadiusOne) {
    EXPECT_EQ(enumerate_ball(Raag(gamma0()), 1).elements.size(), 15u);
}

TEST(Ball, SmallClosedForms) {
    EXPECT_EQ(enumerate_ball(Raag(complete_graph(2)), 2).elements.size(), 13u);
    EXPECT_EQ(enumerate_ball(Raag(complement(complete_graph(2))), 2).elements.size(), 17u);
    EXPECT_EQ(props::free_abelian_ball(2, 2), 13u);
    EXPECT_EQ(props::free_group_ball(2, 2), 17u);
}

TEST(Ball, Gamma0MatchesGrowthSeries) {
    const Ball b = enumerate_ball(Raag(gamma0()), 4);
    const auto expect = props::growth_series_spheres(gamma0(), 4);
    ASSERT_EQ(b.sphere_sizes.size(), 5u);
    for (std::size_t t = 0; t <= 4; ++t) EXPECT_EQ(static_cast<long long>(b.sphere_sizes[t]), expect[t]) << t;
}

TEST(Ball, CapIsEnforced) {
    EXPECT_THROW(enumerate_ball(Raag(complement(complete_graph(3))), 6, 100), ResourceCapExceeded);
}

TEST(Hom, PhiChecksForBothVariants) {
    for (bool ef : {false, true}) {
        Hom h = phi_hom(ef);
        EXPECT_FALSE(h.verified());
        EXPECT_TRUE(check_hom(h));
        EXPECT_EQ(h.source().graph().edge_count(), 14u);
    }
}

TEST(Hom, UnverifiedUseThrows) {
    Hom h = phi_hom(false);
    EXPECT_THROW(apply_hom(h, h.source().parse("a")), UnverifiedHom);
    EXPECT_THROW(kernel_ball_check(h, 1), UnverifiedHom);
}

TEST(Hom, BadHomIsRejected) {
    // q commutes with a in the source but its image c does not
    Hom h = Hom::from_labels(gamma0(), gamma0(),
                             {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}, {"g", "g"}, {"h", "h"}, {"q", "c"}});
    EXPECT_FALSE(check_hom(h));
    EXPECT_FALSE(h.verified());
}

TEST(Hom, FromLabelsValidates) {
    EXPECT_THROW(Hom::from_labels(gamma0(), gamma1(false), {{"a", "a"}}), InvalidInput);
    EXPECT_THROW(Hom::from_labels(cycle4(), cycle4(), {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "zz"}}), InvalidInput);
}

TEST(Hom, DataFilesLoad) {
    Hom h = hom_from_json(load("phi.json"), resolve);
    EXPECT_TRUE(check_hom(h));
    EXPECT_EQ(h.target().format(h.image(h.source().graph().index("q"))), "e f");
    Hom h2 = hom_from_json(load("phi_ef.json"), resolve);
    EXPECT_TRUE(check_hom(h2));
    EXPECT_TRUE(h2.target().graph().adjacent("e", "f"));
}

TEST(Hom, KernelBallOfPhi) {
    Hom h = phi_hom(false);
    ASSERT_TRUE(check_hom(h));
    EXPECT_TRUE(kernel_ball_check(h, 3).empty());
}

TEST(Hom, KillingAGeneratorHasKernel) {
    Hom h = kill_generators(gamma0(), {"q"});
    ASSERT_TRUE(check_hom(h));
    const auto v = kernel_ball_check(h, 1);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(h.source().format(v[0]), "q");
}
