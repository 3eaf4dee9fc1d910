#include <gtest/gtest.h>

#include <sstream>

#include "curvelab/automorphism.hpp"
#include "curvelab/curve_sample.hpp"
#include "curvelab/grid_oracle.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/surface.hpp"
#include "properties.hpp"

using namespace curvelab;

namespace {

int i_of(const SurfaceModel& m, const char* a, const char* b) {
    return geometric_intersection(m, m.curve(a), m.curve(b));
}

std::vector<CurveClass> curves(const SurfaceModel& m, std::initializer_list<const char*> words) {
    std::vector<CurveClass> out;
    for (const char* w : words) out.push_back(canonical_class(m, m.parse(w)));
    return out;
}

} // namespace

TEST(Surface, Models) {
    const auto s05 = surface_model(0, 5);
    EXPECT_EQ(s05.rank(), 4u);
    EXPECT_EQ(s05.complexity(), 2);
    EXPECT_EQ(s05.boundary_cycles().size(), 5u);
    const auto s11 = surface_model(1, 1);
    EXPECT_EQ(s11.rank(), 2u);
    EXPECT_EQ(s11.complexity(), 1);
    EXPECT_EQ(s11.boundary_cycles().size(), 1u);
    EXPECT_THROW(surface_model(0, 2), InvalidInput);
}

TEST(Surface, Peripheral) {
    const auto m = surface_model(0, 5);
    EXPECT_TRUE(is_peripheral(m, m.curve("x2")));
    EXPECT_TRUE(is_peripheral(m, m.curve("x1 x2 x3 x4")));
    EXPECT_FALSE(is_peripheral(m, m.curve("x1 x2")));
}

TEST(Intersection, PinnedValues) {
    const auto m = surface_model(0, 5);
    EXPECT_EQ(i_of(m, "x1 x2", "x2 x3"), 2);
    EXPECT_EQ(i_of(m, "x1 x2", "x3 x4"), 0);
    EXPECT_EQ(i_of(m, "x1 x2", "x1 x2 x3"), 0);
    EXPECT_EQ(i_of(m, "x1 x2", "x1 x3"), 2);
    const auto t = surface_model(1, 1);
    EXPECT_EQ(i_of(t, "a1", "b1"), 1);
    EXPECT_EQ(i_of(t, "a1", "a1 b1"), 1);
    EXPECT_EQ(i_of(t, "a1 b1", "a1 b1^-1"), 2);
}

TEST(Intersection, Simplicity) {
    const auto m = surface_model(0, 5);
    EXPECT_TRUE(is_simple(m, m.curve("x1 x2")));
    EXPECT_FALSE(is_simple(m, m.curve("x1 x2 x1^-1 x2^-1")));
    EXPECT_FALSE(is_simple(m, m.curve("x1 x1 x2")));
    EXPECT_TRUE(is_simple(surface_model(1, 1), surface_model(1, 1).curve("a1 b1")));
}

TEST(Intersection, AgreesWithPlanarChordTest) {
    const auto r = props::simplicity_oracle(500, 31);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Automorphism, BraidGeneratorsValidate) {
    for (int n : {4, 5, 7}) {
        const auto m = surface_model(0, n);
        const auto gens = braid_generators(m);
        EXPECT_EQ(gens.size(), m.rank());
        for (const auto& g : gens) EXPECT_TRUE(validate_automorphism(m, g)) << g.name;
    }
}

TEST(Automorphism, SquareMapIsRejected) {
    const auto m = surface_model(0, 5);
    FreeAutomorphism a = identity_automorphism(m);
    a.images[0] = m.parse("x1 x1");
    EXPECT_FALSE(validate_automorphism(m, a));
}

TEST(Automorphism, NonPeripheralPreservingIsRejected) {
    const auto m = surface_model(0, 5);
    FreeAutomorphism a = identity_automorphism(m);
    // x1 -> x1 x2 is invertible in F_4 but sends a puncture loop to a curve
    a.images[0] = m.parse("x1 x2");
    a.inverse_images[0] = m.parse("x1 x2^-1");
    EXPECT_FALSE(validate_automorphism(m, a));
}

TEST(Automorphism, JsonRoundTrip) {
    const auto m = surface_model(0, 6);
    const auto gens = braid_generators(m);
    const auto back = automorphisms_from_json(m, to_json(m, gens));
    ASSERT_EQ(back.size(), gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        EXPECT_EQ(back[i].images, gens[i].images);
        EXPECT_EQ(back[i].inverse_images, gens[i].inverse_images);
    }
}

TEST(Sample, DepthZeroIsTheSeeds) {
    const auto m = surface_model(0, 5);
    auto seeds = curves(m, {"x1 x2", "x2 x3", "x3 x4"});
    const auto s = enumerate_curves(m, seeds, braid_generators(m), 0, 12);
    std::sort(seeds.begin(), seeds.end());
    EXPECT_EQ(s.classes(), seeds);
}

TEST(Sample, S04HasNoDisjointPairs) {
    const auto m = surface_model(0, 4);
    const auto s = enumerate_curves(m, curves(m, {"x1 x2"}), braid_generators(m), 3, 12);
    EXPECT_GE(s.size(), 10u);
    GridOracle oracle(m);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            EXPECT_GT(s.at(i, j), 0);
            if (s.classes()[i].length() <= 6 && s.classes()[j].length() <= 6) {
                const auto v = oracle.stabilized(s.classes()[i], s.classes()[j]);
                ASSERT_TRUE(v.value.has_value());
                EXPECT_EQ(*v.value, s.at(i, j));
            }
        }
}

TEST(Sample, S05IsTriangleFree) {
    const auto m = surface_model(0, 5);
    const auto s = enumerate_curves(m, curves(m, {"x1 x2", "x2 x3", "x3 x4"}), braid_generators(m), 3, 12);
    EXPECT_GT(s.size(), 3u);
    EXPECT_LE(clique_number(curve_graph(s)), 2u);
    const auto r = props::matrix_invariants(s, 300, 41);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Sample, ThreadCountDoesNotChangeTheSample) {
    const auto m = surface_model(0, 6);
    EnumerationOptions one, four;
    one.depth = four.depth = 3;
    four.threads = 4;
    const auto a = enumerate_curves_detail(m, round_curves(m), braid_generators(m), one).sample;
    const auto b = enumerate_curves_detail(m, round_curves(m), braid_generators(m), four).sample;
    EXPECT_EQ(a.classes(), b.classes());
    EXPECT_EQ(a.matrix().packed(), b.matrix().packed());
}

TEST(Sample, RejectsBadSeeds) {
    const auto m = surface_model(0, 5);
    EXPECT_THROW(enumerate_curves(m, curves(m, {"x1"}), braid_generators(m), 1, 12), InvalidInput);
}

TEST(Sample, StreamRoundTrip) {
    const auto m = surface_model(0, 5);
    const auto s = enumerate_curves(m, round_curves(m), braid_generators(m), 3, 10);
    std::stringstream io;
    write_sample(io, s);
    const auto back = read_sample(io);
    EXPECT_EQ(back.classes(), s.classes());
    EXPECT_EQ(back.matrix().packed(), s.matrix().packed());
}

TEST(Sample, MalformedFileRejected) {
    std::stringstream io(R"({"model":{"genus":0,"punctures":5},"classes":["x1 x2","x2 x3"],"intersections":[[],[7,1]]})");
    EXPECT_THROW(read_sample(io), InvalidInput);
}

TEST(Sample, SimpleClassListing) {
    const auto m = surface_model(0, 4);
    const auto cs = simple_classes_up_to(m, 4);
    EXPECT_FALSE(cs.empty());
    for (const auto& c : cs) {
        EXPECT_TRUE(is_simple(m, c));
        EXPECT_FALSE(is_peripheral(m, c));
    }
}

TEST(GridOracle, PinnedValues) {
    const auto m = surface_model(0, 5);
    GridOracle oracle(m);
    EXPECT_EQ(oracle.stabilized(m.curve("x1 x2"), m.curve("x2 x3")).value, 2);
    EXPECT_EQ(oracle.stabilized(m.curve("x1 x2"), m.curve("x3 x4")).value, 0);
    EXPECT_THROW(GridOracle(surface_model(1, 1)), InvalidInput);
}

TEST(GridOracle, AgreesOnShortS04Classes) {
    const auto m = surface_model(0, 4);
    const auto cs = simple_classes_up_to(m, 4);
    GridOracle oracle(m);
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const auto v = oracle.stabilized(cs[i], cs[j]);
            ASSERT_TRUE(v.value.has_value());
            EXPECT_EQ(*v.value, geometric_intersection(m, cs[i], cs[j]))
                << m.format(cs[i].word()) << " , " << m.format(cs[j].word());
        }
}

TEST(GridOracle, EmbeddedDrawingReadsBack) {
    const auto m = surface_model(0, 5);
    for (const auto& c : simple_classes_up_to(m, 6)) EXPECT_TRUE(grid_embeds(m, c, 30)) << m.format(c.word());
    EXPECT_FALSE(grid_embeds(m, m.curve("x1 x1 x2"), 30));
}

TEST(Properties, SmallSuitesOnS06) {
    const auto m = surface_model(0, 6);
    const auto s = enumerate_curves(m, round_curves(m), braid_generators(m), 3, 10);
    const auto gens = braid_generators(m);
    for (const auto& r : {props::intersection_symmetry(s, 300), props::automorphism_invariance(s, gens, 300)})
        EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
}
