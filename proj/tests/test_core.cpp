#include <gtest/gtest.h>

#include "cspace/cspace.hpp"
#include "oracles.hpp"

using namespace cspace;

namespace {

const Space kFruit(3, {{"color", {0}}, {"shape", {1}}, {"taste", {2}}});
const DomainSet kAll{"color", "shape", "taste"};

Cuboid box(std::vector<double> lo, std::vector<double> hi) { return Cuboid(lo, hi, kAll, kFruit); }

Core apple() {
  return make_core({box({0.5, 0.65, 0.35}, {0.8, 0.8, 0.5}), box({0.65, 0.65, 0.4}, {0.85, 0.8, 0.55}),
                    box({0.7, 0.65, 0.45}, {1.0, 0.8, 0.6})},
                   kAll);
}

Core pear() { return make_core({box({0.5, 0.4, 0.35}, {0.7, 0.6, 0.45})}, kAll); }

}  // namespace

TEST(Core, MakeCore) {
  EXPECT_THROW(make_core({}, kAll), ParameterError);
  EXPECT_THROW(make_core({box({0, 0, 0}, {1, 1, 1}), box({2, 2, 2}, {3, 3, 3})}, kAll), EmptyIntersectionError);
  const Cuboid red({0.9, -kInf, -kInf}, {1.0, kInf, kInf}, {"color"}, kFruit);
  EXPECT_THROW(make_core({red}, kAll), DomainMismatchError);
  EXPECT_THROW(make_core({box({0, 0, 0}, {1, 1, 1}), red}, {"color"}), DomainMismatchError);
  EXPECT_NO_THROW(make_core({red}, {"color"}));
}

TEST(Core, CentralRegionAndMidpoint) {
  const Cuboid p = central_region(apple());
  EXPECT_EQ(p.p_min(), (std::vector<double>{0.7, 0.65, 0.45}));
  EXPECT_EQ(p.p_max(), (std::vector<double>{0.8, 0.8, 0.5}));
  EXPECT_EQ(central_region(pear()), pear().cuboids().front());
  const Core nested = make_core({box({0, 0, 0}, {1, 1, 1}), box({0.2, 0.2, 0.2}, {0.4, 0.4, 0.4})}, kAll);
  EXPECT_EQ(central_region(nested), nested.cuboids()[1]);

  const Point pm = midpoint(pear());
  EXPECT_DOUBLE_EQ(pm[0], 0.6);
  EXPECT_DOUBLE_EQ(pm[1], 0.5);
  EXPECT_DOUBLE_EQ(pm[2], 0.4);
  const Point am = midpoint(apple());
  EXPECT_DOUBLE_EQ(am[0], 0.75);
  EXPECT_DOUBLE_EQ(am[1], 0.725);
  EXPECT_DOUBLE_EQ(am[2], 0.475);
  const Core red = make_core({Cuboid({0.9, -kInf, -kInf}, {1.0, kInf, kInf}, {"color"}, kFruit)}, {"color"});
  EXPECT_EQ(midpoint(red), (Point{0.95, 0, 0}));
}

TEST(Core, UnionWithRepair) {
  const Core self = union_with_repair(pear(), pear());
  EXPECT_EQ(self.cuboids().size(), 2u);
  EXPECT_EQ(self.cuboids()[0], self.cuboids()[1]);

  const Core a = make_core({box({0, 0, 0}, {1, 1, 1})}, kAll);
  const Core b = make_core({box({2, 2, 2}, {3, 3, 3})}, kAll);
  const Core u = union_with_repair(a, b);
  EXPECT_EQ(u.cuboids()[0], box({0, 0, 0}, {1.5, 1.5, 1.5}));
  EXPECT_EQ(u.cuboids()[1], box({1.5, 1.5, 1.5}, {3, 3, 3}));

  const Core c = make_core({box({0.5, 0.5, 0.5}, {2, 2, 2})}, kAll);
  const Core no_repair = union_with_repair(a, c);
  EXPECT_EQ(no_repair.cuboids()[0], a.cuboids()[0]);
  EXPECT_EQ(no_repair.cuboids()[1], c.cuboids()[0]);

  const Core red = make_core({Cuboid({0.9, -kInf, -kInf}, {1.0, kInf, kInf}, {"color"}, kFruit)}, {"color"});
  EXPECT_THROW(union_with_repair(a, red), DomainMismatchError);
}

TEST(Core, RepairOnRandomPairs) {
  oracle::Generator gen(31);
  for (int i = 0; i < 300; ++i) {
    const Space s = gen.space(1 + gen.index(4));
    const Core a = make_core({gen.cuboid(s, s.domain_ids(), gen.point(s.n_dims()).coords())}, s.domain_ids());
    const Core b = make_core({gen.cuboid(s, s.domain_ids(), gen.point(s.n_dims()).coords())}, s.domain_ids());
    const Core u = union_with_repair(a, b);
    EXPECT_NO_THROW(central_region(u));
    EXPECT_TRUE(contains(u.cuboids()[0], a.cuboids()[0]));
    EXPECT_TRUE(contains(u.cuboids()[1], b.cuboids()[0]));
  }
}

TEST(Core, Cut) {
  const auto [plus, minus] = cut_core(pear(), 2, 0.40);
  ASSERT_TRUE(plus && minus);
  EXPECT_EQ(plus->cuboids().front(), box({0.5, 0.4, 0.40}, {0.7, 0.6, 0.45}));
  EXPECT_EQ(minus->cuboids().front(), box({0.5, 0.4, 0.35}, {0.7, 0.6, 0.40}));

  const auto [all, none] = cut_core(pear(), 0, 0.1);
  EXPECT_EQ(*all, pear());
  EXPECT_FALSE(none.has_value());

  const auto [face_plus, face_minus] = cut_core(pear(), 1, 0.6);
  ASSERT_TRUE(face_plus && face_minus);
  EXPECT_EQ(face_plus->cuboids().front().p_min()[1], 0.6);
  EXPECT_EQ(face_plus->cuboids().front().p_max()[1], 0.6);
  EXPECT_EQ(face_minus->cuboids().front(), pear().cuboids().front());

  const Core red = make_core({Cuboid({0.9, -kInf, -kInf}, {1.0, kInf, kInf}, {"color"}, kFruit)}, {"color"});
  EXPECT_THROW(cut_core(red, 1, 0.5), ParameterError);
  EXPECT_THROW(cut_core(pear(), 0, NAN), ParameterError);
}

TEST(Core, CutReconstructsMembershipOfPoints) {
  oracle::Generator gen(41);
  const Core a = apple();
  for (int i = 0; i < 1000; ++i) {
    const DimIndex dim = gen.index(3);
    const double v = gen.uniform(0.3, 1.1);
    const auto [plus, minus] = cut_core(a, dim, v);
    const Point x = gen.point(3, 0.3, 1.1);
    const bool in_sides = (plus && contains(*plus, x)) || (minus && contains(*minus, x));
    EXPECT_EQ(in_sides, contains(a, x));
  }
}

TEST(Core, Project) {
  EXPECT_EQ(project_core(apple(), kAll, kFruit), apple());
  const Core shape = project_core(apple(), {"shape"}, kFruit);
  ASSERT_EQ(shape.cuboids().size(), 3u);
  for (const auto& c : shape.cuboids()) {
    EXPECT_EQ(c.p_min()[1], 0.65);
    EXPECT_EQ(c.p_max()[1], 0.8);
    EXPECT_EQ(c.p_min()[0], -kInf);
  }
  EXPECT_THROW(project_core(apple(), {"smell"}, kFruit), ParameterError);
}

TEST(Core, StarShapedAroundCentralRegion) {
  oracle::Generator gen(51);
  const Core a = apple();
  const Cuboid p = central_region(a);
  for (int i = 0; i < 200; ++i) {
    const Cuboid& c = a.cuboids()[gen.index(a.cuboids().size())];
    const Point x = clamp(c, gen.point(3, 0.3, 1.1));
    const Point y = clamp(p, gen.point(3, 0.3, 1.1));
    for (int k = 1; k <= 10; ++k) {
      const double s = k / 11.0;
      Point z = x;
      for (DimIndex d = 0; d < 3; ++d) z[d] = x[d] + s * (y[d] - x[d]);
      EXPECT_TRUE(contains(a, z));
    }
  }
}
