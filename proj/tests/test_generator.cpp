#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "broncho/diameters.hpp"
#include "broncho/errors.hpp"
#include "broncho/generator.hpp"
#include "broncho/skeleton_io.hpp"
#include "support.hpp"

using namespace broncho;

namespace {

std::vector<Vec3> box_points(const Vec3& half, std::uint64_t seed, int n = 500) {
  Rng rng(seed);
  std::vector<Vec3> p;
  for (int i = 0; i < n; ++i)
    p.emplace_back(rng.uniform(-half.x(), half.x()), rng.uniform(-half.y(), half.y()), rng.uniform(-half.z(), half.z()));
  return p;
}

const GenerationResult& phantom_run() {
  static const GenerationResult r = generate(two_lung_seed_tree(), two_ellipsoid_phantom(), GeneratorConfig{});
  return r;
}

}  // namespace

TEST_CASE("center_of_mass") {
  const std::vector<Vec3> p{{0, 0, 0}, {2, 0, 0}, {1, 3, 0}};
  CHECK((center_of_mass(p) - Vec3(1, 1, 0)).norm() < 1e-12);
  CHECK_THROWS_AS(center_of_mass(std::vector<Vec3>{}), InputError);
}

TEST_CASE("pca_split_plane") {
  SUBCASE("principal axis across the distal direction") {
    const auto pts = box_points(Vec3(10, 2, 1), 1);
    const auto plane = pca_split_plane(pts, Vec3(0, 0, 1));
    CHECK(std::abs(plane.normal.x()) > 0.99);
    CHECK(plane.normal.x() > 0.0);
    CHECK((plane.point - center_of_mass(pts)).norm() < 1e-12);
  }
  SUBCASE("principal axis parallel to the distal direction") {
    const auto pts = box_points(Vec3(1, 4, 10), 2);
    const auto plane = pca_split_plane(pts, Vec3(0, 0, 1));
    CHECK(std::abs(plane.normal.y()) > 0.99);
    CHECK(plane.normal.x() > 0.0);  // first nonzero component is positive
  }
  SUBCASE("normal is perpendicular to the distal direction") {
    const auto pts = box_points(Vec3(5, 3, 2), 3);
    const Vec3 d = Vec3(1, 1, 1).normalized();
    CHECK(std::abs(pca_split_plane(pts, d).normal.dot(d)) < 1e-12);
  }
  SUBCASE("degenerate spread") {
    const std::vector<Vec3> same(10, Vec3(0.1, 0.2, 0.3));
    CHECK_THROWS_AS(pca_split_plane(same, Vec3(0, 0, 1)), DomainError);
  }
}

TEST_CASE("split_points partitions the set") {
  const auto pts = box_points(Vec3(3, 3, 3), 4);
  const SplitPlane plane{Vec3::Zero(), Vec3(1, 0, 0)};
  const auto [pos, neg] = split_points(pts, plane);
  CHECK(pos.size() + neg.size() == pts.size());
  for (const auto& p : pos) CHECK(p.x() >= 0.0);
  for (const auto& p : neg) CHECK(p.x() < 0.0);
}

TEST_CASE("grow_branch") {
  GeneratorConfig cfg;
  SUBCASE("within the angle limit") {
    const Vec3 end = grow_branch(Vec3(0, 0, 0), Vec3(0, 0, -1), Vec3(1, 0, -10), cfg);
    CHECK((end - Vec3(0.4, 0, -4)).norm() < 1e-12);
  }
  SUBCASE("clamped to the angle limit, length kept") {
    const Vec3 seed(1, 1, 1);
    const Vec3 end = grow_branch(seed, Vec3(0, 0, -1), seed + Vec3(10, 0, -1), cfg);
    const Vec3 v = end - seed;
    CHECK(v.norm() == doctest::Approx(0.4 * std::sqrt(101.0)));
    CHECK(branching_angle(Vec3(0, 0, -1), v) == doctest::Approx(60.0));
    CHECK(std::abs(v.y()) < 1e-12);
    CHECK(v.x() > 0.0);
  }
  SUBCASE("centroid at the seed") {
    CHECK_THROWS_AS(grow_branch(Vec3(1, 2, 3), Vec3(0, 0, 1), Vec3(1, 2, 3), cfg), InputError);
  }
}

TEST_CASE("config validation") {
  GeneratorConfig cfg;
  cfg.branch_fraction = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.n_points = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.angle_limit_deg = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("generate: phantom properties") {
  const auto& r = phantom_run();
  const auto& tree = r.tree;
  const auto volume = two_ellipsoid_phantom();
  const GeneratorConfig cfg;
  CHECK(tree.branch_count() > 1000);
  for (const auto& b : tree.branches()) {
    if (static_cast<std::size_t>(b.id) < r.seed_branch_count) continue;
    CHECK(volume.contains(tree.position(b.head)));
    if (!tree.is_terminal(b.id)) CHECK(b.length > cfg.terminal_length_mm);
  }
  std::map<TerminalReason, int> reasons;
  for (int b : tree.terminal_branches()) ++reasons[r.terminal_reason[static_cast<std::size_t>(b)]];
  CHECK(reasons[TerminalReason::Seed] == 0);
  CHECK(reasons[TerminalReason::Length] + reasons[TerminalReason::Points] + reasons[TerminalReason::BifurcationCap] +
            reasons[TerminalReason::Degenerate] ==
        static_cast<int>(tree.terminal_branches().size()));
  CHECK(reasons[TerminalReason::Length] > 0);
  CHECK(tree.terminal_branches().size() <= (std::size_t{1} << (cfg.max_generations + 1)));
}

TEST_CASE("generate: deterministic for a fixed seed") {
  GeneratorConfig cfg;
  cfg.n_points = 3000;
  const auto a = generate(two_lung_seed_tree(), two_ellipsoid_phantom(), cfg);
  const auto b = generate(two_lung_seed_tree(), two_ellipsoid_phantom(), cfg);
  CHECK(format_skeleton(a.tree) == format_skeleton(b.tree));
  cfg.rng_seed = 2;
  const auto c = generate(two_lung_seed_tree(), two_ellipsoid_phantom(), cfg);
  CHECK(format_skeleton(a.tree) != format_skeleton(c.tree));
}

TEST_CASE("generate: bifurcation cap") {
  for (int g : {0, 1, 2, 3}) {
    GeneratorConfig cfg;
    cfg.max_generations = g;
    const auto r = generate(two_lung_seed_tree(), two_ellipsoid_phantom(), cfg);
    const std::size_t cap = std::size_t{1} << (g + 1);
    CHECK(r.tree.terminal_branches().size() <= cap);
    CHECK(r.bifurcations_added <= cap);
    if (g == 1) CHECK(r.tree.branch_count() <= 7);
  }
}

TEST_CASE("generate: errors") {
  const LungVolume far(Ellipsoid{Vec3(500, 500, 500), Vec3(10, 10, 10)});
  CHECK_THROWS_AS(generate(two_lung_seed_tree(), far, GeneratorConfig{}), DomainError);
}

TEST_CASE("power-law diameters") {
  CHECK(power_law_diameter(18.0, 3, 3.0) == doctest::Approx(9.0));
  CHECK(power_law_diameter(18.0, 0, 3.0) == doctest::Approx(18.0));
  CHECK_THROWS_AS(power_law_diameter(0.0, 1, 3.0), InputError);
  for (int z = 0; z < 20; ++z) CHECK(power_law_diameter(18.0, z + 1, 3.0) < power_law_diameter(18.0, z, 3.0));
}

TEST_CASE("flow-split diameters") {
  const auto tree = testing::build(testing::complete_binary(2));
  const auto d = assign_diameters(tree, {12.0, 3.0, DiameterMode::FlowSplit});
  CHECK(*d.branch(0).diameter == doctest::Approx(12.0));
  for (int c : d.children(0)) CHECK(*d.branch(c).diameter == doctest::Approx(9.5244).epsilon(1e-5));

  const auto gen = assign_diameters(phantom_run().tree, {18.0, 3.0, DiameterMode::FlowSplit});
  for (const auto& b : gen.branches()) {
    const auto& kids = gen.children(b.id);
    if (kids.empty()) continue;
    double sum = 0.0;
    for (int k : kids) sum += std::pow(*gen.branch(k).diameter, 3.0);
    CHECK(std::abs(sum - std::pow(*b.diameter, 3.0)) <= 1e-9 * std::pow(*b.diameter, 3.0));
  }
  CHECK_THROWS_AS(assign_diameters(tree, {-1.0, 3.0, DiameterMode::PowerLaw}), InputError);
}

TEST_CASE("subtree_terminal_counts") {
  const auto tree = testing::build(testing::caterpillar(3));
  const auto c = subtree_terminal_counts(tree);
  CHECK(c[0] == 4);
  for (int b : tree.terminal_branches()) CHECK(c[static_cast<std::size_t>(b)] == 1);
}

TEST_CASE("kamiya_angle_residual") {
  const double d0 = std::cbrt(2.0 * std::sin(deg_to_rad(60.0)));
  CHECK(kamiya_angle_residual(d0, 1.0, 1.0, 30.0, 30.0, 3.0) < 1e-12);
  CHECK(kamiya_angle_residual(std::cbrt(2.0), 1.0, 1.0, 45.0, 45.0, 3.0) == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(kamiya_angle_residual(1.0, 1.0, 1.0, 0.0, 30.0, 3.0), DomainError);
}
