#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstring>

#include "broncho/errors.hpp"
#include "broncho/knn.hpp"
#include "broncho/laplacian.hpp"
#include "broncho/obj_io.hpp"
#include "broncho/primitives.hpp"
#include "broncho/smoothing.hpp"
#include "broncho/tri_mesh.hpp"
#include "broncho/tube_mesh.hpp"
#include "support.hpp"

using namespace broncho;

namespace {

TriMesh single_triangle() {
  TriMesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  m.faces = {{0, 1, 2}};
  return m;
}

double max_displacement(const TriMesh& a, const TriMesh& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) d = std::max(d, (a.vertices[i] - b.vertices[i]).norm());
  return d;
}

AirwayTree straight_tube(double diameter, double length) {
  const std::vector<Node> nodes{{0, Vec3(0, 0, 0)}, {1, Vec3(0, 0, -length)}};
  const std::vector<double> d{diameter};
  return build_tree(nodes, std::vector<EdgeSpec>{{0, 1}}, 0).with_diameters(d);
}

AirwayTree branching_tubes() {
  const auto base = testing::build(testing::complete_binary(2));
  std::vector<double> d;
  for (const auto& b : base.branches()) d.push_back(3.0 * std::pow(0.8, b.generation));
  return base.with_diameters(d);
}

double mean_normal_error(const TriMesh& m) {
  double sum = 0.0;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const auto g = face_geometry(m, static_cast<int>(f));
    sum += std::acos(std::clamp(g.normal.dot(g.centroid.normalized()), -1.0, 1.0));
  }
  return sum / static_cast<double>(m.faces.size());
}

}  // namespace

TEST_CASE("face geometry") {
  const auto g = face_geometry(single_triangle(), 0);
  CHECK(g.area == doctest::Approx(0.5));
  CHECK((g.normal - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((g.centroid - Vec3(1.0 / 3, 1.0 / 3, 0)).norm() < 1e-15);

  TriMesh flat = single_triangle();
  flat.vertices[2] = Vec3(2, 0, 0);
  CHECK_THROWS_AS(face_geometry(flat, 0), DomainError);
  CHECK_THROWS_AS(validate_mesh(flat), InputError);
}

TEST_CASE("primitive topology") {
  for (const auto& m : {make_icosphere(2), make_cube(2.0, 3), make_cylinder(1.0, 4.0, 12, 5)}) {
    CHECK(is_closed(m));
    CHECK(euler_characteristic(m) == 2);
    CHECK(connected_components(m) == 1);
    CHECK(signed_volume(m) > 0.0);
  }
  CHECK(signed_volume(make_cube(2.0, 4)) == doctest::Approx(8.0));
  const auto grid = make_grid(4, 3, 1.0);
  CHECK_FALSE(is_closed(grid));
  CHECK(euler_characteristic(grid) == 1);
}

TEST_CASE("cotangent laplacian") {
  SUBCASE("rows sum to zero and the matrix is symmetric") {
    for (const auto& m : {make_icosphere(3), make_cylinder(1.0, 3.0, 16, 6), make_grid(6, 5, 0.7)}) {
      const auto L = cotangent_laplacian(m);
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(L.cols());
      CHECK((L * ones).cwiseAbs().maxCoeff() < 1e-9);
      const SparseMatrix diff = SparseMatrix(L.transpose()) - L;
      double worst = 0.0;
      for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
      CHECK(worst < 1e-12);
    }
  }
  SUBCASE("flat interior is annihilated") {
    const auto grid = make_grid(7, 7, 0.5);
    const auto delta = apply_laplacian(cotangent_laplacian(grid), grid.vertices);
    const auto boundary = boundary_vertices(grid);
    for (std::size_t i = 0; i < delta.size(); ++i)
      if (!boundary[i]) CHECK(delta[i].norm() < 1e-8);
  }
  SUBCASE("sphere deltas point inward") {
    const auto sphere = make_icosphere(3, 2.0);
    const auto delta = apply_laplacian(cotangent_laplacian(sphere), sphere.vertices);
    std::size_t inward = 0;
    for (std::size_t i = 0; i < delta.size(); ++i)
      if (delta[i].dot(sphere.vertices[i]) < 0.0) ++inward;
    CHECK(static_cast<double>(inward) >= 0.99 * static_cast<double>(delta.size()));
  }
  SUBCASE("non-manifold edge") {
    TriMesh m;
    m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1)};
    m.faces = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
    CHECK_THROWS_AS(cotangent_laplacian(m), InputError);
  }
}

TEST_CASE("taubin smoothing") {
  const auto sphere = make_icosphere(3, 5.0);
  const auto same = taubin_smooth(sphere, 0.0, kTaubinMu, 10);
  CHECK(std::memcmp(same.vertices.data(), sphere.vertices.data(), sphere.vertices.size() * sizeof(Vec3)) == 0);

  const auto grid = make_grid(8, 8, 1.0);
  CHECK(max_displacement(taubin_smooth(grid, kTaubinLambda, kTaubinMu, 10), grid) < 1e-12);

  const auto smoothed = taubin_smooth(sphere, kTaubinLambda, kTaubinMu, 10);
  CHECK(std::abs(signed_volume(smoothed) / signed_volume(sphere) - 1.0) < 0.02);
  CHECK(smoothed.faces == sphere.faces);

  CHECK_THROWS_AS(taubin_smooth(sphere, 0.5, -0.4, 1), InputError);
  CHECK_THROWS_AS(taubin_smooth(sphere, -0.5, -0.53, 1), InputError);

  std::vector<bool> movable(sphere.vertices.size(), false);
  movable[0] = true;
  const auto one = taubin_smooth(sphere, kTaubinLambda, kTaubinMu, 3, &movable);
  for (std::size_t i = 1; i < sphere.vertices.size(); ++i) CHECK(one.vertices[i] == sphere.vertices[i]);
}

TEST_CASE("bilateral normal filter") {
  SUBCASE("zeta zero keeps the mesh") {
    const auto sphere = make_icosphere(2);
    BilateralConfig cfg;
    cfg.zeta = 0;
    CHECK(max_displacement(bilateral_normal_filter(sphere, cfg), sphere) < 1e-12);
  }
  SUBCASE("cube corners survive") {
    const auto cube = make_cube(2.0, 6);
    BilateralConfig cfg;
    cfg.sigma_n = 0.2;
    const auto out = bilateral_normal_filter(cube, cfg);
    CHECK(max_displacement(out, cube) < 1e-6 * 2.0 * std::sqrt(3.0));
    CHECK(out.faces == cube.faces);
  }
  SUBCASE("noisy sphere gets smoother") {
    auto sphere = make_icosphere(3, 10.0);
    Rng rng(5);
    for (auto& v : sphere.vertices) v *= 1.0 + 0.01 * (2.0 * rng.uniform() - 1.0);
    BilateralConfig cfg;
    cfg.iterations = 2;
    const auto out = bilateral_normal_filter(sphere, cfg);
    CHECK(mean_normal_error(out) < mean_normal_error(sphere));
    CHECK(out.faces == sphere.faces);
  }
  SUBCASE("neighbour count must stay below face count") {
    BilateralConfig cfg;
    cfg.k_neighbors = 20;
    CHECK_THROWS_AS(bilateral_normal_filter(make_icosphere(0), cfg), InputError);
  }
}

TEST_CASE("tube mesh") {
  SUBCASE("straight tube area and volume") {
    const double r = 2.0, len = 30.0;
    const auto tree = straight_tube(2.0 * r, len);
    for (int seg : {16, 64}) {
      const auto m = synthesize_tube_mesh(tree, seg);
      double lateral = 0.0;
      for (std::size_t f = 0; f < m.faces.size(); ++f) {
        const auto g = face_geometry(m, static_cast<int>(f));
        if (std::abs(g.normal.z()) < 0.5) lateral += g.area;
      }
      CHECK(std::abs(lateral / (2.0 * kPi * r * len) - 1.0) < 0.015);
      if (seg == 64) CHECK(std::abs(signed_volume(m) / (kPi * r * r * len) - 1.0) < 0.02);
    }
  }
  SUBCASE("every branch is one labelled closed component") {
    const auto tree = branching_tubes();
    const auto m = synthesize_tube_mesh(tree, 12);
    CHECK(is_closed(m));
    CHECK(connected_components(m) == static_cast<int>(tree.branch_count()));
    CHECK(euler_characteristic(m) == 2 * static_cast<long>(tree.branch_count()));
    REQUIRE(m.face_branch.size() == m.faces.size());
    for (int label : m.face_branch) CHECK((label >= 0 && label < static_cast<int>(tree.branch_count())));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(synthesize_tube_mesh(testing::build(testing::complete_binary(1)), 12), InputError);
    CHECK_THROWS_AS(synthesize_tube_mesh(straight_tube(2.0, 5.0), 5), InputError);
  }
}

TEST_CASE("surface point cloud") {
  SUBCASE("points lie on the tube") {
    const auto tree = straight_tube(3.0, 20.0);
    const auto pts = sample_surface_point_cloud(tree, 4.0, 3);
    const double expected = 4.0 * 2.0 * kPi * 1.5 * 20.0;
    CHECK(std::abs(static_cast<double>(pts.size()) / expected - 1.0) < 0.1);
    for (const auto& p : pts) {
      CHECK(std::abs(std::hypot(p.x(), p.y()) - 1.5) < 1e-9);
      CHECK((p.z() <= 1e-12 && p.z() >= -20.0 - 1e-12));
    }
  }
  SUBCASE("no point inside another branch") {
    const auto tree = branching_tubes();
    const auto pts = sample_surface_point_cloud(tree, 2.0, 8);
    CHECK(!pts.empty());
    for (const auto& p : pts)
      for (const auto& b : tree.branches()) {
        const Vec3 a = tree.position(b.tail), c = tree.position(b.head);
        const Vec3 ac = c - a;
        const double t = std::clamp((p - a).dot(ac) / ac.squaredNorm(), 0.0, 1.0);
        CHECK((p - a - t * ac).norm() >= tube_radius_at(tree, b.id, t) - 1e-9);
      }
  }
  SUBCASE("deterministic") {
    const auto tree = branching_tubes();
    CHECK(sample_surface_point_cloud(tree, 1.0, 4) == sample_surface_point_cloud(tree, 1.0, 4));
  }
}

TEST_CASE("obj files") {
  const auto dir = testing::temp_dir("obj");
  auto m = make_cylinder(1.0, 2.0, 8, 2);
  m.face_sdf.assign(m.faces.size(), 0.25);
  write_obj(m, dir / "c.obj");
  write_face_attributes(m, dir / "c_faces.csv");
  auto back = read_obj(dir / "c.obj");
  read_face_attributes(back, dir / "c_faces.csv");
  CHECK(back.faces == m.faces);
  CHECK(back.face_branch == m.face_branch);
  CHECK(back.face_sdf == m.face_sdf);
  CHECK(max_displacement(back, m) < 1e-8);

  const std::string text = format_obj(single_triangle());
  CHECK(text.find("f 1 2 3") != std::string::npos);

  const auto slashed = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2//2 -1\n");
  CHECK(slashed.faces.front() == Face{0, 1, 2});

  try {
    parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 4 3\n");
    FAIL("quad accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_obj("v 0 0 0\nf 1 2 3\n"), InputError);
}

TEST_CASE("k nearest against brute force") {
  Rng rng(9);
  std::vector<Vec3> pts;
  for (int i = 0; i < 600; ++i) pts.emplace_back(rng.uniform() * 10, rng.uniform() * 3, rng.uniform() * 40);
  for (int i = 0; i < 20; ++i) pts.push_back(pts[static_cast<std::size_t>(i)]);  // duplicates
  const int k = 9;
  const auto knn = k_nearest(pts, k);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<int> order(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = (pts[static_cast<std::size_t>(a)] - pts[i]).squaredNorm();
      const double db = (pts[static_cast<std::size_t>(b)] - pts[i]).squaredNorm();
      return da != db ? da < db : a < b;
    });
    order.resize(k);
    CHECK(knn[i] == order);
  }
}
