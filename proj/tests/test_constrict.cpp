#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "broncho/constrict.hpp"
#include "broncho/errors.hpp"
#include "broncho/primitives.hpp"
#include "broncho/tri_mesh.hpp"

using namespace broncho;

namespace {

std::vector<bool> lateral_free(const TriMesh& m) {
  // Vertices whose incident faces are all lateral.
  std::vector<bool> free(m.vertices.size(), true);
  for (std::size_t f = 0; f < m.faces.size(); ++f)
    if (m.face_branch[f] != 0)
      for (int v : m.faces[f]) free[static_cast<std::size_t>(v)] = false;
  return free;
}

double mean_radius(const std::vector<Vec3>& verts, const std::vector<bool>& free) {
  double s = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (free[i]) {
      s += std::hypot(verts[i].x(), verts[i].y());
      ++n;
    }
  return s / n;
}

// Cylinder along z with the lateral faces in the middle third relabelled 5.
TriMesh banded_cylinder() {
  TriMesh m = make_cylinder(1.0, 9.0, 20, 36);
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const double z = face_geometry(m, static_cast<int>(f)).centroid.z();
    if (m.face_branch[f] == 0 && z > 3.0 && z < 6.0) m.face_branch[f] = 5;
  }
  return m;
}

}  // namespace

TEST_CASE("narrowing ratio") {
  CHECK(narrowing_ratio({1.0, 1.0}, {2.0, 2.0}) == 0.5);
  CHECK(narrowing_ratio({3.0}, {3.0}) == 1.0);
  const std::vector<double> x{0.3, 1.7, 2.25, 9.0};
  CHECK(narrowing_ratio(x, x) == 1.0);
  CHECK_THROWS_AS(narrowing_ratio({1.0}, {1.0, 2.0}), InputError);
  CHECK_THROWS_AS(narrowing_ratio({0.0}, {0.0}), DomainError);
}

TEST_CASE("weak contraction returns the anchors") {
  const auto cyl = make_cylinder(1.0, 4.0, 16, 10);
  const auto state = init_contraction_state(cyl, 1e-12);
  const auto out = solve_contraction(cyl, state, lateral_free(cyl));
  double worst = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) worst = std::max(worst, (out[i] - state.anchors[i]).norm());
  CHECK(worst < 1e-9);
}

TEST_CASE("one step pulls the surface inward") {
  const auto cyl = make_cylinder(1.0, 4.0, 16, 10);
  const auto free = lateral_free(cyl);
  auto state = init_contraction_state(cyl, 1.0);
  const double before = mean_radius(state.vertices, free);
  const auto w_l = state.w_l;
  contract_step(cyl, state, free, 2.0);
  CHECK(mean_radius(state.vertices, free) < before);
  CHECK(state.anchors == state.vertices);
  CHECK(state.w_l[0] == doctest::Approx(2.0 * w_l[0]));
  for (std::size_t i = 0; i < free.size(); ++i)
    if (!free[i]) CHECK(state.vertices[i] == cyl.vertices[i]);
}

TEST_CASE("whole closed cylinder as region") {
  const auto cyl = make_cylinder(1.0, 4.0, 16, 10);
  const std::vector<bool> all(cyl.vertices.size(), true);
  auto state = init_contraction_state(cyl, 1.0);
  const double before = mean_radius(state.vertices, all);
  contract_step(cyl, state, all, 2.0);
  CHECK(mean_radius(state.vertices, all) < before);
}

TEST_CASE("enclosed volume shrinks every step") {
  const auto cyl = make_cylinder(1.0, 6.0, 20, 24);
  const auto free = lateral_free(cyl);
  auto state = init_contraction_state(cyl, 0.05);
  double vol = signed_volume(cyl);
  for (int it = 0; it < 5; ++it) {
    contract_step(cyl, state, free, 2.0);
    const double next = signed_volume(cyl, state.vertices);
    CHECK(next < vol);
    vol = next;
  }
}

TEST_CASE("cylinder reaches the target narrowing") {
  const auto cyl = make_cylinder(1.0, 8.0, 24, 40);
  CHECK(cyl.faces.size() > 1900);
  ConstrictionConfig cfg;
  cfg.region_branches = {0};
  const auto res = simulate_bronchoconstriction(cyl, cfg);
  REQUIRE(res.history.size() >= 2);
  CHECK(res.history.front() == 1.0);
  for (std::size_t i = 1; i < res.history.size(); ++i) CHECK(res.history[i] <= res.history[i - 1]);
  CHECK(static_cast<int>(res.history.size()) <= cfg.max_iterations + 1);
  CHECK(res.final_ratio >= 0.45);
  CHECK(res.final_ratio <= 0.55);
  CHECK(res.mesh.faces == cyl.faces);
  CHECK(res.mesh.face_branch == cyl.face_branch);
}

TEST_CASE("only the seam band moves") {
  const auto m = banded_cylinder();
  ConstrictionConfig cfg;
  cfg.region_branches = {5};
  const auto res = simulate_bronchoconstriction(m, cfg);
  int moved = 0;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    if (!res.band_vertex[i]) CHECK(res.mesh.vertices[i] == m.vertices[i]);
    else if (res.mesh.vertices[i] != m.vertices[i]) ++moved;
  }
  CHECK(moved > 0);
  CHECK(signed_volume(res.mesh) < signed_volume(m));
  CHECK(is_closed(res.mesh));

  std::size_t with_sdf = 0;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const bool in_region = m.face_branch[f] == 5;
    CHECK(std::isfinite(res.mesh.face_sdf[f]) == in_region);
    if (in_region) ++with_sdf;
  }
  CHECK(with_sdf == res.region_faces.size());
}

TEST_CASE("invalid requests") {
  const auto cyl = make_cylinder(1.0, 4.0, 16, 10);
  ConstrictionConfig cfg;
  cfg.region_branches = {42};
  CHECK_THROWS_AS(simulate_bronchoconstriction(cyl, cfg), DomainError);
  cfg.region_branches = {0};
  cfg.target_ratio = 1.5;
  CHECK_THROWS_AS(simulate_bronchoconstriction(cyl, cfg), InputError);
  CHECK_THROWS_AS(init_contraction_state(cyl, 0.0), InputError);
  TriMesh unlabelled = cyl;
  unlabelled.face_branch.clear();
  CHECK_THROWS_AS(select_region_faces(unlabelled, {0}), InputError);
}
