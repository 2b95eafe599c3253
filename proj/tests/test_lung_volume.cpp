#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <cstring>
#include <fstream>

#include "broncho/errors.hpp"
#include "broncho/lung_volume.hpp"
#include "broncho/rng.hpp"
#include "broncho/volume_io.hpp"
#include "support.hpp"

using namespace broncho;

namespace {

VoxelMask rasterize(const Ellipsoid& e, double spacing) {
  VoxelMask m;
  m.grid.spacing = Vec3::Constant(spacing);
  m.grid.origin = e.center - e.semi_axes - Vec3::Constant(spacing);
  for (int a = 0; a < 3; ++a) m.grid.dims[a] = static_cast<int>(std::ceil((2 * e.semi_axes[a] + 2 * spacing) / spacing));
  m.values.assign(m.grid.voxel_count(), 0);
  for (int k = 0; k < m.grid.dims[2]; ++k)
    for (int j = 0; j < m.grid.dims[1]; ++j)
      for (int i = 0; i < m.grid.dims[0]; ++i)
        m.values[m.grid.linear_index(i, j, k)] = ellipsoid_contains(e, m.grid.voxel_center(i, j, k)) ? 1 : 0;
  return m;
}

}  // namespace

TEST_CASE("contains") {
  const LungVolume v(Ellipsoid{Vec3(1, 2, 3), Vec3(4, 5, 6)});
  CHECK(v.contains(Vec3(1, 2, 3)));
  CHECK_FALSE(v.contains(Vec3(100, 2, 3)));
  CHECK(v.contains(Vec3(5, 2, 3)));  // axis endpoint, closed boundary
  CHECK(v.contains(Vec3(1, 2, 9)));
  CHECK_FALSE(v.contains(Vec3(5.000001, 2, 3)));
}

TEST_CASE("mask containment uses floor indexing") {
  VoxelMask m;
  m.grid.dims = {2, 1, 1};
  m.values = {0, 1};
  const LungVolume v(m);
  CHECK_FALSE(v.contains(Vec3(0.5, 0.5, 0.5)));
  CHECK(v.contains(Vec3(1.0, 0.5, 0.5)));
  CHECK(v.contains(Vec3(1.999, 0.0, 0.999)));
  CHECK_FALSE(v.contains(Vec3(2.0, 0.5, 0.5)));
  CHECK_FALSE(v.contains(Vec3(1.5, -0.001, 0.5)));
}

TEST_CASE("volume_mm3") {
  CHECK(LungVolume(Ellipsoid{Vec3::Zero(), Vec3::Ones()}).volume_mm3() == doctest::Approx(4.18879).epsilon(1e-5));
  VoxelMask m;
  m.grid.dims = {2, 2, 2};
  m.values.assign(8, 1);
  CHECK(LungVolume(m).volume_mm3() == doctest::Approx(8.0));
  const EllipsoidUnion two{{{Vec3(-3, 0, 0), Vec3::Ones()}, {Vec3(3, 0, 0), Vec3::Ones()}}};
  CHECK(LungVolume(two).volume_mm3() == doctest::Approx(8.37758).epsilon(1e-5));
}

TEST_CASE("sample_uniform") {
  const LungVolume v(Ellipsoid{Vec3(0, 0, 0), Vec3(2, 3, 4)});
  const auto a = sample_uniform(v, 1000, 42);
  REQUIRE(a.size() == 1000);
  for (const auto& p : a) CHECK(v.contains(p));
  const auto b = sample_uniform(v, 1000, 42);
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(Vec3)) == 0);
  CHECK(sample_uniform(v, 1000, 43)[0] != a[0]);

  VoxelMask empty;
  empty.grid.dims = {3, 3, 3};
  empty.values.assign(27, 0);
  CHECK_THROWS_AS(sample_uniform(LungVolume(empty), 10, 1), DomainError);
}

TEST_CASE("Monte-Carlo volume agrees with the analytic value") {
  const Ellipsoid e{Vec3(0, 0, 0), Vec3(2, 3, 4)};
  const LungVolume v(e);
  Rng rng(9);
  const int n = 1000000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const Vec3 p(rng.uniform(-2, 2), rng.uniform(-3, 3), rng.uniform(-4, 4));
    if (v.contains(p)) ++inside;
  }
  const double estimate = 4.0 * 6.0 * 8.0 * inside / n;
  CHECK(std::abs(estimate - v.volume_mm3()) / v.volume_mm3() < 0.02);
}

TEST_CASE("rasterized ellipsoid agrees with the analytic test") {
  const Ellipsoid e{Vec3(1, -2, 0.5), Vec3(45, 60, 100)};
  const LungVolume mask(rasterize(e, 0.5));
  Rng rng(5);
  int agree = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Vec3 p = e.center + Vec3(rng.uniform(-46, 46), rng.uniform(-61, 61), rng.uniform(-101, 101));
    if (mask.contains(p) == ellipsoid_contains(e, p)) ++agree;
  }
  CHECK(agree >= 0.99 * n);
}

TEST_CASE("two-ellipsoid phantom") {
  const auto v = two_ellipsoid_phantom();
  CHECK(v.contains(Vec3(-55, 0, 0)));
  CHECK(v.contains(Vec3(55, 0, 0)));
  CHECK_FALSE(v.contains(Vec3(0, 0, 0)));
}

TEST_CASE("mask file round trip") {
  const auto dir = testing::temp_dir("volume");
  VoxelMask m;
  m.grid.dims = {3, 2, 2};
  m.grid.spacing = Vec3(0.5, 0.25, 0.1);
  m.grid.origin = Vec3(-1.5, 0.1, 7);
  m.values = {0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 1};
  write_mask(dir / "lung.hdr", m);
  CHECK(std::filesystem::file_size(dir / "lung.raw") == 12);
  const VoxelMask back = read_mask(dir / "lung.hdr");
  CHECK(back.grid.dims == m.grid.dims);
  CHECK(back.grid.spacing == m.grid.spacing);
  CHECK(back.grid.origin == m.grid.origin);
  CHECK(back.values == m.values);
  CHECK(back.inside_count() == 6);
}

TEST_CASE("mask file errors") {
  const auto dir = testing::temp_dir("volume_bad");
  {
    std::ofstream(dir / "a.hdr") << "dims 2 2 2\nspacing 1 1 1\norigin 0 0 0\ndtype u8\n";
    std::ofstream(dir / "a.raw") << "abc";
  }
  CHECK_THROWS_AS(read_mask(dir / "a.hdr"), InputError);
  {
    std::ofstream(dir / "b.hdr") << "dims 2 2 2\nspacing 1 0 1\norigin 0 0 0\ndtype u8\n";
  }
  CHECK_THROWS_AS(read_volume_header(dir / "b.hdr"), InputError);
  CHECK_THROWS_AS(read_mask(dir / "missing.hdr"), InputError);
}
