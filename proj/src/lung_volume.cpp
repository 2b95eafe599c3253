#include "broncho/lung_volume.hpp"

#include <algorithm>

#include "broncho/errors.hpp"
#include "broncho/rng.hpp"

namespace broncho {

void VoxelGrid::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] <= 0) throw InputError("grid dimensions must be positive");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) throw InputError("grid spacing must be positive");
    if (!std::isfinite(origin[a])) throw InputError("grid origin must be finite");
  }
}

std::size_t VoxelMask::inside_count() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](std::uint8_t v) { return v != 0; }));
}

namespace {
void validate_ellipsoid(const Ellipsoid& e) {
  if (!e.center.allFinite() || !(e.semi_axes.array() > 0.0).all() || !e.semi_axes.allFinite())
    throw InputError("ellipsoid semi-axes must be positive and finite");
}
}  // namespace

LungVolume::LungVolume(VoxelMask mask) : shape_(std::move(mask)) {
  const auto& m = std::get<VoxelMask>(shape_);
  m.grid.validate();
  if (m.values.size() != m.grid.voxel_count()) throw InputError("mask value count does not match dims");
}

LungVolume::LungVolume(Ellipsoid ellipsoid) : shape_(ellipsoid) { validate_ellipsoid(ellipsoid); }

LungVolume::LungVolume(EllipsoidUnion parts) : shape_(std::move(parts)) {
  const auto& u = std::get<EllipsoidUnion>(shape_);
  if (u.parts.empty()) throw InputError("ellipsoid union is empty");
  for (const auto& e : u.parts) validate_ellipsoid(e);
}

bool ellipsoid_contains(const Ellipsoid& e, const Vec3& p) {
  const Vec3 q = (p - e.center).cwiseQuotient(e.semi_axes);
  return q.squaredNorm() <= 1.0;
}

bool LungVolume::contains(const Vec3& p) const {
  if (const auto* m = std::get_if<VoxelMask>(&shape_)) {
    const auto ijk = m->grid.locate(p);
    return ijk && m->at((*ijk)[0], (*ijk)[1], (*ijk)[2]);
  }
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return ellipsoid_contains(*e, p);
  const auto& u = std::get<EllipsoidUnion>(shape_);
  return std::any_of(u.parts.begin(), u.parts.end(), [&](const Ellipsoid& e) { return ellipsoid_contains(e, p); });
}

Aabb LungVolume::bounds() const {
  Aabb box;
  if (const auto* m = std::get_if<VoxelMask>(&shape_)) {
    const auto& g = m->grid;
    for (int k = 0; k < g.dims[2]; ++k)
      for (int j = 0; j < g.dims[1]; ++j)
        for (int i = 0; i < g.dims[0]; ++i)
          if (m->at(i, j, k)) {
            const Vec3 lo = g.origin + Vec3(i * g.spacing.x(), j * g.spacing.y(), k * g.spacing.z());
            box.extend(lo);
            box.extend(lo + g.spacing);
          }
    return box;
  }
  auto add = [&](const Ellipsoid& e) {
    box.extend(e.center - e.semi_axes);
    box.extend(e.center + e.semi_axes);
  };
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) add(*e);
  else for (const auto& e : std::get<EllipsoidUnion>(shape_).parts) add(e);
  return box;
}

double LungVolume::volume_mm3() const {
  auto ell = [](const Ellipsoid& e) { return 4.0 / 3.0 * kPi * e.semi_axes.prod(); };
  if (const auto* m = std::get_if<VoxelMask>(&shape_))
    return static_cast<double>(m->inside_count()) * m->grid.voxel_volume();
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return ell(*e);
  double v = 0.0;
  for (const auto& e : std::get<EllipsoidUnion>(shape_).parts) v += ell(e);
  return v;
}

std::vector<Vec3> sample_uniform(const LungVolume& volume, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("sample count must be at least 1");
  const Aabb box = volume.bounds();
  if (box.empty()) throw DomainError("degenerate volume: region is empty");

  constexpr std::size_t kProbe = 10000;
  Rng rng(seed);
  std::vector<Vec3> out;
  out.reserve(n);
  std::size_t tried = 0;
  std::size_t accepted_in_probe = 0;
  while (out.size() < n) {
    const Vec3 p(rng.uniform(box.lo.x(), box.hi.x()), rng.uniform(box.lo.y(), box.hi.y()),
                 rng.uniform(box.lo.z(), box.hi.z()));
    ++tried;
    const bool inside = volume.contains(p);
    if (inside) out.push_back(p);
    if (tried <= kProbe && inside) ++accepted_in_probe;
    if (tried == kProbe && static_cast<double>(accepted_in_probe) < 1e-4 * kProbe)
      throw DomainError("degenerate volume: rejection acceptance rate below 1e-4");
  }
  return out;
}

LungVolume two_ellipsoid_phantom() {
  EllipsoidUnion u;
  u.parts.push_back({Vec3(-55.0, 0.0, 0.0), Vec3(45.0, 60.0, 100.0)});
  u.parts.push_back({Vec3(55.0, 0.0, 0.0), Vec3(45.0, 60.0, 100.0)});
  return LungVolume(std::move(u));
}

}  // namespace broncho
