#include "broncho/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "broncho/errors.hpp"
#include "broncho/ray_bvh.hpp"

namespace broncho {

namespace {

constexpr double kGoldenAngle = 2.39996322972865332;  // pi * (3 - sqrt(5))
constexpr double kGoldenFraction = 0.61803398874989485;

double face_raw_sdf(const TriMesh& mesh, const TriangleBvh& bvh, int f, const SdfConfig& config) {
  const FaceGeometry g = face_geometry(mesh, f);
  const Face& tri = mesh.faces[static_cast<std::size_t>(f)];
  const Vec3 axis = -g.normal;
  const Vec3 e1 = (mesh.vertices[static_cast<std::size_t>(tri[1])] - mesh.vertices[static_cast<std::size_t>(tri[0])]).normalized();
  const Vec3 e2 = axis.cross(e1);
  const double alpha = deg_to_rad(config.cone_half_angle_deg);
  const double offset = 2.0 * kPi * std::fmod(static_cast<double>(f) * kGoldenFraction, 1.0);

  std::vector<double> len, ang;
  for (int j = 0; j < config.rays_per_face; ++j) {
    const double theta = alpha * (j + 0.5) / config.rays_per_face;
    const double phi = offset + j * kGoldenAngle;
    const Vec3 dir = std::cos(theta) * axis + std::sin(theta) * (std::cos(phi) * e1 + std::sin(phi) * e2);
    const auto hit = bvh.intersect(g.centroid, dir, f);
    if (!hit) continue;
    const Face& ht = mesh.faces[static_cast<std::size_t>(hit->face)];
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(ht[0])];
    const Vec3 hn = (mesh.vertices[static_cast<std::size_t>(ht[1])] - a).cross(mesh.vertices[static_cast<std::size_t>(ht[2])] - a);
    if (hn.normalized().dot(g.normal) > 1e-9) continue;  // back side of the outer surface
    len.push_back(hit->t);
    ang.push_back(theta);
  }
  if (len.empty()) return std::numeric_limits<double>::quiet_NaN();

  std::vector<double> sorted = len;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double mean = std::accumulate(len.begin(), len.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double x : len) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(n));

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(len[i] - median) > sd) continue;
    const double w = 1.0 / (1.0 + ang[i]);
    num += w * len[i];
    den += w;
  }
  return num / den;  // the median's nearest sample always falls in the window
}

}  // namespace

void SdfConfig::validate() const {
  if (!(cone_half_angle_deg > 0.0 && cone_half_angle_deg < 90.0)) throw InputError("cone half angle must be in (0, 90)");
  if (rays_per_face < 1) throw InputError("rays per face must be positive");
}

int sdf_window(std::size_t face_count) {
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(face_count) / 2000.0))) + 1;
}

std::vector<double> raw_sdf(const TriMesh& mesh, const SdfConfig& config, const std::vector<int>* faces) {
  config.validate();
  const TriangleBvh bvh(mesh);
  std::vector<int> all;
  if (!faces) {
    all.resize(mesh.faces.size());
    std::iota(all.begin(), all.end(), 0);
    faces = &all;
  }
  std::vector<double> out;
  out.reserve(faces->size());
  for (int f : *faces) out.push_back(face_raw_sdf(mesh, bvh, f, config));
  return out;
}

std::vector<double> compute_sdf(const TriMesh& mesh, const SdfConfig& config, const std::vector<int>* faces) {
  config.validate();
  if (mesh.faces.empty()) throw InputError("SDF of an empty mesh");
  for (const auto& e : mesh_edges(mesh))
    if (e.faces.size() != 2) throw InputError("SDF needs a closed mesh; found a boundary or non-manifold edge");

  std::vector<int> sel;
  if (faces) sel = *faces;
  else {
    sel.resize(mesh.faces.size());
    std::iota(sel.begin(), sel.end(), 0);
  }
  const std::size_t m = sel.size();
  if (m == 0) throw InputError("SDF face subset is empty");

  // Local adjacency restricted to the subset.
  std::vector<int> local(mesh.faces.size(), -1);
  for (std::size_t i = 0; i < m; ++i) {
    const int f = sel[i];
    if (f < 0 || f >= static_cast<int>(mesh.faces.size()) || local[static_cast<std::size_t>(f)] >= 0)
      throw InputError("SDF face subset has an invalid or repeated id");
    local[static_cast<std::size_t>(f)] = static_cast<int>(i);
  }
  const auto global_adj = face_adjacency(mesh);
  std::vector<std::vector<int>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (int g : global_adj[static_cast<std::size_t>(sel[i])])
      if (local[static_cast<std::size_t>(g)] >= 0) adj[i].push_back(local[static_cast<std::size_t>(g)]);

  std::vector<double> sdf = raw_sdf(mesh, config, &sel);
  if (std::none_of(sdf.begin(), sdf.end(), [](double x) { return std::isfinite(x); }))
    throw DomainError("SDF: no ray hit the opposite surface");

  // Fill holes from edge neighbours until nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<double> next = sdf;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::isfinite(sdf[i])) continue;
      double sum = 0.0;
      int cnt = 0;
      for (int j : adj[i])
        if (std::isfinite(sdf[static_cast<std::size_t>(j)])) {
          sum += sdf[static_cast<std::size_t>(j)];
          ++cnt;
        }
      if (cnt > 0) {
        next[i] = sum / cnt;
        changed = true;
      }
    }
    sdf = std::move(next);
  }
  // Components of the subset without any hit get the global mean.
  double mean = 0.0;
  int cnt = 0;
  for (double x : sdf)
    if (std::isfinite(x)) {
      mean += x;
      ++cnt;
    }
  mean /= cnt;
  for (double& x : sdf)
    if (!std::isfinite(x)) x = mean;

  // Bilateral pass over the breadth-first window.
  const int w = sdf_window(mesh.faces.size());
  const double sigma_s = 0.5 * w;
  std::vector<double> smoothed(m);
  std::vector<int> level(m, -1);
  std::vector<int> visited;
  for (std::size_t i = 0; i < m; ++i) {
    visited.clear();
    std::deque<int> queue{static_cast<int>(i)};
    level[i] = 0;
    visited.push_back(static_cast<int>(i));
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      if (level[static_cast<std::size_t>(f)] == w) continue;
      for (int g : adj[static_cast<std::size_t>(f)]) {
        if (level[static_cast<std::size_t>(g)] >= 0) continue;
        level[static_cast<std::size_t>(g)] = level[static_cast<std::size_t>(f)] + 1;
        visited.push_back(g);
        queue.push_back(g);
      }
    }
    double var = 0.0;
    for (int g : visited) var += (sdf[static_cast<std::size_t>(g)] - sdf[i]) * (sdf[static_cast<std::size_t>(g)] - sdf[i]);
    const double sigma_r = std::sqrt(var / static_cast<double>(visited.size()));
    double num = 0.0, den = 0.0;
    for (int g : visited) {
      const double lv = level[static_cast<std::size_t>(g)];
      const double dv = sdf[static_cast<std::size_t>(g)] - sdf[i];
      double wt = std::exp(-lv * lv / (2.0 * sigma_s * sigma_s));
      if (sigma_r > 0.0) wt *= std::exp(-dv * dv / (2.0 * sigma_r * sigma_r));
      num += wt * sdf[static_cast<std::size_t>(g)];
      den += wt;
    }
    smoothed[i] = num / den;
    for (int g : visited) level[static_cast<std::size_t>(g)] = -1;
  }

  if (config.normalize) {
    const auto [lo, hi] = std::minmax_element(smoothed.begin(), smoothed.end());
    const double a = *lo, span = *hi - *lo;
    for (double& x : smoothed) x = span > 0.0 ? (x - a) / span : 0.0;
  }
  return smoothed;
}

}  // namespace broncho
