#include "broncho/smoothing.hpp"

#include <cmath>

#include "broncho/errors.hpp"
#include "broncho/knn.hpp"

namespace broncho {

namespace {

void umbrella_step(std::vector<Vec3>& v, const std::vector<std::vector<int>>& nb, const std::vector<bool>& fixed,
                   double factor) {
  std::vector<Vec3> next = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (fixed[i] || nb[i].empty()) continue;
    Vec3 mean = Vec3::Zero();
    for (int j : nb[i]) mean += v[static_cast<std::size_t>(j)];
    mean /= static_cast<double>(nb[i].size());
    next[i] = v[i] + factor * (mean - v[i]);
  }
  v = std::move(next);
}

std::vector<bool> fixed_mask(const TriMesh& mesh, const std::vector<bool>* movable) {
  std::vector<bool> fixed = boundary_vertices(mesh);
  if (movable) {
    if (movable->size() != mesh.vertices.size()) throw InputError("movable mask does not match vertex count");
    for (std::size_t i = 0; i < fixed.size(); ++i)
      if (!(*movable)[i]) fixed[i] = true;
  }
  return fixed;
}

}  // namespace

TriMesh taubin_smooth(const TriMesh& mesh, double lambda, double mu, int iterations,
                      const std::vector<bool>* movable) {
  if (iterations < 0) throw InputError("Taubin iterations must be non-negative");
  if (lambda == 0.0) return mesh;
  if (!(lambda > 0.0) || !(mu < -lambda)) throw InputError("Taubin needs lambda > 0 and mu < -lambda");
  const auto nb = vertex_neighbors(mesh);
  const auto fixed = fixed_mask(mesh, movable);
  TriMesh out = mesh;
  for (int it = 0; it < iterations; ++it) {
    umbrella_step(out.vertices, nb, fixed, lambda);
    umbrella_step(out.vertices, nb, fixed, mu);
  }
  return out;
}

void BilateralConfig::validate(std::size_t face_count) const {
  if (!(sigma_n > 0.0)) throw InputError("sigma_n must be positive");
  if (zeta < 0) throw InputError("zeta must be non-negative");
  if (iterations < 0) throw InputError("bilateral iterations must be non-negative");
  if (k_neighbors < 1) throw InputError("k_neighbors must be positive");
  if (static_cast<std::size_t>(k_neighbors) >= face_count) throw InputError("k_neighbors must be below the face count");
}

std::vector<Vec3> filter_face_normals(const TriMesh& mesh, const BilateralConfig& config) {
  config.validate(mesh.faces.size());
  const auto geo = all_face_geometry(mesh);
  const std::size_t nf = geo.size();
  std::vector<Vec3> centroids(nf), normals(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    centroids[f] = geo[f].centroid;
    normals[f] = geo[f].normal;
  }
  if (config.zeta == 0) return normals;

  const double sm = config.sigma_m > 0.0 ? config.sigma_m : mean_edge_length(mesh);
  const double inv_m = 1.0 / (2.0 * sm * sm);
  const double inv_n = 1.0 / (2.0 * config.sigma_n * config.sigma_n);
  const auto knn = k_nearest(centroids, config.k_neighbors);

  std::vector<std::vector<double>> weight(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    auto& w = weight[i];
    double total = 0.0;
    for (int j : knn[i]) {
      const auto js = static_cast<std::size_t>(j);
      const double wm = std::exp(-(centroids[i] - centroids[js]).squaredNorm() * inv_m);
      const double wn = std::exp(-(normals[i] - normals[js]).squaredNorm() * inv_n);
      w.push_back(wm * wn);
      total += wm * wn;
    }
    for (double& x : w) x /= total;  // the self term keeps total >= its own weight of 1
  }

  std::vector<Vec3> cur = normals;
  for (int z = 0; z < config.zeta; ++z) {
    std::vector<Vec3> next(nf, Vec3::Zero());
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t a = 0; a < knn[i].size(); ++a) next[i] += weight[i][a] * cur[static_cast<std::size_t>(knn[i][a])];
    cur = std::move(next);
  }
  for (std::size_t i = 0; i < nf; ++i) cur[i] = cur[i].norm() > 0.0 ? Vec3(cur[i].normalized()) : normals[i];
  return cur;
}

TriMesh bilateral_normal_filter(const TriMesh& mesh, const BilateralConfig& config, const std::vector<bool>* movable) {
  config.validate(mesh.faces.size());
  if (movable && movable->size() != mesh.vertices.size()) throw InputError("movable mask does not match vertex count");
  const auto vf = vertex_faces(mesh);
  TriMesh out = mesh;
  for (int it = 0; it < config.iterations; ++it) {
    const auto n = filter_face_normals(out, config);
    const auto geo = all_face_geometry(out);
    std::vector<Vec3> next = out.vertices;
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
      if (vf[v].empty() || (movable && !(*movable)[v])) continue;
      Vec3 delta = Vec3::Zero();
      for (int f : vf[v]) {
        const auto fs = static_cast<std::size_t>(f);
        delta += n[fs] * n[fs].dot(geo[fs].centroid - out.vertices[v]);
      }
      next[v] = out.vertices[v] + delta / static_cast<double>(vf[v].size());
    }
    out.vertices = std::move(next);
  }
  return out;
}

}  // namespace broncho
