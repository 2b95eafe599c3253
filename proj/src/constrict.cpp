#include "broncho/constrict.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "broncho/errors.hpp"

namespace broncho {

ContractionState init_contraction_state(const TriMesh& mesh, double k) {
  if (!(k > 0.0)) throw InputError("contraction constant k must be positive");
  if (mesh.faces.empty()) throw InputError("contraction of an empty mesh");
  double area = 0.0;
  for (const auto& g : all_face_geometry(mesh)) area += g.area;
  area /= static_cast<double>(mesh.faces.size());

  ContractionState s;
  s.vertices = mesh.vertices;
  s.anchors = mesh.vertices;
  s.w_l.assign(mesh.vertices.size(), k * std::sqrt(area));
  s.w_h.assign(mesh.vertices.size(), 1.0);
  s.w_h0 = s.w_h;
  s.area0 = one_ring_areas(mesh, mesh.vertices);
  s.laplacian = cotangent_laplacian(mesh, mesh.vertices);
  return s;
}

namespace {

std::vector<Vec3> solve_scaled(const ContractionState& state, const std::vector<bool>& free_vertex, double w_l_scale) {
  const std::size_t n = state.vertices.size();
  if (free_vertex.size() != n || state.w_l.size() != n || state.w_h.size() != n)
    throw InputError("contraction state does not match the mesh");
  std::vector<int> local(n, -1);
  int m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (free_vertex[i]) local[i] = m++;
  if (m == 0) throw DomainError("contraction region has no free vertices");

  // Rows of L for free vertices, split into free columns (A) and fixed ones (folded into b).
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, 3);
  Eigen::MatrixXd anchor(m, 3);
  Eigen::VectorXd wh2(m);
  const SparseMatrix& L = state.laplacian;  // symmetric: column j holds row j
  for (std::size_t j = 0; j < n; ++j) {
    const int row = local[j];
    if (row < 0) continue;
    const double w = state.w_l[j] * w_l_scale;
    for (SparseMatrix::InnerIterator it(L, static_cast<Eigen::Index>(j)); it; ++it) {
      const auto col = static_cast<std::size_t>(it.row());
      if (local[col] >= 0) trips.emplace_back(row, local[col], w * it.value());
      else b.row(row) -= w * it.value() * state.vertices[col].transpose();
    }
    anchor.row(row) = state.anchors[j].transpose();
    wh2(row) = state.w_h[j] * state.w_h[j];
  }
  SparseMatrix A(m, m);
  A.setFromTriplets(trips.begin(), trips.end());
  SparseMatrix M = SparseMatrix(A.transpose()) * A;
  for (int i = 0; i < m; ++i) M.coeffRef(i, i) += wh2(i);
  const Eigen::MatrixXd rhs = A.transpose() * b + wh2.asDiagonal() * anchor;

  Eigen::SimplicialLDLT<SparseMatrix> solver(M);
  if (solver.info() != Eigen::Success) {
    const Eigen::VectorXd d = M.diagonal();
    throw NumericalError("contraction normal equations are singular (diagonal range " +
                         std::to_string(d.minCoeff()) + " .. " + std::to_string(d.maxCoeff()) + ")");
  }
  const Eigen::MatrixXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success || !x.allFinite()) throw NumericalError("contraction solve failed");

  std::vector<Vec3> out = state.vertices;
  for (std::size_t j = 0; j < n; ++j)
    if (local[j] >= 0) out[j] = x.row(local[j]).transpose();
  return out;
}

}  // namespace

std::vector<Vec3> solve_contraction(const TriMesh&, const ContractionState& state,
                                    const std::vector<bool>& free_vertex) {
  return solve_scaled(state, free_vertex, 1.0);
}

void commit_contraction(const TriMesh& mesh, ContractionState& state, std::vector<Vec3> positions,
                        double contraction_scale) {
  state.vertices = std::move(positions);
  state.anchors = state.vertices;
  for (double& w : state.w_l) w *= contraction_scale;
  const auto area = one_ring_areas(mesh, state.vertices);
  for (std::size_t i = 0; i < area.size(); ++i)
    if (area[i] > 0.0) state.w_h[i] = state.w_h0[i] * std::sqrt(state.area0[i] / area[i]);
  state.laplacian = cotangent_laplacian(mesh, state.vertices);
  ++state.iteration;
}

void contract_step(const TriMesh& mesh, ContractionState& state, const std::vector<bool>& free_vertex,
                   double contraction_scale) {
  commit_contraction(mesh, state, solve_contraction(mesh, state, free_vertex), contraction_scale);
}

double narrowing_ratio(const std::vector<double>& sdf_current, const std::vector<double>& sdf_initial) {
  if (sdf_current.size() != sdf_initial.size()) throw InputError("SDF arrays differ in length");
  const double s0 = std::accumulate(sdf_initial.begin(), sdf_initial.end(), 0.0);
  if (!(s0 != 0.0)) throw DomainError("initial SDF sum is zero");
  return std::accumulate(sdf_current.begin(), sdf_current.end(), 0.0) / s0;
}

void ConstrictionConfig::validate() const {
  if (!(target_ratio > 0.0 && target_ratio < 1.0)) throw InputError("target ratio must be in (0, 1)");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (max_iterations < 1) throw InputError("max iterations must be at least 1");
  if (!(contraction_scale > 0.0)) throw InputError("contraction scale must be positive");
  if (!(init_constant > 0.0)) throw InputError("init constant must be positive");
  if (!(omega > 0.0)) throw InputError("omega must be positive");
  if (taubin_iterations < 0) throw InputError("taubin iterations must be non-negative");
  sdf.validate();
}

std::vector<int> select_region_faces(const TriMesh& mesh, const std::set<int>& branches) {
  if (mesh.face_branch.size() != mesh.faces.size()) throw InputError("mesh has no per-face branch labels");
  std::vector<int> out;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    if (branches.count(mesh.face_branch[f])) out.push_back(static_cast<int>(f));
  return out;
}

ConstrictionResult simulate_bronchoconstriction(const TriMesh& mesh, const ConstrictionConfig& config) {
  config.validate();
  validate_mesh(mesh);
  ConstrictionResult result;
  result.region_faces = select_region_faces(mesh, config.region_branches);
  const auto& region = result.region_faces;
  if (region.empty()) throw DomainError("region selector matches no faces");

  const std::size_t nv = mesh.vertices.size();
  const auto vf = vertex_faces(mesh);
  std::vector<bool> in_region(mesh.faces.size(), false);
  for (int f : region) in_region[static_cast<std::size_t>(f)] = true;
  auto interior_of = [&](const std::vector<bool>& face_set) {
    std::vector<bool> out(nv, false);
    for (std::size_t v = 0; v < nv; ++v) {
      if (vf[v].empty()) continue;
      out[v] = std::all_of(vf[v].begin(), vf[v].end(), [&](int f) { return face_set[static_cast<std::size_t>(f)]; });
    }
    return out;
  };
  const std::vector<bool> free_vertex = interior_of(in_region);
  if (std::none_of(free_vertex.begin(), free_vertex.end(), [](bool b) { return b; }))
    throw DomainError("region has no interior vertices to move");

  const double edge = mean_edge_length(mesh);
  const std::vector<double> sdf0 = compute_sdf(mesh, config.sdf, &region);
  TriMesh work = mesh;
  auto ratio_of = [&](const std::vector<Vec3>& positions) {
    work.vertices = positions;
    return narrowing_ratio(compute_sdf(work, config.sdf, &region), sdf0);
  };
  auto max_move = [&](const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < nv; ++i) m = std::max(m, (a[i] - b[i]).norm());
    return m;
  };

  const double lo_band = config.target_ratio - config.tolerance;
  const double hi_band = config.target_ratio + config.tolerance;
  ContractionState state = init_contraction_state(mesh, config.init_constant);
  double ratio = 1.0;
  result.history.push_back(ratio);
  int rises = 0;
  for (int it = 1; it <= config.max_iterations && ratio > hi_band; ++it) {
    std::vector<Vec3> pos = solve_scaled(state, free_vertex, 1.0);
    double trial = ratio;
    for (int esc = 0;; ++esc) {
      const bool moved = max_move(pos, state.vertices) >= 0.01 * edge;
      if (moved) trial = ratio_of(pos);
      if ((moved && trial < ratio) || esc >= config.max_warmup_escalations) break;
      for (double& w : state.w_l) w *= config.contraction_scale;
      pos = solve_scaled(state, free_vertex, 1.0);
    }
    if (max_move(pos, state.vertices) < 0.01 * edge) trial = ratio_of(pos);

    if (trial < lo_band) {
      double lo = 1e-3, hi = 1.0;
      std::optional<std::pair<double, std::vector<Vec3>>> accepted;
      double accepted_scale = 1.0;
      for (int k = 0; k < config.overshoot_bisections; ++k) {
        const double mid = std::sqrt(lo * hi);
        auto p = solve_scaled(state, free_vertex, mid);
        const double r = ratio_of(p);
        if (r < lo_band) {
          hi = mid;
        } else {
          lo = mid;
          accepted.emplace(r, std::move(p));
          accepted_scale = mid;
          if (r <= hi_band) break;
        }
      }
      if (accepted) {
        for (double& w : state.w_l) w *= accepted_scale;
        trial = accepted->first;
        pos = std::move(accepted->second);
      }
    }

    rises = trial > ratio ? rises + 1 : 0;
    if (rises >= 3) throw NumericalError("contraction diverges: narrowing ratio rose three iterations in a row");
    commit_contraction(mesh, state, std::move(pos), config.contraction_scale * config.omega);
    ratio = trial;
    result.history.push_back(ratio);
  }

  // Seam band: region faces plus the faces sharing a vertex with them.
  std::vector<bool> in_band = in_region;
  for (int f : region)
    for (int v : mesh.faces[static_cast<std::size_t>(f)])
      for (int g : vf[static_cast<std::size_t>(v)]) in_band[static_cast<std::size_t>(g)] = true;
  result.band_vertex = interior_of(in_band);

  TriMesh out = mesh;
  out.vertices = state.vertices;
  out = taubin_smooth(out, config.taubin_lambda, config.taubin_mu, config.taubin_iterations, &result.band_vertex);
  if (config.bilateral) out = bilateral_normal_filter(out, config.bilateral_config, &result.band_vertex);

  const std::vector<double> sdf_final = compute_sdf(out, config.sdf, &region);
  result.final_ratio = narrowing_ratio(sdf_final, sdf0);
  out.face_sdf.assign(out.faces.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < region.size(); ++i) out.face_sdf[static_cast<std::size_t>(region[i])] = sdf_final[i];
  result.mesh = std::move(out);
  return result;
}

}  // namespace broncho
