#pragma once

#include <set>
#include <vector>

#include "broncho/laplacian.hpp"
#include "broncho/sdf.hpp"
#include "broncho/smoothing.hpp"
#include "broncho/tri_mesh.hpp"

namespace broncho {

struct ContractionState {
  std::vector<Vec3> vertices;  // V
  std::vector<Vec3> anchors;   // V_a, the previous iterate
  std::vector<double> w_l;     // contraction weights
  std::vector<double> w_h;     // attraction weights
  std::vector<double> w_h0;
  std::vector<double> area0;   // initial one-ring areas
  SparseMatrix laplacian;
  int iteration = 0;
};

/// W_L = k * sqrt(mean face area), W_H = 1, L from the mesh geometry.
ContractionState init_contraction_state(const TriMesh& mesh, double k);

/// Solves min ||W_L L V'||^2 + ||W_H (V' - V_a)||^2 over the free vertices
/// (Laplacian rows of free vertices only; every other vertex is held at its
/// current position) through the normal equations. Returns the new positions
/// of all vertices; the state is not modified. Throws NumericalError when
/// the factorisation fails.
std::vector<Vec3> solve_contraction(const TriMesh& mesh, const ContractionState& state,
                                    const std::vector<bool>& free_vertex);

/// solve_contraction, then V_a = V = V', W_L *= s_L, W_H,i = W_H0,i sqrt(A0_i / A_i),
/// and L rebuilt on the new geometry.
void contract_step(const TriMesh& mesh, ContractionState& state, const std::vector<bool>& free_vertex,
                   double contraction_scale);

/// Commits already solved positions (the update half of contract_step).
void commit_contraction(const TriMesh& mesh, ContractionState& state, std::vector<Vec3> positions,
                        double contraction_scale);

/// sum(current) / sum(initial).
double narrowing_ratio(const std::vector<double>& sdf_current, const std::vector<double>& sdf_initial);

struct ConstrictionConfig {
  double target_ratio = 0.5;
  double tolerance = 0.05;
  int max_iterations = 8;
  double contraction_scale = 2.0;
  double init_constant = 1e-3;
  double omega = 1.0;  // optional multiplier on contraction_scale; 1 leaves it inactive
  std::set<int> region_branches;
  SdfConfig sdf;
  double taubin_lambda = kTaubinLambda;
  double taubin_mu = kTaubinMu;
  int taubin_iterations = 10;
  bool bilateral = false;
  BilateralConfig bilateral_config;
  /// Cap on weight escalations while no vertex moves appreciably.
  int max_warmup_escalations = 64;
  /// Log-space bisection steps used to avoid overshooting target - tolerance.
  int overshoot_bisections = 12;

  void validate() const;
};

struct ConstrictionResult {
  TriMesh mesh;                  // face_sdf: final SDF on region faces, NaN elsewhere
  std::vector<double> history;   // ratio after each iteration, history[0] = 1
  double final_ratio = 1.0;      // after seam smoothing
  std::vector<int> region_faces;
  std::vector<bool> band_vertex;  // vertices allowed to move during seam smoothing
};

/// Faces whose branch label is in `branches`.
std::vector<int> select_region_faces(const TriMesh& mesh, const std::set<int>& branches);

/// Contracts the labelled region until the SDF narrowing ratio reaches
/// target + tolerance or max_iterations pass, then smooths the seam band
/// (region faces plus one ring of adjacent faces).
///
/// W_L grows by s_L without committing while a trial solve moves no free
/// vertex by 1% of the mean edge length or does not lower the ratio. A trial
/// that would overshoot target - tolerance is retried with a smaller W_L
/// found by log-space bisection. Throws DomainError when the selector matches nothing and
/// NumericalError when the ratio rises three iterations in a row.
ConstrictionResult simulate_bronchoconstriction(const TriMesh& mesh, const ConstrictionConfig& config);

}  // namespace broncho
