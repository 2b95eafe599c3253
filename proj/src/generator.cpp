#include "broncho/generator.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <algorithm>

#include "broncho/errors.hpp"
#include "broncho/rng.hpp"

namespace broncho {

void GeneratorConfig::validate() const {
  if (n_points < 1) throw InputError("n_points must be at least 1");
  if (!(branch_fraction > 0.0 && branch_fraction < 1.0)) throw InputError("branch_fraction must be in (0, 1)");
  if (!(terminal_length_mm > 0.0)) throw InputError("terminal_length_mm must be positive");
  if (!(angle_limit_deg > 0.0 && angle_limit_deg <= 90.0)) throw InputError("angle_limit_deg must be in (0, 90]");
  if (max_generations < 0 || max_generations > 60) throw InputError("max_generations must be in [0, 60]");
}

Vec3 center_of_mass(std::span<const Vec3> points) {
  if (points.empty()) throw InputError("center of mass of an empty point set");
  Vec3 sum = Vec3::Zero();
  for (const auto& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

SplitPlane pca_split_plane(std::span<const Vec3> points, const Vec3& distal_direction) {
  if (!(distal_direction.norm() > 0.0)) throw InputError("distal direction has zero length");
  const Vec3 d = distal_direction.normalized();
  const Vec3 c = center_of_mass(points);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  double scale2 = 0.0;
  for (const auto& p : points) {
    const Vec3 q = p - c;
    cov += q * q.transpose();
    scale2 += p.squaredNorm();
  }
  const double n = static_cast<double>(points.size());
  cov /= n;
  scale2 /= n;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d lambda = eig.eigenvalues();  // ascending
  if (!(lambda(2) > 1e-20 * std::max(1.0, scale2)) || lambda(2) < 1e-12 * cov.trace())
    throw DomainError("degenerate point spread for splitting plane");

  Vec3 u = eig.eigenvectors().col(2);
  if (d.cross(u).norm() < 1e-6) u = eig.eigenvectors().col(1);
  Vec3 normal = d.cross(d.cross(u));
  if (!(normal.norm() > 1e-12)) throw DomainError("splitting plane normal is undefined");
  normal.normalize();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(normal[a]) > 1e-12) {
      if (normal[a] < 0.0) normal = -normal;
      break;
    }
  }
  return {c, normal};
}

std::pair<std::vector<Vec3>, std::vector<Vec3>> split_points(std::span<const Vec3> points,
                                                             const SplitPlane& plane) {
  std::pair<std::vector<Vec3>, std::vector<Vec3>> out;
  for (const auto& p : points) {
    if ((p - plane.point).dot(plane.normal) >= 0.0) out.first.push_back(p);
    else out.second.push_back(p);
  }
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::span<const Vec3> points, std::span<const std::size_t> subset, const SplitPlane& plane) {
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t i : subset) {
    if ((points[i] - plane.point).dot(plane.normal) >= 0.0) out.first.push_back(i);
    else out.second.push_back(i);
  }
  return out;
}

Vec3 grow_branch(const Vec3& seed_endpoint, const Vec3& parent_direction, const Vec3& target_centroid,
                 const GeneratorConfig& config) {
  const Vec3 v = config.branch_fraction * (target_centroid - seed_endpoint);
  const double len = v.norm();
  if (!(len > 0.0)) throw InputError("grow_branch: candidate branch has zero length");
  if (!(parent_direction.norm() > 0.0)) throw InputError("grow_branch: parent direction has zero length");
  const Vec3 p = parent_direction.normalized();
  const Vec3 dir = v / len;
  const double limit = deg_to_rad(config.angle_limit_deg);
  const double angle = std::acos(std::clamp(dir.dot(p), -1.0, 1.0));
  if (angle <= limit) return seed_endpoint + v;

  // Rotate within the plane spanned by p and dir until the angle equals the limit.
  Vec3 w = dir - dir.dot(p) * p;
  w = w.norm() > 1e-12 ? Vec3(w.normalized()) : any_perpendicular(p);
  const Vec3 clamped = std::cos(limit) * p + std::sin(limit) * w;
  return seed_endpoint + len * clamped;
}

namespace {

/// Largest point on [from, to] inside the volume, searched by bisection.
std::optional<Vec3> shrink_into(const LungVolume& volume, const Vec3& from, const Vec3& to) {
  if (volume.contains(to)) return to;
  if (!volume.contains(from)) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (volume.contains(from + mid * (to - from))) lo = mid;
    else hi = mid;
  }
  return from + lo * (to - from);
}

struct Growth {
  std::vector<Node> nodes;
  std::vector<EdgeSpec> edges;
  std::vector<Vec3> direction;
  std::vector<int> parent;
  std::vector<std::size_t> node_of_head;  // index into nodes
  std::vector<std::vector<std::size_t>> points;
  std::vector<TerminalReason> reason;
};

}  // namespace

GenerationResult generate(const AirwayTree& seed_tree, const LungVolume& volume, const GeneratorConfig& config) {
  config.validate();
  if (seed_tree.branch_count() == 0) throw InputError("seed tree has no branches");

  Growth g;
  std::unordered_map<NodeId, std::size_t> node_index;
  NodeId next_id = 0;
  for (const auto& n : seed_tree.nodes()) {
    node_index.emplace(n.id, g.nodes.size());
    g.nodes.push_back(n);
    next_id = std::max(next_id, n.id + 1);
  }
  for (const auto& b : seed_tree.branches()) {
    g.edges.push_back({b.tail, b.head});
    g.direction.push_back(b.direction);
    g.parent.push_back(seed_tree.parent(b.id));
    g.node_of_head.push_back(node_index.at(b.head));
    g.reason.push_back(TerminalReason::Seed);
  }
  const std::size_t seed_count = g.edges.size();
  g.points.resize(seed_count);

  std::vector<int> distal;
  for (int b : seed_tree.terminal_branches())
    if (volume.contains(seed_tree.position(seed_tree.branch(b).head))) distal.push_back(b);
  if (distal.empty()) throw DomainError("no distal seed branch ends inside the volume");

  const std::vector<Vec3> points =
      sample_uniform(volume, config.n_points, config.rng_seed + seed_offset::kVolumeSampling);
  for (std::size_t i = 0; i < points.size(); ++i) {
    int best = -1;
    double best_d = 0.0;
    for (int b : distal) {
      const Branch& br = seed_tree.branch(b);
      const double dist = point_segment_distance(points[i], seed_tree.position(br.tail), seed_tree.position(br.head));
      if (best < 0 || dist < best_d) {
        best = b;
        best_d = dist;
      }
    }
    g.points[static_cast<std::size_t>(best)].push_back(i);
  }

  const double cap = std::ldexp(1.0, config.max_generations + 1);
  double leaf_count = static_cast<double>(seed_tree.terminal_branches().size());
  std::size_t bifurcations = 0;

  std::deque<int> queue(distal.begin(), distal.end());
  while (!queue.empty()) {
    const int b = queue.front();
    queue.pop_front();
    const auto bi = static_cast<std::size_t>(b);
    std::vector<std::size_t> mine = std::move(g.points[bi]);
    g.points[bi].clear();

    if (mine.size() <= config.min_points_per_region) {
      g.reason[bi] = TerminalReason::Points;
      continue;
    }
    if (leaf_count >= cap) {
      g.reason[bi] = TerminalReason::BifurcationCap;
      continue;
    }

    std::vector<Vec3> subset_points;
    subset_points.reserve(mine.size());
    for (std::size_t i : mine) subset_points.push_back(points[i]);
    SplitPlane plane;
    try {
      plane = pca_split_plane(subset_points, g.direction[bi]);
    } catch (const DomainError&) {
      g.reason[bi] = TerminalReason::Degenerate;
      continue;
    }
    auto halves = split_indices(points, mine, plane);

    int grown = 0;
    for (auto* half : {&halves.first, &halves.second}) {
      if (half->empty()) continue;
      Vec3 centroid = Vec3::Zero();
      for (std::size_t i : *half) centroid += points[i];
      centroid /= static_cast<double>(half->size());
      const Vec3 head = g.nodes[g.node_of_head[bi]].position;
      if (!((centroid - head).norm() > 1e-9)) continue;

      const auto end = shrink_into(volume, head, grow_branch(head, g.direction[bi], centroid, config));
      if (!end) continue;
      const double length = (*end - head).norm();
      if (!(length > 1e-9)) continue;

      const int child = static_cast<int>(g.edges.size());
      g.node_of_head.push_back(g.nodes.size());
      g.nodes.push_back({next_id, *end});
      g.edges.push_back({g.nodes[g.node_of_head[bi]].id, next_id});
      ++next_id;
      g.direction.push_back((*end - head) / length);
      g.parent.push_back(b);
      g.points.emplace_back();
      if (length <= config.terminal_length_mm) {
        g.reason.push_back(TerminalReason::Length);
      } else {
        g.reason.push_back(TerminalReason::Points);  // provisional; set when expanded
        g.points[static_cast<std::size_t>(child)] = std::move(*half);
        queue.push_back(child);
      }
      ++grown;
    }
    if (grown == 0) g.reason[bi] = TerminalReason::Degenerate;
    if (grown >= 2) ++bifurcations;
    if (grown >= 1) leaf_count += grown - 1;
  }

  // Remove generated branches still outside the volume, with their subtrees.
  std::vector<bool> keep(g.edges.size(), true);
  for (std::size_t b = seed_count; b < g.edges.size(); ++b) {
    const int p = g.parent[b];
    if ((p >= 0 && !keep[static_cast<std::size_t>(p)]) || !volume.contains(g.nodes[g.node_of_head[b]].position))
      keep[b] = false;
  }

  std::vector<EdgeSpec> edges;
  std::vector<TerminalReason> reasons;
  std::vector<bool> node_used(g.nodes.size(), false);
  node_used[node_index.at(seed_tree.root())] = true;
  for (std::size_t b = 0; b < g.edges.size(); ++b) {
    if (!keep[b]) continue;
    edges.push_back(g.edges[b]);
    reasons.push_back(g.reason[b]);
    node_used[g.node_of_head[b]] = true;
  }
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (node_used[i]) nodes.push_back(g.nodes[i]);

  GenerationResult result{build_tree(nodes, edges, seed_tree.root()), std::move(reasons), seed_count, bifurcations};
  return result;
}

AirwayTree two_lung_seed_tree() {
  const std::vector<Node> nodes = {
      {0, Vec3(0.0, 0.0, 180.0)},
      {1, Vec3(0.0, 0.0, 70.0)},
      {2, Vec3(-40.0, 0.0, 40.0)},
      {3, Vec3(40.0, 0.0, 40.0)},
  };
  const std::vector<EdgeSpec> edges = {{0, 1}, {1, 2}, {1, 3}};
  return build_tree(nodes, edges, 0);
}

}  // namespace broncho
