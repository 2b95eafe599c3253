#include "broncho/morphometry.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "broncho/errors.hpp"

namespace broncho {

std::vector<Airway> collect_airways(const AirwayTree& tree) {
  const auto horsfield = compute_horsfield_orders(tree);
  const auto strahler = compute_strahler_orders(tree);
  std::vector<Airway> airways;
  std::vector<int> airway_of(tree.branch_count(), -1);

  for (int start : tree.topological_order()) {
    const int p = tree.parent(start);
    if (p >= 0 && tree.children(p).size() < 2) continue;  // interior of a chain

    Airway a;
    a.parent = p >= 0 ? airway_of[static_cast<std::size_t>(p)] : -1;
    const Branch& first = tree.branch(start);
    a.generation = first.generation;
    a.horsfield = horsfield[static_cast<std::size_t>(start)];
    a.strahler = strahler[static_cast<std::size_t>(start)];
    if (p >= 0) a.angle_deg = branching_angle(tree.branch(p).direction, first.direction);

    double weighted_d = 0.0;
    bool all_d = true;
    int seg = start;
    while (true) {
      const Branch& b = tree.branch(seg);
      a.segments.push_back(seg);
      airway_of[static_cast<std::size_t>(seg)] = static_cast<int>(airways.size());
      a.length += b.length;
      if (b.diameter) weighted_d += *b.diameter * b.length;
      else all_d = false;
      const auto& kids = tree.children(seg);
      if (kids.size() != 1) break;
      seg = kids.front();
    }
    if (all_d) a.diameter = weighted_d / a.length;
    airways.push_back(std::move(a));
  }
  return airways;
}

namespace {

std::vector<OrderRow> group_by(const std::vector<Airway>& airways, int Airway::*key) {
  struct Acc {
    int count = 0;
    double length = 0.0;
    double diameter = 0.0;
    bool all_d = true;
  };
  std::map<int, Acc> acc;
  for (const auto& a : airways) {
    Acc& x = acc[a.*key];
    ++x.count;
    x.length += a.length;
    if (a.diameter) x.diameter += *a.diameter;
    else x.all_d = false;
  }
  std::vector<OrderRow> rows;
  for (const auto& [k, x] : acc) {
    OrderRow r;
    r.key = k;
    r.count = x.count;
    r.mean_length = x.length / x.count;
    if (x.all_d) r.mean_diameter = x.diameter / x.count;
    rows.push_back(r);
  }
  return rows;
}

double ratio_over(const std::vector<OrderRow>& rows, double (*value)(const OrderRow&)) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.key);
    y.push_back(value(r));
  }
  return log_regression_ratio(x, y);
}

std::optional<double> diameter_ratio(const std::vector<OrderRow>& rows) {
  for (const auto& r : rows)
    if (!r.mean_diameter) return std::nullopt;
  return ratio_over(rows, [](const OrderRow& r) { return *r.mean_diameter; });
}

}  // namespace

MorphometryTables tabulate_morphometry(const AirwayTree& tree) {
  const auto airways = collect_airways(tree);
  MorphometryTables t;
  t.horsfield = group_by(airways, &Airway::horsfield);
  t.strahler = group_by(airways, &Airway::strahler);
  t.generation = group_by(airways, &Airway::generation);
  t.airway_count = static_cast<int>(airways.size());
  for (const auto& a : airways) {
    if (a.angle_deg) t.branching_angles_deg.push_back(*a.angle_deg);
    if (a.parent >= 0 && a.diameter && airways[static_cast<std::size_t>(a.parent)].diameter)
      t.diameter_child_parent_ratios.push_back(*a.diameter /
                                               *airways[static_cast<std::size_t>(a.parent)].diameter);
  }
  t.terminal_count = static_cast<int>(tree.terminal_branches().size());
  return t;
}

double log_regression_ratio(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("regression inputs differ in length");
  std::map<double, int> distinct;
  for (double v : x) ++distinct[v];
  if (distinct.size() < 2) throw DomainError("ratio undefined: fewer than two distinct orders");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0)) throw DomainError("ratio undefined: non-positive value in log regression");
    mx += x[i];
    my += std::log10(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (std::log10(y[i]) - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return std::pow(10.0, std::abs(sxy / sxx));
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

MorphometrySummary morphometry_summary(const AirwayTree& tree) {
  MorphometrySummary s;
  s.tables = tabulate_morphometry(tree);
  const auto& t = s.tables;
  if (t.horsfield.size() < 2) throw DomainError("ratio undefined: fewer than two distinct orders");

  auto count = [](const OrderRow& r) { return static_cast<double>(r.count); };
  auto length = [](const OrderRow& r) { return r.mean_length; };
  s.rb_h = ratio_over(t.horsfield, count);
  s.rb_s = ratio_over(t.strahler, count);
  s.rl_h = ratio_over(t.horsfield, length);
  s.rl_s = ratio_over(t.strahler, length);
  s.rd_h = diameter_ratio(t.horsfield);
  s.rd_s = diameter_ratio(t.strahler);
  if (!t.branching_angles_deg.empty()) {
    auto [m, sd] = mean_and_std(t.branching_angles_deg);
    s.mean_angle_deg = m;
    s.std_angle_deg = sd;
  }
  if (!t.diameter_child_parent_ratios.empty()) {
    auto [m, sd] = mean_and_std(t.diameter_child_parent_ratios);
    s.diameter_decline = m;
    s.diameter_decline_std = sd;
  }
  s.terminal_count = t.terminal_count;
  return s;
}

}  // namespace broncho
