#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "broncho/airway_tree.hpp"
#include "broncho/cli.hpp"
#include "broncho/constrict.hpp"
#include "broncho/diameters.hpp"
#include "broncho/errors.hpp"
#include "broncho/generator.hpp"
#include "broncho/morphometry.hpp"
#include "broncho/obj_io.hpp"
#include "broncho/prob_map.hpp"
#include "broncho/skeleton_io.hpp"
#include "broncho/text_io.hpp"
#include "broncho/tube_mesh.hpp"
#include "broncho/volume_io.hpp"

namespace broncho {

namespace {

namespace fs = std::filesystem;

fs::path with_suffix(const std::string& prefix, const std::string& suffix) { return fs::path(prefix + suffix); }

DiameterMode parse_mode(const std::string& s) {
  if (s == "power_law" || s == "power-law") return DiameterMode::PowerLaw;
  if (s == "flow_split" || s == "flow-split") return DiameterMode::FlowSplit;
  throw InputError("unknown diameter mode '" + s + "'");
}

AirwayTree load_tree(const std::string& skeleton, const std::string& diameters) {
  AirwayTree tree = skeleton_to_tree(read_skeleton(skeleton));
  if (!diameters.empty()) tree = read_branch_diameters(tree, diameters);
  return tree;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string seed_tree, volume, phantom, out;
  GeneratorConfig gen;
  double d0 = 18.0, exponent = 3.0;
  std::string mode = "power_law";
  std::optional<int> prune_generation;
};

void cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.volume.empty() == a.phantom.empty()) throw InputError("generate needs exactly one of --volume or --phantom");
  if (!a.phantom.empty() && a.phantom != "two-ellipsoids") throw InputError("unknown phantom '" + a.phantom + "'");
  if (!a.volume.empty() && a.seed_tree.empty()) throw InputError("--volume requires --seed-tree");

  const AirwayTree seed = a.seed_tree.empty() ? two_lung_seed_tree() : load_tree(a.seed_tree, "");
  const LungVolume volume = a.volume.empty() ? two_ellipsoid_phantom() : LungVolume(read_mask(a.volume));
  const GenerationResult result = generate(seed, volume, a.gen);
  AirwayTree tree = assign_diameters(result.tree, {a.d0, a.exponent, parse_mode(a.mode)});
  if (a.prune_generation) tree = prune_to_generation(tree, *a.prune_generation);

  write_skeleton(tree, with_suffix(a.out, ".skel"));
  write_branch_attributes(tree, with_suffix(a.out, "_branches.csv"));
  out << "branches " << tree.branch_count() << " terminals " << tree.terminal_branches().size() << "\n";
}

// ---- morphometry ----------------------------------------------------------

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string order_table(const std::vector<OrderRow>& rows, const std::string& key) {
  std::string s = key + ",count,mean_diameter_mm,mean_length_mm\n";
  for (const auto& r : rows)
    s += std::to_string(r.key) + "," + std::to_string(r.count) + "," + opt_number(r.mean_diameter) + "," +
         format_number(r.mean_length) + "\n";
  return s;
}

void cmd_morphometry(const std::string& tree_path, const std::string& diameters, const std::string& prefix,
                     std::ostream& out, std::ostream& err) {
  const AirwayTree tree = load_tree(tree_path, diameters);
  const MorphometryTables t = tabulate_morphometry(tree);
  write_text_file(with_suffix(prefix, "_horsfield.csv"), order_table(t.horsfield, "order"));
  write_text_file(with_suffix(prefix, "_strahler.csv"), order_table(t.strahler, "order"));
  write_text_file(with_suffix(prefix, "_generation.csv"), order_table(t.generation, "generation"));

  std::string summary =
      "rb_h,rb_s,rl_h,rl_s,rd_h,rd_s,mean_angle_deg,std_angle_deg,diameter_decline,diameter_decline_std,"
      "terminal_count,airway_count\n";
  std::optional<MorphometrySummary> s;
  try {
    s = morphometry_summary(tree);
  } catch (const DomainError& e) {
    err << "warning: " << e.what() << "; ratio fields left empty\n";
  }
  if (s) {
    summary += format_number(s->rb_h) + "," + format_number(s->rb_s) + "," + format_number(s->rl_h) + "," +
               format_number(s->rl_s) + "," + opt_number(s->rd_h) + "," + opt_number(s->rd_s) + "," +
               opt_number(s->mean_angle_deg) + "," + opt_number(s->std_angle_deg) + "," +
               opt_number(s->diameter_decline) + "," + opt_number(s->diameter_decline_std) + ",";
  } else {
    summary += ",,,,,,,,,,";
  }
  summary += std::to_string(t.terminal_count) + "," + std::to_string(t.airway_count) + "\n";
  write_text_file(with_suffix(prefix, "_summary.csv"), summary);
  out << "airways " << t.airway_count << " terminals " << t.terminal_count << "\n";
}

// ---- probmap --------------------------------------------------------------

struct ProbmapArgs {
  std::string tree, out, grid_like;
  int generation = 0;
  double sigma = 1.0;
  std::vector<int> dims;
  std::vector<double> spacing, origin;
  double margin = 5.0;  // in sigmas, for the automatic grid
};

void cmd_probmap(const ProbmapArgs& a, std::ostream& out) {
  const AirwayTree tree = load_tree(a.tree, "");
  VoxelGrid grid;
  if (!a.grid_like.empty()) {
    grid = read_volume_header(a.grid_like).grid;
  } else {
    const double s = a.spacing.empty() ? 1.0 : a.spacing[0];
    if (!a.spacing.empty()) grid.spacing = Vec3(a.spacing[0], a.spacing[1], a.spacing[2]);
    else grid.spacing = Vec3::Constant(s);
    if (!a.dims.empty() != !a.origin.empty()) throw InputError("--dims and --origin go together");
    if (!a.dims.empty()) {
      grid.dims = {a.dims[0], a.dims[1], a.dims[2]};
      grid.origin = Vec3(a.origin[0], a.origin[1], a.origin[2]);
    } else {
      Aabb box;
      for (const auto& n : tree.nodes()) box.extend(n.position);
      const Vec3 pad = Vec3::Constant(a.margin * a.sigma);
      grid.origin = box.lo - pad;
      for (int ax = 0; ax < 3; ++ax)
        grid.dims[ax] = std::max(1, static_cast<int>(std::ceil((box.hi[ax] - box.lo[ax] + 2.0 * pad[ax]) / grid.spacing[ax])));
    }
  }
  const ProbabilityVolume vol = generation_probability_map(tree, a.generation, grid, a.sigma);
  export_volume(vol, a.out);
  float peak = 0.0f;
  for (float v : vol.values) peak = std::max(peak, v);
  out << "voxels " << vol.values.size() << " max " << format_number(peak) << "\n";
}

// ---- mesh -----------------------------------------------------------------

struct MeshArgs {
  std::string tree, diameters, out;
  int segments = 16;
  double d0 = 18.0, exponent = 3.0;
  std::string mode = "power_law";
};

void cmd_mesh(const MeshArgs& a, std::ostream& out) {
  if (a.segments < 6) throw InputError("--segments must be at least 6");
  AirwayTree tree = load_tree(a.tree, a.diameters);
  if (!tree.has_all_diameters()) tree = assign_diameters(tree, {a.d0, a.exponent, parse_mode(a.mode)});
  const TriMesh mesh = synthesize_tube_mesh(tree, a.segments);
  if (!is_closed(mesh) || euler_characteristic(mesh) != 2L * connected_components(mesh))
    throw NumericalError("tube mesh failed the closed-surface check");
  write_obj(mesh, with_suffix(a.out, ".obj"));
  write_face_attributes(mesh, with_suffix(a.out, "_faces.csv"));
  out << "vertices " << mesh.vertex_count() << " faces " << mesh.face_count() << "\n";
}

// ---- constrict ------------------------------------------------------------

struct ConstrictArgs {
  std::string mesh, faces, tree, out;
  std::vector<int> branch_ids;
  std::optional<int> generation;
  ConstrictionConfig cfg;
};

void cmd_constrict(ConstrictArgs a, std::ostream& out) {
  TriMesh mesh = read_obj(a.mesh);
  if (!a.faces.empty()) read_face_attributes(mesh, a.faces);
  else mesh.face_branch.assign(mesh.faces.size(), 0);

  std::set<int> region(a.branch_ids.begin(), a.branch_ids.end());
  if (a.generation) {
    if (a.tree.empty()) throw InputError("--generation requires --tree");
    const AirwayTree tree = load_tree(a.tree, "");
    for (const auto& b : tree.branches())
      if (b.generation == *a.generation) region.insert(b.id);
    if (region.empty()) throw DomainError("no branch of generation " + std::to_string(*a.generation));
  }
  if (a.branch_ids.empty() && !a.generation) region.insert(mesh.face_branch.begin(), mesh.face_branch.end());
  a.cfg.region_branches = region;

  const ConstrictionResult r = simulate_bronchoconstriction(mesh, a.cfg);
  write_obj(r.mesh, with_suffix(a.out, ".obj"));
  std::string hist = "iteration,ratio\n";
  for (std::size_t i = 0; i < r.history.size(); ++i) hist += std::to_string(i) + "," + format_number(r.history[i]) + "\n";
  write_text_file(with_suffix(a.out, "_history.csv"), hist);
  write_face_attributes(r.mesh, with_suffix(a.out, "_faces.csv"));
  out << "iterations " << r.history.size() - 1 << " ratio " << format_number(r.history.back()) << " smoothed "
      << format_number(r.final_ratio) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  CLI::App app{"Airway tree generation, morphometry, probability maps, meshing and constriction"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "key = value settings file (flags given later override it)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Grow a tree inside a lung volume");
  g->add_option("--seed-tree", gen.seed_tree, "Seed skeleton (default with --phantom: built-in trachea and bronchi)");
  g->add_option("--volume", gen.volume, "Lung mask header (u8)");
  g->add_option("--phantom", gen.phantom, "Built-in volume: two-ellipsoids");
  g->add_option("--out", gen.out, "Output prefix")->required();
  g->add_option("--n-points", gen.gen.n_points, "Seed points")->capture_default_str();
  g->add_option("--branch-fraction", gen.gen.branch_fraction)->capture_default_str();
  g->add_option("--terminal-length", gen.gen.terminal_length_mm, "mm")->capture_default_str();
  g->add_option("--angle-limit", gen.gen.angle_limit_deg, "degrees")->capture_default_str();
  g->add_option("--min-points", gen.gen.min_points_per_region)->capture_default_str();
  g->add_option("--max-generations", gen.gen.max_generations)->capture_default_str();
  g->add_option("--rng-seed", gen.gen.rng_seed)->capture_default_str();
  g->add_option("--d0", gen.d0, "Trachea diameter, mm")->capture_default_str();
  g->add_option("--diameter-exponent", gen.exponent)->capture_default_str();
  g->add_option("--diameter-mode", gen.mode, "power_law | flow_split")->capture_default_str();
  g->add_option("--prune-generation", gen.prune_generation, "Keep branches up to this generation");

  std::string m_tree, m_diam, m_out;
  auto* mo = app.add_subcommand("morphometry", "Order tables and ratio summary");
  mo->add_option("--tree", m_tree, "Skeleton")->required();
  mo->add_option("--diameters", m_diam, "Branch attribute CSV with diameters");
  mo->add_option("--out", m_out, "Output prefix")->required();

  ProbmapArgs pm;
  auto* p = app.add_subcommand("probmap", "Probability map of one generation");
  p->add_option("--tree", pm.tree, "Skeleton")->required();
  p->add_option("--generation", pm.generation)->required();
  p->add_option("--out", pm.out, "Output header path; data goes to the .raw sibling")->required();
  p->add_option("--sigma", pm.sigma, "mm")->capture_default_str();
  p->add_option("--grid-like", pm.grid_like, "Copy the grid of this volume header");
  p->add_option("--dims", pm.dims)->expected(3);
  p->add_option("--spacing", pm.spacing)->expected(3);
  p->add_option("--origin", pm.origin)->expected(3);
  p->add_option("--margin", pm.margin, "Automatic grid padding in sigmas")->capture_default_str();

  MeshArgs me;
  auto* m = app.add_subcommand("mesh", "Tube mesh of a tree");
  m->add_option("--tree", me.tree, "Skeleton")->required();
  m->add_option("--diameters", me.diameters, "Branch attribute CSV with diameters");
  m->add_option("--out", me.out, "Output prefix")->required();
  m->add_option("--segments", me.segments)->capture_default_str();
  m->add_option("--d0", me.d0, "Used when no diameters are given")->capture_default_str();
  m->add_option("--diameter-exponent", me.exponent)->capture_default_str();
  m->add_option("--diameter-mode", me.mode)->capture_default_str();

  ConstrictArgs co;
  auto* c = app.add_subcommand("constrict", "Narrow a labelled mesh region");
  c->add_option("--mesh", co.mesh, "OBJ")->required();
  c->add_option("--faces", co.faces, "Face attribute CSV with branch labels");
  c->add_option("--tree", co.tree, "Skeleton, for --generation");
  c->add_option("--out", co.out, "Output prefix")->required();
  c->add_option("--branch-ids", co.branch_ids, "Region branch labels")->delimiter(',')->multi_option_policy(
      CLI::MultiOptionPolicy::TakeAll);
  c->add_option("--generation", co.generation, "Region: all branches of this generation");
  c->add_option("--target-ratio", co.cfg.target_ratio)->capture_default_str();
  c->add_option("--tolerance", co.cfg.tolerance)->capture_default_str();
  c->add_option("--max-iterations", co.cfg.max_iterations)->capture_default_str();
  c->add_option("--contraction-scale", co.cfg.contraction_scale)->capture_default_str();
  c->add_option("--init-constant", co.cfg.init_constant)->capture_default_str();
  c->add_option("--omega", co.cfg.omega, "Multiplier on the contraction scale")->capture_default_str();
  c->add_option("--cone-angle", co.cfg.sdf.cone_half_angle_deg, "SDF cone half angle, degrees")->capture_default_str();
  c->add_option("--rays", co.cfg.sdf.rays_per_face)->capture_default_str();
  c->add_option("--taubin-iterations", co.cfg.taubin_iterations)->capture_default_str();
  c->add_flag("--bilateral", co.cfg.bilateral, "Also run the bilateral normal filter on the seam band");

  std::string r_skel;
  auto* rd = app.add_subcommand("root-detect", "Print the inlet node id of a skeleton");
  rd->add_option("skeleton", r_skel, "Skeleton")->required();

  std::vector<char*> argv;
  for (auto& s : args) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << "\n";
    return kExitInput;
  }

  try {
    if (*g) cmd_generate(gen, out);
    else if (*mo) cmd_morphometry(m_tree, m_diam, m_out, out, err);
    else if (*p) cmd_probmap(pm, out);
    else if (*m) cmd_mesh(me, out);
    else if (*c) cmd_constrict(co, out);
    else if (*rd) {
      const Skeleton s = read_skeleton(r_skel);
      out << detect_root(s.nodes, s.edges) << "\n";
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace broncho
