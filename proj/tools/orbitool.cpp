#include "orbitool/orbitool.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using orbitool::json;

struct GroupOpts {
  std::string family;
  int r = -1;
  int n = 0;
  std::string path;

  orbitool::Group make() const {
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw orbitool::ValidationError("cannot open group spec file " + path);
      json j = json::parse(in);
      return orbitool::group_from_json(j);
    }
    if (family.empty())
      throw orbitool::ValidationError("no group given: use --group FILE or --family A --r R --n N");
    if (family != "A") throw orbitool::ValidationError("unknown family '" + family + "'");
    if (r < 0 || n < 2) throw orbitool::ValidationError("family A requires --r >= 0 and --n >= 2");
    return orbitool::Group::a_family(r, n);
  }
};

void add_group_opts(CLI::App* cmd, GroupOpts& opts) {
  auto* file = cmd->add_option("--group", opts.path, "group spec JSON file");
  auto* fam = cmd->add_option("--family", opts.family, "named family (A)");
  cmd->add_option("--r", opts.r, "family parameter r");
  cmd->add_option("--n", opts.n, "ambient dimension n");
  file->excludes(fam);
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw orbitool::ValidationError("cannot open output file " + out_path);
  out << text;
}

void write_json(const std::string& out_path, const json& j) {
  write_output(out_path, j.dump(2) + "\n");
}

std::pair<orbitool::Group, orbitool::Decomposition> load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw orbitool::ValidationError("cannot open fan file " + path);
  return orbitool::fan_from_json(json::parse(in));
}

orbitool::QVec parse_point(const std::string& text) {
  orbitool::QVec pt;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) {
    auto slash = part.find('/');
    try {
      if (slash == std::string::npos)
        pt.push_back(orbitool::Rat(orbitool::Int(part)));
      else
        pt.push_back(orbitool::Rat(orbitool::Int(part.substr(0, slash)),
                                   orbitool::Int(part.substr(slash + 1))));
    } catch (const std::exception&) {
      throw orbitool::ValidationError("cannot parse rational '" + part + "'");
    }
  }
  if (pt.empty()) throw orbitool::ValidationError("empty point");
  return pt;
}

int run(int argc, char** argv) {
  CLI::App app{"exact G-Hilbert scheme and toric resolution tool"};
  app.require_subcommand(1);

  // group info
  auto* group_cmd = app.add_subcommand("group", "group-level queries");
  group_cmd->require_subcommand(1);
  auto* info_cmd = group_cmd->add_subcommand("info", "order, invariant factors, family check");
  GroupOpts info_group;
  std::string info_out;
  add_group_opts(info_cmd, info_group);
  info_cmd->add_option("--out", info_out, "output file (default stdout)");

  // hilb fixed-points / fan
  auto* hilb_cmd = app.add_subcommand("hilb", "G-Hilbert scheme computations");
  hilb_cmd->require_subcommand(1);
  auto* fp_cmd = hilb_cmd->add_subcommand("fixed-points", "torus-fixed points as staircases");
  GroupOpts fp_group;
  std::string fp_out, fp_format = "json";
  long long fp_bound = 64;
  add_group_opts(fp_cmd, fp_group);
  fp_cmd->add_option("--bound", fp_bound, "enumeration bound on |G|");
  fp_cmd->add_option("--format", fp_format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  fp_cmd->add_option("--out", fp_out, "output file (default stdout)");

  auto* hfan_cmd = hilb_cmd->add_subcommand("fan", "assembled and validated Hilb fan");
  GroupOpts hfan_group;
  std::string hfan_out;
  long long hfan_bound = 64;
  add_group_opts(hfan_cmd, hfan_group);
  hfan_cmd->add_option("--bound", hfan_bound, "enumeration bound on |G|");
  hfan_cmd->add_option("--out", hfan_out, "output file (default stdout)");

  // fan check / wall
  auto* fan_cmd = app.add_subcommand("fan", "predicates on a fan file");
  fan_cmd->require_subcommand(1);
  auto* check_cmd = fan_cmd->add_subcommand("check", "smooth/crepant/euler/discrepancies");
  std::string check_file, check_out;
  check_cmd->add_option("file", check_file, "fan JSON document")->required();
  check_cmd->add_option("--out", check_out, "output file (default stdout)");

  auto* wall_cmd = fan_cmd->add_subcommand("wall", "wall relation at an interior facet");
  std::string wall_file, wall_facet, wall_out;
  wall_cmd->add_option("file", wall_file, "fan JSON document")->required();
  wall_cmd->add_option("--facet", wall_facet, "comma-separated vertex ids")->required();
  wall_cmd->add_option("--out", wall_out, "output file (default stdout)");

  // local-model
  auto* lm_cmd = app.add_subcommand("local-model", "dual-cone Hilbert basis at a cell");
  GroupOpts lm_group;
  std::string lm_fan, lm_out;
  int lm_cell = -1;
  long long lm_degree = -1;
  bool lm_quadrant = false;
  add_group_opts(lm_cmd, lm_group);
  lm_cmd->add_option("--fan", lm_fan, "fan JSON document");
  lm_cmd->add_option("--cell", lm_cell, "cell index in the fan file");
  lm_cmd->add_flag("--quadrant", lm_quadrant, "use the whole first quadrant");
  lm_cmd->add_option("--degree-bound", lm_degree, "per-axis Hilbert basis bound (default 4d)");
  lm_cmd->add_option("--out", lm_out, "output file (default stdout)");

  // resolve
  auto* res_cmd = app.add_subcommand("resolve", "full pipeline with blow-down combinations");
  GroupOpts res_group;
  std::string res_out, res_dot;
  long long res_bound = 64, res_combo = 256;
  add_group_opts(res_cmd, res_group);
  res_cmd->add_option("--bound", res_bound, "enumeration bound on |G|");
  res_cmd->add_option("--combination-limit", res_combo,
                      "max blow-down combinations rebuilt end to end");
  res_cmd->add_option("--out", res_out, "report output file (default stdout)");
  res_cmd->add_option("--dot", res_dot, "also write the flop graph in DOT format");

  // flop
  auto* flop_cmd = app.add_subcommand("flop", "switch the diagonal of a split octahedron");
  std::string flop_file, flop_center, flop_out;
  int flop_from = -1, flop_to = -1;
  flop_cmd->add_option("file", flop_file, "fan JSON document")->required();
  flop_cmd->add_option("--center", flop_center, "octahedron center, e.g. 1/4,1/4,1/4,1/4")
      ->required();
  flop_cmd->add_option("--from", flop_from, "current diagonal pair index")->required();
  flop_cmd->add_option("--to", flop_to, "target diagonal pair index")->required();
  flop_cmd->add_option("--out", flop_out, "output file (default stdout)");

  // render
  auto* render_cmd = app.add_subcommand("render", "SVG picture of an n = 3 fan");
  std::string render_file, render_out, render_format = "svg";
  render_cmd->add_option("file", render_file, "fan JSON document")->required();
  render_cmd->add_option("--format", render_format, "svg")->check(CLI::IsMember({"svg"}));
  render_cmd->add_option("--out", render_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  if (info_cmd->parsed()) {
    write_json(info_out, orbitool::group_info_json(info_group.make()));
  } else if (fp_cmd->parsed()) {
    orbitool::Group g = fp_group.make();
    auto fixed = orbitool::enumerate_fixed_points(g, fp_bound);
    if (fp_format == "json") {
      write_json(fp_out, orbitool::fixed_points_json(g, fixed));
    } else {
      std::ostringstream out;
      out << fixed.size() << " fixed point(s)\n";
      for (size_t i = 0; i < fixed.size(); ++i)
        out << "\n[" << i << "]\n" << orbitool::staircase_text(fixed[i]);
      write_output(fp_out, out.str());
    }
  } else if (hfan_cmd->parsed()) {
    orbitool::Group g = hfan_group.make();
    auto fixed = orbitool::enumerate_fixed_points(g, hfan_bound);
    orbitool::Decomposition d = orbitool::assemble_fan(g, fixed);
    write_json(hfan_out, orbitool::fan_to_json(g, d));
  } else if (check_cmd->parsed()) {
    auto [g, d] = load_fan(check_file);
    write_json(check_out, orbitool::fan_check_json(g, d));
  } else if (wall_cmd->parsed()) {
    auto [g, d] = load_fan(wall_file);
    std::vector<int> facet;
    std::istringstream in(wall_facet);
    std::string part;
    while (std::getline(in, part, ',')) facet.push_back(std::stoi(part));
    auto rel = orbitool::wall_relation(d, g, facet);
    write_json(wall_out, orbitool::wall_json(d, rel));
  } else if (lm_cmd->parsed()) {
    orbitool::Cone cone;
    orbitool::Group g = [&]() {
      if (lm_quadrant) {
        orbitool::Group grp = lm_group.make();
        std::vector<orbitool::QVec> axes;
        for (int i = 0; i < grp.n(); ++i) {
          orbitool::QVec e(grp.n(), orbitool::Rat(0));
          e[i] = 1;
          axes.push_back(std::move(e));
        }
        cone = orbitool::make_cone(grp, axes);
        return grp;
      }
      if (lm_fan.empty() || lm_cell < 0)
        throw orbitool::ValidationError("local-model: need --fan FILE --cell I or --quadrant");
      auto [grp, d] = load_fan(lm_fan);
      if (lm_cell >= static_cast<int>(d.cells.size()))
        throw orbitool::ValidationError("local-model: cell index out of range");
      cone = orbitool::make_cone(grp, d.cell_points(d.cells[lm_cell]));
      return grp;
    }();
    auto basis = orbitool::dual_cone_hilbert_basis(g, cone, lm_degree);
    write_json(lm_out, orbitool::hilbert_basis_json(basis));
  } else if (res_cmd->parsed()) {
    orbitool::Group g = res_group.make();
    orbitool::PipelineOptions opts;
    opts.enumeration_bound = res_bound;
    opts.full_combination_limit = res_combo;
    orbitool::ResolutionReport rep = orbitool::hilb_pipeline(g, opts);
    write_json(res_out, orbitool::resolution_report_json(g, rep));
    if (!res_dot.empty()) write_output(res_dot, orbitool::flop_graph_dot(rep));
  } else if (flop_cmd->parsed()) {
    auto [g, d] = load_fan(flop_file);
    orbitool::Decomposition flipped =
        orbitool::flop(d, g, parse_point(flop_center), flop_from, flop_to);
    write_json(flop_out, orbitool::fan_to_json(g, flipped));
  } else if (render_cmd->parsed()) {
    auto [g, d] = load_fan(render_file);
    write_output(render_out, orbitool::decomposition_svg(d));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const orbitool::ResourceError& e) {
    std::cout << orbitool::error_json("resource", e.what()).dump(2) << "\n";
    return 2;
  } catch (const orbitool::ValidationError& e) {
    std::cout << orbitool::error_json("validation", e.what()).dump(2) << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cout << orbitool::error_json("validation", e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << orbitool::error_json("usage", e.what()).dump(2) << "\n";
    return 3;
  }
}
