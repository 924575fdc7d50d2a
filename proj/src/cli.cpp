#include "wavesym/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "wavesym/eigenline.hpp"
#include "wavesym/error.hpp"
#include "wavesym/fresnel.hpp"
#include "wavesym/json_out.hpp"
#include "wavesym/multiplicity.hpp"
#include "wavesym/sphere_symbols.hpp"

namespace wavesym::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  int m = 0;
  int n = 0;
  std::vector<double> epsilon{2.0, 2.5, 3.0};
  int grid = 512;
  int subdiv = 4;
  double tube_radius = 0.1;
  double collar = 1.0;
  double tol_contour = 1e-10;
  double tol_root = 1e-15;
  int samples = 256;
  std::string section = "crystal";
  std::string out;
  std::string out_obj;
  std::string out_csv;
};

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

// (2, m) as the pair [2, m]; null when no winding was certified.
json knot_json(const std::optional<KnotDescriptor>& k) {
  if (!k) return nullptr;
  return json::array({k->p, k->q});
}

json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot open output file " + path);
  return os;
}

AnalyzeOptions analyze_options(const RunConfig& cfg) {
  AnalyzeOptions opt;
  opt.grid = cfg.grid;
  opt.tol_contour = cfg.tol_contour;
  opt.tol_root = cfg.tol_root;
  return opt;
}

json zset_json(const ZSet& z) {
  return {{"m", z.m},
          {"n", z.n},
          {"radii", z.radii},
          {"includes_zero", z.includes_zero},
          {"includes_infinity", z.includes_infinity}};
}

json circle_json(const CircleReport& c) {
  return {{"r", c.r},
          {"transversal", c.transversal},
          {"min_grad", c.min_grad},
          {"winding", opt_int(c.winding)},
          {"knot", knot_json(c.knot)},
          {"connected", c.knot ? json(c.knot->connected) : json(nullptr)}};
}

void write_components_csv(const RunConfig& cfg, const MnReport& rep) {
  if (cfg.out_csv.empty()) return;
  std::vector<MultiplicityComponent> comps;
  for (const CircleReport& c : rep.circles) {
    if (c.winding) comps.push_back(c.component);
  }
  std::ofstream os = open_out(cfg.out_csv);
  write_polyline_csv(os, comps);
}

json cmd_zset(const RunConfig& cfg) {
  const ZSet z = z_set(cfg.m, cfg.n, cfg.tol_root);
  json j = zset_json(z);
  const double a = alpha_root(cfg.tol_root);
  j["alpha"] = a;
  j["alpha_residual"] = std::abs(((a + 1.0) * a + 3.0) * a - 1.0);
  return j;
}

json cmd_sphere(const RunConfig& cfg) {
  const MnReport rep = analyze_mn(cfg.m, cfg.n, analyze_options(cfg));
  json radii = json::array();
  for (double r : rep.zset.radii) {
    radii.push_back({{"r", r},
                     {"includes_zero", rep.zset.includes_zero},
                     {"includes_infinity", rep.zset.includes_infinity}});
  }
  json circles = json::array();
  for (const CircleReport& c : rep.circles) circles.push_back(circle_json(c));
  write_components_csv(cfg, rep);
  return {{"m", rep.m},
          {"n", rep.n},
          {"radii", radii},
          {"dh_dr_1", rep.transversality.dh_dr_analytic},
          {"dh_dr_1_numeric", rep.transversality.dh_dr_numeric},
          {"transversal", rep.transversality.transversal},
          {"circles", circles}};
}

json cmd_winding(const RunConfig& cfg) {
  const MnReport rep = analyze_mn(cfg.m, cfg.n, analyze_options(cfg));
  json curves = json::array();
  std::optional<int> unit;
  for (const CircleReport& c : rep.circles) {
    json entry = circle_json(c);
    entry["length"] = c.component.base.length();
    curves.push_back(entry);
    if (c.r == 1.0) unit = c.winding;
  }
  write_components_csv(cfg, rep);
  return {{"m", rep.m},
          {"n", rep.n},
          {"transversal", rep.transversality.transversal},
          {"winding", opt_int(unit)},
          {"curves", curves}};
}

json cmd_knots(const RunConfig& cfg) {
  const MnReport rep = analyze_mn(cfg.m, cfg.n, analyze_options(cfg));
  json knots = json::array();
  std::unique_ptr<std::ofstream> csv;
  if (!cfg.out_csv.empty()) {
    csv = std::make_unique<std::ofstream>(open_out(cfg.out_csv));
    *csv << "component,strand,base_angle,fiber_angle,x,y,z\n";
  }
  int id = 0;
  for (const CircleReport& c : rep.circles) {
    if (!c.knot) continue;
    const auto strands = knot_polylines(c.component);
    knots.push_back({{"r", c.r},
                     {"knot", knot_json(c.knot)},
                     {"connected", c.knot->connected},
                     {"components", c.knot->components},
                     {"strands", strands.size()}});
    if (csv) {
      for (std::size_t s = 0; s < strands.size(); ++s) {
        for (const TorusPoint& tp : strands[s]) {
          const Vec3 e = torus_embedding(tp);
          *csv << id << ',' << s << ',' << format_double(tp.base_angle) << ','
               << format_double(tp.fiber_angle) << ',' << format_double(e.x()) << ','
               << format_double(e.y()) << ',' << format_double(e.z()) << '\n';
        }
      }
    }
    ++id;
  }
  return {{"m", rep.m},
          {"n", rep.n},
          {"transversal", rep.transversality.transversal},
          {"knots", knots}};
}

Crystal crystal_of(const RunConfig& cfg) {
  return Crystal::make(cfg.epsilon[0], cfg.epsilon[1], cfg.epsilon[2]);
}

json directions_json(const std::vector<SingularDirection>& dirs) {
  json arr = json::array();
  for (const SingularDirection& d : dirs) {
    arr.push_back({{"x", vec_json(d.x)}, {"residual", d.residual}, {"index", d.local_index}});
  }
  return arr;
}

json cmd_fresnel(const RunConfig& cfg) {
  const Crystal crystal = crystal_of(cfg);
  const FresnelMesh mesh = fresnel_mesh(crystal, cfg.subdiv);
  json j = {{"epsilon", cfg.epsilon},
            {"subdivisions", cfg.subdiv},
            {"min_sheet_gap", *std::min_element(mesh.gap.begin(), mesh.gap.end())}};
  const auto dirs = singular_directions(crystal);
  int sum = 0;
  for (const SingularDirection& d : dirs) sum += d.local_index;
  j["singular_directions"] = directions_json(dirs);
  j["index_sum"] = sum;
  if (!cfg.out_obj.empty()) {
    std::ofstream os = open_out(cfg.out_obj);
    write_obj(os, {{"fresnel_inner", &mesh.inner}, {"fresnel_outer", &mesh.outer}});
  }
  return j;
}

json cmd_eigenline(const RunConfig& cfg) {
  const Crystal crystal = crystal_of(cfg);
  AmbientSection section;
  if (cfg.section == "crystal") {
    section = crystal_section(crystal);
  } else {
    section = constant_trace_section(crystal);
  }
  std::vector<Vec3> points;
  for (const SingularDirection& d : singular_directions(crystal)) points.push_back(d.x);
  EigenlineOptions opt;
  opt.subdivisions = cfg.subdiv;
  opt.tube_radius = cfg.tube_radius;
  opt.collar = cfg.collar;
  const EigenlineManifold m = build_eigenline_manifold(section, points, opt);
  const CriticalReport crit = critical_scan(m, section);

  json criticals = json::array();
  for (const CriticalPoint& c : crit.criticals) {
    criticals.push_back({{"where", c.where},
                         {"vertex", c.vertex},
                         {"x", vec_json(c.x)},
                         {"lambda", c.lambda},
                         {"kind", to_string(c.kind)},
                         {"index", c.index}});
  }
  json extrema = json::array();
  for (const SheetExtremum& e : crit.sheet_extrema) {
    extrema.push_back({{"sheet", e.sheet},
                       {"kind", e.maximum ? "maximum" : "minimum"},
                       {"x", vec_json(e.x)},
                       {"value", e.value}});
  }
  json necessary = json::array();
  for (const NecessaryCondition& nc : crit.necessary_condition) {
    necessary.push_back({{"cylinder", nc.cylinder},
                         {"point", vec_json(nc.point)},
                         {"ds_r_norm", nc.ds_r_norm},
                         {"ds_r_vanishes", nc.ds_r_vanishes},
                         {"classification", nullptr}});
  }
  if (!cfg.out_obj.empty()) {
    std::ofstream os = open_out(cfg.out_obj);
    write_obj(os, m.mesh);
  }
  return {{"epsilon", cfg.epsilon},
          {"section", cfg.section},
          {"subdivisions", cfg.subdiv},
          {"tube_radius", cfg.tube_radius},
          {"collar", cfg.collar},
          {"vertices", m.mesh.num_vertices()},
          {"faces", m.mesh.num_faces()},
          {"chi", m.chi()},
          {"genus", opt_int(m.genus_if_connected())},
          {"cylinders", m.cylinders.size()},
          {"index_sum", crit.index_sum},
          {"criticals", criticals},
          {"sheet_extrema", extrema},
          {"necessary_condition", necessary}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wave-propagation symbols: multiplicity sets, Fresnel surfaces, eigenline manifolds",
               "wavesym"};
  app.set_config("--config", "", "Flat key=value file; flags override its entries");
  app.require_subcommand(1, 1);

  RunConfig cfg;
  app.add_option("--m", cfg.m, "Degree of the vector field V")->check(CLI::Range(0, 2));
  app.add_option("--n", cfg.n, "Degree of the triple product")->check(CLI::Range(0, 6));
  app.add_option("--epsilon", cfg.epsilon, "Dielectric eigenvalues a,b,c")
      ->delimiter(',')
      ->expected(3)
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", cfg.grid, "Contour grid cells per axis")->check(CLI::Range(16, 8192));
  app.add_option("--subdiv", cfg.subdiv, "Icosphere subdivisions")->check(CLI::Range(2, 7));
  app.add_option("--tube-radius", cfg.tube_radius, "Geodesic radius of removed disks")
      ->check(CLI::PositiveNumber);
  app.add_option("--collar", cfg.collar, "Collar parameter range")->check(CLI::PositiveNumber);
  app.add_option("--tol-contour", cfg.tol_contour, "Relative contour residual")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-root", cfg.tol_root, "Bisection bracket width")
      ->check(CLI::PositiveNumber);
  app.add_option("--section", cfg.section, "Eigenline section: crystal or constant-trace")
      ->check(CLI::IsMember({"crystal", "constant-trace"}));
  app.add_option("--out", cfg.out, "JSON report path (default stdout)");
  app.add_option("--out-obj", cfg.out_obj, "OBJ mesh path");
  app.add_option("--out-csv", cfg.out_csv, "CSV polyline path");

  struct Sub {
    const char* name;
    const char* help;
    json (*fn)(const RunConfig&);
  };
  const Sub subs[] = {
      {"sphere", "Singular set, transversality and winding of sigma_{m,n}", cmd_sphere},
      {"winding", "Kernel-line winding on the singular circles of sigma_{m,n}", cmd_winding},
      {"zset", "Radii of the singular set of sigma_{m,n}", cmd_zset},
      {"fresnel", "Fresnel surface and singular directions of a crystal", cmd_fresnel},
      {"eigenline", "Eigenline manifold of a crystal: chi, genus, critical data", cmd_eigenline},
      {"knots", "Torus-knot type and polylines of the multiplicity curves", cmd_knots},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    json report;
    for (const Sub& s : subs) {
      if (app.got_subcommand(s.name)) report = s.fn(cfg);
    }
    if (cfg.out.empty()) {
      write_json(out, report);
    } else {
      std::ofstream os = open_out(cfg.out);
      write_json(os, report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitNumerical;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace wavesym::cli
