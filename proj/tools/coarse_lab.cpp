#include "coarse/io.hpp"
#include "coarse/laplacian.hpp"
#include "coarse/testing/suite.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace coarse;
using io::Json;

namespace {

struct Common {
  fs::path out_dir = ".";
  std::uint64_t seed = 20240601;
};

Entourage entourage_option(const FiniteCoarseSpace& space, const double* radius, const std::string& file) {
  if (!file.empty()) return io::entourage_from_json(space, io::read_json_file(file));
  if (radius == nullptr) throw InputError("one of --radius or --entourage is required");
  if (!(*radius >= 0.0)) throw InputError("--radius must be nonnegative");
  return Entourage::radius(space, *radius);
}

int cmd_net(const Common& c, const fs::path& input, double radius) {
  FiniteCoarseSpace space = io::load_space(input);
  if (!(radius >= 0.0)) throw InputError("--radius must be nonnegative");
  Entourage f = Entourage::radius(space, radius);
  CoarseNet net = coarse_net(space, f);
  io::write_json(c.out_dir / "net.json", io::net_to_json(space, f, net));
  std::cout << "net: " << net.points.size() << " of " << space.size() << " points\n";
  return 0;
}

int cmd_gap(const Common& c, const fs::path& input, const double* radius, const std::string& entourage, bool svg) {
  FiniteCoarseSpace space = io::load_space(input);
  Entourage e = entourage_option(space, radius, entourage);
  if (!e.is_symmetric()) throw InputError("entourage must be symmetric (set \"symmetrize\": true)");
  RealOperator lap = build_laplacian(space, e);
  SpectralOptions opts;
  opts.seed = c.seed;
  SpectralReport rep = spectral_gap(lap, connected_components(e), opts);
  io::write_json(c.out_dir / "report.json", io::to_json(rep));
  io::write_atomic(c.out_dir / "spectrum.csv", io::spectrum_csv(rep.eigenvalues));
  if (svg) io::write_atomic(c.out_dir / "spectrum.svg", io::spectrum_svg(rep.eigenvalues));
  std::cout << "gap " << rep.gap << ", kernel_dim " << rep.kernel_dim << " (" << to_string(rep.method) << ")\n";
  return 0;
}

int cmd_folner(const Common& c, const fs::path& input, double radius, double eps, double mass_cap,
               const std::string& replay) {
  FiniteCoarseSpace space = io::load_space(input);
  if (!(radius >= 0.0)) throw InputError("--radius must be nonnegative");
  Entourage e = Entourage::radius(space, radius);
  if (!replay.empty()) {
    Json doc = io::read_json_file(replay);
    const Json& cert = doc.contains("certificate") && doc["certificate"].is_object() ? doc["certificate"] : doc;
    if (!cert.contains("indices") || !cert["indices"].is_array()) throw InputError("indices: required field missing");
    PointSet u;
    for (const auto& v : cert["indices"]) {
      if (!v.is_number_integer()) throw InputError("indices: expected integers");
      const Index x = v.get<Index>();
      space.check_index(x);
      u.push_back(x);
    }
    u = normalized(u);
    const double ratio = folner_ratio(e, u);
    const double recorded = io::to_number(cert.at("ratio"), "ratio");
    const bool match = ratio == recorded;
    std::cout << "replay ratio " << ratio << (match ? " matches" : " differs from") << " recorded " << recorded << "\n";
    return match ? 0 : 1;
  }
  FolnerOptions opts;
  opts.mass_cap = mass_cap;
  FolnerSearch s = folner_search(space, e, eps, opts);
  io::write_json(c.out_dir / "certificate.json", io::to_json(s, space));
  if (s.certificate) {
    std::cout << "certificate: |U| = " << s.certificate->subset.size() << ", ratio " << s.certificate->ratio << " ("
              << s.stage << ")\n";
    return 0;
  }
  std::cout << "no certificate at eps " << eps << "; best ratio " << s.best_ratio << "\n";
  return 1;
}

int cmd_warp(const Common& c, const fs::path& input) {
  io::WarpConfig cfg = io::warp_config_from_json(io::read_json_file(input));
  WarpedSystem system = build_warped_system(cfg.base, cfg.levels, cfg.points_per_unit);
  SpectralOptions opts;
  opts.seed = c.seed;
  ExpanderProfile prof = expander_profile(system, cfg.presentation, cfg.gap_threshold, opts);
  fs::create_directories(c.out_dir);
  io::write_json(c.out_dir / "manifest.json", io::manifest_json(cfg, system));
  Json levels = Json::array();
  for (std::size_t i = 0; i < system.levels.size(); ++i) {
    const WarpedLevel& level = system.levels[i];
    const LevelProfile& lp = prof.levels[i];
    const std::string tag = std::to_string(std::lround(level.t));
    WarpedDistances wd = warped_distance(level, cfg.presentation, cfg.cone_cutoff);
    io::write_atomic(c.out_dir / ("distances_t" + tag + ".bin"), io::encode_distances(wd.table));
    io::write_atomic(c.out_dir / ("spectrum_t" + tag + ".csv"), io::spectrum_csv(lp.spectrum.eigenvalues));
    Json row;
    row["t"] = level.t;
    row["points"] = lp.points;
    row["gap"] = io::number(lp.spectrum.gap);
    row["symmetry_defect"] = lp.defect;
    row["best_folner_ratio"] = io::number(lp.folner_ratio);
    row["folner_certified"] = lp.folner_certified;
    row["distance_asymmetry"] = io::number(wd.asymmetry);
    row["unreachable_pairs"] = wd.unreachable_pairs;
    row["warnings"] = wd.warnings;
    Json dec = Json::array();
    for (double r : cfg.decomposition_radii) dec.push_back(io::to_json(verify_entourage_decomposition(level, cfg.presentation, wd, r)));
    row["decomposition"] = dec;
    levels.push_back(row);
  }
  Json profile;
  profile["schema_version"] = io::kSchemaVersion;
  profile["levels"] = levels;
  profile["family"] = io::to_json(prof.verdict);
  io::write_json(c.out_dir / "profile.json", profile);
  io::write_atomic(c.out_dir / "levels.csv", io::levels_csv(prof.verdict));
  for (const auto& lp : prof.levels) std::cout << "t=" << lp.t << " points=" << lp.points << " gap=" << lp.spectrum.gap << "\n";
  std::cout << "verdict: " << to_string(prof.verdict.verdict) << "\n";
  return 0;
}

int cmd_suite(const Common& c, const std::string& scale, const std::string& fault, const fs::path& out) {
  suite::SuiteOptions opts;
  opts.seed = c.seed;
  opts.scale = scale == "full" ? suite::Scale::full : suite::Scale::smoke;
  opts.inject_laplacian_sign_flip = fault == "laplacian-sign";
  suite::SuiteReport report = suite::run_suite(opts);
  io::write_json(out.empty() ? c.out_dir / "suite-report.json" : out, report.to_json());
  for (const auto* list : {&report.criteria, &report.invariants})
    for (const auto& r : *list)
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << (r.error.empty() ? "" : ": " + r.error)
                << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarse_lab: finite coarse spaces, Laplacian spectra, Folner sets and warped systems"};
  app.require_subcommand(1);
  Common common;
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for randomized searches")->capture_default_str();

  std::string input, entourage_file, replay, scale = "smoke", fault, suite_out;
  double radius = 0.0, eps = 0.05, mass_cap = 0.5;
  bool svg = false;

  auto* net = app.add_subcommand("net", "Greedy coarse net at a radius");
  net->add_option("space", input, "Space JSON")->required();
  net->add_option("--radius", radius, "Net radius R")->required();

  auto* gap = app.add_subcommand("gap", "Spectral gap of the Laplacian");
  gap->add_option("space", input, "Space JSON")->required();
  auto* gap_radius = gap->add_option("--radius", radius, "Radius entourage");
  auto* gap_ent = gap->add_option("--entourage", entourage_file, "Entourage JSON");
  gap_radius->excludes(gap_ent);
  gap->add_flag("--svg", svg, "Also write spectrum.svg");

  auto* folner = app.add_subcommand("folner", "Search for a Folner set");
  folner->add_option("space", input, "Space JSON")->required();
  folner->add_option("--radius", radius, "Radius entourage")->required();
  folner->add_option("--eps", eps, "Target epsilon")->capture_default_str();
  folner->add_option("--mass-cap", mass_cap, "Admissible sets satisfy mu(U) <= cap mu(X)")->capture_default_str();
  folner->add_option("--replay", replay, "Recompute the ratio of a saved certificate");

  auto* warp = app.add_subcommand("warp", "Build a warped system and its expander profile");
  warp->add_option("config", input, "Warp config JSON")->required();

  auto* suite_cmd = app.add_subcommand("suite", "Run the property suite");
  suite_cmd->add_option("--scale", scale, "smoke or full")->check(CLI::IsMember({"smoke", "full"}))->capture_default_str();
  suite_cmd->add_option("--inject-fault", fault, "Mutation check")->check(CLI::IsMember({"laplacian-sign"}));
  suite_cmd->add_option("--out", suite_out, "Report path (default <out-dir>/suite-report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  common.out_dir = out_dir;

  try {
    if (*net) return cmd_net(common, input, radius);
    if (*gap) return cmd_gap(common, input, gap_radius->count() ? &radius : nullptr, entourage_file, svg);
    if (*folner) return cmd_folner(common, input, radius, eps, mass_cap, replay);
    if (*warp) return cmd_warp(common, input);
    if (*suite_cmd) return cmd_suite(common, scale, fault, suite_out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return 3;
  } catch (const PropertyFailure& e) {
    std::cerr << "property failure: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
