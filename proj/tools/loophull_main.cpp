#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "loophull/acceptance.hpp"
#include "loophull/analytic.hpp"
#include "loophull/bridge.hpp"
#include "loophull/experiments.hpp"
#include "loophull/hull.hpp"
#include "loophull/loewner.hpp"
#include "loophull/render.hpp"
#include "loophull/report.hpp"
#include "loophull/rng.hpp"

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

loophull::LoopPath load_path(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot read " + file);
  return loophull::import_path(is);
}

json areas_to_json(const loophull::RegionAreas& ra) {
  json per = json::object();
  json per_cells = json::object();
  for (const auto& [n, a] : ra.per_index) per[std::to_string(n)] = a;
  for (const auto& [n, c] : ra.per_index_cells) per_cells[std::to_string(n)] = c;
  return json{{"hull_area", ra.hull_area},
              {"zero_inside", ra.zero_inside},
              {"blocked_area", ra.blocked_area},
              {"per_index", per},
              {"cell_size", ra.cell_size},
              {"total_cells", ra.total_cells},
              {"outside_cells", ra.outside_cells},
              {"hull_cells", ra.hull_cells},
              {"blocked_cells", ra.blocked_cells},
              {"zero_inside_cells", ra.zero_inside_cells},
              {"per_index_cells", per_cells},
              {"partition_residual_cells", ra.partition_residual_cells()}};
}

struct CommonFlags {
  std::uint64_t seed = 0;
  int steps = 1 << 14;
  std::uint64_t samples = 1000;
  double cells_per_unit = 0.0;  // 0 = kind-dependent default
  std::string kind = "gaussian";
  std::string out;
  bool json_out = false;
  int threads = 0;
};

double cells_per_unit_for(const CommonFlags& f, loophull::PathKind kind) {
  if (f.cells_per_unit > 0.0) return f.cells_per_unit;
  return kind == loophull::PathKind::lattice_loop ? 1.0 : 256.0;
}

double default_cells_per_unit(const CommonFlags& f) {
  return cells_per_unit_for(f, loophull::path_kind_from_string(f.kind));
}

loophull::ExperimentConfig experiment_config(const CommonFlags& f) {
  loophull::ExperimentConfig cfg;
  cfg.samples = f.samples;
  cfg.steps = f.steps;
  cfg.cells_per_unit = f.cells_per_unit > 0.0 ? f.cells_per_unit : 256.0;
  cfg.master_seed = f.seed;
  cfg.kind = loophull::path_kind_from_string(f.kind);
  cfg.threads = f.threads;
  return cfg;
}

int env_threads() {
  if (const char* env = std::getenv("LOOPHULL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

void apply_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "loophull: sampling, geometry and verification of planar Brownian "
      "loop hulls and winding regions"};
  app.require_subcommand(1);

  CommonFlags f;
  f.threads = env_threads();
  app.add_option("--threads", f.threads,
                 "worker thread count (default: LOOPHULL_THREADS or OpenMP)");

  // sample ------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "draw a loop and print/export it");
  sample->add_option("--steps", f.steps, "number of time steps");
  sample->add_option("--seed", f.seed, "sample seed");
  sample->add_option("--kind", f.kind, "gaussian | lattice");
  sample->add_option("--out", f.out, "output file (default stdout)");

  // hull ----------------------------------------------------------------
  auto* hull = app.add_subcommand("hull", "hull and region areas of a path file");
  std::string in_file;
  std::string mask_prefix;
  hull->add_option("--in", in_file, "path file (from `sample`)")->required();
  hull->add_option("--cells-per-unit", f.cells_per_unit, "grid resolution");
  hull->add_option("--out", f.out, "JSON output file (default stdout)");
  hull->add_option("--mask-out", mask_prefix,
                   "write <prefix>_blocked.pbm and <prefix>_outside.pbm");

  // winding-map -----------------------------------------------------------
  auto* wmap = app.add_subcommand("winding-map", "winding field of a path file");
  std::string csv_file;
  std::string sidecar_file;
  std::string render_file;
  wmap->add_option("--in", in_file, "path file")->required();
  wmap->add_option("--cells-per-unit", f.cells_per_unit, "grid resolution");
  wmap->add_option("--csv", csv_file, "CSV output (i,j,n for unblocked cells)");
  wmap->add_option("--json", sidecar_file, "grid sidecar JSON");
  wmap->add_option("--render", render_file, "SVG index map");
  wmap->add_option("--out", f.out, "areas JSON output (default stdout)");

  // verify-analytic ---------------------------------------------------
  auto* va = app.add_subcommand("verify-analytic",
                                "run every analytic check and report");
  va->add_option("--out", f.out, "JSON output file (default stdout)");

  // verify-mc -----------------------------------------------------------
  auto* vmc = app.add_subcommand(
      "verify-mc", "Monte Carlo acceptance checks for hull/winding areas");
  std::string per_sample_csv;
  bool mc_full = false;
  vmc->add_option("--samples", f.samples, "samples per experiment");
  vmc->add_option("--steps", f.steps, "path steps (default 65536)");
  vmc->add_option("--seed", f.seed, "master seed");
  vmc->add_flag("--full", mc_full,
                "also run the pointwise index-law criterion");
  vmc->add_option("--csv", per_sample_csv, "write per-sample hull areas");
  vmc->add_option("--out", f.out, "JSON output file (default stdout)");

  // sle-check ------------------------------------------------------------
  auto* sle = app.add_subcommand("sle-check",
                                 "side-of-curve Monte Carlo vs the closed form");
  double kappa = 8.0 / 3.0;
  std::vector<double> thetas{kPi / 6.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};
  sle->add_option("--kappa", kappa, "kappa in (0,4]");
  sle->add_option("--theta", thetas, "angles of the marked point");
  sle->add_option("--samples", f.samples, "runs per angle");
  sle->add_option("--seed", f.seed, "master seed");
  sle->add_option("--out", f.out, "JSON output file (default stdout)");

  // vervaat-check -------------------------------------------------------
  auto* vv = app.add_subcommand("vervaat-check",
                                "lowest-point shift preserves the hull area");
  vv->add_option("--samples", f.samples, "number of bridges");
  vv->add_option("--steps", f.steps, "bridge steps");
  vv->add_option("--seed", f.seed, "master seed");
  vv->add_option("--out", f.out, "JSON output file (default stdout)");

  // convergence -----------------------------------------------------------
  auto* conv = app.add_subcommand("convergence",
                                  "hull-area refinement study over (N, h)");
  std::vector<std::string> ladder_spec{"4096:256", "16384:256", "65536:256"};
  conv->add_option("--ladder", ladder_spec, "rungs as steps:cells_per_unit");
  conv->add_option("--samples", f.samples, "samples per rung");
  conv->add_option("--seed", f.seed, "master seed");
  conv->add_option("--out", f.out, "JSON output file (default stdout)");

  // render ----------------------------------------------------------------
  auto* render = app.add_subcommand("render", "draw a sampled loop as SVG");
  std::string mode = "hull";
  render->add_option("--kind", f.kind, "gaussian | lattice");
  render->add_option("--steps", f.steps, "number of time steps");
  render->add_option("--seed", f.seed, "sample seed");
  render->add_option("--cells-per-unit", f.cells_per_unit, "grid resolution");
  render->add_option("--mode", mode, "hull | winding");
  render->add_option("--out", f.out, "SVG output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    apply_threads(f.threads);

    if (sample->parsed()) {
      const loophull::BridgeSpec spec{f.steps, f.seed,
                                      loophull::path_kind_from_string(f.kind)};
      std::ostringstream os;
      loophull::export_path(loophull::sample_path(spec), os);
      write_text(f.out, os.str());
      return 0;
    }

    if (hull->parsed()) {
      const loophull::LoopPath path = load_path(in_file);
      const loophull::GridSpec grid = loophull::make_grid_for_path(
          path, cells_per_unit_for(f, path.kind), 0.05);
      const loophull::PathRasterAnalysis an = loophull::analyze_path(path, grid);
      if (!mask_prefix.empty()) {
        loophull::write_mask_pbm(an.blocked, mask_prefix + "_blocked.pbm");
        loophull::write_mask_pbm(an.outside, mask_prefix + "_outside.pbm");
      }
      write_text(f.out, areas_to_json(an.areas).dump(2) + "\n");
      return 0;
    }

    if (wmap->parsed()) {
      const loophull::LoopPath path = load_path(in_file);
      const loophull::GridSpec grid = loophull::make_grid_for_path(
          path, cells_per_unit_for(f, path.kind), 0.05);
      const loophull::PathRasterAnalysis an = loophull::analyze_path(path, grid);
      if (!csv_file.empty()) {
        loophull::write_winding_csv(an.winding, an.blocked, csv_file);
      }
      if (!sidecar_file.empty()) loophull::write_grid_json(grid, sidecar_file);
      if (!render_file.empty()) {
        loophull::RenderSpec spec;
        spec.out_path = render_file;
        loophull::render_winding_svg(an.winding, an.blocked, an.outside, grid,
                                     spec);
      }
      write_text(f.out, areas_to_json(an.areas).dump(2) + "\n");
      return 0;
    }

    if (va->parsed()) {
      const auto rows = loophull::accept::analytic_check_table();
      json table = json::array();
      bool all = true;
      for (const auto& r : rows) {
        all = all && r.pass;
        table.push_back({{"check_name", r.name},
                         {"computed", r.computed},
                         {"target", r.target},
                         {"abs_error", r.abs_error},
                         {"tolerance", r.tolerance},
                         {"pass", r.pass}});
      }
      write_text(f.out, json{{"checks", table}, {"all_pass", all}}.dump(2) + "\n");
      return all ? 0 : 1;
    }

    if (vmc->parsed()) {
      const auto mc = loophull::accept::criterion_hull_and_winding_mc(
          f.seed, f.threads, f.samples);
      json out{{"criteria", json::array()}};
      bool all = mc.area.pass && mc.winding.pass;
      for (const auto* c : {&mc.area, &mc.winding}) {
        out["criteria"].push_back({{"id", c->id},
                                   {"name", c->name},
                                   {"pass", c->pass},
                                   {"detail", c->detail},
                                   {"seconds", c->seconds}});
      }
      if (mc_full) {
        const auto pw = loophull::accept::criterion_index_pointwise(
            f.seed, f.threads, 100000);
        all = all && pw.pass;
        out["criteria"].push_back({{"id", pw.id},
                                   {"name", pw.name},
                                   {"pass", pw.pass},
                                   {"detail", pw.detail},
                                   {"seconds", pw.seconds}});
      }
      if (!per_sample_csv.empty()) {
        loophull::ExperimentConfig cfg = experiment_config(f);
        cfg.steps = f.steps;
        cfg.keep_per_sample = true;
        const auto area = loophull::run_area_experiment(cfg);
        std::ostringstream os;
        os << "sample,hull_area\n";
        for (std::size_t i = 0; i < area.per_sample_hull.size(); ++i) {
          os << i << ',' << area.per_sample_hull[i] << '\n';
        }
        write_text(per_sample_csv, os.str());
      }
      out["all_pass"] = all;
      write_text(f.out, out.dump(2) + "\n");
      return all ? 0 : 1;
    }

    if (sle->parsed()) {
      loophull::LoewnerRun params;
      json reports = json::array();
      bool all = true;
      std::uint64_t idx = 0;
      for (const double theta : thetas) {
        params.seed = loophull::derive_seed(f.seed, idx++);
        const auto rep = loophull::estimate_side_probability(
            {std::cos(theta), std::sin(theta)}, kappa, f.samples, params,
            f.threads);
        const double sigma =
            std::sqrt(rep.analytic * (1.0 - rep.analytic) /
                      static_cast<double>(rep.right + rep.left));
        const bool ok = std::abs(rep.mean - rep.analytic) < 3.0 * sigma;
        all = all && ok;
        json j = loophull::report_to_json(rep);
        j["pass"] = ok;
        reports.push_back(j);
      }
      write_text(f.out, json{{"kappa", kappa}, {"reports", reports},
                             {"all_pass", all}}
                            .dump(2) +
                        "\n");
      return all ? 0 : 1;
    }

    if (vv->parsed()) {
      loophull::ExperimentConfig cfg = experiment_config(f);
      cfg.cells_per_unit = 256.0;
      const auto res = loophull::run_vervaat_check(cfg);
      write_text(f.out, loophull::report_to_json(res, cfg).dump(2) + "\n");
      return res.all_pass ? 0 : 1;
    }

    if (conv->parsed()) {
      std::vector<std::pair<int, double>> ladder;
      for (const std::string& rung : ladder_spec) {
        const auto colon = rung.find(':');
        if (colon == std::string::npos) {
          throw std::invalid_argument("ladder rung must be steps:cells_per_unit");
        }
        ladder.emplace_back(std::stoi(rung.substr(0, colon)),
                            std::stod(rung.substr(colon + 1)));
      }
      loophull::ExperimentConfig cfg = experiment_config(f);
      const auto rep = loophull::convergence_study(cfg, ladder);
      write_text(f.out, loophull::report_to_json(rep, cfg).dump(2) + "\n");
      return 0;
    }

    if (render->parsed()) {
      const loophull::PathKind kind = loophull::path_kind_from_string(f.kind);
      const loophull::BridgeSpec spec{f.steps, f.seed, kind};
      const loophull::LoopPath path = loophull::sample_path(spec);
      const loophull::GridSpec grid =
          loophull::make_grid_for_path(path, default_cells_per_unit(f), 0.05);
      loophull::RenderSpec rspec;
      rspec.out_path = f.out;
      if (mode == "hull") {
        const loophull::CellMask blocked = loophull::rasterize_path(path, grid);
        const loophull::CellMask outside =
            loophull::flood_fill_outside(blocked, grid);
        loophull::render_hull_svg(path, outside, grid, rspec);
      } else if (mode == "winding") {
        const loophull::PathRasterAnalysis an =
            loophull::analyze_path(path, grid);
        loophull::render_winding_svg(an.winding, an.blocked, an.outside, grid,
                                     rspec);
      } else {
        throw std::invalid_argument("render mode must be hull or winding");
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
