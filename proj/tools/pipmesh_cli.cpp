// pipmesh command-line front end.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include <fmt/format.h>

#include "pipmesh/bench.hpp"
#include "pipmesh/config.hpp"
#include "pipmesh/documents.hpp"
#include "pipmesh/mesh_io.hpp"
#include "pipmesh/solver.hpp"
#include "pipmesh/verifier.hpp"

namespace fs = std::filesystem;
using namespace pipmesh;

namespace {

constexpr int kExitError = 2;

struct Globals {
  std::string config;
  std::optional<long long> budget_ms;
  std::string backend;
  std::string policy;
  std::string preset;
  std::optional<int> threads;
  std::string out;
};

Settings load_settings(const Globals& g) {
  Settings s;
  if (auto path = locate_config(g.config)) apply_config(s, parse_config(read_file(*path)));
  if (g.budget_ms) s.budget = std::chrono::milliseconds(*g.budget_ms);
  if (!g.backend.empty()) {
    make_backend(g.backend);
    s.backend = g.backend;
  }
  if (!g.policy.empty()) s.policy = parse_policy(g.policy);
  if (!g.preset.empty()) s.max_route_length = preset_route_length(g.preset);
  if (g.threads) s.threads = std::max(1, *g.threads);
  return s;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_file(g.out, text);
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

struct MeshArgs {
  int height = 0;
  int width = 0;
  std::string file;

  void add_to(CLI::App* cmd, bool require_size) {
    auto* h = cmd->add_option("--height", height, "Mesh height in cells");
    auto* w = cmd->add_option("--width", width, "Mesh width in cells");
    if (require_size) {
      h->required();
      w->required();
    } else {
      cmd->add_option("--mesh", file, "Mesh document");
    }
  }

  std::shared_ptr<const MeshTopology> load() const {
    if (!file.empty()) return std::make_shared<const MeshTopology>(import_mesh(read_file(file)));
    if (height < 1 || width < 1) throw std::invalid_argument("give --mesh or --height/--width >= 1");
    return std::make_shared<const MeshTopology>(build_hex_mesh(height, width));
  }
};

RoutingProblem load_problem(const std::string& file, const Settings& settings) {
  const auto doc = json_util::parse(read_file(file), file);
  auto p = problem_from_json(doc, fs::path(file).parent_path());
  // The preset overrides the document's bound only when given explicitly.
  if (settings.max_route_length) return p.with_max_route_length(*settings.max_route_length);
  return p;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument(fmt::format("bad integer '{}'", item));
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

void save_solutions(const std::string& dir, const std::vector<BenchRecord>& rows) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.problem) continue;
    const auto stem = r.matching < 0
                          ? fmt::format("{}_{}x{}_n{}", r.experiment, r.height, r.width, r.size)
                          : fmt::format("{}_{}x{}_n{}_k{}", r.experiment, r.height, r.width, r.size,
                                        r.matching);
    write_file(fs::path(dir) / (stem + ".problem.json"), dump(problem_to_json(*r.problem)));
    SolveOutcome outcome;
    if (r.solution) {
      outcome = SolveOutcome::make_optimal(*r.solution);
    } else if (r.status == "timeout") {
      outcome.status = SolveStatus::kTimeout;
    }
    write_file(fs::path(dir) / (stem + ".solution.json"), dump(outcome_to_json(*r.problem, outcome)));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit switching on hexagonal photonic meshes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, fmt::format("Config file (default ${})", kConfigEnvVar));
  app.add_option("--budget-ms", g.budget_ms, "Solver time budget per problem in ms");
  app.add_option("--backend", g.backend, "Solver backend (bnb, brute)");
  app.add_option("--policy", g.policy, "Port placement policy (spread, corners)");
  app.add_option("--preset", g.preset, "Route length preset (default, lossless17)");
  app.add_option("--threads", g.threads, "Worker threads for rotor matchings");
  app.add_option("--out", g.out, "Write output to this path instead of stdout");

  int exit_code = 0;

  // mesh
  auto* mesh = app.add_subcommand("mesh", "Build, inspect and export meshes");
  mesh->require_subcommand(1);
  MeshArgs mesh_build_args, mesh_info_args, mesh_export_args;
  auto* mesh_build = mesh->add_subcommand("build", "Build a hexagonal mesh document");
  mesh_build_args.add_to(mesh_build, true);
  mesh_build->callback([&] { emit(g, dump(mesh_to_json(*mesh_build_args.load()))); });

  auto* mesh_info = mesh->add_subcommand("info", "Print element counts");
  mesh_info_args.add_to(mesh_info, false);
  mesh_info->callback([&] {
    const auto t = mesh_info_args.load();
    emit(g, fmt::format("height {}\nwidth {}\npucs {}\nvertices {}\nports {}\narms {}\n", t->height(),
                        t->width(), t->pucs().size(), t->vertices().size(), t->ports().size(),
                        t->arms().size()));
  });

  auto* mesh_export = mesh->add_subcommand("export", "Validate and re-export a mesh document");
  mesh_export_args.add_to(mesh_export, false);
  mesh_export->callback([&] { emit(g, export_mesh(*mesh_export_args.load())); });

  // solve
  std::string solve_problem;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a routing problem document");
  solve_cmd->add_option("problem", solve_problem, "Problem document")->required();
  solve_cmd->callback([&] {
    const auto settings = load_settings(g);
    const auto problem = load_problem(solve_problem, settings);
    const auto outcome = make_backend(settings.backend)->solve(problem, settings.budget);
    emit(g, dump(outcome_to_json(problem, outcome)));
    std::cerr << to_string(outcome.status) << "\n";
  });

  // verify
  std::string verify_problem, verify_solution;
  bool verify_matching = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution against its problem");
  verify_cmd->add_option("problem", verify_problem, "Problem document")->required();
  verify_cmd->add_option("solution", verify_solution, "Solution document")->required();
  verify_cmd->add_flag("--matching", verify_matching,
                       "Also require each route to touch only its own ports");
  verify_cmd->callback([&] {
    const auto settings = load_settings(g);
    const auto problem = load_problem(verify_problem, settings);
    const auto loaded =
        outcome_from_json(json_util::parse(read_file(verify_solution), verify_solution), problem);
    ViolationReport report;
    if (loaded.solution) {
      report = verify(problem, *loaded.solution);
      if (verify_matching) {
        auto extra = verify_matching_semantics(problem, *loaded.solution);
        report.violations.insert(report.violations.end(), extra.violations.begin(),
                                 extra.violations.end());
      }
    }
    emit(g, dump(report_to_json(report)));
    exit_code = report.clean() ? 0 : 1;
  });

  // rotor
  auto* rotor = app.add_subcommand("rotor", "Rotor schedules");
  rotor->require_subcommand(1);
  MeshArgs rotor_gen_mesh;
  int rotor_gen_radix = 0;
  auto* rotor_gen = rotor->add_subcommand("gen", "Generate a schedule document");
  rotor_gen_mesh.add_to(rotor_gen, true);
  rotor_gen->add_option("--radix", rotor_gen_radix, "Number of end hosts N")->required();
  rotor_gen->callback([&] {
    const auto settings = load_settings(g);
    const auto t = rotor_gen_mesh.load();
    emit(g, dump(schedule_to_json(*t, make_schedule(*t, rotor_gen_radix, settings.policy))));
  });

  std::string rotor_run_file;
  auto* rotor_run = rotor->add_subcommand("run", "Solve every matching of a schedule document");
  rotor_run->add_option("schedule", rotor_run_file, "Schedule document")->required();
  rotor_run->callback([&] {
    const auto settings = load_settings(g);
    const auto doc = json_util::parse(read_file(rotor_run_file), rotor_run_file);
    const auto t = resolve_mesh(json_util::require(doc, "mesh", ""),
                                fs::path(rotor_run_file).parent_path(), "mesh");
    const auto schedule = schedule_from_json(doc, *t);
    const auto result = run_schedule(t, schedule, settings.schedule_options());
    emit(g, dump(schedule_result_to_json(schedule, result)));
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Scaling experiments (CSV output)");
  bench->require_subcommand(1);
  int radix_h = 0, radix_w = 0;
  std::string radix_list, radix_save;
  auto* bench_radix = bench->add_subcommand("radix", "Largest feasible rotor radix on one mesh");
  bench_radix->add_option("--height", radix_h, "Mesh height")->required();
  bench_radix->add_option("--width", radix_w, "Mesh width")->required();
  bench_radix->add_option("--radices", radix_list, "Comma-separated radix candidates");
  bench_radix->add_option("--save-solutions", radix_save, "Directory for per-row documents");
  bench_radix->callback([&] {
    const auto settings = load_settings(g);
    const auto result = cmd_bench_radix(radix_h, radix_w, parse_int_list(radix_list), settings);
    emit(g, radix_csv(result.records));
    if (!radix_save.empty()) save_solutions(radix_save, result.records);
    std::cerr << result.summary << "\n";
  });

  std::string scale_widths = "1,2,3,4", scale_routes = "1,2,4", scale_save;
  auto* bench_scale = bench->add_subcommand("meshscale", "Solve time against mesh size");
  bench_scale->add_option("--widths", scale_widths, "Comma-separated widths (H = W)");
  bench_scale->add_option("--routes", scale_routes, "Comma-separated route counts");
  bench_scale->add_option("--save-solutions", scale_save, "Directory for per-row documents");
  bench_scale->callback([&] {
    const auto settings = load_settings(g);
    const auto rows =
        cmd_bench_meshscale(parse_int_list(scale_widths), parse_int_list(scale_routes), settings);
    emit(g, meshscale_csv(rows));
    if (!scale_save.empty()) save_solutions(scale_save, rows);
  });

  // predict
  int predict_length = 0;
  auto* predict = app.add_subcommand("predict", "Bitrate and packet loss for a route length");
  predict->add_option("length", predict_length, "Route length in PUCs")->required();
  predict->callback([&] {
    const auto settings = load_settings(g);
    emit(g, format_prediction(predict_bitrate(settings.bitrate, predict_length)) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const MeshValidationError& e) {
    std::cerr << "error: mesh invariant '" << e.invariant() << "': " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
