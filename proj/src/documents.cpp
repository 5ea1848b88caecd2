#include "pipmesh/documents.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "pipmesh/mesh_io.hpp"

namespace pipmesh {

using namespace json_util;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

std::shared_ptr<const MeshTopology> resolve_mesh(const Json& ref,
                                                 const std::filesystem::path& base_dir,
                                                 std::string_view path) {
  if (ref.is_string()) {
    std::filesystem::path file = ref.get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    std::string text;
    try {
      text = read_file(file);
    } catch (const std::runtime_error& e) {
      throw DocumentError(std::string(path), e.what());
    }
    return std::make_shared<const MeshTopology>(import_mesh(text));
  }
  if (!ref.is_object()) throw DocumentError(std::string(path), "expected object or file path");
  if (ref.contains("pucs")) return std::make_shared<const MeshTopology>(mesh_from_json(ref, path));
  const int h = as_int(require(ref, "height", path), join(path, "height"));
  const int w = as_int(require(ref, "width", path), join(path, "width"));
  if (h < 1) throw DocumentError(join(path, "height"), "must be >= 1");
  if (w < 1) throw DocumentError(join(path, "width"), "must be >= 1");
  return std::make_shared<const MeshTopology>(build_hex_mesh(h, w));
}

namespace {

std::vector<double> weight_overrides(const Json& doc, const char* key, std::size_t n_arms) {
  std::vector<double> w(n_arms, 1.0);
  if (!doc.contains(key)) return w;
  const auto& obj = doc[key];
  if (!obj.is_object()) throw DocumentError(key, "expected object keyed by arm id");
  for (const auto& [k, v] : obj.items()) {
    const auto field = join(key, k);
    int id = -1;
    auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), id);
    if (ec != std::errc{} || ptr != k.data() + k.size() || id < 0 ||
        static_cast<std::size_t>(id) >= n_arms) {
      throw DocumentError(field, "not an arm id");
    }
    const double x = as_number(v, field);
    if (!(x >= 0)) throw DocumentError(field, "weight must be >= 0");
    w[static_cast<std::size_t>(id)] = x;
  }
  return w;
}

PucState parse_state(const Json& v, const std::string& path) {
  const auto s = as_string(v, path);
  if (s == "unused") return PucState::kUnused;
  if (s == "bar") return PucState::kBar;
  if (s == "cross") return PucState::kCross;
  throw DocumentError(path, fmt::format("unknown PUC state '{}'", s));
}

SolveStatus parse_status(const Json& v, const std::string& path) {
  const auto s = as_string(v, path);
  if (s == "optimal") return SolveStatus::kOptimal;
  if (s == "infeasible") return SolveStatus::kInfeasible;
  if (s == "timeout") return SolveStatus::kTimeout;
  throw DocumentError(path, fmt::format("unknown status '{}'", s));
}

}  // namespace

RoutingProblem problem_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw DocumentError("<root>", "expected object");
  auto topology = resolve_mesh(require(doc, "mesh", ""), base_dir, "mesh");
  const auto& arr = require_array(doc, "routes", "");
  std::vector<RouteRequest> routes;
  std::set<int> ids;
  std::set<int> ports;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto path = join("routes", i);
    RouteRequest r;
    r.route_id = as_int(require(arr[i], "id", path), join(path, "id"));
    if (!ids.insert(r.route_id).second) throw DocumentError(join(path, "id"), "duplicate route id");
    for (auto [key, dst] : {std::pair{"source", &r.source}, std::pair{"drain", &r.drain}}) {
      const auto field = join(path, key);
      const int p = as_int(require(arr[i], key, path), field);
      if (!topology->contains(PortId{p})) throw DocumentError(field, fmt::format("no port {}", p));
      if (!ports.insert(p).second) throw DocumentError(field, fmt::format("port {} used twice", p));
      *dst = PortId{p};
    }
    routes.push_back(r);
  }
  double bound = default_max_route_length(*topology);
  if (doc.contains("L")) {
    bound = as_number(doc["L"], "L");
    if (!(bound >= 0)) throw DocumentError("L", "must be >= 0");
  }
  const auto n_arms = topology->arms().size();
  auto cost = weight_overrides(doc, "cost_weights", n_arms);
  auto loss = weight_overrides(doc, "loss_weights", n_arms);
  return RoutingProblem(std::move(topology), std::move(routes), std::move(cost), std::move(loss),
                        bound);
}

Json problem_to_json(const RoutingProblem& problem) {
  const auto& t = problem.topology();
  Json doc;
  const auto inline_doc = mesh_to_json(t);
  if (inline_doc == mesh_to_json(build_hex_mesh(t.height(), t.width()))) {
    doc["mesh"] = {{"height", t.height()}, {"width", t.width()}};
  } else {
    doc["mesh"] = inline_doc;
  }
  doc["routes"] = Json::array();
  for (const auto& r : problem.routes()) {
    doc["routes"].push_back({{"id", r.route_id}, {"source", r.source.value}, {"drain", r.drain.value}});
  }
  doc["L"] = problem.max_route_length();
  for (auto [key, weights] : {std::pair{"cost_weights", &problem.cost_weights()},
                              std::pair{"loss_weights", &problem.loss_weights()}}) {
    Json over = Json::object();
    for (std::size_t i = 0; i < weights->size(); ++i) {
      if ((*weights)[i] != 1.0) over[std::to_string(i)] = (*weights)[i];
    }
    if (!over.empty()) doc[key] = over;
  }
  return doc;
}

Json outcome_to_json(const RoutingProblem& problem, const SolveOutcome& outcome) {
  Json doc;
  doc["status"] = to_string(outcome.status);
  doc["routes"] = Json::array();
  doc["puc_states"] = Json::array();
  if (!outcome.optimal()) {
    doc["objective"] = nullptr;
    return doc;
  }
  const auto& s = *outcome.solution;
  doc["objective"] = s.objective;
  for (std::size_t i = 0; i < problem.routes().size(); ++i) {
    Json arms = Json::array();
    for (auto id : s.paths[i]) arms.push_back(id.value);
    doc["routes"].push_back({{"id", problem.routes()[i].route_id}, {"arms", arms}});
  }
  for (auto st : s.puc_states) doc["puc_states"].push_back(to_string(st));
  return doc;
}

LoadedOutcome outcome_from_json(const Json& doc, const RoutingProblem& problem) {
  LoadedOutcome out;
  out.status = parse_status(require(doc, "status", ""), "status");
  if (out.status != SolveStatus::kOptimal) return out;

  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < problem.routes().size(); ++i) index[problem.routes()[i].route_id] = i;

  RoutingSolution s;
  s.objective = as_number(require(doc, "objective", ""), "objective");
  s.paths.resize(problem.routes().size());
  s.assignment.resize(problem.routes().size());
  std::vector<bool> seen(problem.routes().size(), false);
  const auto& routes = require_array(doc, "routes", "");
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const auto path = join("routes", i);
    const int id = as_int(require(routes[i], "id", path), join(path, "id"));
    auto it = index.find(id);
    if (it == index.end()) throw DocumentError(join(path, "id"), fmt::format("no route {} in problem", id));
    if (seen[it->second]) throw DocumentError(join(path, "id"), "route listed twice");
    seen[it->second] = true;
    const auto& arms = require_array(routes[i], "arms", path);
    for (std::size_t k = 0; k < arms.size(); ++k) {
      s.paths[it->second].emplace_back(as_int(arms[k], join(join(path, "arms"), k)));
    }
    s.assignment[it->second] = s.paths[it->second];
    std::sort(s.assignment[it->second].begin(), s.assignment[it->second].end());
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw DocumentError("routes", fmt::format("route {} missing", problem.routes()[i].route_id));
    }
  }
  const auto& states = require_array(doc, "puc_states", "");
  for (std::size_t i = 0; i < states.size(); ++i) {
    s.puc_states.push_back(parse_state(states[i], join("puc_states", i)));
  }
  out.solution = std::move(s);
  return out;
}

Json report_to_json(const ViolationReport& report) {
  Json doc;
  doc["violations"] = Json::array();
  for (const auto& v : report.violations) {
    doc["violations"].push_back({{"rule", to_string(v.rule)},
                                 {"route", v.route < 0 ? Json(nullptr) : Json(v.route)},
                                 {"entity", v.entity},
                                 {"detail", v.detail}});
  }
  return doc;
}

Json schedule_to_json(const MeshTopology& topology, const RotorSchedule& schedule) {
  Json doc;
  doc["mesh"] = {{"height", topology.height()}, {"width", topology.width()}};
  doc["radix"] = schedule.radix;
  doc["policy"] = to_string(schedule.policy);
  doc["bindings"] = Json::array();
  for (std::size_t i = 0; i < schedule.bindings.size(); ++i) {
    doc["bindings"].push_back(
        {{"index", i}, {"tx", schedule.bindings[i].tx.value}, {"rx", schedule.bindings[i].rx.value}});
  }
  doc["matchings"] = Json::array();
  for (const auto& m : schedule.matchings) {
    Json pairs = Json::array();
    for (auto [i, j] : m.pairs) pairs.push_back({i, j});
    doc["matchings"].push_back({{"k", m.k}, {"pairs", pairs}});
  }
  return doc;
}

RotorSchedule schedule_from_json(const Json& doc, const MeshTopology& topology) {
  RotorSchedule s;
  s.radix = as_int(require(doc, "radix", ""), "radix");
  if (s.radix < 2) throw DocumentError("radix", "must be >= 2");
  try {
    s.policy = parse_policy(as_string(require(doc, "policy", ""), "policy"));
  } catch (const std::invalid_argument& e) {
    throw DocumentError("policy", e.what());
  }
  const auto& bindings = require_array(doc, "bindings", "");
  if (bindings.size() != static_cast<std::size_t>(s.radix)) {
    throw DocumentError("bindings", fmt::format("expected {} entries", s.radix));
  }
  std::set<int> used;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    const auto path = join("bindings", i);
    const int index = as_int(require(bindings[i], "index", path), join(path, "index"));
    if (index != static_cast<int>(i)) throw DocumentError(join(path, "index"), "out of order");
    PortBinding b;
    for (auto [key, dst] : {std::pair{"tx", &b.tx}, std::pair{"rx", &b.rx}}) {
      const auto field = join(path, key);
      const int p = as_int(require(bindings[i], key, path), field);
      if (!topology.contains(PortId{p})) throw DocumentError(field, fmt::format("no port {}", p));
      if (!used.insert(p).second) throw DocumentError(field, fmt::format("port {} bound twice", p));
      *dst = PortId{p};
    }
    s.bindings.push_back(b);
  }
  const auto& matchings = require_array(doc, "matchings", "");
  for (std::size_t m = 0; m < matchings.size(); ++m) {
    const auto path = join("matchings", m);
    Matching mt;
    mt.k = as_int(require(matchings[m], "k", path), join(path, "k"));
    const auto& pairs = require_array(matchings[m], "pairs", path);
    std::set<int> srcs, dsts;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const auto field = join(join(path, "pairs"), q);
      if (!pairs[q].is_array() || pairs[q].size() != 2) throw DocumentError(field, "expected [i, j]");
      const int i = as_int(pairs[q][0], join(field, 0));
      const int j = as_int(pairs[q][1], join(field, 1));
      if (i < 0 || i >= s.radix || j < 0 || j >= s.radix || i == j) {
        throw DocumentError(field, "indices must be distinct and below radix");
      }
      if (!srcs.insert(i).second || !dsts.insert(j).second) {
        throw DocumentError(field, "port index repeated within matching");
      }
      mt.pairs.emplace_back(i, j);
    }
    s.matchings.push_back(std::move(mt));
  }
  return s;
}

Json schedule_result_to_json(const RotorSchedule& schedule, const ScheduleResult& result) {
  Json doc;
  doc["radix"] = schedule.radix;
  doc["policy"] = to_string(schedule.policy);
  doc["feasible"] = result.feasible();
  doc["matchings"] = Json::array();
  for (const auto& m : result.matchings) {
    Json row{{"k", m.k},
             {"status", to_string(m.outcome.status)},
             {"objective", m.outcome.optimal() ? Json(m.outcome.solution->objective) : Json(nullptr)},
             {"puc_count", m.puc_count},
             {"latency_ms", to_ms(m.latency)},
             {"solve_ms", m.solve_ms},
             {"violations", m.report.violations.size()}};
    doc["matchings"].push_back(std::move(row));
  }
  return doc;
}

}  // namespace pipmesh
