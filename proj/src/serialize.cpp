#include "pebthresh/serialize.hpp"

#include <cstdio>

#include "pebthresh/errors.hpp"

namespace pebthresh {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

Json to_json(const Multiset& m) {
  Json out = Json::array();
  for (int c : m.counts()) out.push_back(c);
  return out;
}

Multiset multiset_from_json(const Json& j) {
  require(j.is_array(), "multiset JSON must be an array of counts");
  std::vector<int> counts;
  counts.reserve(j.size());
  for (const auto& c : j) {
    require(c.is_number_integer(), "multiset counts must be integers");
    counts.push_back(c.get<int>());
  }
  return Multiset(std::move(counts));
}

Json to_json(const LevelFamily& f) {
  Json members = Json::array();
  for (const auto& m : f) members.push_back(to_json(m));
  return Json{{"n", f.ground_size()}, {"t", f.level()}, {"members", std::move(members)}};
}

LevelFamily family_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("t") && j.contains("members"),
          "family JSON needs n, t and members");
  require(j["members"].is_array(), "family members must be an array");
  std::vector<Multiset> members;
  for (const auto& m : j["members"]) members.push_back(multiset_from_json(m));
  return LevelFamily(j["n"].get<int>(), j["t"].get<int>(), std::move(members));
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [v, w] : g.edges()) edges.push_back({v, w});
  return Json{{"n", g.order()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("edges"), "graph JSON needs n and edges");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    require(e.is_array() && e.size() == 2, "each edge must be a pair of vertices");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(j["n"].get<int>(), edges);
}

Json to_json(const Estimate& e) {
  return Json{{"p_hat", e.p_hat},     {"ci_low", e.ci_low},   {"ci_high", e.ci_high},
              {"samples", e.samples}, {"successes", e.successes}};
}

Json to_json(const MoveSequence& moves) {
  Json out = Json::array();
  for (const auto& m : moves) out.push_back({m.from, m.to});
  return out;
}

Json to_json(const ThresholdEstimate& te) {
  Json grid = Json::array();
  for (const auto& point : te.grid) {
    Json row = to_json(point.estimate);
    row["t"] = point.t;
    grid.push_back(std::move(row));
  }
  Json out{{"family", family_name(te.family)},
           {"n", te.n},
           {"t_lo", te.t_lo},
           {"converged", te.converged},
           {"grid", std::move(grid)}};
  out["t_hat"] = te.t_hat ? Json(*te.t_hat) : Json(nullptr);
  out["t_hi"] = te.t_hi ? Json(*te.t_hi) : Json(nullptr);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string estimate_csv_row(const std::string& family, int n, int t, const Estimate& e,
                             std::uint64_t seed) {
  return family + "," + std::to_string(n) + "," + std::to_string(t) + "," + format_double(e.p_hat) +
         "," + format_double(e.ci_low) + "," + format_double(e.ci_high) + "," +
         std::to_string(e.samples) + "," + std::to_string(seed);
}

Json estimate_record(const std::string& family, int n, int t, const Estimate& e,
                     std::uint64_t seed) {
  Json out = to_json(e);
  out["family"] = family;
  out["n"] = n;
  out["t"] = t;
  out["seed"] = seed;
  return out;
}

}  // namespace pebthresh
