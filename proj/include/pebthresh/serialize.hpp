#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "pebthresh/multiset_lattice.hpp"
#include "pebthresh/pebbling.hpp"
#include "pebthresh/random_experiments.hpp"

namespace pebthresh {

using Json = nlohmann::json;

// Multiset / Distribution: array of counts, [2,0,1] for {1,1,3} over [3].
Json to_json(const Multiset& m);
Multiset multiset_from_json(const Json& j);

// {"n":3,"t":2,"members":[[2,0,0],[1,1,0]]}
Json to_json(const LevelFamily& f);
LevelFamily family_from_json(const Json& j);

// {"n":3,"edges":[[1,2],[2,3]]}
Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const Estimate& e);
Json to_json(const MoveSequence& moves);
Json to_json(const ThresholdEstimate& te);

// Six significant digits, printf %g style.
std::string format_double(double x);

// Column order of estimate records.
inline constexpr const char* kEstimateCsvHeader = "family,n,t,p_hat,ci_low,ci_high,samples,seed";
std::string estimate_csv_row(const std::string& family, int n, int t, const Estimate& e,
                             std::uint64_t seed);
Json estimate_record(const std::string& family, int n, int t, const Estimate& e,
                     std::uint64_t seed);

}  // namespace pebthresh
