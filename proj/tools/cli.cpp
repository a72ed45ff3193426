#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "pebthresh/errors.hpp"
#include "pebthresh/multiset_lattice.hpp"
#include "pebthresh/pebbling.hpp"
#include "pebthresh/random_experiments.hpp"
#include "pebthresh/serialize.hpp"
#include "pebthresh/shadow_compression.hpp"
#include "pebthresh/verification.hpp"

namespace pebthresh::cli {

namespace {

enum class Format { Csv, Json };

struct Options {
  int n = 0;
  int t = 0;
  int r = 0;
  int b = 0;
  int m = 0;
  int k = 1;
  int i = 0;
  int j = 0;
  int p = 0;
  int root = 0;
  int from = 0;
  int to = 0;
  int max_t = 1 << 20;
  double x = 0.0;
  double c = 0.7;
  std::string s = "0";
  std::string rank = "0";
  std::string family = "path";
  std::string graph_json;
  std::string family_json;
  std::string family_file;
  std::string method = "auto";
  std::string output = "csv";
  std::vector<int> counts;
  std::vector<int> other;
  std::vector<int> ns;
  std::vector<int> ks{1};
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t chunk = 1024;
  std::uint64_t max_states = kDefaultMaxStates;
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned workers = 1;
  bool exhaustive = false;
  bool bounds = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  using Action = std::function<int()>;

  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, Action action) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("--output", o_.output, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    actions_.emplace_back(sub, std::move(action));
    return sub;
  }

  Format format() const { return o_.output == "json" ? Format::Json : Format::Csv; }

  // Prints `text` (one line) or the JSON form, depending on --output.
  int emit(const Json& json, const std::string& text) {
    out_ << (format() == Format::Json ? json.dump() : text) << '\n';
    return kOk;
  }

  void build_lattice(CLI::App& app);
  void build_shadow(CLI::App& app);
  void build_verify(CLI::App& app);
  void build_pebble(CLI::App& app);
  void build_estimate(CLI::App& app);
  void build_threshold(CLI::App& app);

  LevelFamily read_family() const;
  Graph read_graph(int n) const;
  Distribution read_distribution() const;
  int report_sweeps(const std::vector<std::pair<SweepReport, std::string>>& sweeps);

  std::ostream& out_;
  std::ostream& err_;
  Options o_;
  std::vector<std::pair<CLI::App*, Action>> actions_;
};

std::string ordering_name(Ordering ord) {
  switch (ord) {
    case Ordering::Less:
      return "LT";
    case Ordering::Equal:
      return "EQ";
    case Ordering::Greater:
      return "GT";
  }
  return "?";
}

BigCount parse_big(const std::string& text) {
  try {
    return BigCount(text);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + text + "'");
  }
}

std::string rational_json_text(const Rational& q) { return format_rational(q); }

LevelFamily Runner::read_family() const {
  std::string text = o_.family_json;
  if (!o_.family_file.empty()) {
    std::ifstream in(o_.family_file);
    if (!in) throw DomainError("cannot read " + o_.family_file);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) throw DomainError("a family is required (--family-json or --family-file)");
  try {
    return family_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw DomainError(std::string("bad family JSON: ") + e.what());
  }
}

Graph Runner::read_graph(int n) const {
  if (!o_.graph_json.empty()) {
    try {
      return graph_from_json(Json::parse(o_.graph_json));
    } catch (const Json::exception& e) {
      throw DomainError(std::string("bad graph JSON: ") + e.what());
    }
  }
  return make_graph(parse_family(o_.family), n);
}

Distribution Runner::read_distribution() const {
  if (o_.counts.empty()) throw DomainError("a distribution is required (--dist)");
  return Distribution(o_.counts);
}

int Runner::report_sweeps(const std::vector<std::pair<SweepReport, std::string>>& sweeps) {
  bool all = true;
  for (const auto& [report, unit] : sweeps) {
    if (format() == Format::Json) {
      out_ << Json{{"property", report.property},
                   {"checked", report.checked},
                   {"passed", report.passed},
                   {"counterexamples", report.counterexamples}}
                  .dump()
           << '\n';
    } else {
      out_ << report.property << ": " << report.summary(unit) << '\n';
      for (const auto& ce : report.counterexamples) out_ << "  counterexample: " << ce << '\n';
    }
    all = all && report.ok();
  }
  return all ? kOk : kPropertyFailed;
}

void Runner::build_lattice(CLI::App& app) {
  CLI::App* lattice = app.add_subcommand("lattice", "multiset lattice arithmetic");
  lattice->require_subcommand(1);

  auto* mc = leaf(lattice, "multichoose", "number of t-multisets of an n-set", [this] {
    const std::string v = multichoose(o_.n, o_.t).str();
    return emit(Json{{"value", v}}, v);
  });
  mc->add_option("--n", o_.n)->required();
  mc->add_option("--t", o_.t)->required();

  auto* mcr = leaf(lattice, "multichoose-real", "x(x+1)...(x+t-1)/t!", [this] {
    const double v = multichoose_real(o_.x, o_.t);
    return emit(Json{{"value", v}}, format_double(v));
  });
  mcr->add_option("--x", o_.x)->required();
  mcr->add_option("--t", o_.t)->required();

  auto* cmp = leaf(lattice, "compare", "colex comparison of two count vectors", [this] {
    const std::string v = ordering_name(colex_compare(Multiset(o_.counts), Multiset(o_.other)));
    return emit(Json{{"ordering", v}}, v);
  });
  cmp->add_option("--a", o_.counts)->delimiter(',')->required();
  cmp->add_option("--b", o_.other)->delimiter(',')->required();

  auto* en = leaf(lattice, "enumerate", "all t-multisets of [n] in colex order", [this] {
    const auto level = enumerate_level(o_.n, o_.t, o_.cap);
    if (format() == Format::Json) {
      out_ << to_json(LevelFamily(o_.n, o_.t, level)).dump() << '\n';
    } else {
      Json arr = Json::array();
      for (const auto& m : level) arr.push_back(to_json(m));
      out_ << arr.dump() << '\n';
    }
    return kOk;
  });
  en->add_option("--n", o_.n)->required();
  en->add_option("--t", o_.t)->required();
  en->add_option("--cap", o_.cap, "enumeration cap");

  auto* rk = leaf(lattice, "rank", "0-based colex rank of a count vector", [this] {
    const std::string v = colex_rank(Multiset(o_.counts)).str();
    return emit(Json{{"rank", v}}, v);
  });
  rk->add_option("--counts", o_.counts)->delimiter(',')->required();

  auto* ur = leaf(lattice, "unrank", "multiset of a given colex rank", [this] {
    out_ << to_json(colex_unrank(o_.n, o_.t, parse_big(o_.rank))).dump() << '\n';
    return kOk;
  });
  ur->add_option("--n", o_.n)->required();
  ur->add_option("--t", o_.t)->required();
  ur->add_option("--rank", o_.rank)->required();

  auto* seg = leaf(lattice, "initial-segment", "first s members in colex order", [this] {
    out_ << to_json(initial_segment(o_.n, o_.t, parse_big(o_.s), o_.cap)).dump() << '\n';
    return kOk;
  });
  seg->add_option("--n", o_.n)->required();
  seg->add_option("--t", o_.t)->required();
  seg->add_option("--s", o_.s)->required();
  seg->add_option("--cap", o_.cap);

  auto* refm = leaf(lattice, "reference-m", "M_n(r;b) = {A : A(n) < b}", [this] {
    out_ << to_json(reference_M(o_.n, o_.r, o_.b, o_.cap)).dump() << '\n';
    return kOk;
  });
  auto* refn = leaf(lattice, "reference-n", "N_n(r;b) = {A : top b elements absent}", [this] {
    out_ << to_json(reference_N(o_.n, o_.r, o_.b, o_.cap)).dump() << '\n';
    return kOk;
  });

  auto prob_action = [this](bool is_m) {
    return [this, is_m] {
      const Rational exact = is_m ? prob_M(o_.n, o_.r, o_.b) : prob_N(o_.n, o_.r, o_.b);
      const Bounds bounds = is_m ? prob_M_bounds(o_.n, o_.r, o_.b) : prob_N_bounds(o_.n, o_.r, o_.b);
      if (format() == Format::Json) {
        out_ << Json{{"exact", rational_json_text(exact)},
                     {"value", exact.convert_to<double>()},
                     {"lower", bounds.lower},
                     {"upper", bounds.upper}}
                    .dump()
             << '\n';
      } else if (o_.bounds) {
        out_ << "exact,lower,upper\n"
             << format_rational(exact) << ',' << format_double(bounds.lower) << ','
             << format_double(bounds.upper) << '\n';
      } else {
        out_ << format_rational(exact) << '\n';
      }
      return kOk;
    };
  };
  auto* pm = leaf(lattice, "prob-m", "probability of M_n(r;b) with exponential bounds", prob_action(true));
  auto* pn = leaf(lattice, "prob-n", "probability of N_n(r;b) with exponential bounds", prob_action(false));

  for (CLI::App* sub : {refm, refn, pm, pn}) {
    sub->add_option("--n", o_.n)->required();
    sub->add_option("--r", o_.r)->required();
    sub->add_option("--b", o_.b)->required();
  }
  refm->add_option("--cap", o_.cap);
  refn->add_option("--cap", o_.cap);
  for (CLI::App* sub : {pm, pn}) {
    sub->add_flag("--bounds", o_.bounds, "also print the exponential bounds");
  }
}

void Runner::build_shadow(CLI::App& app) {
  CLI::App* sh = app.add_subcommand("shadow", "shadows and compressions of level families");
  sh->require_subcommand(1);

  auto family_input = [this](CLI::App* sub) {
    sub->add_option("--family-json", o_.family_json, R"(family as {"n":..,"t":..,"members":[[..],..]})");
    sub->add_option("--family-file", o_.family_file, "file holding the family JSON");
  };

  auto* comp = leaf(sh, "compute", "k-fold shadow of a family", [this] {
    const LevelFamily f = iterated_shadow(read_family(), o_.k);
    out_ << to_json(f).dump() << '\n';
    return kOk;
  });
  family_input(comp);
  comp->add_option("--k", o_.k, "number of shadow steps (default 1)");

  auto* cp = leaf(sh, "compress", "one (i,j) compression", [this] {
    auto [f, step] = compress_pair(read_family(), o_.i, o_.j);
    Json j = to_json(f);
    j["moved"] = step.moved;
    out_ << j.dump() << '\n';
    return kOk;
  });
  family_input(cp);
  cp->add_option("--i", o_.i)->required();
  cp->add_option("--j", o_.j)->required();

  auto* fc = leaf(sh, "fully-compress", "compress until no pair changes the family", [this] {
    out_ << to_json(fully_compress(read_family())).dump() << '\n';
    return kOk;
  });
  family_input(fc);

  auto* ic = leaf(sh, "is-compressed", "true when no compression changes the family", [this] {
    const bool v = is_compressed(read_family());
    return emit(Json{{"compressed", v}}, v ? "true" : "false");
  });
  family_input(ic);

  auto* part = leaf(sh, "partition", "layers A_j = {A : A(1) = j} and A^1", [this] {
    const LevelFamily f = read_family();
    Json layers = Json::array();
    for (const auto& layer : layer_partition(f)) layers.push_back(to_json(layer)["members"]);
    out_ << Json{{"layers", layers}, {"first_column", to_json(first_column(f))["members"]}}.dump()
         << '\n';
    return kOk;
  });
  family_input(part);

  auto* cl = leaf(sh, "cl-min", "least k-shadow size of an s-member family", [this] {
    const std::string v = cl_min_shadow(o_.n, o_.t, parse_big(o_.s), o_.k, o_.cap).str();
    return emit(Json{{"min_shadow", v}}, v);
  });
  cl->add_option("--n", o_.n)->required();
  cl->add_option("--t", o_.t)->required();
  cl->add_option("--s", o_.s)->required();
  cl->add_option("--k", o_.k);

  auto* lx = leaf(sh, "lovasz-x", "x >= 0 with <x over t> = s", [this] {
    const double x = lovasz_x(parse_big(o_.s), o_.t);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return emit(Json{{"x", x}}, buf);
  });
  lx->add_option("--s", o_.s)->required();
  lx->add_option("--t", o_.t)->required();

  auto* lc = leaf(sh, "lovasz-check", "|shadow| against <x over t-1>", [this] {
    const auto c = lovasz_check(read_family());
    if (format() == Format::Json) {
      out_ << Json{{"holds", c.holds}, {"x", c.x}, {"bound", c.bound}, {"actual", c.actual}}.dump()
           << '\n';
    } else {
      out_ << "holds,x,bound,actual\n"
           << (c.holds ? "true" : "false") << ',' << format_double(c.x) << ','
           << format_double(c.bound) << ',' << c.actual << '\n';
    }
    return c.holds ? kOk : kPropertyFailed;
  });
  family_input(lc);
}

void Runner::build_verify(CLI::App& app) {
  CLI::App* verify = app.add_subcommand("verify", "property sweeps");
  verify->require_subcommand(1);

  auto* cl = leaf(verify, "cl", "shadow of any family is at least that of the colex initial segment", [this] {
    std::vector<std::pair<SweepReport, std::string>> sweeps;
    if (o_.exhaustive) sweeps.emplace_back(verify_cl_exhaustive(o_.n, o_.t, o_.ks), "families");
    if (o_.trials > 0) sweeps.emplace_back(verify_cl_random(o_.n, o_.t, o_.trials, o_.ks, o_.seed), "families");
    return report_sweeps(sweeps);
  });
  cl->add_option("--k", o_.ks, "shadow depths to check")->delimiter(',');

  auto* lov = leaf(verify, "lovasz", "|shadow F| >= <x over t-1> where |F| = <x over t>", [this] {
    std::vector<std::pair<SweepReport, std::string>> sweeps;
    if (o_.exhaustive) sweeps.emplace_back(verify_lovasz_exhaustive(o_.n, o_.t), "families");
    if (o_.trials > 0) sweeps.emplace_back(verify_lovasz_random(o_.n, o_.t, o_.trials, o_.seed), "families");
    sweeps.emplace_back(verify_lovasz_tight(o_.n, o_.t), "full levels");
    return report_sweeps(sweeps);
  });

  for (CLI::App* sub : {cl, lov}) {
    sub->add_option("--n", o_.n, "ground size (maximum for random trials)")->required();
    sub->add_option("--t", o_.t, "level (maximum for random trials)")->required();
    sub->add_flag("--exhaustive", o_.exhaustive, "all 2^|M_n(t)| families");
    sub->add_option("--trials", o_.trials, "random families with n, t up to the given values");
    sub->add_option("--seed", o_.seed);
  }

  o_.n = 5;
  o_.t = 5;
  auto* comp = leaf(verify, "compression", "compression lemmas on random (F, i, j)", [this] {
    const auto sweep = verify_compression_random(o_.n, o_.t, o_.trials, o_.seed);
    return report_sweeps({{sweep.shadow_monotone, "checks"}, {sweep.compressed_lemma, "checks"}});
  });
  comp->add_option("--n", o_.n, "maximum ground size (default 5)");
  comp->add_option("--t", o_.t, "maximum level (default 5)");
  comp->add_option("--trials", o_.trials)->required();
  comp->add_option("--seed", o_.seed);

  auto* peb = leaf(verify, "pebbling", "path solvers and certificates against brute force", [this] {
    return report_sweeps({{verify_greedy_vs_bruteforce(o_.n, o_.t), "checks"},
                          {verify_weight_certificate(o_.n, o_.t), "checks"},
                          {verify_empty_block_witness(o_.n, o_.t), "checks"},
                          {verify_block_sufficiency(o_.n, std::max(o_.m, 1), o_.t), "checks"}});
  });
  peb->add_option("--n", o_.n, "maximum path length (default 5)");
  peb->add_option("--t", o_.t, "maximum pebble count (default 5)");
  peb->add_option("--m", o_.m, "maximum block length for sufficiency (default 1)");

  auto* mono = leaf(verify, "monotone", "adding a pebble keeps z-solvability (all connected graphs)", [this] {
    return report_sweeps({{verify_monotonicity(o_.n, o_.t), "checks"}});
  });
  mono->add_option("--n", o_.n, "maximum vertex count (default 5)");
  mono->add_option("--t", o_.t, "maximum pebble count (default 5)");
}

void Runner::build_pebble(CLI::App& app) {
  CLI::App* peb = app.add_subcommand("pebble", "pebbling moves, solvers and certificates");
  peb->require_subcommand(1);

  auto graph_input = [this](CLI::App* sub) {
    sub->add_option("--family", o_.family, "path, cycle or complete")->check(
        CLI::IsMember({"path", "cycle", "complete"}));
    sub->add_option("--graph-json", o_.graph_json, R"(explicit graph {"n":..,"edges":[[v,w],..]})");
    sub->add_option("--n", o_.n, "vertex count for named families");
  };

  auto* solve = leaf(peb, "solve", "decide (root-)solvability with a witness or certificate", [this] {
    const Distribution d = read_distribution();
    const Graph g = read_graph(o_.n > 0 ? o_.n : static_cast<int>(d.ground_size()));
    if (o_.root == 0) {
      const bool ok = o_.method == "brute" ? is_solvable_bruteforce(g, d, o_.max_states)
                                           : is_solvable(g, d, o_.max_states);
      return emit(Json{{"solvable", ok}}, ok ? "solvable" : "unsolvable");
    }
    const bool on_path = g.kind() == GraphKind::Path;
    if (o_.method == "greedy") {
      if (!on_path) throw DomainError("the greedy solver only applies to paths");
      const bool ok = path_z_solvable_greedy(g.order(), d, o_.root);
      return emit(Json{{"solvable", ok}, {"root", o_.root}}, ok ? "solvable" : "unsolvable");
    }
    const SolveResult res = is_z_solvable_bruteforce(g, d, o_.root, o_.max_states);
    Json j{{"solvable", res.solvable}, {"root", o_.root}};
    std::string text;
    if (res.solvable) {
      j["moves"] = to_json(*res.witness);
      text = "solvable; moves:";
      if (res.witness->empty()) text += " none";
      for (std::size_t idx = 0; idx < res.witness->size(); ++idx) {
        const Move& mv = (*res.witness)[idx];
        text += (idx ? ", (" : " (") + std::to_string(mv.from) + ',' + std::to_string(mv.to) + ')';
      }
    } else if (on_path && weight_certificate_unsolvable(d, o_.root)) {
      const std::string w = format_rational(root_weight(d, o_.root));
      j["weight_certificate"] = w;
      text = "unsolvable; weight-certificate " + w + " < 1";
    } else {
      text = "unsolvable";
    }
    return emit(j, text);
  });
  graph_input(solve);
  solve->add_option("--dist", o_.counts, "pebble counts, e.g. 3,0,0")->delimiter(',')->required();
  solve->add_option("--root", o_.root, "target vertex (omit for all roots)");
  solve->add_option("--method", o_.method, "auto, brute or greedy")->check(CLI::IsMember({"auto", "brute", "greedy"}));
  solve->add_option("--max-states", o_.max_states);

  auto* mv = leaf(peb, "move", "apply one pebbling step", [this] {
    const Distribution d = read_distribution();
    const Graph g = read_graph(o_.n > 0 ? o_.n : static_cast<int>(d.ground_size()));
    out_ << to_json(apply_move(g, d, o_.from, o_.to)).dump() << '\n';
    return kOk;
  });
  graph_input(mv);
  mv->add_option("--dist", o_.counts)->delimiter(',')->required();
  mv->add_option("--from", o_.from)->required();
  mv->add_option("--to", o_.to)->required();

  auto* wt = leaf(peb, "weights", "discounted weights Y^+, Y^- at a path vertex", [this] {
    const Distribution d = read_distribution();
    const std::string plus = format_rational(weight_plus(d, o_.root));
    const std::string minus = format_rational(weight_minus(d, o_.root));
    const std::string total = format_rational(root_weight(d, o_.root));
    const bool cert = weight_certificate_unsolvable(d, o_.root);
    return emit(Json{{"y_plus", plus}, {"y_minus", minus}, {"root_weight", total}, {"certificate", cert}},
                "y_plus,y_minus,root_weight,certificate\n" + plus + ',' + minus + ',' + total + ',' +
                    (cert ? "unsolvable" : "none"));
  });
  wt->add_option("--dist", o_.counts)->delimiter(',')->required();
  wt->add_option("--root", o_.root)->required();

  auto* bl = leaf(peb, "blocks", "partition P_n into floor(n/m) blocks", [this] {
    Json j = Json::array();
    std::string text = "first,last,center";
    for (const auto& b : block_partition(o_.n, o_.m)) {
      j.push_back(Json{{"first", b.first}, {"last", b.last}, {"center", b.center()}});
      text += '\n' + std::to_string(b.first) + ',' + std::to_string(b.last) + ',' + std::to_string(b.center());
    }
    return emit(j, text);
  });
  bl->add_option("--n", o_.n)->required();
  bl->add_option("--m", o_.m)->required();

  auto* wit = leaf(peb, "witness", "empty block whose center is provably unreachable", [this] {
    const auto w = unsolvability_witness_path(read_distribution(), o_.m);
    if (!w) return emit(Json{{"witness", nullptr}}, "no witness");
    return emit(Json{{"witness", {{"first", w->block.first}, {"last", w->block.last}, {"center", w->center}}}},
                "unsolvable; empty block [" + std::to_string(w->block.first) + ".." +
                    std::to_string(w->block.last) + "], center " + std::to_string(w->center));
  });
  wit->add_option("--dist", o_.counts)->delimiter(',')->required();
  wit->add_option("--m", o_.m)->required();

  auto* suf = leaf(peb, "sufficiency", "every block holds at least 2^m pebbles", [this] {
    const bool v = block_sufficiency_solvable(read_distribution(), o_.m);
    return emit(Json{{"sufficient", v}}, v ? "solvable" : "no claim");
  });
  suf->add_option("--dist", o_.counts)->delimiter(',')->required();
  suf->add_option("--m", o_.m)->required();
}

void Runner::build_estimate(CLI::App& app) {
  CLI::App* est = app.add_subcommand("estimate", "random distributions and exact probabilities");
  est->require_subcommand(1);

  auto* solv = leaf(est, "solvable", "Monte Carlo estimate of the solvable fraction", [this] {
    const Graph g = read_graph(o_.n);
    SamplingConfig sc;
    sc.samples = o_.samples;
    sc.seed = o_.seed;
    sc.chunk = o_.chunk;
    sc.workers = o_.workers;
    sc.max_states = o_.max_states;
    const Estimate e = estimate_solvable_prob(g, o_.t, sc);
    const std::string fam = o_.graph_json.empty() ? o_.family : "graph";
    if (format() == Format::Json) {
      out_ << estimate_record(fam, g.order(), o_.t, e, o_.seed).dump() << '\n';
    } else {
      out_ << kEstimateCsvHeader << '\n' << estimate_csv_row(fam, g.order(), o_.t, e, o_.seed) << '\n';
    }
    return kOk;
  });

  auto* exact = leaf(est, "exact", "solvable fraction by enumeration", [this] {
    const Graph g = read_graph(o_.n);
    const Solver solver = o_.method == "brute" ? Solver::BruteForce : Solver::Auto;
    const std::string v = format_rational(exact_solvable_prob(g, o_.t, solver, o_.cap));
    return emit(Json{{"probability", v}}, v);
  });

  for (CLI::App* sub : {solv, exact}) {
    sub->add_option("--family", o_.family, "path, cycle or complete")
        ->check(CLI::IsMember({"path", "cycle", "complete"}));
    sub->add_option("--graph-json", o_.graph_json);
    sub->add_option("--n", o_.n);
    sub->add_option("--t", o_.t)->required();
    sub->add_option("--max-states", o_.max_states);
  }
  solv->add_option("--samples", o_.samples);
  solv->add_option("--seed", o_.seed);
  solv->add_option("--chunk", o_.chunk, "samples per substream");
  solv->add_option("--workers", o_.workers, "threads; never changes the output");
  exact->add_option("--method", o_.method, "auto or brute")->check(CLI::IsMember({"auto", "brute"}));
  exact->add_option("--cap", o_.cap);

  auto* sample = leaf(est, "sample", "draw uniform distributions", [this] {
    RngStream rng(o_.seed, 0);
    for (std::uint64_t i = 0; i < o_.samples; ++i) {
      out_ << to_json(sample_uniform_distribution(o_.n, o_.t, rng)).dump() << '\n';
    }
    return kOk;
  });
  sample->add_option("--n", o_.n)->required();
  sample->add_option("--t", o_.t)->required();
  sample->add_option("--samples", o_.samples);
  sample->add_option("--seed", o_.seed);

  auto* tail = leaf(est, "tail", "Pr[D_i >= p] for a fixed vertex", [this] {
    const std::string v = format_rational(tail_prob(o_.n, o_.t, o_.p));
    return emit(Json{{"probability", v}}, v);
  });
  tail->add_option("--n", o_.n)->required();
  tail->add_option("--t", o_.t)->required();
  tail->add_option("--p", o_.p)->required();

  auto* eb = leaf(est, "empty-block", "Pr[m fixed vertices empty] and expected empty blocks", [this] {
    const Rational q = empty_block_prob(o_.n, o_.t, o_.m);
    const double expect = expected_empty_blocks(o_.n, o_.t, o_.m);
    if (format() == Format::Json) {
      out_ << Json{{"probability", format_rational(q)}, {"expected_empty_blocks", expect}}.dump() << '\n';
    } else {
      out_ << "probability,expected_empty_blocks\n" << format_rational(q) << ',' << format_double(expect) << '\n';
    }
    return kOk;
  });
  eb->add_option("--n", o_.n)->required();
  eb->add_option("--t", o_.t)->required();
  eb->add_option("--m", o_.m)->required();
}

void Runner::build_threshold(CLI::App& app) {
  CLI::App* th = app.add_subcommand("threshold", "threshold estimation");
  th->require_subcommand(1);

  auto config = [this] {
    ThresholdConfig tc;
    tc.samples = o_.samples;
    tc.seed = o_.seed;
    tc.chunk = o_.chunk;
    tc.workers = o_.workers;
    tc.max_t = o_.max_t;
    tc.max_states = o_.max_states;
    return tc;
  };
  auto opt_text = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };

  auto* est = leaf(th, "estimate", "evidence grid and bracket for one n", [this, config, opt_text] {
    const auto te = estimate_threshold(parse_family(o_.family), o_.n, config());
    if (format() == Format::Json) {
      out_ << to_json(te).dump() << '\n';
      return kOk;
    }
    out_ << "# t_hat=" << opt_text(te.t_hat) << " t_lo=" << te.t_lo << " t_hi=" << opt_text(te.t_hi)
         << " converged=" << (te.converged ? "true" : "false") << '\n';
    out_ << kEstimateCsvHeader << '\n';
    for (const auto& point : te.grid) {
      out_ << estimate_csv_row(o_.family, o_.n, point.t, point.estimate, o_.seed) << '\n';
    }
    return kOk;
  });
  est->add_option("--n", o_.n)->required();

  auto* sweep = leaf(th, "sweep", "t_hat over several n with reference growth curves", [this, config, opt_text] {
    const GraphFamily fam = parse_family(o_.family);
    Json records = Json::array();
    if (format() == Format::Csv) {
      out_ << "family,n,t_hat,t_lo,t_hi,converged,samples,seed,curve_lower,curve_upper\n";
    }
    for (int n : o_.ns) {
      const auto te = estimate_threshold(fam, n, config());
      // n 2^(c sqrt(lg n)) and n 2^(2 sqrt(lg n)), the path threshold growth curves
      const double root_lg = std::sqrt(std::log2(static_cast<double>(n)));
      const double lower = n * std::exp2(o_.c * root_lg);
      const double upper = n * std::exp2(2.0 * root_lg);
      if (format() == Format::Json) {
        Json rec = to_json(te);
        rec["curve_lower"] = lower;
        rec["curve_upper"] = upper;
        rec["samples"] = o_.samples;
        rec["seed"] = o_.seed;
        records.push_back(std::move(rec));
      } else {
        out_ << o_.family << ',' << n << ',' << opt_text(te.t_hat) << ',' << te.t_lo << ','
             << opt_text(te.t_hi) << ',' << (te.converged ? "true" : "false") << ',' << o_.samples
             << ',' << o_.seed << ',' << format_double(lower) << ',' << format_double(upper) << '\n';
      }
    }
    if (format() == Format::Json) out_ << records.dump() << '\n';
    return kOk;
  });
  sweep->add_option("--n", o_.ns, "comma-separated vertex counts")->delimiter(',')->required();
  sweep->add_option("--c", o_.c, "exponent constant of the lower curve (default 0.7)");

  for (CLI::App* sub : {est, sweep}) {
    sub->add_option("--family", o_.family)->check(CLI::IsMember({"path", "cycle", "complete"}));
    sub->add_option("--samples", o_.samples);
    sub->add_option("--seed", o_.seed);
    sub->add_option("--chunk", o_.chunk);
    sub->add_option("--workers", o_.workers);
    sub->add_option("--max-t", o_.max_t)->check(CLI::Range(1, 1 << 30));
    sub->add_option("--max-states", o_.max_states);
  }
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"Multiset lattice shadows, graph pebbling and random pebbling thresholds", "pebthresh"};
  app.require_subcommand(1);
  build_lattice(app);
  build_shadow(app);
  build_verify(app);
  build_pebble(app);
  build_estimate(app);
  build_threshold(app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kOk : kUsageOrDomain;
  }

  try {
    for (auto& [sub, action] : actions_) {
      if (sub->parsed()) return action();
    }
    err_ << "no command given\n";
    return kUsageOrDomain;
  } catch (const SizeError& e) {
    err_ << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const ResourceError& e) {
    err_ << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kUsageOrDomain;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

}  // namespace pebthresh::cli
