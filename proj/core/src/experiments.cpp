// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "padiclab/checkers.hpp"
#include "padiclab/dynamics.hpp"
#include "padiclab/experiments.hpp"
#include "padiclab/source_spec.hpp"

namespace padiclab {

using json = nlohmann::json;

SpecError::SpecError(int line, std::string field, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + " (" + field + "): " + message
                                  : field + ": " + message),
      line_(line),
      field_(std::move(field)) {}

// ---------------------------------------------------------------------------
// Checker registry

const std::vector<CheckerInfo>& checker_registry() {
  static const std::vector<CheckerInfo> reg = {
      {"complexity", "factor complexity P(w, n) on the prefix window", "factors", false, true,
       {{"n_max", "12", "largest factor length"}}},
      {"factor_graph", "bipartite factor graph G_n: edges, P(w, 2n), connected components", "factor_graph, complexity",
       false, true,
       {{"n_min", "1", "smallest n"}, {"n_max", "8", "largest n"}}},
      {"uk_sets", "U_k(w), the collection over shifts, equal cardinality and the shift identity", "uk_collection, "
       "lem3_identity, identity_return", true, true,
       {{"limit", "", "scan limit per set (default: prefix_window * 16)"}}},
      {"lem7_lem8", "derived word u(k): letter recovery from (b_s, b_{s+1}) and the block-length search",
       "derived_word, lem7_check, lem8_min_length", true, true,
       {{"l_max", "12", "largest block length"}, {"limit", "", "scan limit per set (default: prefix_window * 16)"}}},
      {"th_main", "hypotheses and exact epsilon for a tilde-SL matrix", "check_th_main", true, true,
       {{"matrix", "", "word w (meaning A_w) or [a,b;c,d]; default A_u for periodic sources"},
        {"x_p", "", "point x:y with rational coordinates (required)"},
        {"m", "max", "orbit length, or max"},
        {"budget", "5000000", "work budget of the orbit check"}}},
      {"th_da", "hypotheses and exact epsilon for D_a", "check_th_da", true, true,
       {{"a", "1", "nonzero integer"},
        {"x_p", "", "point x:y with rational coordinates (required)"},
        {"m", "max", "orbit length, or max"},
        {"budget", "5000000", "work budget of the orbit check"}}},
      {"lmad_periodic", "both directions of the periodic LMad characterization", "lmad_certificate_periodic, "
       "pbad_estimate, check_th_main", false, true,
       {{"bounds", "10,50", "coefficient bounds B; stability compares the two largest"},
        {"eigen_k", "16", "digits of the eigenvectors"},
        {"sample_k", "4,8,12", "precisions for the sample points"},
        {"samples", "20", "number of sample points"},
        {"sample_digits", "2", "samples are (1 : y) with 0 <= y < p^sample_digits"},
        {"seed", "1", "sampling seed"}}},
      {"concat_scheme", "residues of a concatenation scheme: periodicity, uniqueness, exclusion", "concat_scheme_checker",
       true, false,
       {{"seeds", "", "seed letters (default: from a concat source)"},
        {"program", "", "concatenation map, e.g. X1 (default: from a concat source)"},
        {"n_max", "1000000", "step limit of the cycle search"}}},
      {"prop_lem1", "real-side inequality over consecutive convergent denominators", "prop_lem1_check", false, false,
       {{"x", "golden", "quadratic irrational"},
        {"n_max", "40", "largest n"},
        {"ab_max", "5", "bound on |a|, |b|"},
        {"eps", "", "epsilon for the dichotomy column"}}},
      {"vpw_screen", "screening of stabilizer candidates", "th_vpw_screen", true, false,
       {{"candidates", "", "';'-separated words or [a,b;c,d] matrices (required)"},
        {"x_p", "", "optional point x:y"}}},
  };
  return reg;
}

const CheckerInfo& checker_info(const std::string& name) {
  for (const auto& c : checker_registry()) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown checker '" + name + "'");
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

unsigned long parse_count(int line, const std::string& field, const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw SpecError(line, field, "expected a nonnegative integer, got '" + v + "'");
  }
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    throw SpecError(line, field, "value out of range: '" + v + "'");
  }
}

std::vector<int> parse_ks(int line, const std::string& v) {
  std::vector<int> ks;
  for (const auto& part : split(v, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const auto lo = parse_count(line, "k", trim(part.substr(0, dots)));
      const auto hi = parse_count(line, "k", trim(part.substr(dots + 2)));
      if (lo > hi) throw SpecError(line, "k", "empty range '" + part + "'");
      for (auto k = lo; k <= hi; ++k) ks.push_back(static_cast<int>(k));
    } else {
      ks.push_back(static_cast<int>(parse_count(line, "k", part)));
    }
  }
  if (ks.empty()) throw SpecError(line, "k", "no precision given");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) throw SpecError(line, "k", "precisions must be positive");
  return ks;
}

}  // namespace

ExperimentSpec parse_spec(std::string_view text) {
  ExperimentSpec spec;
  std::map<std::string, int> seen;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw SpecError(line, body, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw SpecError(line, "?", "missing key");
    if (auto [it, fresh] = seen.try_emplace(key, line); !fresh) {
      throw SpecError(line, key, "duplicate key (first set on line " + std::to_string(it->second) + ")");
    }
    if (key == "name") {
      if (value.empty() || value.find_first_of("/\\ \t") != std::string::npos) {
        throw SpecError(line, key, "name must be nonempty without spaces or slashes");
      }
      spec.name = value;
    } else if (key == "source") {
      try {
        (void)parse_source(value);
      } catch (const std::exception& e) {
        throw SpecError(line, key, e.what());
      }
      spec.source = value;
    } else if (key == "p") {
      spec.p = parse_count(line, key, value);
      if (!is_prime(spec.p)) throw SpecError(line, key, value + " is not prime");
    } else if (key == "k") {
      spec.ks = parse_ks(line, value);
    } else if (key == "prefix_window") {
      spec.prefix_window = parse_count(line, key, value);
      if (spec.prefix_window == 0) throw SpecError(line, key, "must be positive");
    } else if (key == "shift_window") {
      spec.shift_window = parse_count(line, key, value);
    } else if (key == "trajectory_window") {
      parse_count(line, key, value);
      spec.trajectory_window = mpz_class(value);
    } else if (key == "threads") {
      spec.threads = parse_count(line, key, value);
    } else if (key == "checkers") {
      spec.checkers = split(value, ',');
      if (spec.checkers.empty()) throw SpecError(line, key, "empty checker list");
      std::set<std::string> unique;
      for (const auto& c : spec.checkers) {
        try {
          (void)checker_info(c);
        } catch (const std::exception& e) {
          throw SpecError(line, key, e.what());
        }
        if (!unique.insert(c).second) throw SpecError(line, key, "checker '" + c + "' listed twice");
      }
    } else if (key == "output") {
      spec.output = value;
    } else if (const auto dot = key.find('.'); dot != std::string::npos) {
      const std::string checker = key.substr(0, dot);
      const std::string param = key.substr(dot + 1);
      const CheckerInfo* info = nullptr;
      try {
        info = &checker_info(checker);
      } catch (const std::exception& e) {
        throw SpecError(line, key, e.what());
      }
      if (std::none_of(info->params.begin(), info->params.end(),
                       [&](const CheckerParam& cp) { return cp.name == param; })) {
        throw SpecError(line, key, "checker '" + checker + "' has no parameter '" + param + "'");
      }
      spec.params[key] = value;
    } else {
      throw SpecError(line, key, "unknown key");
    }
  }
  if (!seen.count("checkers")) throw SpecError(0, "checkers", "empty checker list");
  for (const auto& c : spec.checkers) {
    if (checker_info(c).needs_source && spec.source.empty()) {
      throw SpecError(0, "source", "checker '" + c + "' needs a word source");
    }
  }
  for (const auto& [key, value] : spec.params) {
    const std::string checker = key.substr(0, key.find('.'));
    if (std::find(spec.checkers.begin(), spec.checkers.end(), checker) == spec.checkers.end()) {
      throw SpecError(seen[key], key, "parameter for a checker that is not selected");
    }
  }
  for (int k : spec.ks) {
    try {
      (void)modulus_of(spec.p, k);
    } catch (const std::exception&) {
      throw SpecError(seen.count("k") ? seen["k"] : 0, "k", "p^k must stay below 2^62");
    }
  }
  return spec;
}

std::vector<int> parse_precisions(std::string_view text) { return parse_ks(0, trim(text)); }

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, path, "cannot open spec file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string ExperimentSpec::canonical() const {
  std::ostringstream os;
  os << "name=" << name << "\nsource=" << source << "\np=" << p << "\nk=";
  for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
  os << "\nprefix_window=" << prefix_window << "\nshift_window=" << shift_window
     << "\ntrajectory_window=" << trajectory_window << "\ncheckers=";
  for (std::size_t i = 0; i < checkers.size(); ++i) os << (i ? "," : "") << checkers[i];
  os << "\n";
  for (const auto& [k, v] : params) os << k << "=" << v << "\n";
  return os.str();
}

std::string ExperimentSpec::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string ExperimentSpec::param(const std::string& checker, const std::string& key) const {
  if (auto it = params.find(checker + "." + key); it != params.end()) return it->second;
  for (const auto& cp : checker_info(checker).params) {
    if (cp.name == key) return cp.default_value;
  }
  throw std::invalid_argument("checker '" + checker + "' has no parameter '" + key + "'");
}

int ResultRecord::exit_code() const {
  if (errors) return 3;
  if (precision_limited) return 2;
  if (hypothesis_failures) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Serialization helpers

namespace {

enum class Status { ok, hypothesis_failed, precision_limited, error };

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::hypothesis_failed: return "hypothesis_failed";
    case Status::precision_limited: return "precision_limited";
    case Status::error: return "error";
  }
  return "error";
}

json scaled_json(const ScaledPower& s) {
  return {{"value", s.to_string()},
          {"coeff", s.coeff().get_str()},
          {"p", s.prime()},
          {"twice_exponent", s.twice_exponent()},
          {"decimal", s.to_double()}};
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

struct JobResult {
  json entry;
  Status status = Status::ok;
  std::map<std::string, Table> tables;
};

struct Job {
  std::string checker;
  std::optional<int> k;
};

std::vector<unsigned long> parse_list(const std::string& v) {
  std::vector<unsigned long> out;
  for (const auto& t : split(v, ',')) out.push_back(std::stoul(t));
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_text(const Table& t) {
  std::ostringstream os;
  const auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

std::size_t scan_limit(const ExperimentSpec& spec, const std::string& checker) {
  const std::string v = spec.param(checker, "limit");
  return v.empty() ? spec.prefix_window * 16 : std::stoul(v);
}

json orbit_json(const OrbitCheck& o) {
  return {{"verified", o.verified}, {"route", o.route}, {"index_needed", o.index_needed.get_str()},
          {"detail", o.detail}};
}

json th_json(const ThResult& r) {
  json j = {{"verdict", to_string(r.verdict)},
            {"reason", r.reason},
            {"p", r.p},
            {"k", r.k},
            {"kappa", r.kappa},
            {"eps1", r.eps1.to_string()},
            {"eps2", r.eps2.to_string()},
            {"eps3", r.eps3.to_string()},
            {"delta", r.delta.to_string()},
            {"d_w1w2", r.d_w1w2.to_string()},
            {"ramified", r.ramified},
            {"m", r.m.get_str()},
            {"m_max", r.m_max.get_str()},
            {"orbit", orbit_json(r.orbit)},
            {"caveats", r.caveats}};
  if (r.epsilon_squared) {
    j["epsilon_squared"] = scaled_json(*r.epsilon_squared);
    j["epsilon_decimal"] = r.epsilon_decimal;
  }
  return j;
}

Status th_status(const ThResult& r) {
  switch (r.verdict) {
    case VerdictKind::applies:
    case VerdictKind::not_in_lmad: return Status::ok;
    case VerdictKind::hypothesis_failed: return Status::hypothesis_failed;
    case VerdictKind::precision_limited: return Status::precision_limited;
  }
  return Status::error;
}

OrbitLimits orbit_limits(const ExperimentSpec& spec, const std::string& checker) {
  OrbitLimits lim;
  lim.window = spec.trajectory_window;
  lim.budget = std::stoul(spec.param(checker, "budget"));
  return lim;
}

std::optional<mpz_class> parse_m(const std::string& v) {
  if (v == "max") return std::nullopt;
  mpz_class m;
  if (m.set_str(v, 10) != 0 || m < 1) throw std::invalid_argument("m must be a positive integer or 'max'");
  return m;
}

std::string required(const ExperimentSpec& spec, const std::string& checker, const std::string& key) {
  std::string v = spec.param(checker, key);
  if (v.empty()) throw std::invalid_argument(checker + "." + key + " is required");
  return v;
}

// "concat:seeds=1,2;program=X1" -> (seeds, program)
std::pair<std::string, std::string> concat_from_source(const std::string& source) {
  std::pair<std::string, std::string> out;
  if (source.rfind("concat:", 0) != 0) return out;
  for (const auto& part : split(source.substr(7), ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(part.substr(0, eq));
    if (key == "seeds") out.first = trim(part.substr(eq + 1));
    if (key == "program") out.second = trim(part.substr(eq + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checker bodies

JobResult run_complexity(const ExperimentSpec& spec, const WordSource& src) {
  JobResult r;
  const auto n_max = std::stoul(spec.param("complexity", "n_max"));
  Table t{{"n", "P", "exact", "window", "provenance"}, {}};
  json rows = json::array();
  for (std::size_t n = 1; n <= n_max; ++n) {
    const FactorSet f = factors(src, n, spec.prefix_window);
    rows.push_back({{"n", n}, {"P", f.factors.size()}, {"exact", f.exact}});
    t.rows.push_back({std::to_string(n), std::to_string(f.factors.size()), bool_text(f.exact),
                      std::to_string(spec.prefix_window), "factors"});
  }
  r.entry = {{"window", spec.prefix_window}, {"rows", rows}};
  r.tables["complexity"] = std::move(t);
  return r;
}

JobResult run_factor_graph(const ExperimentSpec& spec, const WordSource& src) {
  JobResult r;
  const auto n_min = std::stoul(spec.param("factor_graph", "n_min"));
  const auto n_max = std::stoul(spec.param("factor_graph", "n_max"));
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("factor_graph: need 1 <= n_min <= n_max");
  Table t{{"n", "vertices_left", "vertices_right", "edges", "P_2n", "edge_law", "components", "isolated", "exact",
           "provenance"},
          {}};
  json rows = json::array();
  std::vector<std::size_t> comps;
  bool all_exact = true;
  bool edge_law = true;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const FactorGraph g = factor_graph(src, n, spec.prefix_window);
    const std::size_t p2n = complexity(src, 2 * n, spec.prefix_window);
    const bool law = g.edges.size() == p2n;
    edge_law = edge_law && law;
    all_exact = all_exact && g.exact;
    comps.push_back(g.component_count);
    rows.push_back({{"n", n},
                    {"edges", g.edges.size()},
                    {"P_2n", p2n},
                    {"edge_law", law},
                    {"components", g.component_count},
                    {"isolated", g.isolated_vertices},
                    {"exact", g.exact}});
    t.rows.push_back({std::to_string(n), std::to_string(g.left.size()), std::to_string(g.right.size()),
                      std::to_string(g.edges.size()), std::to_string(p2n), bool_text(law),
                      std::to_string(g.component_count), std::to_string(g.isolated_vertices), bool_text(g.exact),
                      "factor_graph"});
  }
  const bool nondecreasing = std::is_sorted(comps.begin(), comps.end());
  r.entry = {{"window", spec.prefix_window},
             {"rows", rows},
             {"edge_law", edge_law},
             {"all_exact", all_exact},
             {"trend",
              {{"components", comps},
               {"max", *std::max_element(comps.begin(), comps.end())},
               {"nondecreasing", nondecreasing}}}};
  if (!edge_law) r.status = Status::hypothesis_failed;
  r.tables["factor_graph"] = std::move(t);
  return r;
}

JobResult run_uk_sets(const ExperimentSpec& spec, const WordSource& src, int k) {
  JobResult r;
  const std::size_t limit = scan_limit(spec, "uk_sets");
  const UkCollection c = uk_collection(src, spec.p, k, spec.shift_window, limit);
  const Lem3Report l3 = lem3_identity(src, spec.p, k, spec.shift_window, limit);
  const auto ret = identity_return(src, spec.p, k, spec.prefix_window);
  const UkSet& base = c.members.front();
  std::vector<std::size_t> sizes;
  std::size_t heuristic = 0;
  for (const auto& m : c.members) {
    sizes.push_back(m.size());
    heuristic += m.certificate == "window";
  }
  r.entry = {{"U_k_size", base.size()},
             {"U_k_saturated", base.saturated},
             {"U_k_certificate", base.certificate},
             {"heuristic_members", heuristic},
             {"U_k_prefixes_scanned", base.prefixes_scanned},
             {"collection_size", c.members.size()},
             {"member_sizes", sizes},
             {"all_saturated", c.all_saturated},
             {"equal_cardinality", c.equal_cardinality},
             {"bound_holds", c.bound_holds},
             {"shift_identity_holds", l3.holds},
             {"shift_identity_saturated", l3.all_saturated},
             {"shift_identity_failures", l3.failing_shifts},
             {"identity_return", ret ? json(*ret) : json(nullptr)}};
  if (!c.all_saturated || !l3.all_saturated) {
    r.entry["caveats"] = {"some sets were not certified complete within the scan limit"};
  } else if (heuristic > 0) {
    r.entry["caveats"] = {"some sets are complete only by the no-new-residue window heuristic"};
  }
  if (c.all_saturated && (!c.equal_cardinality || !c.bound_holds || !l3.holds)) r.status = Status::hypothesis_failed;
  r.tables["uk_sets"] = {{"k", "U_k_size", "U_k_saturated", "U_k_certificate", "collection_size", "all_saturated", "equal_cardinality",
                          "bound_holds", "shift_identity_holds", "identity_return", "provenance"},
                         {{std::to_string(k), std::to_string(base.size()), bool_text(base.saturated), base.certificate,
                           std::to_string(c.members.size()), bool_text(c.all_saturated),
                           bool_text(c.equal_cardinality), bool_text(c.bound_holds), bool_text(l3.holds),
                           ret ? std::to_string(*ret) : "", "uk_collection"}}};
  return r;
}

JobResult run_lem7_lem8(const ExperimentSpec& spec, const WordSource& src, int k) {
  JobResult r;
  const std::size_t length = std::max<std::size_t>(spec.shift_window, 2);
  const DerivedWord u = derived_word(src, spec.p, k, length, scan_limit(spec, "lem7_lem8"));
  const Lem7Report l7 = lem7_check(u, src);
  const auto l8 = lem8_min_length(u, src, std::stoul(spec.param("lem7_lem8", "l_max")));
  json conflicts = json::array();
  for (const auto& c : l7.conflicts) {
    conflicts.push_back({{"shift_a", c.shift_a},
                         {"shift_b", c.shift_b},
                         {"letter_a", static_cast<unsigned long>(c.letter_a)},
                         {"letter_b", static_cast<unsigned long>(c.letter_b)},
                         {"unipotent_a", static_cast<long>(c.letter_a) - static_cast<long>(c.letter_b)}});
  }
  r.entry = {{"derived_length", u.letters.size()},
             {"derived_alphabet", u.collection.members.size()},
             {"derived_prefix", std::vector<std::size_t>(u.letters.begin(),
                                                         u.letters.begin() + std::min<long>(64, u.letters.size()))},
             {"letter_pairs", l7.letter_of_pair.size()},
             {"conflicts", conflicts},
             {"block_length", l8 ? json(*l8) : json(nullptr)},
             {"all_saturated", u.collection.all_saturated}};
  return r;
}

JobResult run_th_main(const ExperimentSpec& spec, const WordSource& src, int k) {
  JobResult r;
  std::string matrix = spec.param("th_main", "matrix");
  if (matrix.empty()) {
    const auto u = src.period();
    if (!u) throw std::invalid_argument("th_main.matrix is required for non-periodic sources");
    matrix = format_word(*u);
  }
  const Mat2 A = parse_matrix(matrix);
  const ProjPoint x = parse_point(required(spec, "th_main", "x_p"), spec.p, 4 * k + 8);
  const ThMainInstance in{A, x, src, spec.p, k, parse_m(spec.param("th_main", "m"))};
  const ThResult res = check_th_main(in, orbit_limits(spec, "th_main"));
  r.entry = th_json(res);
  r.entry["matrix"] = A.to_string();
  r.entry["x_p"] = x.to_string();
  r.status = th_status(res);
  r.tables["th_main"] = {{"k", "m", "verdict", "epsilon_squared", "epsilon_decimal", "provenance"},
                         {{std::to_string(k), res.m.get_str(), to_string(res.verdict),
                           res.epsilon_squared ? res.epsilon_squared->to_string() : "",
                           res.epsilon_squared ? std::to_string(res.epsilon_decimal) : "", "check_th_main"}}};
  return r;
}

JobResult run_th_da(const ExperimentSpec& spec, const WordSource& src, int k) {
  JobResult r;
  const mpz_class a(spec.param("th_da", "a"));
  const ProjPoint x = parse_point(required(spec, "th_da", "x_p"), spec.p, 4 * k + 8);
  const ThResult res = check_th_da(a, x, src, spec.p, k, parse_m(spec.param("th_da", "m")), orbit_limits(spec, "th_da"));
  r.entry = th_json(res);
  r.entry["a"] = a.get_str();
  r.entry["x_p"] = x.to_string();
  r.status = th_status(res);
  r.tables["th_da"] = {{"k", "m", "verdict", "epsilon_squared", "epsilon_decimal", "provenance"},
                       {{std::to_string(k), res.m.get_str(), to_string(res.verdict),
                         res.epsilon_squared ? res.epsilon_squared->to_string() : "",
                         res.epsilon_squared ? std::to_string(res.epsilon_decimal) : "", "check_th_da"}}};
  return r;
}

JobResult run_lmad_periodic(const ExperimentSpec& spec, const WordSource& src) {
  JobResult r;
  const auto u = src.period();
  if (!u) throw std::invalid_argument("lmad_periodic needs a periodic source");
  LmadPeriodicOptions opt;
  opt.bounds.clear();
  for (auto b : parse_list(spec.param("lmad_periodic", "bounds"))) opt.bounds.push_back(static_cast<long>(b));
  opt.eigen_precision = std::stoi(spec.param("lmad_periodic", "eigen_k"));
  opt.sample_precisions.clear();
  for (auto k : parse_list(spec.param("lmad_periodic", "sample_k"))) opt.sample_precisions.push_back(static_cast<int>(k));
  opt.samples = std::stoul(spec.param("lmad_periodic", "samples"));
  opt.sample_digits = std::stoi(spec.param("lmad_periodic", "sample_digits"));
  opt.seed = std::stoul(spec.param("lmad_periodic", "seed"));
  const LmadPeriodicReport rep = lmad_certificate_periodic(*u, spec.p, opt);

  Table t{{"point", "trajectory_index", "B", "epsilon", "witness_a", "witness_b", "precision_limited", "provenance"},
          {}};
  json eig = json::array();
  for (const auto& ev : rep.eigenvectors) {
    json images = json::array();
    for (std::size_t n = 0; n < ev.reports.size(); ++n) {
      json per = json::array();
      for (const auto& b : ev.reports[n]) {
        per.push_back({{"B", b.bound},
                       {"epsilon", scaled_json(b.epsilon)},
                       {"witness", {b.witness_a, b.witness_b}},
                       {"precision_limited", b.precision_limited}});
        t.rows.push_back({ev.point.to_string(), std::to_string(n), std::to_string(b.bound), b.epsilon.to_string(),
                          std::to_string(b.witness_a), std::to_string(b.witness_b), bool_text(b.precision_limited),
                          "pbad_estimate"});
      }
      images.push_back(per);
    }
    eig.push_back({{"point", ev.point.to_string()},
                   {"positive", ev.positive},
                   {"stable", ev.stable},
                   {"trajectory", images}});
  }
  json samples = json::array();
  for (const auto& s : rep.samples) {
    json res = json::array();
    for (const auto& x : s.results) res.push_back(th_json(x));
    samples.push_back({{"point", s.point.to_string()},
                       {"all_apply", s.all_apply},
                       {"strictly_decreasing", s.strictly_decreasing},
                       {"results", res}});
  }
  r.entry = {{"period", format_word(rep.period)},
             {"eigen_class", to_string(rep.cls)},
             {"eigenvectors", eig},
             {"samples", samples},
             {"if_direction", rep.if_direction},
             {"only_if_direction", rep.only_if_direction},
             {"caveats", rep.caveats}};
  if (!rep.if_direction || !rep.only_if_direction) r.status = Status::hypothesis_failed;
  r.tables["lmad_periodic"] = std::move(t);
  return r;
}

JobResult run_concat(const ExperimentSpec& spec, int k) {
  JobResult r;
  auto [seeds_text, program_text] = concat_from_source(spec.source);
  if (auto v = spec.param("concat_scheme", "seeds"); !v.empty()) seeds_text = v;
  if (auto v = spec.param("concat_scheme", "program"); !v.empty()) program_text = v;
  if (seeds_text.empty() || program_text.empty()) {
    throw std::invalid_argument("concat_scheme needs seeds and program (or a concat source)");
  }
  std::vector<Word> seeds;
  for (const auto& t : split(seeds_text, ',')) seeds.push_back(parse_word(t));
  const ConcatProgram prog = ConcatProgram::parse(seeds.size(), program_text);
  const ConcatReport rep =
      concat_scheme_checker(prog, seeds, spec.p, k, std::stoul(spec.param("concat_scheme", "n_max")));
  std::vector<std::string> seed_text;
  for (const auto& s : seeds) seed_text.push_back(format_word(s));
  r.entry = {{"program", prog.to_string()},
             {"seeds", seed_text},
             {"cycle_found", rep.cycle_found},
             {"preperiod", rep.preperiod},
             {"period", rep.period},
             {"purely_periodic", rep.purely_periodic},
             {"group_bound", rep.group_bound},
             {"within_group_bound", rep.within_group_bound},
             {"uniqueness_method", rep.uniqueness_method},
             {"uniqueness_holds", rep.uniqueness_holds},
             {"tower_holds", rep.tower_holds},
             {"tower_checked", rep.tower_checked},
             {"exclusion_pair", rep.exclusion_pair ? json({rep.exclusion_pair->first + 1, rep.exclusion_pair->second + 1})
                                                   : json(nullptr)},
             {"excluded_for_every_point", rep.excluded_for_every_point},
             {"caveats", rep.caveats}};
  if (!rep.excluded_for_every_point) r.status = Status::hypothesis_failed;
  r.tables["concat_scheme"] = {{"k", "preperiod", "period", "purely_periodic", "uniqueness", "tower_holds",
                                "excluded_for_every_point", "provenance"},
                               {{std::to_string(k), std::to_string(rep.preperiod), std::to_string(rep.period),
                                 bool_text(rep.purely_periodic), rep.uniqueness_method, bool_text(rep.tower_holds),
                                 bool_text(rep.excluded_for_every_point), "concat_scheme_checker"}}};
  return r;
}

JobResult run_prop_lem1(const ExperimentSpec& spec) {
  JobResult r;
  const RealQuadratic x = parse_real(spec.param("prop_lem1", "x"));
  std::optional<mpq_class> eps;
  if (auto v = spec.param("prop_lem1", "eps"); !v.empty()) {
    const RealQuadratic e = parse_real(v);
    if (!e.is_rational()) throw std::invalid_argument("prop_lem1.eps must be rational");
    eps = mpq_class(e.a(), e.c());
  }
  const PropLem1Report rep = prop_lem1_check(x, std::stoul(spec.param("prop_lem1", "n_max")),
                                             std::stol(spec.param("prop_lem1", "ab_max")), spec.p, eps);
  Table t{{"n", "a", "b", "q_n", "q_n+1", "r", "N", "r_norm", "holds", "critical_epsilon", "dichotomy", "provenance"},
          {}};
  std::size_t failures = 0;
  for (const auto& row : rep.rows) {
    if (!row.holds) ++failures;
    t.rows.push_back({std::to_string(row.n), std::to_string(row.a), std::to_string(row.b), row.q_n.get_str(),
                      row.q_next.get_str(), row.r.get_str(), row.N.get_str(), row.r_norm.to_string(),
                      bool_text(row.holds), row.critical_epsilon.to_string(),
                      row.dichotomy ? bool_text(*row.dichotomy) : "", "prop_lem1_check"});
  }
  std::vector<std::string> pq;
  for (const auto& a : rep.partial_quotients) pq.push_back(a.get_str());
  r.entry = {{"x", x.to_string()},
             {"partial_quotients", pq},
             {"rows", rep.rows.size()},
             {"failures", failures},
             {"all_hold", rep.all_hold}};
  if (eps) r.entry["eps"] = eps->get_str();
  if (!rep.all_hold) r.status = Status::hypothesis_failed;
  r.tables["prop_lem1"] = std::move(t);
  return r;
}

JobResult run_vpw(const ExperimentSpec& spec, int k) {
  JobResult r;
  std::vector<VpwCandidate> cands;
  for (const auto& t : split(required(spec, "vpw_screen", "candidates"), ';')) {
    VpwCandidate c{t, parse_matrix(t), std::nullopt};
    if (t.front() != '[') c.word = parse_word(t);
    cands.push_back(std::move(c));
  }
  std::optional<ProjPoint> x;
  if (auto v = spec.param("vpw_screen", "x_p"); !v.empty()) x = parse_point(v, spec.p, 4 * k + 8);
  const VpwReport rep = th_vpw_screen(cands, x, spec.p, k);
  std::vector<std::string> survivors;
  for (const auto& s : rep.survivors) survivors.push_back(s.to_string());
  json common = json::array();
  for (auto [i, j] : rep.common_eigenvector) common.push_back({cands[i].label, cands[j].label});
  json same = json::array();
  for (auto [i, j] : rep.same_root) same.push_back({cands[i].label, cands[j].label});
  r.entry = {{"kind", to_string(rep.kind)},
             {"verdict", rep.verdict},
             {"in_tilde_sl", rep.in_tilde_sl},
             {"common_eigenvector", common},
             {"same_root", same},
             {"survivors", survivors},
             {"caveats", rep.caveats}};
  if (rep.kind == VpwReport::Kind::inconclusive) r.status = Status::hypothesis_failed;
  return r;
}

JobResult run_job(const ExperimentSpec& spec, const Job& job) {
  JobResult r;
  try {
    const std::optional<WordSource> src =
        spec.source.empty() ? std::nullopt : std::optional<WordSource>(parse_source(spec.source));
    const int k = job.k.value_or(0);
    const std::string& c = job.checker;
    if (c == "complexity") r = run_complexity(spec, *src);
    else if (c == "factor_graph") r = run_factor_graph(spec, *src);
    else if (c == "uk_sets") r = run_uk_sets(spec, *src, k);
    else if (c == "lem7_lem8") r = run_lem7_lem8(spec, *src, k);
    else if (c == "th_main") r = run_th_main(spec, *src, k);
    else if (c == "th_da") r = run_th_da(spec, *src, k);
    else if (c == "lmad_periodic") r = run_lmad_periodic(spec, *src);
    else if (c == "concat_scheme") r = run_concat(spec, k);
    else if (c == "prop_lem1") r = run_prop_lem1(spec);
    else if (c == "vpw_screen") r = run_vpw(spec, k);
    else throw std::invalid_argument("unknown checker '" + c + "'");
  } catch (const PrecisionError& e) {
    r = {};
    r.status = Status::precision_limited;
    r.entry = {{"message", e.what()}};
  } catch (const std::exception& e) {
    r = {};
    r.status = Status::error;
    r.entry = {{"message", e.what()}};
  }
  r.entry["checker"] = job.checker;
  r.entry["provenance"] = checker_info(job.checker).provenance;
  r.entry["status"] = status_name(r.status);
  if (job.k) r.entry["k"] = *job.k;
  return r;
}

}  // namespace

ResultRecord run(const ExperimentSpec& spec) {
  if (spec.checkers.empty()) throw SpecError(0, "checkers", "empty checker list");
  std::vector<Job> jobs;
  for (const auto& c : spec.checkers) {
    if (checker_info(c).per_precision) {
      for (int k : spec.ks) jobs.push_back({c, k});
    } else {
      jobs.push_back({c, std::nullopt});
    }
  }
  std::vector<JobResult> results(jobs.size());
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min(jobs.size(), spec.threads ? spec.threads : hw);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = run_job(spec, jobs[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ResultRecord rec;
  rec.name = spec.name;
  rec.spec_hash = spec.hash();
  json out;
  out["schema"] = kResultSchema;
  out["spec_hash"] = rec.spec_hash;
  json sp = {{"name", spec.name},
             {"source", spec.source},
             {"p", spec.p},
             {"k", spec.ks},
             {"prefix_window", spec.prefix_window},
             {"shift_window", spec.shift_window},
             {"trajectory_window", spec.trajectory_window.get_str()},
             {"checkers", spec.checkers},
             {"params", spec.params}};
  out["spec"] = sp;
  json entries = json::array();
  std::map<std::string, Table> tables;
  std::ostringstream summary;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    JobResult& r = results[i];
    switch (r.status) {
      case Status::hypothesis_failed: ++rec.hypothesis_failures; break;
      case Status::precision_limited: ++rec.precision_limited; break;
      case Status::error: ++rec.errors; break;
      case Status::ok: break;
    }
    summary << std::left << std::setw(14) << jobs[i].checker << (jobs[i].k ? " k=" + std::to_string(*jobs[i].k) : "")
            << "  " << status_name(r.status);
    if (r.entry.contains("reason") && r.entry["reason"].is_string()) {
      summary << "  " << r.entry["reason"].get<std::string>();
    } else if (r.entry.contains("verdict") && r.entry["verdict"].is_string()) {
      summary << "  " << r.entry["verdict"].get<std::string>();
    }
    if (r.entry.contains("message")) summary << "  " << r.entry["message"].get<std::string>();
    summary << "\n";
    for (auto& [name, t] : r.tables) {
      Table& dst = tables[name];
      if (dst.header.empty()) dst.header = t.header;
      for (auto& row : t.rows) dst.rows.push_back(std::move(row));
    }
    entries.push_back(std::move(r.entry));
  }
  out["results"] = entries;
  out["status"] = {{"hypothesis_failures", rec.hypothesis_failures},
                   {"precision_limited", rec.precision_limited},
                   {"errors", rec.errors}};
  rec.json = out.dump(2) + "\n";
  for (const auto& [name, t] : tables) rec.tables[name] = csv_text(t);
  summary << "hypothesis failures: " << rec.hypothesis_failures << ", precision limited: " << rec.precision_limited
          << ", errors: " << rec.errors << "\n";
  rec.summary = summary.str();
  return rec;
}

std::vector<std::string> write_outputs(const ResultRecord& record, const std::string& dir) {
  std::vector<std::string> paths;
  const std::string base = (dir.empty() ? std::string(".") : dir) + "/" + record.name;
  const auto put = [&](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    paths.push_back(path);
  };
  put(base + ".json", record.json);
  for (const auto& [name, text] : record.tables) put(base + "_" + name + ".csv", text);
  return paths;
}

// ---------------------------------------------------------------------------
// Comparison

int CompareReport::exit_code() const {
  if (!schema_ok) return 3;
  return differences.empty() && monotone ? 0 : 1;
}

std::string CompareReport::text() const {
  std::ostringstream os;
  if (!schema_ok) {
    os << "schema error: " << schema_error << "\n";
    return os.str();
  }
  if (differences.empty()) {
    os << "no differences\n";
  } else {
    os << differences.size() << " difference(s):\n";
    for (const auto& d : differences) os << "  " << d << "\n";
  }
  for (const auto& m : monotonicity) os << m << "\n";
  return os.str();
}

namespace {

constexpr std::size_t kMaxDifferences = 200;

void diff(const json& a, const json& b, const std::string& path, std::vector<std::string>& out) {
  if (out.size() >= kMaxDifferences) return;
  if (a.type() != b.type()) {
    out.push_back(path + ": type " + a.type_name() + " vs " + b.type_name());
    return;
  }
  if (a.is_object()) {
    std::set<std::string> keys;
    for (auto it = a.begin(); it != a.end(); ++it) keys.insert(it.key());
    for (auto it = b.begin(); it != b.end(); ++it) keys.insert(it.key());
    for (const auto& k : keys) {
      const std::string p = path + "/" + k;
      if (!a.contains(k)) out.push_back(p + ": only in second");
      else if (!b.contains(k)) out.push_back(p + ": only in first");
      else diff(a[k], b[k], p, out);
    }
  } else if (a.is_array()) {
    if (a.size() != b.size()) out.push_back(path + ": length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) diff(a[i], b[i], path + "/" + std::to_string(i), out);
  } else if (a != b) {
    out.push_back(path + ": " + a.dump() + " vs " + b.dump());
  }
}

std::optional<ScaledPower> read_scaled(const json& e) {
  if (!e.contains("epsilon_squared")) return std::nullopt;
  const json& s = e["epsilon_squared"];
  return ScaledPower(s.at("p").get<unsigned long>(), mpq_class(s.at("coeff").get<std::string>()),
                     s.at("twice_exponent").get<long>());
}

// (checker, instance) -> k -> epsilon^2
using EpsMap = std::map<std::pair<std::string, std::string>, std::map<int, ScaledPower>>;

void collect_eps(const json& rec, EpsMap& out) {
  for (const auto& e : rec.at("results")) {
    const std::string checker = e.value("checker", "");
    if ((checker != "th_main" && checker != "th_da") || !e.contains("k")) continue;
    auto eps = read_scaled(e);
    if (!eps) continue;
    const std::string instance = e.value("matrix", "") + e.value("a", "") + " @ " + e.value("x_p", "");
    out[{checker, instance}].insert_or_assign(e["k"].get<int>(), *eps);
  }
}

}  // namespace

CompareReport compare_records(const std::string& json_a, const std::string& json_b) {
  CompareReport rep;
  json a, b;
  try {
    a = json::parse(json_a);
    b = json::parse(json_b);
  } catch (const std::exception& e) {
    rep.schema_ok = false;
    rep.schema_error = std::string("malformed record: ") + e.what();
    return rep;
  }
  for (const json* r : {&a, &b}) {
    if (!r->is_object() || !r->contains("schema") || (*r)["schema"] != kResultSchema || !r->contains("results") ||
        !(*r)["results"].is_array()) {
      rep.schema_ok = false;
      rep.schema_error = std::string("expected a ") + kResultSchema + " record";
      return rep;
    }
  }
  diff(a, b, "", rep.differences);

  try {
    EpsMap ea, eb;
    collect_eps(a, ea);
    collect_eps(b, eb);
    for (const auto& [key, by_k_a] : ea) {
      auto it = eb.find(key);
      if (it == eb.end()) continue;
      std::map<int, ScaledPower> merged = by_k_a;
      for (const auto& [k, v] : it->second) merged.insert_or_assign(k, v);
      const ScaledPower* prev = nullptr;
      int prev_k = 0;
      for (const auto& [k, v] : merged) {
        if (prev) {
          const bool ok = v <= *prev;
          rep.monotone = rep.monotone && ok;
          rep.monotonicity.push_back(key.first + " " + key.second + ": k=" + std::to_string(prev_k) + " -> k=" +
                                     std::to_string(k) + ": epsilon^2 " + prev->to_string() + " -> " + v.to_string() +
                                     (ok ? " (non-increasing)" : " (INCREASED)"));
        }
        prev = &v;
        prev_k = k;
      }
    }
  } catch (const std::exception& e) {
    rep.schema_ok = false;
    rep.schema_error = std::string("malformed epsilon field: ") + e.what();
  }
  return rep;
}

}  // namespace padiclab
