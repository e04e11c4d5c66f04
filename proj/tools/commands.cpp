#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <sstream>
#include <vector>

#include "qmax/bounds.hpp"
#include "qmax/deg5.hpp"
#include "qmax/optimizer.hpp"
#include "qmax/rational.hpp"
#include "qmax/verify.hpp"

namespace qmax::cli {
namespace {

std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << r[c];
      if (c + 1 < r.size()) os << std::string(width[c] - r[c].size() + 2, ' ');
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_field(r[c]);
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

template <class T>
T get(const Json& c, const char* key) {
  try {
    return c.at(key).get<T>();
  } catch (const Json::exception&) {
    throw UsageError(std::string("config: missing or malformed '") + key + "'");
  }
}

void set_default(Json& c, const char* key, Json value) {
  if (!c.contains(key) || c[key].is_null()) c[key] = std::move(value);
}

Rational rational_arg(const Json& c, const char* key) {
  try {
    return parse_rational(get<std::string>(c, key));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string(key) + ": " + e.what());
  }
}

Signature signature_arg(const Json& c) {
  try {
    return Signature::make(get<int>(c, "n"), get<int>(c, "r2"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

OptConfig opt_config(const Json& c, int threads) {
  OptConfig cfg;
  cfg.samples = get<long>(c, "samples");
  cfg.restarts = get<int>(c, "restarts");
  cfg.seed = get<std::uint64_t>(c, "seed");
  cfg.tol = get<double>(c, "tol");
  cfg.max_iters = get<int>(c, "max_iters");
  cfg.warm_starts = get<bool>(c, "warm_starts");
  cfg.threads = threads;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void opt_defaults(Json& c) {
  const OptConfig d;
  set_default(c, "samples", d.samples);
  set_default(c, "restarts", d.restarts);
  set_default(c, "seed", d.seed);
  set_default(c, "tol", d.tol);
  set_default(c, "max_iters", d.max_iters);
  set_default(c, "warm_starts", d.warm_starts);
}

LogTerm term_arg(const std::string& s) {
  if (s == "classic") return LogTerm::classic;
  if (s == "improved") return LogTerm::improved;
  if (s == "value") return LogTerm::value;
  throw UsageError("term must be classic, improved or value");
}

// --- estimate-max ---------------------------------------------------------

CommandOutput estimate_max(const Json& c, int threads) {
  const Signature sig = signature_arg(c);
  if (sig.n > 12) throw UsageError("estimate-max: n must be at most 12");
  const OptReport rep = estimate_M(sig, opt_config(c, threads));
  CommandOutput out;
  out.result = to_json(rep);
  out.csv = to_csv(rep);
  return out;
}

// --- verify-known ---------------------------------------------------------

CommandOutput verify(const Json& c) {
  const auto checks = verify_known(get<int>(c, "samples"), get<std::uint64_t>(c, "seed"));
  CommandOutput out;
  Json arr = Json::array();
  int failed = 0;
  std::vector<std::vector<std::string>> rows;
  for (const auto& ch : checks) {
    arr.push_back(to_json(ch));
    if (!ch.passed) ++failed;
    rows.push_back({ch.passed ? "PASS" : "FAIL", ch.name, fmt10(ch.expected), fmt10(ch.actual), fmt10(ch.tolerance)});
  }
  out.result = {{"checks", arr},
                {"passed", static_cast<int>(checks.size()) - failed},
                {"failed", failed},
                {"all_passed", failed == 0}};
  const std::vector<std::string> header = {"status", "check", "expected", "actual", "tolerance"};
  out.text = text_table(header, rows);
  out.csv = csv_table(header, rows);
  out.exit_code = failed ? kVerificationFailure : kSuccess;
  return out;
}

// --- deg5-sweep ---------------------------------------------------------------

CommandOutput sweep(const Json& c, int threads) {
  deg5::SweepGrid grid{rational_arg(c, "from"), rational_arg(c, "to"), rational_arg(c, "step")};
  std::vector<Rational> pts;
  try {
    pts = deg5::grid_points(grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<deg5::SweepRecord> recs(pts.size());
  const unsigned workers =
      std::max(1u, threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency());
  {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < pts.size(); i += workers) recs[i] = deg5::sweep_point(pts[i]);
      }));
    for (auto& j : jobs) j.get();
  }
  const auto st = deg5::solve_stationary(get<double>(c, "width"), get<double>(c, "threshold"));

  CommandOutput out;
  Json arr = Json::array();
  bool all_edge_y = true;
  double min_margin = INFINITY, max_winner = 0.0;
  int degenerate = 0;
  out.csv = sweep_csv_header();
  for (const auto& r : recs) {
    arr.push_back(to_json(r));
    out.csv += to_csv_row(r);
    all_edge_y = all_edge_y && r.winner == deg5::Region5::edge_y;
    min_margin = std::min(min_margin, r.margin);
    max_winner = std::max(max_winner, r.winner_value);
    degenerate += r.resultant_degenerate;
  }
  out.csv += "\nstationary_x,stationary_g,stationary_value,x_lo,x_hi\n" + fmt10(st.x) + "," + fmt10(st.g) + "," +
             fmt10(st.value) + "," + Json(st.x_box.lo).dump() + "," + Json(st.x_box.hi).dump() + "\n";
  out.result = {{"grid",
                 {{"from", to_string(grid.from)},
                  {"to", to_string(grid.to)},
                  {"step", to_string(grid.step)},
                  {"points", recs.size()}}},
                {"records", arr},
                {"all_winners_edge_y", all_edge_y},
                {"min_margin", num(min_margin)},
                {"max_winner_value", num(max_winner)},
                {"degenerate_records", degenerate},
                {"y_zero_bound", num(deg5::kYZeroBound)},
                {"stationary", to_json(st)}};
  out.exit_code = all_edge_y ? kSuccess : kVerificationFailure;
  return out;
}

// --- bound ---------------------------------------------------------------------

CommandOutput bound(const Json& c) {
  const double r0 = get<double>(c, "R0");
  const int n = get<int>(c, "n"), r2 = get<int>(c, "r2");
  const LogTerm term = term_arg(get<std::string>(c, "term"));
  std::optional<double> value, d2;
  if (!c["value"].is_null()) value = get<double>(c, "value");
  if (!c["D2"].is_null()) d2 = get<double>(c, "D2");
  if (term == LogTerm::value && !value) throw UsageError("bound: --term value needs --value");

  BoundReport classic, chosen;
  try {
    classic = d1_bound(r0, n, r2, LogTerm::classic);
    chosen = d1_bound(r0, n, r2, term, value);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bound: ") + e.what());
  }
  classic.d2 = d2;
  chosen.d2 = d2;

  CommandOutput out;
  out.result = {{"classic", to_json(classic)}, {"term", to_string(term)}, {"D1", num(chosen.d1)}};
  std::vector<std::vector<std::string>> rows = {{"classic", fmt10(classic.log_term), fmt10(classic.d1)}};
  if (term != LogTerm::classic) {
    out.result[to_string(term)] = to_json(chosen);
    out.result["delta"] = num(chosen.d1 - classic.d1);
    rows.push_back({to_string(term), fmt10(chosen.log_term), fmt10(chosen.d1)});
  }
  const std::vector<std::string> header = {"term", "log_term", "D1"};
  out.csv = csv_table(header, rows);
  out.text = text_table(header, rows);
  return out;
}

// --- table ----------------------------------------------------------------------

CommandOutput table(const Json& c, int threads) {
  const std::string which = get<std::string>(c, "which");
  CommandOutput out;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  if (which == "maxima") {
    const OptConfig cfg = opt_config(c, threads);
    Json arr = Json::array();
    bool all_within = true;
    for (const auto& row : m_table()) {
      const OptReport rep = estimate_M(Signature::make(row.n, row.r2), cfg);
      const double dev = (rep.best_value - row.m.value) / row.m.value;
      const bool ok = std::abs(dev) <= 1e-3;
      all_within = all_within && ok;
      arr.push_back({{"n", row.n},
                     {"r2", row.r2},
                     {"estimated", num(rep.best_value)},
                     {"conjectured", to_json(row.m)},
                     {"relative_deviation", num(dev)},
                     {"within_tolerance", ok},
                     {"best_index_set", rep.best_index_set.indices},
                     {"all_index_sets_agree", rep.all_index_sets_agree}});
      rows.push_back({std::to_string(row.n), std::to_string(row.r2), fmt10(rep.best_value), fmt10(row.m.value),
                      row.m.exact, to_string(row.m.status), fmt10(dev), ok ? "yes" : "NO"});
    }
    header = {"n", "r2", "estimated", "conjectured", "exact", "status", "rel_dev", "within_1e-3"};
    out.result = {{"which", which}, {"config", to_json(cfg)}, {"rows", arr}, {"all_within_tolerance", all_within}};
  } else if (which == "degree8") {
    struct Row {
      int r1, r2;
      double r0;
    };
    const Row table2[] = {{2, 3, 0.832}, {4, 2, 2.298}, {6, 1, 7.14}};
    const std::string external = "external: requires g";
    Json arr = Json::array();
    for (const Row& r : table2) {
      const BoundReport classic = d1_bound(r.r0, 8, r.r2, LogTerm::classic);
      const BoundReport improved = d1_bound(r.r0, 8, r.r2, LogTerm::improved);
      arr.push_back({{"r1", r.r1},
                     {"r2", r.r2},
                     {"R0", num(r.r0)},
                     {"D1", num(classic.d1)},
                     {"D1_improved", num(improved.d1)},
                     {"M", to_json(*improved.m)},
                     {"d1", external},
                     {"Rm", external},
                     {"4g(1/d1)", external},
                     {"4g(exp(-D1))", external}});
      rows.push_back({"(" + std::to_string(r.r1) + "," + std::to_string(r.r2) + ")", fmt10(r.r0), fmt10(classic.d1),
                      fmt10(improved.d1), external});
    }
    header = {"(r1,r2)", "R0", "D1(R0,n,r2)", "D1_improved", "4g(exp(-D1))"};
    out.result = {{"which", which}, {"rows", arr}};
  } else {
    throw UsageError("table: --which must be maxima or degree8");
  }
  out.text = text_table(header, rows);
  out.csv = csv_table(header, rows);
  return out;
}

}  // namespace

Json complete_config(const std::string& command, Json c) {
  if (c.is_null()) c = Json::object();
  if (command == "estimate-max") {
    opt_defaults(c);
    signature_arg(c);
  } else if (command == "verify-known") {
    set_default(c, "samples", 1000);
    set_default(c, "seed", 1);
  } else if (command == "deg5-sweep") {
    const deg5::SweepGrid d;
    set_default(c, "from", to_string(d.from));
    set_default(c, "to", to_string(d.to));
    set_default(c, "step", to_string(d.step));
    set_default(c, "width", 1e-12);
    set_default(c, "threshold", 1.0);
    // Normalize rationals so equal grids give equal manifests.
    for (const char* k : {"from", "to", "step"}) c[k] = to_string(rational_arg(c, k));
  } else if (command == "bound") {
    set_default(c, "term", "classic");
    set_default(c, "value", nullptr);
    set_default(c, "D2", nullptr);
    get<double>(c, "R0");
    term_arg(get<std::string>(c, "term"));
  } else if (command == "table") {
    set_default(c, "which", "maxima");
    if (get<std::string>(c, "which") == "maxima") opt_defaults(c);
  } else {
    throw UsageError("unknown command '" + command + "'");
  }
  return c;
}

CommandOutput run_command(const std::string& command, const Json& config, int threads) {
  const Json c = complete_config(command, config);
  if (command == "estimate-max") return estimate_max(c, threads);
  if (command == "verify-known") return verify(c);
  if (command == "deg5-sweep") return sweep(c, threads);
  if (command == "bound") return bound(c);
  return table(c, threads);
}

}  // namespace qmax::cli
