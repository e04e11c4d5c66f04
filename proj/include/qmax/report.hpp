#pragma once

/**
 * @file report.hpp
 * @brief Canonical JSON and CSV renderings of reports.
 *
 * Objects are key-sorted and every floating value is rounded to 10
 * significant digits, so equal results serialize to identical bytes.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmax/bounds.hpp"
#include "qmax/deg5.hpp"
#include "qmax/optimizer.hpp"
#include "qmax/verify.hpp"

namespace qmax {

using Json = nlohmann::json;

/// v rounded to 10 significant digits (null when not finite).
inline Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  double r = std::strtod(buf, nullptr);
  if (r == 0.0) r = 0.0;  // drop negative zero
  return r;
}

inline std::string fmt10(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline std::string canonical(const Json& j) { return j.dump(); }

// --- optimizer ----------------------------------------------------------

inline Json to_json(const OptConfig& c) {
  return {{"samples", c.samples},   {"restarts", c.restarts},   {"seed", c.seed},
          {"tol", num(c.tol)},      {"max_iters", c.max_iters}, {"warm_starts", c.warm_starts}};
}

inline Json to_json(const OptReport& r) {
  Json per = Json::array();
  for (const auto& e : r.per_index_set)
    per.push_back({{"index_set", e.index_set.indices},
                   {"value", num(e.value)},
                   {"point", nums(e.point.coords)},
                   {"scan_value", num(e.scan_value)}});
  return {{"n", r.signature.n},
          {"r1", r.signature.r1},
          {"r2", r.signature.r2},
          {"config", to_json(r.config)},
          {"best_value", num(r.best_value)},
          {"best_point", nums(r.best_point.coords)},
          {"best_index_set", r.best_index_set.indices},
          {"all_index_sets_agree", r.all_index_sets_agree},
          {"per_index_set", per}};
}

inline std::string to_csv(const OptReport& r) {
  std::ostringstream os;
  os << "n,r2,index_set,value,scan_value,point\n";
  for (const auto& e : r.per_index_set) {
    os << r.signature.n << ',' << r.signature.r2 << ",\"" << e.index_set.to_string() << "\"," << fmt10(e.value)
       << ',' << fmt10(e.scan_value) << ",\"";
    for (std::size_t i = 0; i < e.point.coords.size(); ++i) os << (i ? " " : "") << fmt10(e.point.coords[i]);
    os << "\"\n";
  }
  return os.str();
}

// --- bounds -------------------------------------------------------------

inline Json to_json(const MValue& m) {
  return {{"value", num(m.value)}, {"status", to_string(m.status)}, {"exact", m.exact}};
}

inline Json to_json(const BoundReport& b) {
  Json j = {{"R0", num(b.r0)},
            {"n", b.n},
            {"r2", b.r2},
            {"term", to_string(b.term)},
            {"unit_rank", b.unit_rank},
            {"log_term", num(b.log_term)},
            {"a_factor", num(b.a_factor)},
            {"unit_bound", num(b.unit_bound)},
            {"D1", num(b.d1)},
            {"log10_discriminant_bound", num(b.decimal_exponent())}};
  if (b.m) j["M"] = to_json(*b.m);
  if (b.d2) {
    j["D2"] = num(*b.d2);
    j["D"] = num(*b.d());
  }
  return j;
}

// --- deg5 ---------------------------------------------------------------

inline Json to_json(const RootBox& b) {
  return {{"lo", b.lo}, {"hi", b.hi}, {"multiplicity_hint", b.multiplicity_hint}};
}

inline Json to_json(const deg5::StationaryPoint& s) {
  Json cands = Json::array();
  for (const auto& c : s.candidates) {
    Json e = {{"x", num(c.x)}, {"box", to_json(c.x_box)}, {"discarded", c.discarded}};
    e["g"] = c.g ? num(*c.g) : Json(nullptr);
    e["value"] = c.g ? num(c.value) : Json(nullptr);
    cands.push_back(e);
  }
  return {{"x", num(s.x)},
          {"g", num(s.g)},
          {"value", num(s.value)},
          {"x_box", to_json(s.x_box)},
          {"discard_threshold", num(s.discard_threshold)},
          {"candidates", cands}};
}

inline Json to_json(const deg5::SweepRecord& r) {
  Json j = {{"g", to_string(r.g)},
            {"g_value", num(r.g_value())},
            {"edge_y", {{"value", num(r.edge_y.value)}, {"x", num(r.edge_y.at)}}},
            {"edge_x", {{"value", num(r.edge_x.value)}, {"y", num(r.edge_x.at)}}},
            {"winner", to_string(r.winner)},
            {"winner_value", num(r.winner_value)},
            {"margin", num(r.margin)},
            {"y_zero_column", num(r.y_zero_column)},
            {"interior_candidates", r.interior_candidates},
            {"y_zero_skipped", r.y_zero_skipped},
            {"resultant_degenerate", r.resultant_degenerate}};
  j["interior"] = r.interior ? Json{{"value", num(r.interior->value)},
                                    {"x", num(r.interior->x)},
                                    {"y", num(r.interior->y)}}
                             : Json(nullptr);
  return j;
}

inline const char* sweep_csv_header() {
  return "g,g_value,edge_y_value,edge_y_x,edge_x_value,edge_x_y,interior_value,interior_x,interior_y,"
         "winner,winner_value,margin,y_zero_column,interior_candidates,y_zero_skipped,resultant_degenerate\n";
}

inline std::string to_csv_row(const deg5::SweepRecord& r) {
  std::ostringstream os;
  os << to_string(r.g) << ',' << fmt10(r.g_value()) << ',' << fmt10(r.edge_y.value) << ',' << fmt10(r.edge_y.at)
     << ',' << fmt10(r.edge_x.value) << ',' << fmt10(r.edge_x.at) << ',';
  if (r.interior)
    os << fmt10(r.interior->value) << ',' << fmt10(r.interior->x) << ',' << fmt10(r.interior->y);
  else
    os << ",,";
  os << ',' << to_string(r.winner) << ',' << fmt10(r.winner_value) << ',' << fmt10(r.margin) << ','
     << fmt10(r.y_zero_column) << ',' << r.interior_candidates << ',' << r.y_zero_skipped << ','
     << (r.resultant_degenerate ? "true" : "false") << '\n';
  return os.str();
}

// --- verification -------------------------------------------------------

inline Json to_json(const Check& c) {
  return {{"name", c.name},
          {"expected", num(c.expected)},
          {"actual", num(c.actual)},
          {"tolerance", num(c.tolerance)},
          {"passed", c.passed}};
}

}  // namespace qmax
