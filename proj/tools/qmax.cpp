// qmax: estimates, certificates and bounds for the discriminant-ratio maxima.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qmax/manifest.hpp"

namespace {

using qmax::Json;
using namespace qmax::cli;

struct Common {
  std::string format;
  std::string out;
  std::string run_dir;
  int threads = 0;
  bool timing = false;
};

std::filesystem::path run_dir(const Common& c) {
  if (!c.run_dir.empty()) return c.run_dir;
  if (const char* env = std::getenv("QMAX_RUN_DIR"); env && *env) return env;
  return "runs";
}

void emit(const std::string& text, const Common& c) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
}

std::string render(const CommandOutput& o, const std::string& format) {
  if (format == "csv") return o.csv;
  if (format == "text" && !o.text.empty()) return o.text;
  return qmax::canonical(o.result) + "\n";
}

int execute(const std::string& command, const Json& config, const Common& c) {
  const Json full = complete_config(command, config);
  qmax::RunManifest m;
  m.command = command;
  m.config = full;
  m.started = qmax::utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  CommandOutput o = run_command(command, full, c.threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  m.finished = qmax::utc_timestamp();
  m.digest = qmax::result_digest(o.result);
  emit(render(o, c.format), c);
  const auto path = qmax::write_manifest(m, run_dir(c));
  if (c.timing) std::cerr << "wall_time " << secs << " s\n";
  std::cerr << "manifest " << path.string() << '\n';
  return o.exit_code;
}

int replay(const std::string& manifest_path, const Common& c) {
  const qmax::RunManifest old = qmax::read_manifest(manifest_path);
  const CommandOutput o = run_command(old.command, old.config, c.threads);
  const std::string digest = qmax::result_digest(o.result);
  const Json result = {{"command", old.command},
                       {"expected_digest", old.digest},
                       {"actual_digest", digest},
                       {"match", digest == old.digest}};
  qmax::RunManifest m;
  m.command = "replay";
  m.config = {{"manifest", manifest_path}};
  m.started = m.finished = qmax::utc_timestamp();
  m.digest = qmax::result_digest(result);
  emit(qmax::canonical(result) + "\n", c);
  qmax::write_manifest(m, run_dir(c));
  return digest == old.digest ? kSuccess : kVerificationFailure;
}

void add_common(CLI::App* sub, Common& c, const std::string& default_format, std::vector<std::string> formats) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats));
  sub->add_option("--out", c.out, "Write output to this file instead of stdout");
  sub->add_option("--run-dir", c.run_dir, "Manifest directory (default $QMAX_RUN_DIR or ./runs)");
  sub->add_option("--threads", c.threads, "Worker threads, 0 = all cores; results do not depend on it");
  sub->add_flag("--timing", c.timing, "Print wall time to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxima of the discriminant-ratio function Q and Remak-Friedman bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qmax::kVersion);

  Json config = Json::object();

  // estimate-max
  int n = 0, r2 = 0, restarts = 64, max_iters = 2000, samples_int = 0;
  long samples = 100000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  bool no_warm = false;
  auto* est = app.add_subcommand("estimate-max", "Estimate M(n, r2) over every admissible index set");
  est->add_option("--n", n, "Degree")->required();
  est->add_option("--r2", r2, "Number of conjugate pairs")->required();
  est->add_option("--samples", samples, "Random-scan points per index set");
  est->add_option("--restarts", restarts, "Uniform local-search restarts per index set");
  est->add_option("--seed", seed, "Seed");
  est->add_option("--tol", tol, "Local search tolerance");
  est->add_option("--max-iters", max_iters, "Simplex iterations per local search");
  est->add_flag("--no-warm-starts", no_warm, "Skip the structured start points");
  Common est_common;
  add_common(est, est_common, "json", {"json", "csv"});

  // verify-known
  auto* ver = app.add_subcommand("verify-known", "Run the battery of exactly known values");
  samples_int = 1000;
  std::uint64_t ver_seed = 1;
  ver->add_option("--samples", samples_int, "Random points per closed-form comparison");
  ver->add_option("--seed", ver_seed, "Seed for the closed-form comparison");
  Common ver_common;
  add_common(ver, ver_common, "text", {"text", "json", "csv"});

  // deg5-sweep
  std::string from = "-999/1000", to = "999/1000", step = "1/1536";
  double width = 1e-12, threshold = 1.0;
  auto* sw = app.add_subcommand("deg5-sweep", "Sweep g for Q(5,1,{4},(x,y,1,g)) and certify the stationary point");
  sw->add_option("--from", from, "First grid value (exact rational or decimal)");
  sw->add_option("--to", to, "Last grid value");
  sw->add_option("--step", step, "Grid step, e.g. 1/1536");
  sw->add_option("--width", width, "Root box width for the stationary point");
  sw->add_option("--threshold", threshold, "Discard stationary roots whose value is below this");
  Common sw_common;
  add_common(sw, sw_common, "json", {"json", "csv"});

  // bound
  double r0 = 0.0;
  int bn = 0, br2 = 0;
  std::string term = "classic";
  std::optional<double> value, d2;
  auto* bd = app.add_subcommand("bound", "Remak-Friedman bound D1");
  bd->add_option("--R0", r0, "Regulator bound")->required();
  bd->add_option("--n", bn, "Degree")->required();
  bd->add_option("--r2", br2, "Number of conjugate pairs")->required();
  bd->add_option("--term", term, "Log term")->check(CLI::IsMember({"classic", "improved", "value"}));
  bd->add_option("--value", value, "Explicit log term for --term value");
  bd->add_option("--D2", d2, "Externally computed D2, shown with D = max(D1, D2)");
  Common bd_common;
  add_common(bd, bd_common, "json", {"json", "csv", "text"});

  // table
  std::string which = "maxima";
  long t_samples = 100000;
  int t_restarts = 64;
  std::uint64_t t_seed = 0;
  auto* tb = app.add_subcommand("table", "Recompute the maxima table or the degree-8 bound table");
  tb->add_option("--which", which, "maxima or degree8")->check(CLI::IsMember({"maxima", "degree8"}));
  tb->add_option("--samples", t_samples, "Random-scan points per index set");
  tb->add_option("--restarts", t_restarts, "Local-search restarts per index set");
  tb->add_option("--seed", t_seed, "Seed");
  Common tb_common;
  add_common(tb, tb_common, "text", {"text", "json", "csv"});

  // replay
  std::string manifest;
  auto* rp = app.add_subcommand("replay", "Re-run a manifest and compare result digests");
  rp->add_option("manifest", manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  Common rp_common;
  add_common(rp, rp_common, "json", {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*est) {
      config = {{"n", n},   {"r2", r2},   {"samples", samples},     {"restarts", restarts},
                {"seed", seed}, {"tol", tol}, {"max_iters", max_iters}, {"warm_starts", !no_warm}};
      return execute("estimate-max", config, est_common);
    }
    if (*ver) return execute("verify-known", {{"samples", samples_int}, {"seed", ver_seed}}, ver_common);
    if (*sw)
      return execute("deg5-sweep",
                     {{"from", from}, {"to", to}, {"step", step}, {"width", width}, {"threshold", threshold}},
                     sw_common);
    if (*bd) {
      config = {{"R0", r0}, {"n", bn}, {"r2", br2}, {"term", term}};
      config["value"] = value ? Json(*value) : Json(nullptr);
      config["D2"] = d2 ? Json(*d2) : Json(nullptr);
      return execute("bound", config, bd_common);
    }
    if (*tb) {
      config = {{"which", which}};
      if (which == "maxima") config.update({{"samples", t_samples}, {"restarts", t_restarts}, {"seed", t_seed}});
      return execute("table", config, tb_common);
    }
    return replay(manifest, rp_common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
}
