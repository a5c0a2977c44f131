#include "bkmstates/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bkm/analytics.hpp"
#include "bkm/error.hpp"
#include "bkm/montecarlo.hpp"
#include "bkm/verification.hpp"

namespace bkm::cli {

namespace {

using nlohmann::json;

enum class Format { Csv, Json };

struct RunConfig {
  std::string ensemble = "bkm";
  int dim = 2;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
  Format format = Format::Csv;
  double diag_scale = 1.0;
};

struct ScanConfig {
  RunConfig run;
  std::vector<std::string> dims;
};

struct DensityConfig {
  double x_min = 0.01;
  double x_max = kSupportEdge;
  int points = 1000;
  std::string out;
  Format format = Format::Csv;
};

struct VerifyConfig {
  std::string level = "quick";
  std::uint64_t seed = VerifyOptions{}.seed;
  int workers = 1;
  std::string out;
  double diag_scale = 1.0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

EnsembleKind ensemble_of(const std::string& name) {
  const auto kind = parse_ensemble(name);
  if (!kind) throw UsageError("unknown ensemble '" + name + "' (expected bkm, hs or bh)");
  return *kind;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("write to '" + path + "' failed");
}

json moments_json(const RunningMoments& m) {
  return {{"mean", m.mean()}, {"stderr", m.stderr_mean()}, {"sigma", m.stddev()},
          {"min", m.min()},   {"max", m.max()}};
}

json summary_json(const SampleSummary& s) {
  return {{"count", s.count()},
          {"entropy", moments_json(s.entropy)},
          {"purity", moments_json(s.purity)},
          {"r_min", moments_json(s.r_min)},
          {"r_max", moments_json(s.r_max)}};
}

std::string render_batch(const BatchConfig& config, const BatchResult& result, Format format) {
  if (format == Format::Json) {
    json samples = json::array();
    for (const auto& r : result.records) {
      samples.push_back({{"sample_index", r.index},
                         {"entropy", r.entropy},
                         {"purity", r.purity},
                         {"r_min", r.r_min},
                         {"r_max", r.r_max}});
    }
    json doc = {{"ensemble", std::string(to_string(config.kind))},
                {"dim", config.dim},
                {"seed", config.seed},
                {"workers", config.workers},
                {"bipartite", config.bipartite},
                {"samples", std::move(samples)},
                {"summary", summary_json(result.summary)}};
    return doc.dump(2) + "\n";
  }
  std::string text = "sample_index,entropy,purity,r_min,r_max\n";
  for (const auto& r : result.records) {
    text += fmt::format("{},{},{},{},{}\n", r.index, num(r.entropy), num(r.purity), num(r.r_min),
                        num(r.r_max));
  }
  const SampleSummary& s = result.summary;
  text += fmt::format("# count,{}\n", s.count());
  text += "# observable,mean,stderr,sigma,min,max\n";
  const std::pair<const char*, const RunningMoments*> rows[] = {
      {"entropy", &s.entropy}, {"purity", &s.purity}, {"r_min", &s.r_min}, {"r_max", &s.r_max}};
  for (const auto& [name, m] : rows) {
    text += fmt::format("# {},{},{},{},{},{}\n", name, num(m->mean()), num(m->stderr_mean()),
                        num(m->stddev()), num(m->min()), num(m->max()));
  }
  return text;
}

BatchConfig batch_config(const RunConfig& run, EnsembleKind kind) {
  BatchConfig config;
  config.kind = kind;
  config.dim = run.dim;
  config.samples = run.samples;
  config.seed = run.seed;
  config.workers = run.workers;
  config.options.diagonal_scale = run.diag_scale;
  return config;
}

int cmd_sample(const RunConfig& run, bool bipartite, std::ostream& out) {
  BatchConfig config = batch_config(run, bipartite ? EnsembleKind::BKM : ensemble_of(run.ensemble));
  config.bipartite = bipartite;
  const BatchResult result = run_batch(config);
  emit(run.out, render_batch(config, result, run.format), out);
  return kExitOk;
}

// Per-dimension stream key, so adding a dimension leaves the others unchanged.
std::uint64_t scan_seed(std::uint64_t seed, int dim) {
  return seed ^ (static_cast<std::uint64_t>(dim) * 0x9e3779b97f4a7c15ULL);
}

int cmd_scan(const ScanConfig& scan, std::ostream& out) {
  const EnsembleKind kind = ensemble_of(scan.run.ensemble);
  std::vector<int> dims;
  try {
    dims = parse_dims(scan.dims);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json rows = json::array();
  std::string text = "dim,mean_entropy,stderr,sigma,analytic_entropy,analytic_kind,max_entropy\n";
  for (int n : dims) {
    RunConfig run = scan.run;
    run.dim = n;
    BatchConfig config = batch_config(run, kind);
    config.seed = scan_seed(scan.run.seed, n);
    const BatchResult result = run_batch(config);
    const RunningMoments& s = result.summary.entropy;
    const EntropyPrediction predicted = mean_entropy(kind, n);
    const char* analytic_kind = predicted.exact ? "exact" : "asymptotic";
    const double max_entropy = std::log(static_cast<double>(n));
    text += fmt::format("{},{},{},{},{},{},{}\n", n, num(s.mean()), num(s.stderr_mean()), num(s.stddev()),
                        num(predicted.value), analytic_kind, num(max_entropy));
    rows.push_back({{"dim", n},
                    {"mean_entropy", s.mean()},
                    {"stderr", s.stderr_mean()},
                    {"sigma", s.stddev()},
                    {"analytic_entropy", predicted.value},
                    {"analytic_kind", analytic_kind},
                    {"max_entropy", max_entropy}});
  }
  if (scan.run.format == Format::Json) {
    json doc = {{"ensemble", std::string(to_string(kind))},
                {"samples_per_dim", scan.run.samples},
                {"seed", scan.run.seed},
                {"rows", std::move(rows)}};
    text = doc.dump(2) + "\n";
  }
  emit(scan.run.out, text, out);
  return kExitOk;
}

int cmd_density(DensityConfig d, std::ostream& out) {
  // Accept a typed-in 2e that rounds just above the edge.
  if (d.x_max > kSupportEdge && d.x_max <= kSupportEdge * (1.0 + 1e-12)) d.x_max = kSupportEdge;
  if (!(d.x_min > 0.0) || !(d.x_min < d.x_max) || !(d.x_max <= kSupportEdge)) {
    throw Error(Errc::OutOfSupport,
                fmt::format("need 0 < x-min < x-max <= 2e, got [{}, {}]", d.x_min, d.x_max));
  }
  if (d.points < 2) throw UsageError("--points must be at least 2");
  const double step = (d.x_max - d.x_min) / (d.points - 1);
  std::string text = "x,density\n";
  json rows = json::array();
  for (int i = 0; i < d.points; ++i) {
    const double x = i + 1 == d.points ? d.x_max : d.x_min + i * step;
    const double p = marginal_density_asymptotic(x);
    text += fmt::format("{},{}\n", num(x), num(p));
    rows.push_back({{"x", x}, {"density", p}});
  }
  if (d.format == Format::Json) text = json{{"rows", std::move(rows)}}.dump(2) + "\n";
  emit(d.out, text, out);
  return kExitOk;
}

int cmd_verify(const VerifyConfig& v, std::ostream& out, std::ostream& err) {
  VerifyLevel level;
  if (v.level == "quick") {
    level = VerifyLevel::Quick;
  } else if (v.level == "full") {
    level = VerifyLevel::Full;
  } else {
    throw UsageError("--level must be quick or full");
  }
  VerifyOptions options;
  options.seed = v.seed;
  options.workers = v.workers;
  options.sampler.diagonal_scale = v.diag_scale;
  Verifier verifier(options);
  std::string report;
  const bool to_stream = v.out.empty() || v.out == "-";
  const auto results = verifier.run(level, [&](const CheckResult& r) {
    const std::string line =
        fmt::format("[{}] {} {}: {}\n", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail);
    report += line;
    if (to_stream) {
      out << line;
      out.flush();
    } else {
      err << line;
    }
  });
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  const std::string tail = fmt::format("{} of {} checks passed\n", results.size() - failed, results.size());
  if (to_stream) {
    out << tail;
  } else {
    emit(v.out, report + tail, out);
  }
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

void add_format(CLI::App* cmd, Format& format) {
  const std::map<std::string, Format> names{{"csv", Format::Csv}, {"json", Format::Json}};
  cmd->add_option("--format", format, "Output format: csv or json")
      ->transform(CLI::CheckedTransformer(names, CLI::ignore_case))
      ->option_text("csv|json [csv]");
}

void add_run_options(CLI::App* cmd, RunConfig& run, bool with_ensemble, bool with_dim) {
  if (with_ensemble) cmd->add_option("--ensemble", run.ensemble, "bkm, hs or bh")->capture_default_str();
  if (with_dim) {
    cmd->add_option("--dim", run.dim, "Hilbert-space dimension N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  cmd->add_option("--samples", run.samples, "Number of states")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", run.seed, "64-bit seed")->capture_default_str();
  cmd->add_option("--workers", run.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", run.out, "Output file (default stdout)");
  add_format(cmd, run.format);
  cmd->add_option("--diag-scale", run.diag_scale)->group("");
}

}  // namespace

std::vector<int> parse_dims(const std::vector<std::string>& tokens) {
  auto to_int = [](std::string_view s) {
    int value = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size()) {
      throw std::invalid_argument("bad dimension '" + std::string(s) + "'");
    }
    if (value < 1) throw std::invalid_argument("dimension must be >= 1, got " + std::string(s));
    return value;
  };
  std::vector<int> dims;
  for (const std::string& token : tokens) {
    std::string_view rest = token;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (const auto dots = item.find(".."); dots != std::string_view::npos) {
        const int lo = to_int(item.substr(0, dots));
        const int hi = to_int(item.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("empty range '" + std::string(item) + "'");
        for (int n = lo; n <= hi; ++n) dims.push_back(n);
      } else {
        dims.push_back(to_int(item));
      }
    }
  }
  if (dims.empty()) throw std::invalid_argument("no dimensions given");
  return dims;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random density matrices from the entropy-metric (BKM) ensemble", "bkmstates"};
  app.require_subcommand(1);

  RunConfig sample;
  auto* sample_cmd = app.add_subcommand("sample", "Sample states and report per-state observables");
  add_run_options(sample_cmd, sample, true, true);

  ScanConfig scan;
  scan.run.samples = 10000;
  auto* scan_cmd = app.add_subcommand("scan", "Mean entropy against dimension");
  add_run_options(scan_cmd, scan.run, true, false);
  scan_cmd->add_option("--dims", scan.dims, "Dimensions, e.g. 2..20 or 4,8,16")->required();

  DensityConfig density;
  auto* density_cmd = app.add_subcommand("density", "Tabulate the large-N rescaled eigenvalue density");
  density_cmd->add_option("--x-min", density.x_min)->capture_default_str();
  density_cmd->add_option("--x-max", density.x_max)->capture_default_str();
  density_cmd->add_option("--points", density.points)->capture_default_str();
  density_cmd->add_option("--out", density.out, "Output file (default stdout)");
  add_format(density_cmd, density.format);

  VerifyConfig verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the statistical verification suite");
  verify_cmd->add_option("--level", verify.level, "quick or full")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--workers", verify.workers)->check(CLI::PositiveNumber)->capture_default_str();
  verify_cmd->add_option("--out", verify.out, "Report file (default stdout)");
  verify_cmd->add_option("--diag-scale", verify.diag_scale)->group("");

  RunConfig pure;
  auto* pure_cmd = app.add_subcommand("pure", "Entanglement statistics of bipartite pure states");
  add_run_options(pure_cmd, pure, false, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) return cmd_sample(sample, false, out);
    if (*scan_cmd) return cmd_scan(scan, out);
    if (*density_cmd) return cmd_density(density, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*pure_cmd) return cmd_sample(pure, true, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bkm::cli
