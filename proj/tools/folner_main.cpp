// Batch front door: parses operator sources, dispatches the analysis
// commands, and emits CSV/JSON artifacts. Exit codes: 0 success, 2 validation
// error, 3 resource-cap error.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "folner/diagnostics.hpp"
#include "folner/dsl.hpp"
#include "folner/search.hpp"
#include "folner/szego.hpp"
#include "folner/zoo.hpp"

namespace {

using namespace folner;
using nlohmann::ordered_json;

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t size_cap_from_env() {
  if (const char* cap = std::getenv("FOLNER_SIZE_CAP")) {
    const long long v = std::atoll(cap);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSizeCap;
}

// Writes atomically: temp file in place, then rename.
void write_artifact(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open output file " + tmp);
    os << body;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot move artifact into place at " + path);
}

void print_summary(const std::string& line, bool artifact_on_stdout) {
  // Keep stdout byte-stable when the artifact goes there.
  (artifact_on_stdout ? std::cerr : std::cout) << line << "\n";
}

// Splits an --ops list. Commas inside zoo parameter lists (zoo:toeplitz:1,0,1)
// are glued back: a segment belongs to its predecessor unless it starts a new
// source ("zoo:", "{"). Semicolons always separate.
std::vector<std::string> split_sources(const std::string& text) {
  if (text.find(';') != std::string::npos) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string seg;
    while (std::getline(ss, seg, ';'))
      if (!seg.empty()) out.push_back(seg);
    return out;
  }
  std::stringstream ss(text);
  std::string seg;
  std::vector<std::string> out;
  while (std::getline(ss, seg, ',')) {
    const bool starts_source = seg.rfind("zoo:", 0) == 0 || (!seg.empty() && seg.front() == '{');
    if (starts_source || out.empty())
      out.push_back(seg);
    else
      out.back() += "," + seg;
  }
  return out;
}

struct Sources {
  std::vector<ZooEntry> entries;
  std::vector<OperatorSpec> specs;
  std::string hash;
};

// "@path" sources read the operator JSON from a file.
std::string load_source(const std::string& source) {
  if (source.empty() || source.front() != '@') return source;
  std::ifstream is(source.substr(1), std::ios::binary);
  if (!is) throw DslError("", "cannot read operator file " + source.substr(1));
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Sources resolve_sources(const std::string& op, const std::string& ops,
                        std::optional<int> c0_override) {
  Sources out;
  if (op.empty() && ops.empty()) throw DslError("", "no operator given; use --op or --ops");
  if (!op.empty())
    for (ZooEntry& e : resolve_operator_source(load_source(op), c0_override))
      out.entries.push_back(std::move(e));
  if (!ops.empty())
    for (const std::string& src : split_sources(ops))
      for (ZooEntry& e : resolve_operator_source(load_source(src), c0_override))
        out.entries.push_back(std::move(e));
  for (const ZooEntry& e : out.entries) out.specs.push_back(e.spec);
  out.hash = spec_hash(out.specs);
  return out;
}

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Index v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || v < 1)
      throw DslError("", "bad dimension \"" + tok + "\"");
    dims.push_back(v);
  }
  if (dims.empty()) throw DslError("", "empty --dims list");
  return dims;
}

PSet parse_pset(const std::string& text) {
  if (text.empty()) return PSet{};
  PSet p{false, false, false};
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "1")
      p.p1 = true;
    else if (tok == "2")
      p.p2 = true;
    else if (tok == "op")
      p.op = true;
    else
      throw DslError("", "bad --p entry \"" + tok + "\" (expected 1, 2 or op)");
  }
  return p;
}

ordered_json profile_json(const FolnerProfile& profile) {
  ordered_json rows = ordered_json::array();
  for (const ProfileRow& r : profile.rows) {
    ordered_json row{{"window_start", r.window_start}, {"window_len", r.window_len}};
    if (r.ratio1) row["ratio1"] = *r.ratio1;
    if (r.ratio2) row["ratio2"] = *r.ratio2;
    if (r.opnorm_comm) row["opnorm_comm"] = *r.opnorm_comm;
    rows.push_back(std::move(row));
  }
  return ordered_json{{"spec_hash", profile.spec_hash}, {"rows", std::move(rows)}};
}

int run_profile(const std::string& op, const std::string& ops, std::optional<int> c0,
                const std::string& dims_text, const std::string& p_text,
                const std::string& out_path, const std::string& format) {
  const Sources src = resolve_sources(op, ops, c0);
  const std::vector<Index> dims = parse_dims(dims_text);
  FolnerProfile prof = profile(src.specs, dims, parse_pset(p_text), size_cap_from_env());
  prof.spec_hash = src.hash;

  std::string body;
  if (format == "json") {
    body = profile_json(prof).dump(2) + "\n";
  } else {
    std::ostringstream os;
    write_profile_csv(os, prof);
    body = os.str();
  }
  write_artifact(out_path, body);
  const ProfileRow& last = prof.rows.back();
  const double headline = last.ratio2 ? *last.ratio2 : (last.ratio1 ? *last.ratio1 : 0.0);
  print_summary("profile spec=" + src.hash + " ratio2@" + std::to_string(last.window_len) + "=" +
                    fmt17(headline),
                out_path.empty());
  return 0;
}

int run_szego(const std::string& op, std::optional<int> c0, const std::string& dims_text,
              const std::string& ref_text, int bins, const std::string& hist_path,
              const std::string& out_path, const std::string& format) {
  const Sources src = resolve_sources(op, "", c0);
  if (src.entries.size() != 1) throw DslError("", "szego expects a single operator");
  const ZooEntry& entry = src.entries.front();
  const std::vector<Index> dims = parse_dims(dims_text);
  const std::size_t cap = size_cap_from_env();

  ReferenceMeasure ref{ReferenceMeasure::Kind::Oracle, {}};
  std::string ref_name = ref_text;
  if (ref_name.empty() || ref_name == "auto")
    ref_name = entry.reference_measure_hint == MeasureHint::SymbolPushforward ? "symbol" : "oracle";
  if (ref_name == "symbol") {
    const auto* tp = std::get_if<ToeplitzNode>(&entry.spec.node().data());
    if (tp == nullptr)
      throw DslError("", "--ref symbol needs a toeplitz operator; use --ref oracle:<d>");
    ref = symbol_pushforward(tp->coeffs, tp->c0);
  } else {
    Index oracle_d = 4 * dims.back();
    if (ref_name.rfind("oracle:", 0) == 0) {
      oracle_d = std::atoll(ref_name.substr(7).c_str());
    } else if (ref_name != "oracle") {
      throw DslError("", "bad --ref \"" + ref_text + "\" (symbol or oracle:<d>)");
    }
    if (oracle_d < 4 * dims.back())
      throw DslError("", "oracle dimension must be at least 4x the largest probe dimension");
    ref = oracle_measure(entry.spec, oracle_d, cap);
  }

  SzegoReport report = szego_report(entry.spec, dims, ref, cap);
  report.spec_hash = src.hash;

  std::string body;
  if (format == "json") {
    ordered_json rows = ordered_json::array();
    for (const SzegoRow& r : report.rows) {
      ordered_json row{{"d", r.d}, {"ks_dist", r.ks}};
      for (int k = 1; k <= kSzegoMomentCount; ++k) {
        row["m" + std::to_string(k) + "_err"] = r.moment_err[static_cast<std::size_t>(k - 1)];
        row["trace_resid_" + std::to_string(k)] = r.trace_resid[static_cast<std::size_t>(k - 1)];
      }
      rows.push_back(std::move(row));
    }
    body = ordered_json{{"spec_hash", report.spec_hash}, {"rows", std::move(rows)}}.dump(2) + "\n";
  } else {
    std::ostringstream os;
    write_szego_csv(os, report);
    body = os.str();
  }
  write_artifact(out_path, body);

  if (!hist_path.empty()) {
    const EmpiricalMeasure mu = counting_measure(entry.spec, dims.back(), cap);
    std::ostringstream os;
    write_histogram_csv(os, histogram(mu, bins));
    write_artifact(hist_path, os.str());
  }
  print_summary("szego spec=" + src.hash + " ks@" + std::to_string(report.rows.back().d) + "=" +
                    fmt17(report.rows.back().ks),
                out_path.empty());
  return 0;
}

int run_trace(const std::string& op, std::optional<int> c0, const std::string& dims_text,
              int kmax, const std::string& out_path, const std::string& format) {
  const Sources src = resolve_sources(op, "", c0);
  if (src.entries.size() != 1) throw DslError("", "trace expects a single operator");
  const OperatorSpec& spec = src.entries.front().spec;
  const std::vector<Index> dims = parse_dims(dims_text);
  if (kmax < 1) throw DslError("", "--kmax must be >= 1");

  std::vector<std::tuple<Index, int, Complex>> rows;
  for (const Index d : dims) {
    const WindowProjection window = WindowProjection::interval(0, d);
    for (int k = 1; k <= kmax; ++k)
      rows.emplace_back(d, k, trace_state(op_power(spec, k), window));
  }

  std::string body;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& [d, k, v] : rows)
      arr.push_back({{"d", d}, {"k", k}, {"re", v.real()}, {"im", v.imag()}});
    body = ordered_json{{"spec_hash", src.hash}, {"rows", std::move(arr)}}.dump(2) + "\n";
  } else {
    body = "# spec_hash: " + src.hash + "\nd,k,trace_re,trace_im\n";
    for (const auto& [d, k, v] : rows)
      body += std::to_string(d) + "," + std::to_string(k) + "," + fmt17(v.real()) + "," +
              fmt17(v.imag()) + "\n";
  }
  write_artifact(out_path, body);
  const auto& [d, k, v] = rows.back();
  print_summary("trace spec=" + src.hash + " tr@" + std::to_string(d) + "^" + std::to_string(k) +
                    "=" + fmt17(v.real()),
                out_path.empty());
  return 0;
}

int run_search(const std::string& op, const std::string& ops, std::optional<int> c0, Index size,
               Index window, const std::string& dims_text, const std::string& strategy_text,
               std::uint64_t budget, std::uint64_t seed, double epsilon, double flat_slope,
               const std::string& out_path) {
  const Sources src = resolve_sources(op, ops, c0);
  SearchOptions options;
  options.budget = budget;
  options.seed = seed;
  options.strategy =
      strategy_text == "interval" ? SearchStrategy::Interval : SearchStrategy::Greedy;

  std::string body;
  std::string headline;
  if (!dims_text.empty()) {
    const std::vector<Index> schedule = parse_dims(dims_text);
    const ProbeResult probe =
        nonfolner_probe(src.specs, schedule, epsilon, flat_slope, options, window);
    body = search_report_json(SearchReport{options.strategy, options.budget, &probe.best,
                                           probe.trace, probe.slope}) +
           "\n";
    headline = std::string("decay=") + to_string(probe.decay_flag) +
               " min_ratio=" + fmt17(probe.best.best_ratio);
  } else {
    if (size < 1) throw DslError("", "--size is required for a single search");
    const Index m = window > 0 ? window : 4 * size;
    const SearchResult result = subset_search(src.specs, m, size, options);
    body = search_report_json(SearchReport{options.strategy, options.budget, &result, {}}) + "\n";
    headline = "best_ratio=" + fmt17(result.best_ratio);
  }
  write_artifact(out_path, body);
  print_summary("search spec=" + src.hash + " " + headline, out_path.empty());
  return 0;
}

int run_nrange(const std::string& op, std::optional<int> c0, Index size, int angles, int samples,
               Index xband, std::uint64_t seed, const std::string& out_path) {
  const Sources src = resolve_sources(op, "", c0);
  if (src.entries.size() != 1) throw DslError("", "nrange expects a single operator");
  const OperatorSpec& spec = src.entries.front().spec;
  if (size < 1) throw DslError("", "--size must be >= 1");
  const std::size_t cap = size_cap_from_env();

  const CompressionMatrix t = compress(spec, WindowProjection::interval(0, size), cap);
  const NumericalRangePolygon poly = numerical_range(t.entries, angles);

  ordered_json j;
  j["spec_hash"] = src.hash;
  j["d"] = size;
  j["angles"] = angles;
  ordered_json verts = ordered_json::array();
  for (const Complex& z : poly.vertices) verts.push_back({z.real(), z.imag()});
  j["vertices"] = std::move(verts);
  j["distance_to_origin"] = poly.distance_to_origin;
  double headline = poly.distance_to_origin;
  if (samples > 0) {
    const std::vector<Index> dims{size};
    const std::vector<FinitenessRow> rows =
        finiteness_probe(spec, dims, samples, angles, seed, xband, cap);
    ordered_json probe = ordered_json::array();
    for (const FinitenessRow& row : rows) {
      ordered_json distances = ordered_json::array();
      for (double v : row.distances) distances.push_back(v);
      probe.push_back(
          {{"d", row.d}, {"max_distance", row.max_distance}, {"distances", std::move(distances)}});
      headline = row.max_distance;
    }
    j["finiteness_probe"] = std::move(probe);
  }
  write_artifact(out_path, j.dump(2) + "\n");
  print_summary("nrange spec=" + src.hash + " dist0=" + fmt17(headline), out_path.empty());
  return 0;
}

int run_verify(const std::string& op, std::optional<int> c0, Index window,
               const std::string& out_path) {
  if (window < 1) throw DslError("", "--window must be >= 1");
  ordered_json j;
  std::string summary;
  if (op.rfind("zoo:cuntz-family:", 0) == 0) {
    const int n = std::atoi(op.substr(17).c_str());
    const CuntzRelationReport rep = verify_cuntz_relations(n, window);
    j = ordered_json{{"relation", "cuntz"},
                     {"n", rep.branching},
                     {"window", rep.window_len},
                     {"max_dev_completeness", rep.max_dev_completeness},
                     {"max_dev_orthogonality", rep.max_dev_orthogonality},
                     {"max_deviation", rep.max_deviation()}};
    summary = "verify cuntz n=" + std::to_string(n) + " max deviation " +
              fmt17(rep.max_deviation());
  } else {
    // Generic window checks: adjoint involution and compression/entry
    // consistency, plus the Hermitian deviation for self-adjoint expressions.
    const Sources src = resolve_sources(op, "", c0);
    const OperatorSpec& spec = src.entries.front().spec;
    const std::size_t cap = size_cap_from_env();
    const CompressionMatrix t = compress(spec, WindowProjection::interval(0, window), cap);
    double max_entry_dev = 0.0;
    const OperatorSpec twice = OperatorSpec::adjoint(OperatorSpec::adjoint(spec));
    const Index step = std::max<Index>(1, window / 64);
    for (Index i = 0; i < window; i += step) {
      for (Index jx = 0; jx < window; jx += step) {
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(jx);
        max_entry_dev = std::max(max_entry_dev, std::abs(t.entries(a, b) - spec.entry(i, jx)));
        max_entry_dev = std::max(max_entry_dev, std::abs(spec.entry(i, jx) - twice.entry(i, jx)));
      }
    }
    const bool sa = is_formally_selfadjoint(spec);
    double herm_dev = 0.0;
    if (sa) herm_dev = (t.entries - t.entries.adjoint()).cwiseAbs().maxCoeff();
    j = ordered_json{{"spec_hash", src.hash},
                     {"window", window},
                     {"max_entry_deviation", max_entry_dev},
                     {"selfadjoint", sa},
                     {"hermitian_deviation", herm_dev}};
    summary = "verify spec=" + src.hash + " max deviation " +
              fmt17(std::max(max_entry_dev, herm_dev));
  }
  write_artifact(out_path, j.dump(2) + "\n");
  print_summary(summary, out_path.empty());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-section diagnostics for banded operators on l^2"};
  app.require_subcommand(1);

  std::string op, ops, dims, p_text, ref_text = "auto", out_path, format = "csv";
  std::string strategy = "greedy", hist_path;
  std::optional<int> c0_override;
  Index size = 0, window = 0, xband = 2;
  int bins = 200, kmax = 8, angles = 720, samples = 0;
  std::uint64_t budget = 1'000'000, seed = 0;
  double epsilon = 0.05, flat_slope = 0.05;

  const auto add_common = [&](CLI::App* cmd, bool with_ops) {
    cmd->add_option("--op", op, "operator source (zoo:<name>, inline JSON, or @file)");
    if (with_ops) cmd->add_option("--ops", ops, "comma/semicolon list of operator sources");
    cmd->add_option("--c0-index", c0_override, "center index for even-length toeplitz lists");
    cmd->add_option("--out", out_path, "artifact path (stdout if omitted)");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", seed, "seed for all randomness (default 0)");
  };

  CLI::App* cmd_profile = app.add_subcommand("profile", "commutator Schatten-norm ratio table");
  add_common(cmd_profile, true);
  cmd_profile->add_option("--dims", dims, "comma list of window sizes")->required();
  cmd_profile->add_option("--p", p_text, "ratio columns to fill: 1,2,op (default all)");

  CLI::App* cmd_szego = app.add_subcommand("szego", "eigenvalue-distribution convergence report");
  add_common(cmd_szego, false);
  cmd_szego->add_option("--dims", dims, "comma list of compression dimensions")->required();
  cmd_szego->add_option("--ref", ref_text, "reference measure: symbol | oracle[:<d>] | auto");
  cmd_szego->add_option("--bins", bins, "histogram bin count (default 200)");
  cmd_szego->add_option("--hist", hist_path, "write an eigenvalue histogram CSV here");

  CLI::App* cmd_trace = app.add_subcommand("trace", "finite-window trace state of powers");
  add_common(cmd_trace, false);
  cmd_trace->add_option("--dims", dims, "comma list of window sizes")->required();
  cmd_trace->add_option("--kmax", kmax, "largest power (default 8)");

  CLI::App* cmd_search = app.add_subcommand("search", "small-ratio coordinate window search");
  add_common(cmd_search, true);
  cmd_search->add_option("--size", size, "window size for a single search");
  cmd_search->add_option("--window", window, "largest usable index (default 4x size)");
  cmd_search->add_option("--dims", dims, "size schedule; enables the decay probe");
  cmd_search->add_option("--strategy", strategy, "interval or greedy")
      ->check(CLI::IsMember({"interval", "greedy"}));
  cmd_search->add_option("--budget", budget, "candidate evaluation budget");
  cmd_search->add_option("--epsilon", epsilon, "decay threshold (default 0.05)");
  cmd_search->add_option("--flat-slope", flat_slope, "log-log flatness threshold (default 0.05)");

  CLI::App* cmd_nrange = app.add_subcommand("nrange", "numerical-range polygon of a compression");
  add_common(cmd_nrange, false);
  cmd_nrange->add_option("--size", size, "compression dimension")->required();
  cmd_nrange->add_option("--angles", angles, "support angles (default 720)");
  cmd_nrange->add_option("--probe-samples", samples, "random banded X samples (0 = off)");
  cmd_nrange->add_option("--xband", xband, "bandwidth of sampled X (default 2)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "windowed identity checks");
  add_common(cmd_verify, false);
  cmd_verify->add_option("--window", window, "window length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (cmd_profile->parsed())
      return run_profile(op, ops, c0_override, dims, p_text, out_path, format);
    if (cmd_szego->parsed())
      return run_szego(op, c0_override, dims, ref_text, bins, hist_path, out_path, format);
    if (cmd_trace->parsed()) return run_trace(op, c0_override, dims, kmax, out_path, format);
    if (cmd_search->parsed())
      return run_search(op, ops, c0_override, size, window, dims, strategy, budget, seed, epsilon,
                        flat_slope, out_path);
    if (cmd_nrange->parsed())
      return run_nrange(op, c0_override, size, angles, samples, xband, seed, out_path);
    if (cmd_verify->parsed()) return run_verify(op, c0_override, window, out_path);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
