// Command-line front end: simulate | operator | stability | scan |
// equivalence | backsolve.
//
// Exit codes: 0 success, 2 configuration error (flags, JSON shape, malformed
// rationals), 3 precondition violation (mathematically invalid request), 4
// I/O failure. Every failure prints a single line to stderr prefixed with
// error[config]: / error[precondition]: / error[io]:.
//
// All outputs are byte-deterministic for a given invocation: no timestamps,
// no locale dependence, fixed number formatting, and scan results are
// gathered in row-major order regardless of --threads.

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <asynlin/asynlin.hpp>

#include "svg.hpp"

using nlohmann::ordered_json;
using namespace asynlin;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// I/O helpers
// ---------------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return ss.str();
}

// Empty path means stdout.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

ordered_json load_config(const std::string& path) {
  const std::string text = slurp(path);
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

const ordered_json& require_key(const ordered_json& cfg, const char* key) {
  if (!cfg.is_object() || !cfg.contains(key))
    throw ConfigError(std::string("missing config key '") + key + "'");
  return cfg.at(key);
}

// Exact rationals come in as strings ("3/2") or integer JSON numbers.
Rat rat_value(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return rat_from_string(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(what + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw ConfigError(what + " must be a rational string like \"3/2\" or an "
                           "integer");
}

Rat rat_field(const ordered_json& cfg, const char* key) {
  return rat_value(require_key(cfg, key), std::string("'") + key + "'");
}

double double_value(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return rat_from_string(v.get<std::string>()).to_double();
    } catch (const std::exception& e) {
      throw ConfigError(what + ": " + e.what());
    }
  }
  if (v.is_number()) return v.get<double>();
  throw ConfigError(what + " must be a number or a rational string");
}

struct ParsedSpec {
  bool exact = true;   // every matrix entry was a string or integer
  SystemSpec rs;       // exact spec; float entries are converted verbatim
  SystemSpecF fs;      // float view of the same spec
};

ParsedSpec parse_spec(const ordered_json& cfg) {
  ParsedSpec ps;
  ps.rs.mu = rat_field(cfg, "mu");
  ps.rs.nu = rat_field(cfg, "nu");
  if (!(ps.rs.mu > Rat(0)) || !(ps.rs.nu > Rat(0)))
    throw ConfigError("'mu' and 'nu' must be positive");

  const ordered_json& P = require_key(cfg, "P");
  if (!P.is_array() || P.size() != 2 || !P[0].is_array() ||
      !P[1].is_array() || P[0].size() != 2 || P[1].size() != 2)
    throw ConfigError("'P' must be a 2x2 array [[p11,p12],[p21,p22]]");
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (P[r][c].is_number_float()) ps.exact = false;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const std::string what = "'P[" + std::to_string(r) + "][" +
                               std::to_string(c) + "]'";
      if (ps.exact) {
        ps.rs.P(r, c) = rat_value(P[r][c], what);
      } else {
        // Float-parameter mode: every entry is read as a double and then
        // converted exactly (doubles are dyadic rationals).
        ps.rs.P(r, c) = rat_from_double(double_value(P[r][c], what));
      }
    }
  }
  ps.fs = to_float(ps.rs);
  return ps;
}

double margin_field(const ordered_json& cfg) {
  if (!cfg.contains("margin")) return 1e-9;
  const ordered_json& v = cfg.at("margin");
  if (!v.is_number()) throw ConfigError("'margin' must be a number");
  const double m = v.get<double>();
  if (!(m >= 0.0)) throw ConfigError("'margin' must be nonnegative");
  return m;
}

std::string output_field(const ordered_json& cfg, const char* dflt) {
  const std::string fmt = cfg.value("output", std::string(dflt));
  if (fmt != "csv" && fmt != "json")
    throw ConfigError("'output' must be \"csv\" or \"json\"");
  return fmt;
}

// ---------------------------------------------------------------------------
// JSON emitters
// ---------------------------------------------------------------------------

template <typename Mat>
ordered_json rat_matrix_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json double_matrix_json(const Mat2<double>& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 2; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 2; ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json cpx_json(const Cpx& z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fmt_double(double v, int prec) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

// Exact arithmetic never rounds, so pathological parameter choices can grow
// denominators without bound; warn (once per run) past ten thousand digits.
void warn_denominators(std::size_t max_digits) {
  if (max_digits > 10000)
    std::fprintf(stderr,
                 "warning[precision]: rational denominators reached %zu "
                 "digits; output remains exact but may be large\n",
                 max_digits);
}

ordered_json stability_json(const StabilityReport& rep,
                            const char* parameter_mode) {
  ordered_json j;
  j["operator"] = rat_matrix_json(rep.op);
  j["period_T"] = rep.period_T.str();
  j["eigen"] = ordered_json{
      {"lambda1", cpx_json(rep.eigen.lambda1)},
      {"lambda2", cpx_json(rep.eigen.lambda2)},
      {"trace", rep.eigen.trace.str()},
      {"det", rep.eigen.det.str()},
      {"discriminant", rep.eigen.discriminant.str()},
  };
  j["spectral_radius"] = rep.spectral_radius;
  j["verdict"] = verdict_name(rep.verdict);
  j["theorem"] = route_name(rep.route);
  j["margin"] = rep.margin;
  j["parameter_mode"] = parameter_mode;
  return j;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& cfg_path, const std::string& out_path,
                 const std::string& svg_path, bool audit) {
  const ordered_json cfg = load_config(cfg_path);
  const ParsedSpec ps = parse_spec(cfg);
  if (!ps.exact)
    throw ConfigError("simulate requires exact parameters; give P entries "
                      "as rational strings or integers");
  const Rat x0 = rat_field(cfg, "x0");
  const Rat y0 = rat_field(cfg, "y0");
  const Rat horizon = rat_field(cfg, "horizon");
  const std::string fmt = output_field(cfg, "csv");

  const Trajectory tr = simulate(ps.rs, x0, y0, horizon, audit);

  std::size_t max_digits = 0;
  for (const auto& s : tr.samples) {
    if (s.x) max_digits = std::max(max_digits, rat_den_digits(*s.x));
    if (s.y) max_digits = std::max(max_digits, rat_den_digits(*s.y));
  }
  warn_denominators(max_digits);

  std::string primary;
  if (fmt == "csv") {
    primary = "t,x,y\n";
    for (const auto& s : tr.samples) {
      primary += s.t.str();
      primary += ',';
      if (s.x) primary += s.x->str();
      primary += ',';
      if (s.y) primary += s.y->str();
      primary += '\n';
    }
  } else {
    ordered_json j;
    j["mu"] = tr.spec.mu.str();
    j["nu"] = tr.spec.nu.str();
    j["horizon"] = tr.horizon.str();
    ordered_json samples = ordered_json::array();
    for (const auto& s : tr.samples) {
      ordered_json row;
      row["t"] = s.t.str();
      row["x"] = s.x ? ordered_json(s.x->str()) : ordered_json(nullptr);
      row["y"] = s.y ? ordered_json(s.y->str()) : ordered_json(nullptr);
      samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    primary = dump(j);
  }
  write_output(out_path, primary);
  if (!svg_path.empty()) write_output(svg_path, svg::trajectory_svg(tr));
  return 0;
}

// ---------------------------------------------------------------------------
// operator
// ---------------------------------------------------------------------------

int cmd_operator(const std::string& cfg_path, const std::string& out_path,
                 const std::string& from_str, const std::string& to_str) {
  const ordered_json cfg = load_config(cfg_path);
  const ParsedSpec ps = parse_spec(cfg);
  if (!ps.exact)
    throw ConfigError("operator requires exact parameters; give P entries "
                      "as rational strings or integers");

  Rat from(0);
  if (!from_str.empty()) {
    try {
      from = rat_from_string(from_str);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--from: ") + e.what());
    }
  }
  Rat to = lcm_periods(ps.rs.mu, ps.rs.nu).T + from;
  if (!to_str.empty()) {
    try {
      to = rat_from_string(to_str);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--to: ") + e.what());
    }
  }

  const EvolutionOp<Rat> ev = evolution(ps.rs, from, to);
  const SolutionOp<Rat> sol = solution_operator(ps.rs, from, to);
  const auto quads = factor_quadruples(ps.rs.mu, ps.rs.nu, from, to);

  std::size_t max_digits = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      max_digits = std::max(max_digits, rat_den_digits(ev.phi(r, c)));
  warn_denominators(max_digits);

  // factor_quadruples is chronological; the product is written with the
  // latest step leftmost, matching how the matrices multiply.
  ordered_json factors = ordered_json::array();
  std::string product;
  for (auto it = quads.rbegin(); it != quads.rend(); ++it) {
    factors.push_back(quadruple_name(*it));
    if (!product.empty()) product += "\xC2\xB7";  // middle dot
    product += quadruple_name(*it);
  }

  ordered_json j;
  j["mu"] = ps.rs.mu.str();
  j["nu"] = ps.rs.nu.str();
  j["from"] = from.str();
  j["to"] = to.str();
  j["factors"] = std::move(factors);
  j["product"] = product;
  j["phi"] = rat_matrix_json(ev.phi);
  j["psi"] = rat_matrix_json(sol.psi);
  write_output(out_path, dump(j));
  return 0;
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

int cmd_stability(const std::string& cfg_path, const std::string& out_path,
                  const std::optional<double>& margin_flag) {
  const ordered_json cfg = load_config(cfg_path);
  const ParsedSpec ps = parse_spec(cfg);
  double margin = margin_field(cfg);
  if (margin_flag) {
    if (!(*margin_flag >= 0.0))
      throw ConfigError("--margin must be nonnegative");
    margin = *margin_flag;
  }
  const StabilityReport rep = ps.exact
                                  ? classify_stability(ps.rs, margin)
                                  : classify_stability(ps.fs, margin);
  write_output(out_path,
               dump(stability_json(rep, ps.exact ? "exact" : "float")));
  return 0;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanAxis {
  std::string param;               // alpha|beta|gamma|delta|mu|nu
  bool is_period = false;          // mu/nu sweep via explicit values
  std::vector<Rat> values;         // exact value per step
  std::vector<std::string> labels; // CSV/SVG label per step
};

ScanAxis parse_axis(const ordered_json& ax, int index) {
  const std::string where = "axes[" + std::to_string(index) + "]";
  if (!ax.is_object()) throw ConfigError(where + " must be an object");
  ScanAxis out;
  if (!ax.contains("param") || !ax.at("param").is_string())
    throw ConfigError(where + " needs a 'param' string");
  out.param = ax.at("param").get<std::string>();
  const bool is_rate = out.param == "alpha" || out.param == "beta" ||
                       out.param == "gamma" || out.param == "delta";
  out.is_period = out.param == "mu" || out.param == "nu";
  if (!is_rate && !out.is_period)
    throw ConfigError(where + ".param must be one of alpha, beta, gamma, "
                              "delta, mu, nu");

  if (ax.contains("values")) {
    const ordered_json& vals = ax.at("values");
    if (!vals.is_array() || vals.size() < 2)
      throw ConfigError(where + ".values must list at least 2 entries");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const Rat v = rat_value(vals[i], where + ".values[" +
                                           std::to_string(i) + "]");
      if (out.is_period && !(v > Rat(0)))
        throw ConfigError(where + ": period values must be positive");
      out.values.push_back(v);
      out.labels.push_back(v.str());
    }
    return out;
  }

  if (out.is_period)
    throw ConfigError(where + ": mu/nu axes need an explicit 'values' list "
                              "of rational strings");
  if (!ax.contains("lo") || !ax.contains("hi") || !ax.contains("steps"))
    throw ConfigError(where + " needs lo, hi, steps (or a 'values' list)");
  const double lo = double_value(ax.at("lo"), where + ".lo");
  const double hi = double_value(ax.at("hi"), where + ".hi");
  if (!ax.at("steps").is_number_integer())
    throw ConfigError(where + ".steps must be an integer");
  const long steps = ax.at("steps").get<long>();
  if (steps < 2) throw ConfigError(where + ".steps must be at least 2");
  if (!(lo < hi)) throw ConfigError(where + " needs lo < hi");
  for (long i = 0; i < steps; ++i) {
    const double v =
        lo + (hi - lo) * static_cast<double>(i) /
                 static_cast<double>(steps - 1);
    // Grid values are doubles; the conversion to Rat is exact, so every
    // cell is still classified with exact arithmetic.
    out.values.push_back(rat_from_double(v));
    out.labels.push_back(fmt_double(v, 10));
  }
  return out;
}

void apply_axis_value(SystemSpec& spec, const ScanAxis& ax, const Rat& v) {
  if (ax.param == "alpha") spec.P(0, 0) = v;
  else if (ax.param == "beta") spec.P(0, 1) = v;
  else if (ax.param == "gamma") spec.P(1, 0) = v;
  else if (ax.param == "delta") spec.P(1, 1) = v;
  else if (ax.param == "mu") spec.mu = v;
  else spec.nu = v;
}

int cmd_scan(const std::string& cfg_path, const std::string& out_path,
             const std::string& svg_path, long threads) {
  const ordered_json cfg = load_config(cfg_path);
  const ParsedSpec ps = parse_spec(cfg);
  const double margin = margin_field(cfg);
  const std::string fmt = output_field(cfg, "csv");

  const ordered_json& axes = require_key(cfg, "axes");
  if (!axes.is_array() || axes.size() != 2)
    throw ConfigError("'axes' must be an array of exactly 2 axis objects");
  const ScanAxis ax0 = parse_axis(axes[0], 0);
  const ScanAxis ax1 = parse_axis(axes[1], 1);
  if (ax0.param == ax1.param)
    throw ConfigError("the two scan axes must sweep different parameters");

  const std::size_t n0 = ax0.values.size();
  const std::size_t n1 = ax1.values.size();
  const std::size_t n_cells = n0 * n1;

  struct Cell {
    double rho = 0.0;
    Verdict verdict = Verdict::kMarginal;
  };
  std::vector<Cell> cells(n_cells);

  long n_threads = threads;
  if (n_threads <= 0) {
    n_threads = static_cast<long>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }
  n_threads = std::min<long>(n_threads, static_cast<long>(n_cells));

  // Cells are independent and each is computed with exact arithmetic, so the
  // result is identical for any thread count; only wall time changes.
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};
  auto worker = [&](long tid) {
    try {
      for (std::size_t idx = static_cast<std::size_t>(tid); idx < n_cells;
           idx += static_cast<std::size_t>(n_threads)) {
        if (failed.load(std::memory_order_relaxed)) return;
        SystemSpec spec = ps.rs;
        apply_axis_value(spec, ax0, ax0.values[idx / n1]);
        apply_axis_value(spec, ax1, ax1.values[idx % n1]);
        const StabilityReport rep = classify_stability(spec, margin);
        cells[idx] = Cell{rep.spectral_radius, rep.verdict};
      }
    } catch (...) {
      if (!failed.exchange(true)) first_error = std::current_exception();
    }
  };
  if (n_threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (long t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::string primary;
  if (fmt == "csv") {
    primary = ax0.param + "," + ax1.param + ",rho,verdict\n";
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n1; ++j) {
        const Cell& c = cells[i * n1 + j];
        primary += ax0.labels[i] + "," + ax1.labels[j] + "," +
                   fmt_double(c.rho, 12) + "," + verdict_name(c.verdict) +
                   "\n";
      }
    }
  } else {
    ordered_json j;
    j["axes"] = ordered_json::array({ax0.param, ax1.param});
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t jx = 0; jx < n1; ++jx) {
        const Cell& c = cells[i * n1 + jx];
        ordered_json row;
        row[ax0.param] = ax0.labels[i];
        row[ax1.param] = ax1.labels[jx];
        row["rho"] = c.rho;
        row["verdict"] = verdict_name(c.verdict);
        rows.push_back(std::move(row));
      }
    }
    j["cells"] = std::move(rows);
    primary = dump(j);
  }
  write_output(out_path, primary);

  if (!svg_path.empty()) {
    svg::ScanView sv;
    sv.xlabel = ax0.param;
    sv.ylabel = ax1.param;
    sv.title = "spectral radius  (base mu=" + ps.rs.mu.str() +
               ", nu=" + ps.rs.nu.str() + ")";
    sv.xticks = ax0.labels;
    sv.yticks = ax1.labels;
    sv.nx = n0;
    sv.ny = n1;
    sv.cells.resize(n_cells);
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t jx = 0; jx < n1; ++jx) {
        const Cell& c = cells[i * n1 + jx];
        int v = 1;
        if (c.verdict == Verdict::kAsymptoticallyStable) v = 0;
        if (c.verdict == Verdict::kNotAsymptoticallyStable) v = 2;
        sv.cells[i * n1 + jx] = svg::ScanCellView{c.rho, v};
      }
    }
    write_output(svg_path, svg::scan_svg(sv));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// equivalence
// ---------------------------------------------------------------------------

int cmd_equivalence(const std::string& cfg_a, const std::string& cfg_b,
                    const std::string& out_path, double atol, double rtol) {
  const ParsedSpec a = parse_spec(load_config(cfg_a));
  const ParsedSpec b = parse_spec(load_config(cfg_b));

  ordered_json j;
  if (a.exact && b.exact) {
    const EquivalenceReport rep = check_equivalence(a.rs, b.rs);
    j["comparison"] = "exact";
    j["common_T"] = rep.common_T.str();
    j["psi_a"] = rat_matrix_json(rep.psi_a);
    j["psi_b"] = rat_matrix_json(rep.psi_b);
    j["residual"] = rat_matrix_json(rep.residual);
    j["equivalent"] = rep.equivalent;
  } else {
    const EquivalenceReportF rep = check_equivalence(a.fs, b.fs, atol, rtol);
    j["comparison"] = "float";
    j["common_T"] = rep.common_T.str();
    j["psi_a"] = double_matrix_json(rep.psi_a);
    j["psi_b"] = double_matrix_json(rep.psi_b);
    j["residual"] = double_matrix_json(rep.residual);
    j["equivalent"] = rep.equivalent;
    j["atol"] = rep.atol;
    j["rtol"] = rep.rtol;
  }
  write_output(out_path, dump(j));
  return 0;
}

// ---------------------------------------------------------------------------
// backsolve
// ---------------------------------------------------------------------------

int cmd_backsolve(const std::string& a11, const std::string& a12,
                  const std::string& a21, const std::string& a22,
                  long mu_hat, const std::string& out_path) {
  Mat2R target;
  const struct {
    const char* flag;
    const std::string* text;
    int r, c;
  } entries[] = {{"--a11", &a11, 0, 0},
                 {"--a12", &a12, 0, 1},
                 {"--a21", &a21, 1, 0},
                 {"--a22", &a22, 1, 1}};
  for (const auto& e : entries) {
    try {
      target(e.r, e.c) = rat_from_string(*e.text);
    } catch (const std::exception& ex) {
      throw ConfigError(std::string(e.flag) + ": " + ex.what());
    }
  }

  const BacksolveResult res = backsolve_mu1(target, mu_hat);

  ordered_json j;
  j["mu_hat"] = res.mu_hat.str();
  j["nu_hat"] = "1";
  j["alpha"] = res.alpha.str();
  j["beta"] = res.beta.str();
  j["exact"] = res.exact();
  if (res.exact()) {
    j["gamma"] = res.gamma_exact->str();
    j["delta"] = res.delta_exact->str();
  } else {
    j["gamma"] = res.gamma;
    j["delta"] = res.delta;
  }
  j["target_psi"] = rat_matrix_json(target);
  const SystemSpecF spec = res.to_spec();
  const SolutionOp<double> sol =
      solution_operator(spec, Rat(0), res.mu_hat);
  j["achieved_psi"] = double_matrix_json(sol.psi);
  write_output(out_path, dump(j));
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"asynlin: two-rate sample-and-hold linear dynamics toolkit"};
  app.require_subcommand(1);

  std::string cfg_path, cfg_b_path, out_path, svg_path, from_str, to_str;
  std::string a11, a12, a21, a22;
  bool audit = false;
  std::optional<double> margin_flag;
  double atol = 1e-9, rtol = 1e-9;
  long threads = 0, mu_hat = 0;

  auto* sim = app.add_subcommand(
      "simulate", "Run the coupled recursion on the union grid");
  sim->add_option("--config", cfg_path, "JSON system description")
      ->required();
  sim->add_option("--out", out_path, "Output path (default: stdout)");
  sim->add_option("--svg", svg_path, "Also write a step-plot SVG here");
  sim->add_flag("--audit", audit,
                "Cross-check held samples against the lag operator");

  auto* op = app.add_subcommand(
      "operator", "Print the evolution and solution operators");
  op->add_option("--config", cfg_path, "JSON system description")
      ->required();
  op->add_option("--from", from_str, "Window start (rational, default 0)");
  op->add_option("--to", to_str,
                 "Window end (rational, default: one common period)");
  op->add_option("--out", out_path, "Output path (default: stdout)");

  auto* stab = app.add_subcommand(
      "stability", "Classify asymptotic stability over one common period");
  stab->add_option("--config", cfg_path, "JSON system description")
      ->required();
  stab->add_option("--margin", margin_flag,
                   "Marginal band half-width (overrides config)");
  stab->add_option("--out", out_path, "Output path (default: stdout)");

  auto* scan = app.add_subcommand(
      "scan", "Sweep two parameters and classify every cell");
  scan->add_option("--config", cfg_path,
                   "JSON system description with an 'axes' array")
      ->required();
  scan->add_option("--out", out_path, "Output path (default: stdout)");
  scan->add_option("--svg", svg_path, "Also write a heatmap SVG here");
  scan->add_option("--threads", threads,
                   "Worker threads (0 = auto); results are identical for "
                   "any value");

  auto* eq = app.add_subcommand(
      "equivalence", "Compare two systems over their common period");
  eq->add_option("--config", cfg_path, "First system (JSON)")->required();
  eq->add_option("--config-b", cfg_b_path, "Second system (JSON)")
      ->required();
  eq->add_option("--atol", atol, "Absolute tolerance (float mode)");
  eq->add_option("--rtol", rtol, "Relative tolerance (float mode)");
  eq->add_option("--out", out_path, "Output path (default: stdout)");

  auto* back = app.add_subcommand(
      "backsolve", "Recover a (mu,1) system from its one-period operator");
  back->add_option("--a11", a11, "Target operator entry (rational)")
      ->required();
  back->add_option("--a12", a12, "Target operator entry (rational)")
      ->required();
  back->add_option("--a21", a21, "Target operator entry (rational)")
      ->required();
  back->add_option("--a22", a22, "Target operator entry (rational)")
      ->required();
  back->add_option("--mu-hat", mu_hat, "Integer period of the x state")
      ->required();
  back->add_option("--out", out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error[config]: %s\n", e.what());
    return 2;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(cfg_path, out_path, svg_path, audit);
    if (op->parsed()) return cmd_operator(cfg_path, out_path, from_str, to_str);
    if (stab->parsed()) return cmd_stability(cfg_path, out_path, margin_flag);
    if (scan->parsed()) return cmd_scan(cfg_path, out_path, svg_path, threads);
    if (eq->parsed())
      return cmd_equivalence(cfg_path, cfg_b_path, out_path, atol, rtol);
    if (back->parsed())
      return cmd_backsolve(a11, a12, a21, a22, mu_hat, out_path);
    std::fprintf(stderr, "error[config]: no subcommand given\n");
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error[config]: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error[io]: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    // Library-level domain/logic/invalid-argument failures: the request was
    // well-formed but mathematically inadmissible.
    std::fprintf(stderr, "error[precondition]: %s\n", e.what());
    return 3;
  }
}
