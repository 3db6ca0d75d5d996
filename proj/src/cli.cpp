#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "seqmeas/cli.hpp"
#include "seqmeas/models.hpp"
#include "seqmeas/qcore.hpp"
#include "seqmeas/shots.hpp"
#include "seqmeas/tradeoff.hpp"

namespace seqmeas::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
constexpr std::uint64_t kMaxRows = 10000000;

using qcore::cxd;
using qcore::Operator;

// ------------------------------------------------------------- small lex --

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type from = 0;
  while (true) {
    const auto at = s.find(sep, from);
    if (at == std::string::npos) {
      parts.push_back(s.substr(from));
      return parts;
    }
    parts.push_back(s.substr(from, at - from));
    from = at + 1;
  }
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter '" + key + "': cannot parse '" +
                                text + "' as a number");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw std::invalid_argument("parameter '" + key + "': '" + text +
                                "' is not a small integer");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || end != t.data() + t.size())
    throw std::invalid_argument("parameter '" + key + "': cannot parse '" +
                                text + "' as an unsigned integer");
  return v;
}

std::array<double, 3> parse_axis(const std::string& key,
                                 const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 3)
    throw std::invalid_argument("parameter '" + key +
                                "': expected three comma-separated numbers");
  return {parse_double(key, parts[0]), parse_double(key, parts[1]),
          parse_double(key, parts[2])};
}

// Locale-independent shortest-17-digit formatting; infinities print as inf.
std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

// ------------------------------------------------------- config assembly --

const std::set<std::string>& known_scenarios() {
  static const std::set<std::string> s = {"qubit", "qutrit", "circuit",
                                          "sagnac", "shots"};
  return s;
}

void assign_config_entry_impl(SweepConfig& cfg, const std::string& key,
                              const std::string& value) {
  const auto fail = [](const std::string& what) {
    throw std::invalid_argument(what);
  };
  if (key.empty()) fail("empty key");
  if (key == "scenario") {
    if (!known_scenarios().count(value))
      fail("unknown scenario '" + value + "'");
    cfg.scenario = value;
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "format") {
    if (value != "csv" && value != "jsonl")
      fail("format must be csv or jsonl, got '" + value + "'");
    cfg.format = value;
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "jobs") {
    cfg.jobs = parse_int(key, value);
  } else if (key.rfind("grid.", 0) == 0) {
    GridAxis axis;
    axis.name = key.substr(5);
    if (axis.name.empty()) fail("empty grid parameter name");
    const std::vector<std::string> parts = split(value, ':');
    if (parts.size() != 3) fail("grid '" + axis.name +
                                "' must be start:stop:steps");
    axis.start = parse_double(key, parts[0]);
    axis.stop = parse_double(key, parts[1]);
    axis.steps = parse_int(key, parts[2]);
    if (axis.steps < 1) fail("grid '" + axis.name + "' needs steps >= 1");
    // Re-declaring an axis overrides it in place, keeping nesting order.
    for (GridAxis& existing : cfg.grid)
      if (existing.name == axis.name) {
        existing = axis;
        return;
      }
    cfg.grid.push_back(axis);
  } else {
    cfg.fixed[key] = value;
  }
}

void assign_config_entry(SweepConfig& cfg, const std::string& key,
                         const std::string& value, const std::string& where) {
  try {
    assign_config_entry_impl(cfg, key, value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

// ----------------------------------------------------- scenario schemas --

struct ScenarioSchema {
  std::vector<std::string> parameters;  // accepted fixed keys
  std::vector<std::string> sweepable;   // subset usable as grid axes
  std::vector<std::string> columns;     // output row layout
};

std::vector<std::string> concat(std::vector<std::string> a,
                                const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const ScenarioSchema& schema_for(const std::string& scenario) {
  static const std::vector<std::string> two_outcome = {
      "p_a_plus", "p_a_minus", "p_b_plus", "p_b_minus",
      "p_c_plus", "p_c_minus", "p_d_plus", "p_d_minus"};
  static const std::vector<std::string> circuit_params = {
      "alpha_deg", "phi_deg",  "theta_deg", "gamma",
      "e1",        "e2",       "meter_e1",  "meter_e2"};
  static const std::map<std::string, ScenarioSchema> schemas = {
      {"qubit",
       {{"alpha_deg", "theta_deg", "phi_deg", "a_axis", "b_axis"},
        {"alpha_deg", "theta_deg", "phi_deg"},
        concat(concat({"alpha_deg", "theta_deg", "phi_deg", "a_x", "a_y",
                       "a_z", "b_x", "b_y", "b_z"},
                      two_outcome),
               {"epsilon", "eta", "xi_g_max", "Xi"})}},
      {"qutrit",
       {{"alpha_deg", "phi_s_deg", "chi12_deg", "chi13_deg", "theta_deg",
         "phi_m_deg"},
        {"alpha_deg", "phi_s_deg", "chi12_deg", "chi13_deg", "theta_deg",
         "phi_m_deg"},
        {"alpha_deg", "phi_s_deg", "chi12_deg", "chi13_deg", "theta_deg",
         "phi_m_deg", "p_a_1", "p_a_2", "p_a_3", "p_b_1", "p_b_2", "p_b_3",
         "p_c_1", "p_c_2", "p_c_3", "p_d_1", "p_d_2", "p_d_3", "epsilon",
         "eta", "xi_g_max", "Xi"}}},
      {"circuit",
       {circuit_params,
        circuit_params,
        concat(concat(circuit_params, two_outcome),
               {"epsilon", "eta", "xi_g_max", "Xi", "lhs", "rhs"})}},
      {"sagnac",
       {circuit_params,
        circuit_params,
        concat(concat(circuit_params, two_outcome),
               {"epsilon", "eta", "xi_g_max", "Xi", "lhs", "rhs", "xi_g1",
                "xi_g2"})}},
      {"shots",
       {concat(circuit_params, {"mean_total", "bootstrap"}),
        concat(circuit_params, {"mean_total", "bootstrap"}),
        concat(circuit_params,
               {"mean_total", "bootstrap", "model_lhs", "model_rhs", "lhs",
                "lhs_std", "rhs", "rhs_std", "epsilon", "eta", "xi_g_max"})}},
  };
  const auto at = schemas.find(scenario);
  if (at == schemas.end())
    throw std::invalid_argument("unknown scenario '" + scenario + "'");
  return at->second;
}

// Per-row parameter lookup: swept axis values override fixed strings.
struct RowParams {
  const std::map<std::string, std::string>* fixed = nullptr;
  std::map<std::string, double> swept;

  bool has(const std::string& key) const {
    return swept.count(key) || fixed->count(key);
  }
  double number(const std::string& key, double fallback) const {
    const auto s = swept.find(key);
    if (s != swept.end()) return s->second;
    const auto f = fixed->find(key);
    if (f != fixed->end()) return parse_double(key, f->second);
    return fallback;
  }
  double angle(const std::string& key) const {
    return number(key, 0.0) * kDegToRad;
  }
  std::array<double, 3> axis(const std::string& key,
                             std::array<double, 3> fallback) const {
    const auto f = fixed->find(key);
    if (f != fixed->end()) return parse_axis(key, f->second);
    return fallback;
  }
};

// --------------------------------------------------------- row evaluators --

void append_distribution(std::vector<double>& row,
                         const qcore::Distribution& d) {
  row.insert(row.end(), d.p.begin(), d.p.end());
}

void append_quadruple(std::vector<double>& row,
                      const tradeoff::ScenarioDistributions& dists) {
  append_distribution(row, dists.p_a);
  append_distribution(row, dists.p_b);
  append_distribution(row, dists.p_c);
  append_distribution(row, dists.p_d);
}

std::vector<double> eval_qubit(const RowParams& rp) {
  models::QubitParams p;
  p.alpha = rp.angle("alpha_deg");
  p.theta = rp.angle("theta_deg");
  p.phi = rp.angle("phi_deg");
  p.a_axis = rp.axis("a_axis", {0.0, 0.0, 1.0});
  p.b_axis = rp.axis("b_axis", {1.0, 0.0, 0.0});

  const auto dists = models::qubit_cnot_model(p);
  const auto rep = tradeoff::tradeoff_report(dists);

  std::vector<double> row = {rp.number("alpha_deg", 0.0),
                             rp.number("theta_deg", 0.0),
                             rp.number("phi_deg", 0.0)};
  row.insert(row.end(), p.a_axis.begin(), p.a_axis.end());
  row.insert(row.end(), p.b_axis.begin(), p.b_axis.end());
  append_quadruple(row, dists);
  row.insert(row.end(), {rep.epsilon, rep.eta, rep.xi_g_max, rep.Xi});
  return row;
}

std::vector<double> eval_qutrit(const RowParams& rp) {
  models::QutritParams p;
  p.alpha = rp.angle("alpha_deg");
  p.phi_s = rp.angle("phi_s_deg");
  p.chi12 = rp.angle("chi12_deg");
  p.chi13 = rp.angle("chi13_deg");
  p.theta = rp.angle("theta_deg");
  p.phi_m = rp.angle("phi_m_deg");

  const auto dists = models::qutrit_model(p);
  const auto rep = tradeoff::tradeoff_report(dists);

  std::vector<double> row = {
      rp.number("alpha_deg", 0.0), rp.number("phi_s_deg", 0.0),
      rp.number("chi12_deg", 0.0), rp.number("chi13_deg", 0.0),
      rp.number("theta_deg", 0.0), rp.number("phi_m_deg", 0.0)};
  append_quadruple(row, dists);
  row.insert(row.end(), {rep.epsilon, rep.eta, rep.xi_g_max, rep.Xi});
  return row;
}

models::CircuitParams circuit_params_from(const RowParams& rp) {
  models::CircuitParams p;
  p.alpha = rp.angle("alpha_deg");
  p.phi = rp.angle("phi_deg");
  p.theta = rp.angle("theta_deg");
  p.gamma = rp.number("gamma", 0.766);
  p.e1 = rp.number("e1", std::numeric_limits<double>::infinity());
  p.e2 = rp.number("e2", std::numeric_limits<double>::infinity());
  if (rp.has("meter_e1")) p.meter_e1 = rp.number("meter_e1", 0.0);
  if (rp.has("meter_e2")) p.meter_e2 = rp.number("meter_e2", 0.0);
  return p;
}

void append_circuit_settings(std::vector<double>& row, const RowParams& rp,
                             const models::CircuitParams& p) {
  row.insert(row.end(),
             {rp.number("alpha_deg", 0.0), rp.number("phi_deg", 0.0),
              rp.number("theta_deg", 0.0), p.gamma, p.e1, p.e2,
              p.meter_e1.value_or(p.e1), p.meter_e2.value_or(p.e2)});
}

std::vector<double> eval_circuit(const RowParams& rp) {
  const models::CircuitParams p = circuit_params_from(rp);
  const auto dists = models::circuit_scenario(p);
  const auto rep = tradeoff::tradeoff_report(dists);

  std::vector<double> row;
  append_circuit_settings(row, rp, p);
  append_quadruple(row, dists);
  row.insert(row.end(), {rep.epsilon, rep.eta, rep.xi_g_max, rep.Xi,
                         rep.epsilon + rep.eta, rep.xi_g_max});
  return row;
}

std::vector<double> eval_sagnac(const RowParams& rp) {
  const models::CircuitParams p = circuit_params_from(rp);
  const auto rep = models::imperfect_probabilities(p);

  std::vector<double> row;
  append_circuit_settings(row, rp, p);
  append_quadruple(row, rep.dists);
  row.insert(row.end(),
             {rep.epsilon, rep.eta, rep.rhs, rep.lhs - rep.rhs, rep.lhs,
              rep.rhs, rep.xi_g1, rep.xi_g2});
  return row;
}

std::vector<double> eval_shots(const RowParams& rp, std::uint64_t row_index,
                               std::uint64_t master_seed) {
  const models::CircuitParams p = circuit_params_from(rp);
  const double mean_total = rp.number("mean_total", 1e6);
  const int bootstrap = static_cast<int>(rp.number("bootstrap", 200.0));

  const auto model = models::imperfect_probabilities(p);
  const auto z_joint = models::sagnac_joint_probabilities(p, models::RunBasis::z);
  const auto x_joint = models::sagnac_joint_probabilities(p, models::RunBasis::x);

  const std::uint64_t row_seed = shots::derive_seed(master_seed, row_index);
  const auto z_run = shots::simulate_counts(
      z_joint, mean_total, shots::derive_seed(row_seed, 0),
      models::RunBasis::z);
  const auto x_run = shots::simulate_counts(
      x_joint, mean_total, shots::derive_seed(row_seed, 1),
      models::RunBasis::x);
  const auto est = shots::estimate_tradeoff(z_run, x_run, p.gamma, bootstrap,
                                            shots::derive_seed(row_seed, 2));

  std::vector<double> row;
  append_circuit_settings(row, rp, p);
  row.insert(row.end(),
             {mean_total, static_cast<double>(bootstrap), model.lhs,
              model.rhs, est.lhs.value, est.lhs.std, est.rhs.value,
              est.rhs.std, est.epsilon, est.eta, est.xi_g_max});
  return row;
}

// -------------------------------------------------------------- sweeping --

struct GridLayout {
  std::uint64_t total = 1;
  std::vector<std::uint64_t> strides;  // first axis slowest (row-major)
};

GridLayout layout_for(const std::vector<GridAxis>& grid) {
  GridLayout layout;
  layout.strides.assign(grid.size(), 1);
  for (int i = static_cast<int>(grid.size()) - 1; i >= 0; --i) {
    layout.strides[i] = layout.total;
    layout.total *= static_cast<std::uint64_t>(grid[i].steps);
    if (layout.total > kMaxRows)
      throw std::invalid_argument("grid too large (over 1e7 rows)");
  }
  return layout;
}

RowParams row_params(const SweepConfig& cfg, const GridLayout& layout,
                     std::uint64_t row) {
  RowParams rp;
  rp.fixed = &cfg.fixed;
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    const auto idx = (row / layout.strides[i]) %
                     static_cast<std::uint64_t>(cfg.grid[i].steps);
    rp.swept[cfg.grid[i].name] = cfg.grid[i].value_at(static_cast<int>(idx));
  }
  return rp;
}

std::vector<double> evaluate_row(const SweepConfig& cfg,
                                 const GridLayout& layout, std::uint64_t row) {
  const RowParams rp = row_params(cfg, layout, row);
  if (cfg.scenario == "qubit") return eval_qubit(rp);
  if (cfg.scenario == "qutrit") return eval_qutrit(rp);
  if (cfg.scenario == "circuit") return eval_circuit(rp);
  if (cfg.scenario == "sagnac") return eval_sagnac(rp);
  if (cfg.scenario == "shots") return eval_shots(rp, row, cfg.seed);
  throw std::invalid_argument("unknown scenario '" + cfg.scenario + "'");
}

void validate_sweep(const SweepConfig& cfg, const ScenarioSchema& schema) {
  if (cfg.format != "csv" && cfg.format != "jsonl")
    throw std::invalid_argument("format must be csv or jsonl, got '" +
                                cfg.format + "'");
  const std::set<std::string> params(schema.parameters.begin(),
                                     schema.parameters.end());
  const std::set<std::string> sweepable(schema.sweepable.begin(),
                                        schema.sweepable.end());
  for (const auto& [key, value] : cfg.fixed)
    if (!params.count(key))
      throw std::invalid_argument("scenario '" + cfg.scenario +
                                  "' does not accept parameter '" + key + "'");
  std::set<std::string> seen;
  for (const GridAxis& axis : cfg.grid) {
    if (!sweepable.count(axis.name))
      throw std::invalid_argument("scenario '" + cfg.scenario +
                                  "' cannot sweep parameter '" + axis.name +
                                  "'");
    if (!seen.insert(axis.name).second)
      throw std::invalid_argument("grid axis '" + axis.name +
                                  "' declared twice");
    if (axis.steps < 1)
      throw std::invalid_argument("grid axis '" + axis.name +
                                  "' needs steps >= 1");
  }
}

void write_rows(std::ostream& out, const ScenarioSchema& schema,
                const std::string& format,
                const std::vector<std::vector<double>>& rows) {
  if (format == "csv") {
    for (std::size_t c = 0; c < schema.columns.size(); ++c)
      out << (c ? "," : "") << schema.columns[c];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c ? "," : "") << format_double(row[c]);
      out << "\n";
    }
    return;
  }
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      // JSON has no literal for non-finite numbers; fall back to strings.
      if (std::isfinite(row[c]))
        obj[schema.columns[c]] = row[c];
      else
        obj[schema.columns[c]] = format_double(row[c]);
    }
    out << obj.dump() << "\n";
  }
}

int run_sweep_impl(const SweepConfig& cfg) {
  const ScenarioSchema& schema = schema_for(cfg.scenario);
  validate_sweep(cfg, schema);
  const GridLayout layout = layout_for(cfg.grid);

  std::vector<std::vector<double>> rows(layout.total);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t jobs =
      std::min<std::uint64_t>(cfg.jobs > 0 ? cfg.jobs : hw, layout.total);

  if (jobs <= 1) {
    for (std::uint64_t r = 0; r < layout.total; ++r)
      rows[r] = evaluate_row(cfg, layout, r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (std::uint64_t w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        try {
          // Contiguous slabs: row r belongs to worker r * jobs / total.
          const std::uint64_t from = w * layout.total / jobs;
          const std::uint64_t to = (w + 1) * layout.total / jobs;
          for (std::uint64_t r = from; r < to; ++r)
            rows[r] = evaluate_row(cfg, layout, r);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  if (cfg.output.empty()) {
    write_rows(std::cout, schema, cfg.format, rows);
    return 0;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file: " + cfg.output);
  write_rows(out, schema, cfg.format, rows);
  if (!out) throw std::runtime_error("failed writing: " + cfg.output);
  return 0;
}

// ------------------------------------------------------------- verifying --

// Gaussian pairs via Box-Muller on the splitmix stream.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - rng_.next_double();  // (0, 1]: log stays finite
    const double u2 = rng_.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }
  cxd next_complex() { return cxd(next(), next()); }
  double next_uniform() { return rng_.next_double(); }

 private:
  shots::Rng rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<cxd> random_ket(GaussianSource& g, int dim) {
  std::vector<cxd> v(dim);
  double norm_sq = 0.0;
  for (cxd& a : v) {
    a = g.next_complex();
    norm_sq += std::norm(a);
  }
  const double norm = std::sqrt(norm_sq);
  for (cxd& a : v) a /= norm;
  return v;
}

Operator random_unitary(GaussianSource& g, int dim) {
  // Modified Gram-Schmidt on a complex-Gaussian matrix; the result is Haar
  // distributed up to column phases, which is all the verifier needs.
  std::vector<std::vector<cxd>> cols(dim, std::vector<cxd>(dim));
  for (int c = 0; c < dim; ++c) {
    bool ok = false;
    while (!ok) {
      for (int r = 0; r < dim; ++r) cols[c][r] = g.next_complex();
      for (int prev = 0; prev < c; ++prev) {
        cxd o = 0.0;
        for (int r = 0; r < dim; ++r) o += std::conj(cols[prev][r]) * cols[c][r];
        for (int r = 0; r < dim; ++r) cols[c][r] -= o * cols[prev][r];
      }
      double norm_sq = 0.0;
      for (int r = 0; r < dim; ++r) norm_sq += std::norm(cols[c][r]);
      if (norm_sq > 1e-12) {
        const double norm = std::sqrt(norm_sq);
        for (int r = 0; r < dim; ++r) cols[c][r] /= norm;
        ok = true;
      }
    }
  }
  Operator u(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) u.at(r, c) = cols[c][r];
  return u;
}

struct RandomObservable {
  Operator matrix;
  std::vector<Operator> projectors;  // rank-1, eigenvalue-descending

  explicit RandomObservable(int dim) : matrix(dim) {}
};

RandomObservable random_observable(GaussianSource& g, int dim) {
  // Nondegenerate spectrum in [-1, 1]: merge-free projectors need a gap.
  std::vector<double> spectrum(dim);
  while (true) {
    for (double& v : spectrum) v = 2.0 * g.next_uniform() - 1.0;
    std::sort(spectrum.begin(), spectrum.end(), std::greater<double>());
    bool ok = true;
    for (int i = 0; i + 1 < dim; ++i)
      if (spectrum[i] - spectrum[i + 1] < 1e-6) ok = false;
    if (ok) break;
  }
  const Operator basis = random_unitary(g, dim);

  RandomObservable obs(dim);
  for (int k = 0; k < dim; ++k) {
    Operator proj(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        proj.at(r, c) = basis.at(r, k) * std::conj(basis.at(c, k));
    obs.matrix += spectrum[k] * proj;
    obs.projectors.push_back(proj);
  }
  return obs;
}

struct VerifyInstance {
  tradeoff::ScenarioDistributions dists;
  tradeoff::TradeoffReport report;
};

VerifyInstance verify_trial(GaussianSource& g, int dim,
                            tradeoff::OzawaReport* ozawa) {
  const RandomObservable a = random_observable(g, dim);
  const RandomObservable b = random_observable(g, dim);
  const RandomObservable meter_obs = random_observable(g, dim);
  const auto system = qcore::QuantumState::ket(random_ket(g, dim));
  const auto meter = qcore::QuantumState::ket(random_ket(g, dim));
  const Operator coupling = random_unitary(g, dim * dim);

  VerifyInstance inst;
  inst.dists.p_a = qcore::born_probabilities(system, a.projectors);
  inst.dists.p_b = qcore::born_probabilities(system, b.projectors);

  const auto joint = qcore::evolve(qcore::tensor(system, meter), coupling);
  const Operator eye = Operator::identity(dim);
  std::vector<Operator> meter_readout, system_after;
  for (int k = 0; k < dim; ++k) {
    meter_readout.push_back(qcore::tensor(eye, meter_obs.projectors[k]));
    system_after.push_back(qcore::tensor(b.projectors[k], eye));
  }
  inst.dists.p_c = qcore::born_probabilities(joint, meter_readout);
  inst.dists.p_d = qcore::born_probabilities(joint, system_after);

  inst.report = tradeoff::tradeoff_report(inst.dists);
  if (ozawa)
    *ozawa = tradeoff::ozawa_quantities(a.matrix, b.matrix, meter_obs.matrix,
                                        coupling, system, meter);
  return inst;
}

std::string describe(const qcore::Distribution& d) {
  std::string s = "[";
  for (int i = 0; i < d.size(); ++i)
    s += (i ? ", " : "") + format_double(d[i]);
  return s + "]";
}

void print_violation(const VerifyConfig& cfg, std::uint64_t trial,
                     const VerifyInstance& inst, const std::string& what) {
  std::cerr << "verify violation (" << what << ") at trial " << trial
            << ": dim=" << cfg.dim << " seed=" << cfg.seed
            << " trial_seed=" << shots::derive_seed(cfg.seed, trial) << "\n"
            << "  p_a = " << describe(inst.dists.p_a) << "\n"
            << "  p_b = " << describe(inst.dists.p_b) << "\n"
            << "  p_c = " << describe(inst.dists.p_c) << "\n"
            << "  p_d = " << describe(inst.dists.p_d) << "\n"
            << "  epsilon=" << format_double(inst.report.epsilon)
            << " eta=" << format_double(inst.report.eta)
            << " xi_g_max=" << format_double(inst.report.xi_g_max)
            << " Xi=" << format_double(inst.report.Xi) << "\n";
}

}  // namespace

double GridAxis::value_at(int i) const {
  if (steps == 1) return start;
  return start + (stop - start) * static_cast<double>(i) /
                     static_cast<double>(steps - 1);
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file: " + path);

  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(where + ": expected key=value, got '" +
                                  line + "'");
    assign_config_entry(cfg, trim(line.substr(0, eq)),
                        trim(line.substr(eq + 1)), where);
  }
  return cfg;
}

SweepConfig preset_config(const std::string& name) {
  using Entries = std::vector<std::pair<std::string, std::string>>;
  static const std::vector<std::pair<std::string, Entries>> registry = {
      {"fig1",
       {{"scenario", "qubit"},
        {"b_axis", "0.57735026918962576,0.57735026918962576,"
                   "0.57735026918962576"},
        {"grid.alpha_deg", "0:90:91"},
        {"grid.theta_deg", "0:45:46"}}},
      {"fig2",
       {{"scenario", "qutrit"},
        {"alpha_deg", "45"},
        {"phi_s_deg", "45"},
        {"grid.theta_deg", "0:90:46"},
        {"grid.phi_m_deg", "0:90:46"}}},
      {"fig3",
       {{"scenario", "circuit"},
        {"gamma", "0.766"},
        {"grid.alpha_deg", "0:90:91"},
        {"grid.theta_deg", "0:27:4"}}},
      {"fig3-shots",
       {{"scenario", "shots"},
        {"gamma", "0.766"},
        {"mean_total", "1e6"},
        {"bootstrap", "200"},
        {"seed", "20260814"},
        {"grid.alpha_deg", "0:90:46"},
        {"grid.theta_deg", "0:27:4"}}},
      {"fig4",
       {{"scenario", "qubit"},
        {"grid.alpha_deg", "0:90:91"},
        {"grid.theta_deg", "0:45:46"}}},
      {"figS1",
       {{"scenario", "qubit"},
        {"grid.alpha_deg", "0:90:91"},
        {"grid.theta_deg", "0:45:46"}}},
      {"figS2",
       {{"scenario", "qutrit"},
        {"alpha_deg", "60"},
        {"phi_s_deg", "90"},
        {"grid.theta_deg", "0:90:46"},
        {"grid.phi_m_deg", "0:90:46"}}},
      {"figS2b",
       {{"scenario", "qutrit"},
        {"alpha_deg", "60"},
        {"phi_s_deg", "90"},
        {"chi12_deg", "30"},
        {"chi13_deg", "60"},
        {"grid.theta_deg", "0:90:46"},
        {"grid.phi_m_deg", "0:90:46"}}},
      {"figS5",
       {{"scenario", "sagnac"},
        {"gamma", "0.766"},
        {"e1", "50"},
        {"e2", "50"},
        {"theta_deg", "0"},
        {"grid.alpha_deg", "0:90:91"}}},
      {"figS6",
       {{"scenario", "sagnac"},
        {"gamma", "0.766"},
        {"e1", "50"},
        {"e2", "50"},
        {"theta_deg", "0"},
        {"grid.alpha_deg", "0:90:91"}}},
      {"figS7",
       {{"scenario", "shots"},
        {"gamma", "0.766"},
        {"e1", "50"},
        {"e2", "50"},
        {"phi_deg", "90"},
        {"mean_total", "1e6"},
        {"bootstrap", "200"},
        {"seed", "20260814"},
        {"grid.alpha_deg", "0:90:46"},
        {"grid.theta_deg", "0:27:4"}}},
  };
  for (const auto& [preset_name, entries] : registry)
    if (preset_name == name) {
      SweepConfig cfg;
      for (const auto& [key, value] : entries)
        assign_config_entry(cfg, key, value, "preset " + name);
      return cfg;
    }
  std::string names;
  for (const std::string& n : preset_names()) names += " " + n;
  throw std::invalid_argument("unknown preset '" + name + "'; available:" +
                              names);
}

std::vector<std::string> preset_names() {
  return {"fig1",   "fig2",   "fig3",  "fig3-shots", "fig4",  "figS1",
          "figS2",  "figS2b", "figS5", "figS6",      "figS7"};
}

int run_sweep(const SweepConfig& cfg) {
  try {
    return run_sweep_impl(cfg);
  } catch (const models::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_verify(const VerifyConfig& cfg) {
  if (cfg.dim < 2 || cfg.dim > 5)
    throw std::invalid_argument("verify dim must lie in [2, 5]");
  if (cfg.trials < 1)
    throw std::invalid_argument("verify needs at least one trial");

  double min_xi = std::numeric_limits<double>::infinity();
  double sum_xi = 0.0;
  std::uint64_t min_trial = 0;
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    GaussianSource g(shots::derive_seed(cfg.seed, trial));
    tradeoff::OzawaReport ozawa;
    const VerifyInstance inst =
        verify_trial(g, cfg.dim, cfg.dim == 2 ? &ozawa : nullptr);

    sum_xi += inst.report.Xi;
    if (inst.report.Xi < min_xi) {
      min_xi = inst.report.Xi;
      min_trial = trial;
    }
    if (inst.report.Xi < -1e-10) {
      print_violation(cfg, trial, inst, "epsilon + eta < xi_g_max");
      return 3;
    }
    if (cfg.dim == 2) {
      if (ozawa.lhs < ozawa.rhs_dab - 1e-10) {
        print_violation(cfg, trial, inst, "ozawa lhs < rhs_dab");
        return 3;
      }
      if (ozawa.rhs_dab < ozawa.rhs_commutator - 1e-10) {
        print_violation(cfg, trial, inst, "rhs_dab < commutator bound");
        return 3;
      }
    }
  }
  if (!cfg.quiet)
    std::cout << "verify: dim=" << cfg.dim << " trials=" << cfg.trials
              << " min_Xi=" << format_double(min_xi) << " (trial " << min_trial
              << ") mean_Xi=" << format_double(sum_xi /
                                               static_cast<double>(cfg.trials))
              << (cfg.dim == 2 ? " ozawa=checked" : "") << " OK\n";
  return 0;
}

namespace {

struct SweepCliOptions {
  std::string config;
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::vector<std::string> sets;

  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;

  void add_to(CLI::App* cmd, bool with_config) {
    if (with_config)
      cmd->add_option("--config", config, "key=value configuration file");
    out_opt = cmd->add_option("--out", out, "output path (default stdout)");
    format_opt = cmd->add_option("--format", format, "csv or jsonl")
                     ->check(CLI::IsMember({"csv", "jsonl"}));
    seed_opt = cmd->add_option("--seed", seed, "master seed");
    jobs_opt = cmd->add_option("--jobs", jobs, "worker threads (0 = cores)");
    cmd->add_option("--set", sets,
                    "config entry key=value (repeatable; overrides file)");
  }

  void apply(SweepConfig& cfg) const {
    for (const std::string& entry : sets) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + entry +
                                    "'");
      assign_config_entry(cfg, trim(entry.substr(0, eq)),
                          trim(entry.substr(eq + 1)), "--set '" + entry + "'");
    }
    if (out_opt->count()) cfg.output = out;
    if (format_opt->count()) cfg.format = format;
    if (seed_opt->count()) cfg.seed = seed;
    if (jobs_opt->count()) cfg.jobs = jobs;
  }
};

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"statistical-distance trade-off toolkit for sequential "
               "quantum measurements"};
  app.name("seqmeas");
  app.require_subcommand(1);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate a model scenario over a grid");
  SweepCliOptions sweep_opts;
  sweep_opts.add_to(sweep_cmd, true);

  CLI::App* shots_cmd = app.add_subcommand(
      "shots", "finite-statistics sweep (scenario fixed to shots)");
  SweepCliOptions shots_opts;
  shots_opts.add_to(shots_cmd, true);

  CLI::App* preset_cmd = app.add_subcommand(
      "preset", "run a bundled configuration (no name: list them)");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "preset name");
  SweepCliOptions preset_opts;
  preset_opts.add_to(preset_cmd, false);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "randomized stress test of the trade-off inequality");
  VerifyConfig verify_cfg;
  verify_cmd->add_option("--dim", verify_cfg.dim, "outcome count (2..5)")
      ->check(CLI::Range(2, 5));
  verify_cmd->add_option("--trials", verify_cfg.trials, "instance count");
  verify_cmd->add_option("--seed", verify_cfg.seed, "master seed");
  verify_cmd->add_flag("--quiet", verify_cfg.quiet, "suppress the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(verify_cmd)) return run_verify(verify_cfg);

    if (app.got_subcommand(preset_cmd)) {
      if (preset_name.empty()) {
        for (const std::string& n : preset_names()) std::cout << n << "\n";
        return 0;
      }
      SweepConfig cfg = preset_config(preset_name);
      preset_opts.apply(cfg);
      return run_sweep(cfg);
    }

    const bool is_shots = app.got_subcommand(shots_cmd);
    const SweepCliOptions& opts = is_shots ? shots_opts : sweep_opts;
    SweepConfig cfg;
    if (!opts.config.empty()) cfg = load_sweep_config(opts.config);
    if (is_shots && cfg.scenario.empty()) cfg.scenario = "shots";
    opts.apply(cfg);
    if (cfg.scenario.empty())
      throw std::invalid_argument(
          "no scenario set (use a config file or --set scenario=...)");
    if (is_shots && cfg.scenario != "shots")
      throw std::invalid_argument(
          "the shots subcommand only runs the shots scenario");
    return run_sweep(cfg);
  } catch (const models::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace seqmeas::cli
