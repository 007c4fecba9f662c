// Copyright 2026 The darwinlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "darwinlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "darwinlab/branch_model.hpp"
#include "darwinlab/parallel.hpp"

namespace darwinlab::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string &message) { throw CliError(kInvalidInput, message); }

// -- value parsing ------------------------------------------------------------

double parse_number(const std::string &text, const std::string &key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception &) {
    invalid(fmt::format("{}: '{}' is not a finite number", key, text));
  }
}

std::vector<std::string> split(const std::string &text, const std::string &separators) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (separators.find(c) != std::string::npos) {
      if (!current.empty()) {
        parts.push_back(current);
      }
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) {
    parts.push_back(current);
  }
  return parts;
}

/// "lo:hi:n" for n evenly spaced points, or a comma-separated list.
std::vector<double> parse_grid(const std::string &text, const std::string &key) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ":");
    if (parts.size() != 3) {
      invalid(fmt::format("{}: expected lo:hi:n, got '{}'", key, text));
    }
    const double n = parse_number(parts[2], key);
    if (n < 1 || n != std::floor(n)) {
      invalid(fmt::format("{}: point count must be a positive integer", key));
    }
    return linspace(parse_number(parts[0], key), parse_number(parts[1], key),
                    static_cast<std::size_t>(n));
  }
  std::vector<double> values;
  for (const auto &p : split(text, ", ")) {
    values.push_back(parse_number(p, key));
  }
  if (values.empty()) {
    invalid(fmt::format("{}: empty grid", key));
  }
  return values;
}

std::vector<double> read_actions_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw CliError(kIoError, fmt::format("cannot read actions file '{}'", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::vector<double> values;
  for (const auto &p : split(buffer.str(), " ,\t\r\n")) {
    values.push_back(parse_number(p, "actions-file"));
  }
  if (values.empty()) {
    invalid(fmt::format("actions file '{}' holds no values", path));
  }
  return values;
}

OutputFormat parse_format(const std::string &name) {
  if (name == "csv") {
    return OutputFormat::Csv;
  }
  if (name == "json") {
    return OutputFormat::Json;
  }
  invalid(fmt::format("format: unknown value '{}' (csv|json)", name));
}

template <class Fn> auto as_input(const std::string &key, Fn &&fn) {
  try {
    return fn();
  } catch (const InvalidArgument &e) {
    invalid(fmt::format("{}: {}", key, e.what()));
  }
}

// -- config file --------------------------------------------------------------

std::string json_text(const Json &v, const std::string &key) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number()) {
    return v.dump();
  }
  invalid(fmt::format("{}: expected a string or number", key));
}

double json_number(const Json &v, const std::string &key) {
  if (!v.is_number()) {
    invalid(fmt::format("{}: expected a number", key));
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    invalid(fmt::format("{}: expected a finite number", key));
  }
  return d;
}

std::uint64_t json_unsigned(const Json &v, const std::string &key) {
  if (!v.is_number_unsigned()) {
    invalid(fmt::format("{}: expected a non-negative integer", key));
  }
  return v.get<std::uint64_t>();
}

bool json_bool(const Json &v, const std::string &key) {
  if (!v.is_boolean()) {
    invalid(fmt::format("{}: expected true or false", key));
  }
  return v.get<bool>();
}

std::vector<double> json_grid(const Json &v, const std::string &key) {
  if (v.is_string()) {
    return parse_grid(v.get<std::string>(), key);
  }
  if (!v.is_array() || v.empty()) {
    invalid(fmt::format("{}: expected a non-empty array or a grid string", key));
  }
  std::vector<double> out;
  for (const auto &x : v) {
    out.push_back(json_number(x, key));
  }
  return out;
}

std::vector<std::string> json_strings(const Json &v, const std::string &key) {
  if (v.is_string()) {
    return split(v.get<std::string>(), ", ");
  }
  if (!v.is_array()) {
    invalid(fmt::format("{}: expected an array of strings", key));
  }
  std::vector<std::string> out;
  for (const auto &x : v) {
    if (!x.is_string()) {
      invalid(fmt::format("{}: expected an array of strings", key));
    }
    out.push_back(x.get<std::string>());
  }
  return out;
}

Json load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw CliError(kIoError, fmt::format("cannot read config file '{}'", path));
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    invalid(fmt::format("config: {} is not valid JSON ({})", path, e.what()));
  }
  if (!doc.is_object()) {
    invalid("config: top level must be an object");
  }
  return doc;
}

/// Applies one config-file entry.
void apply_file_value(RunConfig &c, const std::string &key, const Json &v) {
  if (key == "command") {
    // Echoed by outputs; the subcommand always comes from the command line.
  } else if (key == "env-size") {
    c.env_size = json_unsigned(v, key);
  } else if (key == "action") {
    c.action = json_number(v, key);
  } else if (key == "actions") {
    c.actions = json_grid(v, key);
  } else if (key == "p0") {
    c.p0 = json_number(v, key);
  } else if (key == "mu") {
    c.mu = json_number(v, key);
  } else if (key == "mu-grid") {
    c.mu_grid = json_grid(v, key);
  } else if (key == "t-grid") {
    c.t_grid = json_grid(v, key);
  } else if (key == "delta") {
    c.delta = json_number(v, key);
  } else if (key == "averaging") {
    c.averaging = as_input(key, [&] { return parse_averaging(json_text(v, key)); });
  } else if (key == "samples") {
    c.samples = json_unsigned(v, key);
  } else if (key == "seed") {
    c.seed = json_unsigned(v, key);
  } else if (key == "threads") {
    c.threads = json_unsigned(v, key);
  } else if (key == "out") {
    c.out = json_text(v, key);
  } else if (key == "format") {
    c.format = parse_format(json_text(v, key));
  } else if (key == "kind") {
    c.kind = json_text(v, key);
  } else if (key == "mode") {
    c.mode = as_input(key, [&] { return parse_redundancy_mode(json_text(v, key)); });
  } else if (key == "allow-single-copy") {
    c.allow_single_copy = json_bool(v, key);
  } else if (key == "oracle") {
    c.oracle = json_bool(v, key);
  } else if (key == "trials") {
    c.trials = json_unsigned(v, key);
  } else if (key == "checks") {
    c.checks = json_strings(v, key);
  } else {
    invalid(fmt::format("config: unknown key '{}'", key));
  }
}

void validate(const RunConfig &c) {
  if (!std::isfinite(c.action)) {
    invalid("action: must be finite");
  }
  if (!(c.p0 >= 0.0 && c.p0 <= 1.0)) {
    invalid(fmt::format("p0: {} outside [0, 1]", c.p0));
  }
  if (!std::isfinite(c.mu)) {
    invalid("mu: must be finite");
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    invalid(fmt::format("delta: {} outside (0, 1)", c.delta));
  }
  if (c.samples == 0) {
    invalid("samples: must be at least 1");
  }
  if (c.kind != "redundancy" && c.kind != "chi") {
    invalid(fmt::format("kind: unknown value '{}' (redundancy|chi)", c.kind));
  }
  if (!c.actions.empty() && c.actions.size() != c.env_size) {
    invalid(fmt::format("env-size: {} disagrees with {} listed actions", c.env_size,
                        c.actions.size()));
  }
  const auto checks = available_checks();
  for (const auto &name : c.checks) {
    if (name != "all" && std::find(checks.begin(), checks.end(), name) == checks.end()) {
      invalid(fmt::format("checks: unknown check '{}'", name));
    }
  }
}

// -- output tables ------------------------------------------------------------

using Cell = std::variant<std::monostate, double, std::size_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell &cell) {
  return std::visit(
      [](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return fmt::format("{:.17g}", v);
        } else if constexpr (std::is_same_v<T, std::size_t>) {
          return fmt::format("{}", v);
        } else {
          return v;
        }
      },
      cell);
}

Json json_cell(const Cell &cell) {
  return std::visit(
      [](const auto &v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

std::string render(const RunConfig &c, const Table &table, const Json &metadata) {
  if (c.format == OutputFormat::Json) {
    Json doc;
    doc["command"] = c.command;
    doc["config"] = config_to_json(c);
    doc["metadata"] = metadata;
    Json records = Json::array();
    for (const auto &row : table.rows) {
      Json r;
      for (std::size_t k = 0; k < table.columns.size(); ++k) {
        r[table.columns[k]] = json_cell(row[k]);
      }
      records.push_back(std::move(r));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
  }
  std::string out = fmt::format("# darwinlab {}\n# config {}\n", c.command, config_to_json(c).dump());
  for (const auto &[key, value] : metadata.items()) {
    out += fmt::format("# {} {}\n", key, value.dump());
  }
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    out += (k ? "," : "") + table.columns[k];
  }
  out += "\n";
  for (const auto &row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out += (k ? "," : "") + csv_cell(row[k]);
    }
    out += "\n";
  }
  return out;
}

void emit(const RunConfig &c, const std::string &text, std::ostream &data) {
  if (c.out.empty() || c.out == "-") {
    data << text;
    data.flush();
    return;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw CliError(kIoError, fmt::format("cannot open '{}' for writing", c.out));
  }
  file << text;
  file.close();
  if (!file) {
    throw CliError(kIoError, fmt::format("failed writing '{}'", c.out));
  }
}

// -- commands -----------------------------------------------------------------

BranchModel make_model(const RunConfig &c) {
  if (!c.actions.empty()) {
    return BranchModel::with_actions(c.actions, c.p0);
  }
  return BranchModel::uniform(c.env_size, c.action, c.p0);
}

AveragingOptions averaging_options(const RunConfig &c) {
  AveragingOptions o;
  o.strategy = c.averaging;
  o.samples = c.samples;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

std::vector<std::size_t> first_qubits(std::size_t m) {
  std::vector<std::size_t> s(m);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

void require_dense(const BranchModel &model) {
  if (model.env_size() > kDenseEnvCap) {
    throw CapExceeded(fmt::format("dense oracle requested for E = {} (cap {})",
                                  model.env_size(), kDenseEnvCap));
  }
}

int cmd_sweep(const RunConfig &c, std::ostream &data, std::ostream &log) {
  const BranchModel model = make_model(c);
  const Povm povm = make_rotated_povm(c.mu);
  const AveragingOptions opts = averaging_options(c);
  const InfoCurve curve = info_curve(model, povm, opts);

  Table t;
  t.columns = {"m", "f", "I", "chi", "discord"};
  Json meta;
  meta["exact_average"] = curve.exact;
  const std::size_t n = model.env_size();
  std::vector<std::optional<InfoPoint>> dense(n + 1);
  double max_dev = 0.0;
  if (c.oracle) {
    require_dense(model);
    t.columns.insert(t.columns.end(), {"I_dense", "chi_dense", "discord_dense"});
    const FragmentEvaluator eval = [&](std::span<const std::size_t> s) {
      return dense_info_point(model, s, povm);
    };
    AveragingOptions inner = opts;
    inner.threads = 1;
    const std::size_t limit = std::min(n, kDenseFragmentCap);
    parallel_for(limit + 1, c.threads, [&](std::size_t m) {
      dense[m] = average_over_fragments(model, m, eval, inner).point;
    });
    for (std::size_t m = 0; m <= limit; ++m) {
      const InfoPoint &a = curve.points[m];
      const InfoPoint &b = *dense[m];
      max_dev = std::max({max_dev, std::abs(a.mutual_information - b.mutual_information),
                          std::abs(a.holevo - b.holevo), std::abs(a.discord - b.discord)});
    }
    meta["oracle_max_deviation"] = max_dev;
    meta["oracle_fragment_cap"] = kDenseFragmentCap;
  }
  for (std::size_t m = 0; m <= n; ++m) {
    const InfoPoint &p = curve.points[m];
    std::vector<Cell> row{m, p.fraction, p.mutual_information, p.holevo, p.discord};
    if (c.oracle) {
      if (dense[m]) {
        row.insert(row.end(), {dense[m]->mutual_information, dense[m]->holevo, dense[m]->discord});
      } else {
        row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
      }
    }
    t.rows.push_back(std::move(row));
  }
  emit(c, render(c, t, meta), data);
  log << fmt::format("sweep: E = {}, mu = {}, chi(E/2) = {:.12g}, I(E) = {:.12g}\n", n, c.mu,
                     curve.points[n / 2].holevo, curve.points[n].mutual_information);
  if (c.oracle) {
    log << fmt::format("sweep: max |fast - dense| = {:.3e}\n", max_dev);
  }
  return kOk;
}

int cmd_plateau(const RunConfig &c, std::ostream &data, std::ostream &log) {
  const BranchModel model = make_model(c);
  const auto mus = c.mu_grid.empty() ? default_mu_grid() : c.mu_grid;
  const auto probs = model.pointer_probabilities();
  const std::size_t m = model.env_size() / 2;
  Table t;
  t.columns = {"mu", "chi_plateau_analytic", "chi_plateau_numeric"};
  t.rows.resize(mus.size());
  const AveragingOptions opts = [&] {
    AveragingOptions o = averaging_options(c);
    o.threads = 1;
    return o;
  }();
  parallel_for(mus.size(), c.threads, [&](std::size_t i) {
    const Povm povm = make_rotated_povm(mus[i]);
    const double analytic = plateau_chi(probs, povm, pointer_basis());
    const FragmentEvaluator eval = [&](std::span<const std::size_t> s) {
      return fast_info_point(model, s, povm);
    };
    const double numeric = average_over_fragments(model, m, eval, opts).point.holevo;
    t.rows[i] = {mus[i], analytic, numeric};
  });
  Json meta;
  meta["fragment_size"] = m;
  emit(c, render(c, t, meta), data);
  log << fmt::format("plateau: {} angles at m = {}\n", mus.size(), m);
  return kOk;
}

Cell fragment_cell(const RedundancyResult &r) {
  return r.fragment_size ? Cell{*r.fragment_size} : Cell{std::string("unreachable")};
}

Cell redundancy_cell(const RedundancyResult &r) {
  return r.redundancy ? Cell{*r.redundancy} : Cell{std::string("none")};
}

RedundancyOptions redundancy_options(const RunConfig &c) {
  RedundancyOptions o;
  o.mode = c.mode;
  o.averaging = averaging_options(c);
  o.allow_single_copy = c.allow_single_copy;
  return o;
}

int cmd_surface(const RunConfig &c, std::ostream &data, std::ostream &log) {
  if (!c.actions.empty()) {
    invalid("surface: per-qubit actions are not supported; use --action or --t-grid");
  }
  const auto mus = c.mu_grid.empty() ? default_mu_grid() : c.mu_grid;
  Table t;
  Json meta;
  if (c.kind == "chi") {
    const ChiSurface s = chi_surface(c.p0, c.action, c.env_size, mus, c.delta, c.threads);
    t.columns = {"mu", "m", "f", "chi", "chi_plateau"};
    for (std::size_t i = 0; i < mus.size(); ++i) {
      for (std::size_t m = 0; m <= c.env_size; ++m) {
        const double f = c.env_size ? static_cast<double>(m) / static_cast<double>(c.env_size) : 0.0;
        t.rows.push_back({mus[i], m, f, s.at(i, m), s.plateau[i]});
      }
    }
    meta["mu_critical"] = s.critical_mu;
    log << fmt::format("surface chi: {} x {} cells, mu* = {:.12g}\n", mus.size(), c.env_size + 1,
                       s.critical_mu);
  } else {
    const auto ts = c.t_grid.empty() ? default_t_grid() : c.t_grid;
    const RedundancySurface s =
        redundancy_surface(c.p0, c.env_size, mus, ts, c.delta, redundancy_options(c));
    t.columns = {"mu", "T", "F_delta", "R_delta", "chi_plateau"};
    std::size_t reachable = 0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      for (std::size_t i = 0; i < mus.size(); ++i) {
        const RedundancyResult &r = s.at(i, j);
        reachable += r.fragment_size ? 1 : 0;
        t.rows.push_back({mus[i], ts[j], fragment_cell(r), redundancy_cell(r), s.plateau[i]});
      }
    }
    meta["mu_critical"] = s.critical_mu;
    meta["mode"] = std::string(to_string(c.mode));
    log << fmt::format("surface redundancy: {} x {} cells, {} reachable, mu* = {:.12g}\n",
                       mus.size(), ts.size(), reachable, s.critical_mu);
  }
  emit(c, render(c, t, meta), data);
  return kOk;
}

int cmd_redundancy(const RunConfig &c, std::ostream &data, std::ostream &log) {
  const auto mus = c.mu_grid.empty() ? std::vector<double>{c.mu} : c.mu_grid;
  const bool per_qubit = !c.actions.empty();
  const auto ts = c.t_grid.empty() || per_qubit ? std::vector<double>{c.action} : c.t_grid;
  if (per_qubit && !c.t_grid.empty()) {
    invalid("t-grid: cannot be combined with per-qubit actions");
  }
  const RedundancyOptions opts = [&] {
    RedundancyOptions o = redundancy_options(c);
    o.averaging.threads = 1;
    return o;
  }();
  Table t;
  t.columns = {"mu", "T", "F_delta", "R_delta"};
  std::vector<RedundancyResult> results(mus.size() * ts.size());
  parallel_for(results.size(), c.threads, [&](std::size_t k) {
    const std::size_t i = k % mus.size();
    const std::size_t j = k / mus.size();
    const BranchModel model =
        per_qubit ? make_model(c) : BranchModel::uniform(c.env_size, ts[j], c.p0);
    results[k] = redundancy(model, make_rotated_povm(mus[i]), c.delta, opts);
  });
  for (std::size_t k = 0; k < results.size(); ++k) {
    const std::size_t i = k % mus.size();
    const std::size_t j = k / mus.size();
    t.rows.push_back({mus[i], per_qubit ? Cell{} : Cell{ts[j]}, fragment_cell(results[k]),
                      redundancy_cell(results[k])});
  }
  Json meta;
  meta["mode"] = std::string(to_string(c.mode));
  meta["mu_critical"] = critical_mu(c.delta, c.p0);
  meta["scan_limit"] = results.front().scan_limit;
  emit(c, render(c, t, meta), data);
  if (results.size() == 1) {
    const auto &r = results.front();
    log << fmt::format("redundancy: F_delta = {}, R_delta = {}\n",
                       r.fragment_size ? std::to_string(*r.fragment_size) : "unreachable",
                       r.redundancy ? fmt::format("{:.12g}", *r.redundancy) : "none");
  } else {
    log << fmt::format("redundancy: {} cells\n", results.size());
  }
  return kOk;
}

int cmd_verify(const RunConfig &c, std::ostream &data, std::ostream &log) {
  std::vector<std::string> selection = c.checks;
  if (selection.empty() || std::find(selection.begin(), selection.end(), "all") != selection.end()) {
    selection = available_checks();
  }
  HarnessOptions opts;
  opts.trials = c.trials;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const auto reports = run_checks(selection, opts);
  const bool pass = all_pass(reports);
  Json doc;
  doc["command"] = c.command;
  doc["config"] = config_to_json(c);
  doc["pass"] = pass;
  doc["checks"] = report_to_json(reports);
  emit(c, doc.dump(2) + "\n", data);
  for (const auto &r : reports) {
    log << fmt::format("{} {:<26} n={:<7} max_violation={:+.3e} tol={:.0e}\n",
                       r.pass ? "PASS" : "FAIL", r.check, r.count, r.max_violation, r.tolerance);
  }
  return pass ? kOk : kCheckFailed;
}

int cmd_oracle_compare(const RunConfig &c, std::ostream &data, std::ostream &log) {
  const BranchModel model = make_model(c);
  require_dense(model);
  const auto mus = c.mu_grid.empty() ? std::vector<double>{c.mu} : c.mu_grid;
  const std::size_t limit = std::min(model.env_size(), kDenseFragmentCap);
  const std::size_t per_mu = limit + 1;
  std::vector<std::array<double, 3>> dev(mus.size() * per_mu);
  parallel_for(dev.size(), c.threads, [&](std::size_t k) {
    const Povm povm = make_rotated_povm(mus[k / per_mu]);
    const auto subset = first_qubits(k % per_mu);
    const InfoPoint a = fast_info_point(model, subset, povm);
    const InfoPoint b = dense_info_point(model, subset, povm);
    dev[k] = {std::abs(a.mutual_information - b.mutual_information), std::abs(a.holevo - b.holevo),
              std::abs(a.discord - b.discord)};
  });
  Table t;
  t.columns = {"mu", "m", "dev_I", "dev_chi", "dev_discord"};
  double worst = 0.0;
  for (std::size_t k = 0; k < dev.size(); ++k) {
    t.rows.push_back({mus[k / per_mu], k % per_mu, dev[k][0], dev[k][1], dev[k][2]});
    worst = std::max({worst, dev[k][0], dev[k][1], dev[k][2]});
  }
  Json meta;
  meta["max_deviation"] = worst;
  emit(c, render(c, t, meta), data);
  log << fmt::format("oracle-compare: max deviation {:.3e} over {} points\n", worst, dev.size());
  return kOk;
}

} // namespace

// -- public API ---------------------------------------------------------------

RunConfig parse_config(int argc, const char *const *argv) {
  CLI::App app{"darwinlab: Holevo/discord split of system-environment correlations"};
  app.fallthrough();
  app.require_subcommand(1);

  const std::map<std::string, std::string> commands{
      {"sweep", "I, chi and discord versus fragment size"},
      {"plateau", "analytic and numeric plateau chi versus mu"},
      {"surface", "chi(mu, m) or redundancy(mu, T) grids with white-line columns"},
      {"redundancy", "fragment size and redundancy meeting the deficit criterion"},
      {"verify", "run the property checks and write a JSON report"},
      {"oracle-compare", "maximum deviation between fast path and dense oracle"},
  };
  for (const auto &[name, help] : commands) {
    app.add_subcommand(name, help);
  }

  std::size_t env_size = 0;
  double action = 0.0, p0 = 0.0, mu = 0.0, delta = 0.0;
  std::string actions_file, mu_grid, t_grid, averaging, format, out, kind, mode, checks, config;
  std::size_t samples = 0, threads = 0, trials = 0;
  std::uint64_t seed = 0;
  bool allow_single = false, oracle = false;

  std::map<std::string, CLI::Option *> opt;
  opt["env-size"] = app.add_option("--env-size", env_size, "environment qubits (default 100)");
  opt["action"] = app.add_option("--action", action, "uniform action T in radians (default pi/2)");
  opt["actions"] = app.add_option("--actions-file", actions_file, "file listing per-qubit actions");
  opt["action"]->excludes(opt["actions"]);
  opt["p0"] = app.add_option("--p0", p0, "pointer probability of |0> (default 0.5)");
  opt["mu"] = app.add_option("--mu", mu, "measurement basis angle in radians (default 0)");
  opt["mu-grid"] = app.add_option("--mu-grid", mu_grid, "lo:hi:n or comma list of angles");
  opt["t-grid"] = app.add_option("--t-grid", t_grid, "lo:hi:n or comma list of actions");
  opt["delta"] = app.add_option("--delta", delta, "information deficit (default 0.1)");
  opt["averaging"] =
      app.add_option("--averaging", averaging, "auto|exhaustive|monte-carlo|single");
  opt["samples"] = app.add_option("--samples", samples, "Monte Carlo subsets (default 1000)");
  opt["seed"] = app.add_option("--seed", seed, "master seed (falls back to DARWINLAB_SEED)");
  opt["threads"] = app.add_option("--threads", threads, "worker threads (0 = all cores)");
  opt["out"] = app.add_option("--out", out, "output file (default stdout)");
  opt["format"] = app.add_option("--format", format, "csv|json (default from --out extension)");
  opt["kind"] = app.add_option("--kind", kind, "surface kind: redundancy|chi");
  opt["mode"] = app.add_option("--mode", mode, "redundancy mode: holevo|mutual-information");
  opt["allow-single-copy"] =
      app.add_flag("--allow-single-copy", allow_single, "let redundancy scan m up to E");
  opt["oracle"] = app.add_flag("--oracle", oracle, "add dense-oracle columns to sweep");
  opt["trials"] = app.add_option("--trials", trials, "instances per randomized check");
  opt["checks"] = app.add_option("--checks", checks, "comma list of checks or 'all'");
  opt["config"] = app.add_option("--config", config, "JSON config file; flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    throw CliError(kOk, app.help());
  } catch (const CLI::CallForAllHelp &) {
    throw CliError(kOk, app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError &e) {
    std::string message = e.what();
    if (app.get_subcommands().empty()) {
      message += "\n" + app.help();
    }
    invalid(message);
  }

  RunConfig c;
  c.command = app.get_subcommands().front()->get_name();
  const auto given = [&](const std::string &key) { return opt.at(key)->count() > 0; };

  bool seed_from_file = false;
  bool format_given = false;
  if (given("config")) {
    const Json doc = load_config_file(config);
    if (doc.contains("action") && doc.contains("actions")) {
      invalid("config: 'action' and 'actions' are mutually exclusive");
    }
    const bool model_flag = given("action") || given("actions");
    for (const auto &[key, value] : doc.items()) {
      const bool actions_key = key == "action" || key == "actions";
      const bool overridden = actions_key ? model_flag : opt.contains(key) && given(key);
      if (overridden) {
        continue;
      }
      apply_file_value(c, key, value);
      seed_from_file = seed_from_file || key == "seed";
      format_given = format_given || key == "format";
    }
    if (!doc.contains("env-size") && !given("env-size") && !c.actions.empty()) {
      c.env_size = c.actions.size();
    }
  }

  if (given("env-size")) c.env_size = env_size;
  if (given("action")) {
    c.action = action;
    c.actions.clear();
  }
  if (given("actions")) {
    c.actions = read_actions_file(actions_file);
    if (!given("env-size")) {
      c.env_size = c.actions.size();
    }
  }
  if (given("p0")) c.p0 = p0;
  if (given("mu")) c.mu = mu;
  if (given("mu-grid")) c.mu_grid = parse_grid(mu_grid, "mu-grid");
  if (given("t-grid")) c.t_grid = parse_grid(t_grid, "t-grid");
  if (given("delta")) c.delta = delta;
  if (given("averaging")) c.averaging = as_input("averaging", [&] { return parse_averaging(averaging); });
  if (given("samples")) c.samples = samples;
  if (given("seed")) {
    c.seed = seed;
  } else if (!seed_from_file) {
    if (const char *env = std::getenv("DARWINLAB_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        c.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) {
          throw std::invalid_argument(env);
        }
      } catch (const std::exception &) {
        invalid(fmt::format("DARWINLAB_SEED: '{}' is not a non-negative integer", env));
      }
    }
  }
  if (given("threads")) c.threads = threads;
  if (given("out")) c.out = out;
  if (given("format")) {
    c.format = parse_format(format);
    format_given = true;
  }
  if (!format_given) {
    const bool json_ext = c.out.size() >= 5 && c.out.compare(c.out.size() - 5, 5, ".json") == 0;
    c.format = json_ext || c.command == "verify" ? OutputFormat::Json : OutputFormat::Csv;
  }
  if (given("kind")) c.kind = kind;
  if (given("mode")) c.mode = as_input("mode", [&] { return parse_redundancy_mode(mode); });
  if (given("allow-single-copy")) c.allow_single_copy = allow_single;
  if (given("oracle")) c.oracle = oracle;
  if (given("trials")) c.trials = trials;
  if (given("checks")) c.checks = split(checks, ", ");

  validate(c);
  return c;
}

nlohmann::ordered_json config_to_json(const RunConfig &c) {
  Json j;
  j["command"] = c.command;
  j["env-size"] = c.env_size;
  if (c.actions.empty()) {
    j["action"] = c.action;
  } else {
    j["actions"] = c.actions;
  }
  j["p0"] = c.p0;
  j["mu"] = c.mu;
  if (!c.mu_grid.empty()) {
    j["mu-grid"] = c.mu_grid;
  }
  if (!c.t_grid.empty()) {
    j["t-grid"] = c.t_grid;
  }
  j["delta"] = c.delta;
  j["averaging"] = std::string(to_string(c.averaging));
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["format"] = c.format == OutputFormat::Json ? "json" : "csv";
  j["kind"] = c.kind;
  j["mode"] = std::string(to_string(c.mode));
  j["allow-single-copy"] = c.allow_single_copy;
  j["oracle"] = c.oracle;
  j["trials"] = c.trials;
  if (!c.checks.empty()) {
    j["checks"] = c.checks;
  }
  return j;
}

nlohmann::ordered_json report_to_json(const std::vector<CheckReport> &reports) {
  Json arr = Json::array();
  for (const auto &r : reports) {
    Json j;
    j["check"] = r.check;
    j["count"] = r.count;
    j["tolerance"] = r.tolerance;
    j["max_violation"] = r.max_violation;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    if (r.fitted_constant) {
      j["fitted_constant"] = *r.fitted_constant;
    }
    if (r.excluded) {
      j["excluded"] = *r.excluded;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

int execute(const RunConfig &c, std::ostream &data, std::ostream &log) {
  if (c.command == "sweep") return cmd_sweep(c, data, log);
  if (c.command == "plateau") return cmd_plateau(c, data, log);
  if (c.command == "surface") return cmd_surface(c, data, log);
  if (c.command == "redundancy") return cmd_redundancy(c, data, log);
  if (c.command == "verify") return cmd_verify(c, data, log);
  if (c.command == "oracle-compare") return cmd_oracle_compare(c, data, log);
  invalid(fmt::format("unknown command '{}'", c.command));
}

int run(int argc, const char *const *argv, std::ostream &data, std::ostream &log) {
  try {
    const RunConfig config = parse_config(argc, argv);
    // With data on stdout the summary moves to the log stream.
    const bool data_to_stdout = config.out.empty() || config.out == "-";
    return execute(config, data, data_to_stdout ? log : data);
  } catch (const CliError &e) {
    (e.code() == kOk ? data : log) << e.what() << "\n";
    return e.code();
  } catch (const CapExceeded &e) {
    log << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const InvalidArgument &e) {
    log << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const NumericalDiagnostic &e) {
    log << "numerical diagnostic: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception &e) {
    log << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

} // namespace darwinlab::cli
