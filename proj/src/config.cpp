// Copyright 2026 The kerrbistab Authors
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

#include "kerr/config.hpp"

#include "kerr/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace kerr {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorKind::kConfig, "config key '" + key + "' = '" + value + "': " + why);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_num(const std::string& key, const std::string& v) {
  T x{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad(key, v, "not a number");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(x)) bad(key, v, "must be finite");
  return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string cell;
  std::istringstream in(v);
  while (std::getline(in, cell, ',')) out.push_back(parse_num<double>(key, trim(cell)));
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_number(xs[i]);
  return s;
}

struct Field {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

template <typename T>
Field number(std::string key, T RunConfig::*member) {
  return {key,
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return format_number(c.*member);
            else return std::to_string(c.*member);
          },
          [member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = parse_num<T>(k, v); }};
}

Field param(std::string key, double Params::*member) {
  return {key, [member](const RunConfig& c) { return format_number(c.params.*member); },
          [member](RunConfig& c, const std::string& k, const std::string& v) {
            c.params.*member = parse_num<double>(k, v);
          }};
}

Field bound(std::string key, double GridBounds::*member) {
  return {key, [member](const RunConfig& c) { return format_number(c.basin_bounds.*member); },
          [member](RunConfig& c, const std::string& k, const std::string& v) {
            c.basin_bounds.*member = parse_num<double>(k, v);
          }};
}

template <typename T>
Field optional_number(std::string key, std::optional<T> RunConfig::*member) {
  return {key,
          [member](const RunConfig& c) -> std::string {
            if (!(c.*member)) return "auto";
            if constexpr (std::is_floating_point_v<T>) return format_number(*(c.*member));
            else return std::to_string(*(c.*member));
          },
          [member](RunConfig& c, const std::string& k, const std::string& v) {
            if (v == "auto") c.*member = std::nullopt;
            else c.*member = parse_num<T>(k, v);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"experiment", [](const RunConfig& c) { return c.experiment; },
       [](RunConfig& c, const std::string&, const std::string& v) { c.experiment = v; }},
      param("omega", &Params::omega),
      param("g", &Params::g),
      param("gamma", &Params::gamma),
      param("epsilon", &Params::epsilon),
      param("nu", &Params::nu),
      number("nu_min", &RunConfig::nu_min),
      number("nu_max", &RunConfig::nu_max),
      number("nu_step", &RunConfig::nu_step),
      bound("basin_re_min", &GridBounds::re_min),
      bound("basin_re_max", &GridBounds::re_max),
      bound("basin_im_min", &GridBounds::im_min),
      bound("basin_im_max", &GridBounds::im_max),
      number("grid_resolution", &RunConfig::grid_resolution),
      number("horizon_relax", &RunConfig::horizon_relax),
      number("steps_per_period", &RunConfig::steps_per_period),
      number("n_particles", &RunConfig::n_particles),
      optional_number("a0", &RunConfig::a0),
      number("t_final", &RunConfig::t_final),
      number("sample_every", &RunConfig::sample_every),
      {"snapshot_times", [](const RunConfig& c) { return join(c.snapshot_times); },
       [](RunConfig& c, const std::string& k, const std::string& v) { c.snapshot_times = parse_list(k, v); }},
      number("fock_dim", &RunConfig::fock_dim),
      number("quantum_steps_per_period", &RunConfig::quantum_steps_per_period),
      optional_number("n0", &RunConfig::n0),
      number("husimi_extent", &RunConfig::husimi_extent),
      number("husimi_resolution", &RunConfig::husimi_resolution),
      number("spectrum_dim", &RunConfig::spectrum_dim),
      number("k", &RunConfig::k),
      {"backend",
       [](const RunConfig& c) -> std::string {
         switch (c.backend) {
           case EigenBackend::kEigen: return "eigen";
           case EigenBackend::kLapacke: return "lapacke";
           default: return "auto";
         }
       },
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "auto") c.backend = EigenBackend::kAuto;
         else if (v == "eigen") c.backend = EigenBackend::kEigen;
         else if (v == "lapacke") c.backend = EigenBackend::kLapacke;
         else bad(k, v, "expected auto, eigen or lapacke");
       }},
      number("n_traj", &RunConfig::n_traj),
      number("nbar", &RunConfig::nbar),
      number("seed", &RunConfig::seed),
      number("langevin_steps_per_period", &RunConfig::langevin_steps_per_period),
      {"langevin_drift",
       [](const RunConfig& c) -> std::string { return c.langevin_drift == DriftScheme::kEuler ? "euler" : "rk4"; },
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "euler") c.langevin_drift = DriftScheme::kEuler;
         else if (v == "rk4") c.langevin_drift = DriftScheme::kRk4;
         else bad(k, v, "expected rk4 or euler");
       }},
      {"escape_start",
       [](const RunConfig& c) -> std::string {
         return c.escape_start == BasinLabel::kInner ? "inner" : "outer";
       },
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "inner") c.escape_start = BasinLabel::kInner;
         else if (v == "outer") c.escape_start = BasinLabel::kOuter;
         else bad(k, v, "expected inner or outer");
       }},
      number("escape_t_final", &RunConfig::escape_t_final),
      number("check_every", &RunConfig::check_every),
      {"output_dir", [](const RunConfig& c) { return c.output_dir; },
       [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
      number("threads", &RunConfig::threads),
  };
  return table;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.key);
    return out;
  }();
  return names;
}

std::vector<std::string> RunConfig::to_lines() const {
  std::vector<std::string> lines;
  for (const auto& f : fields()) lines.push_back(f.key + " = " + f.get(*this));
  return lines;
}

std::string RunConfig::to_text() const {
  std::string s;
  for (const auto& line : to_lines()) s += line + '\n';
  return s;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const auto& f : fields()) {
    if (f.key == key) {
      f.set(*this, key, value);
      return;
    }
  }
  throw Error(ErrorKind::kConfig, "unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& key, const std::string& why) {
    if (!ok) throw Error(ErrorKind::kConfig, "config key '" + key + "': " + why);
  };
  try {
    params.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, std::string("params: ") + e.what());
  }
  require(nu_min > 0 && nu_max > nu_min, "nu_min", "need 0 < nu_min < nu_max");
  require(nu_step > 0, "nu_step", "must be > 0");
  require(basin_bounds.re_max > basin_bounds.re_min, "basin_re_max", "must exceed basin_re_min");
  require(basin_bounds.im_max > basin_bounds.im_min, "basin_im_max", "must exceed basin_im_min");
  require(grid_resolution >= 1, "grid_resolution", "must be >= 1");
  require(horizon_relax >= 10.0, "horizon_relax", "must be >= 10 (units of T_gamma)");
  require(steps_per_period > 0, "steps_per_period", "must be > 0");
  require(n_particles >= 1, "n_particles", "must be >= 1");
  require(!a0 || *a0 >= 0, "a0", "must be >= 0");
  require(t_final > 0, "t_final", "must be > 0");
  require(sample_every > 0, "sample_every", "must be > 0");
  for (double t : snapshot_times) require(t >= 0, "snapshot_times", "times must be >= 0");
  require(fock_dim >= 2, "fock_dim", "must be >= 2");
  require(quantum_steps_per_period > 0, "quantum_steps_per_period", "must be > 0");
  require(!n0 || (*n0 >= 0 && *n0 < fock_dim), "n0", "must lie in [0, fock_dim)");
  require(husimi_extent > 0, "husimi_extent", "must be > 0");
  require(husimi_resolution >= 2, "husimi_resolution", "must be >= 2");
  require(spectrum_dim >= 2, "spectrum_dim", "must be >= 2");
  require(k >= 1, "k", "must be >= 1");
  require(n_traj >= 1, "n_traj", "must be >= 1");
  require(nbar >= 0, "nbar", "must be >= 0");
  require(langevin_steps_per_period > 0, "langevin_steps_per_period", "must be > 0");
  require(escape_t_final > 0, "escape_t_final", "must be > 0");
  require(check_every > 0, "check_every", "must be > 0");
  require(threads >= 0, "threads", "must be >= 0");
}

RunConfig default_config() {
  RunConfig c;
  const char* env = std::getenv(kOutputDirEnv);
  c.output_dir = env && *env ? env : "kerr_out";
  return c;
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::kConfig, "config line " + std::to_string(lineno) + ": expected key = value");
    base.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::vector<double> frequency_grid(double lo, double hi, double step) {
  if (!(step > 0) || !(hi >= lo)) throw Error(ErrorKind::kConfig, "bad frequency grid");
  const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

}  // namespace kerr
