// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sodlr/errors.hpp"

namespace sodlr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  if (!v.empty() && v[0] == '+') ++first;
  const auto [p, ec] = std::from_chars(first, v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || first == v.data() + v.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

#define SODLR_INT(name)                                                                    \
  {                                                                                        \
    #name, {[](RunConfig& c, const std::string& v) { c.name = parse_int(#name, v); },      \
            [](const RunConfig& c) { return std::to_string(c.name); } }                    \
  }
#define SODLR_DOUBLE(name)                                                                 \
  {                                                                                        \
    #name, {[](RunConfig& c, const std::string& v) { c.name = parse_double(#name, v); },   \
            [](const RunConfig& c) { return fmt(c.name); } }                               \
  }

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"solver",
       {[](RunConfig& c, const std::string& v) { c.solver = parse_solver(v); },
        [](const RunConfig& c) { return to_string(c.solver); }}},
      SODLR_INT(n_x),
      SODLR_INT(n_y),
      SODLR_INT(n_moments),
      SODLR_INT(n_pn),
      SODLR_DOUBLE(cfl),
      SODLR_DOUBLE(t_end),
      SODLR_DOUBLE(sigma),
      SODLR_DOUBLE(theta),
      {"theta_mode",
       {[](RunConfig& c, const std::string& v) {
          if (v == "relative") c.theta_mode = ThetaMode::relative;
          else if (v == "absolute") c.theta_mode = ThetaMode::absolute;
          else throw ConfigError("key 'theta_mode': expected relative or absolute, got '" + v + "'");
        },
        [](const RunConfig& c) {
          return std::string(c.theta_mode == ThetaMode::relative ? "relative" : "absolute");
        }}},
      {"truncation",
       {[](RunConfig& c, const std::string& v) {
          if (v == "conservative") c.truncation = TruncationStrategy::conservative;
          else if (v == "standard") c.truncation = TruncationStrategy::standard;
          else throw ConfigError("key 'truncation': expected conservative or standard, got '" + v + "'");
        },
        [](const RunConfig& c) {
          return std::string(c.truncation == TruncationStrategy::conservative ? "conservative"
                                                                              : "standard");
        }}},
      SODLR_INT(r_start),
      SODLR_INT(r_min),
      SODLR_INT(r_max),
      SODLR_DOUBLE(a_rad),
      SODLR_DOUBLE(b0),
      SODLR_DOUBLE(sigma_ic),
      SODLR_DOUBLE(sigma_x),
      SODLR_DOUBLE(sigma_omega),
      {"allow_large_cfl",
       {[](RunConfig& c, const std::string& v) { c.allow_large_cfl = parse_bool("allow_large_cfl", v); },
        [](const RunConfig& c) { return std::string(c.allow_large_cfl ? "true" : "false"); }}},
      {"output_dir",
       {[](RunConfig& c, const std::string& v) { c.output_dir = v; },
        [](const RunConfig& c) { return c.output_dir; }}},
      {"snapshot_times",
       {[](RunConfig& c, const std::string& v) { c.snapshot_times = parse_list("snapshot_times", v); },
        [](const RunConfig& c) {
          std::string s;
          for (std::size_t i = 0; i < c.snapshot_times.size(); ++i)
            s += (i ? ", " : "") + fmt(c.snapshot_times[i]);
          return s;
        }}},
  };
  return table;
}

#undef SODLR_INT
#undef SODLR_DOUBLE

void apply_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = fields();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
  it->second.set(cfg, value);
}

struct ParsedText {
  std::vector<std::pair<std::string, std::string>> top;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
};

ParsedText scan(const std::string& text) {
  ParsedText out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      parse_problem(section);  // reject unknown sections
      out.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (key != "problem" && !fields().count(key)) throw ConfigError("unknown key '" + key + "'");
    if (section.empty()) {
      out.top.emplace_back(key, value);
    } else {
      if (key == "problem") throw ConfigError("key 'problem' is not allowed inside a section");
      out.sections[section].emplace_back(key, value);
    }
  }
  return out;
}

}  // namespace

std::string to_string(Problem p) {
  switch (p) {
    case Problem::plane_source: return "plane_source";
    case Problem::su_olson: return "su_olson";
    case Problem::beam_2d: return "beam_2d";
  }
  return "?";
}

std::string to_string(Solver s) {
  switch (s) {
    case Solver::full: return "full";
    case Solver::dlra: return "dlra";
    case Solver::naive: return "naive";
  }
  return "?";
}

Problem parse_problem(const std::string& name) {
  if (name == "plane_source") return Problem::plane_source;
  if (name == "su_olson") return Problem::su_olson;
  if (name == "beam_2d") return Problem::beam_2d;
  throw ConfigError("key 'problem': unknown problem '" + name +
                    "' (expected plane_source, su_olson or beam_2d)");
}

Solver parse_solver(const std::string& name) {
  if (name == "full") return Solver::full;
  if (name == "dlra") return Solver::dlra;
  if (name == "naive") return Solver::naive;
  throw ConfigError("key 'solver': unknown solver '" + name + "' (expected full, dlra or naive)");
}

std::string default_output_dir() {
  const char* env = std::getenv("SODLR_OUTPUT_DIR");
  return env && *env ? std::string(env) : std::string("output");
}

RunConfig default_config(Problem problem) {
  RunConfig c;
  c.problem = problem;
  c.output_dir = default_output_dir();
  switch (problem) {
    case Problem::plane_source:
      break;
    case Problem::su_olson:
      c.theta = 0.01;
      c.t_end = 3.16;
      c.b0 = 50.0;
      break;
    case Problem::beam_2d:
      c.n_x = 500;
      c.n_y = 500;
      c.n_moments = 0;
      c.n_pn = 29;
      c.cfl = 0.7;
      c.t_end = 0.5;
      c.sigma = 0.5;
      c.theta = 5e-4;
      c.r_start = 100;
      c.r_max = 100;
      break;
  }
  return c;
}

void validate(const RunConfig& c) {
  const bool two_d = c.problem == Problem::beam_2d;
  if (!(c.cfl > 0.0)) throw ConfigError("key 'cfl': must be positive");
  if (c.cfl > 1.0 && !c.allow_large_cfl)
    throw ConfigError("key 'cfl': " + fmt(c.cfl) +
                      " > 1 violates dt <= dx required for energy stability; "
                      "set allow_large_cfl = true to override");
  if (!(c.t_end >= 0.0)) throw ConfigError("key 't_end': must be >= 0");
  if (c.n_x < 3) throw ConfigError("key 'n_x': must be >= 3");
  if (two_d) {
    if (c.n_y < 3) throw ConfigError("key 'n_y': must be >= 3 for beam_2d");
    if (c.n_pn < 1) throw ConfigError("key 'n_pn': must be >= 1 for beam_2d");
  } else {
    if (c.n_moments < 2) throw ConfigError("key 'n_moments': must be >= 2");
  }
  if (!(c.sigma >= 0.0)) throw ConfigError("key 'sigma': must be >= 0");
  if (!(c.theta > 0.0)) throw ConfigError("key 'theta': must be positive");
  if (c.r_min < 1) throw ConfigError("key 'r_min': must be >= 1");
  if (c.r_max < c.r_min) throw ConfigError("key 'r_max': must be >= r_min");
  if (c.r_start < c.r_min || c.r_start > c.r_max)
    throw ConfigError("key 'r_start': must lie in [r_min, r_max]");
  if (!(c.a_rad > 0.0)) throw ConfigError("key 'a_rad': must be positive");
  if (!(c.b0 > 0.0)) throw ConfigError("key 'b0': must be positive");
  if (!(c.sigma_ic > 0.0)) throw ConfigError("key 'sigma_ic': must be positive");
  if (!(c.sigma_x > 0.0)) throw ConfigError("key 'sigma_x': must be positive");
  if (!(c.sigma_omega > 0.0)) throw ConfigError("key 'sigma_omega': must be positive");
  if (c.output_dir.empty()) throw ConfigError("key 'output_dir': must not be empty");
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    const double t = c.snapshot_times[i];
    if (!(t >= 0.0 && t <= c.t_end))
      throw ConfigError("key 'snapshot_times': " + fmt(t) + " outside [0, t_end]");
    if (i > 0 && !(t > c.snapshot_times[i - 1]))
      throw ConfigError("key 'snapshot_times': values must be strictly increasing");
  }
}

RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides) {
  const ParsedText parsed = scan(text);

  std::string problem_name;
  for (const auto& [k, v] : parsed.top)
    if (k == "problem") problem_name = v;
  for (const auto& [k, v] : overrides)
    if (k == "problem") problem_name = v;
  if (problem_name.empty()) throw ConfigError("key 'problem': not specified");
  const Problem problem = parse_problem(problem_name);

  RunConfig cfg = default_config(problem);
  for (const auto& [k, v] : parsed.top)
    if (k != "problem") apply_entry(cfg, k, v);
  if (const auto it = parsed.sections.find(problem_name); it != parsed.sections.end())
    for (const auto& [k, v] : it->second) apply_entry(cfg, k, v);
  for (const auto& [k, v] : overrides)
    if (k != "problem") apply_entry(cfg, k, v);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out = "problem = " + to_string(cfg.problem) + "\n";
  for (const auto& [key, field] : fields()) out += key + " = " + field.get(cfg) + "\n";
  return out;
}

std::pair<std::string, std::string> split_override(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + kv + "': expected key=value");
  return {trim(kv.substr(0, eq)), trim(kv.substr(eq + 1))};
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  if (a.problem != b.problem) return false;
  for (const auto& [key, field] : fields())
    if (field.get(a) != field.get(b)) return false;
  return true;
}

}  // namespace sodlr
