#include "tci/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tci/csv.hpp"

namespace tci {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) +
                      "' is not a number");
  }
  return value;
}

long parse_integer(std::string_view key, std::string_view text) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) +
                      "' is not an integer");
  }
  return value;
}

int parse_positive_int(std::string_view key, std::string_view text) {
  const long v = parse_integer(key, text);
  if (v < 1 || v > 1'000'000'000) {
    throw ConfigError("key '" + std::string(key) + "' must be a positive integer");
  }
  return static_cast<int>(v);
}

std::string parse_file_name(std::string_view key, std::string_view text) {
  if (text.empty() || text.find('/') != std::string_view::npos ||
      text.find('\\') != std::string_view::npos || text == "." || text == "..") {
    throw ConfigError("key '" + std::string(key) + "' must be a plain file name, got '" +
                      std::string(text) + "'");
  }
  return std::string(text);
}

}  // namespace

std::string LimitingSetting::name() const {
  switch (limiting) {
    case LimitingMode::first_order:
      return "first_order";
    case LimitingMode::everywhere:
      return "everywhere";
    case LimitingMode::restricted:
      return mask_source == MaskSource::shock_straddle ? "straddle" : "restricted";
  }
  return "unknown";
}

std::string LimitingSetting::label() const {
  std::string out = name();
  if (limiting == LimitingMode::restricted && mask_source == MaskSource::indicator && k) {
    out += ':' + format_double(*k);
  }
  return out;
}

LimitingSetting parse_limiting_setting(std::string_view text) {
  text = trim(text);
  LimitingSetting s;
  std::string_view body = text;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    body = trim(text.substr(0, at));
    const std::string_view grid = trim(text.substr(at + 1));
    const auto x = grid.find('x');
    if (x == std::string_view::npos) {
      throw ConfigError("limiting setting '" + std::string(text) + "': grid must be <nx>x<ny>");
    }
    s.grid = std::pair{parse_positive_int("grid", grid.substr(0, x)),
                       parse_positive_int("grid", grid.substr(x + 1))};
  }
  std::string_view name = body;
  if (const auto colon = body.find(':'); colon != std::string_view::npos) {
    name = trim(body.substr(0, colon));
    s.k = parse_double("k", trim(body.substr(colon + 1)));
  }
  if (name == "first_order") {
    s.limiting = LimitingMode::first_order;
  } else if (name == "everywhere") {
    s.limiting = LimitingMode::everywhere;
  } else if (name == "restricted") {
    s.limiting = LimitingMode::restricted;
  } else if (name == "straddle") {
    s.limiting = LimitingMode::restricted;
    s.mask_source = MaskSource::shock_straddle;
  } else {
    throw ConfigError("unknown limiting '" + std::string(name) +
                      "' (expected first_order, everywhere, restricted or straddle)");
  }
  if (s.k && name != "restricted") {
    throw ConfigError("limiting '" + std::string(name) + "' does not take a threshold");
  }
  return s;
}

RunConfig AppConfig::run_for(const LimitingSetting& setting) const {
  RunConfig r = run;
  r.limiting = setting.limiting;
  r.mask_source = setting.mask_source;
  if (setting.k) r.k_threshold = setting.k;
  return r;
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "case",         "mode",         "limiting",      "k",           "k_list",
      "compare",      "cfl",          "nx",            "ny",          "beta",
      "gamma",        "max_iterations", "tol",         "final_time",  "window",
      "history_file", "field_file",   "mask_file",     "report_file", "vtk_file",
      "summary_file", "compare_file",
  };
  return keys;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

AppConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' has no value");
    }
    if (values.count(key) != 0) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' repeats line " + std::to_string(lines[key]));
    }
    values[key] = value;
    lines[key] = line_no;
  }

  AppConfig cfg;
  std::string canonical;
  for (const auto& [key, value] : values) canonical += key + '=' + value + '\n';
  cfg.hash = fnv1a(canonical);

  auto get = [&](const char* key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  const std::string* name = get("case");
  if (name == nullptr) throw ConfigError("missing key 'case'");
  cfg.case_name = *name;
  if (const auto* v = get("nx")) cfg.nx = parse_positive_int("nx", *v);
  if (const auto* v = get("ny")) cfg.ny = parse_positive_int("ny", *v);
  if (const auto* v = get("beta")) cfg.beta = parse_double("beta", *v);
  if (const auto* v = get("gamma")) cfg.gamma = parse_double("gamma", *v);
  if (!(cfg.gamma > 1.0)) throw ConfigError("key 'gamma' must exceed 1");

  CaseDefinition c;
  try {
    c = make_case(cfg.case_name, cfg.nx, cfg.ny, cfg.beta);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("case '" + cfg.case_name + "': " + e.what());
  }

  cfg.run.mode = c.steady ? RunMode::steady : RunMode::unsteady;
  if (const auto* v = get("mode")) {
    if (*v == "steady") {
      cfg.run.mode = RunMode::steady;
    } else if (*v == "unsteady") {
      cfg.run.mode = RunMode::unsteady;
    } else {
      throw ConfigError("key 'mode' must be steady or unsteady, got '" + *v + "'");
    }
    if ((cfg.run.mode == RunMode::steady) != c.steady) {
      throw ConfigError("case '" + cfg.case_name + "' is " + (c.steady ? "steady" : "unsteady") +
                        " but mode = " + *v);
    }
  }
  cfg.run.cfl = cfg.run.mode == RunMode::steady ? kSteadyCfl : kUnsteadyCfl;
  if (const auto* v = get("cfl")) cfg.run.cfl = parse_double("cfl", *v);
  if (const auto* v = get("max_iterations")) {
    cfg.run.max_iterations = parse_positive_int("max_iterations", *v);
  }
  if (const auto* v = get("tol")) cfg.run.convergence_tol = parse_double("tol", *v);
  if (const auto* v = get("final_time")) {
    if (cfg.run.mode != RunMode::unsteady) {
      throw ConfigError("key 'final_time' only applies to unsteady runs");
    }
    cfg.run.final_time = parse_double("final_time", *v);
  }
  if (const auto* v = get("k")) cfg.run.k_threshold = parse_double("k", *v);

  if (const auto* v = get("limiting")) {
    cfg.limiting = parse_limiting_setting(*v);
    if (cfg.limiting.grid) throw ConfigError("key 'limiting' does not take a grid");
  }
  if (cfg.limiting.k) {
    if (cfg.run.k_threshold) throw ConfigError("threshold given both in 'limiting' and 'k'");
    cfg.run.k_threshold = cfg.limiting.k;
  }
  cfg.run.limiting = cfg.limiting.limiting;
  cfg.run.mask_source = cfg.limiting.mask_source;
  if (cfg.limiting.mask_source == MaskSource::shock_straddle && !c.shock) {
    throw ConfigError("limiting 'straddle' needs a case with an exact shock");
  }
  validate(cfg.run);

  if (const auto* v = get("k_list")) {
    for (std::string_view item : split(*v, ',')) {
      if (item.empty()) continue;
      const double k = parse_double("k_list", item);
      if (!(k > 0.0)) throw ConfigError("key 'k_list': thresholds must be positive");
      cfg.k_list.push_back(k);
    }
    if (cfg.k_list.empty()) throw ConfigError("key 'k_list' is empty");
  }

  if (const auto* v = get("compare")) {
    for (std::string_view item : split(*v, ',')) {
      if (item.empty()) continue;
      LimitingSetting s = parse_limiting_setting(item);
      if (s.grid && (s.grid->first != cfg.nx || s.grid->second != cfg.ny)) {
        throw ConfigError("compare entry '" + std::string(item) + "' uses grid " +
                          std::to_string(s.grid->first) + "x" + std::to_string(s.grid->second) +
                          " but the run grid is " + std::to_string(cfg.nx) + "x" +
                          std::to_string(cfg.ny));
      }
      if (s.mask_source == MaskSource::shock_straddle && !c.shock) {
        throw ConfigError("compare entry 'straddle' needs a case with an exact shock");
      }
      validate(cfg.run_for(s));
      cfg.compare.push_back(s);
    }
  }

  if (const auto* v = get("window")) {
    cfg.window = static_cast<std::size_t>(parse_positive_int("window", *v));
  }
  if (const auto* v = get("history_file")) cfg.outputs.history = parse_file_name("history_file", *v);
  if (const auto* v = get("field_file")) cfg.outputs.field = parse_file_name("field_file", *v);
  if (const auto* v = get("mask_file")) cfg.outputs.mask = parse_file_name("mask_file", *v);
  if (const auto* v = get("report_file")) cfg.outputs.report = parse_file_name("report_file", *v);
  if (const auto* v = get("vtk_file")) cfg.outputs.vtk = parse_file_name("vtk_file", *v);
  if (const auto* v = get("summary_file")) {
    cfg.outputs.flag_summary = parse_file_name("summary_file", *v);
  }
  if (const auto* v = get("compare_file")) cfg.outputs.compare = parse_file_name("compare_file", *v);
  return cfg;
}

AppConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace tci
