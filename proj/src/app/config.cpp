#include "cme/app/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cme::app {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const std::string_view item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: cannot parse '" + std::string(text) + "' for key '" +
                      std::string(key) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError("config: '" + std::string(key) + "' must be finite");
  }
  return value;
}

class Reader {
 public:
  explicit Reader(const ConfigMap& map) : map_(map) {}

  std::string str(std::string_view key) const {
    auto v = map_.get(key);
    if (!v) throw ConfigError("config: missing key '" + std::string(key) + "'");
    return *v;
  }
  double real(std::string_view key) const { return parse_number<double>(key, str(key)); }
  double positive(std::string_view key) const {
    const double v = real(key);
    if (!(v > 0.0)) throw ConfigError("config: '" + std::string(key) + "' must be positive");
    return v;
  }
  double nonneg(std::string_view key) const {
    const double v = real(key);
    if (!(v >= 0.0)) throw ConfigError("config: '" + std::string(key) + "' must be non-negative");
    return v;
  }
  std::int64_t count(std::string_view key) const {
    const auto v = parse_number<std::int64_t>(key, str(key));
    if (v < 1) throw ConfigError("config: '" + std::string(key) + "' must be at least 1");
    return v;
  }
  std::vector<std::int64_t> counts(std::string_view key) const {
    std::vector<std::int64_t> out;
    const std::string text = str(key);
    for (auto item : split_list(text)) {
      const auto v = parse_number<std::int64_t>(key, item);
      if (v < 1) throw ConfigError("config: entries of '" + std::string(key) + "' must be at least 1");
      out.push_back(v);
    }
    if (out.empty()) throw ConfigError("config: '" + std::string(key) + "' is empty");
    return out;
  }
  std::vector<std::uint64_t> seeds(std::string_view key) const {
    std::vector<std::uint64_t> out;
    const std::string text = str(key);
    for (auto item : split_list(text)) out.push_back(parse_number<std::uint64_t>(key, item));
    if (out.empty()) throw ConfigError("config: '" + std::string(key) + "' is empty");
    return out;
  }
  LambdaSchedule lambda() const { return {positive("lambda-coef"), nonneg("lambda-exp")}; }
  std::filesystem::path path(std::string_view key) const {
    const std::string p = str(key);
    if (p.empty()) throw ConfigError("config: '" + std::string(key) + "' must not be empty");
    return p;
  }

 private:
  const ConfigMap& map_;
};

ConfigMap from_pairs(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  ConfigMap m;
  for (const auto& [k, v] : pairs) m.set(k, v);
  return m;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Consistency: return "consistency";
    case Command::Mcmd: return "mcmd";
    case Command::Hscic: return "hscic";
    case Command::Bounds: return "bounds";
    case Command::Selftest: return "selftest";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Consistency, Command::Mcmd, Command::Hscic, Command::Bounds,
                    Command::Selftest}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(NoiseMode m) {
  return m == NoiseMode::Additive ? "additive" : "multiplicative";
}

std::string ConfigMap::normalize_key(std::string_view key) {
  std::string out(trim(key));
  for (char& c : out) {
    c = c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

ConfigMap ConfigMap::parse(std::string_view text) {
  ConfigMap map;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    map.set(line.substr(0, eq), trim(line.substr(eq + 1)));
  }
  return map;
}

ConfigMap ConfigMap::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void ConfigMap::set(std::string_view key, std::string_view value) {
  entries_[normalize_key(key)] = std::string(trim(value));
}

std::optional<std::string> ConfigMap::get(std::string_view key) const {
  const auto it = entries_.find(normalize_key(key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ConfigMap::merge(const ConfigMap& overrides) {
  for (const auto& [k, v] : overrides.entries_) entries_[k] = v;
}

std::string ConfigMap::render() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

ConfigMap default_config(Command c) {
  switch (c) {
    case Command::Consistency:
      return from_pairs({{"scenario", "ConsA"},
                         {"n-list", "25,50,100,250,500,1000,2000"},
                         {"seed-list", "0,1,2,3,4,5,6,7,8,9"},
                         {"lambda-coef", "1e-7"},
                         {"lambda-exp", "0.25"},
                         {"bandwidth-x", "0.1"},
                         {"bandwidth-z", "1"},
                         {"noise-scale", "auto"},
                         {"test-size", "10000"},
                         {"out", "consistency.csv"}});
    case Command::Mcmd:
      return from_pairs({{"n", "500"},
                         {"seed-list", "0"},
                         {"lambda-coef", "0.01"},
                         {"lambda-exp", "0"},
                         {"bandwidth-x", "0.1"},
                         {"bandwidth-z", "0.1"},
                         {"noise-scale", "0.3"},
                         {"grid-size", "200"},
                         {"witness-grid-size", "50"},
                         {"witness-out", ""},
                         {"out", "mcmd.csv"}});
    case Command::Hscic:
      return from_pairs({{"n", "500"},
                         {"seed-list", "0"},
                         {"lambda-coef", "0.01"},
                         {"lambda-exp", "0"},
                         {"bandwidth-x", "0.1"},
                         {"bandwidth-y", "0.1"},
                         {"bandwidth-z", "0.1"},
                         {"noise-scale", "0.3"},
                         {"dep-strength", "0.2"},
                         {"dep-strength-strong", "0.4"},
                         {"mode", "both"},
                         {"grid-size", "200"},
                         {"out", "hscic.csv"}});
    case Command::Bounds:
      return from_pairs({{"n-list", "100,1000,10000,100000,1000000"},
                         {"lambda-coef", "1"},
                         {"lambda-exp", "0.25"},
                         {"b-x", "1"},
                         {"b-z", "1"},
                         {"kappa1", "1"},
                         {"norm-f", "1"},
                         {"delta", "0.05"},
                         {"out", "bounds.csv"}});
    case Command::Selftest:
      return from_pairs({{"seed", "0"}});
  }
  return {};
}

ConfigMap resolve_config(Command c, const std::optional<std::filesystem::path>& file,
                         const ConfigMap& overrides) {
  ConfigMap resolved = default_config(c);
  const auto check_known = [&](const ConfigMap& layer, const std::string& origin) {
    for (const auto& [k, v] : layer.entries()) {
      if (!resolved.get(k)) {
        throw ConfigError(origin + ": unknown key '" + k + "' for command " +
                          std::string(to_string(c)));
      }
    }
  };
  if (file) {
    const ConfigMap from_file = ConfigMap::load(*file);
    check_known(from_file, file->string());
    resolved.merge(from_file);
  }
  check_known(overrides, "command line");
  resolved.merge(overrides);
  return resolved;
}

double LambdaSchedule::at(double n) const { return coef * std::pow(n, -exponent); }

ConsistencyConfig consistency_config(const ConfigMap& resolved) {
  const Reader r(resolved);
  ConsistencyConfig cfg;
  try {
    cfg.scenario = parse_scenario(r.str("scenario"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.scenario != Scenario::ConsA && cfg.scenario != Scenario::ConsB &&
      cfg.scenario != Scenario::ConsC) {
    throw ConfigError("consistency: scenario must be ConsA, ConsB or ConsC");
  }
  cfg.n_list = r.counts("n-list");
  cfg.seeds = r.seeds("seed-list");
  cfg.lambda = r.lambda();
  cfg.bandwidth_x = r.positive("bandwidth-x");
  cfg.bandwidth_z = r.positive("bandwidth-z");
  cfg.noise_scale = r.str("noise-scale") == "auto" ? default_noise_scale(cfg.scenario)
                                                   : r.nonneg("noise-scale");
  cfg.test_size = r.count("test-size");
  cfg.out = r.path("out");
  return cfg;
}

McmdConfig mcmd_config(const ConfigMap& resolved) {
  const Reader r(resolved);
  McmdConfig cfg;
  cfg.n = r.count("n");
  cfg.seeds = r.seeds("seed-list");
  cfg.lambda = r.lambda();
  cfg.bandwidth_x = r.positive("bandwidth-x");
  cfg.bandwidth_z = r.positive("bandwidth-z");
  cfg.noise_scale = r.nonneg("noise-scale");
  cfg.grid_size = r.count("grid-size");
  cfg.witness_grid_size = r.count("witness-grid-size");
  if (const std::string w = r.str("witness-out"); !w.empty()) cfg.witness_out = w;
  cfg.out = r.path("out");
  return cfg;
}

HscicConfig hscic_config(const ConfigMap& resolved) {
  const Reader r(resolved);
  HscicConfig cfg;
  cfg.n = r.count("n");
  cfg.seeds = r.seeds("seed-list");
  cfg.lambda = r.lambda();
  cfg.bandwidth_x = r.positive("bandwidth-x");
  cfg.bandwidth_y = r.positive("bandwidth-y");
  cfg.bandwidth_z = r.positive("bandwidth-z");
  cfg.noise_scale = r.nonneg("noise-scale");
  cfg.dep_strength = r.positive("dep-strength");
  cfg.dep_strength_strong = r.positive("dep-strength-strong");
  const std::string mode = r.str("mode");
  if (mode == "both") {
    cfg.modes = {NoiseMode::Additive, NoiseMode::Multiplicative};
  } else if (mode == "additive") {
    cfg.modes = {NoiseMode::Additive};
  } else if (mode == "multiplicative") {
    cfg.modes = {NoiseMode::Multiplicative};
  } else {
    throw ConfigError("hscic: mode must be additive, multiplicative or both");
  }
  cfg.grid_size = r.count("grid-size");
  cfg.out = r.path("out");
  return cfg;
}

BoundsConfig bounds_config(const ConfigMap& resolved) {
  const Reader r(resolved);
  BoundsConfig cfg;
  cfg.n_list = r.counts("n-list");
  cfg.lambda = r.lambda();
  cfg.b_x = r.nonneg("b-x");
  cfg.b_z = r.nonneg("b-z");
  cfg.kappa1 = r.nonneg("kappa1");
  cfg.norm_f = r.nonneg("norm-f");
  cfg.delta = r.real("delta");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("bounds: delta must lie in (0, 1)");
  cfg.out = r.path("out");
  return cfg;
}

SelftestConfig selftest_config(const ConfigMap& resolved) {
  const Reader r(resolved);
  return {parse_number<std::uint64_t>("seed", r.str("seed"))};
}

}  // namespace cme::app
