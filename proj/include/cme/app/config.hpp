#pragma once

#include "cme/simlab.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cme::app {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Consistency, Mcmd, Hscic, Bounds, Selftest };

std::string_view to_string(Command c);
Command parse_command(std::string_view name);

/// Flat key=value configuration. Keys are normalized to lower case with '-'
/// separators, so "lambda_coef" and "lambda-coef" name the same entry.
class ConfigMap {
 public:
  /// One pair per line; '#' starts a comment; blank lines are ignored.
  static ConfigMap parse(std::string_view text);
  static ConfigMap load(const std::filesystem::path& path);

  void set(std::string_view key, std::string_view value);
  std::optional<std::string> get(std::string_view key) const;
  /// Entries of `overrides` replace existing ones.
  void merge(const ConfigMap& overrides);

  const std::map<std::string, std::string>& entries() const { return entries_; }
  /// "key = value" lines in key order.
  std::string render() const;

  static std::string normalize_key(std::string_view key);

 private:
  std::map<std::string, std::string> entries_;
};

/// Built-in defaults for a command.
ConfigMap default_config(Command c);

/// defaults < config file < flag overrides. Unknown keys are rejected.
ConfigMap resolve_config(Command c, const std::optional<std::filesystem::path>& file,
                         const ConfigMap& overrides);

struct LambdaSchedule {
  double coef;
  double exponent;
  /// coef * n^(-exponent)
  double at(double n) const;
};

struct ConsistencyConfig {
  Scenario scenario;
  std::vector<std::int64_t> n_list;
  std::vector<std::uint64_t> seeds;
  LambdaSchedule lambda;
  double bandwidth_x;
  double bandwidth_z;
  double noise_scale;
  std::int64_t test_size;
  std::filesystem::path out;
};

struct McmdConfig {
  std::int64_t n;
  std::vector<std::uint64_t> seeds;
  LambdaSchedule lambda;
  double bandwidth_x;
  double bandwidth_z;
  double noise_scale;
  std::int64_t grid_size;
  std::int64_t witness_grid_size;
  std::optional<std::filesystem::path> witness_out;
  std::filesystem::path out;
};

enum class NoiseMode { Additive, Multiplicative };

struct HscicConfig {
  std::int64_t n;
  std::vector<std::uint64_t> seeds;
  LambdaSchedule lambda;
  double bandwidth_x;
  double bandwidth_y;
  double bandwidth_z;
  double noise_scale;
  double dep_strength;
  double dep_strength_strong;
  std::vector<NoiseMode> modes;
  std::int64_t grid_size;
  std::filesystem::path out;
};

struct BoundsConfig {
  std::vector<std::int64_t> n_list;
  LambdaSchedule lambda;
  double b_x;
  double b_z;
  double kappa1;
  double norm_f;
  double delta;
  std::filesystem::path out;
};

struct SelftestConfig {
  std::uint64_t seed;
};

ConsistencyConfig consistency_config(const ConfigMap& resolved);
McmdConfig mcmd_config(const ConfigMap& resolved);
HscicConfig hscic_config(const ConfigMap& resolved);
BoundsConfig bounds_config(const ConfigMap& resolved);
SelftestConfig selftest_config(const ConfigMap& resolved);

std::string_view to_string(NoiseMode m);

}  // namespace cme::app
