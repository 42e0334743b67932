#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regspec/json_io.hpp"
#include "regspec/registry.hpp"
#include "regspec/value.hpp"

namespace regspec::bench {

struct Config {
  std::size_t iterations = 10000;
  /// Untimed iterations run first to warm caches and the allocator.
  std::size_t warmup = 1000;
  std::uint64_t seed = 1;
};

struct Stats {
  std::string scenario;
  std::size_t iterations = 0;
  double mean_us = 0;
  double stddev_us = 0;
  double min_us = 0;
  double max_us = 0;
};

/// Runs `body(i)` warmup + iterations times and times each measured call.
Stats measure(std::string scenario, const Config& config, const std::function<void(std::size_t)>& body);

inline const std::vector<std::string> kScenarios = {
    "Validation", "Conform", "Generation", "Generation+Validation", "Generation+Conformance"};

/// The five scenarios: validating and conforming `message` against `spec`,
/// generating a `spec` value, and generating followed by validation or
/// conformance. Generation runs use seed config.seed + i.
std::vector<Stats> run_scenarios(const Registry& registry, const Keyword& spec, const Value& message,
                                 const Config& config);

std::string format_table(const std::vector<Stats>& rows);
Json to_json(const std::vector<Stats>& rows);

}  // namespace regspec::bench
