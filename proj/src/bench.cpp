#include "regspec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "regspec/datagen.hpp"
#include "regspec/engine.hpp"
#include "regspec/error.hpp"

namespace regspec::bench {
namespace {

// Keeps results observable so the measured calls are not optimised away.
volatile std::size_t g_sink = 0;

void consume(bool b) { g_sink = g_sink + (b ? 1 : 0); }
void consume(const Value& v) { g_sink = g_sink + static_cast<std::size_t>(v.kind()); }

}  // namespace

Stats measure(std::string scenario, const Config& config, const std::function<void(std::size_t)>& body) {
  using clock = std::chrono::steady_clock;
  for (std::size_t i = 0; i < config.warmup; ++i) body(i);

  std::vector<double> samples;
  samples.reserve(config.iterations);
  for (std::size_t i = 0; i < config.iterations; ++i) {
    auto t0 = clock::now();
    body(config.warmup + i);
    auto t1 = clock::now();
    samples.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }

  Stats s;
  s.scenario = std::move(scenario);
  s.iterations = samples.size();
  if (samples.empty()) return s;
  double sum = 0;
  for (double x : samples) sum += x;
  s.mean_us = sum / static_cast<double>(samples.size());
  double sq = 0;
  for (double x : samples) sq += (x - s.mean_us) * (x - s.mean_us);
  s.stddev_us = samples.size() > 1 ? std::sqrt(sq / static_cast<double>(samples.size() - 1)) : 0.0;
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  s.min_us = *lo;
  s.max_us = *hi;
  return s;
}

std::vector<Stats> run_scenarios(const Registry& registry, const Keyword& spec, const Value& message,
                                 const Config& config) {
  if (!validate(registry, spec, message))
    throw Error(ErrorCode::ParseError, "benchmark message does not satisfy " + spec.str());

  auto gen = [&](std::size_t i) {
    GenContext ctx;
    ctx.seed = config.seed + i;
    return generate(registry, spec, ctx);
  };

  std::vector<Stats> rows;
  rows.push_back(measure(kScenarios[0], config, [&](std::size_t) { consume(validate(registry, spec, message)); }));
  rows.push_back(measure(kScenarios[1], config, [&](std::size_t) {
    consume(conform(registry, spec, message).ok());
  }));
  rows.push_back(measure(kScenarios[2], config, [&](std::size_t i) { consume(gen(i)); }));
  rows.push_back(measure(kScenarios[3], config, [&](std::size_t i) { consume(validate(registry, spec, gen(i))); }));
  rows.push_back(measure(kScenarios[4], config, [&](std::size_t i) {
    consume(conform(registry, spec, gen(i)).ok());
  }));
  return rows;
}

namespace {

std::string human(double us) {
  char buf[32];
  if (us < 1.0) std::snprintf(buf, sizeof buf, "%.3f ns", us * 1000.0);
  else if (us < 1000.0) std::snprintf(buf, sizeof buf, "%.3f us", us);
  else std::snprintf(buf, sizeof buf, "%.3f ms", us / 1000.0);
  return buf;
}

}  // namespace

std::string format_table(const std::vector<Stats>& rows) {
  std::size_t w = 8;
  for (const auto& r : rows) w = std::max(w, r.scenario.size());
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %14s  %14s  %10s\n", static_cast<int>(w), "Scenario", "Exec. Mean",
                "Std-Deviation", "Iterations");
  out += line;
  out += std::string(w + 46, '-') + "\n";
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-*s  %14s  %14s  %10zu\n", static_cast<int>(w), r.scenario.c_str(),
                  human(r.mean_us).c_str(), human(r.stddev_us).c_str(), r.iterations);
    out += line;
  }
  return out;
}

Json to_json(const std::vector<Stats>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"scenario", r.scenario},
                       {"iterations", r.iterations},
                       {"mean_us", r.mean_us},
                       {"stddev_us", r.stddev_us},
                       {"min_us", r.min_us},
                       {"max_us", r.max_us}});
  return arr;
}

}  // namespace regspec::bench
