#include "ter/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ter {

PolicyConfig policy_config_from_json(const nlohmann::json& j) {
  PolicyConfig config;
  if (j.contains("tau")) config.tau = j.at("tau").get<double>();
  if (j.contains("window")) config.window = j.at("window").get<std::size_t>();
  if (j.contains("action_count")) config.action_count = j.at("action_count").get<std::size_t>();
  if (!(config.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (config.window < 1) throw std::invalid_argument("window must be at least 1");
  if (config.action_count < 1) throw std::invalid_argument("action_count must be at least 1");
  return config;
}

PolicyConfig load_policy_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  in >> j;
  return policy_config_from_json(j);
}

nlohmann::json to_json(const PolicyConfig& config) {
  return nlohmann::json{
      {"tau", config.tau},
      {"window", config.window},
      {"action_count", config.action_count},
  };
}

std::vector<double> normalize_window(const WindowMemory& window) {
  const auto& entries = window.entries();
  std::vector<double> normalized(entries.size());
  if (entries.empty()) return normalized;

  double lo = entries.front().efficiency;
  double hi = lo;
  for (const EfficiencyRecord& r : entries) {
    lo = std::min(lo, r.efficiency);
    hi = std::max(hi, r.efficiency);
  }
  if (hi == lo) {
    std::fill(normalized.begin(), normalized.end(), 0.5);
    return normalized;
  }
  double span = hi - lo;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    normalized[i] = (entries[i].efficiency - lo) / span;
  }
  return normalized;
}

std::vector<double> action_means(const WindowMemory& window, std::size_t action_count) {
  std::vector<double> sums(action_count, 0.0);
  std::vector<std::size_t> counts(action_count, 0);
  std::vector<double> normalized = normalize_window(window);

  const auto& entries = window.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::size_t a = entries[i].action_id;
    if (a >= action_count) throw std::invalid_argument("window holds an out-of-range action id");
    sums[a] += normalized[i];
    counts[a] += 1;
  }

  std::vector<double> means(action_count);
  for (std::size_t a = 0; a < action_count; ++a) {
    means[a] = counts[a] == 0 ? std::numeric_limits<double>::infinity()
                              : sums[a] / static_cast<double>(counts[a]);
  }
  return means;
}

std::vector<double> softmax_probabilities(const std::vector<double>& means, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (means.empty()) throw std::invalid_argument("softmax needs at least one mean");

  std::vector<double> probabilities(means.size(), 0.0);
  std::size_t infinite = 0;
  for (double m : means) {
    if (std::isinf(m) && m > 0.0) ++infinite;
  }
  if (infinite > 0) {
    for (std::size_t i = 0; i < means.size(); ++i) {
      if (std::isinf(means[i]) && means[i] > 0.0) {
        probabilities[i] = 1.0 / static_cast<double>(infinite);
      }
    }
    return probabilities;
  }

  double top = *std::max_element(means.begin(), means.end());
  double total = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    probabilities[i] = std::exp((means[i] - top) / tau);
    total += probabilities[i];
  }
  for (double& p : probabilities) p /= total;
  return probabilities;
}

std::size_t sample_index(const std::vector<double>& probabilities, Rng& rng) {
  if (probabilities.empty()) throw std::invalid_argument("cannot sample from an empty distribution");
  double u = uniform_real(rng, 0.0, 1.0);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

std::size_t sample_action(const std::vector<double>& means, double tau, Rng& rng) {
  return sample_index(softmax_probabilities(means, tau), rng);
}

}  // namespace ter
