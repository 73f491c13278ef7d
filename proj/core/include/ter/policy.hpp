#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "ter/rng.hpp"
#include "ter/window.hpp"

namespace ter {

// Temperature, window size, and action count of the selection policy.
// tau > 0 and window >= 1 always; bound evaluation additionally needs
// window >= action_count.
struct PolicyConfig {
  double tau = 0.2;
  std::size_t window = 5;
  std::size_t action_count = 3;
};

// Reads keys `tau` and `window` when present; other fields keep their
// defaults. Throws on out-of-range values.
PolicyConfig policy_config_from_json(const nlohmann::json& j);
PolicyConfig load_policy_config(const std::filesystem::path& path);
nlohmann::json to_json(const PolicyConfig& config);

// Joint linear map of all window efficiencies onto [0, 1]: the minimum maps
// to 0 and the maximum to 1. When every efficiency is equal (including a
// single record) all values map to 0.5. Result is parallel to the window
// entries; empty window yields an empty result.
std::vector<double> normalize_window(const WindowMemory& window);

// Arithmetic mean of each action's normalized efficiencies. Actions with no
// record in the window get +infinity so they are selected ahead of any
// recorded action (strict exploration).
std::vector<double> action_means(const WindowMemory& window, std::size_t action_count);

// Boltzmann distribution over finite means: p_i proportional to
// exp(mean_i / tau). Infinite means take the whole mass, shared uniformly.
std::vector<double> softmax_probabilities(const std::vector<double>& means, double tau);

// Draws an index from an explicit probability vector.
std::size_t sample_index(const std::vector<double>& probabilities, Rng& rng);

// Samples an action from softmax_probabilities(means, tau).
std::size_t sample_action(const std::vector<double>& means, double tau, Rng& rng);

}  // namespace ter
