#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "ter/policy.hpp"

using namespace ter;
using namespace ter::test;

namespace {

WindowMemory window_of(std::size_t capacity,
                       const std::vector<std::pair<std::size_t, double>>& entries) {
  WindowMemory window(capacity);
  for (const auto& [action, efficiency] : entries) {
    window.push(EfficiencyRecord{action, efficiency, 1.0, efficiency});
  }
  return window;
}

}  // namespace

TEST_CASE("policy config json applies known keys and validates") {
  PolicyConfig defaults = policy_config_from_json(nlohmann::json::object());
  CHECK(defaults.tau == 0.2);
  CHECK(defaults.window == 5);
  CHECK(defaults.action_count == 3);

  PolicyConfig custom = policy_config_from_json({{"tau", 0.1}, {"window", 9}, {"action_count", 4}});
  CHECK(custom.tau == 0.1);
  CHECK(custom.window == 9);
  CHECK(custom.action_count == 4);

  CHECK_THROWS_AS(policy_config_from_json({{"tau", 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(policy_config_from_json({{"tau", -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(policy_config_from_json({{"window", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(policy_config_from_json({{"action_count", 0}}), std::invalid_argument);

  PolicyConfig round = policy_config_from_json(to_json(custom));
  CHECK(round.tau == custom.tau);
  CHECK(round.window == custom.window);
  CHECK(round.action_count == custom.action_count);

  ScratchDir dir("policy_config");
  {
    std::ofstream out(dir.path / "p.json");
    out << R"({"tau": 0.25, "window": 7})";
  }
  PolicyConfig loaded = load_policy_config(dir.path / "p.json");
  CHECK(loaded.tau == 0.25);
  CHECK(loaded.window == 7);
  CHECK_THROWS_AS(load_policy_config(dir.path / "missing.json"), std::runtime_error);
}

TEST_CASE("normalization maps the window onto [0,1] jointly") {
  WindowMemory window = window_of(5, {{0, 2.0}, {1, 4.0}, {2, 6.0}});
  std::vector<double> n = normalize_window(window);
  REQUIRE(n.size() == 3);
  CHECK(n[0] == 0.0);
  CHECK(n[1] == 0.5);
  CHECK(n[2] == 1.0);

  WindowMemory flat = window_of(5, {{0, 5.0}, {1, 5.0}, {2, 5.0}});
  for (double v : normalize_window(flat)) CHECK(v == 0.5);

  WindowMemory single = window_of(5, {{0, 3.0}});
  std::vector<double> s = normalize_window(single);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == 0.5);

  WindowMemory empty(5);
  CHECK(normalize_window(empty).empty());
}

TEST_CASE("normalization is invariant under positive affine maps") {
  Rng rng(11);
  for (int round = 0; round < 2000; ++round) {
    std::size_t count = uniform_index(rng, 1, 8);
    double scale = uniform_real(rng, 0.1, 10.0);
    double offset = uniform_real(rng, -5.0, 5.0);
    WindowMemory base(8), mapped(8);
    for (std::size_t i = 0; i < count; ++i) {
      double e = uniform_real(rng, -3.0, 3.0);
      base.push(EfficiencyRecord{0, 0.0, 1.0, e});
      mapped.push(EfficiencyRecord{0, 0.0, 1.0, scale * e + offset});
    }
    std::vector<double> a = normalize_window(base);
    std::vector<double> b = normalize_window(mapped);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
      CHECK(a[i] >= 0.0);
      CHECK(a[i] <= 1.0);
    }
  }
}

TEST_CASE("action means average normalized efficiencies per action") {
  WindowMemory window = window_of(5, {{0, 0.0}, {1, 5.0}, {0, 10.0}});
  std::vector<double> means = action_means(window, 3);
  REQUIRE(means.size() == 3);
  CHECK(means[0] == 0.5);  // normalized 0 and 1
  CHECK(means[1] == 0.5);
  CHECK(std::isinf(means[2]));
  CHECK(means[2] > 0.0);

  // eviction drops action 0's only record, so it turns infinite again
  WindowMemory tight = window_of(2, {{0, 1.0}, {1, 2.0}, {2, 3.0}});
  std::vector<double> m = action_means(tight, 3);
  CHECK(std::isinf(m[0]));
  CHECK(m[1] == 0.0);
  CHECK(m[2] == 1.0);

  WindowMemory bad = window_of(5, {{7, 1.0}});
  CHECK_THROWS_AS(action_means(bad, 3), std::invalid_argument);
}

TEST_CASE("softmax matches the closed form at tau 1/5") {
  std::vector<double> p = softmax_probabilities({1.0, 0.0, 0.0}, 0.2);
  REQUIRE(p.size() == 3);
  double e5 = std::exp(5.0);
  CHECK(p[0] == doctest::Approx(e5 / (e5 + 2.0)).epsilon(1e-14));
  CHECK(p[0] == doctest::Approx(0.986703291042268).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.00664835447886600).epsilon(1e-12));
  CHECK(p[1] == p[2]);
  CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("softmax gives all mass to infinite means, shared uniformly") {
  double inf = std::numeric_limits<double>::infinity();
  std::vector<double> p = softmax_probabilities({inf, 0.5, inf}, 0.2);
  CHECK(p[0] == 0.5);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.5);

  std::vector<double> lone = softmax_probabilities({0.1, inf, 0.9}, 0.2);
  CHECK(lone[0] == 0.0);
  CHECK(lone[1] == 1.0);
  CHECK(lone[2] == 0.0);
}

TEST_CASE("softmax validates inputs and stays a distribution") {
  CHECK_THROWS_AS(softmax_probabilities({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(softmax_probabilities({1.0}, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(softmax_probabilities({}, 0.2), std::invalid_argument);

  Rng rng(5);
  for (int round = 0; round < 2000; ++round) {
    std::size_t count = uniform_index(rng, 1, 6);
    double tau = uniform_real(rng, 0.01, 5.0);
    std::vector<double> means(count);
    for (double& m : means) m = uniform_real(rng, -2.0, 2.0);
    std::vector<double> p = softmax_probabilities(means, tau);
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (double v : p) CHECK(v >= 0.0);
  }
}

TEST_CASE("softmax commutes with permutations of the means") {
  Rng rng(13);
  for (int round = 0; round < 300; ++round) {
    std::size_t count = uniform_index(rng, 2, 6);
    std::vector<double> means(count);
    for (double& m : means) m = uniform_real(rng, -2.0, 2.0);
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<double> permuted(count);
    for (std::size_t i = 0; i < count; ++i) permuted[i] = means[perm[i]];
    std::vector<double> p = softmax_probabilities(means, 0.3);
    std::vector<double> q = softmax_probabilities(permuted, 0.3);
    for (std::size_t i = 0; i < count; ++i) {
      CHECK(q[i] == doctest::Approx(p[perm[i]]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample_index follows the given distribution") {
  Rng rng(17);
  CHECK_THROWS_AS(sample_index({}, rng), std::invalid_argument);

  std::vector<double> delta{0.0, 1.0, 0.0};
  for (int i = 0; i < 50; ++i) CHECK(sample_index(delta, rng) == 1);

  std::vector<double> skip{0.5, 0.0, 0.5};
  for (int i = 0; i < 2000; ++i) CHECK(sample_index(skip, rng) != 1);

  std::vector<double> p{0.2, 0.3, 0.5};
  std::vector<std::size_t> counts(3, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[sample_index(p, rng)];
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(static_cast<double>(counts[i]) / draws == doctest::Approx(p[i]).epsilon(0.05));
  }
}

TEST_CASE("sample_action explores off the best arm at the softmax rate") {
  Rng rng(19);
  std::vector<double> means{1.0, 0.0, 0.0};
  const int draws = 200000;
  int off_best = 0;
  for (int i = 0; i < draws; ++i) {
    if (sample_action(means, 0.2, rng) != 0) ++off_best;
  }
  double rate = static_cast<double>(off_best) / draws;
  CHECK(std::abs(rate - 2.0 / (2.0 + std::exp(5.0))) < 0.003);
}
