// Shared fixtures for the unit tests and the acceptance runner.
#ifndef GWLAB_TESTS_FIXTURES_HPP
#define GWLAB_TESTS_FIXTURES_HPP

#include <sys/wait.h>

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gwlab/bps.hpp"
#include "gwlab/io.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::string data_path(const std::string& rel) { return std::string(GWLAB_DATA_DIR) + "/" + rel; }

struct CliResult {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stdout captured and stderr discarded. `env` is a
/// prefix of VAR=value assignments.
inline CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(GWLAB_CLI_PATH) + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline gwlab::ThreefoldData load_threefold(const std::string& rel) {
  return gwlab::load_target(data_path(rel)).threefold.value();
}

/// Every (class, insertions) pair passing the dimension constraint with
/// class degree in [1, max_degree].
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> admissible_keys(
    const gwlab::ThreefoldData& data, int max_degree) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  const int rank = static_cast<int>(data.generators().size());
  const auto ins = data.insertion_classes();
  std::vector<int> cls(rank, 0);
  std::function<void(int, int)> classes = [&](int i, int left) {
    if (i == rank) {
      if (left == max_degree) return;  // zero class
      const int c1 = data.c1_degree(cls);
      std::vector<int> chosen;
      // Multisets of insertions with sum(deg/2 - 1) = c1.
      std::function<void(std::size_t, int)> pick = [&](std::size_t from, int need) {
        if (need == 0) {
          if (gwlab::dimension_filter(data, cls, chosen)) out.emplace_back(cls, chosen);
          return;
        }
        for (std::size_t j = from; j < ins.size(); ++j) {
          const int w = data.base().basis()[ins[j]].degree() / 2 - 1;
          if (w > need) continue;
          chosen.push_back(static_cast<int>(ins[j]));
          pick(j, need - w);
          chosen.pop_back();
        }
      };
      pick(0, c1);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      cls[i] = d;
      classes(i + 1, left - d);
    }
  };
  classes(0, max_degree);
  return out;
}

inline gwlab::BPSTable random_bps(std::mt19937& rng, const gwlab::ThreefoldData& data, int max_degree,
                                  int max_genus) {
  const auto keys = admissible_keys(data, max_degree);
  std::uniform_int_distribution<int> value(-6, 6);
  std::bernoulli_distribution present(0.6);
  gwlab::BPSTable t;
  for (const auto& [cls, ins] : keys) {
    for (int g = 0; g <= max_genus; ++g) {
      if (!present(rng)) continue;
      const int v = value(rng);
      if (v != 0) t.entries.emplace(gwlab::TableKey{g, cls, ins}, v);
    }
  }
  t.complete_through_genus = max_genus;
  return t;
}

/// GV composition written directly from the multiple-cover formula with
/// the sine series of the oracle header: one coefficient lookup at a time.
inline oracle::Q compose_oracle(const gwlab::BPSTable& bps, const gwlab::ThreefoldData& data,
                                const gwlab::TableKey& target, int max_genus) {
  oracle::Q total = 0;
  const int c1 = data.c1_degree(target.curve_class);
  for (const auto& [key, n] : bps.entries) {
    if (key.genus > target.genus) continue;
    const int gap = 2 * (target.genus - key.genus);
    if (c1 != 0) {
      if (key.curve_class != target.curve_class || key.insertions != target.insertions) continue;
      total += n * oracle::sin_ratio(1, 2 * key.genus - 2 + c1, 2 * max_genus)[gap];
      continue;
    }
    if (!key.insertions.empty() || !target.insertions.empty()) continue;
    for (int d = 1; d <= target.class_degree(); ++d) {
      std::vector<int> scaled = key.curve_class;
      for (auto& x : scaled) x *= d;
      if (scaled != target.curve_class) continue;
      total += n * oracle::sin_ratio(d, 2 * key.genus - 2, 2 * max_genus)[gap] / d;
    }
  }
  return total;
}

}  // namespace fixtures

#endif  // GWLAB_TESTS_FIXTURES_HPP
