#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fsmj/mnb.hpp"

namespace fsmj::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("fsmj_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t m, double zero_prob = 0.0) {
  std::exponential_distribution<double> exp1(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(m);
  double sum = 0.0;
  for (auto& v : p) {
    v = u(rng) < zero_prob ? 0.0 : exp1(rng);
    sum += v;
  }
  if (sum == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (auto& v : p) v /= sum;
  return p;
}

inline MnbModel random_model(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<double> cells;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = random_simplex(rng, m);
    cells.insert(cells.end(), row.begin(), row.end());
  }
  auto priors = random_simplex(rng, n);
  // Keep every prior comfortably positive and the sum exact to 1e-12.
  for (auto& p : priors) p = 0.5 * p + 0.5 / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += priors[i];
  priors[n - 1] = 1.0 - s;
  return MnbModel(std::move(cells), m, std::move(priors), {}, 1.0);
}

}  // namespace fsmj::testing
