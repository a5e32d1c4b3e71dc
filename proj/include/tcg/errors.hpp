#pragma once

#include <stdexcept>
#include <string>

namespace tcg {

struct DegenerateCubic : std::runtime_error {
  explicit DegenerateCubic(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateQuartic : std::runtime_error {
  explicit DegenerateQuartic(const std::string& what) : std::runtime_error(what) {}
};

struct DivergentZeta : std::runtime_error {
  explicit DivergentZeta(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
  NoConvergence(const std::string& what, long iters)
      : std::runtime_error(what + " (iterations: " + std::to_string(iters) + ")"),
        iterations(iters) {}
  long iterations;
};

struct MonotonicityViolation : std::runtime_error {
  MonotonicityViolation(const std::string& what, int n_value)
      : std::runtime_error(what + " at N=" + std::to_string(n_value)), n(n_value) {}
  int n;
};

}  // namespace tcg
