#pragma once
// Shared plumbing: error types, compensated summation, deterministic parallel map.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uniscale {

using cplx = std::complex<double>;

// Thrown for bad arguments / malformed inputs (CLI exit code 2).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a computation fails numerically: overflow, divergence,
// tolerance not reached (CLI exit code 3).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Kahan compensated accumulator.  All norm/inner-product reductions go through
// this in a fixed index order so results do not depend on scheduling.
struct kahan_acc {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double sum() const { return s; }
};

inline double kahan_total(const std::vector<double>& xs) {
  kahan_acc a;
  for (double x : xs) a.add(x);
  return a.sum();
}

// Worker cap from UNISCALE_THREADS (default 1).  Affects speed only: every
// output slot is computed by a pure function of the inputs, so the result is
// identical for any thread count.
int thread_count();
void set_thread_count(int n);  // 0 = re-read environment

// Runs fn(i) for i in [0, n).  Chunks are contiguous; each index is touched
// exactly once.  fn must only write state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace uniscale
