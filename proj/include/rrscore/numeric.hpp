#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "rrscore/rational.hpp"

namespace rrscore {

// Neumaier's compensated summation. Result depends on add order, so callers
// that need reproducibility must fix the order (see parallel_chunks).
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Scalar-generic accumulator: compensated for double, plain for exact types.
template <class S>
class Accumulator {
 public:
  void add(const S& x) { value_ += x; }
  const S& value() const { return value_; }

 private:
  S value_{};
};

template <>
class Accumulator<double> {
 public:
  void add(double x) { sum_.add(x); }
  double value() const { return sum_.value(); }

 private:
  NeumaierSum sum_;
};

inline double to_double_value(double x) { return x; }
inline double to_double_value(const Rat& x) { return to_double(x); }

unsigned effective_threads(unsigned requested);

// Runs fn(chunk) for chunk in [0, chunk_count) on worker threads. The chunk
// decomposition is a pure function of chunk_count, so per-chunk results
// folded in chunk order are identical for every worker count.
void parallel_chunks(std::uint64_t chunk_count, unsigned threads,
                     const std::function<void(std::uint64_t)>& fn);

}  // namespace rrscore
