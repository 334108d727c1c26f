#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

// Streaming mean/variance (Welford) with Chan's parallel merge.
class Welford {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  void merge(const Welford& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double d = o.mean_ - mean_;
    const std::int64_t n = n_ + o.n_;
    mean_ += d * static_cast<double>(o.n_) / static_cast<double>(n);
    m2_ += o.m2_ + d * d * static_cast<double>(n_) *
                       static_cast<double>(o.n_) / static_cast<double>(n);
    n_ = n;
  }

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }
  double std_error() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Streaming mean vector and covariance matrix of a fixed-width sample
// vector, mergeable across chunks (merge order changes results only at
// rounding level; the chunk-merge associativity tests pin <= 1e-10).
class MultiWelford {
 public:
  explicit MultiWelford(int width = 0) { reset(width); }

  void reset(int width);
  int width() const { return width_; }
  std::int64_t count() const { return n_; }

  void add(std::span<const double> x);
  void merge(const MultiWelford& o);

  double mean(int i) const { return mean_[static_cast<size_t>(i)]; }
  std::span<const double> means() const { return mean_; }
  double sum(int i) const {
    return mean_[static_cast<size_t>(i)] * static_cast<double>(n_);
  }
  // Sample covariance of components i and j.
  double covariance(int i, int j) const;
  double variance(int i) const { return covariance(i, i); }

  // For bit-exactness checks.
  std::span<const double> raw_state() const { return m2_; }

 private:
  size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<size_t>(i) * static_cast<size_t>(width_) -
           static_cast<size_t>(i) * static_cast<size_t>(i + 1) / 2 +
           static_cast<size_t>(j);
  }

  int width_ = 0;
  std::int64_t n_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;      // upper-triangular co-moment matrix
  std::vector<double> delta_;   // scratch for add/merge
};

// Smooth statistic f of the sample mean vector, with a delta-method standard
// error from the sample covariance (numeric central-difference gradient).
struct DerivedStatistic {
  double value = 0.0;
  double std_error = 0.0;
};

DerivedStatistic derived_statistic(
    const MultiWelford& stats,
    const std::function<double(std::span<const double>)>& f);

// mean(num)/mean(den) with its delta-method standard error.
DerivedStatistic ratio_statistic(const MultiWelford& stats, int num, int den);

}  // namespace kinemetrica
