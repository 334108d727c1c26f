#include "kinemetrica/stats.hpp"

#include <cmath>

namespace kinemetrica {

double Welford::std_error() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

void MultiWelford::reset(int width) {
  width_ = width;
  n_ = 0;
  mean_.assign(static_cast<size_t>(width), 0.0);
  m2_.assign(static_cast<size_t>(width) * static_cast<size_t>(width + 1) / 2,
             0.0);
  delta_.assign(static_cast<size_t>(width), 0.0);
}

void MultiWelford::add(std::span<const double> x) {
  ++n_;
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (int i = 0; i < width_; ++i) {
    delta_[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - mean_[static_cast<size_t>(i)];
    mean_[static_cast<size_t>(i)] += delta_[static_cast<size_t>(i)] * inv_n;
  }
  // m2 += delta_old * delta_new^T (symmetrized running co-moments)
  for (int i = 0; i < width_; ++i) {
    const double di = delta_[static_cast<size_t>(i)];
    for (int j = i; j < width_; ++j)
      m2_[idx(i, j)] += di * (x[static_cast<size_t>(j)] - mean_[static_cast<size_t>(j)]);
  }
}

void MultiWelford::merge(const MultiWelford& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    const auto keep = delta_;
    *this = o;
    delta_ = keep;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  for (int i = 0; i < width_; ++i)
    delta_[static_cast<size_t>(i)] =
        o.mean_[static_cast<size_t>(i)] - mean_[static_cast<size_t>(i)];
  for (int i = 0; i < width_; ++i)
    for (int j = i; j < width_; ++j)
      m2_[idx(i, j)] += o.m2_[idx(i, j)] +
                        delta_[static_cast<size_t>(i)] *
                            delta_[static_cast<size_t>(j)] * na * nb / n;
  for (int i = 0; i < width_; ++i)
    mean_[static_cast<size_t>(i)] += delta_[static_cast<size_t>(i)] * nb / n;
  n_ = static_cast<std::int64_t>(n);
}

double MultiWelford::covariance(int i, int j) const {
  return n_ > 1 ? m2_[idx(i, j)] / static_cast<double>(n_ - 1) : 0.0;
}

DerivedStatistic derived_statistic(
    const MultiWelford& stats,
    const std::function<double(std::span<const double>)>& f) {
  const int k = stats.width();
  std::vector<double> m(stats.means().begin(), stats.means().end());
  DerivedStatistic out;
  out.value = f(m);
  if (stats.count() < 2) return out;

  std::vector<double> grad(static_cast<size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    const double h = std::max(1e-6 * std::abs(m[static_cast<size_t>(i)]), 1e-12);
    const double saved = m[static_cast<size_t>(i)];
    m[static_cast<size_t>(i)] = saved + h;
    const double up = f(m);
    m[static_cast<size_t>(i)] = saved - h;
    const double down = f(m);
    m[static_cast<size_t>(i)] = saved;
    grad[static_cast<size_t>(i)] = (up - down) / (2.0 * h);
  }

  double var = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      var += grad[static_cast<size_t>(i)] * grad[static_cast<size_t>(j)] *
             stats.covariance(i, j);
  var /= static_cast<double>(stats.count());
  out.std_error = var > 0.0 ? std::sqrt(var) : 0.0;
  return out;
}

DerivedStatistic ratio_statistic(const MultiWelford& stats, int num, int den) {
  return derived_statistic(stats, [num, den](std::span<const double> m) {
    const double d = m[static_cast<size_t>(den)];
    return d != 0.0 ? m[static_cast<size_t>(num)] / d : 0.0;
  });
}

}  // namespace kinemetrica
