#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>

namespace kinemetrica {

// Largest supported ambient dimension for geometric sampling. Closed-form
// constants (unit_sphere_area, eta) work for any dimension.
inline constexpr int kMaxDim = 8;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Euclidean vector with runtime dimension and inline storage.
class Vec {
 public:
  Vec() : dim_(0) {}
  explicit Vec(int dim) : dim_(dim) {
    assert(dim >= 0 && dim <= kMaxDim);
    c_.fill(0.0);
  }
  Vec(double x, double y) : dim_(2) { c_ = {x, y, 0, 0, 0, 0, 0, 0}; }
  Vec(double x, double y, double z) : dim_(3) { c_ = {x, y, z, 0, 0, 0, 0, 0}; }

  static Vec zero(int dim) { return Vec(dim); }

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }

  double dot(const Vec& o) const {
    double s = 0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  double dist2(const Vec& o) const {
    double s = 0;
    for (int i = 0; i < dim_; ++i) {
      const double d = c_[i] - o.c_[i];
      s += d * d;
    }
    return s;
  }
  double dist(const Vec& o) const { return std::sqrt(dist2(o)); }

 private:
  std::array<double, kMaxDim> c_;
  int dim_;
};

inline Vec lerp(const Vec& a, const Vec& b, double t) {
  Vec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

// 2D cross product (z component).
inline double cross2(const Vec& a, const Vec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

}  // namespace kinemetrica
