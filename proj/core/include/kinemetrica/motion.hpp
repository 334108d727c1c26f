#pragma once

#include <array>

#include "kinemetrica/geo.hpp"
#include "kinemetrica/rng.hpp"

namespace kinemetrica {

// Element of SO(n), stored as a row-major matrix. Sampled rotations are
// orthogonal with determinant +1 to 1e-10 (property-tested).
class Rotation {
 public:
  static Rotation identity(int dim);
  static Rotation angle_2d(double theta);
  static Rotation from_quaternion(double w, double x, double y, double z);
  // Haar-uniform: 2D von Neumann angle; 3D uniform unit quaternion; higher
  // dimensions Gram-Schmidt over a Gaussian matrix with a determinant fixup.
  static Rotation haar(Rng& rng, int dim);

  int dim() const { return dim_; }
  double at(int r, int c) const {
    return m_[static_cast<size_t>(r * dim_ + c)];
  }

  Vec apply(const Vec& v) const {
    Vec out(dim_);
    for (int r = 0; r < dim_; ++r) {
      double s = 0;
      for (int c = 0; c < dim_; ++c)
        s += m_[static_cast<size_t>(r * dim_ + c)] * v[c];
      out[r] = s;
    }
    return out;
  }

  // Applies the inverse rotation (the transpose).
  Vec apply_transposed(const Vec& v) const {
    Vec out(dim_);
    for (int c = 0; c < dim_; ++c) {
      double s = 0;
      for (int r = 0; r < dim_; ++r)
        s += m_[static_cast<size_t>(r * dim_ + c)] * v[r];
      out[c] = s;
    }
    return out;
  }

 private:
  explicit Rotation(int dim) : dim_(dim) {}
  std::array<double, kMaxDim * kMaxDim> m_;
  int dim_;
};

// Rotation followed by translation, carrying the curve into the window frame.
struct RigidMotion {
  Rotation rotation;
  Vec translation;

  Vec apply(const Vec& v) const {
    Vec out = rotation.apply(v);
    out += translation;
    return out;
  }
};

}  // namespace kinemetrica
