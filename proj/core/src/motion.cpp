#include "kinemetrica/motion.hpp"

#include <cmath>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

Rotation Rotation::identity(int dim) {
  Rotation r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      r.m_[static_cast<size_t>(i * dim + j)] = i == j ? 1.0 : 0.0;
  return r;
}

Rotation Rotation::angle_2d(double theta) {
  Rotation r(2);
  const double c = std::cos(theta), s = std::sin(theta);
  r.m_[0] = c;
  r.m_[1] = -s;
  r.m_[2] = s;
  r.m_[3] = c;
  return r;
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0)) throw UsageError("zero quaternion");
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  Rotation r(3);
  r.m_[0] = 1 - 2 * (y * y + z * z);
  r.m_[1] = 2 * (x * y - z * w);
  r.m_[2] = 2 * (x * z + y * w);
  r.m_[3] = 2 * (x * y + z * w);
  r.m_[4] = 1 - 2 * (x * x + z * z);
  r.m_[5] = 2 * (y * z - x * w);
  r.m_[6] = 2 * (x * z - y * w);
  r.m_[7] = 2 * (y * z + x * w);
  r.m_[8] = 1 - 2 * (x * x + y * y);
  return r;
}

Rotation Rotation::haar(Rng& rng, int dim) {
  if (dim == 2) {
    // Uniform angle without trigonometry.
    double u, v, s;
    do {
      u = 2.0 * rng.uniform() - 1.0;
      v = 2.0 * rng.uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double c = (u * u - v * v) / s;
    const double sn = 2.0 * u * v / s;
    Rotation r(2);
    r.m_[0] = c;
    r.m_[1] = -sn;
    r.m_[2] = sn;
    r.m_[3] = c;
    return r;
  }
  if (dim == 3) {
    double q[4];
    double n2;
    do {
      n2 = 0.0;
      for (double& qi : q) {
        qi = rng.normal();
        n2 += qi * qi;
      }
    } while (n2 == 0.0);
    return from_quaternion(q[0], q[1], q[2], q[3]);
  }
  if (dim < 2 || dim > kMaxDim)
    throw UsageError("rotation dimension out of range");
  // Modified Gram-Schmidt on a Gaussian matrix.
  Rotation r(dim);
  for (;;) {
    for (int i = 0; i < dim * dim; ++i) r.m_[static_cast<size_t>(i)] = rng.normal();
    bool ok = true;
    for (int row = 0; row < dim && ok; ++row) {
      double* cur = &r.m_[static_cast<size_t>(row * dim)];
      for (int prev = 0; prev < row; ++prev) {
        const double* p = &r.m_[static_cast<size_t>(prev * dim)];
        double dot = 0;
        for (int c = 0; c < dim; ++c) dot += cur[c] * p[c];
        for (int c = 0; c < dim; ++c) cur[c] -= dot * p[c];
      }
      double n2 = 0;
      for (int c = 0; c < dim; ++c) n2 += cur[c] * cur[c];
      if (n2 < 1e-24) {
        ok = false;
        break;
      }
      const double inv = 1.0 / std::sqrt(n2);
      for (int c = 0; c < dim; ++c) cur[c] *= inv;
    }
    if (!ok) continue;
    // Determinant of an orthogonal matrix is +-1; compute its sign by
    // Gaussian elimination on a copy and flip the last row if needed.
    std::array<double, kMaxDim * kMaxDim> a = r.m_;
    double det = 1.0;
    for (int col = 0; col < dim; ++col) {
      int piv = col;
      for (int row = col + 1; row < dim; ++row)
        if (std::abs(a[static_cast<size_t>(row * dim + col)]) >
            std::abs(a[static_cast<size_t>(piv * dim + col)]))
          piv = row;
      if (piv != col) {
        for (int c = 0; c < dim; ++c)
          std::swap(a[static_cast<size_t>(col * dim + c)],
                    a[static_cast<size_t>(piv * dim + c)]);
        det = -det;
      }
      const double d = a[static_cast<size_t>(col * dim + col)];
      det *= d;
      if (d == 0.0) break;
      for (int row = col + 1; row < dim; ++row) {
        const double f = a[static_cast<size_t>(row * dim + col)] / d;
        for (int c = col; c < dim; ++c)
          a[static_cast<size_t>(row * dim + c)] -=
              f * a[static_cast<size_t>(col * dim + c)];
      }
    }
    if (det < 0.0)
      for (int c = 0; c < dim; ++c)
        r.m_[static_cast<size_t>((dim - 1) * dim + c)] *= -1.0;
    return r;
  }
}

}  // namespace kinemetrica
