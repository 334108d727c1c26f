#pragma once

#include <cmath>
#include <cstdint>

#include "kinemetrica/errors.hpp"
#include "kinemetrica/geo.hpp"

namespace kinemetrica {

// xoshiro256** seeded through SplitMix64. Streams for parallel workers are
// derived from a root seed and a stream counter (see Rng::stream): every
// sampling cluster owns stream(seed, cluster_index), so tallies do not depend
// on which thread ran the cluster.
class Rng {
 public:
  explicit Rng(uint64_t seed) { reseed(seed); }

  static Rng stream(uint64_t root_seed, uint64_t stream_index) {
    // Feed both words through SplitMix64 so neighboring stream indices land
    // in unrelated regions of the state space.
    uint64_t z = root_seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
    Rng r(0);
    r.s_[0] = splitmix64(z);
    r.s_[1] = splitmix64(z);
    r.s_[2] = splitmix64(z);
    r.s_[3] = splitmix64(z);
    if ((r.s_[0] | r.s_[1] | r.s_[2] | r.s_[3]) == 0) r.s_[0] = 1;
    return r;
  }

  void reseed(uint64_t seed) {
    uint64_t z = seed;
    s_[0] = splitmix64(z);
    s_[1] = splitmix64(z);
    s_[2] = splitmix64(z);
    s_[3] = splitmix64(z);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    have_spare_normal_ = false;
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    // Marsaglia polar method, caching the spare deviate.
    if (have_spare_normal_) {
      have_spare_normal_ = false;
      return spare_normal_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    have_spare_normal_ = true;
    return u * m;
  }

  double exponential(double mean) {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return -mean * std::log(u);
  }

  // Marsaglia-Tsang; boosts shape < 1 through the shape+1 trick.
  double gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0)
      throw UsageError("gamma law requires positive shape and scale");
    if (shape < 1.0) {
      double u;
      do {
        u = uniform();
      } while (u == 0.0);
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v * scale;
    }
  }

  double pareto(double x_min, double alpha) {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return x_min * std::pow(u, -1.0 / alpha);
  }

  // Uniform point on the unit (dim-1)-sphere. 2D and 3D avoid trigonometry
  // (von Neumann / Marsaglia rejection); higher dimensions normalize
  // Gaussian deviates.
  Vec isotropic_direction(int dim) {
    if (dim == 2) {
      double u, v, s;
      do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
      } while (s >= 1.0 || s == 0.0);
      return Vec((u * u - v * v) / s, 2.0 * u * v / s);
    }
    if (dim == 3) {
      double u, v, s;
      do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
      } while (s >= 1.0);
      const double m = 2.0 * std::sqrt(1.0 - s);
      return Vec(u * m, v * m, 1.0 - 2.0 * s);
    }
    Vec d(dim);
    double n2;
    do {
      for (int i = 0; i < dim; ++i) d[i] = normal();
      n2 = d.norm2();
    } while (n2 == 0.0);
    d *= 1.0 / std::sqrt(n2);
    return d;
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace kinemetrica
