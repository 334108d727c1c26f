#pragma once

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "kinemetrica/errors.hpp"
#include "kinemetrica/geo.hpp"

namespace kinemetrica {

// Relative discriminant threshold below which a segment-boundary contact is
// treated as a tangential graze (no crossing). Tangencies carry zero
// kinematic measure, so dropping them does not bias estimators.
inline constexpr double kTangencyEps = 1e-12;

struct BodyMeasures {
  double volume = 0.0;
  double surface = 0.0;
  int euler_char = 1;
  double min_curvature_radius = 0.0;
  double max_curvature_radius = 0.0;
  std::optional<double> mean_curvature_integral;  // 3D bodies only
};

namespace shapes {

// Appends the transversal crossing parameters of segment p0 + t (p1 - p0),
// t in (0,1), with the sphere |x| = r. Grazing contacts are skipped.
void sphere_crossings(const Vec& p0, const Vec& p1, double r,
                      std::vector<double>& out);

struct Ball {
  int dim;
  double radius;

  bool contains(const Vec& p) const { return p.norm2() <= radius * radius; }
  void crossings(const Vec& p0, const Vec& p1, std::vector<double>& out) const {
    sphere_crossings(p0, p1, radius, out);
  }
};

struct Box {
  int dim;
  std::array<double, kMaxDim> half;  // half extents

  bool contains(const Vec& p) const {
    for (int i = 0; i < dim; ++i)
      if (std::abs(p[i]) > half[static_cast<size_t>(i)]) return false;
    return true;
  }
  void crossings(const Vec& p0, const Vec& p1, std::vector<double>& out) const;
};

// Crossings with both boundary spheres of a hollow shape, merged into
// increasing order so parity state machines see them in arc order.
void two_sphere_crossings(const Vec& p0, const Vec& p1, double r_in,
                          double r_out, std::vector<double>& out);

struct Annulus {
  double r_in, r_out;

  bool contains(const Vec& p) const {
    const double n2 = p.norm2();
    return n2 >= r_in * r_in && n2 <= r_out * r_out;
  }
  void crossings(const Vec& p0, const Vec& p1, std::vector<double>& out) const {
    two_sphere_crossings(p0, p1, r_in, r_out, out);
  }
};

struct SphericalShell {
  double r_in, r_out;

  bool contains(const Vec& p) const {
    const double n2 = p.norm2();
    return n2 >= r_in * r_in && n2 <= r_out * r_out;
  }
  void crossings(const Vec& p0, const Vec& p1, std::vector<double>& out) const {
    two_sphere_crossings(p0, p1, r_in, r_out, out);
  }
};

struct Polygon {
  std::vector<Vec> vertices;  // counter-clockwise, closed implicitly

  bool contains(const Vec& p) const;
  void crossings(const Vec& p0, const Vec& p1, std::vector<double>& out) const;
};

using Shape = std::variant<Ball, Box, Annulus, SphericalShell, Polygon>;

}  // namespace shapes

// An observation window: origin-centered shape with exact analytic measures.
// Immutable after construction; safe to share across workers.
class Body {
 public:
  static Body ball(int dim, double radius);
  static Body box(const std::vector<double>& edge_lengths);
  static Body annulus(double r_in, double r_out);           // 2D
  static Body polygon(std::vector<Vec> vertices);           // 2D simple polygon
  static Body spherical_shell(double r_in, double r_out);   // 3D

  int dimension() const { return dim_; }
  const BodyMeasures& measures() const { return measures_; }
  double volume() const { return measures_.volume; }
  double surface() const { return measures_.surface; }
  int euler_char() const { return measures_.euler_char; }
  double circumradius() const { return circumradius_; }

  // Axis-aligned half extents of the bounding box about the body origin.
  const std::array<double, kMaxDim>& bbox_half() const { return bbox_half_; }
  double diameter() const { return 2.0 * circumradius_; }

  bool contains(const Vec& p) const;

  // Ordered transversal crossing parameters of the open segment (p0, p1)
  // with the body boundary.
  void boundary_crossings(const Vec& p0, const Vec& p1,
                          std::vector<double>& out) const;
  std::vector<double> boundary_crossings(const Vec& p0, const Vec& p1) const;

  Body convex_hull() const;

  const shapes::Shape& shape() const { return shape_; }
  std::string shape_name() const;

 private:
  Body(shapes::Shape shape, int dim);

  shapes::Shape shape_;
  int dim_;
  BodyMeasures measures_;
  double circumradius_ = 0.0;
  std::array<double, kMaxDim> bbox_half_{};
};

}  // namespace kinemetrica
