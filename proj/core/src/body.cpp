#include "kinemetrica/body.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinemetrica/theory.hpp"

namespace kinemetrica {

namespace shapes {

void sphere_crossings(const Vec& p0, const Vec& p1, double r,
                      std::vector<double>& out) {
  // Quadratic in t for |p0 + t d|^2 = r^2, normalized so the discriminant
  // carries units of length^4.
  Vec d = p1 - p0;
  const double a = d.norm2();
  if (a == 0.0) return;
  const double b = p0.dot(d);
  const double c = p0.norm2() - r * r;
  double disc = b * b - a * c;
  // Tangential grazes count as no crossing.
  if (disc <= kTangencyEps * a * r * r) return;
  disc = std::sqrt(disc);
  const double t0 = (-b - disc) / a;
  const double t1 = (-b + disc) / a;
  if (t0 > 0.0 && t0 < 1.0) out.push_back(t0);
  if (t1 > 0.0 && t1 < 1.0) out.push_back(t1);
}

void two_sphere_crossings(const Vec& p0, const Vec& p1, double r_in,
                          double r_out, std::vector<double>& out) {
  const size_t first = out.size();
  sphere_crossings(p0, p1, r_in, out);
  sphere_crossings(p0, p1, r_out, out);
  std::sort(out.begin() + static_cast<long>(first), out.end());
}

void Box::crossings(const Vec& p0, const Vec& p1,
                    std::vector<double>& out) const {
  const size_t first = out.size();
  Vec d = p1 - p0;
  for (int i = 0; i < dim; ++i) {
    if (d[i] == 0.0) continue;
    const double h = half[static_cast<size_t>(i)];
    for (const double side : {-h, h}) {
      const double t = (side - p0[i]) / d[i];
      if (t <= 0.0 || t >= 1.0) continue;
      bool on_face = true;
      for (int j = 0; j < dim && on_face; ++j) {
        if (j == i) continue;
        const double x = p0[j] + t * d[j];
        if (std::abs(x) > half[static_cast<size_t>(j)]) on_face = false;
      }
      if (on_face) out.push_back(t);
    }
  }
  std::sort(out.begin() + first, out.end());
  // A segment passing exactly through an edge reports the same t twice.
  out.erase(std::unique(out.begin() + first, out.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-15; }),
            out.end());
}

bool Polygon::contains(const Vec& p) const {
  // Even-odd crossing number against a horizontal ray.
  bool inside = false;
  const size_t n = vertices.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec& a = vertices[j];
    const Vec& b = vertices[i];
    if ((b[1] > p[1]) != (a[1] > p[1])) {
      const double x = b[0] + (p[1] - b[1]) * (a[0] - b[0]) / (a[1] - b[1]);
      if (p[0] < x) inside = !inside;
    }
  }
  return inside;
}

void Polygon::crossings(const Vec& p0, const Vec& p1,
                        std::vector<double>& out) const {
  const size_t first = out.size();
  const Vec d = p1 - p0;
  const size_t n = vertices.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec& a = vertices[j];
    const Vec& b = vertices[i];
    const Vec e = b - a;
    const double denom = cross2(d, e);
    if (denom == 0.0) continue;  // parallel or collinear: tangential
    const double t = cross2(a - p0, e) / denom;
    if (t <= 0.0 || t >= 1.0) continue;
    const double u = cross2(a - p0, d) / denom;
    if (u <= 0.0 || u >= 1.0) continue;  // endpoint grazes skipped
    out.push_back(t);
  }
  std::sort(out.begin() + first, out.end());
}

}  // namespace shapes

namespace {

double sq(double x) { return x * x; }

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Vec> convex_hull_of(std::vector<Vec> pts) {
  // Andrew monotone chain; returns counter-clockwise hull.
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& a, const Vec& b) {
                          return a[0] == b[0] && a[1] == b[1];
                        }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) throw UsageError("convex hull needs at least 3 distinct points");
  std::vector<Vec> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower &&
           cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

void validate_simple_polygon(const std::vector<Vec>& v) {
  const size_t n = v.size();
  if (n < 3) throw UsageError("polygon needs at least 3 vertices");
  for (size_t i = 0; i < n; ++i) {
    const Vec& a0 = v[i];
    const Vec& a1 = v[(i + 1) % n];
    if (a0.dist2(a1) == 0.0) throw UsageError("polygon has a zero-length edge");
    for (size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (shared vertex).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const Vec& b0 = v[j];
      const Vec& b1 = v[(j + 1) % n];
      const Vec d = a1 - a0, e = b1 - b0;
      const double den = cross2(d, e);
      if (den == 0.0) continue;
      const double t = cross2(b0 - a0, e) / den;
      const double u = cross2(b0 - a0, d) / den;
      if (t > 0 && t < 1 && u > 0 && u < 1)
        throw UsageError("polygon is self-intersecting");
    }
  }
}

}  // namespace

Body::Body(shapes::Shape shape, int dim) : shape_(std::move(shape)), dim_(dim) {
  using namespace shapes;
  if (dim < 2 || dim > kMaxDim)
    throw UsageError("body dimension must be in [2, " +
                     std::to_string(kMaxDim) + "]");
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Ball>) {
          const double r = s.radius;
          const double area = theory::unit_sphere_area(dim - 1);
          measures_.volume = area / dim * std::pow(r, dim);
          measures_.surface = area * std::pow(r, dim - 1);
          measures_.euler_char = 1;
          measures_.min_curvature_radius = r;
          measures_.max_curvature_radius = r;
          if (dim == 3) measures_.mean_curvature_integral = 4.0 * kPi * r;
          circumradius_ = r;
          for (int i = 0; i < dim; ++i) bbox_half_[static_cast<size_t>(i)] = r;
        } else if constexpr (std::is_same_v<S, Box>) {
          double vol = 1.0, sum_r2 = 0.0;
          for (int i = 0; i < dim; ++i) {
            vol *= 2.0 * s.half[static_cast<size_t>(i)];
            sum_r2 += sq(s.half[static_cast<size_t>(i)]);
            bbox_half_[static_cast<size_t>(i)] = s.half[static_cast<size_t>(i)];
          }
          double surf = 0.0;
          for (int i = 0; i < dim; ++i)
            surf += 2.0 * vol / (2.0 * s.half[static_cast<size_t>(i)]);
          measures_.volume = vol;
          measures_.surface = surf;
          measures_.euler_char = 1;
          measures_.min_curvature_radius = 0.0;  // corners
          measures_.max_curvature_radius = kInf; // flat faces
          if (dim == 3)
            measures_.mean_curvature_integral =
                kTwoPi * (s.half[0] + s.half[1] + s.half[2]);
          circumradius_ = std::sqrt(sum_r2);
        } else if constexpr (std::is_same_v<S, Annulus>) {
          measures_.volume = kPi * (sq(s.r_out) - sq(s.r_in));
          measures_.surface = kTwoPi * (s.r_out + s.r_in);
          measures_.euler_char = 0;
          measures_.min_curvature_radius = s.r_in;
          measures_.max_curvature_radius = s.r_out;
          circumradius_ = s.r_out;
          bbox_half_[0] = bbox_half_[1] = s.r_out;
        } else if constexpr (std::is_same_v<S, SphericalShell>) {
          measures_.volume =
              4.0 / 3.0 * kPi * (s.r_out * sq(s.r_out) - s.r_in * sq(s.r_in));
          measures_.surface = 4.0 * kPi * (sq(s.r_out) + sq(s.r_in));
          measures_.euler_char = 2;
          measures_.min_curvature_radius = s.r_in;
          measures_.max_curvature_radius = s.r_out;
          // Outer boundary contributes 4 pi r_out, the concave inner one
          // -4 pi r_in.
          measures_.mean_curvature_integral = 4.0 * kPi * (s.r_out - s.r_in);
          circumradius_ = s.r_out;
          bbox_half_[0] = bbox_half_[1] = bbox_half_[2] = s.r_out;
        } else if constexpr (std::is_same_v<S, Polygon>) {
          double area2 = 0.0, perim = 0.0, cr2 = 0.0;
          double hx = 0.0, hy = 0.0;
          const size_t n = s.vertices.size();
          for (size_t i = 0, j = n - 1; i < n; j = i++) {
            area2 += cross2(s.vertices[j], s.vertices[i]);
            perim += s.vertices[j].dist(s.vertices[i]);
            cr2 = std::max(cr2, s.vertices[i].norm2());
            hx = std::max(hx, std::abs(s.vertices[i][0]));
            hy = std::max(hy, std::abs(s.vertices[i][1]));
          }
          measures_.volume = 0.5 * area2;
          measures_.surface = perim;
          measures_.euler_char = 1;
          measures_.min_curvature_radius = 0.0;
          measures_.max_curvature_radius = kInf;
          circumradius_ = std::sqrt(cr2);
          bbox_half_[0] = hx;
          bbox_half_[1] = hy;
        }
      },
      shape_);
  if (!(measures_.volume > 0.0) || !(measures_.surface > 0.0))
    throw UsageError("body must have positive volume and surface");
}

Body Body::ball(int dim, double radius) {
  if (!(radius > 0.0)) throw UsageError("ball radius must be positive");
  return Body(shapes::Ball{dim, radius}, dim);
}

Body Body::box(const std::vector<double>& edge_lengths) {
  const int dim = static_cast<int>(edge_lengths.size());
  if (dim < 2 || dim > kMaxDim)
    throw UsageError("box dimension must be in [2, " + std::to_string(kMaxDim) +
                     "]");
  shapes::Box b{dim, {}};
  for (int i = 0; i < dim; ++i) {
    if (!(edge_lengths[static_cast<size_t>(i)] > 0.0))
      throw UsageError("box edge lengths must be positive");
    b.half[static_cast<size_t>(i)] = 0.5 * edge_lengths[static_cast<size_t>(i)];
  }
  return Body(std::move(b), dim);
}

Body Body::annulus(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in))
    throw UsageError("annulus requires 0 < r_in < r_out");
  return Body(shapes::Annulus{r_in, r_out}, 2);
}

Body Body::polygon(std::vector<Vec> vertices) {
  for (const Vec& v : vertices)
    if (v.dim() != 2) throw UsageError("polygon vertices must be 2D");
  // Drop a repeated closing vertex if present.
  if (vertices.size() > 1 &&
      vertices.front().dist2(vertices.back()) == 0.0)
    vertices.pop_back();
  validate_simple_polygon(vertices);
  double area2 = 0.0;
  const size_t n = vertices.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++)
    area2 += cross2(vertices[j], vertices[i]);
  if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());
  return Body(shapes::Polygon{std::move(vertices)}, 2);
}

Body Body::spherical_shell(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in))
    throw UsageError("spherical shell requires 0 < r_in < r_out");
  return Body(shapes::SphericalShell{r_in, r_out}, 3);
}

bool Body::contains(const Vec& p) const {
  if (p.dim() != dim_)
    throw UsageError("contains: point dimension does not match body");
  return std::visit([&](const auto& s) { return s.contains(p); }, shape_);
}

void Body::boundary_crossings(const Vec& p0, const Vec& p1,
                              std::vector<double>& out) const {
  if (p0.dim() != dim_ || p1.dim() != dim_)
    throw UsageError("boundary_crossings: point dimension mismatch");
  if (p0.dist2(p1) == 0.0)
    throw UsageError("boundary_crossings: endpoints must differ");
  const size_t first = out.size();
  std::visit([&](const auto& s) { s.crossings(p0, p1, out); }, shape_);
  std::sort(out.begin() + first, out.end());
}

std::vector<double> Body::boundary_crossings(const Vec& p0,
                                             const Vec& p1) const {
  std::vector<double> out;
  boundary_crossings(p0, p1, out);
  return out;
}

Body Body::convex_hull() const {
  using namespace shapes;
  if (std::holds_alternative<Ball>(shape_) ||
      std::holds_alternative<Box>(shape_))
    return *this;
  if (const auto* a = std::get_if<Annulus>(&shape_))
    return Body::ball(2, a->r_out);
  if (const auto* s = std::get_if<SphericalShell>(&shape_))
    return Body::ball(3, s->r_out);
  const auto& poly = std::get<Polygon>(shape_);
  return Body::polygon(convex_hull_of(poly.vertices));
}

std::string Body::shape_name() const {
  using namespace shapes;
  return std::visit(
      [&](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Ball>)
          return dim_ == 2 ? "disk" : (dim_ == 3 ? "sphere" : "ball");
        else if constexpr (std::is_same_v<S, Box>)
          return "box";
        else if constexpr (std::is_same_v<S, Annulus>)
          return "annulus";
        else if constexpr (std::is_same_v<S, SphericalShell>)
          return "spherical-shell";
        else
          return "polygon";
      },
      shape_);
}

}  // namespace kinemetrica
