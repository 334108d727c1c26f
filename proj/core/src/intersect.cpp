#include "kinemetrica/intersect.hpp"

#include <algorithm>
#include <cmath>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

namespace {

using shapes::Annulus;
using shapes::Ball;
using shapes::Box;
using shapes::Polygon;
using shapes::SphericalShell;

// ---------------------------------------------------------------------------
// Polylines
// ---------------------------------------------------------------------------

// Radially symmetric windows are intersected in the curve's own frame: the
// body center moves to -R^T t and no vertex needs transforming.
template <class S>
struct Shifted {
  const S& base;
  Vec center;

  bool contains(const Vec& p) const { return base.contains(p - center); }
  void crossings(const Vec& p0, const Vec& p1,
                 std::vector<double>& out) const {
    base.crossings(p0 - center, p1 - center, out);
  }
};

// `tf` maps curve-frame points into the frame the shape lives in;
// `prune_center` is the body center in that frame.
template <class Shape, class Transform>
void polyline_intersect(const Shape& shape, const Vec& prune_center,
                        double body_circumradius, const Curve& curve,
                        const Transform& tf, IntersectScratch& scratch,
                        IntersectionResult& out) {
  const std::vector<Vec>& vs = curve.vertices();
  const std::vector<double>& cum = curve.cumulative_length();
  const int nseg = static_cast<int>(vs.size()) - 1;

  Vec prev = tf(vs[0]);
  bool state = shape.contains(prev);
  const bool start_inside = state;
  double open_begin = 0.0;

  auto run_segments = [&](int first, int count) {
    for (int s = first; s < first + count; ++s) {
      const Vec cur = tf(vs[static_cast<size_t>(s) + 1]);
      scratch.ts.clear();
      shape.crossings(prev, cur, scratch.ts);
      const double seg_len = cum[static_cast<size_t>(s) + 1] - cum[static_cast<size_t>(s)];
      for (const double t : scratch.ts) {
        const double pos = cum[static_cast<size_t>(s)] + t * seg_len;
        if (state) {
          out.pieces.push_back({open_begin, pos});
        } else {
          open_begin = pos;
        }
        state = !state;
        ++out.crossing_count;
      }
      prev = cur;
    }
  };

  const SegmentChunks& ch = curve.chunks();
  if (ch.empty()) {
    run_segments(0, nseg);
  } else {
    auto visit = [&](auto&& self, int level, int idx) -> void {
      const SegmentChunks::Node& n =
          ch.levels[static_cast<size_t>(level)][static_cast<size_t>(idx)];
      const double reach = n.radius + body_circumradius;
      if (tf(n.center).dist2(prune_center) > reach * reach) {
        // Entirely outside the body's circumball: no crossings in here.
        prev = tf(vs[static_cast<size_t>(n.seg_first + n.seg_count)]);
        return;
      }
      if (level == 0) {
        run_segments(n.seg_first, n.seg_count);
        return;
      }
      for (int k = n.child_first; k < n.child_first + n.child_count; ++k)
        self(self, level - 1, k);
    };
    const int top = static_cast<int>(ch.levels.size()) - 1;
    const int top_count = static_cast<int>(ch.levels[static_cast<size_t>(top)].size());
    for (int i = 0; i < top_count; ++i) visit(visit, top, i);
  }

  if (state) out.pieces.push_back({open_begin, cum[static_cast<size_t>(nseg)]});

  if (out.crossing_count == 0) {
    out.fully_inside = start_inside;
    out.fully_outside = !start_inside;
  } else if (curve.is_closed() && start_inside && out.pieces.size() >= 2 &&
             out.pieces.front().begin == 0.0) {
    // Merge the wrap-around piece of a closed polyline.
    const ArcInterval first = out.pieces.front();
    ArcInterval& last = out.pieces.back();
    last.end = first.end + cum[static_cast<size_t>(nseg)];
    out.pieces.erase(out.pieces.begin());
  }

  double len = 0.0;
  for (const ArcInterval& p : out.pieces) len += p.length();
  out.inside_length = len;
  out.component_count = static_cast<int>(out.pieces.size());
}

// ---------------------------------------------------------------------------
// Analytic circles
// ---------------------------------------------------------------------------

struct CircleFrame {
  Vec e1, e2;   // rotated in-plane basis
  Vec center;   // translation
  double rho;
};

CircleFrame circle_frame(const Curve& curve, const RigidMotion& g) {
  const int dim = curve.dimension();
  Vec x(dim), y(dim);
  x[0] = 1.0;
  y[1] = 1.0;
  return {g.rotation.apply(x), g.rotation.apply(y), g.translation,
          curve.circle_radius()};
}

Vec circle_point(const CircleFrame& f, double psi) {
  Vec p = f.center;
  p += f.e1 * (f.rho * std::cos(psi));
  p += f.e2 * (f.rho * std::sin(psi));
  return p;
}

double wrap_angle(double psi) {
  psi = std::fmod(psi, kTwoPi);
  if (psi < 0.0) psi += kTwoPi;
  return psi;
}

// Arc of the moving circle lying within |x| <= r, described as
// cos(psi - phi) >= q. Returns -1 empty, +1 full, 0 partial (alpha set).
int radial_arc(double a_sq, double rho, double h, double r, double* alpha) {
  const double q = (a_sq - r * r) / (2.0 * rho * h);
  if (q >= 1.0) return -1;
  if (q <= -1.0) return +1;
  *alpha = std::acos(q);
  return 0;
}

void emit_circle_piece(const Curve& curve, double begin_psi, double end_psi,
                       IntersectionResult& out) {
  const double rho = curve.circle_radius();
  double b = wrap_angle(begin_psi);
  const double len = end_psi - begin_psi;
  out.pieces.push_back({rho * b, rho * (b + len)});
}

void circle_vs_radial(const Curve& curve, const RigidMotion& g, double r_in,
                      double r_out, IntersectionResult& out) {
  const CircleFrame f = circle_frame(curve, g);
  const double a1 = f.center.dot(f.e1);
  const double a2 = f.center.dot(f.e2);
  const double h = std::hypot(a1, a2);
  const double a_sq = f.center.norm2() + f.rho * f.rho;
  const double total = curve.total_length();

  auto member = [&](double dist2) {
    return dist2 >= r_in * r_in && dist2 <= r_out * r_out;
  };

  if (h < 1e-14 * f.rho) {
    // Concentric: the circle stays at constant distance from the origin.
    out.fully_inside = member(a_sq);
    out.fully_outside = !out.fully_inside;
    if (out.fully_inside) {
      out.pieces.push_back({0.0, total});
      out.inside_length = total;
      out.component_count = 1;
    }
    return;
  }

  // phi is the angle of closest approach to the origin.
  const double phi = std::atan2(a2, a1) + kPi;
  double alpha_out = 0.0, alpha_in = 0.0;
  const int outer = radial_arc(a_sq, f.rho, h, r_out, &alpha_out);
  const int inner =
      r_in > 0.0 ? radial_arc(a_sq, f.rho, h, r_in, &alpha_in) : -1;

  if (outer == -1 || inner == +1) {
    // Never within the outer radius, or trapped inside the hole.
    out.fully_outside = true;
    return;
  }
  if (outer == +1 && inner == -1) {
    out.fully_inside = true;
    out.pieces.push_back({0.0, total});
    out.inside_length = total;
    out.component_count = 1;
    return;
  }
  if (outer == +1) {
    // Entirely within the outer ball, cutting through the hole once.
    emit_circle_piece(curve, phi + alpha_in, phi - alpha_in + kTwoPi, out);
    out.crossing_count = 2;
  } else if (inner == -1) {
    emit_circle_piece(curve, phi - alpha_out, phi + alpha_out, out);
    out.crossing_count = 2;
  } else {
    emit_circle_piece(curve, phi - alpha_out, phi - alpha_in, out);
    emit_circle_piece(curve, phi + alpha_in, phi + alpha_out, out);
    out.crossing_count = 4;
  }
  double len = 0.0;
  for (const ArcInterval& p : out.pieces) len += p.length();
  out.inside_length = len;
  out.component_count = static_cast<int>(out.pieces.size());
}

// Circle against a polygonal boundary (2D): gather crossing angles edge by
// edge, then classify arcs by midpoint membership.
template <class Shape>
void circle_vs_edges(const Shape& shape, const Vec* poly_verts, int n_verts,
                     const Curve& curve, const RigidMotion& g,
                     IntersectScratch& scratch, IntersectionResult& out) {
  const CircleFrame f = circle_frame(curve, g);
  scratch.angles.clear();
  for (int i = 0, j = n_verts - 1; i < n_verts; j = i++) {
    const Vec& a = poly_verts[j];
    const Vec& b = poly_verts[i];
    const Vec e = b - a;
    const Vec w = a - f.center;
    const double qa = e.norm2();
    if (qa == 0.0) continue;
    const double qb = w.dot(e);
    const double qc = w.norm2() - f.rho * f.rho;
    const double disc = qb * qb - qa * qc;
    if (disc <= kTangencyEps * qa * f.rho * f.rho) continue;
    const double sd = std::sqrt(disc);
    for (const double s : {(-qb - sd) / qa, (-qb + sd) / qa}) {
      if (s <= 0.0 || s >= 1.0) continue;
      Vec x = a;
      x += e * s;
      const Vec d = x - f.center;
      scratch.angles.push_back(wrap_angle(std::atan2(d.dot(f.e2), d.dot(f.e1))));
    }
  }

  const double total = curve.total_length();
  if (scratch.angles.empty()) {
    const bool in = shape.contains(circle_point(f, 0.0));
    out.fully_inside = in;
    out.fully_outside = !in;
    if (in) {
      out.pieces.push_back({0.0, total});
      out.inside_length = total;
      out.component_count = 1;
    }
    return;
  }
  std::sort(scratch.angles.begin(), scratch.angles.end());
  const int m = static_cast<int>(scratch.angles.size());
  for (int i = 0; i < m; ++i) {
    const double a0 = scratch.angles[static_cast<size_t>(i)];
    const double a1 = i + 1 < m ? scratch.angles[static_cast<size_t>(i) + 1]
                                : scratch.angles[0] + kTwoPi;
    if (shape.contains(circle_point(f, 0.5 * (a0 + a1))))
      out.pieces.push_back({f.rho * a0, f.rho * a1});
  }
  out.crossing_count = m;
  double len = 0.0;
  for (const ArcInterval& p : out.pieces) len += p.length();
  out.inside_length = len;
  out.component_count = static_cast<int>(out.pieces.size());
}

void circle_intersect(const Body& body, const Curve& curve,
                      const RigidMotion& g, IntersectScratch& scratch,
                      IntersectionResult& out) {
  const shapes::Shape& sh = body.shape();
  if (const auto* ball = std::get_if<Ball>(&sh)) {
    circle_vs_radial(curve, g, 0.0, ball->radius, out);
  } else if (const auto* ann = std::get_if<Annulus>(&sh)) {
    circle_vs_radial(curve, g, ann->r_in, ann->r_out, out);
  } else if (const auto* shell = std::get_if<SphericalShell>(&sh)) {
    circle_vs_radial(curve, g, shell->r_in, shell->r_out, out);
  } else if (const auto* box = std::get_if<Box>(&sh)) {
    if (body.dimension() != 2)
      throw CapabilityError(
          "circle loops against 3D boxes are not supported (use balls or "
          "shells)");
    const double hx = box->half[0], hy = box->half[1];
    const Vec corners[4] = {Vec(-hx, -hy), Vec(hx, -hy), Vec(hx, hy),
                            Vec(-hx, hy)};
    circle_vs_edges(*box, corners, 4, curve, g, scratch, out);
  } else {
    const auto& poly = std::get<Polygon>(sh);
    circle_vs_edges(poly, poly.vertices.data(),
                    static_cast<int>(poly.vertices.size()), curve, g, scratch,
                    out);
  }
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

int uf_find(std::vector<int>& parent, int i) {
  while (parent[static_cast<size_t>(i)] != i) {
    parent[static_cast<size_t>(i)] =
        parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
    i = parent[static_cast<size_t>(i)];
  }
  return i;
}

template <class Shape>
void tree_intersect(const Shape& shape, const Curve& curve,
                    const RigidMotion& g, IntersectScratch& scratch,
                    IntersectionResult& out) {
  const std::vector<Vec>& vs = curve.vertices();
  const std::vector<TreeEdge>& edges = curve.tree_edges();
  const size_t nv = vs.size();

  scratch.points.clear();
  scratch.flags.clear();
  scratch.points.reserve(nv);
  for (const Vec& v : vs) scratch.points.push_back(g.apply(v));
  for (const Vec& p : scratch.points)
    scratch.flags.push_back(shape.contains(p) ? 1 : 0);

  scratch.uf_parent.clear();
  scratch.vertex_slot.assign(nv, -1);

  bool any_outside_vertex = false;
  for (const TreeEdge& e : edges) {
    const Vec& pu = scratch.points[static_cast<size_t>(e.u)];
    const Vec& pv = scratch.points[static_cast<size_t>(e.v)];
    bool state = scratch.flags[static_cast<size_t>(e.u)] != 0;
    if (!state) any_outside_vertex = true;
    scratch.ts.clear();
    shape.crossings(pu, pv, scratch.ts);
    double open_begin = e.arc_begin;
    bool touches_u = state;
    for (const double t : scratch.ts) {
      const double pos = e.arc_begin + t * e.length;
      if (state) {
        const int id = static_cast<int>(out.pieces.size());
        out.pieces.push_back({open_begin, pos});
        scratch.uf_parent.push_back(id);
        if (touches_u && scratch.flags[static_cast<size_t>(e.u)]) {
          int& slot = scratch.vertex_slot[static_cast<size_t>(e.u)];
          if (slot < 0)
            slot = id;
          else
            scratch.uf_parent[static_cast<size_t>(uf_find(scratch.uf_parent, id))] =
                uf_find(scratch.uf_parent, slot);
        }
        touches_u = false;
      } else {
        open_begin = pos;
      }
      state = !state;
      ++out.crossing_count;
    }
    if (state) {
      const int id = static_cast<int>(out.pieces.size());
      out.pieces.push_back({open_begin, e.arc_begin + e.length});
      scratch.uf_parent.push_back(id);
      if (touches_u && scratch.flags[static_cast<size_t>(e.u)]) {
        int& slot = scratch.vertex_slot[static_cast<size_t>(e.u)];
        if (slot < 0)
          slot = id;
        else
          scratch.uf_parent[static_cast<size_t>(uf_find(scratch.uf_parent, id))] =
              uf_find(scratch.uf_parent, slot);
      }
      // The interval reaches the far vertex v.
      int& slot = scratch.vertex_slot[static_cast<size_t>(e.v)];
      if (slot < 0)
        slot = id;
      else
        scratch.uf_parent[static_cast<size_t>(uf_find(scratch.uf_parent, id))] =
            uf_find(scratch.uf_parent, slot);
    }
  }

  double len = 0.0;
  for (const ArcInterval& p : out.pieces) len += p.length();
  out.inside_length = len;

  int components = 0;
  for (size_t i = 0; i < scratch.uf_parent.size(); ++i)
    if (uf_find(scratch.uf_parent, static_cast<int>(i)) == static_cast<int>(i))
      ++components;
  out.component_count = components;
  out.fully_inside = out.crossing_count == 0 && !any_outside_vertex &&
                     !out.pieces.empty();
  out.fully_outside = out.pieces.empty();
}

}  // namespace

void intersect_into(const Body& body, const Curve& curve,
                    const RigidMotion& motion, IntersectScratch& scratch,
                    IntersectionResult& out) {
  if (body.dimension() != curve.dimension())
    throw UsageError("intersect: body and curve dimensions differ");
  out.reset();
  if (curve.is_circle()) {
    circle_intersect(body, curve, motion, scratch, out);
    return;
  }
  std::visit(
      [&](const auto& shape) {
        using S = std::decay_t<decltype(shape)>;
        if (curve.is_tree()) {
          tree_intersect(shape, curve, motion, scratch, out);
        } else if constexpr (std::is_same_v<S, Ball> ||
                             std::is_same_v<S, Annulus> ||
                             std::is_same_v<S, SphericalShell>) {
          Vec center = motion.rotation.apply_transposed(motion.translation);
          center *= -1.0;
          const Shifted<S> shifted{shape, center};
          polyline_intersect(shifted, center, body.circumradius(), curve,
                             [](const Vec& v) { return v; }, scratch, out);
        } else {
          const Vec origin(body.dimension());
          polyline_intersect(shape, origin, body.circumradius(), curve,
                             [&motion](const Vec& v) { return motion.apply(v); },
                             scratch, out);
        }
      },
      body.shape());
}

IntersectionResult intersect(const Body& body, const Curve& curve,
                             const RigidMotion& motion) {
  IntersectScratch scratch;
  IntersectionResult out;
  intersect_into(body, curve, motion, scratch, out);
  return out;
}

int piece_count_as_chi(const IntersectionResult& result, const Curve& curve) {
  if (curve.topology() == CurveTopology::loop)
    return result.fully_inside ? 0 : static_cast<int>(result.pieces.size());
  return result.component_count;
}

}  // namespace kinemetrica
