#include "kinemetrica/curve.hpp"

#include <algorithm>
#include <cmath>

#include "kinemetrica/errors.hpp"

namespace kinemetrica {

StepLengthLaw StepLengthLaw::constant(double c) {
  if (!(c > 0.0)) throw UsageError("constant step length must be positive");
  return {Kind::constant, c, 0.0};
}

StepLengthLaw StepLengthLaw::exponential(double mean) {
  if (!(mean > 0.0)) throw UsageError("exponential mean must be positive");
  return {Kind::exponential, mean, 0.0};
}

StepLengthLaw StepLengthLaw::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw UsageError("gamma law requires positive shape and scale");
  return {Kind::gamma, shape, scale};
}

StepLengthLaw StepLengthLaw::pareto(double x_min, double alpha) {
  if (!(x_min > 0.0) || !(alpha > 0.0))
    throw UsageError("pareto law requires positive x_min and alpha");
  return {Kind::pareto, x_min, alpha};
}

double StepLengthLaw::sample(Rng& rng) const {
  switch (kind) {
    case Kind::constant: return a;
    case Kind::exponential: return rng.exponential(a);
    case Kind::gamma: return rng.gamma(a, b);
    case Kind::pareto: return rng.pareto(a, b);
  }
  return a;
}

MeanLength StepLengthLaw::mean() const {
  switch (kind) {
    case Kind::constant: return MeanLength::of(a);
    case Kind::exponential: return MeanLength::of(a);
    case Kind::gamma: return MeanLength::of(a * b);
    case Kind::pareto:
      if (b <= 1.0) return MeanLength::infinite();
      return MeanLength::of(b * a / (b - 1.0));
  }
  return MeanLength::of(a);
}

const char* StepLengthLaw::name() const {
  switch (kind) {
    case Kind::constant: return "constant";
    case Kind::exponential: return "exponential";
    case Kind::gamma: return "gamma";
    case Kind::pareto: return "pareto";
  }
  return "constant";
}

void Curve::finish_polyline() {
  cum_.resize(vertices_.size());
  cum_[0] = 0.0;
  double cr2 = 0.0;
  for (size_t i = 1; i < vertices_.size(); ++i)
    cum_[i] = cum_[i - 1] + vertices_[i].dist(vertices_[i - 1]);
  for (const Vec& v : vertices_) cr2 = std::max(cr2, v.norm2());
  total_length_ = cum_.back();
  circumradius_ = std::sqrt(cr2);
  if (!(total_length_ > 0.0)) throw UsageError("curve has zero length");
  build_chunks();
}

void Curve::build_chunks() {
  const int nseg = static_cast<int>(vertices_.size()) - 1;
  if (nseg < 2 * SegmentChunks::leaf_fan) return;

  std::vector<SegmentChunks::Node> leaves;
  for (int first = 0; first < nseg; first += SegmentChunks::leaf_fan) {
    const int count = std::min(SegmentChunks::leaf_fan, nseg - first);
    Vec c(dim_);
    for (int s = first; s <= first + count; ++s)
      c += vertices_[static_cast<size_t>(s)];
    c *= 1.0 / (count + 1);
    double r2 = 0.0;
    for (int s = first; s <= first + count; ++s)
      r2 = std::max(r2, c.dist2(vertices_[static_cast<size_t>(s)]));
    leaves.push_back({c, std::sqrt(r2), first, count, first, count});
  }
  chunks_.levels.push_back(std::move(leaves));

  while (chunks_.levels.back().size() > 16) {
    const std::vector<SegmentChunks::Node>& below = chunks_.levels.back();
    std::vector<SegmentChunks::Node> level;
    const int n = static_cast<int>(below.size());
    for (int first = 0; first < n; first += SegmentChunks::inner_fan) {
      const int count = std::min(SegmentChunks::inner_fan, n - first);
      Vec c(dim_);
      for (int k = first; k < first + count; ++k)
        c += below[static_cast<size_t>(k)].center;
      c *= 1.0 / count;
      double r = 0.0;
      for (int k = first; k < first + count; ++k) {
        const auto& b = below[static_cast<size_t>(k)];
        r = std::max(r, c.dist(b.center) + b.radius);
      }
      const auto& first_child = below[static_cast<size_t>(first)];
      const auto& last_child = below[static_cast<size_t>(first + count - 1)];
      level.push_back({c, r, first, count, first_child.seg_first,
                       last_child.seg_first + last_child.seg_count -
                           first_child.seg_first});
    }
    chunks_.levels.push_back(std::move(level));
  }
}

Curve Curve::segment(double length, int dim) {
  if (!(length > 0.0)) throw UsageError("segment length must be positive");
  Vec a(dim), b(dim);
  a[0] = -0.5 * length;
  b[0] = 0.5 * length;
  return polyline({a, b}, false);
}

Curve Curve::polyline(std::vector<Vec> vertices, bool closed) {
  if (vertices.size() < 2) throw UsageError("polyline needs >= 2 vertices");
  const int dim = vertices.front().dim();
  for (const Vec& v : vertices)
    if (v.dim() != dim) throw UsageError("polyline vertices of mixed dimension");
  if (closed && vertices.front().dist2(vertices.back()) != 0.0)
    throw UsageError("closed polyline must repeat its first vertex last");
  Curve c;
  c.dim_ = dim;
  c.topology_ = closed ? CurveTopology::loop : CurveTopology::fiber;
  c.closed_ = closed;
  c.vertices_ = std::move(vertices);
  c.min_curvature_radius_ = 0.0;
  c.finish_polyline();
  return c;
}

Curve Curve::circle_loop(double radius, int dim) {
  if (!(radius > 0.0)) throw UsageError("circle radius must be positive");
  if (dim != 2 && dim != 3)
    throw UsageError("circle loops are supported in 2D and 3D");
  Curve c;
  c.dim_ = dim;
  c.topology_ = CurveTopology::loop;
  c.closed_ = true;
  c.is_circle_ = true;
  c.circle_radius_ = radius;
  c.total_length_ = kTwoPi * radius;
  c.circumradius_ = radius;
  c.min_curvature_radius_ = radius;
  return c;
}

Curve Curve::pearson_walk(Rng& rng, const StepLengthLaw& step_law,
                          double target_length, int dim) {
  if (!(target_length > 0.0))
    throw UsageError("walk target length must be positive");
  Curve c;
  c.dim_ = dim;
  c.topology_ = CurveTopology::fiber;
  const MeanLength mean_step = step_law.mean();
  if (!mean_step.is_infinite()) {
    const double expected = target_length / mean_step.value();
    if (expected < 1e7) c.vertices_.reserve(static_cast<size_t>(expected) + 4);
  }
  c.vertices_.push_back(Vec(dim));
  double cum = 0.0;
  Vec pos(dim);
  while (cum < target_length) {
    double step = step_law.sample(rng);
    if (!(step > 0.0)) continue;
    const double remaining = target_length - cum;
    // Clip the final step; treat rounding-level remainders as consumed so a
    // law dividing the target exactly yields the exact step count.
    const bool last = step >= remaining * (1.0 - 1e-12);
    if (last) step = remaining;
    const Vec dir = rng.isotropic_direction(dim);
    pos += dir * step;
    c.vertices_.push_back(pos);
    cum += step;
    if (last) break;
  }
  // Reference origin at the bounding-box center: any fixed choice is valid
  // under the translation-invariant kinematic measure, and this one
  // minimizes the circumradius and with it the rejection window.
  Vec lo = c.vertices_.front(), hi = c.vertices_.front();
  for (const Vec& v : c.vertices_)
    for (int i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  const Vec center = 0.5 * (lo + hi);
  for (Vec& v : c.vertices_) v -= center;
  c.finish_polyline();
  return c;
}

Curve Curve::ramified_tree(Rng& rng, int branch_count,
                           const StepLengthLaw& edge_law, int dim) {
  if (branch_count < 1) throw UsageError("tree needs branch_count >= 1");

  struct RawEdge {
    int u, v;
    double length;
  };
  std::vector<Vec> verts;
  std::vector<RawEdge> edges;
  verts.push_back(Vec(dim));
  double total = 0.0;

  auto add_edge = [&](int from) {
    double len;
    do {
      len = edge_law.sample(rng);
    } while (!(len > 0.0));
    const Vec dir = rng.isotropic_direction(dim);
    verts.push_back(verts[static_cast<size_t>(from)] + dir * len);
    edges.push_back({from, static_cast<int>(verts.size()) - 1, len});
    total += len;
  };

  add_edge(0);
  for (int b = 1; b < branch_count; ++b) {
    // Attach at a point chosen uniformly by arc length over the tree built
    // so far; mid-edge attachments split the edge.
    const double s = rng.uniform(0.0, total);
    double acc = 0.0;
    size_t e = 0;
    for (; e + 1 < edges.size(); ++e) {
      if (s < acc + edges[e].length) break;
      acc += edges[e].length;
    }
    double tau = (s - acc) / edges[e].length;
    tau = std::clamp(tau, 1e-9, 1.0 - 1e-9);
    const Vec a = verts[static_cast<size_t>(edges[e].u)];
    const Vec bpt = verts[static_cast<size_t>(edges[e].v)];
    verts.push_back(lerp(a, bpt, tau));
    const int m = static_cast<int>(verts.size()) - 1;
    const int old_v = edges[e].v;
    const double old_len = edges[e].length;
    edges[e].v = m;
    edges[e].length = tau * old_len;
    edges.push_back({m, old_v, (1.0 - tau) * old_len});
    add_edge(m);
  }

  // Canonical depth-first edge order rooted at vertex 0.
  std::vector<std::vector<int>> adj(verts.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    adj[static_cast<size_t>(edges[i].u)].push_back(static_cast<int>(i));
    adj[static_cast<size_t>(edges[i].v)].push_back(static_cast<int>(i));
  }
  Curve c;
  c.dim_ = dim;
  c.topology_ = CurveTopology::tree;
  c.vertices_ = verts;
  std::vector<bool> seen_vertex(verts.size(), false);
  std::vector<int> stack = {0};
  seen_vertex[0] = true;
  double arc = 0.0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const int ei : adj[static_cast<size_t>(u)]) {
      const RawEdge& re = edges[static_cast<size_t>(ei)];
      const int w = re.u == u ? re.v : re.u;
      if (seen_vertex[static_cast<size_t>(w)]) continue;
      seen_vertex[static_cast<size_t>(w)] = true;
      c.edges_.push_back({u, w, arc, re.length});
      arc += re.length;
      stack.push_back(w);
    }
  }
  c.total_length_ = arc;
  double cr2 = 0.0;
  for (const Vec& v : c.vertices_) cr2 = std::max(cr2, v.norm2());
  c.circumradius_ = std::sqrt(cr2);
  c.min_curvature_radius_ = 0.0;
  if (c.edges_.size() + 1 != c.vertices_.size())
    throw UsageError("internal: tree lost connectivity");
  return c;
}

Vec Curve::arc_point(double s) const {
  if (s < 0.0 || s > total_length_ * (1.0 + 1e-12))
    throw UsageError("arc_point: s outside [0, total_length]");
  s = std::min(s, total_length_);
  if (is_circle_) {
    const double psi = s / circle_radius_;
    Vec p(dim_);
    p[0] = circle_radius_ * std::cos(psi);
    p[1] = circle_radius_ * std::sin(psi);
    return p;
  }
  if (is_tree()) {
    for (const TreeEdge& e : edges_) {
      if (s <= e.arc_begin + e.length) {
        const double t = e.length > 0 ? (s - e.arc_begin) / e.length : 0.0;
        return lerp(vertices_[static_cast<size_t>(e.u)],
                    vertices_[static_cast<size_t>(e.v)], t);
      }
    }
    return vertices_[static_cast<size_t>(edges_.back().v)];
  }
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  size_t hi = std::min(cum_.size() - 1, static_cast<size_t>(it - cum_.begin()));
  if (hi == 0) hi = 1;
  const size_t lo = hi - 1;
  const double seg = cum_[hi] - cum_[lo];
  const double t = seg > 0.0 ? (s - cum_[lo]) / seg : 0.0;
  return lerp(vertices_[lo], vertices_[hi], t);
}

}  // namespace kinemetrica
