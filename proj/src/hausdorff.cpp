#include "mvfp/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "mvfp/errors.hpp"

namespace mvfp {

namespace {

void require_level_one(const FiniteSet& s, const char* which) {
  if (s.level() != 1)
    fail(ErrorCode::LevelMismatch,
         std::string(which) + " must be a level-1 set here");
}

template <class Elem, class Dist>
Scalar directed_generic(const std::vector<Elem>& A, const std::vector<Elem>& B,
                        Dist dist) {
  std::optional<Scalar> outer;
  for (const Elem& a : A) {
    std::optional<Scalar> inner;
    for (const Elem& b : B) {
      Scalar d = dist(a, b);
      if (!inner || Scalar::compare(d, *inner) == std::strong_ordering::less)
        inner = std::move(d);
    }
    if (!outer || Scalar::compare(*inner, *outer) == std::strong_ordering::greater)
      outer = std::move(inner);
  }
  return *outer;
}

// --------------------------------------------------------------------------
// kd-tree nearest neighbour for float-mode dense points. Distances are
// evaluated exactly like Metric::distance (same axis order), so the selected
// values are bit-identical to the plain scan.

struct KdTree {
  const std::vector<std::vector<double>>& pts;
  bool chebyshev;
  std::vector<std::size_t> order;
  struct Node {
    int left = -1, right = -1;
    std::size_t index = 0;
    std::size_t axis = 0;
  };
  std::vector<Node> nodes;
  int root = -1;

  KdTree(const std::vector<std::vector<double>>& p, bool cheby)
      : pts(p), chebyshev(cheby) {
    order.resize(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    nodes.reserve(pts.size());
    root = build(0, order.size(), 0);
  }

  int build(std::size_t lo, std::size_t hi, std::size_t axis) {
    if (lo >= hi) return -1;
    std::size_t mid = (lo + hi) / 2;
    std::nth_element(order.begin() + lo, order.begin() + mid, order.begin() + hi,
                     [&](std::size_t a, std::size_t b) {
                       return pts[a][axis] < pts[b][axis];
                     });
    int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[id].index = order[mid];
    nodes[id].axis = axis;
    std::size_t next = (axis + 1) % pts.front().size();
    int l = build(lo, mid, next);
    int r = build(mid + 1, hi, next);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }

  double metric_dist(const std::vector<double>& q, const std::vector<double>& p) const {
    if (chebyshev) {
      double best = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i)
        best = std::max(best, std::fabs(q[i] - p[i]));
      return best;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      double d = q[i] - p[i];
      acc += d * d;
    }
    return std::sqrt(acc);
  }

  void search(int id, const std::vector<double>& q, double& best) const {
    if (id < 0) return;
    const Node& n = nodes[id];
    best = std::min(best, metric_dist(q, pts[n.index]));
    double delta = q[n.axis] - pts[n.index][n.axis];
    int near = delta < 0 ? n.left : n.right;
    int far = delta < 0 ? n.right : n.left;
    search(near, q, best);
    if (std::fabs(delta) < best) search(far, q, best);
  }

  double nearest(const std::vector<double>& q) const {
    double best = std::numeric_limits<double>::infinity();
    search(root, q, best);
    return best;
  }
};

std::vector<std::vector<double>> as_doubles(const FiniteSet& s) {
  std::vector<std::vector<double>> out;
  out.reserve(s.size());
  for (const Point& p : s.points()) {
    std::vector<double> row;
    row.reserve(p.dimension());
    for (const Scalar& c : p.coords()) row.push_back(c.to_double());
    out.push_back(std::move(row));
  }
  return out;
}

Scalar directed_early_break(const Metric& metric, const FiniteSet& A,
                            const FiniteSet& B) {
  std::optional<Scalar> cmax;
  for (const Point& a : A.points()) {
    std::optional<Scalar> inner;
    bool dominated = false;
    for (const Point& b : B.points()) {
      Scalar d = metric.distance(a, b);
      // Once some b is at most the current outer max, this a cannot raise
      // the result; skip the rest of B.
      if (cmax && Scalar::compare(d, *cmax) != std::strong_ordering::greater) {
        dominated = true;
        break;
      }
      if (!inner || Scalar::compare(d, *inner) == std::strong_ordering::less)
        inner = std::move(d);
    }
    if (dominated) continue;
    if (!cmax || Scalar::compare(*inner, *cmax) == std::strong_ordering::greater)
      cmax = std::move(inner);
  }
  return *cmax;
}

}  // namespace

Scalar directed_hausdorff(const Metric& metric, const FiniteSet& A,
                          const FiniteSet& B) {
  require_level_one(A, "first argument");
  require_level_one(B, "second argument");
  return directed_generic(A.points(), B.points(),
                          [&](const Point& a, const Point& b) {
                            return metric.distance(a, b);
                          });
}

Scalar hausdorff(const Metric& metric, const FiniteSet& A, const FiniteSet& B) {
  const Scalar& ab = directed_hausdorff(metric, A, B);
  const Scalar& ba = directed_hausdorff(metric, B, A);
  return scalar_max(ab, ba);
}

Scalar hausdorff_accelerated(const Metric& metric, const FiniteSet& A,
                             const FiniteSet& B) {
  require_level_one(A, "first argument");
  require_level_one(B, "second argument");
  if (metric.kind() == Metric::Kind::ExplicitTable)
    fail(ErrorCode::InvalidArgument,
         "accelerated path needs the euclidean or sup metric");
  for (const Point& p : A.points())
    if (p.repr() != Point::Repr::Dense)
      fail(ErrorCode::IncompatiblePoints, "accelerated path needs dense points");
  for (const Point& p : B.points())
    if (p.repr() != Point::Repr::Dense)
      fail(ErrorCode::IncompatiblePoints, "accelerated path needs dense points");

  const Point& first = A.points().front();
  bool float_mode = first.mode() == NumericMode::Float64;
  std::size_t dim = first.dimension();
  bool uniform_dim = true;
  for (const Point& p : A.points()) uniform_dim &= p.dimension() == dim;
  for (const Point& p : B.points()) uniform_dim &= p.dimension() == dim;
  constexpr std::size_t kIndexThreshold = 32;
  constexpr std::size_t kMaxIndexedDim = 8;

  if (float_mode && uniform_dim && dim <= kMaxIndexedDim &&
      std::min(A.size(), B.size()) >= kIndexThreshold) {
    bool cheby = metric.kind() == Metric::Kind::SupNorm;
    auto pa = as_doubles(A);
    auto pb = as_doubles(B);
    KdTree ta(pa, cheby), tb(pb, cheby);
    double best = 0.0;
    for (const auto& q : pa) best = std::max(best, tb.nearest(q));
    for (const auto& q : pb) best = std::max(best, ta.nearest(q));
    return Scalar::real(best);
  }

  const Scalar& ab = directed_early_break(metric, A, B);
  const Scalar& ba = directed_early_break(metric, B, A);
  return scalar_max(ab, ba);
}

Scalar hyperspace_distance(const Metric& metric, const FiniteSet& U,
                           const FiniteSet& V) {
  if (U.level() != V.level())
    fail(ErrorCode::LevelMismatch,
         "hyperspace distance needs equal levels, got " +
             std::to_string(U.level()) + " and " + std::to_string(V.level()));
  if (U.level() == 1) return hausdorff(metric, U, V);
  auto ground = [&](const FiniteSet& u, const FiniteSet& v) {
    return hyperspace_distance(metric, u, v);
  };
  const Scalar uv = directed_generic(U.sets(), V.sets(), ground);
  const Scalar vu = directed_generic(V.sets(), U.sets(), ground);
  return scalar_max(uv, vu);
}

}  // namespace mvfp
