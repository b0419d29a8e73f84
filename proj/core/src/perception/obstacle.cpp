#include "platoon/perception/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace platoon {

namespace {

Vec2 to_xy(const LidarPoint& p) { return {p.forward(), p.lateral()}; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<PointCluster> cluster_points(const LidarScan& scan, double eps,
                                         int min_points) {
  const int n = static_cast<int>(scan.points.size());
  std::vector<PointCluster> out;
  if (n == 0) return out;

  UnionFind uf(n);
  const double eps2 = eps * eps;
  for (int i = 0; i < n; ++i) {
    const Vec2 pi = to_xy(scan.points[i]);
    for (int j = i + 1; j < n; ++j) {
      const Vec2 pj = to_xy(scan.points[j]);
      const Vec2 d = pj - pi;
      if (d.x * d.x + d.y * d.y <= eps2) uf.unite(i, j);
    }
  }

  // Points arrive bearing-ordered; grouping by root preserves that order.
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  for (const auto& g : groups) {
    if (static_cast<int>(g.size()) < min_points) continue;
    PointCluster c;
    c.points.reserve(g.size());
    for (int i : g) c.points.push_back(scan.points[i]);
    out.push_back(std::move(c));
  }
  return out;
}

CircleFit fit_circle(const PointCluster& cluster) {
  CircleFit fit;
  if (cluster.points.empty()) return fit;
  const Vec2 a = to_xy(cluster.points.front());
  const Vec2 b = to_xy(cluster.points.back());
  fit.center = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  fit.radius = 0.5 * (b - a).norm();
  return fit;
}

ObstacleTracker::ObstacleTracker(ObstacleTrackerConfig cfg) : cfg_(cfg) {}

void ObstacleTracker::update(const std::vector<CircleFit>& detections) {
  std::vector<bool> used(detections.size(), false);
  for (auto& trk : tracks_) {
    int best = -1;
    double best_d = cfg_.gate;
    for (std::size_t i = 0; i < detections.size(); ++i) {
      if (used[i]) continue;
      const double d = (detections[i].center - trk.center).norm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      used[best] = true;
      const auto& det = detections[best];
      const double a = cfg_.alpha;
      trk.center = {a * det.center.x + (1 - a) * trk.center.x,
                    a * det.center.y + (1 - a) * trk.center.y};
      trk.radius = a * det.radius + (1 - a) * trk.radius;
      trk.missed = 0;
      ++trk.age;
    } else {
      ++trk.missed;
    }
  }
  std::erase_if(tracks_,
                [&](const TrackedObstacle& t) { return t.missed > cfg_.max_missed; });
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (used[i]) continue;
    TrackedObstacle t;
    t.id = next_id_++;
    t.center = detections[i].center;
    t.radius = detections[i].radius;
    t.age = 1;
    tracks_.push_back(t);
  }
}

std::optional<TrackedObstacle> ObstacleTracker::primary() const {
  std::optional<TrackedObstacle> best;
  for (const auto& t : tracks_) {
    if (t.center.x <= 0.0) continue;
    if (!best || t.center.x < best->center.x) best = t;
  }
  return best;
}

std::optional<double> gap_from_obstacle(const ObstacleTracker& tracker) {
  const auto p = tracker.primary();
  if (!p) return std::nullopt;
  return p->center.x - p->radius;
}

}  // namespace platoon
