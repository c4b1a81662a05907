#include <rctrack/radar.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace rctrack {

Point3 spherical_to_cartesian(const RadarPoint& p) {
  if (!(p.range > 0.0)) {
    throw std::invalid_argument("spherical_to_cartesian: range must be positive");
  }
  const double ce = std::cos(p.elevation);
  return {p.range * ce * std::cos(p.azimuth), p.range * ce * std::sin(p.azimuth),
          p.range * std::sin(p.elevation)};
}

std::optional<Pixel> project_to_image(const Point3& p, const Calibration& c) {
  const Eigen::Vector4d pr(p.x, p.y, p.z, 1.0);
  const Eigen::Vector4d pc = c.T_radar_to_cam * pr;
  if (pc.z() <= 0.1) return std::nullopt;
  const double u = c.cx + c.fx * pc.x() / pc.z();
  const double v = c.cy + c.fy * pc.y() / pc.z();
  if (u < 0.0 || u > static_cast<double>(c.image_w) || v < 0.0 ||
      v > static_cast<double>(c.image_h)) {
    return std::nullopt;
  }
  return Pixel{u, v};
}

std::vector<int> dbscan(const std::vector<Point3>& points, const DbscanParams& params) {
  if (!(params.eps > 0.0) || params.min_pts < 1) {
    throw std::invalid_argument("dbscan: eps must be > 0 and min_pts >= 1");
  }
  const int n = static_cast<int>(points.size());
  std::vector<int> labels(n, -1);
  if (n == 0) return labels;

  const double eps2 = params.eps * params.eps;
  auto neighbors_of = [&](int i) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j) {
      const double dx = points[i].x - points[j].x;
      const double dy = points[i].y - points[j].y;
      const double dz = points[i].z - points[j].z;
      if (dx * dx + dy * dy + dz * dz <= eps2) out.push_back(j);
    }
    return out;  // includes i itself
  };

  std::vector<char> visited(n, 0);
  int next_cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (visited[i]) continue;
    visited[i] = 1;
    std::vector<int> seeds = neighbors_of(i);
    if (static_cast<int>(seeds.size()) < params.min_pts) continue;  // noise (may
    // later be claimed as a border point by an expanding cluster)

    const int cid = next_cluster++;
    labels[i] = cid;
    std::deque<int> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      const int j = queue.front();
      queue.pop_front();
      if (labels[j] == -1) labels[j] = cid;  // border point
      if (visited[j]) continue;
      visited[j] = 1;
      labels[j] = cid;
      std::vector<int> jn = neighbors_of(j);
      if (static_cast<int>(jn.size()) >= params.min_pts) {
        queue.insert(queue.end(), jn.begin(), jn.end());
      }
    }
  }
  return labels;
}

RadarCluster extract_cluster(const std::vector<RadarPoint>& points,
                             const std::vector<Point3>& cartesian,
                             const std::vector<int>& member_indices,
                             const Calibration& calib) {
  if (member_indices.empty()) {
    throw std::invalid_argument("extract_cluster: empty member set");
  }
  RadarCluster c;
  c.member_indices = member_indices;
  c.point_count = static_cast<int>(member_indices.size());
  double sx = 0.0, sy = 0.0, sz = 0.0, sd = 0.0, sp = 0.0;
  for (int idx : member_indices) {
    sx += cartesian[idx].x;
    sy += cartesian[idx].y;
    sz += cartesian[idx].z;
    sd += points[idx].doppler;
    sp += points[idx].power;
  }
  const double inv = 1.0 / static_cast<double>(c.point_count);
  c.centroid = {sx * inv, sy * inv, sz * inv};
  c.mean_doppler = sd * inv;
  c.mean_power = sp * inv;
  c.direction = std::atan2(c.centroid.y, c.centroid.x);
  c.image_anchor = project_to_image(c.centroid, calib);
  return c;
}

std::vector<std::optional<int>> associate_clusters_to_boxes(
    const std::vector<RadarCluster>& clusters, const std::vector<Detection>& dets) {
  std::vector<std::optional<int>> det_to_cluster(dets.size());

  auto contains = [](const BBox& b, const Pixel& px) {
    const double mx = 0.1 * b.w;
    const double my = 0.1 * b.h;
    return px.u >= b.x - mx && px.u <= b.right() + mx && px.v >= b.y - my &&
           px.v <= b.bottom() + my;
  };

  // Phase 1: each cluster picks the smallest-area box containing its anchor.
  std::vector<int> cluster_to_det(clusters.size(), -1);
  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    if (!clusters[ci].image_anchor) continue;
    const Pixel& px = *clusters[ci].image_anchor;
    double best_area = std::numeric_limits<double>::infinity();
    for (size_t di = 0; di < dets.size(); ++di) {
      const BBox& b = dets[di].bbox;
      if (contains(b, px) && b.area() < best_area) {
        best_area = b.area();
        cluster_to_det[ci] = static_cast<int>(di);
      }
    }
  }

  // Phase 2: each detection keeps the strongest candidate.
  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    const int di = cluster_to_det[ci];
    if (di < 0) continue;
    const auto& cur = det_to_cluster[di];
    if (!cur || clusters[ci].mean_power > clusters[*cur].mean_power) {
      det_to_cluster[di] = static_cast<int>(ci);
    }
  }
  return det_to_cluster;
}

std::vector<RadarCluster> cluster_radar_frame(const std::vector<RadarPoint>& points,
                                              const DbscanParams& params,
                                              const Calibration& calib) {
  std::vector<Point3> cartesian(points.size());
  std::vector<Point3> flat(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    cartesian[i] = spherical_to_cartesian(points[i]);
    flat[i] = {cartesian[i].x, cartesian[i].y, 0.0};  // waterline clustering
  }
  const std::vector<int> labels = dbscan(flat, params);

  int n_clusters = 0;
  for (int l : labels) n_clusters = std::max(n_clusters, l + 1);

  std::vector<std::vector<int>> members(n_clusters);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) members[labels[i]].push_back(static_cast<int>(i));
  }

  std::vector<RadarCluster> clusters;
  clusters.reserve(n_clusters);
  for (const auto& m : members) {
    clusters.push_back(extract_cluster(points, cartesian, m, calib));
  }
  return clusters;
}

}  // namespace rctrack
