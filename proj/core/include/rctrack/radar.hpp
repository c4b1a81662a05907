#pragma once

#include <optional>
#include <vector>

#include <rctrack/types.hpp>

namespace rctrack {

// Cartesian position in a stated frame.
// Radar frame: x forward, y left, z up. Camera frame: x right, y down, z forward.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

struct DbscanParams {
  double eps = 2.5;  // m
  int min_pts = 3;
};

// Attribute summary of one radar cluster.
struct RadarCluster {
  std::vector<int> member_indices;
  Point3 centroid;                    // radar frame
  double mean_doppler = 0.0;          // m/s
  double direction = 0.0;             // rad, azimuth of centroid
  double mean_power = 0.0;            // dB
  int point_count = 0;
  std::optional<Pixel> image_anchor;  // projected centroid, when projectable
};

// The dynamic attribute vector a cluster contributes to matching.
struct ClusterDynamics {
  double v_r = 0.0;    // m/s, signed mean Doppler
  double psi = 0.0;    // rad, in (-pi, pi]
  double range = 0.0;  // m, centroid range
};

// range/azimuth/elevation -> radar-frame Cartesian. Requires range > 0.
Point3 spherical_to_cartesian(const RadarPoint& p);

// Radar-frame point -> image pixel via extrinsic + pinhole model.
// Returns nullopt when the point lands behind the camera (z <= 0.1 m in the
// camera frame) or outside the image bounds.
std::optional<Pixel> project_to_image(const Point3& p, const Calibration& c);

// Density-based clustering with Euclidean metric. Returns one label per input
// point: cluster id starting at 0, or -1 for noise. Deterministic for a given
// input order (lowest-index core point seeds first).
std::vector<int> dbscan(const std::vector<Point3>& points, const DbscanParams& params);

// Summarize a cluster from the raw points it was built from. member_indices
// must be nonempty and reference both vectors (parallel by index).
RadarCluster extract_cluster(const std::vector<RadarPoint>& points,
                             const std::vector<Point3>& cartesian,
                             const std::vector<int>& member_indices,
                             const Calibration& calib);

// Assign clusters to detection boxes by anchor containment. A cluster is a
// candidate for a detection iff its image anchor lies inside the box expanded
// by 10% per side. Each cluster goes to the smallest-area containing box; each
// detection keeps the highest-mean-power candidate. Result is indexed by
// detection and holds the chosen cluster index, or nullopt.
std::vector<std::optional<int>> associate_clusters_to_boxes(
    const std::vector<RadarCluster>& clusters, const std::vector<Detection>& dets);

// Full per-frame pipeline: spherical conversion, ground-plane (x, y) DBSCAN,
// attribute extraction. Clusters are ordered by cluster id.
std::vector<RadarCluster> cluster_radar_frame(const std::vector<RadarPoint>& points,
                                              const DbscanParams& params,
                                              const Calibration& calib);

inline ClusterDynamics cluster_dynamics(const RadarCluster& c) {
  const Point3& p = c.centroid;
  return {c.mean_doppler, c.direction,
          std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z)};
}

}  // namespace rctrack
