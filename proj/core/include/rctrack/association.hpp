#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <rctrack/radar.hpp>
#include <rctrack/types.hpp>

namespace rctrack {

// Fusion cost parameters: cost = alpha*Dhat_radar + (1-alpha)*D_iou on the
// linear branch, 1 whenever Dhat_radar > theta_rcm or D_iou > theta_iou.
struct RcmParams {
  double alpha = 0.7;
  double lambda = 1.2;
  double theta_rcm = 0.5;
  double theta_iou = 0.5;
};

// Variance floors keep the whitened distance well conditioned: commodity
// marine radars resolve Doppler in steps of a few tenths of m/s, so residuals
// below ~1 m/s are measurement grain rather than disagreement; likewise the
// bearing of a cluster centroid wanders within the hull's angular extent,
// which spans tens of degrees at working ranges.
inline constexpr double kVarVFloor = 1.0;  // (1.0 m/s)^2
inline const double kVarPsiFloor = deg2rad(15.0) * deg2rad(15.0);

// Per-track radar memory: exponentially forgotten mean/variance of the
// (radial velocity, bearing) attribute vector.
struct TrackDynamics {
  double v_r = 0.0;
  double psi = 0.0;
  double var_v = kVarVFloor;
  double var_psi = 0.0;  // set from the floor on first observation
  int sample_count = 0;
};

// Row-major track x detection costs, all in [0,1]; 1 encodes infeasible.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  static CostMatrix zeros(int r, int c) {
    return {r, c, std::vector<double>(static_cast<size_t>(r) * c, 0.0)};
  }
  double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }
  bool empty() const { return rows == 0 || cols == 0; }
};

struct Assignment {
  std::vector<std::pair<int, int>> matches;  // (row, col), rows ascending
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
};

inline constexpr double kAssignGate = 0.999;

double iou_distance(const BBox& track_box, const BBox& det_box);

// sqrt of the variance-weighted squared residuals of (v_r, psi); the angle
// residual is wrapped. Requires at least one radar sample on the track.
double radar_mahalanobis(const TrackDynamics& t, const ClusterDynamics& c);

// Dhat = 1 - exp(-lambda * d), mapping [0, inf) onto [0, 1).
double normalize_radar_distance(double d, double lambda);

double rcm_cost(double d_hat, double d_iou, const RcmParams& p);

CostMatrix iou_cost_matrix(const std::vector<BBox>& track_boxes,
                           const std::vector<BBox>& det_boxes, double gate_iou);

// Fused cost matrix. det_dynamics[j] holds the dynamics of the radar cluster
// associated with detection j (nullopt when none). Pairs where either side
// lacks radar evidence fall back to the IoU-only cost gated at theta_iou.
CostMatrix rcm_cost_matrix(const std::vector<BBox>& track_boxes,
                           const std::vector<TrackDynamics>& track_dynamics,
                           const std::vector<BBox>& det_boxes,
                           const std::vector<std::optional<ClusterDynamics>>& det_dynamics,
                           const RcmParams& p);

// Minimum-total-cost one-to-one assignment (shortest augmenting path, optimal).
// Assigned pairs with cost >= gate are demoted to unmatched afterwards.
// Tie-break: among equal-total-cost optima the lexicographically smallest
// (row, col) pair list is returned.
Assignment linear_assignment(const CostMatrix& m, double gate = kAssignGate);

// Exponential forgetting (factor 0.9) of the radar attribute memory; the
// first observation initializes mean to the observation and variances to the
// floors.
TrackDynamics update_track_dynamics(const TrackDynamics& t, const ClusterDynamics& c);

}  // namespace rctrack
