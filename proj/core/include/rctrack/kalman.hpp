#pragma once

#include <Eigen/Dense>

#include <rctrack/types.hpp>

namespace rctrack {

// Constant-velocity filter state over an image-plane box.
// Layout: (cx, cy, a, h, vcx, vcy, va, vh) with a = w/h aspect ratio and
// velocities in units per frame.
struct KfState {
  Eigen::Matrix<double, 8, 1> mean = Eigen::Matrix<double, 8, 1>::Zero();
  Eigen::Matrix<double, 8, 8> cov = Eigen::Matrix<double, 8, 8>::Identity();
};

// Noise scale conventions shared by init/predict/update.
inline constexpr double kKfSigmaPos = 1.0 / 20.0;
inline constexpr double kKfSigmaVel = 1.0 / 160.0;

KfState kf_init(const BBox& b);
KfState kf_predict(const KfState& s);
KfState kf_update(const KfState& s, const BBox& z);
BBox state_to_bbox(const KfState& s);

// Number of times a non-positive predicted aspect/height had to be floored
// since process start (each occurrence also warns on stderr once).
long kf_floor_count();

}  // namespace rctrack
