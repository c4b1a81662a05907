#include <rctrack/types.hpp>

#include <algorithm>
#include <stdexcept>

namespace rctrack {

const char* class_name(ClassId c) {
  switch (c) {
    case ClassId::ship:
      return "ship";
    case ClassId::boat:
      return "boat";
    case ClassId::vessel:
      return "vessel";
  }
  return "unknown";
}

namespace {

// Table-derived class statistics: speeds and radar signatures per category,
// length bounds chosen to match the point-count ordering (boats smallest).
const ClassProfile kProfiles[3] = {
    {ClassId::ship, 0.97, 70.80, 14.57, 15.0, 30.0},
    {ClassId::boat, 0.90, 30.02, 11.62, 3.0, 8.0},
    {ClassId::vessel, 2.57, 75.56, 13.96, 10.0, 20.0},
};

}  // namespace

const ClassProfile& class_profile(ClassId c) {
  return kProfiles[static_cast<int>(c) - 1];
}

double bbox_iou(const BBox& a, const BBox& b) {
  const double ix = std::max(0.0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  const double inter = ix * iy;
  if (inter <= 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return inter / uni;
}

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("wrap_angle: non-finite angle");
  }
  double r = std::fmod(theta + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  return r - kPi;
}

std::optional<std::string> validate_calibration(const Calibration& c) {
  if (!(c.fx > 0.0) || !(c.fy > 0.0)) {
    return "focal length must be positive";
  }
  if (!std::isfinite(c.cx) || !std::isfinite(c.cy)) {
    return "principal point must be finite";
  }
  if (c.image_w <= 0 || c.image_h <= 0) {
    return "image dimensions must be positive";
  }
  const Eigen::Matrix4d& T = c.T_radar_to_cam;
  if (!T.allFinite()) {
    return "extrinsic must be finite";
  }
  if (T(3, 0) != 0.0 || T(3, 1) != 0.0 || T(3, 2) != 0.0 || T(3, 3) != 1.0) {
    return "extrinsic bottom row must be (0, 0, 0, 1)";
  }
  const Eigen::Matrix3d R = T.topLeftCorner<3, 3>();
  const Eigen::Matrix3d err = R.transpose() * R - Eigen::Matrix3d::Identity();
  if (err.cwiseAbs().maxCoeff() >= 1e-9) {
    return "rotation not orthonormal";
  }
  if (R.determinant() < 0.0) {
    return "improper rotation";
  }
  return std::nullopt;
}

}  // namespace rctrack
