#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace rctrack {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double d) { return d * kPi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

// The three annotated waterborne categories. Values match the on-disk class ids.
enum class ClassId : int { ship = 1, boat = 2, vessel = 3 };

inline bool valid_class_id(int v) { return v >= 1 && v <= 3; }
const char* class_name(ClassId c);

// Axis-aligned image box, (left, top, width, height) in continuous pixels.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double center_x() const { return x + 0.5 * w; }
  double center_y() const { return y + 0.5 * h; }
  double area() const { return w * h; }

  bool valid() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) &&
           std::isfinite(h) && w > 0.0 && h > 0.0;
  }

  bool operator==(const BBox&) const = default;
};

struct Detection {
  BBox bbox;
  double confidence = 0.0;  // in [0,1]
  ClassId class_id = ClassId::ship;
  int frame = 1;  // 1-based
};

// One 4D radar return.
struct RadarPoint {
  double range = 0.0;      // m, > 0
  double azimuth = 0.0;    // rad, positive left
  double elevation = 0.0;  // rad, positive up
  double doppler = 0.0;    // m/s, signed radial velocity (positive receding)
  double power = 0.0;      // dB
  int frame = 1;
};

// Pinhole intrinsics plus the rigid radar-to-camera extrinsic.
// Radar frame: x forward, y left, z up. Camera frame: x right, y down, z forward.
struct Calibration {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int image_w = 0;
  int image_h = 0;
  Eigen::Matrix4d T_radar_to_cam = Eigen::Matrix4d::Identity();
};

// Per-class kinematic and radar signature statistics driving the simulator.
struct ClassProfile {
  ClassId class_id = ClassId::ship;
  double mean_speed = 0.0;        // m/s
  double mean_point_count = 0.0;  // radar returns per frame at 50 m
  double mean_power = 0.0;        // dB
  double min_length = 0.0;        // m
  double max_length = 0.0;        // m
};

const ClassProfile& class_profile(ClassId c);

// Intersection-over-union of two valid boxes. Symmetric, in [0,1].
double bbox_iou(const BBox& a, const BBox& b);

// Maps theta to the equivalent angle in (-pi, pi]. Throws std::invalid_argument
// on non-finite input.
double wrap_angle(double theta);

// Checks the Calibration invariants. Returns std::nullopt when valid, otherwise
// a description of the first violated constraint.
std::optional<std::string> validate_calibration(const Calibration& c);

}  // namespace rctrack
