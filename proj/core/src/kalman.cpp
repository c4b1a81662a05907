#include <rctrack/kalman.hpp>

#include <atomic>
#include <cstdio>
#include <stdexcept>

namespace rctrack {

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat48 = Eigen::Matrix<double, 4, 8>;

std::atomic<long> g_floor_count{0};

// Aspect ratio gets fixed (h-independent) noise; everything else scales with
// the box height so the filter is size-invariant.
constexpr double kInitAspectStd = 1e-2;
constexpr double kInitAspectVelStd = 1e-5;
constexpr double kProcAspectStd = 1e-2;
constexpr double kProcAspectVelStd = 1e-5;
constexpr double kMeasAspectStd = 1e-1;

Mat8 transition() {
  Mat8 f = Mat8::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;
  return f;
}

void floor_state(Vec8& mean) {
  if (mean(2) <= 0.0 || mean(3) <= 0.0) {
    const long n = g_floor_count.fetch_add(1);
    if (n == 0) {
      std::fprintf(stderr,
                   "rctrack: warning: non-positive predicted aspect/height floored\n");
    }
    if (mean(2) <= 0.0) mean(2) = 1e-3;
    if (mean(3) <= 0.0) mean(3) = 1e-3;
  }
}

}  // namespace

long kf_floor_count() { return g_floor_count.load(); }

KfState kf_init(const BBox& b) {
  if (!b.valid()) throw std::invalid_argument("kf_init: invalid box");
  KfState s;
  s.mean << b.center_x(), b.center_y(), b.w / b.h, b.h, 0.0, 0.0, 0.0, 0.0;

  const double h = b.h;
  Vec8 std_dev;
  std_dev << 2.0 * kKfSigmaPos * h, 2.0 * kKfSigmaPos * h, kInitAspectStd,
      2.0 * kKfSigmaPos * h, 10.0 * kKfSigmaVel * h, 10.0 * kKfSigmaVel * h,
      kInitAspectVelStd, 10.0 * kKfSigmaVel * h;
  s.cov = std_dev.array().square().matrix().asDiagonal();
  return s;
}

KfState kf_predict(const KfState& s) {
  const Mat8 f = transition();
  KfState out;
  out.mean = f * s.mean;
  floor_state(out.mean);

  const double h = s.mean(3);
  Vec8 q_std;
  q_std << kKfSigmaPos * h, kKfSigmaPos * h, kProcAspectStd, kKfSigmaPos * h,
      kKfSigmaVel * h, kKfSigmaVel * h, kProcAspectVelStd, kKfSigmaVel * h;
  const Mat8 q = q_std.array().square().matrix().asDiagonal();

  out.cov = f * s.cov * f.transpose() + q;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

KfState kf_update(const KfState& s, const BBox& z) {
  if (!z.valid()) throw std::invalid_argument("kf_update: invalid box");
  Mat48 hmat = Mat48::Zero();
  for (int i = 0; i < 4; ++i) hmat(i, i) = 1.0;

  const double h = s.mean(3);
  Vec4 r_std;
  r_std << kKfSigmaPos * h, kKfSigmaPos * h, kMeasAspectStd, kKfSigmaPos * h;
  const Mat4 r = r_std.array().square().matrix().asDiagonal();

  Vec4 meas;
  meas << z.center_x(), z.center_y(), z.w / z.h, z.h;

  const Mat4 innov_cov = hmat * s.cov * hmat.transpose() + r;
  const Eigen::Matrix<double, 8, 4> gain =
      s.cov * hmat.transpose() * innov_cov.inverse();

  KfState out;
  out.mean = s.mean + gain * (meas - hmat * s.mean);
  floor_state(out.mean);

  // Joseph form keeps the covariance positive definite under roundoff.
  const Mat8 ikh = Mat8::Identity() - gain * hmat;
  out.cov = ikh * s.cov * ikh.transpose() + gain * r * gain.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

BBox state_to_bbox(const KfState& s) {
  const double h = s.mean(3);
  const double w = s.mean(2) * h;
  return {s.mean(0) - 0.5 * w, s.mean(1) - 0.5 * h, w, h};
}

}  // namespace rctrack
