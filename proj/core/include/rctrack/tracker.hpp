#pragma once

#include <array>
#include <vector>

#include <rctrack/association.hpp>
#include <rctrack/kalman.hpp>
#include <rctrack/radar.hpp>
#include <rctrack/types.hpp>

namespace rctrack {

enum class MatcherKind { iou, rcm };

struct TrackerParams {
  double tau_high = 0.5;
  double tau_low = 0.1;
  double tau_new = 0.2;
  int max_lost = 100;
  double stage1_gate = 0.5;  // D_iou gate for first-stage matching
  MatcherKind matcher = MatcherKind::iou;
  RcmParams rcm;
  DbscanParams dbscan;
};

enum class TrackStatus { tentative, active, lost, removed };

struct Track {
  int id = 0;
  ClassId class_id = ClassId::ship;
  KfState kf;
  TrackDynamics dynamics;
  TrackStatus status = TrackStatus::tentative;
  int last_frame = 0;  // last frame with a matched detection
  int age = 0;         // frames since birth
  int hits = 0;        // matched detections so far
  double last_confidence = 0.0;
  std::array<int, 3> class_votes{0, 0, 0};
};

struct FrameInput {
  int frame = 1;
  std::vector<Detection> detections;
  std::vector<RadarPoint> radar_points;
};

struct TrackRecord {
  int id = 0;
  ClassId class_id = ClassId::ship;
  BBox bbox;
  double confidence = 0.0;
};

struct FrameOutput {
  int frame = 1;
  std::vector<TrackRecord> tracks;
};

// Two-stage tracking-by-detection: high-confidence detections match first
// against all live tracks, low-confidence ones are recovered second via the
// configured matcher (plain gated IoU, or the radar-fused cost).
class Tracker {
 public:
  Tracker(const TrackerParams& params, const Calibration& calib);

  // Frames must arrive in strictly increasing order.
  FrameOutput step(const FrameInput& input);

  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerParams& params() const { return params_; }

 private:
  int new_track(const Detection& det, bool sequence_start);
  void mark_matched(Track& t, const Detection& det, int frame);

  TrackerParams params_;
  Calibration calib_;
  std::vector<Track> tracks_;
  int next_id_ = 1;
  int last_frame_ = 0;
  bool started_ = false;
};

std::vector<FrameOutput> run_sequence(const std::vector<FrameInput>& inputs,
                                      const TrackerParams& params,
                                      const Calibration& calib);

}  // namespace rctrack
