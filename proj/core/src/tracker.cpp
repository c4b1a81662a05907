#include <rctrack/tracker.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rctrack {

Tracker::Tracker(const TrackerParams& params, const Calibration& calib)
    : params_(params), calib_(calib) {
  if (!(params.tau_low >= 0.0 && params.tau_low < params.tau_new &&
        params.tau_new <= params.tau_high && params.tau_high <= 1.0)) {
    throw std::invalid_argument("tracker: need 0 <= tau_low < tau_new <= tau_high <= 1");
  }
  if (params.max_lost < 1) throw std::invalid_argument("tracker: max_lost must be >= 1");
  if (params.matcher == MatcherKind::rcm) {
    if (auto err = validate_calibration(calib)) {
      throw std::invalid_argument("tracker: " + *err);
    }
  }
}

int Tracker::new_track(const Detection& det, bool sequence_start) {
  Track t;
  t.id = next_id_++;
  t.class_id = det.class_id;
  t.class_votes[static_cast<int>(det.class_id) - 1] = 1;
  t.kf = kf_init(det.bbox);
  t.status = sequence_start ? TrackStatus::active : TrackStatus::tentative;
  t.last_frame = det.frame;
  t.age = 1;
  t.hits = 1;
  t.last_confidence = det.confidence;
  tracks_.push_back(t);
  return static_cast<int>(tracks_.size()) - 1;
}

void Tracker::mark_matched(Track& t, const Detection& det, int frame) {
  t.kf = kf_update(t.kf, det.bbox);
  t.status = TrackStatus::active;
  t.last_frame = frame;
  t.hits += 1;
  t.last_confidence = det.confidence;
  t.class_votes[static_cast<int>(det.class_id) - 1] += 1;
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (t.class_votes[k] > t.class_votes[best]) best = k;
  }
  t.class_id = static_cast<ClassId>(best + 1);
}

FrameOutput Tracker::step(const FrameInput& input) {
  if (started_ && input.frame <= last_frame_) {
    throw std::invalid_argument("tracker: frame " + std::to_string(input.frame) +
                                " arrived after frame " + std::to_string(last_frame_));
  }
  const bool sequence_start = !started_;
  started_ = true;
  last_frame_ = input.frame;

  for (auto& t : tracks_) {
    t.kf = kf_predict(t.kf);
    t.age += 1;
  }

  // Split detections into the two confidence bands.
  std::vector<int> high, low;
  for (size_t d = 0; d < input.detections.size(); ++d) {
    const Detection& det = input.detections[d];
    if (!det.bbox.valid()) {
      throw std::invalid_argument("tracker: invalid detection box at frame " +
                                  std::to_string(input.frame));
    }
    if (det.confidence >= params_.tau_high) {
      high.push_back(static_cast<int>(d));
    } else if (det.confidence >= params_.tau_low) {
      low.push_back(static_cast<int>(d));
    }
  }

  // Retained detections (both bands) are what radar clusters attach to.
  std::vector<Detection> retained;
  retained.reserve(high.size() + low.size());
  for (int d : high) retained.push_back(input.detections[d]);
  for (int d : low) retained.push_back(input.detections[d]);

  std::vector<std::optional<ClusterDynamics>> retained_dyn(retained.size());
  if (params_.matcher == MatcherKind::rcm && !input.radar_points.empty()) {
    const std::vector<RadarCluster> clusters =
        cluster_radar_frame(input.radar_points, params_.dbscan, calib_);
    const auto det_to_cluster = associate_clusters_to_boxes(clusters, retained);
    for (size_t j = 0; j < retained.size(); ++j) {
      if (det_to_cluster[j]) retained_dyn[j] = cluster_dynamics(clusters[*det_to_cluster[j]]);
    }
  }
  auto maybe_update_dynamics = [&](Track& t, int retained_idx) {
    if (retained_dyn[retained_idx]) {
      t.dynamics = update_track_dynamics(t.dynamics, *retained_dyn[retained_idx]);
    }
  };

  // Stage 1: high-confidence detections against active and lost tracks.
  std::vector<int> pool1;
  for (size_t i = 0; i < tracks_.size(); ++i) {
    if (tracks_[i].status == TrackStatus::active || tracks_[i].status == TrackStatus::lost) {
      pool1.push_back(static_cast<int>(i));
    }
  }
  std::vector<BBox> boxes1, high_boxes;
  for (int i : pool1) boxes1.push_back(state_to_bbox(tracks_[i].kf));
  for (int d : high) high_boxes.push_back(input.detections[d].bbox);

  const Assignment a1 =
      linear_assignment(iou_cost_matrix(boxes1, high_boxes, params_.stage1_gate));
  for (const auto& [r, c] : a1.matches) {
    Track& t = tracks_[pool1[r]];
    mark_matched(t, input.detections[high[c]], input.frame);
    maybe_update_dynamics(t, c);  // high dets sit first in `retained`
  }

  // Stage 2: leftover *active* tracks against the low-confidence band.
  std::vector<int> pool2;
  for (int r : a1.unmatched_rows) {
    if (tracks_[pool1[r]].status == TrackStatus::active) pool2.push_back(pool1[r]);
  }
  std::vector<BBox> boxes2, low_boxes;
  for (int i : pool2) boxes2.push_back(state_to_bbox(tracks_[i].kf));
  for (int d : low) low_boxes.push_back(input.detections[d].bbox);

  CostMatrix m2;
  if (params_.matcher == MatcherKind::rcm) {
    std::vector<TrackDynamics> dyn2;
    std::vector<std::optional<ClusterDynamics>> low_dyn(low.size());
    for (int i : pool2) dyn2.push_back(tracks_[i].dynamics);
    for (size_t j = 0; j < low.size(); ++j) low_dyn[j] = retained_dyn[high.size() + j];
    m2 = rcm_cost_matrix(boxes2, dyn2, low_boxes, low_dyn, params_.rcm);
  } else {
    m2 = iou_cost_matrix(boxes2, low_boxes, 0.5);
  }
  const Assignment a2 = linear_assignment(m2);
  std::vector<char> stage2_matched(pool2.size(), 0);
  for (const auto& [r, c] : a2.matches) {
    Track& t = tracks_[pool2[r]];
    mark_matched(t, input.detections[low[c]], input.frame);
    maybe_update_dynamics(t, static_cast<int>(high.size()) + c);
    stage2_matched[r] = 1;
  }

  // Lifecycle: active tracks that matched nothing go lost; stale lost tracks
  // are dropped for good.
  for (size_t r = 0; r < pool2.size(); ++r) {
    if (!stage2_matched[r]) tracks_[pool2[r]].status = TrackStatus::lost;
  }
  for (auto& t : tracks_) {
    if (t.status == TrackStatus::lost && input.frame - t.last_frame > params_.max_lost) {
      t.status = TrackStatus::removed;
    }
  }

  // Tentative tracks get one follow-up frame against the leftover high
  // detections; a miss removes them.
  std::vector<int> pool3;
  for (size_t i = 0; i < tracks_.size(); ++i) {
    if (tracks_[i].status == TrackStatus::tentative) pool3.push_back(static_cast<int>(i));
  }
  std::vector<int> leftover_high;
  for (int c : a1.unmatched_cols) leftover_high.push_back(c);
  std::vector<BBox> boxes3, leftover_boxes;
  for (int i : pool3) boxes3.push_back(state_to_bbox(tracks_[i].kf));
  for (int c : leftover_high) leftover_boxes.push_back(input.detections[high[c]].bbox);

  const Assignment a3 =
      linear_assignment(iou_cost_matrix(boxes3, leftover_boxes, params_.stage1_gate));
  for (const auto& [r, c] : a3.matches) {
    Track& t = tracks_[pool3[r]];
    mark_matched(t, input.detections[high[leftover_high[c]]], input.frame);
    maybe_update_dynamics(t, leftover_high[c]);
  }
  for (int r : a3.unmatched_rows) tracks_[pool3[r]].status = TrackStatus::removed;

  // Births from high detections that matched nothing at all.
  for (int c : a3.unmatched_cols) {
    const int d = high[leftover_high[c]];
    const Detection& det = input.detections[d];
    if (det.confidence > params_.tau_new) {
      const int idx = new_track(det, sequence_start);
      maybe_update_dynamics(tracks_[idx], leftover_high[c]);
    }
  }

  FrameOutput out;
  out.frame = input.frame;
  for (const auto& t : tracks_) {
    if (t.status == TrackStatus::active) {
      out.tracks.push_back({t.id, t.class_id, state_to_bbox(t.kf), t.last_confidence});
    }
  }
  tracks_.erase(std::remove_if(tracks_.begin(), tracks_.end(),
                               [](const Track& t) { return t.status == TrackStatus::removed; }),
                tracks_.end());
  return out;
}

std::vector<FrameOutput> run_sequence(const std::vector<FrameInput>& inputs,
                                      const TrackerParams& params,
                                      const Calibration& calib) {
  Tracker tracker(params, calib);
  std::vector<FrameOutput> outputs;
  outputs.reserve(inputs.size());
  for (const auto& input : inputs) outputs.push_back(tracker.step(input));
  return outputs;
}

}  // namespace rctrack
