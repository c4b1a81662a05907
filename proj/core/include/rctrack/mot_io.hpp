#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <rctrack/metrics.hpp>
#include <rctrack/scenario.hpp>
#include <rctrack/tracker.hpp>
#include <rctrack/types.hpp>

namespace rctrack {

// Parse or write failure; message carries "<file>:<line>: <what>" where known.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One line of a MOT-style file: frame,id,x,y,w,h,conf,class,visibility.
struct MotRow {
  int frame = 0;
  int id = -1;  // -1 for raw detections
  BBox bbox;
  double conf = 1.0;
  int class_id = 1;
  double visibility = 1.0;
};

struct SeqInfo {
  std::string name;
  int frame_rate = 30;
  int seq_length = 0;
  int im_width = 0;
  int im_height = 0;
};

std::vector<MotRow> read_mot_file(const std::string& path);
// Rows are written sorted by frame, then id; doubles at 6 decimals.
void write_mot_file(const std::string& path, std::vector<MotRow> rows);

std::vector<RadarPoint> read_radar_csv(const std::string& path);
void write_radar_csv(const std::string& path, const std::vector<RadarPoint>& points);

Calibration read_calibration(const std::string& path);
void write_calibration(const std::string& path, const Calibration& calib);

SeqInfo read_seqinfo(const std::string& path);
void write_seqinfo(const std::string& path, const SeqInfo& info);

// INI-style tracker settings ([tracker], [rcm], [dbscan]); every key optional,
// unknown sections or keys are errors.
TrackerParams read_run_config(const std::string& path);

// INI-style scenario ([scenario], [camera], [radar], [noise], repeated [event]).
ScenarioConfig read_scenario_config(const std::string& path);

// Everything one sequence directory holds. det.txt and seqinfo.ini are
// required; gt.txt, radar.csv and calib.json load when present.
struct SequenceBundle {
  SeqInfo info;
  std::optional<Calibration> calib;
  std::vector<std::vector<Detection>> detections;  // index frame-1
  std::vector<std::vector<RadarPoint>> radar;      // index frame-1, empty if absent
  std::optional<TrajectorySet> gt;
};

SequenceBundle load_bundle(const std::string& dir);

// Grouping helpers between row soup and evaluation/tracking shapes.
TrajectorySet trajectory_from_rows(const std::vector<MotRow>& rows);
std::vector<MotRow> rows_from_outputs(const std::vector<FrameOutput>& outputs);

}  // namespace rctrack
