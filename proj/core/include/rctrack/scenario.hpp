#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <rctrack/metrics.hpp>
#include <rctrack/types.hpp>

namespace rctrack {

enum class EventKind { occlusion, droplet_dropout, sway };

inline constexpr int kEgoTarget = -1;

struct EventSpec {
  EventKind kind = EventKind::occlusion;
  int target = kEgoTarget;  // object id, or kEgoTarget for ego-wide events
  int start = 1;            // frames, inclusive
  int end = 2;              // exclusive
  double intensity = 0.5;   // [0,1]
};

struct CameraConfig {
  double hfov_deg = 100.0;
  int width = 1920;
  int height = 1080;
};

struct RadarConfig {
  double hfov_deg = 110.0;
  double vfov_deg = 45.0;
  double max_range = 200.0;  // m
  double range_res = 0.43;   // m
  double vel_res = 0.27;     // m/s
};

struct NoiseConfig {
  double det_jitter = 0.02;   // box jitter sigma, relative to box size
  double dropout_rate = 0.0;  // per-frame detection drop probability
  double clutter_rate = 0.0;  // mean false returns/detections per frame
};

struct ScenarioConfig {
  int n_objects = 5;
  std::array<double, 3> class_mix{0.3, 0.4, 0.3};  // ship, boat, vessel
  int duration = 300;  // frames
  double frame_rate = 30.0;
  double world_width = 120.0;   // channel width, m
  double world_length = 220.0;  // channel length, m
  std::vector<EventSpec> events;
  CameraConfig camera;
  RadarConfig radar;
  NoiseConfig noise;
  uint64_t seed = 1;
};

struct WorldState {
  double x = 0.0;  // m, radar frame
  double y = 0.0;
  double vx = 0.0;  // m/s
  double vy = 0.0;
  double heading = 0.0;  // rad
};

struct ObjectTrack {
  int id = 0;
  ClassId class_id = ClassId::ship;
  double length = 0.0;  // m
  double beam = 0.0;
  double height = 0.0;
  std::vector<WorldState> states;  // one per frame, frame f at index f-1
};

struct Scenario {
  ScenarioConfig config;
  Calibration calib;
  std::vector<ObjectTrack> objects;
  TrajectorySet gt;  // image-plane ground truth, consistent with calib
};

Calibration make_calibration(const CameraConfig& cam);

// Deterministic world + image ground truth for a config. Objects are laid out
// as opposing-lane traffic: paired ships/boats whose image tracks cross at
// staggered frames, plus free cruisers.
Scenario generate_scenario(const ScenarioConfig& cfg);

// Noisy detector emulation: jittered boxes, range-decaying confidence,
// occlusion-scaled confidence, droplet dropouts, clutter false positives.
// Index = frame - 1.
std::vector<std::vector<Detection>> simulate_camera_detections(const Scenario& s);

// Radar return emulation: per-object point clouds with quantized range and
// Doppler, plus uniform clutter. Weather/occlusion events do not touch radar.
std::vector<std::vector<RadarPoint>> simulate_radar(const Scenario& s);

// Writes gt.txt, det.txt, radar.csv, calib.json and seqinfo.ini into out_dir.
void export_scenario(const Scenario& s, const std::string& name,
                     const std::vector<std::vector<Detection>>& detections,
                     const std::vector<std::vector<RadarPoint>>& radar,
                     const std::string& out_dir);

// The 20 fixed-seed benchmark configurations (600 frames, 4-8 objects, at
// least one occlusion and one droplet event each).
std::vector<ScenarioConfig> usv_bench_20();

}  // namespace rctrack
