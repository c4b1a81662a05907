#include <rctrack/scenario.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

namespace rctrack {
namespace {

TEST(MakeCalibration, PinholeFromHorizontalFov) {
  Calibration c = make_calibration(CameraConfig{100.0, 1920, 1080});
  EXPECT_NEAR(c.fx, 0.5 * 1920.0 / std::tan(deg2rad(50.0)), 1e-9);
  EXPECT_DOUBLE_EQ(c.fx, c.fy);
  EXPECT_DOUBLE_EQ(c.cx, 960.0);
  EXPECT_DOUBLE_EQ(c.cy, 540.0);
  EXPECT_FALSE(validate_calibration(c).has_value());
  // Radar x-forward must look down the camera z-axis.
  Eigen::Vector4d fwd = c.T_radar_to_cam * Eigen::Vector4d(1, 0, 0, 1);
  EXPECT_NEAR(fwd.z(), 1.0, 1e-12);
  EXPECT_NEAR(fwd.x(), 0.0, 1e-12);
  EXPECT_NEAR(fwd.y(), 0.0, 1e-12);
}

TEST(GenerateScenario, DeterministicPerSeed) {
  ScenarioConfig cfg;
  cfg.n_objects = 5;
  cfg.duration = 120;
  cfg.seed = 314;
  Scenario a = generate_scenario(cfg);
  Scenario b = generate_scenario(cfg);
  ASSERT_EQ(a.objects.size(), b.objects.size());
  for (size_t i = 0; i < a.objects.size(); ++i) {
    ASSERT_EQ(a.objects[i].states.size(), b.objects[i].states.size());
    for (size_t f = 0; f < a.objects[i].states.size(); ++f) {
      EXPECT_EQ(a.objects[i].states[f].x, b.objects[i].states[f].x);
      EXPECT_EQ(a.objects[i].states[f].y, b.objects[i].states[f].y);
      EXPECT_EQ(a.objects[i].states[f].heading, b.objects[i].states[f].heading);
    }
  }

  auto da = simulate_camera_detections(a);
  auto db = simulate_camera_detections(b);
  ASSERT_EQ(da.size(), db.size());
  for (size_t f = 0; f < da.size(); ++f) {
    ASSERT_EQ(da[f].size(), db[f].size());
    for (size_t i = 0; i < da[f].size(); ++i) {
      EXPECT_EQ(da[f][i].bbox.x, db[f][i].bbox.x);
      EXPECT_EQ(da[f][i].confidence, db[f][i].confidence);
    }
  }

  auto ra = simulate_radar(a);
  auto rb = simulate_radar(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (size_t f = 0; f < ra.size(); ++f) {
    ASSERT_EQ(ra[f].size(), rb[f].size());
    for (size_t i = 0; i < ra[f].size(); ++i) {
      EXPECT_EQ(ra[f][i].range, rb[f][i].range);
      EXPECT_EQ(ra[f][i].doppler, rb[f][i].doppler);
    }
  }

  ScenarioConfig other = cfg;
  other.seed = 315;
  Scenario c = generate_scenario(other);
  bool differs = false;
  for (size_t i = 0; i < c.objects.size() && !differs; ++i) {
    if (c.objects[i].states[0].x != a.objects[i].states[0].x) differs = true;
  }
  EXPECT_TRUE(differs);
}

TEST(GenerateScenario, BoxCentersUnprojectToWorldCenters) {
  // The ground-truth contract: unprojecting any box center at the object's
  // depth recovers the world-frame lateral offset and mid-hull height.
  for (uint64_t seed : {1u, 9u, 1004u}) {
    ScenarioConfig cfg;
    cfg.n_objects = 6;
    cfg.duration = 200;
    cfg.seed = seed;
    Scenario s = generate_scenario(cfg);
    const Calibration& c = s.calib;
    int checked = 0;
    for (const auto& [f, boxes] : s.gt.frames) {
      for (const auto& tb : boxes) {
        const BBox& b = tb.bbox;
        // Border-clipped boxes lose their geometric center by construction.
        if (b.x <= 0.5 || b.y <= 0.5 || b.right() >= c.image_w - 0.5 ||
            b.bottom() >= c.image_h - 0.5) {
          continue;
        }
        const ObjectTrack& obj = s.objects[tb.id - 1];
        const WorldState& w = obj.states[f - 1];
        const double uc = b.x + 0.5 * b.w;
        const double vc = b.y + 0.5 * b.h;
        const double y_rec = -(uc - c.cx) * w.x / c.fx;
        const double z_rec = -(vc - c.cy) * w.x / c.fy;
        EXPECT_NEAR(y_rec, w.y, 0.01) << "seed " << seed << " frame " << f;
        EXPECT_NEAR(z_rec, 0.5 * obj.height, 0.01) << "seed " << seed;
        ++checked;
      }
    }
    EXPECT_GT(checked, 500) << "seed " << seed;
  }
}

TEST(GenerateScenario, SingleOutboundObjectDriftsTowardCenterline) {
  ScenarioConfig cfg;
  cfg.n_objects = 1;
  cfg.class_mix = {0.0, 1.0, 0.0};  // one boat, slot 0 is outbound
  cfg.duration = 300;
  cfg.seed = 21;
  Scenario s = generate_scenario(cfg);
  ASSERT_EQ(s.objects.size(), 1u);

  // Range grows every frame...
  const auto& states = s.objects[0].states;
  for (size_t f = 1; f < states.size(); ++f) {
    EXPECT_GT(std::hypot(states[f].x, states[f].y),
              std::hypot(states[f - 1].x, states[f - 1].y))
        << "frame " << f + 1;
  }

  // ...so the projected box slides toward the image centerline.
  const double cx = s.calib.cx;
  double prev = -1.0;
  double first = -1.0, last = -1.0;
  for (const auto& [f, boxes] : s.gt.frames) {
    ASSERT_EQ(boxes.size(), 1u);
    const BBox& b = boxes[0].bbox;
    const double off = std::abs(b.x + 0.5 * b.w - cx);
    if (prev >= 0.0) EXPECT_LT(off, prev + 0.1) << "frame " << f;
    if (first < 0.0) first = off;
    last = off;
    prev = off;
  }
  EXPECT_LT(last, first - 10.0);
}

TEST(GenerateScenario, ValidationErrors) {
  ScenarioConfig cfg;
  cfg.duration = 0;
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);

  cfg = ScenarioConfig{};
  cfg.n_objects = -1;
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);

  cfg = ScenarioConfig{};
  EventSpec e;
  e.kind = EventKind::occlusion;
  e.target = 1;
  e.start = 50;
  e.end = 50;  // empty window
  cfg.events = {e};
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);

  cfg = ScenarioConfig{};
  e.start = 10;
  e.end = cfg.duration + 5;  // past the end
  cfg.events = {e};
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);
}

TEST(GenerateScenario, EmptySceneIsValid) {
  ScenarioConfig cfg;
  cfg.n_objects = 0;
  cfg.duration = 30;
  Scenario s = generate_scenario(cfg);
  EXPECT_TRUE(s.objects.empty());
  EXPECT_TRUE(s.gt.empty());
  auto dets = simulate_camera_detections(s);
  auto radar = simulate_radar(s);
  for (const auto& v : dets) EXPECT_TRUE(v.empty());
  for (const auto& v : radar) EXPECT_TRUE(v.empty());
}

ScenarioConfig one_object_config(std::array<double, 3> mix, uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n_objects = 1;
  cfg.class_mix = mix;
  cfg.duration = 300;
  cfg.seed = seed;
  return cfg;
}

TEST(SimulateRadar, PointCountScalesInverselyWithRange) {
  // Table-driven density: a boat yields 30.02 returns per frame at 50 m,
  // falling off as 50/r.
  double sum = 0.0;
  long frames = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    ScenarioConfig cfg = one_object_config({0.0, 1.0, 0.0}, seed);
    Scenario s = generate_scenario(cfg);
    auto radar = simulate_radar(s);
    for (int f = 1; f <= cfg.duration; ++f) {
      const WorldState& w = s.objects[0].states[f - 1];
      const double range = std::hypot(w.x, w.y);
      sum += static_cast<double>(radar[f - 1].size()) * range / 50.0;
      frames += 1;
    }
  }
  const double normalized_mean = sum / static_cast<double>(frames);
  EXPECT_NEAR(normalized_mean, 30.02, 0.1 * 30.02);
}

TEST(SimulateRadar, ClassSpeedBands) {
  const struct {
    std::array<double, 3> mix;
    double mean_speed;
  } cases[] = {
      {{1.0, 0.0, 0.0}, 0.97},
      {{0.0, 1.0, 0.0}, 0.90},
      {{0.0, 0.0, 1.0}, 2.57},
  };
  for (const auto& c : cases) {
    double sum = 0.0;
    int n = 0;
    for (uint64_t seed = 1; seed <= 40; ++seed) {
      ScenarioConfig cfg = one_object_config(c.mix, seed);
      Scenario s = generate_scenario(cfg);
      const WorldState& w = s.objects[0].states[0];
      sum += std::hypot(w.vx, w.vy);
      n += 1;
    }
    const double mean = sum / n;
    EXPECT_GT(mean, 0.7 * c.mean_speed) << "mean_speed " << c.mean_speed;
    EXPECT_LT(mean, 1.3 * c.mean_speed) << "mean_speed " << c.mean_speed;
  }
}

TEST(SimulateRadar, DopplerBoundedByTargetSpeed) {
  // Doppler is the radial component quantized to the 0.27 m/s cell, so it can
  // never exceed the target speed by more than half a cell.
  ScenarioConfig cfg = one_object_config({0.0, 1.0, 0.0}, 8);
  Scenario s = generate_scenario(cfg);
  auto radar = simulate_radar(s);
  for (int f = 1; f <= cfg.duration; ++f) {
    const WorldState& w = s.objects[0].states[f - 1];
    const double speed = std::hypot(w.vx, w.vy);
    for (const auto& p : radar[f - 1]) {
      EXPECT_LE(std::abs(p.doppler), speed + 0.5 * cfg.radar.vel_res + 1e-9)
          << "frame " << f;
    }
  }
}

TEST(SimulateRadar, MaxRangeCutsAllReturns) {
  ScenarioConfig cfg = one_object_config({0.0, 0.0, 1.0}, 3);  // vessel: > 44 m out
  cfg.radar.max_range = 40.0;
  Scenario s = generate_scenario(cfg);
  auto radar = simulate_radar(s);
  for (const auto& frame : radar) EXPECT_TRUE(frame.empty());
}

TEST(SimulateRadar, QuantizationGrid) {
  ScenarioConfig cfg = one_object_config({1.0, 0.0, 0.0}, 12);
  Scenario s = generate_scenario(cfg);
  auto radar = simulate_radar(s);
  for (const auto& frame : radar) {
    for (const auto& p : frame) {
      const double range_cells = p.range / cfg.radar.range_res;
      const double doppler_cells = p.doppler / cfg.radar.vel_res;
      // On-grid up to the 1e-6 output rounding.
      EXPECT_NEAR(range_cells, std::round(range_cells), 1e-4);
      EXPECT_NEAR(doppler_cells, std::round(doppler_cells), 1e-4);
    }
  }
}

TEST(SimulateCamera, DropletSilencesCameraNotRadar) {
  // A droplet on the lens wipes out camera detections inside its window but
  // leaves the radar stream untouched.
  long cam_in = 0, cam_out = 0, radar_in = 0, radar_out = 0;
  long frames_in = 0, frames_out = 0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    ScenarioConfig cfg = one_object_config({1.0, 0.0, 0.0}, seed);
    EventSpec drop;
    drop.kind = EventKind::droplet_dropout;
    drop.target = kEgoTarget;
    drop.start = 100;
    drop.end = 200;
    drop.intensity = 0.7;
    cfg.events = {drop};
    Scenario s = generate_scenario(cfg);
    auto dets = simulate_camera_detections(s);
    auto radar = simulate_radar(s);
    for (int f = 1; f <= cfg.duration; ++f) {
      const bool inside = f >= drop.start && f < drop.end;
      (inside ? cam_in : cam_out) += static_cast<long>(dets[f - 1].size());
      (inside ? radar_in : radar_out) += static_cast<long>(radar[f - 1].size());
      (inside ? frames_in : frames_out) += 1;
    }
  }
  const double cam_rate_in = static_cast<double>(cam_in) / frames_in;
  const double cam_rate_out = static_cast<double>(cam_out) / frames_out;
  EXPECT_LT(cam_rate_in, 0.45 * cam_rate_out);  // ~70% of frames dropped

  const double radar_rate_in = static_cast<double>(radar_in) / frames_in;
  const double radar_rate_out = static_cast<double>(radar_out) / frames_out;
  EXPECT_NEAR(radar_rate_in, radar_rate_out, 0.1 * radar_rate_out);
}

TEST(SimulateCamera, ConfidenceFollowsRangeAndOcclusion) {
  ScenarioConfig cfg = one_object_config({1.0, 0.0, 0.0}, 4);
  EventSpec occl;
  occl.kind = EventKind::occlusion;
  occl.target = 1;
  occl.start = 120;
  occl.end = 150;
  occl.intensity = 0.5;
  cfg.events = {occl};
  Scenario s = generate_scenario(cfg);
  auto dets = simulate_camera_detections(s);
  for (int f = 1; f <= cfg.duration; ++f) {
    if (dets[f - 1].empty()) continue;
    const WorldState& w = s.objects[0].states[f - 1];
    const double range = std::hypot(w.x, w.y);
    const double base = std::clamp(1.05 - range / 250.0, 0.3, 0.98);
    const bool inside = f >= occl.start && f < occl.end;
    const double want = base * (inside ? 0.5 : 1.0);
    EXPECT_NEAR(dets[f - 1][0].confidence, want, 1e-6) << "frame " << f;
  }
}

TEST(UsvBench20, FixedContract) {
  auto configs = usv_bench_20();
  ASSERT_EQ(configs.size(), 20u);
  for (size_t k = 0; k < configs.size(); ++k) {
    const ScenarioConfig& c = configs[k];
    EXPECT_EQ(c.seed, 1000u + k);
    EXPECT_EQ(c.n_objects, 4 + static_cast<int>(k % 5));
    EXPECT_EQ(c.duration, 600);
    bool has_occlusion = false, has_droplet = false;
    for (const auto& e : c.events) {
      has_occlusion |= e.kind == EventKind::occlusion;
      has_droplet |= e.kind == EventKind::droplet_dropout;
    }
    EXPECT_TRUE(has_occlusion) << "bench " << k;
    EXPECT_TRUE(has_droplet) << "bench " << k;
    // Every config must actually generate.
    if (k == 0 || k == 7) {
      Scenario s = generate_scenario(c);
      EXPECT_EQ(static_cast<int>(s.objects.size()), c.n_objects);
      EXPECT_FALSE(s.gt.empty());
    }
  }
}

}  // namespace
}  // namespace rctrack
