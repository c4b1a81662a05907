#include <rctrack/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <rctrack/mot_io.hpp>
#include <rctrack/radar.hpp>

namespace rctrack {

namespace {

constexpr uint64_t kTrajStream = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kCameraStream = 0xC2B2AE3D27D4EB4FULL;
constexpr uint64_t kRadarStream = 0x165667B19E3779F9ULL;

double q6(double x) { return std::round(x * 1e6) / 1e6; }

double quantize(double x, double step) { return std::round(x / step) * step; }

// Close ranges break the flat "box center ~ projected center" reading that
// the ground truth promises, so each class keeps a standoff distance.
// Crossing pairs are capped at two so each owns one side of the channel and
// the lanes never stack in the image; the event schedule must agree.
int planned_pair_count(int n_objects) { return std::min(2, n_objects / 2); }

double min_range(ClassId c) {
  switch (c) {
    case ClassId::ship:
      return 30.0;
    case ClassId::boat:
      return 20.0;
    case ClassId::vessel:
      return 40.0;
  }
  return 30.0;
}

double hull_height(ClassId c, double length) {
  const double h = 0.25 * length;
  const double lo = c == ClassId::boat ? 1.2 : 2.0;
  return std::clamp(h, lo, 8.0);
}

struct SwayTable {
  std::vector<double> du;  // per frame horizontal pixel shift, index frame-1
};

SwayTable build_sway(const ScenarioConfig& cfg, const Calibration& calib) {
  SwayTable t;
  t.du.assign(cfg.duration, 0.0);
  for (const auto& e : cfg.events) {
    if (e.kind != EventKind::sway || e.target != kEgoTarget) continue;
    for (int f = e.start; f < e.end && f <= cfg.duration; ++f) {
      if (f < 1) continue;
      const double phase = 2.0 * kPi * (f - e.start) / 45.0;
      t.du[f - 1] += calib.fx * 0.004 * e.intensity * std::sin(phase);
    }
  }
  return t;
}

double occlusion_intensity(const ScenarioConfig& cfg, int object_id, int frame) {
  double worst = 0.0;
  for (const auto& e : cfg.events) {
    if (e.kind != EventKind::occlusion) continue;
    if (e.target != object_id && e.target != kEgoTarget) continue;
    if (frame >= e.start && frame < e.end) worst = std::max(worst, e.intensity);
  }
  return worst;
}

std::optional<BBox> project_object_box(const ObjectTrack& obj, const WorldState& w,
                                       const Calibration& calib, double sway_du) {
  if (w.x <= 0.5) return std::nullopt;
  const double c = std::cos(w.heading), s = std::sin(w.heading);
  double umin = 1e18, umax = -1e18, vmin = 1e18, vmax = -1e18;
  for (double ds : {-0.5 * obj.length, 0.5 * obj.length}) {
    for (double dt : {-0.5 * obj.beam, 0.5 * obj.beam}) {
      const double px = w.x + ds * c - dt * s;
      const double py = w.y + ds * s + dt * c;
      if (px <= 0.5) return std::nullopt;
      for (double pz : {0.0, obj.height}) {
        // Camera frame: x right = -y, y down = -z, z forward = x.
        const double u = calib.cx + calib.fx * (-py) / px + sway_du;
        const double v = calib.cy + calib.fy * (-pz) / px;
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
  }
  // The corner sweep fixes the box extent; the box itself is centered on the
  // projected hull center so that unprojecting any box center at the object's
  // depth recovers the world-frame center, at every bearing and range. A box
  // placed at the raw corner extremes drifts off-center by meters for wide,
  // near hulls (perspective weights the close end of the hull more).
  const double uc = calib.cx + calib.fx * (-w.y) / w.x + sway_du;
  const double vc = calib.cy + calib.fy * (-0.5 * obj.height) / w.x;
  const double hw = 0.5 * (umax - umin), hh = 0.5 * (vmax - vmin);
  const double x0 = std::max(0.0, uc - hw), y0 = std::max(0.0, vc - hh);
  const double x1 = std::min(static_cast<double>(calib.image_w), uc + hw);
  const double y1 = std::min(static_cast<double>(calib.image_h), vc + hh);
  if (x1 - x0 < 2.0 || y1 - y0 < 2.0) return std::nullopt;
  return BBox{q6(x0), q6(y0), q6(x1 - x0), q6(y1 - y0)};
}

struct Placement {
  ClassId cls = ClassId::boat;
  double y0 = 0.0;
  double x0 = 0.0;
  double speed = 0.0;    // m/s
  double heading = 0.0;  // 0 = outbound (+x), pi = inbound (-x)
  double length = 0.0;   // m; 0 means draw from the class range
};

// Largest-remainder apportionment of n objects over the class mix.
std::vector<ClassId> apportion_classes(const ScenarioConfig& cfg) {
  const double sum = cfg.class_mix[0] + cfg.class_mix[1] + cfg.class_mix[2];
  if (!(sum > 0.0)) throw std::invalid_argument("scenario: class_mix must sum > 0");
  int counts[3];
  double frac[3];
  int assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double exact = cfg.n_objects * cfg.class_mix[k] / sum;
    counts[k] = static_cast<int>(exact);
    frac[k] = exact - counts[k];
    assigned += counts[k];
  }
  while (assigned < cfg.n_objects) {
    int best = 0;
    for (int k = 1; k < 3; ++k) {
      if (frac[k] > frac[best]) best = k;
    }
    counts[best] += 1;
    frac[best] = -1.0;
    assigned += 1;
  }
  std::vector<ClassId> out;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < counts[k]; ++i) out.push_back(static_cast<ClassId>(k + 1));
  }
  return out;
}

}  // namespace

Calibration make_calibration(const CameraConfig& cam) {
  Calibration c;
  c.image_w = cam.width;
  c.image_h = cam.height;
  c.fx = 0.5 * cam.width / std::tan(0.5 * deg2rad(cam.hfov_deg));
  c.fy = c.fx;
  c.cx = 0.5 * cam.width;
  c.cy = 0.5 * cam.height;
  c.T_radar_to_cam << 0, -1, 0, 0,  //
      0, 0, -1, 0,                  //
      1, 0, 0, 0,                   //
      0, 0, 0, 1;
  return c;
}

Scenario generate_scenario(const ScenarioConfig& cfg) {
  if (cfg.duration < 1) throw std::invalid_argument("scenario: duration must be >= 1");
  if (cfg.n_objects < 0) throw std::invalid_argument("scenario: n_objects must be >= 0");
  for (const auto& e : cfg.events) {
    if (!(e.start < e.end && e.end <= cfg.duration + 1)) {
      throw std::invalid_argument("scenario: event window must satisfy start < end <= duration");
    }
  }

  Scenario s;
  s.config = cfg;
  s.calib = make_calibration(cfg.camera);

  std::mt19937_64 rng(cfg.seed ^ kTrajStream);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  std::vector<ClassId> classes = apportion_classes(cfg);

  const double fps = cfg.frame_rate;
  const int n_pairs = planned_pair_count(cfg.n_objects);
  const double half_width = 0.5 * cfg.world_width;

  // Lane pairs take one light craft near and one strong-return hull far;
  // leftovers become singles.
  auto take_by_power = [&classes](bool lowest) {
    auto it = std::min_element(classes.begin(), classes.end(), [&](ClassId a, ClassId b) {
      const double pa = class_profile(a).mean_power, pb = class_profile(b).mean_power;
      return lowest ? pa < pb : pa > pb;
    });
    const ClassId c = *it;
    classes.erase(it);
    return c;
  };

  std::vector<Placement> placements;

  for (int k = 0; k < n_pairs; ++k) {
    const double fc = 170.0 + 90.0 * k;  // image-plane crossing frame
    const double side = (k % 2 == 0) ? 1.0 : -1.0;

    Placement a;  // outbound, nearer lane
    a.cls = take_by_power(true);
    const ClassProfile& prof_a = class_profile(a.cls);
    a.length = std::clamp(5.6 + 1.6 * uni(rng), prof_a.min_length, prof_a.max_length);
    a.speed = prof_a.mean_speed * (0.7 + 0.6 * uni(rng));
    a.y0 = side * (5.0 + 2.0 * uni(rng));
    a.heading = 0.0;

    Placement b;  // inbound, farther lane, crosses a in the image at fc
    b.cls = take_by_power(false);
    const ClassProfile& prof_b = class_profile(b.cls);
    b.speed = prof_b.mean_speed * (0.7 + 0.3 * uni(rng));
    b.heading = kPi;

    // Scale the far lane so the partner subtends a slightly smaller box at
    // the crossing: visually confusable, but still unambiguous for
    // return-strength attribution and opposite in Doppler.
    const double kAreaRatio = 0.62;  // far box area over near box area at fc
    const double k_len = std::sqrt(kAreaRatio);
    double ratio = std::max(prof_b.min_length / (k_len * a.length) + 0.05,
                            2.2 + 0.8 * uni(rng));

    double x_cross_a = min_range(a.cls) + a.speed * fc / fps + 3.0 + 8.0 * uni(rng);
    // Keep the inbound partner above its own standoff through the whole run.
    const double b_floor =
        (min_range(b.cls) + b.speed * (cfg.duration - fc) / fps + 2.0) / ratio;
    x_cross_a = std::max(x_cross_a, b_floor);
    // ... and within solid camera range at its spawn.
    ratio = std::min(ratio, (132.0 - b.speed * fc / fps) / x_cross_a);
    b.length = std::clamp(k_len * ratio * a.length, prof_b.min_length, prof_b.max_length);

    b.y0 = side * std::abs(a.y0) * ratio;
    a.x0 = x_cross_a - a.speed * fc / fps;
    b.x0 = x_cross_a * ratio + b.speed * fc / fps;
    placements.push_back(a);
    placements.push_back(b);
  }

  int single_slot = 0;
  for (ClassId cls : classes) {
    Placement p;
    p.cls = cls;
    p.speed = class_profile(p.cls).mean_speed * (0.7 + 0.6 * uni(rng));
    const double side = (single_slot % 2 == 0) ? -1.0 : 1.0;
    // Singles run wide of the paired lanes: bearings stay beyond ~22 degrees
    // for the whole run, clear of the crossing corridor, so their radar
    // returns can never shadow a crossing contest.
    p.y0 = side * (44.0 + 8.0 * uni(rng));
    // Confine each single to the x corridor where the detector still fires
    // confidently and the hull stays inside the camera's field of view, for
    // the whole run; the speed clamp guarantees the corridor is long enough.
    const double x_near = std::max(min_range(p.cls) + 3.0, 1.1 * std::abs(p.y0));
    const double x_far = std::min(2.475 * std::abs(p.y0),
                                  std::sqrt(133.0 * 133.0 - p.y0 * p.y0));
    const double run_time = cfg.duration / fps;
    p.speed = std::min(p.speed, (x_far - x_near - 10.0) / run_time);
    const double travel = p.speed * run_time;
    const bool inbound = single_slot % 2 == 1;
    if (inbound) {
      p.heading = kPi;
      const double lo = x_near + travel;
      p.x0 = lo + uni(rng) * (x_far - lo);
    } else {
      p.heading = 0.0;
      p.x0 = x_near + uni(rng) * (x_far - travel - x_near);
    }
    single_slot += 1;
    placements.push_back(p);
  }

  const SwayTable sway = build_sway(cfg, s.calib);

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> len_pick(0.0, 1.0);
  int next_id = 1;
  for (const Placement& p : placements) {
    const ClassProfile& prof = class_profile(p.cls);
    ObjectTrack obj;
    obj.id = next_id++;
    obj.class_id = p.cls;
    obj.length = p.length > 0.0
                     ? p.length
                     : prof.min_length + (prof.max_length - prof.min_length) * len_pick(rng);
    obj.beam = 0.3 * obj.length;
    obj.height = hull_height(p.cls, obj.length);
    obj.states.reserve(cfg.duration);

    double x = p.x0, y = std::clamp(p.y0, -half_width + 2.0, half_width - 2.0);
    double dev = 0.0;
    for (int f = 1; f <= cfg.duration; ++f) {
      dev = 0.95 * dev + 0.002 * gauss(rng);
      const double heading = p.heading + dev;
      WorldState w;
      w.heading = heading;
      w.vx = p.speed * std::cos(heading);
      w.vy = p.speed * std::sin(heading);
      x += w.vx / fps;
      y += w.vy / fps;
      w.x = x;
      w.y = y;
      obj.states.push_back(w);
    }
    s.objects.push_back(std::move(obj));
  }

  for (int f = 1; f <= cfg.duration; ++f) {
    for (const auto& obj : s.objects) {
      const auto box = project_object_box(obj, obj.states[f - 1], s.calib, sway.du[f - 1]);
      if (box) s.gt.add(f, {obj.id, obj.class_id, *box});
    }
  }
  return s;
}

std::vector<std::vector<Detection>> simulate_camera_detections(const Scenario& s) {
  const ScenarioConfig& cfg = s.config;
  std::mt19937_64 rng(cfg.seed ^ kCameraStream);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::poisson_distribution<int> clutter_n(std::max(1e-12, cfg.noise.clutter_rate));

  const double img_w = cfg.camera.width, img_h = cfg.camera.height;
  std::vector<std::vector<Detection>> out(cfg.duration);
  for (int f = 1; f <= cfg.duration; ++f) {
    auto git = s.gt.frames.find(f);
    if (git != s.gt.frames.end()) {
      for (const auto& tb : git->second) {
        const ObjectTrack& obj = s.objects[tb.id - 1];
        const WorldState& w = obj.states[f - 1];
        const double range = std::hypot(w.x, w.y);

        // Dropouts: droplet events on the target, then the global rate.
        bool dropped = false;
        for (const auto& e : cfg.events) {
          if (e.kind != EventKind::droplet_dropout) continue;
          if (e.target != tb.id && e.target != kEgoTarget) continue;
          if (f >= e.start && f < e.end && uni(rng) < e.intensity) dropped = true;
        }
        if (cfg.noise.dropout_rate > 0.0 && uni(rng) < cfg.noise.dropout_rate) {
          dropped = true;
        }

        const double occl = occlusion_intensity(cfg, tb.id, f);
        const double base = std::clamp(1.05 - range / 250.0, 0.3, 0.98);
        const double conf = q6(base * (1.0 - occl));

        // A nearer hull overlapping a partly hidden target drags the
        // regressed box toward itself: the detector cannot cleanly separate
        // the two silhouettes while the occlusion lasts.
        BBox g = tb.bbox;
        if (occl > 0.0) {
          const BBox* occluder = nullptr;
          double best_range = range;
          for (const auto& ob : git->second) {
            if (ob.id == tb.id) continue;
            const WorldState& ow = s.objects[ob.id - 1].states[f - 1];
            const double ob_range = std::hypot(ow.x, ow.y);
            if (ob_range >= best_range) continue;
            if (bbox_iou(g, ob.bbox) < 0.05) continue;
            occluder = &ob.bbox;
            best_range = ob_range;
          }
          if (occluder) {
            const double mu = 0.75 * occl;
            g.x = (1.0 - mu) * g.x + mu * occluder->x;
            g.y = (1.0 - mu) * g.y + mu * occluder->y;
            g.w = (1.0 - mu) * g.w + mu * occluder->w;
            g.h = (1.0 - mu) * g.h + mu * occluder->h;
          }
        }

        // Partial occlusion also degrades the regressed box.
        const double sigma = cfg.noise.det_jitter * (1.0 + 2.0 * occl);
        double bx = g.x + gauss(rng) * sigma * g.w;
        double by = g.y + gauss(rng) * sigma * g.h;
        double bw = g.w * (1.0 + gauss(rng) * sigma);
        double bh = g.h * (1.0 + gauss(rng) * sigma);
        if (dropped) continue;

        bx = std::clamp(bx, 0.0, img_w - 1.0);
        by = std::clamp(by, 0.0, img_h - 1.0);
        bw = std::clamp(bw, 1.0, img_w - bx);
        bh = std::clamp(bh, 1.0, img_h - by);
        Detection d;
        d.bbox = {q6(bx), q6(by), q6(bw), q6(bh)};
        d.confidence = conf;
        d.class_id = tb.class_id;
        d.frame = f;
        out[f - 1].push_back(d);
      }
    }

    if (cfg.noise.clutter_rate > 0.0) {
      const int n = clutter_n(rng);
      for (int i = 0; i < n; ++i) {
        const double h = 8.0 + 32.0 * uni(rng);
        const double w = h * (1.2 + 1.8 * uni(rng));
        const double u = uni(rng) * (img_w - w);
        const double v = 0.5 * img_h - 60.0 * uni(rng);
        Detection d;
        d.bbox = {q6(u), q6(v), q6(w), q6(h)};
        d.confidence = q6(0.1 + 0.45 * uni(rng));
        d.class_id = static_cast<ClassId>(1 + static_cast<int>(uni(rng) * 3.0) % 3);
        d.frame = f;
        out[f - 1].push_back(d);
      }
    }
  }
  return out;
}

std::vector<std::vector<RadarPoint>> simulate_radar(const Scenario& s) {
  const ScenarioConfig& cfg = s.config;
  std::mt19937_64 rng(cfg.seed ^ kRadarStream);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::poisson_distribution<int> clutter_n(std::max(1e-12, cfg.noise.clutter_rate));

  const double half_az = 0.5 * deg2rad(cfg.radar.hfov_deg);
  const double half_el = 0.5 * deg2rad(cfg.radar.vfov_deg);

  std::vector<std::vector<RadarPoint>> out(cfg.duration);
  for (int f = 1; f <= cfg.duration; ++f) {
    for (const auto& obj : s.objects) {
      const WorldState& w = obj.states[f - 1];
      const double range = std::hypot(w.x, w.y);
      if (range > cfg.radar.max_range || range < 1.0) continue;
      if (std::abs(std::atan2(w.y, w.x)) > half_az) continue;

      const ClassProfile& prof = class_profile(obj.class_id);
      const double mean = prof.mean_point_count * (50.0 / range);
      std::poisson_distribution<int> count(mean);
      const int n = std::clamp(count(rng), 1,
                               static_cast<int>(std::ceil(4.0 * prof.mean_point_count)));

      const double c = std::cos(w.heading), sn = std::sin(w.heading);
      for (int i = 0; i < n; ++i) {
        const double ds = (uni(rng) - 0.5) * obj.length;
        const double dt = (uni(rng) - 0.5) * obj.beam;
        const double pz = uni(rng) * 0.7 * obj.height;
        const double px = w.x + ds * c - dt * sn;
        const double py = w.y + ds * sn + dt * c;
        const double pr = std::sqrt(px * px + py * py + pz * pz);
        if (pr < 1.0) continue;

        RadarPoint p;
        p.range = quantize(pr + 0.1 * gauss(rng), cfg.radar.range_res);
        p.azimuth = std::atan2(py, px) + 0.0025 * gauss(rng);
        p.elevation = std::atan2(pz, std::hypot(px, py)) + 0.0025 * gauss(rng);
        const double v_r = (w.vx * px + w.vy * py) / pr;
        p.doppler = quantize(v_r, cfg.radar.vel_res);
        p.power = prof.mean_power + (uni(rng) * 2.0 - 1.0);
        p.frame = f;
        if (p.range <= 0.5 || p.range > cfg.radar.max_range) continue;
        if (std::abs(p.azimuth) > half_az || std::abs(p.elevation) > half_el) continue;
        p.range = q6(p.range);
        p.azimuth = q6(p.azimuth);
        p.elevation = q6(p.elevation);
        p.doppler = q6(p.doppler);
        p.power = q6(p.power);
        out[f - 1].push_back(p);
      }
    }

    if (cfg.noise.clutter_rate > 0.0) {
      const int n = clutter_n(rng);
      for (int i = 0; i < n; ++i) {
        RadarPoint p;
        p.range = q6(quantize(5.0 + uni(rng) * (cfg.radar.max_range - 5.0),
                              cfg.radar.range_res));
        p.azimuth = q6((uni(rng) * 2.0 - 1.0) * half_az);
        p.elevation = q6((uni(rng) * 2.0 - 1.0) * deg2rad(3.0));
        p.doppler = q6(quantize(uni(rng) * 6.0 - 3.0, cfg.radar.vel_res));
        p.power = q6(3.0 + 6.0 * uni(rng));
        p.frame = f;
        if (p.range <= 0.5) continue;
        out[f - 1].push_back(p);
      }
    }
  }
  return out;
}

void export_scenario(const Scenario& s, const std::string& name,
                     const std::vector<std::vector<Detection>>& detections,
                     const std::vector<std::vector<RadarPoint>>& radar,
                     const std::string& out_dir) {
  const ScenarioConfig& cfg = s.config;

  std::vector<MotRow> gt_rows;
  for (const auto& [f, boxes] : s.gt.frames) {
    for (const auto& tb : boxes) {
      MotRow r;
      r.frame = f;
      r.id = tb.id;
      r.bbox = tb.bbox;
      r.conf = 1.0;
      r.class_id = static_cast<int>(tb.class_id);
      r.visibility = q6(1.0 - occlusion_intensity(cfg, tb.id, f));
      gt_rows.push_back(r);
    }
  }

  std::vector<MotRow> det_rows;
  for (const auto& frame_dets : detections) {
    for (const auto& d : frame_dets) {
      MotRow r;
      r.frame = d.frame;
      r.id = -1;
      r.bbox = d.bbox;
      r.conf = d.confidence;
      r.class_id = static_cast<int>(d.class_id);
      r.visibility = 1.0;
      det_rows.push_back(r);
    }
  }

  std::vector<RadarPoint> points;
  for (const auto& frame_pts : radar) {
    points.insert(points.end(), frame_pts.begin(), frame_pts.end());
  }

  SeqInfo info;
  info.name = name;
  info.frame_rate = static_cast<int>(std::lround(cfg.frame_rate));
  info.seq_length = cfg.duration;
  info.im_width = cfg.camera.width;
  info.im_height = cfg.camera.height;

  write_seqinfo(out_dir + "/seqinfo.ini", info);
  write_calibration(out_dir + "/calib.json", s.calib);
  write_mot_file(out_dir + "/gt.txt", gt_rows);
  write_mot_file(out_dir + "/det.txt", det_rows);
  write_radar_csv(out_dir + "/radar.csv", points);
}

std::vector<ScenarioConfig> usv_bench_20() {
  std::vector<ScenarioConfig> out;
  for (int k = 0; k < 20; ++k) {
    ScenarioConfig c;
    c.seed = 1000 + static_cast<uint64_t>(k);
    c.n_objects = 4 + (k % 5);
    c.duration = 600;
    c.noise.det_jitter = 0.02;
    c.noise.dropout_rate = 0.0;  // intermittency is exercised by the droplet event
    c.noise.clutter_rate = 1.0;

    const int n_pairs = planned_pair_count(c.n_objects);
    // Stock the lanes so every crossing pair draws one boat and one vessel;
    // remaining vessels run alone.
    const double pair_share = 2.0 * n_pairs / c.n_objects;
    c.class_mix = {0.0, 0.5 * pair_share, 1.0 - 0.5 * pair_share};
    for (int p = 0; p < n_pairs; ++p) {
      const int fc = 170 + 90 * p;
      for (int member = 0; member < 2; ++member) {
        EventSpec e;
        e.kind = EventKind::occlusion;
        e.target = 2 * p + 1 + member;
        e.start = fc - 15;
        e.end = fc + 16;
        e.intensity = 0.5;
        c.events.push_back(e);
      }
    }
    EventSpec droplet;
    droplet.kind = EventKind::droplet_dropout;
    droplet.target = c.n_objects;  // last object, clear of its crossing window
    droplet.start = 480;
    droplet.end = 521;
    droplet.intensity = 0.7;
    c.events.push_back(droplet);
    out.push_back(c);
  }
  return out;
}

}  // namespace rctrack
