// Acceptance gate: one pass/fail line per release criterion, nonzero exit on
// any failure. Runs the oracle suites in-process and drives the CLI binary
// (RCTRACK_CLI_PATH) for the end-to-end criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <rctrack/association.hpp>
#include <rctrack/metrics.hpp>
#include <rctrack/mot_io.hpp>
#include <rctrack/radar.hpp>
#include <rctrack/scenario.hpp>
#include <rctrack/tracker.hpp>
#include <rctrack/types.hpp>

namespace {

using namespace rctrack;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

fs::path g_work;

int run_cli(const std::string& args, std::string* capture = nullptr) {
  static int call = 0;
  const std::string log = (g_work / ("cli_" + std::to_string(call++) + ".log")).string();
  const std::string cmd =
      std::string("\"") + RCTRACK_CLI_PATH + "\" " + args + " > " + log + " 2>&1";
  const int raw = std::system(cmd.c_str());
  if (capture != nullptr) {
    std::ifstream in(log, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    *capture = ss.str();
  }
  if (raw == -1 || !WIFEXITED(raw)) return -1;
  return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

std::vector<FrameInput> to_inputs(const Scenario& s,
                                  const std::vector<std::vector<Detection>>& dets,
                                  const std::vector<std::vector<RadarPoint>>& radar) {
  std::vector<FrameInput> inputs;
  inputs.reserve(static_cast<size_t>(s.config.duration));
  for (int f = 1; f <= s.config.duration; ++f) {
    inputs.push_back({f, dets[static_cast<size_t>(f - 1)],
                      radar[static_cast<size_t>(f - 1)]});
  }
  return inputs;
}

TrajectorySet to_trajectories(const std::vector<FrameOutput>& outputs) {
  TrajectorySet ts;
  for (const auto& fo : outputs) {
    for (const auto& tr : fo.tracks) ts.add(fo.frame, {tr.id, tr.class_id, tr.bbox});
  }
  return ts;
}

// ---------------------------------------------------------------------------
// 1. Closed-form fusion cost suite.

Outcome criterion_fusion_cost() {
  const RcmParams p;
  double max_err = 0.0;
  auto check = [&](double got, double want) {
    max_err = std::max(max_err, std::abs(got - want));
  };

  check(normalize_radar_distance(1.0, 1.2), 0.6988057880877979);
  check(normalize_radar_distance(0.5, 1.2), 0.4511883639059736);
  check(normalize_radar_distance(1.0, 1.0), 0.6321205588285577);
  check(rcm_cost(0.2, 0.4, p), 0.26);
  check(rcm_cost(0.5, 0.0, p), 0.35);   // feasible exactly at the radar gate
  check(rcm_cost(0.0, 0.5, p), 0.15);   // feasible exactly at the IoU gate
  check(rcm_cost(0.5, 0.5, p), 0.50);

  long gate_violations = 0;
  const double above = std::nextafter(0.5, 1.0);
  if (rcm_cost(above, 0.0, p) != 1.0) ++gate_violations;
  if (rcm_cost(0.0, above, p) != 1.0) ++gate_violations;
  std::mt19937_64 rng(811);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double d = uni(rng), g = uni(rng);
    const double c = rcm_cost(d, g, p);
    if (d > p.theta_rcm || g > p.theta_iou) {
      if (c != 1.0) ++gate_violations;
    } else {
      max_err = std::max(max_err, std::abs(c - (0.7 * d + 0.3 * g)));
    }
  }

  const bool pass = max_err <= 1e-9 && gate_violations == 0;
  return {pass, fmt("fusion cost closed forms: max err %.2e, gate violations %ld",
                    max_err, gate_violations)};
}

// ---------------------------------------------------------------------------
// 2. Assignment vs brute-force permutation minimum.

double brute_force_min(const CostMatrix& m) {
  const int k = std::min(m.rows, m.cols);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, unsigned, int, double)> rec = [&](int row, unsigned used,
                                                            int matched, double acc) {
    if (acc >= best) return;
    if (row == m.rows) {
      if (matched == k) best = acc;
      return;
    }
    const int rows_left = m.rows - row;
    const int need = k - matched;
    if (rows_left > need) rec(row + 1, used, matched, acc);  // leave row unmatched
    if (need > 0) {
      for (int c = 0; c < m.cols; ++c) {
        if (!((used >> c) & 1u)) {
          rec(row + 1, used | (1u << c), matched + 1, acc + m.at(row, c));
        }
      }
    }
  };
  rec(0, 0u, 0, 0.0);
  return best;
}

Outcome criterion_assignment() {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  long discrepancies = 0;
  double max_delta = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = dim(rng), c = dim(rng);
    CostMatrix m = CostMatrix::zeros(r, c);
    for (double& v : m.values) v = uni(rng);
    const Assignment a = linear_assignment(m, 2.0);  // gate above all costs
    double total = 0.0;
    for (const auto& [row, col] : a.matches) total += m.at(row, col);
    const double want = brute_force_min(m);
    const double delta = std::abs(total - want);
    max_delta = std::max(max_delta, delta);
    if (delta > 1e-9 || static_cast<int>(a.matches.size()) != std::min(r, c)) {
      ++discrepancies;
    }
  }
  return {discrepancies == 0,
          fmt("assignment totals vs brute force on 1000 matrices: "
              "%ld discrepancies, max delta %.2e",
              discrepancies, max_delta)};
}

// ---------------------------------------------------------------------------
// 3. Density clustering vs reachability-closure reference.

std::vector<int> dbscan_reference(const std::vector<Point3>& pts,
                                  const DbscanParams& prm) {
  const int n = static_cast<int>(pts.size());
  const double e2 = prm.eps * prm.eps;
  auto d2 = [&](int a, int b) {
    const double dx = pts[a].x - pts[b].x;
    const double dy = pts[a].y - pts[b].y;
    const double dz = pts[a].z - pts[b].z;
    return dx * dx + dy * dy + dz * dz;
  };
  std::vector<char> core(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (d2(i, j) <= e2) ++count;  // includes the point itself
    }
    core[static_cast<size_t>(i)] = count >= prm.min_pts ? 1 : 0;
  }
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    if (!core[static_cast<size_t>(i)]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (core[static_cast<size_t>(j)] && d2(i, j) <= e2) {
        parent[static_cast<size_t>(find(i))] = find(j);
      }
    }
  }
  // Rank components by their lowest core index.
  std::vector<int> comp_id(static_cast<size_t>(n), -1);
  int next_id = 0;
  for (int i = 0; i < n; ++i) {
    if (!core[static_cast<size_t>(i)]) continue;
    const int root = find(i);
    if (comp_id[static_cast<size_t>(root)] < 0) comp_id[static_cast<size_t>(root)] = next_id++;
  }
  std::vector<int> labels(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (core[static_cast<size_t>(i)]) {
      labels[static_cast<size_t>(i)] = comp_id[static_cast<size_t>(find(i))];
    } else {
      int best = std::numeric_limits<int>::max();
      for (int j = 0; j < n; ++j) {
        if (core[static_cast<size_t>(j)] && d2(i, j) <= e2) {
          best = std::min(best, comp_id[static_cast<size_t>(find(j))]);
        }
      }
      if (best != std::numeric_limits<int>::max()) labels[static_cast<size_t>(i)] = best;
    }
  }
  return labels;
}

Outcome criterion_dbscan() {
  std::mt19937_64 rng(631);
  std::uniform_int_distribution<int> size_dist(0, 60);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_real_distribution<double> zed(-2.0, 2.0);
  std::uniform_real_distribution<double> eps_dist(0.5, 6.0);
  std::uniform_int_distribution<int> minpts_dist(1, 6);
  std::normal_distribution<double> blob(0.0, 1.0);
  long mismatched_sets = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size_dist(rng);
    std::vector<Point3> pts;
    pts.reserve(static_cast<size_t>(n));
    const double cx = coord(rng), cy = coord(rng);
    for (int i = 0; i < n; ++i) {
      if (i % 2 == 0) {
        pts.push_back({coord(rng), coord(rng), zed(rng)});
      } else {
        pts.push_back({cx + 2.0 * blob(rng), cy + 2.0 * blob(rng), 0.5 * blob(rng)});
      }
    }
    const DbscanParams prm{eps_dist(rng), minpts_dist(rng)};
    if (dbscan(pts, prm) != dbscan_reference(pts, prm)) ++mismatched_sets;
  }
  return {mismatched_sets == 0,
          fmt("clustering vs closure reference on 200 point sets: %ld mismatches",
              mismatched_sets)};
}

// ---------------------------------------------------------------------------
// 4. Hand-derived metric fixtures.

Outcome criterion_metric_fixtures() {
  std::vector<std::string> failures;

  {  // Perfect tracking: 1.0 / 1.0 / 1.0 / 0.
    TrajectorySet gt;
    for (int f = 1; f <= 10; ++f) {
      gt.add(f, {1, ClassId::ship, {2.0 * f, 0.0, 10.0, 10.0}});
      gt.add(f, {2, ClassId::boat, {50.0 - f, 50.0, 20.0, 20.0}});
    }
    const EvalReport r = evaluate(gt, gt);
    if (!r.hota || r.hota->hota != 1.0 || r.hota->deta != 1.0 || r.hota->assa != 1.0) {
      failures.push_back("perfect HOTA");
    }
    if (!r.clearmot || r.clearmot->mota != 1.0 || r.clearmot->idsw != 0) {
      failures.push_back("perfect MOTA/IDSW");
    }
    if (!r.idf1 || *r.idf1 != 1.0) failures.push_back("perfect IDF1");
  }

  {  // Single frame at IoU 0.6: HOTA = 12/19.
    TrajectorySet gt, pred;
    gt.add(1, {1, ClassId::ship, {0.0, 0.0, 10.0, 10.0}});
    pred.add(1, {5, ClassId::ship, {2.5, 0.0, 10.0, 10.0}});
    const auto h = compute_hota(gt, pred);
    if (!h || std::abs(h->hota - 12.0 / 19.0) > 1e-9) failures.push_back("HOTA 12/19");
  }

  {  // One missed frame in ten: MOTA = 0.9.
    TrajectorySet gt, pred;
    for (int f = 1; f <= 10; ++f) {
      gt.add(f, {1, ClassId::ship, {0.0, 0.0, 10.0, 10.0}});
      if (f != 7) pred.add(f, {1, ClassId::ship, {0.0, 0.0, 10.0, 10.0}});
    }
    const auto c = compute_clearmot(gt, pred);
    if (!c || c->mota != 0.9 || c->fn != 1 || c->fp != 0 || c->idsw != 0) {
      failures.push_back("MOTA 0.9");
    }
  }

  {  // Identity swap on the last of three frames: IDSW = 1.
    TrajectorySet gt, pred;
    for (int f = 1; f <= 3; ++f) {
      gt.add(f, {1, ClassId::ship, {0.0, 0.0, 10.0, 10.0}});
      pred.add(f, {f <= 2 ? 1 : 2, ClassId::ship, {0.0, 0.0, 10.0, 10.0}});
    }
    const auto c = compute_clearmot(gt, pred);
    if (!c || c->idsw != 1) failures.push_back("IDSW 1");
  }

  if (failures.empty()) {
    return {true, "metric fixtures exact: perfect, HOTA 12/19, MOTA 0.9, IDSW 1"};
  }
  std::string detail = "metric fixtures failed:";
  for (const auto& f : failures) detail += " " + f;
  return {false, detail};
}

// ---------------------------------------------------------------------------
// 5. Radar-silence equivalence through the CLI.

Outcome criterion_radar_silence() {
  ScenarioConfig cfg;
  cfg.n_objects = 4;
  cfg.duration = 150;
  cfg.seed = 77;
  cfg.noise.clutter_rate = 0.5;
  const Scenario s = generate_scenario(cfg);
  const auto dets = simulate_camera_detections(s);
  const std::vector<std::vector<RadarPoint>> no_radar(
      static_cast<size_t>(cfg.duration));
  const fs::path seq = g_work / "silence" / "seq";
  fs::create_directories(seq);
  export_scenario(s, "seq", dets, no_radar, seq.string());

  const fs::path out_iou = g_work / "silence" / "iou.txt";
  const fs::path out_rcm = g_work / "silence" / "rcm.txt";
  double track_s = 0.0;
  for (const auto& [matcher, out] :
       std::vector<std::pair<std::string, fs::path>>{{"iou", out_iou}, {"rcm", out_rcm}}) {
    const auto t0 = Clock::now();
    const int rc = run_cli("track --seq " + seq.string() + " --matcher " + matcher +
                           " --out " + out.string());
    track_s = std::max(track_s, elapsed_s(t0));
    if (rc != 0) return {false, fmt("track --matcher %s exited %d", matcher.c_str(), rc)};
  }
  const std::string a = slurp(out_iou);
  const std::string b = slurp(out_rcm);
  const bool pass = !a.empty() && a == b && track_s < 5.0;
  return {pass, fmt("empty radar: rcm vs iou outputs %s (%zu bytes, slowest track %.2f s)",
                    a == b ? "byte-identical" : "DIFFER", a.size(), track_s)};
}

// ---------------------------------------------------------------------------
// 6. Directional fusion benefit on the usv-bench-20 suite.

Outcome criterion_fusion_benefit() {
  const auto t0 = Clock::now();
  const auto configs = usv_bench_20();
  int wins = 0;
  double dhota_sum = 0.0;
  long idsw_iou_total = 0, idsw_rcm_total = 0;
  for (const auto& cfg : configs) {
    const Scenario s = generate_scenario(cfg);
    const auto dets = simulate_camera_detections(s);
    const auto radar = simulate_radar(s);
    const auto inputs = to_inputs(s, dets, radar);

    TrackerParams iou_params;
    iou_params.matcher = MatcherKind::iou;
    TrackerParams rcm_params;
    rcm_params.matcher = MatcherKind::rcm;

    const TrajectorySet pred_iou =
        to_trajectories(run_sequence(inputs, iou_params, s.calib));
    const TrajectorySet pred_rcm =
        to_trajectories(run_sequence(inputs, rcm_params, s.calib));

    const double hota_iou = compute_hota(s.gt, pred_iou)->hota;
    const double hota_rcm = compute_hota(s.gt, pred_rcm)->hota;
    const long idsw_iou = compute_clearmot(s.gt, pred_iou)->idsw;
    const long idsw_rcm = compute_clearmot(s.gt, pred_rcm)->idsw;

    if (idsw_rcm <= idsw_iou) ++wins;
    dhota_sum += hota_rcm - hota_iou;
    idsw_iou_total += idsw_iou;
    idsw_rcm_total += idsw_rcm;
  }
  const double mean_dhota = dhota_sum / static_cast<double>(configs.size());
  const double reduction =
      idsw_iou_total > 0
          ? static_cast<double>(idsw_iou_total - idsw_rcm_total) /
                static_cast<double>(idsw_iou_total)
          : (idsw_rcm_total == 0 ? 1.0 : -1.0);
  const double secs = elapsed_s(t0);
  const bool pass =
      wins >= 16 && mean_dhota > 0.0 && reduction >= 0.05 && secs < 120.0;
  return {pass, fmt("fusion vs iou on 20 sequences: switches better-or-equal on %d/20, "
                    "mean dHOTA %+.4f, IDSW %ld -> %ld (%.1f%% reduction)",
                    wins, mean_dhota, idsw_iou_total, idsw_rcm_total,
                    100.0 * reduction)};
}

// ---------------------------------------------------------------------------
// 7. Seeded determinism across the full CLI pipeline.

Outcome criterion_determinism() {
  const fs::path root = g_work / "determinism";
  fs::create_directories(root / "a");
  fs::create_directories(root / "b");
  spit(root / "scene.ini",
       "[scenario]\nn_objects = 4\nduration = 150\nseed = 99\n"
       "[noise]\nclutter_rate = 0.8\n");

  for (const char* side : {"a", "b"}) {
    const fs::path seq = root / side / "seq";
    if (run_cli("gen --config " + (root / "scene.ini").string() + " --out-dir " +
                seq.string()) != 0) {
      return {false, "gen exited nonzero"};
    }
    if (run_cli("track --seq " + seq.string() + " --matcher rcm --out " +
                (root / side / "pred.txt").string()) != 0) {
      return {false, "track exited nonzero"};
    }
    if (run_cli("eval --gt " + (seq / "gt.txt").string() + " --pred " +
                (root / side / "pred.txt").string() + " --out " +
                (root / side / "metrics.kv").string()) != 0) {
      return {false, "eval exited nonzero"};
    }
  }

  std::vector<std::string> stage_files{"seq/gt.txt", "seq/det.txt", "seq/radar.csv",
                                       "seq/calib.json", "seq/seqinfo.ini",
                                       "pred.txt", "metrics.kv"};
  long mismatches = 0;
  for (const auto& f : stage_files) {
    if (slurp(root / "a" / f) != slurp(root / "b" / f)) ++mismatches;
  }
  return {mismatches == 0,
          fmt("gen/track/eval reruns: %zu artifacts compared, %ld differ",
              stage_files.size(), mismatches)};
}

// ---------------------------------------------------------------------------
// 8. Throughput floor via the bench subcommand.

Outcome criterion_throughput() {
  ScenarioConfig cfg;
  cfg.n_objects = 10;
  cfg.duration = 600;
  cfg.seed = 4242;

  // Top up radar clutter so the load is >= 600 points per frame while camera
  // detections stay at the ten real objects.
  Scenario s = generate_scenario(cfg);
  const auto dets = simulate_camera_detections(s);
  auto radar = simulate_radar(s);
  long object_points = 0;
  for (const auto& frame : radar) object_points += static_cast<long>(frame.size());
  const double mean_object_points =
      static_cast<double>(object_points) / static_cast<double>(cfg.duration);
  const int extra = std::max(0, static_cast<int>(std::lround(615.0 - mean_object_points)));
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> range_dist(10.0, 180.0);
  std::uniform_real_distribution<double> az_dist(-0.9, 0.9);
  std::uniform_real_distribution<double> el_dist(-0.3, 0.3);
  std::uniform_real_distribution<double> dop_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> pow_dist(2.0, 15.0);
  for (int f = 1; f <= cfg.duration; ++f) {
    auto& frame = radar[static_cast<size_t>(f - 1)];
    for (int i = 0; i < extra; ++i) {
      frame.push_back({range_dist(rng), az_dist(rng), el_dist(rng), dop_dist(rng),
                       pow_dist(rng), f});
    }
  }
  long total_points = 0;
  for (const auto& frame : radar) total_points += static_cast<long>(frame.size());
  const double mean_points =
      static_cast<double>(total_points) / static_cast<double>(cfg.duration);

  const fs::path seq = g_work / "bench" / "seq";
  fs::create_directories(seq);
  export_scenario(s, "seq", dets, radar, seq.string());

  std::string log;
  if (run_cli("bench --seq " + seq.string() + " --repeat 2", &log) != 0) {
    return {false, "bench exited nonzero"};
  }
  double fps_iou = 0.0, fps_rcm = 0.0;
  std::istringstream lines(log);
  std::string line;
  while (std::getline(lines, line)) {
    char name[16] = {0};
    size_t frames = 0;
    double med = 0.0, p95 = 0.0, fps = 0.0;
    if (std::sscanf(line.c_str(), "matcher=%15s frames=%zu median_ms=%lf p95_ms=%lf fps=%lf",
                    name, &frames, &med, &p95, &fps) == 5) {
      if (std::string(name) == "iou") fps_iou = fps;
      if (std::string(name) == "rcm") fps_rcm = fps;
    }
  }
  const bool pass = mean_points >= 600.0 && fps_iou >= 500.0 && fps_rcm >= 500.0;
  return {pass, fmt("10 objects, %.0f radar points/frame: iou %.0f fps, rcm %.0f fps "
                    "(floor 500)",
                    mean_points, fps_iou, fps_rcm)};
}

// ---------------------------------------------------------------------------
// 9. Simulator statistics against the class profile targets.

Outcome criterion_simulator_stats() {
  struct Target {
    ClassId cls;
    std::array<double, 3> mix;
    double count;
    double speed;
  };
  const std::vector<Target> targets{
      {ClassId::ship, {1.0, 0.0, 0.0}, 70.80, 0.97},
      {ClassId::boat, {0.0, 1.0, 0.0}, 30.02, 0.90},
      {ClassId::vessel, {0.0, 0.0, 1.0}, 75.56, 2.57},
  };
  bool pass = true;
  std::string detail = "over 100 seeds/class:";
  for (const auto& t : targets) {
    double est_sum = 0.0;
    long est_n = 0;
    double speed_sum = 0.0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      ScenarioConfig cfg;
      cfg.n_objects = 1;
      cfg.class_mix = t.mix;
      cfg.duration = 120;
      cfg.seed = seed;
      const Scenario s = generate_scenario(cfg);
      const auto radar = simulate_radar(s);
      const auto& obj = s.objects.front();
      speed_sum += std::hypot(obj.states.front().vx, obj.states.front().vy);
      for (int f = 1; f <= cfg.duration; ++f) {
        const auto& pts = radar[static_cast<size_t>(f - 1)];
        if (pts.empty()) continue;
        const auto& w = obj.states[static_cast<size_t>(f - 1)];
        const double range = std::hypot(w.x, w.y);
        est_sum += static_cast<double>(pts.size()) * range / 50.0;
        ++est_n;
      }
    }
    const double mean_count = est_sum / static_cast<double>(est_n);
    const double mean_speed = speed_sum / 100.0;
    const bool count_ok = std::abs(mean_count - t.count) <= 0.15 * t.count;
    const bool speed_ok = mean_speed >= 0.7 * t.speed && mean_speed <= 1.3 * t.speed;
    pass = pass && count_ok && speed_ok;
    detail += fmt(" %s %.1f pts@50m (target %.2f), %.2f m/s (target %.2f)%s",
                  class_name(t.cls), mean_count, t.count, mean_speed, t.speed,
                  count_ok && speed_ok ? "" : " OUT OF BAND");
  }
  return {pass, detail};
}

}  // namespace

int main() {
  g_work = fs::temp_directory_path() / "rctrack_acceptance";
  fs::remove_all(g_work);
  fs::create_directories(g_work);

  struct Entry {
    const char* name;
    Outcome (*fn)();
    double budget_s;  // wall-clock ceiling, part of the criterion
  };
  const std::vector<Entry> entries{
      {"fusion cost closed forms", criterion_fusion_cost, 1.0},
      {"assignment oracle", criterion_assignment, 10.0},
      {"clustering oracle", criterion_dbscan, 10.0},
      {"metric fixtures", criterion_metric_fixtures, 1.0},
      {"radar-silence equivalence", criterion_radar_silence, 30.0},
      {"fusion benefit (usv-bench-20)", criterion_fusion_benefit, 120.0},
      {"seeded determinism", criterion_determinism, 60.0},
      {"throughput floor", criterion_throughput, 120.0},
      {"simulator statistics", criterion_simulator_stats, 60.0},
  };

  int failures = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = entries[i].fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = elapsed_s(t0);
    if (secs > entries[i].budget_s) {
      o.pass = false;
      o.detail += fmt(" [over %.0f s budget]", entries[i].budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }

  fs::remove_all(g_work);
  if (failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 9 criteria FAILED\n", failures);
  return 1;
}
