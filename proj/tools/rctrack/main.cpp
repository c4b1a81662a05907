#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rctrack/metrics.hpp>
#include <rctrack/mot_io.hpp>
#include <rctrack/radar.hpp>
#include <rctrack/scenario.hpp>
#include <rctrack/tracker.hpp>

namespace fs = std::filesystem;
using namespace rctrack;

namespace {

// Command-line shape problems that CLI11 cannot express (exit code 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<FrameInput> make_inputs(const SequenceBundle& b) {
  std::vector<FrameInput> inputs(b.info.seq_length);
  for (int f = 1; f <= b.info.seq_length; ++f) {
    inputs[f - 1].frame = f;
    inputs[f - 1].detections = b.detections[f - 1];
    inputs[f - 1].radar_points = b.radar[f - 1];
  }
  return inputs;
}

bool has_radar(const SequenceBundle& b) {
  return std::any_of(b.radar.begin(), b.radar.end(),
                     [](const auto& pts) { return !pts.empty(); });
}

// calib.json only matters when radar returns must be projected.
Calibration pick_calibration(const SequenceBundle& b, const TrackerParams& params,
                             const std::string& seq_dir) {
  if (b.calib) return *b.calib;
  if (params.matcher == MatcherKind::rcm && has_radar(b)) {
    throw IoError(seq_dir + ": calib.json required for the rcm matcher with radar data");
  }
  return make_calibration(CameraConfig{});
}

void gen_one(const ScenarioConfig& cfg, const std::string& name, const std::string& out_dir) {
  const Scenario s = generate_scenario(cfg);
  const auto dets = simulate_camera_detections(s);
  const auto radar = simulate_radar(s);
  fs::create_directories(out_dir);
  export_scenario(s, name, dets, radar, out_dir);
  long det_total = 0, pt_total = 0;
  for (const auto& v : dets) det_total += static_cast<long>(v.size());
  for (const auto& v : radar) pt_total += static_cast<long>(v.size());
  std::printf("%s: %d frames, %zu objects, %ld detections, %ld radar points\n", out_dir.c_str(),
              cfg.duration, s.objects.size(), det_total, pt_total);
}

struct GenOpts {
  std::string config, out_dir, suite;
  uint64_t seed = 0;
  bool seed_set = false;
};

void run_gen(const GenOpts& o) {
  if (!o.suite.empty()) {
    if (!o.config.empty() || o.seed_set) {
      throw UsageError("--suite conflicts with --config and --seed");
    }
    const auto configs = usv_bench_20();
    for (size_t i = 0; i < configs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "usv-bench-%02zu", i);
      gen_one(configs[i], name, o.out_dir + "/" + name);
    }
    return;
  }
  if (o.config.empty()) throw UsageError("--config required unless --suite is given");
  ScenarioConfig cfg = read_scenario_config(o.config);
  if (o.seed_set) cfg.seed = o.seed;
  gen_one(cfg, fs::path(o.out_dir).filename().string(), o.out_dir);
}

struct TrackOpts {
  std::string seq, out, params, matcher = "iou";
};

void run_track(const TrackOpts& o) {
  TrackerParams params;
  if (!o.params.empty()) params = read_run_config(o.params);
  if (!o.matcher.empty()) {
    params.matcher = o.matcher == "rcm" ? MatcherKind::rcm : MatcherKind::iou;
  }

  const SequenceBundle b = load_bundle(o.seq);
  const Calibration calib = pick_calibration(b, params, o.seq);
  const auto inputs = make_inputs(b);

  const auto t0 = std::chrono::steady_clock::now();
  const auto outputs = run_sequence(inputs, params, calib);
  const auto t1 = std::chrono::steady_clock::now();
  const double sec = std::chrono::duration<double>(t1 - t0).count();

  const auto rows = rows_from_outputs(outputs);
  std::vector<int> ids;
  for (const auto& r : rows) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  if (const fs::path parent = fs::path(o.out).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  write_mot_file(o.out, rows);
  std::printf("%d frames in %.3f s (%.1f frames/s), %zu tracks, %zu rows -> %s\n",
              b.info.seq_length, sec, sec > 0.0 ? b.info.seq_length / sec : 0.0, ids.size(),
              rows.size(), o.out.c_str());
}

struct EvalOpts {
  std::string gt, pred, out;
  bool per_class = false;
};

std::string fmt_metric(const std::optional<double>& v, int digits) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

void run_eval(const EvalOpts& o) {
  const TrajectorySet gt = trajectory_from_rows(read_mot_file(o.gt));
  const TrajectorySet pred = trajectory_from_rows(read_mot_file(o.pred));
  const EvalReport rep = evaluate(gt, pred, o.per_class);

  const std::optional<double> hota = rep.hota ? std::optional(rep.hota->hota) : std::nullopt;
  const std::optional<double> mota =
      rep.clearmot ? std::optional(rep.clearmot->mota) : std::nullopt;
  const std::string idsw =
      rep.clearmot ? std::to_string(rep.clearmot->idsw) : std::string("n/a");

  std::printf("%-8s %10s %10s %10s %8s\n", "", "HOTA", "MOTA", "IDF1", "IDSW");
  std::printf("%-8s %10s %10s %10s %8s\n", "all", fmt_metric(hota, 5).c_str(),
              fmt_metric(mota, 5).c_str(), fmt_metric(rep.idf1, 5).c_str(), idsw.c_str());
  for (const auto& [cls, ch] : rep.per_class) {
    const std::optional<double> v = ch ? std::optional(ch->hota) : std::nullopt;
    std::printf("%-8s %10s %10s %10s %8s\n", class_name(cls), fmt_metric(v, 5).c_str(), "-", "-",
                "-");
  }

  if (!o.out.empty()) {
    std::FILE* f = std::fopen(o.out.c_str(), "w");
    if (f == nullptr) throw IoError(o.out + ": cannot open for writing");
    auto kv = [&](const char* key, const std::optional<double>& v) {
      std::fprintf(f, "%s=%s\n", key, fmt_metric(v, 6).c_str());
    };
    kv("hota", hota);
    kv("deta", rep.hota ? std::optional(rep.hota->deta) : std::nullopt);
    kv("assa", rep.hota ? std::optional(rep.hota->assa) : std::nullopt);
    kv("mota", mota);
    std::fprintf(f, "fp=%s\n", rep.clearmot ? std::to_string(rep.clearmot->fp).c_str() : "n/a");
    std::fprintf(f, "fn=%s\n", rep.clearmot ? std::to_string(rep.clearmot->fn).c_str() : "n/a");
    std::fprintf(f, "idsw=%s\n", idsw.c_str());
    kv("idf1", rep.idf1);
    for (const auto& [cls, ch] : rep.per_class) {
      char key[32];
      std::snprintf(key, sizeof key, "hota_%s", class_name(cls));
      kv(key, ch ? std::optional(ch->hota) : std::nullopt);
    }
    if (std::fclose(f) != 0) throw IoError(o.out + ": write failed");
  }
}

std::vector<std::string> sequence_dirs(const std::string& root) {
  if (fs::exists(fs::path(root) / "seqinfo.ini")) return {root};
  std::vector<std::string> dirs;
  if (!fs::is_directory(root)) throw IoError(root + ": not a directory");
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "seqinfo.ini")) {
      dirs.push_back(entry.path().string());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw IoError(root + ": no sequences found (missing seqinfo.ini)");
  return dirs;
}

struct SweepOpts {
  std::string seq_dir, param, out, matcher = "rcm";
};

void run_sweep(const SweepOpts& o) {
  const auto eq = o.param.find('=');
  if (eq == std::string::npos) throw UsageError("--param must look like name=start:step:end");
  const std::string name = o.param.substr(0, eq);
  if (name != "alpha" && name != "lambda" && name != "theta_rcm" && name != "theta_iou") {
    throw UsageError("--param name must be alpha, lambda, theta_rcm or theta_iou");
  }
  double start = 0, step = 0, end = 0;
  {
    const std::string range = o.param.substr(eq + 1);
    char extra = 0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf%c", &start, &step, &end, &extra) != 3 ||
        !(step > 0.0) || end < start) {
      throw UsageError("--param range must be start:step:end with step > 0");
    }
  }

  struct Seq {
    std::vector<FrameInput> inputs;
    Calibration calib;
    TrajectorySet gt;
  };
  std::vector<Seq> seqs;
  TrackerParams base;
  base.matcher = o.matcher == "iou" ? MatcherKind::iou : MatcherKind::rcm;
  for (const auto& dir : sequence_dirs(o.seq_dir)) {
    SequenceBundle b = load_bundle(dir);
    if (!b.gt) throw IoError(dir + ": gt.txt required for sweep");
    seqs.push_back({make_inputs(b), pick_calibration(b, base, dir), std::move(*b.gt)});
  }

  std::FILE* f = std::fopen(o.out.c_str(), "w");
  if (f == nullptr) throw IoError(o.out + ": cannot open for writing");
  std::fputs("value,hota,mota,idf1,idsw\n", f);
  for (double v = start; v <= end + 1e-12; v += step) {
    TrackerParams p = base;
    if (name == "alpha") p.rcm.alpha = v;
    if (name == "lambda") p.rcm.lambda = v;
    if (name == "theta_rcm") p.rcm.theta_rcm = v;
    if (name == "theta_iou") p.rcm.theta_iou = v;

    double hota = 0.0, mota = 0.0, idf1 = 0.0;
    long idsw = 0;
    int scored = 0;
    for (const auto& s : seqs) {
      const TrajectorySet pred =
          trajectory_from_rows(rows_from_outputs(run_sequence(s.inputs, p, s.calib)));
      const EvalReport rep = evaluate(s.gt, pred, false);
      if (rep.hota) hota += rep.hota->hota;
      if (rep.clearmot) {
        mota += rep.clearmot->mota;
        idsw += rep.clearmot->idsw;
      }
      if (rep.idf1) idf1 += *rep.idf1;
      ++scored;
    }
    const double n = std::max(1, scored);
    std::fprintf(f, "%.6f,%.6f,%.6f,%.6f,%ld\n", v, hota / n, mota / n, idf1 / n, idsw);
  }
  if (std::fclose(f) != 0) throw IoError(o.out + ": write failed");
  std::printf("swept %s over %zu sequence(s) -> %s\n", name.c_str(), seqs.size(), o.out.c_str());
}

struct RenderOpts {
  std::string seq, pred, out_dir, frames;
};

const char* id_color(int id) {
  static const char* kPalette[8] = {"#e6553a", "#2e86de", "#27ae60", "#f1c40f",
                                    "#9b59b6", "#16a085", "#e67e22", "#fd79a8"};
  return kPalette[((id % 8) + 8) % 8];
}

// 20 m range buckets, near = warm, far = cool.
const char* range_color(double range) {
  static const char* kBuckets[10] = {"#ff4f3d", "#ff7a40", "#ffa54a", "#ffd05e", "#f2ee6f",
                                     "#b8e06c", "#7fd08a", "#55bbae", "#4f99d0", "#6f7fe8"};
  int idx = static_cast<int>(range / 20.0);
  idx = std::clamp(idx, 0, 9);
  return kBuckets[idx];
}

void run_render(const RenderOpts& o) {
  const SequenceBundle b = load_bundle(o.seq);
  const TrajectorySet pred = trajectory_from_rows(read_mot_file(o.pred));
  fs::create_directories(o.out_dir);

  int first = 1, last = b.info.seq_length;
  if (!o.frames.empty()) {
    char extra = 0;
    if (std::sscanf(o.frames.c_str(), "%d:%d%c", &first, &last, &extra) != 2) {
      throw UsageError("--frames must look like A:B");
    }
  }
  last = std::min(last, b.info.seq_length);
  if (first < 1 || first > last) throw UsageError("--frames range is empty");

  int written = 0;
  for (int f = first; f <= last; ++f) {
    char name[64];
    std::snprintf(name, sizeof name, "/frame_%06d.svg", f);
    std::FILE* svg = std::fopen((o.out_dir + name).c_str(), "w");
    if (svg == nullptr) throw IoError(o.out_dir + name + ": cannot open for writing");

    const int W = b.info.im_width, H = b.info.im_height;
    std::fprintf(svg,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %d %d\" "
                 "width=\"%d\" height=\"%d\">\n",
                 W, H, W / 2, H / 2);
    std::fprintf(svg, "<rect width=\"%d\" height=\"%d\" fill=\"#10222f\"/>\n", W, H);
    std::fprintf(svg,
                 "<rect x=\"1\" y=\"1\" width=\"%d\" height=\"%d\" fill=\"none\" "
                 "stroke=\"#33505f\" stroke-width=\"2\"/>\n",
                 W - 2, H - 2);
    std::fprintf(svg, "<line x1=\"0\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"#3c5a6e\"/>\n",
                 H / 2.0, W, H / 2.0);

    if (b.calib) {
      for (const auto& p : b.radar[f - 1]) {
        const auto px = project_to_image(spherical_to_cartesian(p), *b.calib);
        if (!px) continue;
        const double r = 1.5 + std::max(0.0, p.power) / 6.0;
        std::fprintf(svg,
                     "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"%s\" "
                     "fill-opacity=\"0.8\"/>\n",
                     px->u, px->v, r, range_color(p.range));
      }
    }

    if (b.gt) {
      if (auto it = b.gt->frames.find(f); it != b.gt->frames.end()) {
        for (const auto& tb : it->second) {
          std::fprintf(svg,
                       "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                       "fill=\"none\" stroke=\"#8fa6b5\" stroke-dasharray=\"6,4\"/>\n",
                       tb.bbox.x, tb.bbox.y, tb.bbox.w, tb.bbox.h);
        }
      }
    }

    if (auto it = pred.frames.find(f); it != pred.frames.end()) {
      for (const auto& tb : it->second) {
        const char* col = id_color(tb.id);
        std::fprintf(svg,
                     "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\" "
                     "fill-opacity=\"0.15\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                     tb.bbox.x, tb.bbox.y, tb.bbox.w, tb.bbox.h, col, col);
        std::fprintf(svg,
                     "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\" font-size=\"22\" "
                     "font-family=\"sans-serif\">%d</text>\n",
                     tb.bbox.x + 2.0, tb.bbox.y - 5.0, col, tb.id);
      }
    }

    std::fputs("</svg>\n", svg);
    if (std::fclose(svg) != 0) throw IoError(o.out_dir + name + ": write failed");
    ++written;
  }
  std::printf("rendered %d frames to %s\n", written, o.out_dir.c_str());
}

struct BenchOpts {
  std::string seq;
  int repeat = 1;
};

void run_bench(const BenchOpts& o) {
  const SequenceBundle b = load_bundle(o.seq);
  const auto inputs = make_inputs(b);
  for (const MatcherKind kind : {MatcherKind::iou, MatcherKind::rcm}) {
    const char* label = kind == MatcherKind::iou ? "iou" : "rcm";
    TrackerParams params;
    params.matcher = kind;
    const Calibration calib = pick_calibration(b, params, o.seq);

    std::vector<double> ms;
    ms.reserve(static_cast<size_t>(inputs.size()) * o.repeat);
    double total_ms = 0.0;
    for (int rep = 0; rep < o.repeat; ++rep) {
      Tracker tracker(params, calib);
      for (const auto& input : inputs) {
        const auto t0 = std::chrono::steady_clock::now();
        tracker.step(input);
        const auto t1 = std::chrono::steady_clock::now();
        const double dt = std::chrono::duration<double, std::milli>(t1 - t0).count();
        ms.push_back(dt);
        total_ms += dt;
      }
    }
    if (ms.empty()) {
      std::printf("matcher=%s frames=0\n", label);
      continue;
    }
    std::sort(ms.begin(), ms.end());
    const double median = ms[ms.size() / 2];
    const double p95 = ms[static_cast<size_t>(0.95 * (ms.size() - 1))];
    const double fps = ms.size() / (total_ms / 1000.0);
    std::printf("matcher=%s frames=%zu median_ms=%.3f p95_ms=%.3f fps=%.1f\n", label, ms.size(),
                median, p95, fps);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radar-camera multi-object tracking toolkit"};
  app.require_subcommand(1);

  GenOpts gen_opts;
  auto* gen = app.add_subcommand("gen", "generate synthetic sequence directories");
  gen->add_option("--config", gen_opts.config, "scenario config (INI)");
  auto* seed_opt = gen->add_option("--seed", gen_opts.seed, "override the config seed");
  gen->add_option("--out-dir", gen_opts.out_dir, "output directory")->required();
  gen->add_option("--suite", gen_opts.suite, "emit a named benchmark suite")
      ->check(CLI::IsMember({"usv-bench-20"}));
  gen->callback([&] { gen_opts.seed_set = seed_opt->count() > 0; });

  TrackOpts track_opts;
  auto* track = app.add_subcommand("track", "run the tracker over a sequence directory");
  track->add_option("--seq", track_opts.seq, "sequence directory")->required();
  track->add_option("--matcher", track_opts.matcher, "association matcher (iou|rcm)")
      ->check(CLI::IsMember({"iou", "rcm"}));
  track->add_option("--params", track_opts.params, "run config (INI)");
  track->add_option("--out", track_opts.out, "output result file")->required();

  EvalOpts eval_opts;
  auto* eval = app.add_subcommand("eval", "score predictions against ground truth");
  eval->add_option("--gt", eval_opts.gt, "ground-truth MOT file")->required();
  eval->add_option("--pred", eval_opts.pred, "prediction MOT file")->required();
  eval->add_flag("--per-class", eval_opts.per_class, "also report per-class HOTA");
  eval->add_option("--out", eval_opts.out, "write key=value report here");

  SweepOpts sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "sweep one rcm parameter, write metric CSV");
  sweep->add_option("--seq-dir", sweep_opts.seq_dir, "sequence directory or directory of them")
      ->required();
  sweep->add_option("--param", sweep_opts.param, "name=start:step:end")->required();
  sweep->add_option("--matcher", sweep_opts.matcher, "association matcher (iou|rcm)")
      ->check(CLI::IsMember({"iou", "rcm"}));
  sweep->add_option("--out", sweep_opts.out, "output CSV file")->required();

  RenderOpts render_opts;
  auto* render = app.add_subcommand("render", "render frames to SVG overlays");
  render->add_option("--seq", render_opts.seq, "sequence directory")->required();
  render->add_option("--pred", render_opts.pred, "prediction MOT file")->required();
  render->add_option("--out-dir", render_opts.out_dir, "output directory")->required();
  render->add_option("--frames", render_opts.frames, "frame range A:B (default all)");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "time both matchers over a sequence");
  bench->add_option("--seq", bench_opts.seq, "sequence directory")->required();
  bench->add_option("--repeat", bench_opts.repeat, "number of timed repetitions")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) run_gen(gen_opts);
    if (*track) run_track(track_opts);
    if (*eval) run_eval(eval_opts);
    if (*sweep) run_sweep(sweep_opts);
    if (*render) run_render(render_opts);
    if (*bench) run_bench(bench_opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
