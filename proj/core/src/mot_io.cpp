#include <rctrack/mot_io.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string_view>

#include <json.hpp>

namespace rctrack {

namespace {

[[noreturn]] void fail(const std::string& file, int line, const std::string& what) {
  throw IoError(file + ":" + std::to_string(line) + ": " + what);
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return std::isspace(c) == 0; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string_view> split(std::string_view sv, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = sv.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(sv.substr(start));
      return out;
    }
    out.push_back(sv.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view sv, const std::string& file, int line) {
  double v = 0.0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size() || !std::isfinite(v)) {
    fail(file, line, "bad number '" + std::string(sv) + "'");
  }
  return v;
}

int parse_int(std::string_view sv, const std::string& file, int line) {
  int v = 0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) {
    fail(file, line, "bad integer '" + std::string(sv) + "'");
  }
  return v;
}

uint64_t parse_u64(std::string_view sv, const std::string& file, int line) {
  uint64_t v = 0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) {
    fail(file, line, "bad unsigned integer '" + std::string(sv) + "'");
  }
  return v;
}

struct IniEntry {
  std::string key, value;
  int line = 0;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;
};

std::vector<IniSection> parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::vector<IniSection> out;
  std::string line;
  int ln = 0;
  while (next_line(in, line)) {
    ++ln;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) fail(path, ln, "malformed section header");
      out.push_back({t.substr(1, t.size() - 2), ln, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(path, ln, "expected key=value");
    if (out.empty()) fail(path, ln, "key outside any section");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(path, ln, "empty key");
    out.back().entries.push_back({std::move(key), std::move(value), ln});
  }
  return out;
}

class FileWriter {
 public:
  explicit FileWriter(const std::string& path) : path_(path), f_(std::fopen(path.c_str(), "w")) {
    if (f_ == nullptr) throw IoError(path + ": cannot open for writing");
  }
  ~FileWriter() {
    if (f_ != nullptr) std::fclose(f_);
  }
  FileWriter(const FileWriter&) = delete;
  FileWriter& operator=(const FileWriter&) = delete;

  void put(const char* buf) {
    if (std::fputs(buf, f_) < 0) throw IoError(path_ + ": write failed");
  }
  void close() {
    if (std::fclose(f_) != 0) {
      f_ = nullptr;
      throw IoError(path_ + ": write failed");
    }
    f_ = nullptr;
  }

 private:
  std::string path_;
  std::FILE* f_ = nullptr;
};

constexpr char kRadarHeader[] = "frame,range_m,azimuth_rad,elevation_rad,doppler_mps,power_db";

}  // namespace

std::vector<MotRow> read_mot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::vector<MotRow> rows;
  std::string line;
  int ln = 0;
  while (next_line(in, line)) {
    ++ln;
    const auto f = split(line, ',');
    if (f.size() != 9) fail(path, ln, "expected 9 fields, got " + std::to_string(f.size()));
    MotRow r;
    r.frame = parse_int(f[0], path, ln);
    r.id = parse_int(f[1], path, ln);
    r.bbox.x = parse_double(f[2], path, ln);
    r.bbox.y = parse_double(f[3], path, ln);
    r.bbox.w = parse_double(f[4], path, ln);
    r.bbox.h = parse_double(f[5], path, ln);
    r.conf = parse_double(f[6], path, ln);
    r.class_id = parse_int(f[7], path, ln);
    r.visibility = parse_double(f[8], path, ln);
    if (r.frame < 1) fail(path, ln, "frame must be >= 1");
    if (r.id == 0 || r.id < -1) fail(path, ln, "id must be positive or -1");
    if (!(r.bbox.w > 0.0) || !(r.bbox.h > 0.0)) fail(path, ln, "box size must be positive");
    if (!(r.conf >= 0.0 && r.conf <= 1.0)) fail(path, ln, "confidence outside [0,1]");
    if (!valid_class_id(r.class_id)) fail(path, ln, "unknown class id");
    if (!(r.visibility >= 0.0 && r.visibility <= 1.0)) fail(path, ln, "visibility outside [0,1]");
    rows.push_back(r);
  }
  return rows;
}

void write_mot_file(const std::string& path, std::vector<MotRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const MotRow& a, const MotRow& b) {
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.id < b.id;
  });
  FileWriter out(path);
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%.6f\n", r.frame, r.id,
                  r.bbox.x, r.bbox.y, r.bbox.w, r.bbox.h, r.conf, r.class_id, r.visibility);
    out.put(buf);
  }
  out.close();
}

std::vector<RadarPoint> read_radar_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::string line;
  if (!next_line(in, line)) throw IoError(path + ": missing header");
  if (line != kRadarHeader) throw IoError(path + ":1: bad header '" + line + "'");
  std::vector<RadarPoint> points;
  int ln = 1;
  while (next_line(in, line)) {
    ++ln;
    const auto f = split(line, ',');
    if (f.size() != 6) fail(path, ln, "expected 6 fields, got " + std::to_string(f.size()));
    RadarPoint p;
    p.frame = parse_int(f[0], path, ln);
    p.range = parse_double(f[1], path, ln);
    p.azimuth = parse_double(f[2], path, ln);
    p.elevation = parse_double(f[3], path, ln);
    p.doppler = parse_double(f[4], path, ln);
    p.power = parse_double(f[5], path, ln);
    if (p.frame < 1) fail(path, ln, "frame must be >= 1");
    if (!(p.range > 0.0)) fail(path, ln, "range must be positive");
    points.push_back(p);
  }
  return points;
}

void write_radar_csv(const std::string& path, const std::vector<RadarPoint>& points) {
  FileWriter out(path);
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s\n", kRadarHeader);
  out.put(buf);
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", p.frame, p.range, p.azimuth,
                  p.elevation, p.doppler, p.power);
    out.put(buf);
  }
  out.close();
}

Calibration read_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!j.is_object()) throw IoError(path + ": top level must be an object");
  static const std::set<std::string> kAllowed = {"format_version", "fx", "fy", "cx", "cy",
                                                 "image_width",    "image_height",
                                                 "T_radar_to_cam"};
  for (const auto& item : j.items()) {
    if (kAllowed.count(item.key()) == 0) throw IoError(path + ": unknown key '" + item.key() + "'");
  }
  for (const auto& key : kAllowed) {
    if (!j.contains(key)) throw IoError(path + ": missing key '" + key + "'");
  }
  Calibration c;
  try {
    if (j["format_version"].get<int>() != 1) throw IoError(path + ": unsupported format_version");
    c.fx = j["fx"].get<double>();
    c.fy = j["fy"].get<double>();
    c.cx = j["cx"].get<double>();
    c.cy = j["cy"].get<double>();
    c.image_w = j["image_width"].get<int>();
    c.image_h = j["image_height"].get<int>();
    const auto& arr = j["T_radar_to_cam"];
    if (!arr.is_array() || arr.size() != 16) {
      throw IoError(path + ": T_radar_to_cam must hold 16 numbers row-major");
    }
    for (int r = 0; r < 4; ++r) {
      for (int col = 0; col < 4; ++col) {
        c.T_radar_to_cam(r, col) = arr[4 * r + col].get<double>();
      }
    }
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (const auto err = validate_calibration(c)) throw IoError(path + ": " + *err);
  return c;
}

void write_calibration(const std::string& path, const Calibration& calib) {
  if (const auto err = validate_calibration(calib)) throw IoError(path + ": " + *err);
  nlohmann::json j;
  j["format_version"] = 1;
  j["fx"] = calib.fx;
  j["fy"] = calib.fy;
  j["cx"] = calib.cx;
  j["cy"] = calib.cy;
  j["image_width"] = calib.image_w;
  j["image_height"] = calib.image_h;
  std::vector<double> t;
  t.reserve(16);
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) t.push_back(calib.T_radar_to_cam(r, col));
  }
  j["T_radar_to_cam"] = t;
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError(path + ": write failed");
}

SeqInfo read_seqinfo(const std::string& path) {
  SeqInfo info;
  bool have_name = false, have_rate = false, have_len = false, have_w = false, have_h = false;
  for (const auto& sec : parse_ini(path)) {
    if (sec.name != "Sequence") fail(path, sec.line, "unknown section [" + sec.name + "]");
    for (const auto& e : sec.entries) {
      if (e.key == "name") {
        info.name = e.value;
        have_name = true;
      } else if (e.key == "frameRate") {
        info.frame_rate = parse_int(e.value, path, e.line);
        have_rate = true;
      } else if (e.key == "seqLength") {
        info.seq_length = parse_int(e.value, path, e.line);
        have_len = true;
      } else if (e.key == "imWidth") {
        info.im_width = parse_int(e.value, path, e.line);
        have_w = true;
      } else if (e.key == "imHeight") {
        info.im_height = parse_int(e.value, path, e.line);
        have_h = true;
      } else if (e.key == "format_version") {
        if (parse_int(e.value, path, e.line) != 1) {
          fail(path, e.line, "unsupported format_version");
        }
      } else if (e.key == "imDir" || e.key == "imExt") {
        // standard MOT keys, carried but unused
      } else {
        fail(path, e.line, "unknown key '" + e.key + "'");
      }
    }
  }
  if (!have_name || !have_rate || !have_len || !have_w || !have_h) {
    throw IoError(path + ": missing required key");
  }
  if (info.frame_rate < 1 || info.seq_length < 0 || info.im_width < 1 || info.im_height < 1) {
    throw IoError(path + ": bad sequence geometry");
  }
  return info;
}

void write_seqinfo(const std::string& path, const SeqInfo& info) {
  FileWriter out(path);
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "[Sequence]\nformat_version=1\nname=%s\nimDir=img1\nframeRate=%d\nseqLength=%d\n"
                "imWidth=%d\nimHeight=%d\nimExt=.jpg\n",
                info.name.c_str(), info.frame_rate, info.seq_length, info.im_width,
                info.im_height);
  out.put(buf);
  out.close();
}

TrackerParams read_run_config(const std::string& path) {
  TrackerParams p;
  for (const auto& sec : parse_ini(path)) {
    if (sec.name == "tracker") {
      for (const auto& e : sec.entries) {
        if (e.key == "tau_high") {
          p.tau_high = parse_double(e.value, path, e.line);
        } else if (e.key == "tau_low") {
          p.tau_low = parse_double(e.value, path, e.line);
        } else if (e.key == "tau_new") {
          p.tau_new = parse_double(e.value, path, e.line);
        } else if (e.key == "max_lost") {
          p.max_lost = parse_int(e.value, path, e.line);
        } else if (e.key == "stage1_gate") {
          p.stage1_gate = parse_double(e.value, path, e.line);
        } else if (e.key == "matcher") {
          if (e.value == "iou") {
            p.matcher = MatcherKind::iou;
          } else if (e.value == "rcm") {
            p.matcher = MatcherKind::rcm;
          } else {
            fail(path, e.line, "matcher must be iou or rcm");
          }
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else if (sec.name == "rcm") {
      for (const auto& e : sec.entries) {
        if (e.key == "alpha") {
          p.rcm.alpha = parse_double(e.value, path, e.line);
        } else if (e.key == "lambda") {
          p.rcm.lambda = parse_double(e.value, path, e.line);
        } else if (e.key == "theta_rcm") {
          p.rcm.theta_rcm = parse_double(e.value, path, e.line);
        } else if (e.key == "theta_iou") {
          p.rcm.theta_iou = parse_double(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else if (sec.name == "dbscan") {
      for (const auto& e : sec.entries) {
        if (e.key == "eps") {
          p.dbscan.eps = parse_double(e.value, path, e.line);
        } else if (e.key == "min_pts") {
          p.dbscan.min_pts = parse_int(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else {
      fail(path, sec.line, "unknown section [" + sec.name + "]");
    }
  }
  if (!(p.tau_low >= 0.0 && p.tau_low <= p.tau_high && p.tau_high <= 1.0)) {
    throw IoError(path + ": need 0 <= tau_low <= tau_high <= 1");
  }
  if (!(p.tau_new >= 0.0 && p.tau_new <= 1.0)) throw IoError(path + ": tau_new outside [0,1]");
  if (p.max_lost < 1) throw IoError(path + ": max_lost must be >= 1");
  if (!(p.stage1_gate > 0.0 && p.stage1_gate <= 1.0)) {
    throw IoError(path + ": stage1_gate outside (0,1]");
  }
  if (!(p.rcm.alpha >= 0.0 && p.rcm.alpha <= 1.0)) throw IoError(path + ": alpha outside [0,1]");
  if (!(p.rcm.lambda > 0.0)) throw IoError(path + ": lambda must be positive");
  if (!(p.rcm.theta_rcm > 0.0 && p.rcm.theta_rcm <= 1.0)) {
    throw IoError(path + ": theta_rcm outside (0,1]");
  }
  if (!(p.rcm.theta_iou > 0.0 && p.rcm.theta_iou <= 1.0)) {
    throw IoError(path + ": theta_iou outside (0,1]");
  }
  if (!(p.dbscan.eps > 0.0)) throw IoError(path + ": eps must be positive");
  if (p.dbscan.min_pts < 1) throw IoError(path + ": min_pts must be >= 1");
  return p;
}

ScenarioConfig read_scenario_config(const std::string& path) {
  ScenarioConfig c;
  for (const auto& sec : parse_ini(path)) {
    if (sec.name == "scenario") {
      for (const auto& e : sec.entries) {
        if (e.key == "n_objects") {
          c.n_objects = parse_int(e.value, path, e.line);
        } else if (e.key == "class_mix") {
          const auto parts = split(e.value, ',');
          if (parts.size() != 3) fail(path, e.line, "class_mix needs 3 comma-separated weights");
          for (int i = 0; i < 3; ++i) c.class_mix[i] = parse_double(parts[i], path, e.line);
        } else if (e.key == "duration") {
          c.duration = parse_int(e.value, path, e.line);
        } else if (e.key == "frame_rate") {
          c.frame_rate = parse_double(e.value, path, e.line);
        } else if (e.key == "world_width") {
          c.world_width = parse_double(e.value, path, e.line);
        } else if (e.key == "world_length") {
          c.world_length = parse_double(e.value, path, e.line);
        } else if (e.key == "seed") {
          c.seed = parse_u64(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else if (sec.name == "camera") {
      for (const auto& e : sec.entries) {
        if (e.key == "hfov_deg") {
          c.camera.hfov_deg = parse_double(e.value, path, e.line);
        } else if (e.key == "width") {
          c.camera.width = parse_int(e.value, path, e.line);
        } else if (e.key == "height") {
          c.camera.height = parse_int(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else if (sec.name == "radar") {
      for (const auto& e : sec.entries) {
        if (e.key == "hfov_deg") {
          c.radar.hfov_deg = parse_double(e.value, path, e.line);
        } else if (e.key == "vfov_deg") {
          c.radar.vfov_deg = parse_double(e.value, path, e.line);
        } else if (e.key == "max_range") {
          c.radar.max_range = parse_double(e.value, path, e.line);
        } else if (e.key == "range_res") {
          c.radar.range_res = parse_double(e.value, path, e.line);
        } else if (e.key == "vel_res") {
          c.radar.vel_res = parse_double(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else if (sec.name == "noise") {
      for (const auto& e : sec.entries) {
        if (e.key == "det_jitter") {
          c.noise.det_jitter = parse_double(e.value, path, e.line);
        } else if (e.key == "dropout_rate") {
          c.noise.dropout_rate = parse_double(e.value, path, e.line);
        } else if (e.key == "clutter_rate") {
          c.noise.clutter_rate = parse_double(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
    } else if (sec.name == "event") {
      EventSpec ev;
      bool have_kind = false;
      for (const auto& e : sec.entries) {
        if (e.key == "kind") {
          if (e.value == "occlusion") {
            ev.kind = EventKind::occlusion;
          } else if (e.value == "droplet_dropout") {
            ev.kind = EventKind::droplet_dropout;
          } else if (e.value == "sway") {
            ev.kind = EventKind::sway;
          } else {
            fail(path, e.line, "kind must be occlusion, droplet_dropout or sway");
          }
          have_kind = true;
        } else if (e.key == "target") {
          ev.target = parse_int(e.value, path, e.line);
          if (ev.target == 0 || ev.target < -1) fail(path, e.line, "target must be an id or -1");
        } else if (e.key == "start") {
          ev.start = parse_int(e.value, path, e.line);
        } else if (e.key == "end") {
          ev.end = parse_int(e.value, path, e.line);
        } else if (e.key == "intensity") {
          ev.intensity = parse_double(e.value, path, e.line);
        } else {
          fail(path, e.line, "unknown key '" + e.key + "'");
        }
      }
      if (!have_kind) fail(path, sec.line, "[event] needs a kind");
      if (!(ev.start < ev.end)) fail(path, sec.line, "event needs start < end");
      if (!(ev.intensity >= 0.0 && ev.intensity <= 1.0)) {
        fail(path, sec.line, "intensity outside [0,1]");
      }
      c.events.push_back(ev);
    } else {
      fail(path, sec.line, "unknown section [" + sec.name + "]");
    }
  }
  if (c.n_objects < 0) throw IoError(path + ": n_objects must be >= 0");
  if (c.duration < 1) throw IoError(path + ": duration must be >= 1");
  if (!(c.frame_rate > 0.0)) throw IoError(path + ": frame_rate must be positive");
  const double mix_sum = c.class_mix[0] + c.class_mix[1] + c.class_mix[2];
  if (c.class_mix[0] < 0.0 || c.class_mix[1] < 0.0 || c.class_mix[2] < 0.0 || !(mix_sum > 0.0)) {
    throw IoError(path + ": class_mix weights must be nonnegative and sum > 0");
  }
  if (!(c.world_width > 0.0) || !(c.world_length > 0.0)) {
    throw IoError(path + ": world size must be positive");
  }
  if (c.camera.width < 16 || c.camera.height < 16) throw IoError(path + ": camera too small");
  if (!(c.camera.hfov_deg > 0.0 && c.camera.hfov_deg < 180.0)) {
    throw IoError(path + ": camera hfov_deg outside (0,180)");
  }
  if (!(c.radar.hfov_deg > 0.0 && c.radar.hfov_deg <= 360.0) ||
      !(c.radar.vfov_deg > 0.0 && c.radar.vfov_deg < 180.0)) {
    throw IoError(path + ": radar field of view out of range");
  }
  if (!(c.radar.max_range > 0.0) || !(c.radar.range_res > 0.0) || !(c.radar.vel_res > 0.0)) {
    throw IoError(path + ": radar ranges and resolutions must be positive");
  }
  if (c.noise.det_jitter < 0.0 || c.noise.dropout_rate < 0.0 || c.noise.dropout_rate > 1.0 ||
      c.noise.clutter_rate < 0.0) {
    throw IoError(path + ": noise rates out of range");
  }
  return c;
}

SequenceBundle load_bundle(const std::string& dir) {
  namespace fs = std::filesystem;
  SequenceBundle b;
  b.info = read_seqinfo(dir + "/seqinfo.ini");

  const std::string calib_path = dir + "/calib.json";
  if (fs::exists(calib_path)) b.calib = read_calibration(calib_path);

  const std::string det_path = dir + "/det.txt";
  b.detections.assign(b.info.seq_length, {});
  for (const auto& r : read_mot_file(det_path)) {
    if (r.frame > b.info.seq_length) {
      throw IoError(det_path + ": frame " + std::to_string(r.frame) + " beyond seqLength");
    }
    Detection d;
    d.bbox = r.bbox;
    d.confidence = r.conf;
    d.class_id = static_cast<ClassId>(r.class_id);
    d.frame = r.frame;
    b.detections[r.frame - 1].push_back(d);
  }

  b.radar.assign(b.info.seq_length, {});
  const std::string radar_path = dir + "/radar.csv";
  if (fs::exists(radar_path)) {
    for (auto& p : read_radar_csv(radar_path)) {
      if (p.frame > b.info.seq_length) {
        throw IoError(radar_path + ": frame " + std::to_string(p.frame) + " beyond seqLength");
      }
      b.radar[p.frame - 1].push_back(p);
    }
  }

  const std::string gt_path = dir + "/gt.txt";
  if (fs::exists(gt_path)) b.gt = trajectory_from_rows(read_mot_file(gt_path));
  return b;
}

TrajectorySet trajectory_from_rows(const std::vector<MotRow>& rows) {
  TrajectorySet t;
  for (const auto& r : rows) {
    if (r.id < 1) throw IoError("trajectory rows need positive ids");
    t.add(r.frame, {r.id, static_cast<ClassId>(r.class_id), r.bbox});
  }
  return t;
}

std::vector<MotRow> rows_from_outputs(const std::vector<FrameOutput>& outputs) {
  std::vector<MotRow> rows;
  for (const auto& fo : outputs) {
    for (const auto& t : fo.tracks) {
      MotRow r;
      r.frame = fo.frame;
      r.id = t.id;
      r.bbox = t.bbox;
      r.conf = t.confidence;
      r.class_id = static_cast<int>(t.class_id);
      r.visibility = 1.0;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace rctrack
