#include <rctrack/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <rctrack/association.hpp>

namespace rctrack {

namespace {

constexpr double kAlphaSlack = 1e-9;

// Minimize sum(1 - iou) over pairs with IoU >= alpha; with fixed assignment
// cardinality that is the same as maximizing total IoU over eligible pairs.
std::vector<std::pair<int, int>> match_by_iou(const std::vector<TrackedBox>& gt_boxes,
                                              const std::vector<TrackedBox>& pred_boxes,
                                              double alpha) {
  CostMatrix m = CostMatrix::zeros(static_cast<int>(gt_boxes.size()),
                                   static_cast<int>(pred_boxes.size()));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      const double iou = bbox_iou(gt_boxes[i].bbox, pred_boxes[j].bbox);
      m.at(i, j) = iou >= alpha - kAlphaSlack ? 1.0 - iou : 1.0;
    }
  }
  return linear_assignment(m, kAssignGate).matches;
}

struct PairCounts {
  std::map<std::pair<int, int>, long> tp;  // (gt id, pred id) -> matched frames
  std::map<int, long> gt_count;            // gt id -> total boxes
  std::map<int, long> pred_count;          // pred id -> total boxes
  long tp_total = 0;
  long gt_total = 0;
  long pred_total = 0;
};

PairCounts count_pairs(const TrajectorySet& gt, const TrajectorySet& pred, double alpha) {
  PairCounts pc;
  for (const auto& [f, boxes] : gt.frames) {
    for (const auto& b : boxes) pc.gt_count[b.id] += 1;
    pc.gt_total += static_cast<long>(boxes.size());
  }
  for (const auto& [f, boxes] : pred.frames) {
    for (const auto& b : boxes) pc.pred_count[b.id] += 1;
    pc.pred_total += static_cast<long>(boxes.size());
  }

  std::set<int> all_frames;
  for (const auto& [f, boxes] : gt.frames) all_frames.insert(f);
  for (const auto& [f, boxes] : pred.frames) all_frames.insert(f);
  static const std::vector<TrackedBox> kNone;
  for (int f : all_frames) {
    auto git = gt.frames.find(f);
    auto pit = pred.frames.find(f);
    const auto& g = git == gt.frames.end() ? kNone : git->second;
    const auto& p = pit == pred.frames.end() ? kNone : pit->second;
    for (const auto& [gi, pj] : match_by_iou(g, p, alpha)) {
      pc.tp[{g[gi].id, p[pj].id}] += 1;
      pc.tp_total += 1;
    }
  }
  return pc;
}

}  // namespace

std::vector<std::pair<int, int>> frame_match(const std::vector<TrackedBox>& gt_boxes,
                                             const std::vector<TrackedBox>& pred_boxes,
                                             double alpha) {
  return match_by_iou(gt_boxes, pred_boxes, alpha);
}

std::optional<ClearMotResult> compute_clearmot(const TrajectorySet& gt,
                                               const TrajectorySet& pred, double alpha) {
  ClearMotResult r;
  r.gt_total = gt.total_boxes();
  if (r.gt_total == 0) return std::nullopt;

  std::set<int> all_frames;
  for (const auto& [f, boxes] : gt.frames) all_frames.insert(f);
  for (const auto& [f, boxes] : pred.frames) all_frames.insert(f);

  std::map<int, int> last_match;  // gt id -> most recent matched pred id
  static const std::vector<TrackedBox> kNone;
  for (int f : all_frames) {
    auto git = gt.frames.find(f);
    auto pit = pred.frames.find(f);
    const auto& g = git == gt.frames.end() ? kNone : git->second;
    const auto& p = pit == pred.frames.end() ? kNone : pit->second;

    std::map<int, int> pred_index;  // pred id -> index in p
    for (size_t j = 0; j < p.size(); ++j) pred_index[p[j].id] = static_cast<int>(j);

    // Carry over still-valid correspondences from previous frames first.
    std::vector<char> g_used(g.size(), 0), p_used(p.size(), 0);
    std::vector<std::pair<int, int>> matches;  // (gt idx, pred idx)
    for (size_t i = 0; i < g.size(); ++i) {
      auto lm = last_match.find(g[i].id);
      if (lm == last_match.end()) continue;
      auto pj = pred_index.find(lm->second);
      if (pj == pred_index.end() || p_used[pj->second]) continue;
      if (bbox_iou(g[i].bbox, p[pj->second].bbox) >= alpha - kAlphaSlack) {
        matches.emplace_back(static_cast<int>(i), pj->second);
        g_used[i] = 1;
        p_used[pj->second] = 1;
      }
    }

    // Optimal matching over the leftovers.
    std::vector<TrackedBox> g_rest, p_rest;
    std::vector<int> g_map, p_map;
    for (size_t i = 0; i < g.size(); ++i) {
      if (!g_used[i]) {
        g_rest.push_back(g[i]);
        g_map.push_back(static_cast<int>(i));
      }
    }
    for (size_t j = 0; j < p.size(); ++j) {
      if (!p_used[j]) {
        p_rest.push_back(p[j]);
        p_map.push_back(static_cast<int>(j));
      }
    }
    for (const auto& [gi, pj] : match_by_iou(g_rest, p_rest, alpha)) {
      matches.emplace_back(g_map[gi], p_map[pj]);
      g_used[g_map[gi]] = 1;
      p_used[p_map[pj]] = 1;
    }

    for (const auto& [gi, pj] : matches) {
      auto lm = last_match.find(g[gi].id);
      if (lm != last_match.end() && lm->second != p[pj].id) r.idsw += 1;
      last_match[g[gi].id] = p[pj].id;
    }
    for (size_t i = 0; i < g.size(); ++i) r.fn += g_used[i] ? 0 : 1;
    for (size_t j = 0; j < p.size(); ++j) r.fp += p_used[j] ? 0 : 1;
  }

  r.mota = 1.0 - static_cast<double>(r.fp + r.fn + r.idsw) / static_cast<double>(r.gt_total);
  return r;
}

std::optional<double> compute_idf1(const TrajectorySet& gt, const TrajectorySet& pred,
                                   double alpha) {
  const long gt_total = gt.total_boxes();
  const long pred_total = pred.total_boxes();
  if (gt_total == 0 && pred_total == 0) return std::nullopt;
  if (gt_total == 0 || pred_total == 0) return 0.0;

  const PairCounts pc = count_pairs(gt, pred, alpha);

  // Trajectory-level assignment maximizing total per-frame overlap.
  std::vector<int> gt_ids, pred_ids;
  for (const auto& [id, n] : pc.gt_count) gt_ids.push_back(id);
  for (const auto& [id, n] : pc.pred_count) pred_ids.push_back(id);
  long max_overlap = 1;
  for (const auto& [pair, n] : pc.tp) max_overlap = std::max(max_overlap, n);

  CostMatrix m = CostMatrix::zeros(static_cast<int>(gt_ids.size()),
                                   static_cast<int>(pred_ids.size()));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      auto it = pc.tp.find({gt_ids[i], pred_ids[j]});
      const long overlap = it == pc.tp.end() ? 0 : it->second;
      m.at(i, j) = static_cast<double>(max_overlap - overlap) /
                   static_cast<double>(max_overlap);
    }
  }
  long idtp = 0;
  for (const auto& [i, j] : linear_assignment(m, 1.5).matches) {
    auto it = pc.tp.find({gt_ids[i], pred_ids[j]});
    if (it != pc.tp.end()) idtp += it->second;
  }
  return 2.0 * static_cast<double>(idtp) / static_cast<double>(gt_total + pred_total);
}

std::optional<HotaResult> compute_hota(const TrajectorySet& gt, const TrajectorySet& pred) {
  if (gt.total_boxes() == 0) return std::nullopt;

  HotaResult r;
  constexpr int kThresholds = 19;
  for (int k = 1; k <= kThresholds; ++k) {
    const double alpha = static_cast<double>(k) / 20.0;
    const PairCounts pc = count_pairs(gt, pred, alpha);
    const long fn = pc.gt_total - pc.tp_total;
    const long fp = pc.pred_total - pc.tp_total;
    const double deta = pc.tp_total == 0 && fn + fp == 0
                            ? 0.0
                            : static_cast<double>(pc.tp_total) /
                                  static_cast<double>(pc.tp_total + fn + fp);
    double assa = 0.0;
    if (pc.tp_total > 0) {
      double acc = 0.0;
      for (const auto& [pair, t] : pc.tp) {
        const long gt_n = pc.gt_count.at(pair.first);
        const long pr_n = pc.pred_count.at(pair.second);
        acc += static_cast<double>(t) * static_cast<double>(t) /
               static_cast<double>(gt_n + pr_n - t);
      }
      assa = acc / static_cast<double>(pc.tp_total);
    }
    r.deta += deta / kThresholds;
    r.assa += assa / kThresholds;
    r.hota += std::sqrt(deta * assa) / kThresholds;
  }
  return r;
}

EvalReport evaluate(const TrajectorySet& gt, const TrajectorySet& pred, bool per_class) {
  EvalReport report;
  report.hota = compute_hota(gt, pred);
  report.clearmot = compute_clearmot(gt, pred);
  report.idf1 = compute_idf1(gt, pred);
  if (per_class) {
    for (ClassId c : {ClassId::ship, ClassId::boat, ClassId::vessel}) {
      TrajectorySet gf, pf;
      for (const auto& [f, boxes] : gt.frames) {
        for (const auto& b : boxes) {
          if (b.class_id == c) gf.add(f, b);
        }
      }
      for (const auto& [f, boxes] : pred.frames) {
        for (const auto& b : boxes) {
          if (b.class_id == c) pf.add(f, b);
        }
      }
      report.per_class[c] = compute_hota(gf, pf);
    }
  }
  return report;
}

}  // namespace rctrack
