#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <rctrack/types.hpp>

namespace rctrack {

struct TrackedBox {
  int id = 0;
  ClassId class_id = ClassId::ship;
  BBox bbox;
};

// Frame -> boxes present in that frame; at most one box per (frame, id).
struct TrajectorySet {
  std::map<int, std::vector<TrackedBox>> frames;

  void add(int frame, const TrackedBox& box) { frames[frame].push_back(box); }
  long total_boxes() const {
    long n = 0;
    for (const auto& [f, boxes] : frames) n += static_cast<long>(boxes.size());
    return n;
  }
  bool empty() const { return total_boxes() == 0; }
};

struct ClearMotResult {
  double mota = 0.0;
  long fp = 0;
  long fn = 0;
  long idsw = 0;
  long gt_total = 0;
};

struct HotaResult {
  double hota = 0.0;
  double deta = 0.0;
  double assa = 0.0;
};

struct EvalReport {
  std::optional<HotaResult> hota;
  std::optional<ClearMotResult> clearmot;
  std::optional<double> idf1;
  std::map<ClassId, std::optional<HotaResult>> per_class;
};

// One-to-one matching maximizing total IoU among pairs with IoU >= alpha
// (up to a 1e-9 slack so grid-boundary overlaps count). Returns index pairs
// (gt, pred).
std::vector<std::pair<int, int>> frame_match(const std::vector<TrackedBox>& gt_boxes,
                                             const std::vector<TrackedBox>& pred_boxes,
                                             double alpha);

// CLEAR-MOT with carry-over of previous correspondences before optimal
// matching of the leftovers. Returns nullopt when the ground truth is empty.
std::optional<ClearMotResult> compute_clearmot(const TrajectorySet& gt,
                                               const TrajectorySet& pred,
                                               double alpha = 0.5);

// Identity-level F1: trajectories matched globally to maximize total overlap.
// Returns nullopt when both sets are empty.
std::optional<double> compute_idf1(const TrajectorySet& gt, const TrajectorySet& pred,
                                   double alpha = 0.5);

// HOTA over the 19-threshold grid alpha = 0.05..0.95.
std::optional<HotaResult> compute_hota(const TrajectorySet& gt, const TrajectorySet& pred);

EvalReport evaluate(const TrajectorySet& gt, const TrajectorySet& pred,
                    bool per_class = false);

}  // namespace rctrack
