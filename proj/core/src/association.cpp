#include <rctrack/association.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rctrack {

double iou_distance(const BBox& track_box, const BBox& det_box) {
  return 1.0 - bbox_iou(track_box, det_box);
}

double radar_mahalanobis(const TrackDynamics& t, const ClusterDynamics& c) {
  if (t.sample_count < 1) {
    throw std::invalid_argument("radar_mahalanobis: no radar history on track");
  }
  const double dv = c.v_r - t.v_r;
  const double dpsi = wrap_angle(c.psi - t.psi);
  return std::sqrt(dv * dv / t.var_v + dpsi * dpsi / t.var_psi);
}

double normalize_radar_distance(double d, double lambda) {
  if (d < 0.0) throw std::invalid_argument("normalize_radar_distance: negative distance");
  if (!(lambda > 0.0)) throw std::invalid_argument("normalize_radar_distance: lambda must be > 0");
  return 1.0 - std::exp(-lambda * d);
}

double rcm_cost(double d_hat, double d_iou, const RcmParams& p) {
  if (d_hat > p.theta_rcm || d_iou > p.theta_iou) return 1.0;
  return p.alpha * d_hat + (1.0 - p.alpha) * d_iou;
}

CostMatrix iou_cost_matrix(const std::vector<BBox>& track_boxes,
                           const std::vector<BBox>& det_boxes, double gate_iou) {
  CostMatrix m = CostMatrix::zeros(static_cast<int>(track_boxes.size()),
                                   static_cast<int>(det_boxes.size()));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      const double d = iou_distance(track_boxes[i], det_boxes[j]);
      m.at(i, j) = d > gate_iou ? 1.0 : d;
    }
  }
  return m;
}

CostMatrix rcm_cost_matrix(const std::vector<BBox>& track_boxes,
                           const std::vector<TrackDynamics>& track_dynamics,
                           const std::vector<BBox>& det_boxes,
                           const std::vector<std::optional<ClusterDynamics>>& det_dynamics,
                           const RcmParams& p) {
  CostMatrix m = CostMatrix::zeros(static_cast<int>(track_boxes.size()),
                                   static_cast<int>(det_boxes.size()));
  for (int i = 0; i < m.rows; ++i) {
    const bool track_has_radar = track_dynamics[i].sample_count >= 1;
    for (int j = 0; j < m.cols; ++j) {
      const double d_iou = iou_distance(track_boxes[i], det_boxes[j]);
      if (track_has_radar && det_dynamics[j]) {
        const double d = radar_mahalanobis(track_dynamics[i], *det_dynamics[j]);
        m.at(i, j) = rcm_cost(normalize_radar_distance(d, p.lambda), d_iou, p);
      } else {
        // No radar evidence on one side: pure-geometry degenerate of the cost.
        m.at(i, j) = d_iou > p.theta_iou ? 1.0 : d_iou;
      }
    }
  }
  return m;
}

TrackDynamics update_track_dynamics(const TrackDynamics& t, const ClusterDynamics& c) {
  TrackDynamics out;
  if (t.sample_count == 0) {
    out.v_r = c.v_r;
    out.psi = wrap_angle(c.psi);
    out.var_v = kVarVFloor;
    out.var_psi = kVarPsiFloor;
    out.sample_count = 1;
    return out;
  }
  constexpr double kGamma = 0.9;
  const double dv = c.v_r - t.v_r;
  const double dpsi = wrap_angle(c.psi - t.psi);
  out.v_r = kGamma * t.v_r + (1.0 - kGamma) * c.v_r;
  out.psi = wrap_angle(t.psi + (1.0 - kGamma) * dpsi);
  out.var_v = std::max(kVarVFloor, kGamma * t.var_v + (1.0 - kGamma) * dv * dv);
  out.var_psi = std::max(kVarPsiFloor, kGamma * t.var_psi + (1.0 - kGamma) * dpsi * dpsi);
  out.sample_count = t.sample_count + 1;
  return out;
}

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path solve over a sub-rectangle of m, given as index
// lists. Requires row_ids.size() <= col_ids.size(). Outputs, when requested:
// col_of_row (positions into col_ids) and duals aligned with row_ids/col_ids.
double ssp_solve(const CostMatrix& m, const std::vector<int>& row_ids,
                 const std::vector<int>& col_ids, std::vector<int>* col_of_row_out,
                 std::vector<double>* u_out, std::vector<double>* v_out) {
  const int nr = static_cast<int>(row_ids.size());
  const int nc = static_cast<int>(col_ids.size());
  std::vector<double> u(nr, 0.0), v(nc, 0.0);
  std::vector<int> col4row(nr, -1), row4col(nc, -1);
  std::vector<double> shortest(nc);
  std::vector<int> path(nc);
  std::vector<char> sr(nr), sc(nc);

  for (int cur = 0; cur < nr; ++cur) {
    std::fill(shortest.begin(), shortest.end(), kInf);
    std::fill(sr.begin(), sr.end(), 0);
    std::fill(sc.begin(), sc.end(), 0);
    double min_val = 0.0;
    int i = cur;
    int sink = -1;
    while (sink == -1) {
      sr[i] = 1;
      int index = -1;
      double lowest = kInf;
      for (int j = 0; j < nc; ++j) {
        if (sc[j]) continue;
        const double red = min_val + m.at(row_ids[i], col_ids[j]) - u[i] - v[j];
        if (red < shortest[j]) {
          shortest[j] = red;
          path[j] = i;
        }
        if (shortest[j] < lowest ||
            (shortest[j] == lowest && row4col[j] == -1 && index >= 0 &&
             row4col[index] != -1)) {
          lowest = shortest[j];
          index = j;
        }
      }
      min_val = lowest;
      if (sink == -1) {
        if (row4col[index] == -1) {
          sink = index;
        } else {
          sc[index] = 1;
          i = row4col[index];
        }
      }
    }

    u[cur] += min_val;
    for (int i2 = 0; i2 < nr; ++i2) {
      if (sr[i2] && i2 != cur) u[i2] += min_val - shortest[col4row[i2]];
    }
    for (int j = 0; j < nc; ++j) {
      if (sc[j]) v[j] -= min_val - shortest[j];
    }

    int j = sink;
    while (true) {
      const int i2 = path[j];
      row4col[j] = i2;
      std::swap(col4row[i2], j);
      if (i2 == cur) break;
    }
  }

  double total = 0.0;
  for (int i = 0; i < nr; ++i) total += m.at(row_ids[i], col_ids[col4row[i]]);
  if (col_of_row_out) *col_of_row_out = col4row;
  if (u_out) *u_out = u;
  if (v_out) *v_out = v;
  return total;
}

// Orientation-independent optimum over a sub-rectangle; only the total.
double sub_optimum(const CostMatrix& m, const std::vector<int>& row_ids,
                   const std::vector<int>& col_ids) {
  if (row_ids.empty() || col_ids.empty()) return 0.0;
  if (row_ids.size() <= col_ids.size()) {
    return ssp_solve(m, row_ids, col_ids, nullptr, nullptr, nullptr);
  }
  CostMatrix t = CostMatrix::zeros(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return ssp_solve(t, col_ids, row_ids, nullptr, nullptr, nullptr);
}

}  // namespace

Assignment linear_assignment(const CostMatrix& m, double gate) {
  Assignment out;
  if (m.empty()) {
    out.unmatched_rows.resize(m.rows);
    std::iota(out.unmatched_rows.begin(), out.unmatched_rows.end(), 0);
    out.unmatched_cols.resize(m.cols);
    std::iota(out.unmatched_cols.begin(), out.unmatched_cols.end(), 0);
    return out;
  }

  std::vector<int> all_rows(m.rows), all_cols(m.cols);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::iota(all_cols.begin(), all_cols.end(), 0);

  // Full solve plus duals, normalized to the original orientation.
  std::vector<int> assigned_col(m.rows, -1);
  std::vector<double> u, v;
  double c_star;
  if (m.rows <= m.cols) {
    std::vector<int> col4row;
    c_star = ssp_solve(m, all_rows, all_cols, &col4row, &u, &v);
    for (int i = 0; i < m.rows; ++i) assigned_col[i] = col4row[i];
  } else {
    CostMatrix t = CostMatrix::zeros(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    std::vector<int> row4col;
    c_star = ssp_solve(t, all_cols, all_rows, &row4col, &v, &u);
    for (int j = 0; j < m.cols; ++j) assigned_col[row4col[j]] = j;
  }

  // Complementary slackness: a pair can appear in some optimal assignment
  // only if its reduced cost vanishes. That prunes the tie-break search.
  std::vector<std::vector<int>> candidates(m.rows);
  bool unique = true;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (m.at(i, j) - u[i] - v[j] <= kTieTol) candidates[i].push_back(j);
    }
    if (assigned_col[i] >= 0) {
      if (candidates[i].size() != 1 || candidates[i][0] != assigned_col[i]) unique = false;
    } else if (!candidates[i].empty()) {
      unique = false;
    }
  }

  std::vector<std::pair<int, int>> pairs;
  if (unique) {
    for (int i = 0; i < m.rows; ++i) {
      if (assigned_col[i] >= 0) pairs.emplace_back(i, assigned_col[i]);
    }
  } else {
    // Commit rows in order to the smallest column index that still admits an
    // optimal completion; verified by re-solving the remaining subproblem.
    std::vector<char> col_used(m.cols, 0);
    double budget = c_star;
    int need = std::min(m.rows, m.cols);
    for (int i = 0; i < m.rows && need > 0; ++i) {
      std::vector<int> rest_rows;
      for (int r = i + 1; r < m.rows; ++r) rest_rows.push_back(r);
      const int rows_remaining = m.rows - i;
      const bool may_skip = need < rows_remaining;

      int chosen = -1;
      double chosen_cost = 0.0;
      for (int j : candidates[i]) {
        if (col_used[j]) continue;
        std::vector<int> rest_cols;
        for (int c = 0; c < m.cols; ++c) {
          if (!col_used[c] && c != j) rest_cols.push_back(c);
        }
        const double sub = sub_optimum(m, rest_rows, rest_cols);
        if (m.at(i, j) + sub <= budget + kTieTol) {
          chosen = j;
          chosen_cost = m.at(i, j);
          break;
        }
      }
      if (chosen < 0 && !may_skip) {
        // Float-degenerate corner: forced row, nothing met the budget within
        // tolerance. Fall back to the cheapest completion, still deterministic.
        double best = kInf;
        for (int j = 0; j < m.cols; ++j) {
          if (col_used[j]) continue;
          std::vector<int> rest_cols;
          for (int c = 0; c < m.cols; ++c) {
            if (!col_used[c] && c != j) rest_cols.push_back(c);
          }
          const double tot = m.at(i, j) + sub_optimum(m, rest_rows, rest_cols);
          if (tot < best - kTieTol) {
            best = tot;
            chosen = j;
            chosen_cost = m.at(i, j);
          }
        }
      }
      if (chosen >= 0) {
        col_used[chosen] = 1;
        pairs.emplace_back(i, chosen);
        budget -= chosen_cost;
        --need;
      }
    }
  }

  std::vector<char> row_matched(m.rows, 0), col_matched(m.cols, 0);
  for (const auto& [r, c] : pairs) {
    if (m.at(r, c) >= gate) continue;  // demoted
    out.matches.emplace_back(r, c);
    row_matched[r] = 1;
    col_matched[c] = 1;
  }
  for (int i = 0; i < m.rows; ++i) {
    if (!row_matched[i]) out.unmatched_rows.push_back(i);
  }
  for (int j = 0; j < m.cols; ++j) {
    if (!col_matched[j]) out.unmatched_cols.push_back(j);
  }
  return out;
}

}  // namespace rctrack
