#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gravswap/analytic.hpp"
#include "gravswap/report.hpp"
#include "gravswap/split_step.hpp"

namespace gravswap::detail {

inline Cell num(double v) { return v; }
inline Cell text(std::string_view s) { return std::string(s); }
inline Cell integer(std::size_t v) { return static_cast<std::int64_t>(v); }

inline std::vector<std::string> moment_columns() {
  return {"plus_mean_x",  "plus_mean_p",  "plus_vxx",  "plus_vpp",  "plus_vxp",
          "minus_mean_x", "minus_mean_p", "minus_vxx", "minus_vpp", "minus_vxp"};
}

inline void append_moments(std::vector<Cell>& row, const PairMoments& m) {
  for (const ModeMoments* mm : {&m.plus, &m.minus}) {
    row.push_back(mm->mean_x);
    row.push_back(mm->mean_p);
    row.push_back(mm->vxx);
    row.push_back(mm->vpp);
    row.push_back(mm->vxp);
  }
}

inline double max_first_moment_diff(const PairMoments& a, const PairMoments& b) {
  return std::max({std::abs(a.plus.mean_x - b.plus.mean_x), std::abs(a.plus.mean_p - b.plus.mean_p),
                   std::abs(a.minus.mean_x - b.minus.mean_x), std::abs(a.minus.mean_p - b.minus.mean_p)});
}

inline double max_moment_diff(const PairMoments& a, const PairMoments& b) {
  return std::max({max_first_moment_diff(a, b), std::abs(a.plus.vxx - b.plus.vxx), std::abs(a.plus.vpp - b.plus.vpp),
                   std::abs(a.plus.vxp - b.plus.vxp), std::abs(a.minus.vxx - b.minus.vxx),
                   std::abs(a.minus.vpp - b.minus.vpp), std::abs(a.minus.vxp - b.minus.vxp)});
}

/// Largest deviation of the variances from the coherent-state values.
inline double width_error(const PairMoments& m) {
  return std::max({std::abs(m.plus.vxx - kCoherentVariance), std::abs(m.plus.vpp - kCoherentVariance),
                   std::abs(m.plus.vxp), std::abs(m.minus.vxx - kCoherentVariance),
                   std::abs(m.minus.vpp - kCoherentVariance), std::abs(m.minus.vxp)});
}

/// Ascending union of `times` and `extra` (exact duplicates removed).
inline std::vector<double> merged_times(std::vector<double> times, double extra) {
  times.push_back(extra);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

inline std::string model_list(const std::vector<ModelKind>& models) {
  std::string s;
  for (std::size_t i = 0; i < models.size(); ++i) s += (i ? ", " : "") + std::string(to_string(models[i]));
  return s;
}

inline bool contains(const std::vector<ModelKind>& models, ModelKind m) {
  return std::find(models.begin(), models.end(), m) != models.end();
}

}  // namespace gravswap::detail
