#include "hexlift/tuning.hpp"

#include "hexlift/hexgrid.hpp"
#include "hexlift/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hexlift {

namespace {

std::vector<int> checked_b1_values(std::span<const int> b1_values, std::size_t n, double r2) {
  const int hi = max_b1(n, r2);
  std::set<int> unique;
  std::vector<int> offenders;
  for (const int b1 : b1_values) {
    if (b1 < 2 || b1 > hi) offenders.push_back(b1);
    else unique.insert(b1);
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "tuning: b1 values outside [2, " << hi << "]:";
    for (const int b1 : offenders) msg << ' ' << b1;
    throw std::invalid_argument(msg.str());
  }
  if (unique.empty()) throw std::invalid_argument("tuning: no b1 values given");
  return {unique.begin(), unique.end()};
}

void canonical_order(std::vector<TuningRecord>& records) {
  std::sort(records.begin(), records.end(), [](const TuningRecord& a, const TuningRecord& b) {
    if (a.a1 != b.a1) return a.a1 < b.a1;
    return a.cutoff < b.cutoff;
  });
}

}  // namespace

TuningRecord make_record(const std::string& layout_id, const Fit& fit) {
  TuningRecord rec;
  rec.layout_id = layout_id;
  rec.b1 = fit.grid.b1;
  rec.b2 = fit.grid.b2;
  rec.b = fit.grid.size();
  rec.m = fit.model.size();
  rec.a1 = fit.grid.a1;
  double total_count = 0.0, total_w = 0.0;
  for (std::size_t k = 0; k < rec.m; ++k) {
    total_count += static_cast<double>(fit.model.counts[k]);
    total_w += fit.model.weights[k];
  }
  rec.mean_count = total_count / static_cast<double>(rec.m);
  rec.mean_std_count = total_w / static_cast<double>(rec.m);
  rec.nonempty_frac = static_cast<double>(rec.m) / static_cast<double>(rec.b);
  rec.cutoff = fit.model.cutoff;
  rec.hbe = fit.residuals.hbe;
  return rec;
}

std::vector<int> default_b1_grid(std::size_t n, double r2, int points) {
  const int hi = max_b1(n, r2);
  std::set<int> grid;
  if (points < 2 || hi == 2) return {2, hi};
  const double ratio = static_cast<double>(hi) / 2.0;
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    grid.insert(std::clamp(static_cast<int>(std::lround(2.0 * std::pow(ratio, t))), 2, hi));
  }
  return {grid.begin(), grid.end()};
}

std::vector<double> default_cutoff_grid() { return {0.0, 0.001, 0.002, 0.005, 0.01}; }

std::vector<TuningRecord> sweep_b1(const Dataset& data, const ScaledLayout& layout,
                                   std::span<const int> b1_values, double cutoff, double q) {
  const std::vector<int> values = checked_b1_values(b1_values, layout.rows(), layout.r2);
  std::vector<TuningRecord> records(values.size());
  parallel_for(values.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
      records[k] = make_record(layout.layout_id, fit_layout(data, layout, {values[k], q, cutoff, CenterMode::lattice}));
  });
  canonical_order(records);
  return records;
}

std::vector<TuningRecord> sweep_cutoff(const Dataset& data, const ScaledLayout& layout,
                                       std::span<const int> b1_values,
                                       std::span<const double> cutoffs, double q) {
  const std::vector<int> values = checked_b1_values(b1_values, layout.rows(), layout.r2);
  if (cutoffs.empty()) throw std::invalid_argument("tuning: no cutoff values given");
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    if (!(cutoffs[k] >= 0.0)) throw std::invalid_argument("tuning: cutoffs must be non-negative");
    if (k > 0 && !(cutoffs[k] > cutoffs[k - 1])) throw std::invalid_argument("tuning: cutoffs must be ascending");
  }

  struct Base {
    Fit fit;
    Points2 centers;
    Binning binning;
    LiftedModel model;
  };
  std::vector<Base> bases(values.size());
  parallel_for(values.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Base& base = bases[k];
      base.fit.grid = build_grid({values[k], q, layout.r2});
      base.binning = assign_bins(layout, base.fit.grid);
      base.centers = bin_centers_2d(base.binning, base.fit.grid, layout.points);
      base.model = lift(base.binning, data, base.centers);
    }
  });

  std::ostringstream offenders;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double max_w = *std::max_element(bases[k].model.weights.begin(), bases[k].model.weights.end());
    for (const double c : cutoffs)
      if (c >= max_w) offenders << " (b1=" << values[k] << ", cutoff=" << c << ", max w=" << max_w << ")";
  }
  if (!offenders.str().empty())
    throw std::invalid_argument("tuning: cutoffs would remove every bin:" + offenders.str());

  std::vector<TuningRecord> records(values.size() * cutoffs.size());
  parallel_for(records.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const Base& base = bases[r / cutoffs.size()];
      const double c = cutoffs[r % cutoffs.size()];
      Fit fit;
      fit.grid = base.fit.grid;
      std::tie(fit.model, fit.binning) = remove_low_count(base.model, base.binning, layout.points, data, c);
      fit.model.cutoff = c;
      fit.residuals = residuals(data, fit.model, fit.binning);
      records[r] = make_record(layout.layout_id, fit);
    }
  });
  canonical_order(records);
  return records;
}

}  // namespace hexlift
