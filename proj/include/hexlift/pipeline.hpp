#pragma once

#include "hexlift/binning.hpp"
#include "hexlift/diagnostics.hpp"
#include "hexlift/hexgrid.hpp"
#include "hexlift/model.hpp"
#include "hexlift/types.hpp"

namespace hexlift {

struct FitOptions {
  int b1 = 0;  // 0 selects default_b1(n)
  double q = 0.1;
  double cutoff = 0.0;
  CenterMode centers = CenterMode::lattice;
};

/// Everything produced by one grid -> bin -> lift -> remove -> residual pass.
struct Fit {
  HexGrid grid;
  Binning binning;  // membership after low-count removal
  LiftedModel model;
  ResidualSet residuals;
};

/// Fit the wireframe model of `layout` to `data`. Row counts must match.
Fit fit_layout(const Dataset& data, const ScaledLayout& layout, const FitOptions& options = {});

}  // namespace hexlift
