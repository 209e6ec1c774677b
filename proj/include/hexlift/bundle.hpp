#pragma once

#include "hexlift/diagnostics.hpp"
#include "hexlift/metrics.hpp"
#include "hexlift/model.hpp"
#include "hexlift/pipeline.hpp"
#include "hexlift/tour.hpp"
#include "hexlift/tuning.hpp"
#include "hexlift/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hexlift {

inline constexpr int kBundleSchemaVersion = 1;

/// Grid parameters carried alongside a model.
struct ModelParams {
  int b1 = 0;
  int b2 = 0;
  double a1 = 0.0;
  double a2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double q = 0.1;
  double cutoff = 0.0;
  double r2 = 1.0;
};

ModelParams params_of(const HexGrid& grid, double cutoff);

struct LayoutEntry {
  ScaledLayout layout;
  ModelParams params;
  LiftedModel model;
  ResidualSet residuals;
  std::vector<TuningRecord> tuning;
};

struct TourSection {
  std::vector<ProjectionBasis> bases;
  int steps_per_segment = 30;
};

/// Everything the viewer needs, in one JSON document.
struct ExportBundle {
  int schema_version = kBundleSchemaVersion;
  Dataset data;
  std::vector<int> labels;  // empty when unknown
  std::vector<LayoutEntry> layouts;
  std::optional<MetricTable> metrics;
  std::optional<TourSection> tour;
};

LayoutEntry make_entry(const ScaledLayout& layout, const Fit& fit);

std::string to_json_text(const ExportBundle& bundle);
ExportBundle from_json_text(const std::string& text);

void write_bundle(const std::filesystem::path& path, const ExportBundle& bundle);
ExportBundle read_bundle(const std::filesystem::path& path);

/// Cross-reference checks: bin ids, edge endpoints, row ids, matrix shapes.
/// Throws std::runtime_error describing the first violation.
void validate_bundle(const ExportBundle& bundle);

/// Metric table as a standalone JSON document (parallel-coordinate data).
std::string metric_table_json(const MetricTable& table);

}  // namespace hexlift
