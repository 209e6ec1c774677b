#include "hexlift/bundle.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hexlift {

using json = nlohmann::ordered_json;

namespace {

json rows_of(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_of(const json& rows, Eigen::Index cols, const char* what) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != cols)
      throw std::runtime_error(std::string("bundle: ragged ") + what + " at row " + std::to_string(i));
    for (Eigen::Index j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

json to_json(const ModelParams& p) {
  return {{"b1", p.b1}, {"b2", p.b2}, {"a1", p.a1}, {"a2", p.a2}, {"s1", p.s1},
          {"s2", p.s2}, {"q", p.q},   {"cutoff", p.cutoff}, {"r2", p.r2}};
}

ModelParams params_from(const json& j) {
  ModelParams p;
  p.b1 = j.at("b1").get<int>();
  p.b2 = j.at("b2").get<int>();
  p.a1 = j.at("a1").get<double>();
  p.a2 = j.at("a2").get<double>();
  p.s1 = j.at("s1").get<double>();
  p.s2 = j.at("s2").get<double>();
  p.q = j.at("q").get<double>();
  p.cutoff = j.at("cutoff").get<double>();
  p.r2 = j.at("r2").get<double>();
  return p;
}

json to_json(const LiftedModel& model, const ModelParams& params) {
  json bins = json::array();
  for (std::size_t k = 0; k < model.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    json cpd = json::array();
    for (Eigen::Index j = 0; j < model.centroids_pd.cols(); ++j) cpd.push_back(model.centroids_pd(r, j));
    bins.push_back({{"id", model.bin_ids[k]},
                    {"c2d", {model.centroids2d(r, 0), model.centroids2d(r, 1)}},
                    {"cpd", std::move(cpd)},
                    {"count", model.counts[k]},
                    {"w", model.weights[k]}});
  }
  json edges = json::array();
  for (const Edge& e : model.edges.edges) edges.push_back({model.bin_ids[e.from], model.bin_ids[e.to]});
  return {{"params", to_json(params)}, {"bins", std::move(bins)}, {"edges", std::move(edges)},
          {"degenerate", model.edges.degenerate}};
}

LiftedModel model_from(const json& j) {
  LiftedModel model;
  const json& bins = j.at("bins");
  const auto m = static_cast<Eigen::Index>(bins.size());
  const Eigen::Index p = m > 0 ? static_cast<Eigen::Index>(bins[0].at("cpd").size()) : 0;
  model.centroids2d.resize(m, 2);
  model.centroids_pd.resize(m, p);
  for (Eigen::Index k = 0; k < m; ++k) {
    const json& bin = bins[static_cast<std::size_t>(k)];
    model.bin_ids.push_back(bin.at("id").get<BinId>());
    model.centroids2d(k, 0) = bin.at("c2d").at(0).get<double>();
    model.centroids2d(k, 1) = bin.at("c2d").at(1).get<double>();
    const json& cpd = bin.at("cpd");
    if (static_cast<Eigen::Index>(cpd.size()) != p)
      throw std::runtime_error("bundle: bin " + std::to_string(model.bin_ids.back()) + " has a cpd of the wrong length");
    for (Eigen::Index c = 0; c < p; ++c) model.centroids_pd(k, c) = cpd[static_cast<std::size_t>(c)].get<double>();
    model.counts.push_back(bin.at("count").get<std::size_t>());
    model.weights.push_back(bin.at("w").get<double>());
  }
  for (std::size_t k = 1; k < model.bin_ids.size(); ++k)
    if (model.bin_ids[k] <= model.bin_ids[k - 1]) throw std::runtime_error("bundle: bin ids must be strictly ascending");
  for (const json& e : j.at("edges")) {
    const std::size_t a = model.row_of(e.at(0).get<BinId>());
    const std::size_t b = model.row_of(e.at(1).get<BinId>());
    if (a == model.size() || b == model.size())
      throw std::runtime_error("bundle: edge refers to a bin that is not in the model");
    model.edges.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  model.edges.degenerate = j.value("degenerate", false);
  model.cutoff = j.at("params").at("cutoff").get<double>();
  return model;
}

json to_json(const TuningRecord& r) {
  return {{"layout_id", r.layout_id}, {"b1", r.b1}, {"b2", r.b2}, {"b", r.b}, {"m", r.m},
          {"a1", r.a1}, {"mean_count", r.mean_count}, {"mean_std_count", r.mean_std_count},
          {"nonempty_frac", r.nonempty_frac}, {"cutoff", r.cutoff}, {"hbe", r.hbe}};
}

TuningRecord record_from(const json& j) {
  TuningRecord r;
  r.layout_id = j.at("layout_id").get<std::string>();
  r.b1 = j.at("b1").get<int>();
  r.b2 = j.at("b2").get<int>();
  r.b = j.at("b").get<std::size_t>();
  r.m = j.at("m").get<std::size_t>();
  r.a1 = j.at("a1").get<double>();
  r.mean_count = j.at("mean_count").get<double>();
  r.mean_std_count = j.at("mean_std_count").get<double>();
  r.nonempty_frac = j.at("nonempty_frac").get<double>();
  r.cutoff = j.at("cutoff").get<double>();
  r.hbe = j.at("hbe").get<double>();
  return r;
}

json to_json(const MetricTable& t) {
  json rows = json::array();
  for (const MetricRow& r : t.rows)
    rows.push_back({{"layout_id", r.layout_id}, {"hbe", r.hbe}, {"r_rta", r.r_rta}, {"r_sc", r.r_sc},
                    {"hbe_norm", r.hbe_norm}, {"r_rta_norm", r.r_rta_norm}, {"r_sc_norm", r.r_sc_norm},
                    {"rta", r.rta}, {"sc", r.sc}});
  auto range = [](const ColumnRange& c) { return json{{"min", c.min}, {"max", c.max}}; };
  return {{"reference_a1", t.reference_a1},
          {"reference_b1", t.reference_b1},
          {"columns", {"hbe", "r_rta", "r_sc"}},
          {"normalization",
           {{"method", "min-max"}, {"hbe", range(t.hbe_range)}, {"r_rta", range(t.r_rta_range)}, {"r_sc", range(t.r_sc_range)}}},
          {"rows", std::move(rows)}};
}

MetricTable metrics_from(const json& j) {
  MetricTable t;
  t.reference_a1 = j.at("reference_a1").get<double>();
  t.reference_b1 = j.at("reference_b1").get<int>();
  auto range = [](const json& c) { return ColumnRange{c.at("min").get<double>(), c.at("max").get<double>()}; };
  const json& norm = j.at("normalization");
  t.hbe_range = range(norm.at("hbe"));
  t.r_rta_range = range(norm.at("r_rta"));
  t.r_sc_range = range(norm.at("r_sc"));
  for (const json& r : j.at("rows")) {
    MetricRow row;
    row.layout_id = r.at("layout_id").get<std::string>();
    row.hbe = r.at("hbe").get<double>();
    row.r_rta = r.at("r_rta").get<double>();
    row.r_sc = r.at("r_sc").get<double>();
    row.hbe_norm = r.at("hbe_norm").get<double>();
    row.r_rta_norm = r.at("r_rta_norm").get<double>();
    row.r_sc_norm = r.at("r_sc_norm").get<double>();
    row.rta = r.at("rta").get<double>();
    row.sc = r.at("sc").get<double>();
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

ModelParams params_of(const HexGrid& grid, double cutoff) {
  return {grid.b1, grid.b2, grid.a1, grid.a2, grid.s1, grid.s2, grid.q, cutoff, grid.r2};
}

LayoutEntry make_entry(const ScaledLayout& layout, const Fit& fit) {
  return {layout, params_of(fit.grid, fit.model.cutoff), fit.model, fit.residuals, {}};
}

std::string to_json_text(const ExportBundle& bundle) {
  json doc;
  doc["schema_version"] = bundle.schema_version;
  doc["data"] = {{"columns", bundle.data.column_names}, {"values", rows_of(bundle.data.values)}};
  doc["labels"] = bundle.labels;

  json layouts = json::array();
  for (const LayoutEntry& entry : bundle.layouts) {
    json residual_bins = json::array();
    for (const BinId h : entry.residuals.bin) residual_bins.push_back(h);
    json e = json::array();
    for (Eigen::Index i = 0; i < entry.residuals.e.size(); ++i) e.push_back(entry.residuals.e(i));
    json tuning = json::array();
    for (const TuningRecord& r : entry.tuning) tuning.push_back(to_json(r));
    layouts.push_back(
        {{"layout_id", entry.layout.layout_id},
         {"scaling", {{"r2", entry.layout.r2}, {"preserve_ratio", entry.layout.preserve_ratio}, {"swapped", entry.layout.swapped}}},
         {"points", rows_of(entry.layout.points)},
         {"model", to_json(entry.model, entry.params)},
         {"residuals", {{"hbe", entry.residuals.hbe}, {"bin_id", std::move(residual_bins)}, {"e", std::move(e)}}},
         {"tuning", std::move(tuning)}});
  }
  doc["layouts"] = std::move(layouts);
  doc["metrics"] = bundle.metrics ? to_json(*bundle.metrics) : json(nullptr);

  if (bundle.tour) {
    json bases = json::array();
    for (const ProjectionBasis& b : bundle.tour->bases) {
      json flat = json::array();
      for (Eigen::Index i = 0; i < b.basis.rows(); ++i)
        for (Eigen::Index j = 0; j < b.basis.cols(); ++j) flat.push_back(b.basis(i, j));
      bases.push_back({{"tag", b.tag}, {"basis", std::move(flat)}});
    }
    const Eigen::Index p = bundle.tour->bases.empty() ? 0 : bundle.tour->bases.front().basis.rows();
    doc["tour"] = {{"p", p}, {"steps_per_segment", bundle.tour->steps_per_segment}, {"bases", std::move(bases)}};
  } else {
    doc["tour"] = nullptr;
  }
  return doc.dump() + "\n";
}

ExportBundle from_json_text(const std::string& text) {
  ExportBundle bundle;
  try {
    const json doc = json::parse(text);
    bundle.schema_version = doc.at("schema_version").get<int>();
    if (bundle.schema_version != kBundleSchemaVersion)
      throw std::runtime_error("bundle: unsupported schema_version " + std::to_string(bundle.schema_version));
    const json& data = doc.at("data");
    bundle.data.column_names = data.at("columns").get<std::vector<std::string>>();
    bundle.data.values = matrix_of(data.at("values"), static_cast<Eigen::Index>(bundle.data.column_names.size()), "data");
    bundle.labels = doc.at("labels").get<std::vector<int>>();

    for (const json& j : doc.at("layouts")) {
      LayoutEntry entry;
      entry.layout.layout_id = j.at("layout_id").get<std::string>();
      const json& scaling = j.at("scaling");
      entry.layout.r2 = scaling.at("r2").get<double>();
      entry.layout.preserve_ratio = scaling.at("preserve_ratio").get<bool>();
      entry.layout.swapped = scaling.at("swapped").get<bool>();
      entry.layout.points = matrix_of(j.at("points"), 2, "points");
      entry.params = params_from(j.at("model").at("params"));
      entry.model = model_from(j.at("model"));
      const json& res = j.at("residuals");
      entry.residuals.hbe = res.at("hbe").get<double>();
      entry.residuals.bin = res.at("bin_id").get<std::vector<BinId>>();
      const auto e = res.at("e").get<std::vector<double>>();
      entry.residuals.e = Eigen::Map<const Vector>(e.data(), static_cast<Eigen::Index>(e.size()));
      for (const json& r : j.at("tuning")) entry.tuning.push_back(record_from(r));
      bundle.layouts.push_back(std::move(entry));
    }

    if (!doc.at("metrics").is_null()) bundle.metrics = metrics_from(doc.at("metrics"));
    if (!doc.at("tour").is_null()) {
      const json& tour = doc.at("tour");
      TourSection section;
      section.steps_per_segment = tour.at("steps_per_segment").get<int>();
      const auto p = tour.at("p").get<Eigen::Index>();
      for (const json& b : tour.at("bases")) {
        const auto flat = b.at("basis").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(flat.size()) != 2 * p)
          throw std::runtime_error("bundle: tour basis does not have p x 2 entries");
        Matrix basis(p, 2);
        for (Eigen::Index i = 0; i < p; ++i)
          for (Eigen::Index c = 0; c < 2; ++c) basis(i, c) = flat[static_cast<std::size_t>(2 * i + c)];
        section.bases.push_back({std::move(basis), b.at("tag").get<std::string>()});
      }
      bundle.tour = std::move(section);
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bundle: malformed JSON: ") + e.what());
  }
  return bundle;
}

void write_bundle(const std::filesystem::path& path, const ExportBundle& bundle) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << to_json_text(bundle);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

ExportBundle read_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

void validate_bundle(const ExportBundle& bundle) {
  auto fail = [](const std::string& msg) { throw std::runtime_error("bundle: " + msg); };
  if (bundle.schema_version != kBundleSchemaVersion) fail("unsupported schema_version");
  const std::size_t n = bundle.data.rows();
  const auto p = bundle.data.values.cols();
  if (bundle.data.column_names.size() != bundle.data.cols()) fail("column names do not match data width");
  if (!bundle.labels.empty() && bundle.labels.size() != n) fail("labels do not match the row count");

  std::set<std::string> ids;
  for (const LayoutEntry& entry : bundle.layouts) {
    const std::string& id = entry.layout.layout_id;
    if (!ids.insert(id).second) fail("duplicate layout_id '" + id + "'");
    if (entry.layout.rows() != n) fail("layout '" + id + "' does not have one point per data row");
    const LiftedModel& model = entry.model;
    const std::size_t bins = static_cast<std::size_t>(entry.params.b1) * static_cast<std::size_t>(entry.params.b2);
    if (model.size() == 0) fail("layout '" + id + "' has an empty model");
    if (model.centroids_pd.cols() != p) fail("layout '" + id + "' model width differs from the data");
    std::size_t total = 0;
    for (std::size_t k = 0; k < model.size(); ++k) {
      if (model.bin_ids[k] >= bins) fail("layout '" + id + "' bin id " + std::to_string(model.bin_ids[k]) + " outside the grid");
      if (k > 0 && model.bin_ids[k] <= model.bin_ids[k - 1]) fail("layout '" + id + "' bin ids not ascending");
      total += model.counts[k];
    }
    if (total != n) fail("layout '" + id + "' bin counts do not sum to the row count");
    for (const Edge& e : model.edges.edges)
      if (e.from >= model.size() || e.to >= model.size()) fail("layout '" + id + "' edge endpoint out of range");
    if (entry.residuals.bin.size() != n || static_cast<std::size_t>(entry.residuals.e.size()) != n)
      fail("layout '" + id + "' residuals do not cover every row");
    for (std::size_t i = 0; i < n; ++i)
      if (model.row_of(entry.residuals.bin[i]) == model.size())
        fail("layout '" + id + "' row " + std::to_string(i) + " refers to a missing bin");
    for (const TuningRecord& r : entry.tuning)
      if (r.layout_id != id) fail("tuning record for '" + r.layout_id + "' filed under '" + id + "'");
  }
  if (bundle.metrics)
    for (const MetricRow& row : bundle.metrics->rows)
      if (!ids.contains(row.layout_id)) fail("metric row for unknown layout '" + row.layout_id + "'");
  if (bundle.tour)
    for (const ProjectionBasis& b : bundle.tour->bases)
      if (b.basis.rows() != p || b.basis.cols() != 2) fail("tour basis is not p x 2");
}

std::string metric_table_json(const MetricTable& table) { return to_json(table).dump(2) + "\n"; }

}  // namespace hexlift
