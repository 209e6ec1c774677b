// hexlift: fit, tune and compare wireframe models of 2-D layouts in the data space.

#include "hexlift/bundle.hpp"
#include "hexlift/csv.hpp"
#include "hexlift/diagnostics.hpp"
#include "hexlift/metrics.hpp"
#include "hexlift/parallel.hpp"
#include "hexlift/pipeline.hpp"
#include "hexlift/scaling.hpp"
#include "hexlift/simdata.hpp"
#include "hexlift/tour.hpp"
#include "hexlift/tuning.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

namespace fs = std::filesystem;
using namespace hexlift;
using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kTuningHeader = {"layout_id", "b1", "b2", "b", "m", "a1", "mean_count",
                                                "mean_std_count", "nonempty_frac", "cutoff", "hbe"};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  return out;
}

void write_tuning_row(std::ostream& out, const TuningRecord& r) {
  out << r.layout_id << ',' << r.b1 << ',' << r.b2 << ',' << r.b << ',' << r.m << ',' << io::format_real(r.a1) << ','
      << io::format_real(r.mean_count) << ',' << io::format_real(r.mean_std_count) << ','
      << io::format_real(r.nonempty_frac) << ',' << io::format_real(r.cutoff) << ',' << io::format_real(r.hbe);
}

void write_tuning_csv(const fs::path& path, const std::vector<TuningRecord>& records,
                      const std::vector<bool>* best = nullptr) {
  auto out = open_out(path);
  for (std::size_t j = 0; j < kTuningHeader.size(); ++j) out << (j ? "," : "") << kTuningHeader[j];
  if (best) out << ",best";
  out << '\n';
  for (std::size_t k = 0; k < records.size(); ++k) {
    write_tuning_row(out, records[k]);
    if (best) out << ',' << ((*best)[k] ? 1 : 0);
    out << '\n';
  }
}

ojson record_json(const TuningRecord& r) {
  return {{"layout_id", r.layout_id}, {"b1", r.b1}, {"b2", r.b2}, {"b", r.b}, {"m", r.m},
          {"a1", r.a1}, {"mean_count", r.mean_count}, {"mean_std_count", r.mean_std_count},
          {"nonempty_frac", r.nonempty_frac}, {"cutoff", r.cutoff}, {"hbe", r.hbe}};
}

std::vector<ScaledLayout> load_layouts(const std::vector<std::string>& paths, bool preserve_ratio) {
  std::vector<ScaledLayout> out;
  std::set<std::string> ids;
  for (const auto& path : paths) {
    ScaledLayout layout = scale_layout(io::load_layout(path), preserve_ratio);
    // Keep ids unique when two files share a stem.
    std::string id = layout.layout_id;
    for (int k = 2; ids.contains(id); ++k) id = layout.layout_id + "_" + std::to_string(k);
    layout.layout_id = id;
    ids.insert(id);
    out.push_back(std::move(layout));
  }
  return out;
}

void check_rows(const Dataset& data, const ScaledLayout& layout) {
  if (data.rows() != layout.rows())
    throw std::runtime_error("row count mismatch: data has " + std::to_string(data.rows()) + " rows, layout '" +
                             layout.layout_id + "' has " + std::to_string(layout.rows()));
}

CenterMode parse_center(const std::string& name) {
  if (name == "lattice") return CenterMode::lattice;
  if (name == "mean") return CenterMode::member_mean;
  throw std::runtime_error("unknown --center '" + name + "' (expected lattice or mean)");
}

double max_weight(const Dataset& data, const ScaledLayout& layout, int b1, double q) {
  const Fit fit = fit_layout(data, layout, {b1, q, 0.0, CenterMode::lattice});
  return *std::max_element(fit.model.weights.begin(), fit.model.weights.end());
}

// Row index is the observation; columns row_id, bin_id, e.
void write_residuals(const fs::path& path, const ResidualSet& res) {
  auto out = open_out(path);
  out << "row_id,bin_id,e\n";
  for (std::size_t i = 0; i < res.bin.size(); ++i)
    out << i << ',' << res.bin[i] << ',' << io::format_real(res.e(static_cast<Eigen::Index>(i))) << '\n';
}

void write_edges(const fs::path& path, const LiftedModel& model) {
  auto out = open_out(path);
  out << "from,to\n";
  for (const Edge& e : model.edges.edges) out << model.bin_ids[e.from] << ',' << model.bin_ids[e.to] << '\n';
}

void write_bins(const fs::path& path, const LiftedModel& model) {
  auto out = open_out(path);
  out << "bin_id,count,w,c1,c2\n";
  for (std::size_t k = 0; k < model.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    out << model.bin_ids[k] << ',' << model.counts[k] << ',' << io::format_real(model.weights[k]) << ','
        << io::format_real(model.centroids2d(r, 0)) << ',' << io::format_real(model.centroids2d(r, 1)) << '\n';
  }
}

std::vector<bool> flag_best(const std::vector<TuningRecord>& records) {
  std::map<int, double> best;  // b1 -> min hbe
  for (const auto& r : records) {
    const auto it = best.find(r.b1);
    if (it == best.end() || r.hbe < it->second) best[r.b1] = r.hbe;
  }
  std::vector<bool> flags;
  for (const auto& r : records) flags.push_back(r.hbe == best.at(r.b1));
  return flags;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate 2-D NLDR layouts by lifting a hexbin wireframe model into the data space"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: $HEXLIFT_THREADS or all cores)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate the two-cluster 7-D benchmark data");
  SyntheticSpec spec;
  std::string sim_dir = ".";
  bool sim_layout = false;
  sim->add_option("--n-per-cluster", spec.n_per_cluster, "Observations per cluster")->capture_default_str();
  sim->add_option("--noise-sd", spec.noise_sd, "Noise standard deviation")->capture_default_str();
  sim->add_option("--separation", spec.separation, "Gap between the clusters along x1")->capture_default_str();
  sim->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  sim->add_option("--out-dir", sim_dir, "Output directory")->capture_default_str();
  sim->add_flag("--true-layout", sim_layout, "Also write layout.csv holding (x1, x2)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit the wireframe model of one layout");
  std::string data_path, layout_path, out_path, center = "lattice";
  std::string residual_csv, edge_csv, bin_csv;
  int b1 = 0;
  double q = 0.1, cutoff = 0.0;
  bool ignore_ratio = false;
  fit_cmd->add_option("--data", data_path, "Data CSV (header row, one observation per row)")->required();
  fit_cmd->add_option("--layout", layout_path, "Layout CSV (emb1,emb2)")->required();
  fit_cmd->add_option("--b1", b1, "Bins along the first axis (default ceil(n^(1/3)))");
  fit_cmd->add_option("--buffer", q, "Grid buffer proportion q")->capture_default_str();
  fit_cmd->add_option("--cutoff", cutoff, "Remove bins with w_h <= cutoff")->capture_default_str();
  fit_cmd->add_option("--center", center, "2-D bin centre: lattice or mean")->capture_default_str();
  fit_cmd->add_flag("--ignore-aspect", ignore_ratio, "Scale both axes to [0, 1]");
  fit_cmd->add_option("--out", out_path, "Bundle JSON to write")->required();
  fit_cmd->add_option("--residuals", residual_csv, "Also write row_id,bin_id,e");
  fit_cmd->add_option("--edges", edge_csv, "Also write from,to");
  fit_cmd->add_option("--bins", bin_csv, "Also write bin_id,count,w,c1,c2");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tuning curves over b1 and the low-count cutoff");
  std::vector<int> b1_values, cutoff_b1;
  std::vector<double> cutoffs;
  std::string plot_json;
  sweep->add_option("--data", data_path)->required();
  sweep->add_option("--layout", layout_path)->required();
  sweep->add_option("--b1-values", b1_values, "b1 grid (default: 12 log-spaced values)")->delimiter(',');
  sweep->add_option("--buffer", q)->capture_default_str();
  sweep->add_option("--cutoff", cutoff, "Cutoff used for the b1 sweep")->capture_default_str();
  sweep->add_option("--cutoffs", cutoffs, "Cutoff grid for the cutoff sweep")->delimiter(',');
  sweep->add_option("--cutoff-b1", cutoff_b1, "b1 values for the cutoff sweep (default ceil(n^(1/3)))")->delimiter(',');
  sweep->add_flag("--ignore-aspect", ignore_ratio);
  sweep->add_option("--out", out_path, "tuning CSV")->required();
  sweep->add_option("--plot-json", plot_json, "Series for the four tuning panels");

  // compare
  auto* compare = app.add_subcommand("compare", "Compare several layouts of the same data");
  std::vector<std::string> layout_paths;
  std::string out_dir = ".";
  int reference_b1 = 0;
  MetricOptions metric_opts;
  compare->add_option("--data", data_path)->required();
  compare->add_option("--layout", layout_paths, "Layout CSVs (two or more)")->required();
  compare->add_option("--reference-b1", reference_b1, "b1 for the metric table HBE (default ceil(n^(1/3)))");
  compare->add_option("--b1-values", b1_values, "Common b1 grid")->delimiter(',');
  compare->add_option("--buffer", q)->capture_default_str();
  compare->add_option("--seed", metric_opts.seed, "Seed for RTA/SC sampling")->capture_default_str();
  compare->add_option("--n-triplets", metric_opts.n_triplets, "RTA triplets (default 10 n)");
  compare->add_option("--max-pairs", metric_opts.max_pairs, "SC pair budget")->capture_default_str();
  compare->add_flag("--ignore-aspect", ignore_ratio);
  compare->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

  // predict
  auto* predict = app.add_subcommand("predict", "Place new observations in a fitted layout");
  std::string model_path, input_path, layout_id;
  predict->add_option("--model", model_path, "Bundle JSON from fit or export-ui")->required();
  predict->add_option("--input", input_path, "CSV of new observations")->required();
  predict->add_option("--layout-id", layout_id, "Layout to use when the bundle holds several");
  predict->add_option("--out", out_path, "Output CSV (default stdout)");

  // export-ui
  auto* ui = app.add_subcommand("export-ui", "Bundle models, residuals, tuning, metrics and tour frames for the viewer");
  std::string labels_path;
  int frames = 3, steps = 30;
  std::uint64_t seed = 1;
  ui->add_option("--data", data_path)->required();
  ui->add_option("--layout", layout_paths)->required();
  ui->add_option("--labels", labels_path, "Optional CSV with one label column");
  ui->add_option("--b1", b1);
  ui->add_option("--buffer", q)->capture_default_str();
  ui->add_option("--cutoff", cutoff)->capture_default_str();
  ui->add_option("--frames", frames, "Tour anchor frames")->capture_default_str();
  ui->add_option("--steps", steps, "Interpolation steps between anchors")->capture_default_str();
  ui->add_option("--seed", seed)->capture_default_str();
  ui->add_flag("--ignore-aspect", ignore_ratio);
  ui->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    if (*sim) {
      const auto [data, labels] = gen_2nc7(spec);
      const fs::path dir(sim_dir);
      fs::create_directories(dir);
      io::write_csv(dir / "data.csv", data.column_names, data.values);
      Matrix label_col(static_cast<Eigen::Index>(labels.size()), 1);
      for (std::size_t i = 0; i < labels.size(); ++i) label_col(static_cast<Eigen::Index>(i), 0) = labels[i];
      io::write_csv(dir / "labels.csv", {"label"}, label_col);
      if (sim_layout) io::write_csv(dir / "layout.csv", {"emb1", "emb2"}, data.values.leftCols(2));
      std::cout << "n=" << data.rows() << " p=" << data.cols() << '\n';
    } else if (*fit_cmd) {
      const Dataset data = io::load_dataset(data_path);
      const ScaledLayout layout = scale_layout(io::load_layout(layout_path), !ignore_ratio);
      check_rows(data, layout);
      const Fit fit = fit_layout(data, layout, {b1, q, cutoff, parse_center(center)});
      ExportBundle bundle;
      bundle.data = data;
      bundle.layouts.push_back(make_entry(layout, fit));
      validate_bundle(bundle);
      write_bundle(out_path, bundle);
      if (!residual_csv.empty()) write_residuals(residual_csv, fit.residuals);
      if (!edge_csv.empty()) write_edges(edge_csv, fit.model);
      if (!bin_csv.empty()) write_bins(bin_csv, fit.model);
      std::cout << "hbe=" << io::format_real(fit.residuals.hbe) << '\n';
    } else if (*sweep) {
      const Dataset data = io::load_dataset(data_path);
      const ScaledLayout layout = scale_layout(io::load_layout(layout_path), !ignore_ratio);
      check_rows(data, layout);
      if (b1_values.empty()) b1_values = default_b1_grid(data.rows(), layout.r2);
      std::vector<TuningRecord> records = sweep_b1(data, layout, b1_values, cutoff, q);

      ojson cutoff_panel = ojson::array();
      if (!cutoffs.empty()) {
        if (cutoff_b1.empty()) cutoff_b1 = {default_b1(data.rows())};
        for (const int b : cutoff_b1) {
          const double top = max_weight(data, layout, b, q);
          std::vector<double> usable;
          for (const double c : cutoffs) {
            if (c < top) usable.push_back(c);
            else std::cerr << "hexlift sweep: skipping cutoff " << c << " at b1=" << b << " (max w_h " << top << ")\n";
          }
          if (usable.empty()) continue;
          const int single[] = {b};
          const auto rows = sweep_cutoff(data, layout, single, usable, q);
          ojson series = ojson::array();
          for (const auto& r : rows) series.push_back({{"cutoff", r.cutoff}, {"hbe", r.hbe}, {"m", r.m}});
          cutoff_panel.push_back({{"b1", b}, {"a1", rows.front().a1}, {"series", std::move(series)}});
          for (const auto& r : rows) {
            const bool present = std::any_of(records.begin(), records.end(), [&](const TuningRecord& x) {
              return x.b1 == r.b1 && x.cutoff == r.cutoff;
            });
            if (!present) records.push_back(r);
          }
        }
        std::sort(records.begin(), records.end(), [](const TuningRecord& a, const TuningRecord& b) {
          return a.a1 != b.a1 ? a.a1 < b.a1 : a.cutoff < b.cutoff;
        });
      }
      write_tuning_csv(out_path, records);

      if (!plot_json.empty()) {
        ojson a1_panel = ojson::array(), count_panel = ojson::array(), frac_panel = ojson::array();
        for (const auto& r : records) {
          if (r.cutoff != cutoff) continue;
          a1_panel.push_back({{"a1", r.a1}, {"hbe", r.hbe}});
          count_panel.push_back({{"mean_count", r.mean_count}, {"hbe", r.hbe}});
          frac_panel.push_back({{"a1", r.a1}, {"nonempty_frac", r.nonempty_frac}});
        }
        ojson doc = {{"layout_id", layout.layout_id},
                     {"panels",
                      {{"hbe_vs_a1", std::move(a1_panel)},
                       {"hbe_vs_mean_count", std::move(count_panel)},
                       {"nonempty_frac_vs_a1", std::move(frac_panel)},
                       {"hbe_vs_cutoff", std::move(cutoff_panel)}}}};
        open_out(plot_json) << doc.dump(2) << '\n';
      }
      std::cout << "records=" << records.size() << '\n';
    } else if (*compare) {
      if (layout_paths.size() < 2) throw std::runtime_error("compare needs at least two --layout files");
      const Dataset data = io::load_dataset(data_path);
      const std::vector<ScaledLayout> layouts = load_layouts(layout_paths, !ignore_ratio);
      for (const auto& l : layouts) check_rows(data, l);
      metric_opts.q = q;
      const int ref_b1 = reference_b1 > 0 ? reference_b1 : default_b1(data.rows());
      const MetricTable table = build_metric_table(layouts, data, binwidth(ref_b1, q), metric_opts);

      // r2 <= 1 for every scaled layout, so this grid is valid for all of them.
      if (b1_values.empty()) b1_values = default_b1_grid(data.rows(), 1.0);
      std::vector<TuningRecord> records;
      for (const auto& l : layouts) {
        const auto rows = sweep_b1(data, l, b1_values, 0.0, q);
        records.insert(records.end(), rows.begin(), rows.end());
      }
      const std::vector<bool> best = flag_best(records);

      const fs::path dir(out_dir);
      fs::create_directories(dir);
      {
        auto out = open_out(dir / "metrics.csv");
        out << "layout_id,hbe,r_rta,r_sc,hbe_norm,r_rta_norm,r_sc_norm\n";
        for (const auto& r : table.rows)
          out << r.layout_id << ',' << io::format_real(r.hbe) << ',' << io::format_real(r.r_rta) << ','
              << io::format_real(r.r_sc) << ',' << io::format_real(r.hbe_norm) << ','
              << io::format_real(r.r_rta_norm) << ',' << io::format_real(r.r_sc_norm) << '\n';
      }
      open_out(dir / "metrics.json") << metric_table_json(table);
      write_tuning_csv(dir / "compare_tuning.csv", records, &best);

      ojson tuning = ojson::array();
      for (std::size_t k = 0; k < records.size(); ++k) {
        ojson row = record_json(records[k]);
        row["best"] = static_cast<bool>(best[k]);
        tuning.push_back(std::move(row));
      }
      ojson combined = {{"metrics", ojson::parse(metric_table_json(table))}, {"tuning", std::move(tuning)}};
      open_out(dir / "compare.json") << combined.dump(2) << '\n';
      for (const auto& r : table.rows) std::cout << r.layout_id << " hbe=" << io::format_real(r.hbe) << '\n';
    } else if (*predict) {
      const ExportBundle bundle = read_bundle(model_path);
      if (bundle.layouts.empty()) throw std::runtime_error(model_path + ": bundle holds no models");
      const LayoutEntry* entry = &bundle.layouts.front();
      if (!layout_id.empty()) {
        const auto it = std::find_if(bundle.layouts.begin(), bundle.layouts.end(),
                                     [&](const LayoutEntry& e) { return e.layout.layout_id == layout_id; });
        if (it == bundle.layouts.end()) throw std::runtime_error("no layout '" + layout_id + "' in " + model_path);
        entry = &*it;
      } else if (bundle.layouts.size() > 1) {
        throw std::runtime_error(model_path + " holds several layouts; choose one with --layout-id");
      }
      const io::CsvTable input = io::read_csv(input_path);
      if (input.values.cols() != entry->model.centroids_pd.cols())
        throw std::runtime_error(input_path + ": has " + std::to_string(input.values.cols()) +
                                 " columns, the model expects " + std::to_string(entry->model.centroids_pd.cols()));
      std::ofstream file;
      if (!out_path.empty()) file = open_out(out_path);
      std::ostream& out = out_path.empty() ? std::cout : file;
      out << "emb1,emb2\n";
      for (Eigen::Index i = 0; i < input.values.rows(); ++i) {
        const Point2 y = predict_2d(input.values.row(i).transpose(), entry->model);
        out << io::format_real(y.x()) << ',' << io::format_real(y.y()) << '\n';
      }
    } else if (*ui) {
      const Dataset data = io::load_dataset(data_path);
      const std::vector<ScaledLayout> layouts = load_layouts(layout_paths, !ignore_ratio);
      ExportBundle bundle;
      bundle.data = data;
      if (!labels_path.empty()) {
        const io::CsvTable labels = io::read_csv(labels_path);
        if (labels.values.cols() != 1 || static_cast<std::size_t>(labels.values.rows()) != data.rows())
          throw std::runtime_error(labels_path + ": expected one label column with one row per observation");
        for (Eigen::Index i = 0; i < labels.values.rows(); ++i) bundle.labels.push_back(static_cast<int>(labels.values(i, 0)));
      }
      for (const auto& l : layouts) {
        check_rows(data, l);
        LayoutEntry entry = make_entry(l, fit_layout(data, l, {b1, q, cutoff, CenterMode::lattice}));
        entry.tuning = sweep_b1(data, l, default_b1_grid(data.rows(), l.r2), cutoff, q);
        bundle.layouts.push_back(std::move(entry));
      }
      if (layouts.size() >= 2) {
        MetricOptions opts;
        opts.q = q;
        opts.seed = seed;
        bundle.metrics = build_metric_table(layouts, data, binwidth(b1 > 0 ? b1 : default_b1(data.rows()), q), opts);
      }
      bundle.tour = TourSection{tour_anchors(static_cast<int>(data.cols()), frames, seed), steps};
      validate_bundle(bundle);
      write_bundle(out_path, bundle);
      std::cout << "layouts=" << bundle.layouts.size() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "hexlift " << command << ": error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
