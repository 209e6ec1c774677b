// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "hexlift/binning.hpp"
#include "hexlift/diagnostics.hpp"
#include "hexlift/hexgrid.hpp"
#include "hexlift/metrics.hpp"
#include "hexlift/parallel.hpp"
#include "hexlift/pipeline.hpp"
#include "hexlift/scaling.hpp"
#include "hexlift/simdata.hpp"
#include "hexlift/triangulation.hpp"
#include "hexlift/tuning.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace hexlift;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later checks still run so the detail is useful.
struct Checker {
  Outcome out;
  void require(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

std::pair<Dataset, ScaledLayout> truth_2nc7() {
  auto [data, labels] = gen_2nc7();
  RawLayout raw{data.values.leftCols(2), "truth"};
  return {data, scale_layout(raw)};
}

ScaledLayout permuted(const ScaledLayout& layout, std::uint64_t seed) {
  std::vector<Eigen::Index> perm(layout.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  ScaledLayout out = layout;
  out.layout_id = "perm" + std::to_string(seed);
  for (Eigen::Index i = 0; i < out.points.rows(); ++i) out.points.row(i) = layout.points.row(perm[static_cast<std::size_t>(i)]);
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome grid_rows() {
  Checker c;
  c.require(compute_b2(15, 0.1, 1.0) == 18, "b2(15, 0.1, 1) = " + std::to_string(compute_b2(15, 0.1, 1.0)));
  c.require(build_grid({15, 0.1, 1.0}).size() == 270, "grid size for b1 = 15 is not 270");
  const int triples[3][3] = {{15, 18, 270}, {24, 29, 696}, {35, 42, 1470}};
  for (const auto& t : triples)
    c.require(t[0] * t[1] == t[2], "b1 * b2 != b for b1 = " + std::to_string(t[0]));
  if (c.out.pass) c.out.detail = "b2(15)=18, 15*18=270, 24*29=696, 35*42=1470";
  return c.out;
}

Outcome binwidths() {
  Checker c;
  const int b1s[3] = {15, 24, 35};
  const double target[3] = {0.08, 0.05, 0.03};
  std::ostringstream d;
  for (int k = 0; k < 3; ++k) {
    const double a1 = binwidth(b1s[k], 0.1);
    const double rounded = std::round(a1 * 1000.0) / 1000.0;
    c.require(std::abs(rounded - target[k]) <= 0.006 + 1e-12, "a1(" + std::to_string(b1s[k]) + ") too far from target");
    d << "a1(" << b1s[k] << ")=" << rounded << " ";
  }
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome binning_oracle() {
  Checker c;
  std::size_t compared = 0, ties = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_b1(3, 40);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r2 = seed % 2 ? 1.0 : 0.2 + 0.8 * u(rng);
    const HexGrid grid = build_grid({pick_b1(rng), 0.1, r2});
    std::uniform_int_distribution<std::size_t> pick_bin(0, grid.size() - 1);
    Points2 pts(1000, 2);
    for (Eigen::Index i = 0; i < 1000; ++i) {
      Point2 p(u(rng), u(rng) * r2);
      const Point2 centre = grid.centroid(pick_bin(rng));
      switch (i % 5) {
        case 1: p = centre; break;                                           // on a centroid
        case 2: p = centre + Point2(grid.a1 / 2, 0); break;                  // between row neighbours
        case 3: p = centre + Point2(grid.a1 / 4, grid.a2 / 2); break;        // between rows
        case 4: p = centre + Point2(0, grid.circumradius()); break;          // hexagon vertex
        default: break;
      }
      if (p.x() < 0 || p.x() > 1 || p.y() < 0 || p.y() > r2) p = Point2(u(rng), u(rng) * r2);
      pts.row(i) = p.transpose();
    }
    const Binning b = assign_bins(pts, grid);
    for (Eigen::Index i = 0; i < 1000; ++i) {
      const BinId expect = oracle::brute_nearest(grid.centroids, pts(i, 0), pts(i, 1));
      c.require(b.assignment[static_cast<std::size_t>(i)] == expect,
                "seed " + std::to_string(seed) + " row " + std::to_string(i) + " disagrees");
      // Count exact ties seen by the full scan.
      int hits = 0;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index h = 0; h < grid.centroids.rows(); ++h) {
        const double dx = pts(i, 0) - grid.centroids(h, 0), dy = pts(i, 1) - grid.centroids(h, 1);
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) {
          best = d2;
          hits = 1;
        } else if (d2 == best) {
          ++hits;
        }
      }
      ties += hits > 1;
      ++compared;
    }
  }
  if (c.out.pass)
    c.out.detail = std::to_string(compared) + "/" + std::to_string(compared) + " agree, " + std::to_string(ties) +
                   " exact ties";
  return c.out;
}

Outcome delaunay_oracle() {
  Checker c;
  double worst = 0.0;
  std::size_t tie_heavy = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t m = 3 + seed % 48;  // 4 .. 50
    // Odd seeds: a small integer grid, full of collinear and cocircular sets.
    const std::int64_t span = seed % 2 ? 4 + static_cast<std::int64_t>(seed % 7) : 1 << 20;
    const std::size_t cap = static_cast<std::size_t>((span + 1) * (span + 1));
    const auto pts = oracle::random_int_points(std::min(m, cap), span, seed);
    const Points2 p = oracle::to_points(pts);
    const auto expected = oracle::brute_delaunay(pts);
    if (expected.empty()) {
      c.require(triangulate(p).degenerate, "seed " + std::to_string(seed) + ": collinear set not flagged");
      continue;
    }
    tie_heavy += seed % 2;
    const EdgeList got = triangulate(p);
    c.require(got.triangles == expected, "seed " + std::to_string(seed) + ": triangles differ from enumeration");
    worst = std::max(worst, oracle::max_circle_intrusion(p, got.triangles));
    const std::size_t h = oracle::hull_boundary_count(pts), mm = pts.size();
    c.require(got.triangles.size() == 2 * mm - 2 - h, "seed " + std::to_string(seed) + ": T != 2m - 2 - h");
    c.require(got.edges.size() == 3 * mm - 3 - h, "seed " + std::to_string(seed) + ": E != 3m - 3 - h");
  }
  c.require(worst < 1e-9, "circumcircle intrusion " + std::to_string(worst));
  if (c.out.pass) {
    std::ostringstream d;
    d << "50 seeds, " << tie_heavy << " tie-heavy, max intrusion " << worst;
    c.out.detail = d.str();
  }
  return c.out;
}

Outcome hbe_properties() {
  Checker c;
  // All singleton bins: place each point on its own lattice centre.
  {
    const HexGrid grid = build_grid({20, 0.1, 1.0});
    ScaledLayout layout;
    layout.layout_id = "singletons";
    std::vector<Eigen::Index> inside;
    for (Eigen::Index h = 0; h < grid.centroids.rows(); ++h)
      if (grid.centroids(h, 0) >= 0 && grid.centroids(h, 0) <= 1 && grid.centroids(h, 1) >= 0 &&
          grid.centroids(h, 1) <= 1)
        inside.push_back(h);
    layout.points.resize(static_cast<Eigen::Index>(inside.size()), 2);
    for (std::size_t k = 0; k < inside.size(); ++k) layout.points.row(static_cast<Eigen::Index>(k)) = grid.centroids.row(inside[k]);
    Dataset data = gen_2nc7({static_cast<int>(inside.size()), 0.05, 1.0, 5}).first;
    data.values.conservativeResize(static_cast<Eigen::Index>(inside.size()), Eigen::NoChange);
    const Fit fit = fit_layout(data, layout, {20});
    c.require(fit.model.size() == inside.size(), "singleton layout shares bins");
    c.require(fit.residuals.hbe <= 1e-12, "singleton HBE " + std::to_string(fit.residuals.hbe));
  }
  // A single bin: HBE is the RMS distance to the grand mean.
  {
    auto [data, labels] = gen_2nc7({300, 0.05, 1.0, 6});
    ScaledLayout layout;
    layout.layout_id = "clump";
    layout.points.resize(static_cast<Eigen::Index>(data.rows()), 2);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    for (Eigen::Index i = 0; i < layout.points.rows(); ++i) layout.points.row(i) << 0.5 + u(rng), 0.6 + u(rng);
    const Fit fit = fit_layout(data, layout, {2});
    c.require(fit.model.size() == 1, "clump spans " + std::to_string(fit.model.size()) + " bins");
    long double mean[7] = {};
    for (Eigen::Index i = 0; i < data.values.rows(); ++i)
      for (Eigen::Index j = 0; j < 7; ++j) mean[j] += data.values(i, j);
    long double ss = 0;
    for (Eigen::Index i = 0; i < data.values.rows(); ++i)
      for (Eigen::Index j = 0; j < 7; ++j) {
        const long double d = data.values(i, j) - mean[j] / data.values.rows();
        ss += d * d;
      }
    const double rms = static_cast<double>(std::sqrt(ss / data.values.rows()));
    c.require(std::abs(fit.residuals.hbe - rms) <= 1e-10 * rms, "single-bin HBE differs from RMS to grand mean");
  }
  // Triple-sum definition on the benchmark data at several resolutions.
  {
    const auto [data, layout] = truth_2nc7();
    double worst = 0.0;
    for (const int b1 : {3, 8, 13, 30, 60}) {
      const Fit fit = fit_layout(data, layout, {b1});
      const double expect = oracle::triple_sum_hbe(data.values, fit.binning.assignment);
      worst = std::max(worst, std::abs(fit.residuals.hbe - expect) / expect);
    }
    c.require(worst <= 1e-12, "triple-sum relative error " + std::to_string(worst));
    if (c.out.pass) {
      std::ostringstream d;
      d << "singleton HBE 0, single-bin match, triple-sum rel err " << worst;
      c.out.detail = d.str();
    }
  }
  return c.out;
}

Outcome hbe_trend() {
  Checker c;
  const auto [data, layout] = truth_2nc7();
  const auto grid = default_b1_grid(data.rows(), layout.r2);
  const auto records = sweep_b1(data, layout, grid);
  std::vector<double> a1, hbe;
  for (const auto& r : records) {
    a1.push_back(r.a1);
    hbe.push_back(r.hbe);
  }
  const double rho = oracle::spearman(a1, hbe);
  c.require(records.size() == 12, "sweep has " + std::to_string(records.size()) + " points");
  c.require(rho >= 0.9, "Spearman(a1, HBE) = " + std::to_string(rho));
  std::ostringstream d;
  d << "Spearman(a1, HBE) = " << rho << " over " << records.size() << " points";
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome hallucination() {
  Checker c;
  const auto [data, layout] = truth_2nc7();
  const auto grid = default_b1_grid(data.rows(), layout.r2);
  const auto structured = sweep_b1(data, layout, grid);
  std::size_t wins = 0, total = 0;
  double closest = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto shuffled = sweep_b1(data, permuted(layout, seed), grid);
    for (std::size_t k = 0; k < structured.size(); ++k) {
      ++total;
      wins += structured[k].hbe < shuffled[k].hbe;
      closest = std::min(closest, shuffled[k].hbe / structured[k].hbe);
      c.require(structured[k].b1 == shuffled[k].b1, "sweep grids differ");
    }
  }
  c.require(wins == total, std::to_string(wins) + "/" + std::to_string(total) + " comparisons favour the structure");
  std::ostringstream d;
  d << wins << "/" << total << " comparisons, smallest permuted/structured ratio " << closest;
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome prediction() {
  Checker c;
  const auto [data, layout] = truth_2nc7();
  const Fit fit = fit_layout(data, layout, {0, 0.1, 0.001});
  const LiftedModel& model = fit.model;
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < model.centroids_pd.rows(); ++a)
    for (Eigen::Index b = a + 1; b < model.centroids_pd.rows(); ++b)
      gap = std::min(gap, (model.centroids_pd.row(a) - model.centroids_pd.row(b)).norm());
  std::size_t eligible = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    if (!(fit.residuals.e(row) < gap / 2)) continue;
    ++eligible;
    const Point2 own = model.centroids2d.row(static_cast<Eigen::Index>(model.row_of(fit.binning.assignment[i]))).transpose();
    c.require(predict_2d(data.values.row(row).transpose(), model) == own,
              "row " + std::to_string(i) + " does not predict to its own bin");
  }
  // Codomain: random queries land on centroids, and every centroid is reached.
  std::set<std::pair<double, double>> centres, reached;
  for (Eigen::Index k = 0; k < model.centroids2d.rows(); ++k) centres.insert({model.centroids2d(k, 0), model.centroids2d(k, 1)});
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.5);
  for (int t = 0; t < 1000; ++t) {
    Vector x(7);
    for (Eigen::Index j = 0; j < 7; ++j) x(j) = g(rng) + (j == 0 ? 1.5 : 0.0);
    const Point2 y = predict_2d(x, model);
    c.require(centres.contains({y.x(), y.y()}), "prediction outside the centroid set");
  }
  for (Eigen::Index k = 0; k < model.centroids_pd.rows(); ++k) {
    const Point2 y = predict_2d(model.centroids_pd.row(k).transpose(), model);
    reached.insert({y.x(), y.y()});
  }
  c.require(reached == centres, "not every surviving centroid is a prediction");
  std::ostringstream d;
  d << eligible << " eligible rows, " << centres.size() << " surviving centroids";
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome metrics() {
  Checker c;
  double worst_rta = 0.0, worst_sc = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto [data, labels] = gen_2nc7({15, 0.3, 1.0, seed});
    RawLayout raw{data.values.middleCols(1, 2), "slice"};
    const ScaledLayout layout = scale_layout(raw);
    const Matrix low = layout.points;
    const double rta = random_triplet_accuracy(data, layout, 100000, seed);
    const double sc = shepard_spearman(data, layout, 200000, seed);
    worst_rta = std::max(worst_rta, std::abs(rta - oracle::exhaustive_rta(data.values, low)));
    worst_sc = std::max(worst_sc, std::abs(sc - oracle::exhaustive_shepard(data.values, low)));
  }
  c.require(worst_rta <= 0.03, "RTA error " + std::to_string(worst_rta));
  c.require(worst_sc <= 0.02, "SC error " + std::to_string(worst_sc));
  // Identity embedding.
  auto [data, labels] = gen_2nc7({15, 0.05, 1.0, 9});
  RawLayout raw{data.values.leftCols(2), "identity"};
  const ScaledLayout layout = scale_layout(raw);
  Dataset flat;
  flat.values = layout.points;
  flat.column_names = {"a", "b"};
  c.require(random_triplet_accuracy(flat, layout, 3000, 1) == 1.0, "identity RTA != 1");
  c.require(shepard_spearman(flat, layout, 200000, 1) == 1.0, "identity SC != 1");
  std::ostringstream d;
  d << "max |RTA - exact| " << worst_rta << ", max |SC - exact| " << worst_sc << ", identity 1.0/1.0";
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome determinism() {
  Checker c;
  const fs::path dir = fs::temp_directory_path() / "hexlift_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = HEXLIFT_CLI_PATH;
  auto run = [&](const std::string& env, const std::string& args) {
    const std::string cmd = env + " \"" + cli + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    c.require(status == 0, "command failed: " + args);
  };
  const std::string d = dir.string();
  run("", "simulate --out-dir \"" + d + "\" --true-layout --seed 3");
  // A second, worse layout: columns x3 and x4.
  {
    std::ifstream in(dir / "data.csv");
    std::ofstream out(dir / "curve.csv");
    std::string line;
    std::getline(in, line);
    out << "emb1,emb2\n";
    while (std::getline(in, line)) {
      std::stringstream s(line);
      std::string cell, x3, x4;
      for (int j = 0; j < 4 && std::getline(s, cell, ','); ++j) {
        if (j == 2) x3 = cell;
        if (j == 3) x4 = cell;
      }
      out << x3 << ',' << x4 << '\n';
    }
  }
  const std::vector<std::string> envs = {"HEXLIFT_THREADS=1", "HEXLIFT_THREADS=4", "HEXLIFT_THREADS=4",
                                         "HEXLIFT_THREADS=3"};
  std::vector<std::vector<std::string>> outputs;
  for (std::size_t k = 0; k < envs.size(); ++k) {
    const std::string tag = d + "/run" + std::to_string(k);
    fs::create_directories(tag);
    run(envs[k], "fit --data \"" + d + "/data.csv\" --layout \"" + d + "/layout.csv\" --cutoff 0.001 --out \"" + tag +
                     "/bundle.json\" --residuals \"" + tag + "/res.csv\" --edges \"" + tag + "/edges.csv\" --bins \"" +
                     tag + "/bins.csv\"");
    run(envs[k], "compare --data \"" + d + "/data.csv\" --layout \"" + d + "/layout.csv\" --layout \"" + d +
                     "/curve.csv\" --seed 7 --out-dir \"" + tag + "\"");
    std::vector<std::string> files;
    for (const char* name : {"bundle.json", "res.csv", "edges.csv", "bins.csv", "metrics.csv", "metrics.json",
                             "compare.json", "compare_tuning.csv"})
      files.push_back(slurp(fs::path(tag) / name));
    outputs.push_back(std::move(files));
  }
  for (std::size_t k = 1; k < outputs.size(); ++k)
    for (std::size_t f = 0; f < outputs[0].size(); ++f) {
      c.require(!outputs[0][f].empty(), "empty output file");
      c.require(outputs[k][f] == outputs[0][f], "run " + std::to_string(k) + " differs in output file " + std::to_string(f));
    }
  if (c.out.pass) c.out.detail = "8 output files identical over 4 runs with 1, 4, 4, 3 threads";
  return c.out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"grid row count", grid_rows},         {"binwidth", binwidths},
      {"binning oracle", binning_oracle},    {"Delaunay oracle", delaunay_oracle},
      {"HBE properties", hbe_properties},    {"HBE grows with binwidth", hbe_trend},
      {"structure beats permutation", hallucination}, {"prediction", prediction},
      {"RTA and SC", metrics},               {"determinism", determinism}};
  // With an argument, run only that criterion (1-based).
  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const std::size_t pick = std::stoul(argv[1]);
    if (pick < 1 || pick > criteria.size()) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
    first = pick - 1;
    last = pick;
  }
  int failures = 0;
  for (std::size_t k = first; k < last; ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !out.pass;
    std::printf("criterion %2zu %-28s %s (%.2fs) %s\n", k + 1, criteria[k].first.c_str(), out.pass ? "PASS" : "FAIL",
                secs, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
