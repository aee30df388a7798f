#include "rashomon/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "rashomon/core_measures.hpp"
#include "rashomon/dataset.hpp"
#include "rashomon/error.hpp"
#include "rashomon/gaussian_affine.hpp"
#include "rashomon/parallel.hpp"
#include "rashomon/relu_bound.hpp"
#include "rashomon/subset_selection.hpp"

namespace rashomon {

namespace {

constexpr const char* kToolName = "rashomon";

// Shortest representation that parses back to the same double.
std::string exact(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string exact(std::uint64_t x) { return std::to_string(x); }

std::string with_precision(double x, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

struct Common {
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  int precision = 6;
  std::string output;
};

/// Self-describing output: the canonical command, a key/value summary and a table.
class Report {
public:
  explicit Report(std::string subcommand, int precision) : precision_(precision) {
    command_.push_back(kToolName);
    command_.push_back(std::move(subcommand));
  }

  void arg(const std::string& name, const std::string& value) {
    command_.push_back("--" + name);
    command_.push_back(value);
  }
  void arg(const std::string& name, double value) { arg(name, exact(value)); }
  void arg_count(const std::string& name, std::uint64_t value) { arg(name, exact(value)); }
  void flag(const std::string& name) { command_.push_back("--" + name); }

  void common(const Common& c, bool seeded) {
    if (seeded) arg_count("seed", c.seed);
    arg_count("precision", static_cast<std::uint64_t>(c.precision));
    arg("format", c.format);
  }

  void note(const std::string& key, const std::string& value) { summary_.emplace_back(key, value); }
  void note(const std::string& key, double value) { note(key, num(value)); }
  void note_count(const std::string& key, std::uint64_t value) { note(key, std::to_string(value)); }

  void columns(std::vector<std::string> names) { columns_ = std::move(names); }
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string num(double x) const { return with_precision(x, precision_); }

  void render(std::ostream& out, const std::string& format) const {
    std::string cmd;
    for (const auto& part : command_) {
      if (!cmd.empty()) cmd += ' ';
      cmd += part;
    }
    if (format == "pretty") {
      out << kToolName << ' ' << RASHOMON_VERSION << '\n' << "command: " << cmd << "\n\n";
      std::size_t key_width = 0;
      for (const auto& [k, v] : summary_) key_width = std::max(key_width, k.size());
      for (const auto& [k, v] : summary_) out << k << std::string(key_width - k.size() + 2, ' ') << v << '\n';
      if (columns_.empty()) return;
      std::vector<std::size_t> widths(columns_.size());
      for (std::size_t c = 0; c < columns_.size(); ++c) widths[c] = columns_[c].size();
      for (const auto& r : rows_)
        for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c) out << "  ";
          out << std::string(widths[c] - cells[c].size(), ' ') << cells[c];
        }
        out << '\n';
      };
      out << '\n';
      line(columns_);
      for (const auto& r : rows_) line(r);
      return;
    }
    out << "# " << kToolName << ' ' << RASHOMON_VERSION << '\n' << "# command: " << cmd << '\n';
    for (const auto& [k, v] : summary_) out << "# " << k << ": " << v << '\n';
    if (columns_.empty()) return;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) out << ',';
        out << cells[c];
      }
      out << '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
  }

private:
  int precision_;
  std::vector<std::string> command_;
  std::vector<std::pair<std::string, std::string>> summary_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::pair<std::string, std::string> parse_class_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw Error("--classes expects two names separated by a comma");
  return {text.substr(0, comma), text.substr(comma + 1)};
}

// ---------------------------------------------------------------- gauss-ratio

struct GaussRatioArgs {
  int d = 1;
  double sigma = 1.0;
  double dist = 2.0;
  double gamma = 0.05;
  std::size_t n = 1000;
};

Report gauss_ratio(const GaussRatioArgs& a, const Common& c) {
  Report r("gauss-ratio", c.precision);
  r.arg_count("d", static_cast<std::uint64_t>(a.d));
  r.arg("sigma", a.sigma);
  r.arg("dist", a.dist);
  r.arg("gamma", a.gamma);
  r.arg_count("n", a.n);
  r.common(c, true);

  const auto gm = GaussianMixture::antipodal_along_axis(a.d, a.dist, a.sigma);
  const auto draws = draw_affine_classifiers(gm, a.n, c.seed);
  const auto est = true_ratio_affine(gm, a.gamma, a.n, c.seed);

  r.note("ratio", est.value);
  r.note_count("inside", est.n_inside);
  r.note_count("samples", est.n_samples);
  r.note("bayes_error", bayes_error(gm));
  r.note("hoeffding_epsilon_98", hoeffding_epsilon(a.n, 0.02));
  r.note("hoeffding_delta_eps_0.05", hoeffding_ratio_bound(a.n, 0.05));
  r.note("kind", to_string(est.kind));

  std::vector<std::string> cols{"index"};
  if (a.d == 1) cols.emplace_back("theta");
  for (int k = 0; k < a.d; ++k) cols.push_back("p" + std::to_string(k + 1));
  cols.insert(cols.end(), {"t", "reducible_error", "inside"});
  r.columns(cols);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto& dr = draws[i];
    std::vector<std::string> cells{std::to_string(i)};
    if (a.d == 1) cells.push_back(r.num(std::atan2(dr.classifier.p(0), dr.classifier.t)));
    for (int k = 0; k < a.d; ++k) cells.push_back(r.num(dr.classifier.p(k)));
    cells.push_back(r.num(dr.classifier.t));
    cells.push_back(r.num(dr.reducible_error));
    cells.emplace_back(std::max(0.0, dr.reducible_error) <= a.gamma ? "1" : "0");
    r.row(std::move(cells));
  }
  return r;
}

// ---------------------------------------------------------------- gauss-sweep

struct GaussSweepArgs {
  int d = 1;
  double sigma = 1.0;
  double gamma = 0.05;
  std::size_t n = 1000;
  double dist_min = 0.0;
  double dist_max = 10.0;
  double step = 0.1;
};

Report gauss_sweep(const GaussSweepArgs& a, const Common& c) {
  Report r("gauss-sweep", c.precision);
  r.arg_count("d", static_cast<std::uint64_t>(a.d));
  r.arg("sigma", a.sigma);
  r.arg("gamma", a.gamma);
  r.arg_count("n", a.n);
  r.arg("dist-min", a.dist_min);
  r.arg("dist-max", a.dist_max);
  r.arg("step", a.step);
  r.common(c, true);

  const auto grid = distance_grid(a.dist_min, a.dist_max, a.step);
  const auto curve = ratio_vs_distance_sweep(a.d, a.sigma, a.gamma, a.n, grid, c.seed);
  r.note("argmin_distance", curve.argmin_distance);
  r.note("min_ratio", curve.min_ratio);
  r.note_count("grid_points", grid.size());
  r.columns({"distance", "ratio"});
  for (std::size_t j = 0; j < grid.size(); ++j) r.row({r.num(curve.distances[j]), r.num(curve.ratios[j])});
  return r;
}

// ---------------------------------------------------------------- relu-bound

struct ReluBoundArgs {
  std::string data;
  bool header = false;
  std::string classes = "setosa,versicolor";
  int m = 4;
  double delta = 0.1;
  std::vector<double> gammas{0.10, 0.11, 0.12};
  double kappa_min = 2.0;
  double kappa_max = 10.0;
  double kappa_step = 0.5;
  std::string prefactor = "proof";
  std::string export_gram;
};

std::string near_duplicate_listing(const LabeledDataset& ds) {
  auto dups = find_duplicate_rows(ds.features, 1e-6);
  if (dups.empty()) return "none found within 1e-6";
  std::string s;
  for (std::size_t k = 0; k < dups.size() && k < 10; ++k) {
    if (k) s += ' ';
    s += std::to_string(dups[k].first) + "~" + std::to_string(dups[k].second);
  }
  if (dups.size() > 10) s += " ...";
  return s;
}

Report relu_bound(const ReluBoundArgs& a, const Common& c) {
  Report r("relu-bound", c.precision);
  r.arg("data", a.data);
  if (a.header) r.flag("header");
  r.arg("classes", a.classes);
  r.arg_count("m", static_cast<std::uint64_t>(a.m));
  r.arg("delta", a.delta);
  std::string gamma_list;
  for (double g : a.gammas) gamma_list += (gamma_list.empty() ? "" : ",") + exact(g);
  r.arg("gammas", gamma_list);
  r.arg("kappa-min", a.kappa_min);
  r.arg("kappa-max", a.kappa_max);
  r.arg("kappa-step", a.kappa_step);
  r.arg("prefactor", a.prefactor);
  if (!a.export_gram.empty()) r.arg("export-gram", a.export_gram);
  r.common(c, false);

  const Prefactor prefactor = a.prefactor == "statement" ? Prefactor::statement : Prefactor::proof;
  const auto ds = load_and_normalize(a.data, parse_class_pair(a.classes), a.header);
  const Eigen::MatrixXd h = gram_matrix(ds);
  if (!a.export_gram.empty()) {
    std::ofstream gram_out(a.export_gram);
    if (!gram_out) throw Error("cannot write '" + a.export_gram + "'");
    write_matrix_csv(gram_out, h);
  }
  const auto lambda0 = min_eigenvalue(h);
  if (!lambda0.positive_definite) {
    throw Error("H not positive-definite (lambda0=" + with_precision(lambda0.value, 6) +
                "); near-duplicate rows: " + near_duplicate_listing(ds));
  }
  const auto term = complexity_term(h, ds.labels);
  const auto kappas = kappa_grid(a.kappa_min, a.kappa_max, a.kappa_step);
  const auto rows = bound_sweep(term.epsilon_dominant, static_cast<int>(ds.dim()), a.m, a.delta, a.gammas, kappas,
                                prefactor);

  r.note_count("n", static_cast<std::uint64_t>(ds.size()));
  r.note_count("d", static_cast<std::uint64_t>(ds.dim()));
  r.note("lambda0", lambda0.value);
  r.note("y_Hinv_y", term.y_hinv_y);
  r.note("epsilon", term.epsilon_dominant);
  r.note("epsilon_terms", "dominant sqrt(y^T H^-1 y) only; O(n kappa/(lambda0 delta)) and poly/(n^1/4 kappa^1/2) "
                          "terms unevaluated");
  r.note_count("duplicate_rows", ds.duplicate_rows.size());
  r.note("preprocessing", "raw features, no centering or scaling, rows scaled to unit norm; first class -> +1");
  r.note("prefactor", prefactor == Prefactor::proof ? "proof (1 - 3 delta/2)" : "statement (1 - delta)");
  if (std::any_of(kappas.begin(), kappas.end(), [](double k) { return k > 1.0; }))
    r.note("warning", "kappa > 1 lies outside the 0 < kappa^2 <= 1 initialization regime");

  r.columns({"kappa", "gamma", "log_bound", "bound"});
  for (const auto& row : rows) r.row({r.num(row.kappa), r.num(row.gamma), r.num(row.log_value), r.num(row.value)});
  return r;
}

// ---------------------------------------------------------------- subset-plan

struct SubsetPlanArgs {
  std::optional<double> ratio;
  std::optional<std::size_t> n_subset;
  double delta = 0.01;
};

Report subset_plan(const SubsetPlanArgs& a, const Common& c) {
  Report r("subset-plan", c.precision);
  if (a.ratio) r.arg("ratio", *a.ratio);
  if (a.n_subset) r.arg_count("n-subset", *a.n_subset);
  r.arg("delta", a.delta);
  r.common(c, false);

  if (a.ratio.has_value() == a.n_subset.has_value()) throw Error("give exactly one of --ratio and --n-subset");
  if (a.ratio) {
    const auto plan = plan_subset(*a.ratio, a.delta);
    r.note("ratio", *a.ratio);
    r.note("delta", a.delta);
    r.note("raw_size", plan.raw_size);
    r.note_count("required_subset_size", plan.n_subset);
  } else {
    r.note_count("n_subset", *a.n_subset);
    r.note("delta", a.delta);
    r.note("min_ratio", min_ratio_for_subset(*a.n_subset, a.delta));
  }
  return r;
}

// ---------------------------------------------------------------- tarp

struct TarpArgs {
  std::string data;
  bool header = false;
  std::string classes = "setosa,versicolor";
  bool synthetic = false;
  int d = 1;
  double dist = 5.0;
  double sigma = 1.0;
  std::size_t n = 2000;
  std::size_t directions = 7;
  double delta = 0.01;
  double gamma = 0.05;
  std::optional<double> inf_loss;
};

Report tarp(const TarpArgs& a, const Common& c) {
  Report r("tarp", c.precision);
  if (a.synthetic == !a.data.empty()) throw Error("give exactly one of --data and --synthetic");
  if (a.synthetic) {
    r.flag("synthetic");
    r.arg_count("d", static_cast<std::uint64_t>(a.d));
    r.arg("dist", a.dist);
    r.arg("sigma", a.sigma);
    r.arg_count("n", a.n);
  } else {
    r.arg("data", a.data);
    if (a.header) r.flag("header");
    r.arg("classes", a.classes);
  }
  r.arg_count("directions", a.directions);
  r.arg("delta", a.delta);
  r.arg("gamma", a.gamma);
  if (a.inf_loss) r.arg("inf-loss", *a.inf_loss);
  r.common(c, true);

  LabeledDataset ds;
  std::optional<double> inf_loss = a.inf_loss;
  if (a.synthetic) {
    const auto gm = GaussianMixture::antipodal_along_axis(a.d, a.dist, a.sigma);
    ds = sample_mixture(gm, static_cast<Eigen::Index>(a.n), c.seed);
    if (!inf_loss) inf_loss = bayes_error(gm);
  } else {
    ds = select_classes(read_table_file(a.data, a.header), parse_class_pair(a.classes));
  }
  const auto model = tarp_train(ds, a.directions, c.seed);
  const auto n = static_cast<std::size_t>(ds.size());

  r.note_count("n", n);
  r.note("train_error", model.train_error);
  r.note_count("best_index", static_cast<std::uint64_t>(model.best_index));
  r.note("threshold", model.best_threshold);
  r.note("orientation", model.best_orientation > 0 ? "+1" : "-1");
  if (inf_loss) {
    const auto interval = tarp_bound(n, a.directions, a.delta, *inf_loss, a.gamma);
    r.note("inf_true_loss", *inf_loss);
    r.note("bound_lower", interval.lower);
    r.note("bound_upper", interval.upper);
    r.note("bound_contains_train_error", interval.contains(model.train_error) ? "yes" : "no");
    r.note("caveat", interval.caveat);
  } else {
    const auto offsets = tarp_bound(n, a.directions, a.delta, 0.0, a.gamma);
    r.note("bound_lower_offset", offsets.lower);
    r.note("bound_upper_offset", offsets.upper);
    r.note("caveat", "interval is inf_true_loss + offsets; pass --inf-loss to resolve it");
  }

  std::vector<std::string> cols{"direction"};
  for (Eigen::Index k = 0; k < ds.dim(); ++k) cols.push_back("a" + std::to_string(k + 1));
  cols.emplace_back("selected");
  r.columns(cols);
  for (Eigen::Index i = 0; i < model.directions.rows(); ++i) {
    std::vector<std::string> cells{std::to_string(i)};
    for (Eigen::Index k = 0; k < ds.dim(); ++k) cells.push_back(r.num(model.directions(i, k)));
    cells.emplace_back(i == model.best_index ? "1" : "0");
    r.row(std::move(cells));
  }
  return r;
}

// ---------------------------------------------------------------- estimate-ratio

struct EstimateRatioArgs {
  std::string losses;
  double gamma = 0.05;
  std::string kind = "true_anchored";
  double epsilon = 0.05;
  double delta = 0.02;
};

std::vector<double> read_losses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string text = line.substr(first, last - first + 1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw Error("line " + std::to_string(line_no) + ": cannot parse loss '" + text + "'");
    values.push_back(v);
  }
  return values;
}

Report estimate_ratio(const EstimateRatioArgs& a, const Common& c) {
  Report r("estimate-ratio", c.precision);
  r.arg("losses", a.losses);
  r.arg("gamma", a.gamma);
  r.arg("kind", a.kind);
  r.arg("epsilon", a.epsilon);
  r.arg("delta", a.delta);
  r.common(c, false);

  LossKind kind = LossKind::true_anchored;
  if (a.kind == "true_reducible") kind = LossKind::true_reducible;
  else if (a.kind == "empirical_anchored") kind = LossKind::empirical_anchored;

  const auto values = read_losses(a.losses);
  const auto est = estimate_ratio_mc(std::span<const double>(values), a.gamma, kind);
  r.note("ratio", est.value);
  r.note_count("inside", est.n_inside);
  r.note_count("samples", est.n_samples);
  r.note("kind", to_string(kind));
  r.note("hoeffding_delta_at_epsilon", hoeffding_ratio_bound(est.n_samples, a.epsilon));
  r.note("hoeffding_epsilon_at_delta", hoeffding_epsilon(est.n_samples, a.delta));
  r.note_count("required_samples", required_mc_samples(a.epsilon, a.delta));
  return r;
}

void add_common(CLI::App* sub, Common& c, bool seeded) {
  if (seeded) sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "pretty"}))
      ->capture_default_str();
  sub->add_option("--precision", c.precision, "Significant digits (17 for full precision)")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  sub->add_option("--output", c.output, "Write to this file instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rashomon ratio estimation, bounds and subset sizing", kToolName};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  Common common;
  std::function<Report()> action;

  GaussRatioArgs gr;
  auto* gr_cmd = app.add_subcommand("gauss-ratio", "Rashomon ratio of affine classifiers on a Gaussian mixture");
  gr_cmd->add_option("--d", gr.d, "Feature dimension")->check(CLI::PositiveNumber)->capture_default_str();
  gr_cmd->add_option("--sigma", gr.sigma, "Class standard deviation")->check(CLI::PositiveNumber)->capture_default_str();
  gr_cmd->add_option("--dist", gr.dist, "Distance between the class means")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gr_cmd->add_option("--gamma", gr.gamma, "Rashomon level")->check(CLI::PositiveNumber)->capture_default_str();
  gr_cmd->add_option("--n", gr.n, "Sampled classifiers")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(gr_cmd, common, true);
  gr_cmd->callback([&] { action = [&] { return gauss_ratio(gr, common); }; });

  GaussSweepArgs gs;
  auto* gs_cmd = app.add_subcommand("gauss-sweep", "Rashomon ratio as a function of the distance between means");
  gs_cmd->add_option("--d", gs.d, "Feature dimension")->check(CLI::PositiveNumber)->capture_default_str();
  gs_cmd->add_option("--sigma", gs.sigma, "Class standard deviation")->check(CLI::PositiveNumber)->capture_default_str();
  gs_cmd->add_option("--gamma", gs.gamma, "Rashomon level")->check(CLI::PositiveNumber)->capture_default_str();
  gs_cmd->add_option("--n", gs.n, "Sampled classifiers per point")->check(CLI::PositiveNumber)->capture_default_str();
  gs_cmd->add_option("--dist-min", gs.dist_min, "Smallest distance")->capture_default_str();
  gs_cmd->add_option("--dist-max", gs.dist_max, "Largest distance")->capture_default_str();
  gs_cmd->add_option("--step", gs.step, "Grid step")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(gs_cmd, common, true);
  gs_cmd->callback([&] { action = [&] { return gauss_sweep(gs, common); }; });

  ReluBoundArgs rb;
  auto* rb_cmd = app.add_subcommand("relu-bound", "Lower bound on the Rashomon ratio of two-layer ReLU networks");
  rb_cmd->add_option("--data", rb.data, "Comma-separated dataset: features then label")->required();
  rb_cmd->add_flag("--header", rb.header, "First line is a header");
  rb_cmd->add_option("--classes", rb.classes, "Two class names: first -> +1, second -> -1")->capture_default_str();
  rb_cmd->add_option("--m", rb.m, "Hidden width")->check(CLI::PositiveNumber)->capture_default_str();
  rb_cmd->add_option("--delta", rb.delta, "Failure probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  rb_cmd->add_option("--gammas", rb.gammas, "Rashomon levels")->delimiter(',')->check(CLI::PositiveNumber);
  rb_cmd->add_option("--kappa-min", rb.kappa_min, "Smallest kappa")->check(CLI::PositiveNumber)->capture_default_str();
  rb_cmd->add_option("--kappa-max", rb.kappa_max, "Largest kappa")->check(CLI::PositiveNumber)->capture_default_str();
  rb_cmd->add_option("--kappa-step", rb.kappa_step, "Kappa step")->check(CLI::PositiveNumber)->capture_default_str();
  rb_cmd->add_option("--prefactor", rb.prefactor, "proof (1-3delta/2) or statement (1-delta)")
      ->check(CLI::IsMember({"proof", "statement"}))
      ->capture_default_str();
  rb_cmd->add_option("--export-gram", rb.export_gram, "Write the Gram matrix as CSV");
  add_common(rb_cmd, common, false);
  rb_cmd->callback([&] { action = [&] { return relu_bound(rb, common); }; });

  SubsetPlanArgs sp;
  auto* sp_cmd = app.add_subcommand("subset-plan", "Random-subset size for a given Rashomon ratio, or the reverse");
  auto* ratio_opt = sp_cmd->add_option("--ratio", sp.ratio, "Rashomon ratio of the large family");
  auto* size_opt = sp_cmd->add_option("--n-subset", sp.n_subset, "Size of the random subset")
                       ->check(CLI::PositiveNumber);
  ratio_opt->excludes(size_opt);
  sp_cmd->add_option("--delta", sp.delta, "Failure probability")->required();
  add_common(sp_cmd, common, false);
  sp_cmd->callback([&] { action = [&] { return subset_plan(sp, common); }; });

  TarpArgs tp;
  auto* tp_cmd = app.add_subcommand("tarp", "Thresholding after random projection");
  tp_cmd->add_option("--data", tp.data, "Comma-separated dataset: features then label");
  tp_cmd->add_flag("--header", tp.header, "First line is a header");
  tp_cmd->add_option("--classes", tp.classes, "Two class names: first -> +1, second -> -1")->capture_default_str();
  tp_cmd->add_flag("--synthetic", tp.synthetic, "Sample an antipodal Gaussian mixture instead");
  tp_cmd->add_option("--d", tp.d, "Synthetic dimension")->check(CLI::PositiveNumber)->capture_default_str();
  tp_cmd->add_option("--dist", tp.dist, "Synthetic distance between means")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  tp_cmd->add_option("--sigma", tp.sigma, "Synthetic standard deviation")->check(CLI::PositiveNumber)
      ->capture_default_str();
  tp_cmd->add_option("--n", tp.n, "Synthetic sample size")->check(CLI::PositiveNumber)->capture_default_str();
  tp_cmd->add_option("--directions", tp.directions, "Random directions N")->check(CLI::PositiveNumber)
      ->capture_default_str();
  tp_cmd->add_option("--delta", tp.delta, "Failure probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  tp_cmd->add_option("--gamma", tp.gamma, "Rashomon level")->check(CLI::NonNegativeNumber)->capture_default_str();
  tp_cmd->add_option("--inf-loss", tp.inf_loss, "Best true loss of all affine classifiers");
  add_common(tp_cmd, common, true);
  tp_cmd->callback([&] { action = [&] { return tarp(tp, common); }; });

  EstimateRatioArgs er;
  auto* er_cmd = app.add_subcommand("estimate-ratio", "Monte-Carlo Rashomon ratio from a file of sampled losses");
  er_cmd->add_option("--losses", er.losses, "One loss per line")->required();
  er_cmd->add_option("--gamma", er.gamma, "Rashomon level")->check(CLI::PositiveNumber)->required();
  er_cmd->add_option("--kind", er.kind, "Loss kind")
      ->check(CLI::IsMember({"true_reducible", "true_anchored", "empirical_anchored"}))
      ->capture_default_str();
  er_cmd->add_option("--epsilon", er.epsilon, "Hoeffding half-width")->check(CLI::PositiveNumber)
      ->capture_default_str();
  er_cmd->add_option("--delta", er.delta, "Hoeffding failure probability")->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_common(er_cmd, common, false);
  er_cmd->callback([&] { action = [&] { return estimate_ratio(er, common); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (threads > 0) set_worker_count(threads);
    const Report report = action();
    if (common.output.empty()) {
      report.render(out, common.format);
    } else {
      std::ofstream file(common.output);
      if (!file) throw Error("cannot write '" + common.output + "'");
      report.render(file, common.format);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rashomon
