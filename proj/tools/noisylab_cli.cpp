#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <iostream>
#include <map>

#include "cli_support.hpp"
#include "noisylab/csv.hpp"
#include "noisylab/dataio.hpp"
#include "noisylab/diagnostics.hpp"
#include "noisylab/efficiency.hpp"
#include "noisylab/errors.hpp"
#include "noisylab/experiment.hpp"
#include "noisylab/gaussian.hpp"
#include "noisylab/logreg.hpp"
#include "noisylab/overdispersion.hpp"
#include "noisylab/rng.hpp"
#include "noisylab/svg.hpp"

namespace noisylab::cli {
namespace {

constexpr const char* kNA = "NA";

std::string num(double v) { return std::isfinite(v) ? format_number(v) : kNA; }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : kNA; }

std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t index) {
  return Rng::stream(seed, index).next_u64();
}

// simulate-are

struct AreFlags {
  std::vector<long> m_list{5, 10, 50};
  std::vector<double> alpha0_list{1, 10, 100, 1000};
  std::vector<double> delta_list{1, 2, 3, 4};
  long n = 500;
  long p = 2;
  long reps = 1000;
  double prior = 0.5;
  int bootstrap = 500;
  bool svg = false;
};

void register_simulate_are(OptionSet& o, AreFlags& f) {
  o.add_list("m-list", f.m_list, "Group sizes")->capture_default_str();
  o.add_list("alpha0-list", f.alpha0_list, "Overdispersion values")->capture_default_str();
  o.add_list("delta-list", f.delta_list, "Mahalanobis separations")->capture_default_str();
  o.add("n", f.n, "Training-set size")->capture_default_str();
  o.add("p", f.p, "Feature dimension")->capture_default_str();
  o.add("reps", f.reps, "Replications per cell")->capture_default_str();
  o.add("prior", f.prior, "Class-one prior")->capture_default_str();
  o.add("bootstrap", f.bootstrap, "Bootstrap resamples for the RE standard error")->capture_default_str();
  o.flag("svg", f.svg, "Also write a plot of RE against alpha0");
}

int run_simulate_are(const AreFlags& f, const Json& config, const CommonFlags& common) {
  if (f.m_list.empty() || f.alpha0_list.empty() || f.delta_list.empty()) {
    throw UsageError("grid lists must not be empty");
  }
  for (long m : f.m_list) {
    if (m < 1) throw UsageError("--m-list entries must be >= 1");
  }
  for (double a : f.alpha0_list) {
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("--alpha0-list entries must be positive");
  }
  for (double d : f.delta_list) {
    if (!(d > 0.0) || !std::isfinite(d)) throw UsageError("--delta-list entries must be positive");
  }
  if (f.p < 1 || f.n < f.p + 2) throw UsageError("need --p >= 1 and --n >= p + 2");
  if (f.reps < 1) throw UsageError("--reps must be >= 1");
  if (!(f.prior > 0.0 && f.prior < 1.0)) throw UsageError("--prior must lie in (0, 1)");
  if (f.bootstrap < 100) throw UsageError("--bootstrap must be >= 100");

  const std::uint64_t seed = resolve_seed(common);
  Manifest manifest("simulate-are", seed, config, common.out);

  CsvTable table;
  table.header = {"m", "alpha0", "delta", "are_theoretical", "re_simulated", "se_bootstrap",
                  "bayes_error"};
  struct Row {
    long m;
    double alpha0;
    double delta;
    double re;
    std::optional<double> se;
  };
  std::vector<Row> rows;
  long failures = 0;
  std::uint64_t cell = 0;
  for (long m : f.m_list) {
    for (double a : f.alpha0_list) {
      for (double d : f.delta_list) {
        AreConfig c;
        c.n = f.n;
        c.p = f.p;
        c.delta = d;
        c.prior1 = f.prior;
        c.m = m;
        c.alpha0 = a;
        c.replications = f.reps;
        c.seed = cell_seed(seed, cell++);
        c.bootstrap_resamples = f.bootstrap;
        c.threads = resolve_threads(common);
        const AreResult r = simulate_relative_efficiency(c);
        failures += r.failures;
        table.rows.push_back({std::to_string(m), num(a), num(d), num(r.theoretical_are),
                              num(r.simulated_re), opt_num(r.bootstrap_se), num(r.bayes_error)});
        rows.push_back({m, a, d, r.simulated_re, r.bootstrap_se});
      }
    }
  }
  write_csv(manifest.output("simulate_are.csv"), table);

  if (f.svg) {
    SvgPlot plot;
    plot.title = "Relative efficiency";
    plot.x_label = "alpha0";
    plot.y_label = "RE";
    plot.log_x = true;
    std::vector<double> alphas = f.alpha0_list;
    std::sort(alphas.begin(), alphas.end());
    for (long m : f.m_list) {
      SvgSeries are{fmt::format("ARE m={}", m), alphas, {}, {}, SeriesStyle::DashedLine};
      for (double a : alphas) are.y.push_back(theoretical_are(m, a));
      plot.series.push_back(std::move(are));
      for (double d : f.delta_list) {
        SvgSeries s{fmt::format("m={} delta={}", m, num(d)), {}, {}, {}, SeriesStyle::Points};
        for (double a : alphas) {
          for (const auto& r : rows) {
            if (r.m == m && r.alpha0 == a && r.delta == d) {
              s.x.push_back(a);
              s.y.push_back(r.re);
              s.error.push_back(r.se.value_or(0.0));
            }
          }
        }
        plot.series.push_back(std::move(s));
      }
    }
    write_text(manifest.output("simulate_are.svg"), render_svg(plot));
  }
  manifest.failures("replications", failures);
  manifest.write();
  return kOk;
}

// fit

struct FitFlags {
  DataFlags data;
  std::string mode = "ground-truth";
  bool ridge = false;
  std::optional<double> alpha0;
};

void register_fit(OptionSet& o, FitFlags& f) {
  add_data_flags(o, f.data);
  o.add("mode", f.mode, "ground-truth or votes")
      ->check(CLI::IsMember({"ground-truth", "votes"}))
      ->capture_default_str();
  o.flag("ridge", f.ridge, "Fall back to a small ridge penalty instead of failing on separation");
  o.add("alpha0", f.alpha0, "alpha0 for the closed-form information in votes mode")
      ->check(CLI::PositiveNumber);
}

int run_fit(const FitFlags& f, const Json& config, const CommonFlags& common) {
  const bool votes = f.mode == "votes";
  if (votes && !f.data.m) throw UsageError("--m is required in votes mode");
  const LabelledDataset data = load_dataset(f.data);
  if (votes) {
    require_votes(data, f.data);
  } else {
    require_labels(data);
  }
  Manifest manifest("fit", resolve_seed(common), config, common.out);
  const DesignMatrix x = data.design();
  const BinomialResponse y = votes ? data.vote_response() : data.label_response();
  FitOptions options;
  options.ridge = f.ridge;
  const FitResult r = fit(x, y, options);

  Json j = model_json(r.model, data.column_names);
  j["mode"] = f.mode;
  j["n"] = data.rows();
  if (votes) j["m"] = data.group_size;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["gradient_norm"] = r.final_gradient_norm;
  j["log_likelihood"] = r.log_likelihood;
  j["ridge"] = f.ridge;
  Json info;
  if (votes) {
    const InformationMatrices m = godambe_information(x, y, r.model, f.alpha0.value_or(1.0));
    info["H"] = matrix_json(m.H);
    info["G"] = matrix_json(m.G);
    info["godambe"] = matrix_json(m.godambe);
    info["fisher"] = matrix_json(m.fisher);
    if (f.alpha0) info["theoretical"] = matrix_json(m.theoretical);
  } else {
    info["fisher"] = matrix_json(fisher_information(x, r.model));
  }
  j["information"] = info;
  write_json(manifest.output("fit.json"), j);
  manifest.write();
  return kOk;
}

// beta sources

struct BetaFlags {
  std::string source = "ground-truth";
  std::string file;
};

void register_beta(OptionSet& o, BetaFlags& f) {
  o.add("beta-source", f.source, "ground-truth, votes or file")
      ->check(CLI::IsMember({"ground-truth", "votes", "file"}))
      ->capture_default_str();
  o.add("beta-file", f.file, "Fit JSON holding 'coefficients' (with --beta-source file)");
}

struct BetaChoice {
  LogisticModel model;
  BetaSource source;
};

BetaChoice choose_beta(const BetaFlags& f, const LabelledDataset& data) {
  if (f.source == "file") {
    if (f.file.empty()) throw UsageError("--beta-file is required with --beta-source file");
    return {read_model(f.file, data.dim()), BetaSource::Fixed};
  }
  if (f.source == "ground-truth") {
    require_labels(data);
    return {fit(data.design(), data.label_response()).model, BetaSource::GroundTruth};
  }
  return {fit(data.design(), data.vote_response()).model, BetaSource::Votes};
}

const char* boundary_name(Boundary b) {
  switch (b) {
    case Boundary::Lower:
      return "lower";
    case Boundary::Upper:
      return "upper";
    case Boundary::None:
      break;
  }
  return "none";
}

std::vector<double> taus_for(const LabelledDataset& data, const LogisticModel& beta) {
  std::vector<double> eta = linear_predictors(data.design(), beta);
  for (double& e : eta) e = 1.0 / (1.0 + std::exp(-e));
  return eta;
}

// Equal-width bins on ln α₀.
CsvTable log_histogram(const std::vector<double>& draws, int bins) {
  CsvTable t;
  t.header = {"bin_lo", "bin_hi", "count"};
  if (draws.empty()) return t;
  const auto [lo_it, hi_it] = std::minmax_element(draws.begin(), draws.end());
  const double lo = std::log(*lo_it);
  double hi = std::log(*hi_it);
  if (hi <= lo) hi = lo + 1e-9;
  const double width = (hi - lo) / bins;
  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  for (double d : draws) {
    auto b = static_cast<long>((std::log(d) - lo) / width);
    b = std::clamp<long>(b, 0, bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  for (int b = 0; b < bins; ++b) {
    t.rows.push_back({num(std::exp(lo + b * width)), num(std::exp(lo + (b + 1) * width)),
                      std::to_string(counts[static_cast<std::size_t>(b)])});
  }
  return t;
}

SvgPlot histogram_plot(const CsvTable& hist, const std::string& title) {
  SvgPlot plot;
  plot.title = title;
  plot.x_label = "alpha0";
  plot.y_label = "count";
  plot.log_x = true;
  SvgSeries bars{"bootstrap", {}, {}, {}, SeriesStyle::Bars};
  for (const auto& row : hist.rows) {
    bars.x.push_back(std::sqrt(std::stod(row[0]) * std::stod(row[1])));
    bars.y.push_back(std::stod(row[2]));
  }
  plot.series.push_back(std::move(bars));
  return plot;
}

// estimate-alpha

struct AlphaFlags {
  DataFlags data;
  BetaFlags beta;
  int bootstrap = 500;
  double level = 0.95;
};

void register_estimate_alpha(OptionSet& o, AlphaFlags& f) {
  add_data_flags(o, f.data);
  register_beta(o, f.beta);
  o.add("bootstrap", f.bootstrap, "Bootstrap resamples (0 disables)")->capture_default_str();
  o.add("level", f.level, "Confidence level of the percentile interval")->capture_default_str();
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw UsageError("--level must lie in (0, 1)");
}

int run_estimate_alpha(const AlphaFlags& f, const Json& config, const CommonFlags& common) {
  check_level(f.level);
  if (f.bootstrap < 0) throw UsageError("--bootstrap must be >= 0");
  const LabelledDataset data = load_dataset(f.data);
  require_votes(data, f.data);
  if (data.group_size == 1) {
    throw IdentifiabilityError("alpha0 is not identifiable from single-annotator votes (m = 1)");
  }
  const std::uint64_t seed = resolve_seed(common);
  Manifest manifest("estimate-alpha", seed, config, common.out);
  const BetaChoice beta = choose_beta(f.beta, data);
  const AlphaEstimate est = estimate_alpha0(data.design(), data.vote_response(), beta.model);

  Json j;
  j["alpha0_hat"] = est.alpha0_hat;
  j["log_likelihood"] = est.log_likelihood;
  j["boundary_flag"] = est.boundary_flag;
  j["boundary"] = boundary_name(est.boundary);
  j["beta_source"] = f.beta.source;
  j["model"] = model_json(beta.model, data.column_names);
  long failures = 0;
  if (f.bootstrap > 0) {
    AlphaBootstrapOptions opts;
    opts.resamples = f.bootstrap;
    opts.level = f.level;
    opts.source = beta.source;
    opts.seed = seed;
    opts.threads = resolve_threads(common);
    const AlphaBootstrap boot = bootstrap_alpha0(data, beta.model, opts);
    failures = boot.failures;
    j["ci"] = {{"level", f.level}, {"lo", boot.ci_lo}, {"hi", boot.ci_hi}};
    j["bootstrap"] = {{"resamples", f.bootstrap}, {"failures", boot.failures}};

    CsvTable draws;
    draws.header = {"resample", "alpha0"};
    for (std::size_t b = 0; b < boot.estimates.size(); ++b) {
      draws.rows.push_back({std::to_string(b), num(boot.estimates[b])});
    }
    write_csv(manifest.output("estimate_alpha_bootstrap.csv"), draws);
    write_csv(manifest.output("estimate_alpha_histogram.csv"), log_histogram(boot.estimates, 30));
  }
  write_json(manifest.output("estimate_alpha.json"), j);
  manifest.failures("bootstrap", failures);
  manifest.write();
  return kOk;
}

// diagnose

struct DiagnoseFlags {
  DataFlags data;
  BetaFlags beta;
  std::optional<double> alpha0;
  double level = 0.95;
  int bootstrap = 0;
  bool svg = false;
};

void register_diagnose(OptionSet& o, DiagnoseFlags& f) {
  add_data_flags(o, f.data);
  register_beta(o, f.beta);
  o.add("alpha0", f.alpha0, "alpha0 (default: maximum-likelihood estimate)")
      ->check(CLI::PositiveNumber);
  o.add("level", f.level, "Prediction-band level")->capture_default_str();
  o.add("bootstrap", f.bootstrap, "Bootstrap resamples for the alpha0 histogram panel")
      ->capture_default_str();
  o.flag("svg", f.svg, "Write SVG panels");
}

int run_diagnose(const DiagnoseFlags& f, const Json& config, const CommonFlags& common) {
  check_level(f.level);
  if (f.bootstrap < 0) throw UsageError("--bootstrap must be >= 0");
  const LabelledDataset data = load_dataset(f.data);
  require_votes(data, f.data);
  const std::uint64_t seed = resolve_seed(common);
  Manifest manifest("diagnose", seed, config, common.out);
  const BetaChoice beta = choose_beta(f.beta, data);
  const std::vector<double> tau = taus_for(data, beta.model);
  const long m = data.group_size;

  double alpha0 = 0.0;
  Json j;
  if (f.alpha0) {
    alpha0 = *f.alpha0;
    j["alpha0_source"] = "given";
  } else {
    if (m == 1) throw IdentifiabilityError("alpha0 is not identifiable for m = 1; pass --alpha0");
    const AlphaEstimate est = estimate_alpha0(tau, *data.votes, m);
    alpha0 = est.alpha0_hat;
    j["alpha0_source"] = "estimated";
    j["boundary_flag"] = est.boundary_flag;
  }
  j["alpha0"] = alpha0;
  j["beta_source"] = f.beta.source;
  j["model"] = model_json(beta.model, data.column_names);

  const auto groups = vote_group_means(tau, *data.votes, m);
  CsvTable g;
  g.header = {"votes", "count", "mean_tau", "se"};
  for (const auto& s : groups) {
    g.rows.push_back({std::to_string(s.votes), std::to_string(s.count), num(s.mean_tau), opt_num(s.se)});
  }
  write_csv(manifest.output("diagnose_vote_groups.csv"), g);

  const GroupModel group(m, alpha0);
  const auto oe = expected_vs_observed(tau, *data.votes, group, f.level);
  CsvTable t;
  t.header = {"row", "tau", "expected", "observed", "band_lo", "band_hi", "in_band"};
  for (std::size_t i = 0; i < oe.size(); ++i) {
    const auto& r = oe[i];
    t.rows.push_back({std::to_string(i), num(r.tau), num(r.expected), std::to_string(r.observed),
                      std::to_string(r.band.lo), std::to_string(r.band.hi), r.in_band ? "1" : "0"});
  }
  write_csv(manifest.output("diagnose_observed_expected.csv"), t);
  j["band_level"] = f.level;
  j["band_coverage"] = band_coverage(oe);

  long failures = 0;
  CsvTable hist;
  if (f.bootstrap > 0) {
    AlphaBootstrapOptions opts;
    opts.resamples = f.bootstrap;
    opts.level = f.level;
    opts.source = beta.source;
    opts.seed = seed;
    opts.threads = resolve_threads(common);
    const AlphaBootstrap boot = bootstrap_alpha0(data, beta.model, opts);
    failures = boot.failures;
    j["ci"] = {{"level", f.level}, {"lo", boot.ci_lo}, {"hi", boot.ci_hi}};
    hist = log_histogram(boot.estimates, 30);
    write_csv(manifest.output("diagnose_alpha_histogram.csv"), hist);
  }
  write_json(manifest.output("diagnose.json"), j);

  if (f.svg) {
    SvgPlot a;
    a.title = "Mean posterior probability by vote group";
    a.x_label = "positive votes";
    a.y_label = "mean tau";
    SvgSeries means{"mean tau", {}, {}, {}, SeriesStyle::Points};
    for (const auto& s : groups) {
      means.x.push_back(static_cast<double>(s.votes));
      means.y.push_back(s.mean_tau);
      means.error.push_back(s.se.value_or(0.0));
    }
    a.series.push_back(std::move(means));
    write_text(manifest.output("diagnose_a.svg"), render_svg(a));

    SvgPlot b;
    b.title = "Observed against expected votes";
    b.x_label = "expected votes";
    b.y_label = "observed votes";
    SvgSeries obs{"observed", {}, {}, {}, SeriesStyle::Points};
    for (const auto& r : oe) {
      obs.x.push_back(r.expected);
      obs.y.push_back(static_cast<double>(r.observed));
    }
    SvgSeries mean_line{"mean", {0.0, static_cast<double>(m)}, {0.0, static_cast<double>(m)}, {},
                        SeriesStyle::Line};
    SvgSeries lo{"band", {}, {}, {}, SeriesStyle::DashedLine};
    SvgSeries hi{"", {}, {}, {}, SeriesStyle::DashedLine};
    for (int k = 0; k <= 200; ++k) {
      const double t1 = k / 200.0;
      const CountInterval band = dm_prediction_interval(group, ProbabilityVector::binary(t1), f.level);
      lo.x.push_back(m * t1);
      lo.y.push_back(static_cast<double>(band.lo));
      hi.x.push_back(m * t1);
      hi.y.push_back(static_cast<double>(band.hi));
    }
    b.series.push_back(std::move(obs));
    b.series.push_back(std::move(mean_line));
    b.series.push_back(std::move(lo));
    b.series.push_back(std::move(hi));
    write_text(manifest.output("diagnose_b.svg"), render_svg(b));

    if (f.bootstrap > 0) {
      write_text(manifest.output("diagnose_c.svg"), render_svg(histogram_plot(hist, "Bootstrap alpha0")));
    }
  }
  manifest.failures("bootstrap", failures);
  manifest.write();
  return kOk;
}

// experiment

struct ExperimentFlags {
  DataFlags data;
  long n_train = 50;
  std::vector<long> m_list{5, 10, 20, 50, 100};
  std::vector<double> alpha0_list{1, 10, 100, 1000};
  long reps = 100;
  std::string on_separation = "redraw";
  double max_redraw_fraction = 0.1;
};

void register_experiment(OptionSet& o, ExperimentFlags& f) {
  add_data_flags(o, f.data);
  o.add("n-train", f.n_train, "Training rows per split")->capture_default_str();
  o.add_list("m-list", f.m_list, "Group sizes")->capture_default_str();
  o.add_list("alpha0-list", f.alpha0_list, "Overdispersion values")->capture_default_str();
  o.add("reps", f.reps, "Random train/test splits")->capture_default_str();
  o.add("on-separation", f.on_separation, "redraw or ridge")
      ->check(CLI::IsMember({"redraw", "ridge"}))
      ->capture_default_str();
  o.add("max-redraw-fraction", f.max_redraw_fraction, "Redraw budget as a fraction of --reps")
      ->capture_default_str();
}

int run_experiment(const ExperimentFlags& f, const Json& config, const CommonFlags& common) {
  if (f.m_list.empty() || f.alpha0_list.empty()) throw UsageError("grid lists must not be empty");
  for (long m : f.m_list) {
    if (m < 1) throw UsageError("--m-list entries must be >= 1");
  }
  for (double a : f.alpha0_list) {
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("--alpha0-list entries must be positive");
  }
  if (f.reps < 1) throw UsageError("--reps must be >= 1");
  if (f.max_redraw_fraction < 0.0) throw UsageError("--max-redraw-fraction must be >= 0");
  DataFlags df = f.data;
  df.standardize = false;  // the protocol standardises per split itself
  const LabelledDataset data = load_dataset(df);
  require_labels(data);
  if (f.n_train < data.dim() + 2 || f.n_train >= data.rows()) {
    throw UsageError("--n-train must be at least p + 2 and below the number of rows");
  }
  const std::uint64_t seed = resolve_seed(common);
  Manifest manifest("experiment", seed, config, common.out);

  SplitPlan plan;
  plan.train_size = f.n_train;
  plan.seed = seed;
  plan.repetitions = f.reps;
  ExperimentOptions opts;
  opts.group_sizes = f.m_list;
  opts.alphas = f.alpha0_list;
  opts.on_separation = f.on_separation == "ridge" ? SeparationPolicy::Ridge : SeparationPolicy::Redraw;
  opts.max_redraw_fraction = f.max_redraw_fraction;
  opts.threads = resolve_threads(common);
  const ExperimentResult r = run_dataset_experiment(data, plan, opts);

  CsvTable errors;
  errors.header = {"estimator", "m", "alpha0", "mean_error", "se"};
  errors.rows.push_back({"ground-truth", kNA, kNA, num(r.ground_truth.mean), num(r.ground_truth.se)});
  CsvTable eff;
  eff.header = {"m", "alpha0", "re_simulated", "are_theoretical"};
  for (const auto& c : r.cells) {
    errors.rows.push_back({"votes", std::to_string(c.m), num(c.alpha0), num(c.error.mean), num(c.error.se)});
    eff.rows.push_back({std::to_string(c.m), num(c.alpha0), num(c.simulated_re), num(c.theoretical_are)});
  }
  write_csv(manifest.output("experiment_errors.csv"), errors);
  write_csv(manifest.output("experiment_efficiency.csv"), eff);

  Json j;
  j["model_full"] = model_json(r.beta_full, data.column_names);
  j["apparent_error"] = r.apparent_error;
  j["repetitions"] = r.repetitions;
  j["redraws"] = r.redraws;
  j["ridge_refits"] = r.ridge_refits;
  write_json(manifest.output("experiment.json"), j);
  manifest.failures("redraws", r.redraws);
  manifest.failures("ridge_refits", r.ridge_refits);
  manifest.write();
  return kOk;
}

// simulate-data

struct SimulateDataFlags {
  long n = 500;
  long p = 2;
  double delta = 2.0;
  double prior = 0.5;
  long m = 10;
  double alpha0 = 10.0;
  bool multinomial = false;
  std::string file = "simulated.csv";
};

void register_simulate_data(OptionSet& o, SimulateDataFlags& f) {
  o.add("n", f.n, "Rows")->capture_default_str();
  o.add("p", f.p, "Feature dimension")->capture_default_str();
  o.add("delta", f.delta, "Mahalanobis separation")->capture_default_str();
  o.add("prior", f.prior, "Class-one prior")->capture_default_str();
  o.add("m", f.m, "Group size")->capture_default_str();
  o.add("alpha0", f.alpha0, "Overdispersion")->capture_default_str();
  o.flag("multinomial", f.multinomial, "Draw votes from the multinomial limit instead");
  o.add("file", f.file, "Output file name inside --out")->capture_default_str();
}

int run_simulate_data(const SimulateDataFlags& f, const Json& config, const CommonFlags& common) {
  if (f.p < 1 || f.n < 1) throw UsageError("need --n >= 1 and --p >= 1");
  if (!(f.delta > 0.0)) throw UsageError("--delta must be positive");
  if (!(f.prior > 0.0 && f.prior < 1.0)) throw UsageError("--prior must lie in (0, 1)");
  if (f.m < 1) throw UsageError("--m must be >= 1");
  if (!(f.alpha0 > 0.0) || !std::isfinite(f.alpha0)) throw UsageError("--alpha0 must be positive");
  const std::uint64_t seed = resolve_seed(common);
  Manifest manifest("simulate-data", seed, config, common.out);

  Rng rng(seed);
  const GaussianProblem problem = GaussianProblem::canonical(f.delta, f.p, f.prior);
  const LogisticModel truth = beta_from_gaussian(problem);
  LabelledDataset data = sample_dataset(problem, f.n, rng);
  const GroupModel group(f.m, f.alpha0);
  data.group_size = f.m;
  data.votes.emplace();
  const DesignMatrix x = data.design();
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const auto tau = posterior_probs(x.row(j), truth);
    data.votes->push_back(f.multinomial ? sample_votes_multinomial(group, tau, rng)[0]
                                        : sample_votes_dm(group, tau, rng)[0]);
  }
  if (f.file.empty() || f.file.find('/') != std::string::npos) {
    throw UsageError("--file must be a plain file name");
  }
  write_csv(manifest.output(f.file), dataset_to_table(data));
  Json j = model_json(truth, data.column_names);
  write_json(manifest.output("simulate_data_truth.json"), j);
  manifest.write();
  return kOk;
}

// dispatch

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "noisylab: " << kind << ": " << e.what() << "\n";
  return code;
}

int run(const std::vector<std::string>& args, int depth);

int dispatch(const std::vector<std::string>& args, int depth) {
  CLI::App app{"Noisy-label efficiency toolkit", "noisylab"};
  app.set_version_flag("--version", NOISYLAB_VERSION);
  app.require_subcommand(1);

  CommonFlags common;

  auto* are_app = app.add_subcommand("simulate-are", "Monte-Carlo relative efficiency grid");
  OptionSet are_opts(are_app);
  AreFlags are;
  register_simulate_are(are_opts, are);
  add_common(are_app, common);

  auto* fit_app = app.add_subcommand("fit", "Fit logistic regression to labels or votes");
  OptionSet fit_opts(fit_app);
  FitFlags fitf;
  register_fit(fit_opts, fitf);
  add_common(fit_app, common);

  auto* alpha_app = app.add_subcommand("estimate-alpha", "Maximum-likelihood alpha0 with bootstrap");
  OptionSet alpha_opts(alpha_app);
  AlphaFlags alpha;
  register_estimate_alpha(alpha_opts, alpha);
  add_common(alpha_app, common);

  auto* diag_app = app.add_subcommand("diagnose", "Vote-group and prediction-band diagnostics");
  OptionSet diag_opts(diag_app);
  DiagnoseFlags diag;
  register_diagnose(diag_opts, diag);
  add_common(diag_app, common);

  auto* exp_app = app.add_subcommand("experiment", "Train/test protocol with simulated votes");
  OptionSet exp_opts(exp_app);
  ExperimentFlags exp;
  register_experiment(exp_opts, exp);
  add_common(exp_app, common);

  auto* sim_app = app.add_subcommand("simulate-data", "Write a canonical Gaussian dataset with votes");
  OptionSet sim_opts(sim_app);
  SimulateDataFlags sim;
  register_simulate_data(sim_opts, sim);
  add_common(sim_app, common);

  auto* replay_app = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  replay_app->add_option("manifest", manifest_path, "Manifest JSON")->required();
  add_common(replay_app, common);

  std::vector<const char*> argv{"noisylab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*are_app) return run_simulate_are(are, are_opts.config(), common);
  if (*fit_app) return run_fit(fitf, fit_opts.config(), common);
  if (*alpha_app) return run_estimate_alpha(alpha, alpha_opts.config(), common);
  if (*diag_app) return run_diagnose(diag, diag_opts.config(), common);
  if (*exp_app) return run_experiment(exp, exp_opts.config(), common);
  if (*sim_app) return run_simulate_data(sim, sim_opts.config(), common);

  if (depth > 0) throw UsageError("a manifest cannot replay another replay");
  std::vector<std::string> replay = replay_arguments(read_json(manifest_path));
  replay.push_back("--out");
  replay.push_back(common.out);
  if (common.threads > 0) {
    replay.push_back("--threads");
    replay.push_back(std::to_string(common.threads));
  }
  if (common.seed) {
    for (std::size_t i = 0; i + 1 < replay.size(); ++i) {
      if (replay[i] == "--seed") replay[i + 1] = std::to_string(*common.seed);
    }
  }
  return run(replay, depth + 1);
}

int run(const std::vector<std::string>& args, int depth) {
  try {
    return dispatch(args, depth);
  } catch (const UsageError& e) {
    return report("usage error", e, kUsage);
  } catch (const ContractViolation& e) {
    return report("usage error", e, kUsage);
  } catch (const DataError& e) {
    return report("data error", e, kData);
  } catch (const SeparationError& e) {
    return report("separation error", e, kConvergence);
  } catch (const ConvergenceError& e) {
    return report("convergence error", e, kConvergence);
  } catch (const RankError& e) {
    return report("rank error", e, kConvergence);
  } catch (const DegeneracyError& e) {
    return report("degeneracy error", e, kConvergence);
  } catch (const IdentifiabilityError& e) {
    return report("identifiability error", e, kIdentifiability);
  } catch (const std::filesystem::filesystem_error& e) {
    return report("data error", e, kData);
  } catch (const std::exception& e) {
    return report("internal error", e, kInternal);
  }
}

}  // namespace
}  // namespace noisylab::cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return noisylab::cli::run(args, 0);
}
