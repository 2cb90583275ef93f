#include "rrscore/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrscore/asymptotics.hpp"
#include "rrscore/decoupling.hpp"
#include "rrscore/errors.hpp"
#include "rrscore/exact.hpp"
#include "rrscore/io.hpp"
#include "rrscore/model_json.hpp"
#include "rrscore/montecarlo.hpp"
#include "rrscore/unique_max.hpp"

namespace rrscore::cli {

namespace {

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<long> parse_longs(const std::string& csv, const std::string& what) {
  std::vector<long> out;
  for (const std::string& tok : split_list(csv)) {
    try {
      size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError(what + ": bad integer \"" + tok + "\"");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv, const std::string& what) {
  std::vector<int> out;
  for (long v : parse_longs(csv, what)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<double> parse_doubles(const std::string& csv, const std::string& what) {
  std::vector<double> out;
  for (const std::string& tok : split_list(csv)) {
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError(what + ": bad number \"" + tok + "\"");
    }
  }
  return out;
}

// --- model selection --------------------------------------------------------

struct ModelArgs {
  std::string model_path;
  std::string preset_name;
  int n = 0;
  int m = -1;
  std::string p, q, dist;
  int mw = -1, mb = -1;

  bool has_preset() const { return !preset_name.empty(); }

  Json preset_json() const {
    Json spec{{"name", preset_name}};
    if (m >= 0) spec["m"] = m;
    if (!p.empty()) spec["p"] = p;
    if (!q.empty()) spec["q"] = q;
    if (mw >= 0) spec["m_w"] = mw;
    if (mb >= 0) spec["m_b"] = mb;
    if (!dist.empty()) {
      Json arr = Json::array();
      for (const std::string& tok : split_list(dist)) arr.push_back(tok);
      spec["dist_probs"] = std::move(arr);
    }
    return spec;
  }

  PresetSpec preset_spec() const {
    if (!has_preset()) throw ValidationError("this action needs --preset");
    if (!model_path.empty()) throw ValidationError("give either --model or --preset");
    return preset_from_json(preset_json());
  }

  TournamentModel resolve() const {
    if (!model_path.empty()) {
      if (has_preset()) throw ValidationError("give either --model or --preset");
      return load_model_file(model_path);
    }
    if (!has_preset()) throw ValidationError("give --model FILE or --preset NAME");
    if (n < 2) throw ValidationError("--n is required with --preset");
    return preset_spec().instantiate(n);
  }
};

void add_model_flags(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--model", args.model_path, "model JSON file");
  cmd->add_option("--preset", args.preset_name,
                  "uniform | binomial | binary | chess | circular | classes | "
                  "triangular | geometric");
  cmd->add_option("--n", args.n, "player count (with --preset)");
  cmd->add_option("--m", args.m, "points per pairing, for presets with free m");
  cmd->add_option("--p", args.p, "probability parameter, e.g. 1/2");
  cmd->add_option("--q", args.q, "three-class reverse probability");
  cmd->add_option("--mw", args.mw, "three-class within-class points");
  cmd->add_option("--mb", args.mb, "three-class between-class points");
  cmd->add_option("--dist", args.dist, "circular p_1..p_k, comma separated");
}

// --- output -----------------------------------------------------------------

struct OutputArgs {
  std::string path;
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, OutputArgs& out) {
  cmd->add_option("--out", out.path, "write the table to this file");
  cmd->add_option("--format", out.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

void emit(const OutputArgs& out, const std::string& payload) {
  if (out.path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + out.path);
  f << payload;
}

// Summaries go to stderr when the table itself is on stdout.
std::ostream& summary_stream(const OutputArgs& out) {
  return out.path.empty() ? std::cerr : std::cout;
}

std::string fd(double x) { return format_double(x); }

// --- subcommands ------------------------------------------------------------

struct CommonEnum {
  long long budget = 100000000;
  int threads = 0;
  bool rational = false;

  EnumerationOptions options() const {
    return {budget, threads, rational ? NumericMode::kRational : NumericMode::kDouble};
  }
};

void add_enum_flags(CLI::App* cmd, CommonEnum& e) {
  cmd->add_option("--budget", e.budget, "weighted-outcome enumeration budget");
  cmd->add_option("--threads", e.threads, "worker threads (0 = all)");
  cmd->add_flag("--rational", e.rational, "exact rational arithmetic");
}

struct NlodArgs {
  ModelArgs model;
  CommonEnum en;
  OutputArgs out;
  std::string grid = "full";
  std::string at;
  long long count = 1000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool strict = false;
};

int cmd_nlod_scan(const NlodArgs& a) {
  TournamentModel model = a.model.resolve();
  EnumerationOptions opts = a.en.options();
  int n = model.player_count();

  if (!a.at.empty()) {
    JointCdfReport rep =
        joint_cdf_enumerate(model, parse_longs(a.at, "--at"), a.strict, opts);
    Json rec;
    rec["k"] = rep.k;
    rec["strict"] = rep.strict;
    rec["joint"] = rep.joint;
    rec["product"] = rep.product;
    rec["margin"] = rep.product - rep.joint;
    if (rep.joint_exact) {
      rec["joint_rational"] = format_rational(*rep.joint_exact);
      rec["product_rational"] = format_rational(*rep.product_exact);
    }
    emit(a.out, rec.dump() + "\n");
    summary_stream(a.out) << "joint = " << prob_echo(rep.joint_exact, rep.joint)
                          << "\nproduct = "
                          << prob_echo(rep.product_exact, rep.product) << "\n";
    return rep.inequality_holds ? 0 : 3;
  }

  std::ostringstream table;
  bool jsonl = a.out.format == "jsonl";
  if (!jsonl) {
    std::vector<std::string> head;
    for (int i = 1; i <= n; ++i) head.push_back("k" + std::to_string(i));
    head.insert(head.end(), {"joint", "product", "margin"});
    write_csv_row(table, head);
  }
  ScanSink sink = [&](const std::vector<long>& k, double joint, double product) {
    if (jsonl) {
      Json rec;
      rec["k"] = k;
      rec["joint"] = joint;
      rec["product"] = product;
      rec["margin"] = product - joint;
      table << rec.dump() << "\n";
    } else {
      std::vector<std::string> row;
      for (long v : k) row.push_back(std::to_string(v));
      row.push_back(fd(joint));
      row.push_back(fd(product));
      row.push_back(fd(product - joint));
      write_csv_row(table, row);
    }
  };

  NlodScanResult res;
  if (a.grid == "full") {
    res = nlod_scan_full_grid(model, a.strict, opts, sink);
  } else if (a.grid == "random") {
    if (!a.seed_set) throw ValidationError("--grid random needs --seed");
    res = nlod_scan_random(model, a.count, a.seed, a.strict, opts, sink);
  } else {
    throw ValidationError("--grid must be full or random");
  }
  emit(a.out, table.str());

  std::string worst;
  for (long v : res.worst_k) worst += (worst.empty() ? "" : ",") + std::to_string(v);
  summary_stream(a.out) << "checked=" << res.checked << " violations=" << res.violations
                        << " worst_margin=" << fd(res.worst_margin) << " at k=("
                        << worst << ")\n";
  return res.violations > 0 ? 3 : 0;
}

struct ChainArgs {
  ModelArgs model;
  CommonEnum en;
  OutputArgs out;
  std::string k;
};

int cmd_decouple_chain(const ChainArgs& a) {
  TournamentModel model = a.model.resolve();
  JointCdfReport rep =
      decoupling_chain(model, parse_longs(a.k, "--k"), a.en.options());

  bool exact = !rep.chain_exact.empty();
  std::ostringstream table;
  if (a.out.format == "jsonl") {
    for (size_t t = 0; t < rep.chain.size(); ++t) {
      Json rec;
      rec["t"] = t;
      rec["F"] = rep.chain[t];
      if (exact) rec["F_rational"] = format_rational(rep.chain_exact[t]);
      table << rec.dump() << "\n";
    }
  } else {
    write_csv_row(table, exact ? std::vector<std::string>{"t", "F", "F_rational"}
                               : std::vector<std::string>{"t", "F"});
    for (size_t t = 0; t < rep.chain.size(); ++t) {
      std::vector<std::string> row{std::to_string(t), fd(rep.chain[t])};
      if (exact) row.push_back(format_rational(rep.chain_exact[t]));
      write_csv_row(table, row);
    }
  }
  emit(a.out, table.str());

  bool monotone = true;
  for (size_t t = 0; t + 1 < rep.chain.size(); ++t) {
    if (exact ? rep.chain_exact[t + 1] < rep.chain_exact[t]
              : rep.chain[t + 1] < rep.chain[t] - kNlodTolerance) {
      monotone = false;
    }
  }
  bool terminal = exact ? rep.chain_exact.back() == *rep.product_exact
                        : std::abs(rep.chain.back() - rep.product) <= kNlodTolerance;
  summary_stream(a.out) << "joint = " << prob_echo(rep.joint_exact, rep.joint)
                        << "\nproduct = " << prob_echo(rep.product_exact, rep.product)
                        << "\nmonotone = " << (monotone ? "yes" : "NO")
                        << ", terminal matches product = " << (terminal ? "yes" : "NO")
                        << "\n";
  return monotone && terminal ? 0 : 3;
}

struct WtableArgs {
  std::string pmf;
  int k1 = -1, k2 = -1;
  bool rational = false;
  OutputArgs out;
};

int cmd_wtable(const WtableArgs& a) {
  std::vector<Rat> probs;
  for (const std::string& tok : split_list(a.pmf)) {
    std::optional<Rat> r = parse_rational(tok);
    if (!r) throw ValidationError("--pmf: bad probability \"" + tok + "\"");
    probs.push_back(std::move(*r));
  }
  OutcomePmf pmf = OutcomePmf::from_rationals(std::move(probs));
  if (a.k1 < 0 || a.k2 < 0) throw ValidationError("--k1 and --k2 must be >= 0");

  std::ostringstream table;
  double min_w = 0, worst_diff = 0;
  bool jsonl = a.out.format == "jsonl";
  if (!jsonl) write_csv_row(table, {"g", "h", "w", "w_closed_form"});

  if (a.rational) {
    DecouplingTable<Rat> wt = w_table_exact(pmf, a.k1, a.k2);
    for (int g = 0; g <= a.k1; ++g) {
      for (int h = 0; h <= a.k2; ++h) {
        Rat w = wt.w[g][h];
        Rat closed = w_closed_form_exact(pmf, g, h);
        min_w = std::min(min_w, to_double(w));
        if (w != closed) worst_diff = std::max(worst_diff, std::abs(to_double(w - closed)));
        if (jsonl) {
          Json rec{{"g", g},
                   {"h", h},
                   {"w", format_rational(w)},
                   {"w_closed_form", format_rational(closed)}};
          table << rec.dump() << "\n";
        } else {
          write_csv_row(table, {std::to_string(g), std::to_string(h),
                                format_rational(w), format_rational(closed)});
        }
      }
    }
  } else {
    DecouplingTable<double> wt = w_table(pmf, a.k1, a.k2);
    for (int g = 0; g <= a.k1; ++g) {
      for (int h = 0; h <= a.k2; ++h) {
        double w = wt.w[g][h];
        double closed = w_closed_form(pmf, g, h);
        min_w = std::min(min_w, w);
        worst_diff = std::max(worst_diff, std::abs(w - closed));
        if (jsonl) {
          Json rec{{"g", g}, {"h", h}, {"w", w}, {"w_closed_form", closed}};
          table << rec.dump() << "\n";
        } else {
          write_csv_row(table,
                        {std::to_string(g), std::to_string(h), fd(w), fd(closed)});
        }
      }
    }
  }
  emit(a.out, table.str());
  summary_stream(a.out) << "min_w=" << fd(min_w) << " max|w-closed|=" << fd(worst_diff)
                        << "\n";
  return worst_diff <= 1e-12 && min_w >= -1e-15 ? 0 : 3;
}

struct Assertion1Args {
  ModelArgs model;
  CommonEnum en;
  long k1 = -1, k2 = -1;
};

int cmd_assertion1(const Assertion1Args& a) {
  TournamentModel model = a.model.resolve();
  Assertion1Result res = assertion1_check(model, a.k1, a.k2, a.en.options());
  std::cout << "lhs = " << prob_echo(res.lhs_exact, res.lhs) << "\n"
            << "rhs = " << prob_echo(res.rhs_exact, res.rhs) << "\n"
            << "diff = " << fd(res.lhs - res.rhs) << "\n";
  bool match = res.lhs_exact ? *res.lhs_exact == *res.rhs_exact
                             : std::abs(res.lhs - res.rhs) <= 1e-12;
  return match ? 0 : 3;
}

struct UniqueMaxArgs {
  int n = 0;
  bool mc = false;
  long long trials = 1000000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

int cmd_unique_max(const UniqueMaxArgs& a) {
  if (a.mc) {
    if (!a.seed_set) throw ValidationError("--mc needs --seed");
    UniqueMaxMcReport rep = unique_max_mc(a.n, a.trials, a.seed, a.threads);
    std::cout << "estimate " << fd(rep.estimate) << " se " << fd(rep.std_error)
              << " (hits " << rep.hits << " of " << rep.trials << ")\n";
    return 0;
  }
  UniqueMaxReport rep = unique_max(a.n, a.threads);
  std::cout << rep.favorable.str() << " / " << rep.total.str() << " = "
            << fd(rep.r_value) << "\n";
  return 0;
}

struct SimulateArgs {
  ModelArgs model;
  OutputArgs out{.path = "", .format = "jsonl"};
  std::string grid;
  long long trials = 0;
  std::uint64_t seed = 0;
  double epsilon = 1.0;
  int threads = 0;
};

Json simulation_record(const SimulationReport& rep) {
  Json rec;
  rec["n"] = rep.n;
  rec["trials"] = rep.trials;
  rec["seed"] = rep.seed;
  rec["epsilon"] = rep.epsilon;
  rec["uniform_moments"] = rep.uniform_moments;
  rec["target"] = std::sqrt(2.0 * std::log(static_cast<double>(rep.n - 1)));
  rec["mean_dev"] = rep.mean_dev;
  rec["abs_dev_mean"] = rep.abs_dev_mean;
  if (rep.coverage) {
    rec["coverage"] = *rep.coverage;
  } else {
    rec["coverage"] = nullptr;
  }
  rec["unique_max_fraction"] = rep.unique_max_fraction;
  for (const auto& [prob, value] : rep.quantiles) {
    rec["q" + std::to_string(static_cast<int>(prob * 100 + 0.5))] = value;
  }
  return rec;
}

int cmd_simulate(const SimulateArgs& a) {
  if (a.trials < 1) throw ValidationError("--trials must be >= 1");
  std::vector<SimulationReport> reports;
  if (!a.model.model_path.empty()) {
    if (!a.grid.empty()) throw ValidationError("--grid needs --preset");
    reports.push_back(
        run_simulation(a.model.resolve(), a.trials, a.epsilon, a.seed, a.threads));
  } else {
    std::vector<int> grid = a.grid.empty() ? std::vector<int>{a.model.n}
                                           : parse_ints(a.grid, "--grid");
    if (grid.empty() || (a.grid.empty() && a.model.n < 2)) {
      throw ValidationError("give --n or --grid with --preset");
    }
    reports =
        run_convergence(a.model.preset_spec(), grid, a.trials, a.epsilon, a.seed, a.threads);
  }

  std::ostringstream table;
  if (a.out.format == "jsonl") {
    for (const SimulationReport& rep : reports) {
      table << simulation_record(rep).dump() << "\n";
    }
  } else {
    write_csv_row(table, {"n", "trials", "seed", "epsilon", "uniform_moments", "target",
                          "mean_dev", "abs_dev_mean", "coverage", "unique_max_fraction",
                          "q5", "q25", "q50", "q75", "q95"});
    for (const SimulationReport& rep : reports) {
      std::vector<std::string> row{
          std::to_string(rep.n),
          std::to_string(rep.trials),
          std::to_string(rep.seed),
          fd(rep.epsilon),
          rep.uniform_moments ? "1" : "0",
          fd(std::sqrt(2.0 * std::log(static_cast<double>(rep.n - 1)))),
          fd(rep.mean_dev),
          fd(rep.abs_dev_mean),
          rep.coverage ? fd(*rep.coverage) : "",
          fd(rep.unique_max_fraction)};
      for (const auto& q : rep.quantiles) row.push_back(fd(q.second));
      write_csv_row(table, row);
    }
  }
  emit(a.out, table.str());
  return 0;
}

struct AsymptoteArgs {
  ModelArgs model;
  OutputArgs out;
  bool do_thresholds = false;
  bool do_bounds = false;
  bool do_center = false;
  bool do_mills = false;
  bool do_cramer = false;
  int n = 0;
  double epsilon = 1.0;
  double c_prime = 0.3;
  double c_double_prime = 0.25;
  std::string grid = "10,100,1000,10000,100000";
  std::string x_grid;
};

int cmd_asymptote(const AsymptoteArgs& a) {
  int actions = int(a.do_thresholds) + int(a.do_bounds) + int(a.do_center) +
                int(a.do_mills) + int(a.do_cramer);
  if (actions != 1) {
    throw ValidationError(
        "pick exactly one of --thresholds, --bounds, --center, --mills, --cramer");
  }
  std::ostringstream table;
  bool jsonl = a.out.format == "jsonl";

  if (a.do_thresholds) {
    ThresholdPair t = thresholds(a.n, a.epsilon);
    if (jsonl) {
      Json rec{{"n", t.n}, {"epsilon", t.epsilon}, {"x_minus", t.x_minus},
               {"x_plus", t.x_plus}};
      table << rec.dump() << "\n";
    } else {
      write_csv_row(table, {"n", "epsilon", "x_minus", "x_plus"});
      write_csv_row(table, {std::to_string(t.n), fd(t.epsilon), fd(t.x_minus),
                            fd(t.x_plus)});
    }
    emit(a.out, table.str());
    summary_stream(a.out) << "x_minus = " << fd(t.x_minus) << "\nx_plus = "
                          << fd(t.x_plus) << "\n";
    return 0;
  }

  if (a.do_bounds) {
    BoundConstants constants(a.c_prime, a.c_double_prime);
    if (!jsonl) write_csv_row(table, {"n", "x_plus", "x_minus", "lhs_bound", "rhs_bound"});
    for (int n : parse_ints(a.grid, "--grid")) {
      ThresholdPair t = thresholds(n, a.epsilon);
      TailBounds b = tail_bounds(n, a.epsilon, constants);
      if (jsonl) {
        Json rec{{"n", n}, {"x_plus", t.x_plus}, {"x_minus", t.x_minus},
                 {"lhs_bound", b.lhs_bound}, {"rhs_bound", b.rhs_bound}};
        table << rec.dump() << "\n";
      } else {
        write_csv_row(table, {std::to_string(n), fd(t.x_plus), fd(t.x_minus),
                              fd(b.lhs_bound), fd(b.rhs_bound)});
      }
    }
    emit(a.out, table.str());
    return 0;
  }

  if (a.do_center) {
    PresetSpec preset = a.model.preset_spec();
    CenteringPrediction c = predicted_center(preset, a.n);
    TournamentModel model = preset.instantiate(a.n);
    Moments mom = model_moments(model);
    double unit = model.score_unit_value();
    double check = mom.mean[0] * unit +
                   std::sqrt(2.0 * std::log(static_cast<double>(a.n - 1)) *
                             mom.variance[0] * unit * unit);
    if (jsonl) {
      Json rec{{"example", example_name(c.example)}, {"n", c.n},
               {"mean_term", c.mean_term},          {"fluct_term", c.fluct_term},
               {"center", c.center},                {"model_check", check},
               {"diff", c.center - check}};
      table << rec.dump() << "\n";
    } else {
      write_csv_row(table, {"example", "n", "mean_term", "fluct_term", "center",
                            "model_check", "diff"});
      write_csv_row(table, {example_name(c.example), std::to_string(c.n),
                            fd(c.mean_term), fd(c.fluct_term), fd(c.center), fd(check),
                            fd(c.center - check)});
    }
    emit(a.out, table.str());
    summary_stream(a.out) << "center = " << fd(c.center) << " (model check "
                          << fd(check) << ")\n";
    return 0;
  }

  if (a.do_mills) {
    std::vector<double> xs;
    if (a.x_grid.empty()) {
      for (double x = 2.0; x <= 8.0 + 1e-9; x += 0.5) xs.push_back(x);
    } else {
      xs = parse_doubles(a.x_grid, "--x-grid");
    }
    if (!jsonl) write_csv_row(table, {"x", "tail", "approx", "rel_err"});
    for (double x : xs) {
      MillsRatioReport r = mills_ratio_check(x);
      if (jsonl) {
        Json rec{{"x", r.x}, {"tail", r.tail}, {"approx", r.approx},
                 {"rel_err", r.rel_err}};
        table << rec.dump() << "\n";
      } else {
        write_csv_row(table, {fd(r.x), fd(r.tail), fd(r.approx), fd(r.rel_err)});
      }
    }
    emit(a.out, table.str());
    return 0;
  }

  // --cramer
  TournamentModel model = a.model.resolve();
  std::vector<double> xs;
  if (a.x_grid.empty()) {
    ThresholdPair t = thresholds(model.player_count(), a.epsilon);
    xs = {t.x_plus, t.x_minus};
  } else {
    xs = parse_doubles(a.x_grid, "--x-grid");
  }
  if (!jsonl) {
    write_csv_row(table, {"x", "exact_tail", "normal_tail", "ratio", "cube_ratio"});
  }
  for (const CramerRow& row : cramer_tail_table(model, xs)) {
    if (jsonl) {
      Json rec{{"x", row.x},
               {"exact_tail", row.exact_tail},
               {"normal_tail", row.normal_tail},
               {"ratio", row.ratio},
               {"cube_ratio", row.cube_ratio}};
      table << rec.dump() << "\n";
    } else {
      write_csv_row(table, {fd(row.x), fd(row.exact_tail), fd(row.normal_tail),
                            fd(row.ratio), fd(row.cube_ratio)});
    }
  }
  emit(a.out, table.str());
  return 0;
}

struct MomentsArgs {
  ModelArgs model;
  OutputArgs out;
  bool rational = false;
};

int cmd_moments(const MomentsArgs& a) {
  TournamentModel model = a.model.resolve();
  Moments mom = model_moments(model);
  double unit = model.score_unit_value();
  bool exact = a.rational;
  if (exact && !model.exact()) {
    throw ValidationError("rational mode requires exact probabilities");
  }
  MomentsExact mx;
  if (exact) mx = model_moments_exact(model);

  std::ostringstream table;
  bool jsonl = a.out.format == "jsonl";
  if (!jsonl) {
    std::vector<std::string> head{"player", "mean", "variance", "mean_display",
                                  "variance_display"};
    if (exact) {
      head.push_back("mean_rational");
      head.push_back("variance_rational");
    }
    write_csv_row(table, head);
  }
  for (int i = 0; i < model.player_count(); ++i) {
    if (jsonl) {
      Json rec{{"player", i + 1},
               {"mean", mom.mean[i]},
               {"variance", mom.variance[i]},
               {"mean_display", mom.mean[i] * unit},
               {"variance_display", mom.variance[i] * unit * unit}};
      if (exact) {
        rec["mean_rational"] = format_rational(mx.mean[i]);
        rec["variance_rational"] = format_rational(mx.variance[i]);
      }
      table << rec.dump() << "\n";
    } else {
      std::vector<std::string> row{std::to_string(i + 1), fd(mom.mean[i]),
                                   fd(mom.variance[i]), fd(mom.mean[i] * unit),
                                   fd(mom.variance[i] * unit * unit)};
      if (exact) {
        row.push_back(format_rational(mx.mean[i]));
        row.push_back(format_rational(mx.variance[i]));
      }
      write_csv_row(table, row);
    }
  }
  emit(a.out, table.str());
  summary_stream(a.out) << "uniform_across_players = "
                        << (mom.uniform_across_players ? "yes" : "no")
                        << ", score_unit = " << format_rational(model.score_unit())
                        << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "rrscore: exact and empirical checks of score dependence and extremes in "
      "generalized round-robin tournaments"};
  app.require_subcommand(1);

  NlodArgs nlod;
  auto* nlod_cmd = app.add_subcommand(
      "nlod-scan", "joint lower-tail probability vs the product of marginals");
  add_model_flags(nlod_cmd, nlod.model);
  add_enum_flags(nlod_cmd, nlod.en);
  add_output_flags(nlod_cmd, nlod.out);
  nlod_cmd->add_option("--grid", nlod.grid, "full or random");
  nlod_cmd->add_option("--count", nlod.count, "random threshold vectors to draw");
  nlod_cmd->add_option("--seed", nlod.seed, "random-grid seed")
      ->each([&](const std::string&) { nlod.seed_set = true; });
  nlod_cmd->add_option("--at", nlod.at,
                       "evaluate one threshold vector, e.g. --at 1,1,1");
  nlod_cmd->add_flag("--strict", nlod.strict, "strict thresholds (<)");

  ChainArgs chain;
  auto* chain_cmd =
      app.add_subcommand("decouple-chain", "F_0..F_{n(n-1)/2} decoupling chain");
  add_model_flags(chain_cmd, chain.model);
  add_enum_flags(chain_cmd, chain.en);
  add_output_flags(chain_cmd, chain.out);
  chain_cmd->add_option("--k", chain.k, "thresholds k1,..,kn")->required();

  WtableArgs wt;
  auto* wt_cmd = app.add_subcommand("wtable", "W(g,h) table with closed-form check");
  wt_cmd->add_option("--pmf", wt.pmf, "p_0,..,p_m as rationals or decimals")->required();
  wt_cmd->add_option("--k1", wt.k1, "row limit g <= k1")->required();
  wt_cmd->add_option("--k2", wt.k2, "column limit h <= k2")->required();
  wt_cmd->add_flag("--rational", wt.rational, "exact rational arithmetic");
  add_output_flags(wt_cmd, wt.out);

  Assertion1Args as1;
  auto* as1_cmd =
      app.add_subcommand("assertion1", "F_1 - F vs sum of R(g,h) W(g,h)");
  add_model_flags(as1_cmd, as1.model);
  add_enum_flags(as1_cmd, as1.en);
  as1_cmd->add_option("--k1", as1.k1, "threshold for player 1")->required();
  as1_cmd->add_option("--k2", as1.k2, "threshold for player 2")->required();

  UniqueMaxArgs um;
  auto* um_cmd = app.add_subcommand(
      "unique-max", "probability of a unique maximal score, fair binary model");
  um_cmd->add_option("--n", um.n, "player count")->required();
  um_cmd->add_flag("--mc", um.mc, "Monte Carlo instead of exact enumeration");
  um_cmd->add_option("--trials", um.trials, "Monte Carlo trials");
  um_cmd->add_option("--seed", um.seed, "Monte Carlo seed")
      ->each([&](const std::string&) { um.seed_set = true; });
  um_cmd->add_option("--threads", um.threads, "worker threads (0 = all)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "sampled maxima vs the sqrt(2 log(n-1)) law");
  add_model_flags(sim_cmd, sim.model);
  add_output_flags(sim_cmd, sim.out);
  sim_cmd->add_option("--grid", sim.grid, "n values, e.g. 50,200,800");
  sim_cmd->add_option("--trials", sim.trials, "trials per n")->required();
  sim_cmd->add_option("--seed", sim.seed, "master seed")->required();
  sim_cmd->add_option("--epsilon", sim.epsilon, "coverage band epsilon");
  sim_cmd->add_option("--threads", sim.threads, "worker threads (0 = all)");

  AsymptoteArgs asym;
  auto* asym_cmd =
      app.add_subcommand("asymptote", "normal-tail numerics and predictions");
  add_model_flags(asym_cmd, asym.model);
  add_output_flags(asym_cmd, asym.out);
  asym_cmd->add_flag("--thresholds", asym.do_thresholds, "x+- for (n, epsilon)");
  asym_cmd->add_flag("--bounds", asym.do_bounds, "bounding expressions over an n grid");
  asym_cmd->add_flag("--center", asym.do_center, "closed-form centering sequence");
  asym_cmd->add_flag("--mills", asym.do_mills, "Mills ratio accuracy table");
  asym_cmd->add_flag("--cramer", asym.do_cramer, "exact vs normal marginal tails");
  asym_cmd->add_option("--epsilon", asym.epsilon, "band epsilon");
  asym_cmd->add_option("--c-prime", asym.c_prime, "constant above 1/sqrt(4 pi)");
  asym_cmd->add_option("--c-double-prime", asym.c_double_prime,
                       "constant below 1/sqrt(4 pi)");
  asym_cmd->add_option("--grid", asym.grid, "n values for --bounds");
  asym_cmd->add_option("--x-grid", asym.x_grid, "x values for --mills/--cramer");

  MomentsArgs mom;
  auto* mom_cmd = app.add_subcommand("moments", "per-player score moments");
  add_model_flags(mom_cmd, mom.model);
  add_output_flags(mom_cmd, mom.out);
  mom_cmd->add_flag("--rational", mom.rational, "exact rational moments");

  // asymptote reuses --n from the model flags for --thresholds
  asym_cmd->get_option("--n")->description("player count");

  int code = 0;
  try {
    app.parse(argc, argv);
    if (*nlod_cmd) {
      code = cmd_nlod_scan(nlod);
    } else if (*chain_cmd) {
      code = cmd_decouple_chain(chain);
    } else if (*wt_cmd) {
      code = cmd_wtable(wt);
    } else if (*as1_cmd) {
      code = cmd_assertion1(as1);
    } else if (*um_cmd) {
      code = cmd_unique_max(um);
    } else if (*sim_cmd) {
      code = cmd_simulate(sim);
    } else if (*asym_cmd) {
      asym.n = asym.model.n;
      code = cmd_asymptote(asym);
    } else if (*mom_cmd) {
      code = cmd_moments(mom);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PropertyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace rrscore::cli
