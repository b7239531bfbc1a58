// ngpair: simulations, pair-approximation ODEs, tipping points and overlays,
// all written as CSV with a key=value manifest next to every file.

#include <CLI11.hpp>

#include <ngpair/analysis.hpp>
#include <ngpair/csv.hpp>
#include <ngpair/errors.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef NGPAIR_VERSION
#define NGPAIR_VERSION "0.0.0"
#endif

using namespace ngpair;

namespace {

constexpr int kUsage = 2;
constexpr int kNumeric = 3;

using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key=value lines; '#' starts a comment.
KeyValues read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file " + path);
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError(path + ":" + std::to_string(lineno) +
                           ": expected key=value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

// Records every option of the subcommand with its effective value.
class Recorder {
 public:
  explicit Recorder(const CLI::App* sub) : sub_(sub) {}

  void output(const std::string& path) { outputs_.push_back(path); }

  KeyValues manifest() const {
    KeyValues kv{{"command", sub_->get_name()}, {"version", NGPAIR_VERSION}};
    for (const CLI::Option* opt : sub_->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string key = opt->get_lnames().front();
      if (key == "help") continue;
      const std::string value =
          opt->count() ? join(opt->reduced_results()) : opt->get_default_str();
      if (!value.empty()) kv.emplace_back(key, value);
    }
    kv.emplace_back("outputs", join(outputs_));
    return kv;
  }

 private:
  const CLI::App* sub_;
  std::vector<std::string> outputs_;
};

// Opens a CSV for writing and registers it with the recorder.
std::ofstream open_csv(const std::string& path, Recorder& rec) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot write " + path);
  rec.output(path);
  return os;
}

void write_manifests(const Recorder& rec, const std::vector<std::string>& paths) {
  const KeyValues kv = rec.manifest();
  for (const auto& p : paths) {
    std::ofstream os(p + ".manifest", std::ios::binary);
    if (!os) throw ParameterError("cannot write " + p + ".manifest");
    csv::write_manifest(os, kv);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("not a number: " + item);
    }
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_list(text)) {
    if (!(v >= 2.0) || v != std::floor(v))
      throw ParameterError("system sizes must be integers >= 2");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SimArgs {
  std::size_t n = 500;
  double k = 5.0;
  double p = 0.0;
  double eta = 0.95;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  double t_cap = 1e4;
  double sample_interval = 1.0;
  std::string out = "sim";
};

void cmd_sim(const SimArgs& a, Recorder& rec) {
  SimConfig cfg;
  cfg.n = a.n;
  cfg.k_avg = a.k;
  cfg.committed_fraction = a.p;
  cfg.eta = a.eta;
  cfg.runs = a.runs;
  cfg.seed = a.seed;
  cfg.max_time_per_node = a.t_cap;
  cfg.sample_interval = a.sample_interval;
  cfg.validate();
  const EnsembleStats stats = ensemble(cfg);

  std::vector<std::string> paths{a.out + "_runs.csv"};
  if (cfg.sample_interval > 0.0) paths.push_back(a.out + "_mean.csv");
  {
    auto os = open_csv(paths[0], rec);
    csv::write_runs(os, stats);
  }
  if (paths.size() > 1) {
    auto os = open_csv(paths[1], rec);
    csv::write_mean_trajectory(os, stats);
  }
  write_manifests(rec, paths);
  std::cerr << "runs " << cfg.runs << ", reached " << stats.fraction_reached
            << ", mean T " << csv::number(stats.mean_t) << ", rel std "
            << csv::number(stats.rel_std_t) << '\n';
}

// ---------------------------------------------------------------------------

struct OdeArgs {
  double k = 5.0;
  double p = 0.0;
  double dt = 0.01;
  double t_max = 1e6;
  std::optional<double> eta;
  std::string init = "product";
  double pa0 = 0.5;
  bool meanfield = false;
  double sample_interval = 1.0;
  std::string out = "ode.csv";
};

std::vector<double> read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open init file " + path);
  std::string text, line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::replace(line.begin(), line.end(), ' ', ',');
    std::replace(line.begin(), line.end(), '\t', ',');
    text += line + ',';
  }
  return parse_list(text);
}

template <int Dim>
void finish_ode(const OdeSystem<Dim>& sys, const Vector<double, Dim>& x0,
                const OdeConfig& cfg, std::span<const std::string_view> names,
                const OdeArgs& a, Recorder& rec) {
  const auto traj = integrate(sys, x0, cfg);
  {
    auto os = open_csv(a.out, rec);
    csv::write_trajectory(os, traj, names);
  }
  write_manifests(rec, {a.out});
  static constexpr const char* why[] = {"eta-crossed", "steady", "horizon"};
  std::cerr << "stopped (" << why[static_cast<int>(traj.reason)] << ") at t="
            << traj.t_end;
  if (traj.t_eta) std::cerr << ", T_eta=" << *traj.t_eta;
  std::cerr << '\n';
}

void cmd_ode(const OdeArgs& a, Recorder& rec) {
  if (!(a.p >= 0.0 && a.p < 1.0))
    throw ParameterError("--p must lie in [0, 1)");
  OdeConfig cfg;
  cfg.dt = a.dt;
  cfg.t_max = a.t_max;
  cfg.eta = a.eta;
  cfg.target = a.p > 0.0 ? ConsensusTarget::a_only : ConsensusTarget::either;
  cfg.sample_interval = a.sample_interval;
  cfg.validate();

  std::vector<double> custom;
  if (a.init != "product") custom = read_state_file(a.init);

  if (a.meanfield) {
    NodeFractions p0 = a.p > 0.0 ? NodeFractions(a.p, 1.0 - a.p, 0.0)
                                 : NodeFractions(a.pa0, 1.0 - a.pa0, 0.0);
    if (!custom.empty()) {
      if (custom.size() != 3)
        throw ParameterError("mean-field init needs 3 node fractions");
      p0 = NodeFractions(custom[0], custom[1], custom[2]);
      if (p0[kPA] < a.p)
        throw ParameterError("p_A in the init file is below the committed fraction");
    }
    finish_ode<3>(meanfield_system(a.p), p0, cfg, {}, a, rec);
    return;
  }

  if (a.p == 0.0) {
    LinkState6 l0 = embed_product6(NodeFractions(a.pa0, 1.0 - a.pa0, 0.0));
    if (custom.size() == 3) {
      l0 = embed_product6(NodeFractions(custom[0], custom[1], custom[2]));
    } else if (custom.size() == 6) {
      for (int i = 0; i < 6; ++i) l0[i] = custom[i];
    } else if (!custom.empty()) {
      throw ParameterError(
          "with --p 0 the init file holds 3 node fractions or 6 link fractions");
    }
    finish_ode<6>(pair_system6(a.k), l0, cfg, sym::kLinkNames, a, rec);
    return;
  }

  CommittedLinkState start = all_b_start(a.p);
  if (custom.size() == 3) {
    start = embed_committed(NodeFractions(custom[0], custom[1], custom[2]), a.p);
  } else if (custom.size() == 10) {
    for (int i = 0; i < 9; ++i) start.l[i] = custom[i];
    start.cc = custom[9];
    if (std::abs(committed_share9(start.l, start.cc) - a.p) > 1e-9)
      throw ParameterError("committed share of the init file differs from --p");
  } else if (custom.size() == 6) {
    throw ParameterError("--p > 0 needs the committed system; a 6-entry link state was given");
  } else if (!custom.empty()) {
    throw ParameterError(
        "with --p > 0 the init file holds 3 node fractions or 9 link fractions plus l_CC");
  }
  finish_ode<9>(pair_system9(a.k, start.cc), start.l, cfg, com::kLinkNames, a, rec);
}

// ---------------------------------------------------------------------------

struct TipArgs {
  std::string k_list;
  double ptol = 1e-4;
  double pb_threshold = 0.01;
  double p_max = 0.2;
  bool probes = false;
  std::string out = "tipping.csv";
};

void cmd_tip(const TipArgs& a, Recorder& rec) {
  TippingConfig cfg;
  cfg.p_tol = a.ptol;
  cfg.pb_threshold = a.pb_threshold;
  cfg.p_max = a.p_max;
  cfg.validate();
  const auto ks = parse_list(a.k_list);
  if (ks.empty()) throw ParameterError("empty --k-list");
  const auto rows = pc_vs_k(ks, cfg);
  std::vector<std::string> paths{a.out};
  {
    auto os = open_csv(a.out, rec);
    csv::write_tipping(os, rows);
  }
  if (a.probes) {
    std::vector<SweepRow> all;
    for (const auto& r : rows)
      if (r.result) all.insert(all.end(), r.result->probes.begin(), r.result->probes.end());
    paths.push_back(a.out + ".probes.csv");
    auto os = open_csv(paths.back(), rec);
    csv::write_sweep(os, all);
  }
  write_manifests(rec, paths);
  for (const auto& r : rows)
    if (!r.result) std::cerr << "k=" << r.k_avg << ": " << r.error << '\n';
}

struct SweepArgs {
  double k = 10.0;
  std::string p_grid = "0.02,0.04,0.06,0.08,0.1,0.12,0.14";
  double dt = 0.01;
  std::string out = "sweep.csv";
};

void cmd_sweep(const SweepArgs& a, Recorder& rec) {
  OdeConfig ode;
  ode.dt = a.dt;
  ode.validate();
  const auto grid = parse_list(a.p_grid);
  if (grid.empty()) throw ParameterError("empty --p-grid");
  const auto rows = sweep_pB(a.k, grid, ode);
  {
    auto os = open_csv(a.out, rec);
    csv::write_sweep(os, rows);
  }
  write_manifests(rec, {a.out});
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  int fig = 1;
  std::optional<double> k;
  std::optional<std::size_t> n;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::string k_list = "5";
  std::string n_list = "200,500,1000,2000";
  std::string p_offsets = "-0.03,-0.02,-0.01,0.01,0.02,0.03";
  double t_cap = 1e4;
  std::string out = "compare";
};

void cmd_compare(const CompareArgs& a, Recorder& rec) {
  std::vector<std::string> paths;
  if (a.fig == 1) {
    SimConfig base;
    base.n = a.n.value_or(500);
    base.runs = a.runs.value_or(50);
    base.seed = a.seed.value_or(42);
    base.max_time_per_node = a.t_cap;
    base.validate();
    const Overlay ov = trajectory_compare(a.k.value_or(5.0), base);
    paths = {a.out + "_overlay.csv", a.out + "_summary.csv"};
    {
      auto os = open_csv(paths[0], rec);
      csv::write_overlay(os, ov);
    }
    {
      auto os = open_csv(paths[1], rec);
      csv::write_overlay_summary(os, ov);
    }
    std::cerr << "window [0, " << ov.window_end << "]: pair "
              << ov.pair_discrepancy << ", mean field "
              << ov.meanfield_discrepancy << '\n';
  } else if (a.fig == 3) {
    SimConfig base;
    base.runs = a.runs.value_or(100);
    base.seed = a.seed.value_or(0);
    base.max_time_per_node = a.t_cap;
    std::vector<double> ks = a.k ? std::vector<double>{*a.k} : parse_list(a.k_list);
    const auto sizes = parse_sizes(a.n_list);
    if (ks.empty() || sizes.empty()) throw ParameterError("empty k or n list");
    std::vector<SizeRow> rows;
    for (double k : ks) {
      auto part = consensus_time_vs_n(k, sizes, base);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    paths = {a.out + "_sizes.csv"};
    auto os = open_csv(paths[0], rec);
    csv::write_sizes(os, rows);
  } else if (a.fig == 5) {
    const double k = a.k.value_or(10.0);
    const double pc = find_tipping(k).p_c;
    std::vector<double> grid;
    for (double d : parse_list(a.p_offsets)) grid.push_back(pc + d);
    std::vector<std::size_t> sizes = a.n ? std::vector<std::size_t>{*a.n}
                                         : std::vector<std::size_t>{1000};
    SimConfig base;
    base.runs = a.runs.value_or(20);
    base.seed = a.seed.value_or(0);
    base.max_time_per_node = a.t_cap;
    for (std::size_t n : sizes) {
      base.n = n;
      const auto rows = consensus_time_curve(k, grid, base);
      paths.push_back(a.out + "_n" + std::to_string(n) + "_curve.csv");
      auto os = open_csv(paths.back(), rec);
      csv::write_curve(os, rows);
    }
    std::cerr << "p_c(" << k << ") = " << pc << '\n';
  } else {
    throw ParameterError("--fig must be 1, 3 or 5");
  }
  write_manifests(rec, paths);
}

// ---------------------------------------------------------------------------

// Config keys become --key=value arguments placed right after the
// subcommand, so explicit flags (parsed later) win.
std::vector<std::string> expand_config(int argc, char** argv, CLI::App& app,
                                       const std::vector<std::string>& commands) {
  std::vector<std::string> rest;
  std::optional<std::string> config;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config = argv[++i];
    } else if (arg.rfind("--config=", 0) == 0) {
      config = arg.substr(9);
    } else {
      rest.push_back(arg);
    }
  }
  if (!config) return rest;

  const KeyValues kv = read_config(*config);
  auto command = std::find_first_of(rest.begin(), rest.end(), commands.begin(),
                                    commands.end());
  std::string name;
  if (command != rest.end()) {
    name = *command;
    rest.erase(command);
  } else {
    for (const auto& [k, v] : kv)
      if (k == "command") name = v;
    if (name.empty()) throw ParameterError("no subcommand given on the line or in the config");
  }
  const CLI::App* sub = app.get_subcommand(name);
  std::vector<std::string> args{name};
  for (const auto& [k, v] : kv) {
    if (k == "command" || k == "version" || k == "outputs") continue;
    if (!sub->get_option_no_throw("--" + k))
      throw ParameterError("unknown key '" + k + "' for " + name);
    args.push_back("--" + k + "=" + v);
  }
  args.insert(args.end(), rest.begin(), rest.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Naming Game on random networks: agent simulations, pair-approximation ODEs, tipping points"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value file of defaults (a .manifest file works); flags override");
  app.footer(
      "Exit status: 0 success, 2 usage error, 3 numeric failure.\n"
      "NG_THREADS caps the number of worker threads.\n"
      "Every CSV gets a sibling <file>.manifest; rerun it with --config <file>.manifest.");

  SimArgs sa;
  auto* sim = app.add_subcommand("sim", "agent-based ensemble on fresh ER networks");
  sim->add_option("--n", sa.n, "nodes")->check(CLI::Range(2, 100000000));
  sim->add_option("--k", sa.k, "average degree")->check(CLI::PositiveNumber);
  sim->add_option("--p", sa.p, "committed fraction")->check(CLI::Range(0.0, 0.999999));
  sim->add_option("--eta", sa.eta, "consensus threshold in (1/2, 1]");
  sim->add_option("--runs", sa.runs, "independent runs")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sa.seed, "base seed");
  sim->add_option("--t-cap", sa.t_cap, "time cap per node (censoring)")->check(CLI::PositiveNumber);
  sim->add_option("--sample-interval", sa.sample_interval,
                  "trajectory grid spacing; 0 disables the mean trajectory")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--out", sa.out, "output prefix");
  sim->footer(
      "<out>_runs.csv: run,seed,reached,t_eta (t_eta = cap when not reached)\n"
      "<out>_mean.csv: t,p_A,p_B,p_AB,std_p_A,std_p_B,std_p_AB (p_A counts committed nodes)");

  OdeArgs oa;
  auto* ode = app.add_subcommand("ode", "integrate the pair-approximation or mean-field ODE");
  ode->add_option("--k", oa.k, "average degree (>= 1)");
  ode->add_option("--p", oa.p, "committed fraction; > 0 selects the committed system");
  ode->add_option("--dt", oa.dt, "RK4 step")->check(CLI::PositiveNumber);
  ode->add_option("--t-max", oa.t_max, "horizon")->check(CLI::PositiveNumber);
  ode->add_option("--eta", oa.eta, "stop when p_A (or p_B without committed agents) reaches eta");
  ode->add_option("--init", oa.init,
                  "'product' or a file of 3 node fractions, 6 link fractions, or 9 link fractions plus l_CC");
  ode->add_option("--pA0", oa.pa0, "initial p_A of the product start when --p is 0")
      ->check(CLI::Range(0.0, 1.0));
  ode->add_flag("--meanfield", oa.meanfield, "infinite-degree baseline")->default_str("false");
  ode->add_option("--sample-interval", oa.sample_interval, "0 keeps only the endpoints")
      ->check(CLI::NonNegativeNumber);
  ode->add_option("--out", oa.out, "trajectory CSV");
  ode->footer(
      "CSV: t,<link fractions>,p_A,p_B,p_AB\n"
      "  6D links: l_AA,l_AB,l_A_AB,l_BB,l_B_AB,l_AB_AB\n"
      "  9D links: l_AC,l_BC,l_AB_C,l_AA,l_AB,l_A_AB,l_BB,l_B_AB,l_AB_AB\n"
      "  mean field: t,p_A,p_B,p_AB");

  TipArgs ta;
  auto* tip = app.add_subcommand("tip", "tipping committed fraction per average degree");
  tip->add_option("--k-list", ta.k_list, "comma-separated degrees")
      ->required();
  tip->add_option("--ptol", ta.ptol, "bisection tolerance")->check(CLI::PositiveNumber);
  tip->add_option("--pB-threshold", ta.pb_threshold, "p_B* below this counts as tipped")
      ->check(CLI::Range(0.0, 1.0));
  tip->add_option("--p-max", ta.p_max, "upper end of the search interval")
      ->check(CLI::Range(0.0, 1.0));
  tip->add_flag("--probes", ta.probes, "also write every bisection probe")->default_str("false");
  tip->add_option("--out", ta.out, "tipping CSV");
  tip->footer(
      "CSV: k,p_c,p_low,p_high (nan when no change was found)\n"
      "probes: k,p,p_B_star,converged,t_end");

  SweepArgs wa;
  auto* sweep = app.add_subcommand("sweep", "steady p_B over a grid of committed fractions");
  sweep->add_option("--k", wa.k, "average degree");
  sweep->add_option("--p-grid", wa.p_grid, "comma-separated committed fractions");
  sweep->add_option("--dt", wa.dt, "RK4 step")->check(CLI::PositiveNumber);
  sweep->add_option("--out", wa.out, "sweep CSV");
  sweep->footer("CSV: k,p,p_B_star,converged,t_end");

  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "simulation against ODE predictions");
  cmp->add_option("--fig", ca.fig, "1: trajectory overlay, 3: T_0.95 vs n, 5: T_0.95 around p_c")
      ->check(CLI::IsMember({1, 3, 5}));
  cmp->add_option("--k", ca.k, "average degree (defaults 5, 5, 10)");
  cmp->add_option("--n", ca.n, "nodes (fig 1: 500, fig 5: 1000)")->check(CLI::Range(2, 100000000));
  cmp->add_option("--runs", ca.runs, "runs per point (50, 100, 20)")->check(CLI::PositiveNumber);
  cmp->add_option("--seed", ca.seed, "base seed (42, 0, 0)");
  cmp->add_option("--k-list", ca.k_list, "fig 3 degrees when --k is absent");
  cmp->add_option("--n-list", ca.n_list, "fig 3 system sizes");
  cmp->add_option("--p-offsets", ca.p_offsets, "fig 5 committed fractions relative to p_c");
  cmp->add_option("--t-cap", ca.t_cap, "time cap per node")->check(CLI::PositiveNumber);
  cmp->add_option("--out", ca.out, "output prefix");
  cmp->footer(
      "fig 1: <out>_overlay.csv t,mc_p_A,mc_p_B,mc_p_AB,pair_p_A,pair_p_B,pair_p_AB,mf_p_A,mf_p_B,mf_p_AB\n"
      "       <out>_summary.csv window_end,pair_discrepancy,meanfield_discrepancy,\n"
      "                         pair_discrepancy_mirrored,meanfield_discrepancy_mirrored\n"
      "fig 3: <out>_sizes.csv k,n,ln_n,T_mc_mean,T_mc_relstd,fraction_reached,T_pair,T_meanfield\n"
      "fig 5: <out>_n<n>_curve.csv p,T_mc_mean,T_mc_relstd,censored_fraction,T_ode");

  try {
    std::vector<std::string> args =
        expand_config(argc, argv, app, {"sim", "ode", "tip", "sweep", "compare"});
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*sim) {
      Recorder rec(sim);
      cmd_sim(sa, rec);
    } else if (*ode) {
      Recorder rec(ode);
      cmd_ode(oa, rec);
    } else if (*tip) {
      Recorder rec(tip);
      cmd_tip(ta, rec);
    } else if (*sweep) {
      Recorder rec(sweep);
      cmd_sweep(wa, rec);
    } else if (*cmp) {
      Recorder rec(cmp);
      cmd_compare(ca, rec);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return 0;
}
