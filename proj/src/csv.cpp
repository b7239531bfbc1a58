#include <ngpair/csv.hpp>

#include <charconv>
#include <cmath>

namespace ngpair::csv {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string number(const std::optional<double>& v) {
  return v ? number(*v) : "nan";
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

void write_runs(std::ostream& os, const EnsembleStats& stats) {
  write_row(os, {"run", "seed", "reached", "t_eta"});
  for (const auto& r : stats.runs)
    write_row(os, {std::to_string(r.run), std::to_string(r.seed),
                   r.reached ? "1" : "0", number(r.t_eta)});
}

void write_mean_trajectory(std::ostream& os, const EnsembleStats& stats) {
  write_row(os, {"t", "p_A", "p_B", "p_AB", "std_p_A", "std_p_B", "std_p_AB"});
  for (const auto& m : stats.mean_trajectory)
    write_row(os, {number(m.t), number(m.mean[kPA]), number(m.mean[kPB]),
                   number(m.mean[kPAB]), number(m.std[kPA]),
                   number(m.std[kPB]), number(m.std[kPAB])});
}

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows) {
  write_row(os, {"k", "p", "p_B_star", "converged", "t_end"});
  for (const auto& r : rows)
    write_row(os, {number(r.k_avg), number(r.p), number(r.p_b_star),
                   r.converged ? "1" : "0", number(r.t_end)});
}

void write_tipping(std::ostream& os, const std::vector<TippingRow>& rows) {
  write_row(os, {"k", "p_c", "p_low", "p_high"});
  for (const auto& r : rows) {
    if (r.result)
      write_row(os, {number(r.k_avg), number(r.result->p_c),
                     number(r.result->p_low), number(r.result->p_high)});
    else
      write_row(os, {number(r.k_avg), "nan", "nan", "nan"});
  }
}

void write_curve(std::ostream& os, const std::vector<CurveRow>& rows) {
  write_row(os, {"p", "T_mc_mean", "T_mc_relstd", "censored_fraction", "T_ode"});
  for (const auto& r : rows)
    write_row(os, {number(r.p), number(r.mc_mean), number(r.mc_rel_std),
                   number(r.censored_fraction), number(r.ode_time)});
}

void write_sizes(std::ostream& os, const std::vector<SizeRow>& rows) {
  write_row(os, {"k", "n", "ln_n", "T_mc_mean", "T_mc_relstd",
                 "fraction_reached", "T_pair", "T_meanfield"});
  for (const auto& r : rows)
    write_row(os, {number(r.k_avg), std::to_string(r.n),
                   number(std::log(static_cast<double>(r.n))),
                   number(r.mc_mean), number(r.mc_rel_std),
                   number(r.fraction_reached), number(r.pair_time),
                   number(r.meanfield_time)});
}

void write_overlay(std::ostream& os, const Overlay& overlay) {
  write_row(os, {"t", "mc_p_A", "mc_p_B", "mc_p_AB", "pair_p_A", "pair_p_B",
                 "pair_p_AB", "mf_p_A", "mf_p_B", "mf_p_AB"});
  for (const auto& r : overlay.rows)
    write_row(os, {number(r.t), number(r.mc[0]), number(r.mc[1]),
                   number(r.mc[2]), number(r.pair[0]), number(r.pair[1]),
                   number(r.pair[2]), number(r.meanfield[0]),
                   number(r.meanfield[1]), number(r.meanfield[2])});
}

void write_overlay_summary(std::ostream& os, const Overlay& overlay) {
  write_row(os, {"window_end", "pair_discrepancy", "meanfield_discrepancy",
                 "pair_discrepancy_mirrored", "meanfield_discrepancy_mirrored"});
  write_row(os, {number(overlay.window_end), number(overlay.pair_discrepancy),
                 number(overlay.meanfield_discrepancy),
                 number(overlay.pair_discrepancy_mirrored),
                 number(overlay.meanfield_discrepancy_mirrored)});
}

void write_manifest(
    std::ostream& os,
    const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
}

}  // namespace ngpair::csv
