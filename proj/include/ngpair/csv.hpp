#pragma once

// CSV output: comma-separated, header row, '.' decimal point, LF endings.

#include <ngpair/analysis.hpp>
#include <ngpair/integrator.hpp>
#include <ngpair/simulation.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ngpair::csv {

/// Shortest round-trip representation; "nan" for missing values.
std::string number(double v);
std::string number(const std::optional<double>& v);

void write_row(std::ostream& os, const std::vector<std::string>& cells);

void write_runs(std::ostream& os, const EnsembleStats& stats);
void write_mean_trajectory(std::ostream& os, const EnsembleStats& stats);
void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows);
void write_tipping(std::ostream& os, const std::vector<TippingRow>& rows);
void write_curve(std::ostream& os, const std::vector<CurveRow>& rows);
void write_sizes(std::ostream& os, const std::vector<SizeRow>& rows);
void write_overlay(std::ostream& os, const Overlay& overlay);
/// window_end, pair and mean-field discrepancies, raw and A/B-averaged.
void write_overlay_summary(std::ostream& os, const Overlay& overlay);

/// t, one column per state entry, p_A, p_B, p_AB. With no state names only
/// t and the node fractions are written.
template <int Dim>
void write_trajectory(std::ostream& os, const Trajectory<Dim>& traj,
                      std::span<const std::string_view> state_names) {
  std::vector<std::string> header{"t"};
  for (auto name : state_names) header.emplace_back(name);
  header.insert(header.end(), {"p_A", "p_B", "p_AB"});
  write_row(os, header);
  for (const auto& s : traj.samples) {
    std::vector<std::string> cells{number(s.t)};
    if (!state_names.empty())
      for (Eigen::Index i = 0; i < s.x.size(); ++i) cells.push_back(number(s.x[i]));
    for (int i = 0; i < 3; ++i) cells.push_back(number(s.p[i]));
    write_row(os, cells);
  }
}

/// key=value lines, readable back as a configuration file.
void write_manifest(std::ostream& os,
                    const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace ngpair::csv
