#pragma once

// Wiener-algebra and pseudomeasure norms on fields (Y^m, PM^m) and their
// space-time versions on trajectories (calY^m, calX^m, calPM^m). The k = 0
// mode never contributes.
//
// Time sup is a max over stored nodes. The calX time integral uses the
// logarithmic-mean rule: on each interval |f| is interpolated as an
// exponential a*exp(lambda*(t - t_i)), which integrates constants and pure
// semigroup modes exp(-sigma t) exactly. Intervals with a zero endpoint
// fall back to the trapezoid rule.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ks/grid.hpp"
#include "ks/symbol.hpp"

namespace ks {

double norm_Y(const SpectrumField& field, double m);
double norm_PM(const SpectrumField& field, double m);
double norm_calY(const Trajectory& traj, double m);
double norm_calX(const Trajectory& traj, double m);
double norm_calPM(const Trajectory& traj, double m);

/// Integral over [t0, t1] of a positive quantity that moves from a to b,
/// interpolated exponentially: (t1 - t0) * (b - a) / log(b / a).
double log_mean_integral(double a, double b, double h) noexcept;

enum class NormFamily { Y, PM, calY, calX, calPM };

struct NormId {
  NormFamily family;
  double m;
  std::string text;

  bool time_dependent() const noexcept {
    return family == NormFamily::calY || family == NormFamily::calX || family == NormFamily::calPM;
  }
};

/// Accepts "Y[m]", "PM[m]", "calY[m]", "X[m]" (or "calX[m]") and "calPM[m]".
NormId parse_norm_id(std::string_view text);
std::vector<NormId> parse_norm_list(std::string_view comma_separated);

/// Throws ConfigError when a time-dependent norm is asked of a single field.
double evaluate_norm(const NormId& id, const SpectrumField& field);
/// Field norms are evaluated on the last node.
double evaluate_norm(const NormId& id, const Trajectory& traj);

struct NormReport {
  std::map<std::string, double> values;
  int cutoff = 0;
  std::size_t time_nodes = 1;
  /// Per calX norm: remaining integral beyond the last node when the horizon
  /// is infinite, assuming linear decay from the last stored field.
  std::map<std::string, double> tail_estimate;

  nlohmann::json to_json() const;
};

NormReport make_norm_report(const SpectrumField& field, const std::vector<NormId>& ids);
/// Pass a table to get tail estimates for an infinite horizon.
NormReport make_norm_report(const Trajectory& traj, const std::vector<NormId>& ids,
                            const SymbolTable* table = nullptr);

}  // namespace ks
