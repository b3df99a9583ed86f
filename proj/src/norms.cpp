#include "ks/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ks/errors.hpp"

namespace ks {

namespace {

// |k|^m for every stored mode.
std::vector<double> mode_weights(const TorusGrid& grid, double m) {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) w[i] = std::pow(grid.norm(i), m);
  return w;
}

}  // namespace

double norm_Y(const SpectrumField& field, double m) {
  const auto w = mode_weights(field.grid(), m);
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) sum += w[i] * std::abs(field[i]);
  return sum;
}

double norm_PM(const SpectrumField& field, double m) {
  const auto w = mode_weights(field.grid(), m);
  double sup = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) sup = std::max(sup, w[i] * std::abs(field[i]));
  return sup;
}

double norm_calY(const Trajectory& traj, double m) {
  const auto w = mode_weights(traj.grid(), m);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double sup = 0.0;
    for (std::size_t n = 0; n < traj.nodes(); ++n) sup = std::max(sup, std::abs(traj[n][i]));
    sum += w[i] * sup;
  }
  return sum;
}

double log_mean_integral(double a, double b, double h) noexcept {
  if (a <= 0.0 || b <= 0.0) return 0.5 * h * (a + b);
  const double r = b / a;
  if (std::abs(r - 1.0) < 1e-6) {
    // (b - a)/log(b/a) = a * (r - 1)/log(r), expanded around r = 1.
    const double x = r - 1.0;
    return h * a * (1.0 + x / 2.0 - x * x / 12.0 + x * x * x / 24.0);
  }
  return h * (b - a) / std::log(r);
}

double norm_calX(const Trajectory& traj, double m) {
  if (traj.nodes() < 2) throw ConfigError("calX norm needs at least two time nodes");
  const auto w = mode_weights(traj.grid(), m);
  const auto& t = traj.times();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double integral = 0.0;
    double prev = std::abs(traj[0][i]);
    for (std::size_t n = 1; n < traj.nodes(); ++n) {
      const double cur = std::abs(traj[n][i]);
      integral += log_mean_integral(prev, cur, t[n] - t[n - 1]);
      prev = cur;
    }
    sum += w[i] * integral;
  }
  return sum;
}

double norm_calPM(const Trajectory& traj, double m) {
  const auto w = mode_weights(traj.grid(), m);
  double sup = 0.0;
  for (std::size_t n = 0; n < traj.nodes(); ++n) {
    for (std::size_t i = 0; i < w.size(); ++i) sup = std::max(sup, w[i] * std::abs(traj[n][i]));
  }
  return sup;
}

NormId parse_norm_id(std::string_view text) {
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.empty() || text.back() != ']') {
    throw ConfigError("norm id must look like Y[-1], got '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, open);
  const std::string_view arg = text.substr(open + 1, text.size() - open - 2);

  NormId id{NormFamily::Y, 0.0, std::string(text)};
  if (name == "Y") id.family = NormFamily::Y;
  else if (name == "PM") id.family = NormFamily::PM;
  else if (name == "calY") id.family = NormFamily::calY;
  else if (name == "X" || name == "calX") id.family = NormFamily::calX;
  else if (name == "calPM") id.family = NormFamily::calPM;
  else throw ConfigError("unknown norm family '" + std::string(name) + "'");

  const auto* first = arg.data();
  const auto* last = arg.data() + arg.size();
  auto [ptr, ec] = std::from_chars(first, last, id.m);
  if (ec != std::errc{} || ptr != last) throw ConfigError("bad norm index in '" + std::string(text) + "'");
  return id;
}

std::vector<NormId> parse_norm_list(std::string_view comma_separated) {
  std::vector<NormId> ids;
  while (!comma_separated.empty()) {
    const auto comma = comma_separated.find(',');
    ids.push_back(parse_norm_id(comma_separated.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    comma_separated.remove_prefix(comma + 1);
  }
  return ids;
}

double evaluate_norm(const NormId& id, const SpectrumField& field) {
  switch (id.family) {
    case NormFamily::Y: return norm_Y(field, id.m);
    case NormFamily::PM: return norm_PM(field, id.m);
    default: throw ConfigError("norm " + id.text + " needs a trajectory");
  }
}

double evaluate_norm(const NormId& id, const Trajectory& traj) {
  switch (id.family) {
    case NormFamily::Y: return norm_Y(traj.back(), id.m);
    case NormFamily::PM: return norm_PM(traj.back(), id.m);
    case NormFamily::calY: return norm_calY(traj, id.m);
    case NormFamily::calX: return norm_calX(traj, id.m);
    case NormFamily::calPM: return norm_calPM(traj, id.m);
  }
  return 0.0;
}

nlohmann::json NormReport::to_json() const {
  nlohmann::json j;
  for (const auto& [k, v] : values) j[k] = v;
  nlohmann::json meta{{"N", cutoff}, {"time_nodes", time_nodes}};
  meta["tail_estimate"] = tail_estimate.empty() ? nlohmann::json(nullptr) : nlohmann::json(tail_estimate);
  j["meta"] = std::move(meta);
  return j;
}

NormReport make_norm_report(const SpectrumField& field, const std::vector<NormId>& ids) {
  NormReport r;
  r.cutoff = field.grid().cutoff();
  for (const auto& id : ids) r.values[id.text] = evaluate_norm(id, field);
  return r;
}

NormReport make_norm_report(const Trajectory& traj, const std::vector<NormId>& ids, const SymbolTable* table) {
  NormReport r;
  r.cutoff = traj.grid().cutoff();
  r.time_nodes = traj.nodes();
  for (const auto& id : ids) {
    r.values[id.text] = evaluate_norm(id, traj);
    if (table && id.family == NormFamily::calX && !std::isfinite(table->horizon())) {
      // Linear decay beyond the last node: int_0^inf exp(-sigma t) dt = 1/sigma.
      const auto& last = traj.back();
      double tail = 0.0;
      for (std::size_t i = 0; i < last.size(); ++i) {
        tail += std::pow(last.grid().norm(i), id.m) * std::abs(last[i]) / table->sigma(i);
      }
      r.tail_estimate[id.text] = tail;
    }
  }
  return r;
}

}  // namespace ks
