#include "ks/snapshot.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ks/errors.hpp"

namespace ks {

void save_snapshot(const SpectrumField& field, std::ostream& out) {
  const TorusGrid& grid = field.grid();
  out << (grid.dim() == 1 ? "k1,re,im\n" : "k1,k2,re,im\n");
  char buf[128];
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Mode& k = grid.mode(i);
    if (grid.dim() == 1) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", k[0], field[i].real(), field[i].imag());
    } else {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", k[0], k[1], field[i].real(), field[i].imag());
    }
    out << buf;
  }
}

void save_snapshot(const SpectrumField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  save_snapshot(field, out);
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

template <class T>
T parse_cell(const std::string& cell, std::size_t line) {
  T value{};
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) throw ParseError("malformed value '" + cell + "'", line);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ParseError("non-finite value '" + cell + "'", line);
  }
  return value;
}

}  // namespace

Snapshot read_snapshot(std::istream& in) {
  Snapshot snap;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      if (line == "k1,re,im") {
        snap.dim = 1;
      } else if (line == "k1,k2,re,im") {
        snap.dim = 2;
      } else {
        throw ParseError("expected header 'k1,re,im' or 'k1,k2,re,im'", lineno);
      }
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != static_cast<std::size_t>(snap.dim) + 2) {
      throw ParseError("expected " + std::to_string(snap.dim + 2) + " columns", lineno);
    }
    Mode k{0, 0};
    for (int j = 0; j < snap.dim; ++j) k[static_cast<std::size_t>(j)] = parse_cell<int>(cells[j], lineno);
    const double re = parse_cell<double>(cells[snap.dim], lineno);
    const double im = parse_cell<double>(cells[snap.dim + 1], lineno);
    if (k == Mode{0, 0}) throw ParseError("k = 0 is not allowed (fields are mean-free)", lineno);
    if (!snap.coefficients.emplace(k, Complex(re, im)).second) throw ParseError("duplicate mode", lineno);
    for (int j = 0; j < snap.dim; ++j) snap.cutoff = std::max(snap.cutoff, std::abs(k[static_cast<std::size_t>(j)]));
  }
  if (!header) throw ParseError("empty snapshot", 1);
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  return read_snapshot(in);
}

SpectrumField snapshot_field(const Snapshot& snap, const std::vector<double>& lengths, int cutoff) {
  if (static_cast<int>(lengths.size()) != snap.dim) throw ConfigError("snapshot dimension does not match lengths");
  const int n = cutoff > 0 ? cutoff : std::max(snap.cutoff, 1);
  return project_zero_mean(snap.coefficients, TorusGrid(lengths, n));
}

std::vector<std::filesystem::path> save_trajectory(const Trajectory& traj, const std::filesystem::path& dir,
                                                   const std::string& stem) {
  std::vector<std::filesystem::path> paths;
  for (std::size_t n = 0; n < traj.nodes(); ++n) {
    paths.push_back(dir / (stem + "_" + std::to_string(n) + ".csv"));
    save_snapshot(traj[n], paths.back());
  }
  return paths;
}

}  // namespace ks
