#pragma once

// Snapshot CSV: header "k1,re,im" (1D) or "k1,k2,re,im" (2D), one row per
// stored mode in lexicographic order, values printed with 17 significant
// digits so a save/load round trip is exact.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "ks/grid.hpp"

namespace ks {

struct Snapshot {
  int dim = 1;
  int cutoff = 0;  // largest |k_j| present
  std::map<Mode, Complex> coefficients;
};

void save_snapshot(const SpectrumField& field, std::ostream& out);
void save_snapshot(const SpectrumField& field, const std::filesystem::path& path);

/// Throws ParseError naming the line for a bad header, malformed or
/// non-finite row, duplicate k, or k = 0.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Places the snapshot on a grid with the given periods; cutoff 0 means
/// "the snapshot's own cutoff".
SpectrumField snapshot_field(const Snapshot& snap, const std::vector<double>& lengths, int cutoff = 0);

/// One file per node, "<stem>_<node>.csv", returns the paths written.
std::vector<std::filesystem::path> save_trajectory(const Trajectory& traj, const std::filesystem::path& dir,
                                                   const std::string& stem);

}  // namespace ks
