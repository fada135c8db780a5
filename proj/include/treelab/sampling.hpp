#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "treelab/model.hpp"

namespace treelab {

/// Per-trial stream seed derivation. The generator used throughout is
/// std::mt19937_64, seeded with splitmix64(master_seed + (trial_index+1) *
/// 0x9E3779B97F4A7C15). Distinct trials get well-separated streams; the
/// derivation is recorded in every output file header.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    std::uint64_t stream_seed() const;
    std::mt19937_64 make_rng() const;
};

/// splitmix64 output function (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// n x p matrix of spins in {-1,+1}, stored row-major as int8.
struct SampleMatrix {
    int n = 0;
    int p = 0;
    std::vector<std::int8_t> spins;  // size n*p

    std::int8_t at(int row, int col) const { return spins[static_cast<std::size_t>(row) * p + col]; }
};

/// Exact ancestral sampling from a tree/forest Ising model. Per component:
/// root = lowest node id, root spin uniform; BFS outward in ascending
/// neighbor order; child agrees with parent with probability (1+mu_e)/2.
/// Bit-identical output for identical (model, n, seed).
SampleMatrix sample(const TreeIsingModel& m, int n, const SeedSpec& seed);

/// Text sample file: header `samples n=<n> p=<p> seed=<master>/<trial>`,
/// a `#` comment recording the generator, then n rows of `+1`/`-1`.
void write_samples(std::ostream& os, const SampleMatrix& s, const SeedSpec& seed);
void write_samples_file(const std::string& path, const SampleMatrix& s, const SeedSpec& seed);

/// Compact binary form: same header lines, then ceil(p/8) bytes per row,
/// row-major, bit k of a row byte-block = 1 for spin +1 (LSB first).
void write_samples_binary(std::ostream& os, const SampleMatrix& s, const SeedSpec& seed);
void write_samples_binary_file(const std::string& path, const SampleMatrix& s, const SeedSpec& seed);

/// Reads either form (sniffed from the header line).
SampleMatrix read_samples(std::istream& is);
SampleMatrix read_samples_file(const std::string& path);

}  // namespace treelab
