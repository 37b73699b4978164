#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcboost/dataset.hpp"
#include "tcboost/types.hpp"

namespace tcboost {

/// Overlapping 2-D Gaussian blobs: tight positive class around (+1, +1),
/// broader negative class around (-1, -1). Deterministic per seed
/// (mt19937_64 + Box-Muller, sub-stream "toy2d").
Dataset gen_toy_2d(int m1, int m2, std::uint64_t seed);

struct NodeStreamRow {
  int node = 0;
  std::int64_t pos_in = 0, pos_out = 0;
  std::int64_t neg_in = 0, neg_out = 0;
};

struct NodeStream {
  std::vector<NodeStreamRow> rows;
  double empirical_f_dr = 1.0;  // surviving positives / n_pos
  double empirical_f_fp = 1.0;  // surviving negatives / n_neg
};

/// Simulates independent per-node accept/reject outcomes so empirical
/// cascade products can be compared against prod(d_t) and prod(f_t).
NodeStream gen_node_stream(const std::vector<double>& d_probs, const std::vector<double>& f_probs,
                           std::int64_t n_pos, std::int64_t n_neg, std::uint64_t seed);

/// Feature-mode CSV: first column +1/-1 label, remaining columns features,
/// no header. Image mode: a directory of P5 PGM files (maxval 255, one
/// window size) with a manifest.csv of (filename, label) rows.
Dataset load_dataset(const std::string& path, Dataset::Mode mode);
void save_dataset(const Dataset& dataset, const std::string& path);

GrayImage load_pgm(const std::string& path);
void save_pgm(const GrayImage& image, const std::string& path);

}  // namespace tcboost
