#pragma once

// Classification of a directory of TORICFAN files: one row per file, computed
// in parallel and reported in file-name order.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

struct BatchRow {
  std::string file;  // name relative to the scanned directory
  int dim = 0;
  std::size_t rays = 0;
  long picard_rank = 0;
  bool is_fano = false;
  std::optional<int> m;       // minimal P-dimension
  std::size_t rpc_count = 0;  // relevant collections of the first minimal centered collection
  std::optional<Rational> min_ch2;
  bool bound_candidate = false;
  std::string error;  // nonempty when the file could not be read or analysed
};

/// Row for one fan; `file` is copied into the row.
BatchRow classify_fan(const LatticeFan& f, const std::string& file);

struct BatchResult {
  std::vector<BatchRow> rows;
  /// dimension -> m -> count, over rows without errors; m = -1 when there is
  /// no centered collection.
  std::map<int, std::map<int, std::size_t>> histogram;
};

/// Regular files directly under `dir` whose name ends in ".fan", sorted.
std::vector<std::filesystem::path> list_fan_files(const std::filesystem::path& dir);

/// Classifies `files` on `workers` threads (0 = hardware concurrency). The
/// result does not depend on the worker count. Rows are labelled relative to
/// `root`.
BatchResult batch_classify(const std::vector<std::filesystem::path>& files, const std::filesystem::path& root,
                           unsigned workers = 0);

BatchResult batch_classify(const std::filesystem::path& dir, unsigned workers = 0);

/// Header: file,dim,rays,picard_rank,is_fano,m,rpc_count,min_ch2,bound_candidate,error
std::string batch_csv(const BatchResult& r);

/// One line per dimension: "dim 4: m=1:107 m=2:15 ... (total 124)".
std::string histogram_text(const BatchResult& r);

}  // namespace toric
