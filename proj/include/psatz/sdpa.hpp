#pragma once

#include "psatz/search_space.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace psatz {

/// Sparse SDPA (.dat-s) text for: find y with sum_i y_i F_i - F0 >= 0, where
/// F0 = -offset. Header: m, number of blocks, block sizes, zero objective;
/// then `matno block i j value` lines with i <= j, 1-based.
std::string export_sdpa(const SdpSearchSpace& space);

struct SdpaEntry {
  std::size_t matno = 0;
  std::size_t block = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

struct SdpaProblem {
  std::size_t m = 0;
  std::vector<long> block_sizes;
  std::vector<double> objective;
  std::vector<SdpaEntry> entries;
};

/// Reader for the sparse format. Accepts the usual separators `{}(),` and
/// leading comment lines starting with `"` or `*`.
SdpaProblem parse_sdpa(std::string_view text);

/// Whitespace-separated floats from a file; throws std::runtime_error when
/// the file is missing or holds a non-number.
std::vector<double> read_sdpa_solution(const std::string& path);

/// Shortest round-trip text of x, with ".0" appended to integral values.
std::string format_sdpa_double(double x);

}  // namespace psatz
