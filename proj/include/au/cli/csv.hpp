// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "au/funcspace.hpp"

namespace au::cli {

/// Channels of one CSV file, all on the grid of the `t` column.
struct Trajectory {
  std::string path;
  std::vector<std::string> names;
  std::vector<SampledFunction> channels;
  bool has_tags = false;

  /// Throws au::Error for an unknown name.
  const SampledFunction& channel(std::string_view name) const;
  bool contains(std::string_view name) const;
};

/// Parses `t,<channel>...[,tag]` text; LF or CRLF line ends. Errors are
/// au::ParseError with the 1-based line number.
Trajectory parse_trajectory(std::string_view text);
Trajectory ingest(const std::string& path);

/// Inverse of parse_trajectory. The tag column is written when `with_tags`.
std::string format_trajectory(const std::vector<std::string>& names,
                              const std::vector<SampledFunction>& channels,
                              bool with_tags);

/// Shortest text with 17 significant digits that parses back to x.
std::string format_double(double x);

std::string_view tag_text(PointTag tag);

}  // namespace au::cli
