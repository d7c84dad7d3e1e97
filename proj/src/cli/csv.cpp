// SPDX-License-Identifier: Apache-2.0
#include "au/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "au/error.hpp"

namespace au::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
    throw ParseError("malformed number '" + std::string(field) + "'", line);
  }
  if (!std::isfinite(x)) throw ParseError("non-finite value", line);
  return x;
}

PointTag parse_tag(std::string_view field, std::size_t line) {
  if (field.empty()) return PointTag::none;
  if (field == "int") return PointTag::integer;
  if (field == "rat") return PointTag::rational;
  if (field == "irr") return PointTag::irrational;
  throw ParseError("unknown tag '" + std::string(field) + "'", line);
}

}  // namespace

const SampledFunction& Trajectory::channel(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return channels[i];
  }
  throw Error("no channel named " + std::string(name) +
              (path.empty() ? "" : " in " + path));
}

bool Trajectory::contains(std::string_view name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

Trajectory parse_trajectory(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  // Trailing blank lines carry no data.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("missing header", 1);

  Trajectory tr;
  const auto header = split(lines[0]);
  if (header.empty() || header[0] != "t") {
    throw ParseError("header must start with column t", 1);
  }
  std::size_t value_columns = header.size() - 1;
  if (header.back() == "tag") {
    tr.has_tags = true;
    --value_columns;
  }
  if (value_columns == 0) throw ParseError("header names no channel", 1);
  for (std::size_t c = 1; c <= value_columns; ++c) {
    const std::string name(header[c]);
    if (name.empty() || name == "t" || name == "tag" || tr.contains(name)) {
      throw ParseError("bad or duplicate channel name '" + name + "'", 1);
    }
    tr.names.push_back(name);
  }

  std::vector<double> times;
  std::vector<std::vector<double>> values(value_columns);
  std::vector<PointTag> tags;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line = li + 1;
    const auto fields = split(lines[li]);
    if (fields.size() != header.size()) {
      throw ParseError("header mismatch: expected " +
                           std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line);
    }
    const double t = parse_number(fields[0], line);
    if (!times.empty() && !(t > times.back())) {
      throw ParseError("non-monotone", line);
    }
    times.push_back(t);
    for (std::size_t c = 0; c < value_columns; ++c) {
      values[c].push_back(parse_number(fields[c + 1], line));
    }
    if (tr.has_tags) tags.push_back(parse_tag(fields.back(), line));
  }
  if (times.size() < 2) {
    throw ParseError("need at least two samples", lines.size());
  }
  for (std::size_t c = 0; c < value_columns; ++c) {
    tr.channels.emplace_back(times, std::move(values[c]), tags);
  }
  return tr;
}

Trajectory ingest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Trajectory tr = parse_trajectory(buf.str());
  tr.path = path;
  return tr;
}

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x,
                                       std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, end);
}

std::string_view tag_text(PointTag tag) {
  switch (tag) {
    case PointTag::none: return "";
    case PointTag::integer: return "int";
    case PointTag::rational: return "rat";
    case PointTag::irrational: return "irr";
  }
  return "";
}

std::string format_trajectory(const std::vector<std::string>& names,
                              const std::vector<SampledFunction>& channels,
                              bool with_tags) {
  if (names.empty() || names.size() != channels.size()) {
    throw std::invalid_argument("one name per channel required");
  }
  const SampledFunction& base = channels.front();
  for (const auto& ch : channels) {
    if (!ch.same_grid(base)) throw GridMismatch("channels must share one grid");
  }
  std::string out = "t";
  for (const auto& n : names) out += "," + n;
  if (with_tags) out += ",tag";
  out += "\n";
  for (std::size_t i = 0; i < base.size(); ++i) {
    out += format_double(base.time(i));
    for (const auto& ch : channels) out += "," + format_double(ch.value(i));
    if (with_tags) {
      out += ",";
      out += tag_text(base.tag(i));
    }
    out += "\n";
  }
  return out;
}

}  // namespace au::cli
