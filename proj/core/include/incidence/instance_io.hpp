#pragma once

// JSON (de)serialization of instances. Coordinates are stored as exact
// rational strings ("p/q" or integers) so files round-trip bit for bit.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "incidence/geom.hpp"

namespace incidence {

struct Instance {
  std::size_t dimension = 0;
  std::vector<Point> points;
  std::vector<Range> ranges;
  std::optional<unsigned> k;
  std::map<std::string, std::string> provenance;  // generator, seed, parameters
};

std::string to_json(const Instance& inst, int indent = 2);
Instance instance_from_json(const std::string& text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// Serialized single range, for logs and certificates.
std::string range_to_json(const Range& r);
std::string point_to_json(const Point& p);

/// 16 hex digits identifying the geometric content (points and ranges).
std::string fingerprint(const std::vector<Point>& points, const std::vector<Range>& ranges);

}  // namespace incidence
