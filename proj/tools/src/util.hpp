#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "incidence/geom.hpp"
#include "incidence/instance_io.hpp"

namespace cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kIntegrity = 2;
inline constexpr int kUnknown = 3;

/// Ordered key/value record of the parameters that produced an artifact.
using Config = std::vector<std::pair<std::string, std::string>>;

/// Output directory: --out-dir, else $INCIDENCE_OUT_DIR, else ".".
std::filesystem::path output_dir(const std::string& flag);

/// Writes through a temporary file in the same directory and renames it.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// "# incidence key=value ..." for CSV files.
std::string csv_config_header(const Config& config);
std::string config_line(const Config& config);

/// Every range of the instance as type R; throws InvalidInput naming the
/// first range of another type.
template <class R>
std::vector<R> ranges_as(const incidence::Instance& inst) {
  std::vector<R> out;
  out.reserve(inst.ranges.size());
  for (std::size_t j = 0; j < inst.ranges.size(); ++j) {
    const R* r = std::get_if<R>(&inst.ranges[j]);
    if (!r) {
      throw incidence::InvalidInput("range " + std::to_string(j) + " is a " + incidence::type_name(inst.ranges[j]) +
                                    ", which this command does not accept");
    }
    out.push_back(*r);
  }
  return out;
}

/// Reads a CSV file, skipping '#' comment lines; the first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t column(const std::string& name) const;
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace cli
