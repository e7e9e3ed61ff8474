#include "util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cli {

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("INCIDENCE_OUT_DIR"); env && *env) return env;
  return ".";
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw incidence::InvalidInput("cannot write " + tmp.string());
    out << content;
    if (!out) throw incidence::InvalidInput("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string config_line(const Config& config) {
  std::string line = "incidence";
  for (const auto& [key, value] : config) line += " " + key + "=" + value;
  return line;
}

std::string csv_config_header(const Config& config) { return "# " + config_line(config) + "\n"; }

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw incidence::InvalidInput("CSV has no column '" + name + "'");
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

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw incidence::InvalidInput("cannot read " + path.string());
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty()) {
      t.header = split(line);
    } else {
      t.rows.push_back(split(line));
      if (t.rows.back().size() != t.header.size()) {
        throw incidence::InvalidInput("malformed CSV row in " + path.string() + ": " + line);
      }
    }
  }
  if (t.header.empty()) throw incidence::InvalidInput("empty CSV " + path.string());
  return t;
}

}  // namespace cli
