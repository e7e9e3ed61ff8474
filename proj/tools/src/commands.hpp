#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace cli {

struct Common {
  std::string out_dir;
  std::string output;  // explicit output file; empty means stdout or a default name
};

struct GenOptions {
  std::string family;
  unsigned N = 2;
  std::size_t n = 64, m = 64;
  unsigned d = 2, k = 2;
  std::uint64_t seed = 1;
  double delta = std::numbers::pi / 6;
  std::int64_t grid = 64;
};

struct KkkOptions {
  std::vector<std::string> instances;
  unsigned k = 2;
  std::uint64_t budget = 20'000'000;
};

struct AuditCliOptions {
  std::string kind;
  std::string instance;
  unsigned k = 2;
  std::size_t b = 4;
  std::string csv;  // per-node CSV output
};

struct CensusOptions {
  std::string kind;
  std::string instance;
  unsigned k = 2;
  std::vector<std::uint64_t> rs;  // empty: the sweep 2 .. m / (2k)
  std::string shapes = "pseudo-disks";
  std::uint64_t m = 0;          // schedule only
  std::string mode = "general";  // schedule only
  unsigned c = 4;
};

struct ReduceOptions {
  std::string name;
  std::string instance;
  std::string origin = "0,0";
};

struct ReportOptions {
  std::vector<std::string> instances;
  std::string family = "box";
  unsigned d = 2, delta = 1;
  unsigned k = 2;
  double constant = 1.0;
};

struct FatCliOptions {
  std::string instance;
  double delta = std::numbers::pi / 6;
  std::string csv;          // per-stratum structure statistics
  std::string queries_csv;  // one row per query
};

struct PlotOptions {
  std::string csv;
  std::string family = "box";
  unsigned d = 2, delta = 1;
  std::string title;
};

int run_gen(const GenOptions& o, const Common& c);
int run_count(const std::vector<std::string>& instances, const Common& c);
int run_kkk(const KkkOptions& o, const Common& c);
int run_cover(const KkkOptions& o, const Common& c);
int run_audit(const AuditCliOptions& o, const Common& c);
int run_census(const CensusOptions& o, const Common& c);
int run_reduce(const ReduceOptions& o, const Common& c);
int run_report(const ReportOptions& o, const Common& c);
int run_fat(const FatCliOptions& o, const Common& c);
int run_plot(const PlotOptions& o, const Common& c);

}  // namespace cli
