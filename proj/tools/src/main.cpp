#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "incidence/graph.hpp"
#include "util.hpp"

int main(int argc, char** argv) {
  using namespace cli;
  CLI::App app{"Incidence counting, covers, audits and censuses for points and ranges"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out-dir", common.out_dir, "Output directory (default: $INCIDENCE_OUT_DIR or .)");
  app.add_option("-o,--output", common.output, "Output file (default: stdout, or a file in the output directory)");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate an instance");
  g->add_option("family", gen.family,
                "elekes | lower5d | random-boxes | random-halfspaces | random-fat | random-curtains | "
                "kkk-free-intervals | k22-free-halfplanes")
      ->required();
  g->add_option("--N", gen.N, "Grid parameter for elekes and lower5d");
  g->add_option("--n", gen.n, "Number of points");
  g->add_option("--m", gen.m, "Number of ranges (candidates for kkk-free-intervals)");
  g->add_option("--d", gen.d, "Dimension");
  g->add_option("--k", gen.k, "Forbidden biclique size for kkk-free-intervals");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--delta", gen.delta, "Minimum angle of fat triangles (radians)");
  g->add_option("--grid", gen.grid, "Coordinate grid size");

  std::vector<std::string> count_inputs;
  auto* cnt = app.add_subcommand("count", "Count incidences with the brute-force oracle");
  cnt->add_option("instances", count_inputs)->required()->check(CLI::ExistingFile);

  KkkOptions kkk;
  auto* kk = app.add_subcommand("kkk", "Search for a K_{k,k} in the incidence graph");
  kk->add_option("instances", kkk.instances)->required()->check(CLI::ExistingFile);
  kk->add_option("--k", kkk.k, "Biclique size");
  kk->add_option("--budget", kkk.budget, "Search node budget for k >= 3");

  KkkOptions cover;
  auto* cv = app.add_subcommand("cover", "Build, verify and bound a biclique cover of a box instance");
  cv->add_option("instances", cover.instances)->required()->check(CLI::ExistingFile);
  cv->add_option("--k", cover.k, "Biclique size");
  cv->add_option("--budget", cover.budget, "Search node budget for k >= 3");

  AuditCliOptions audit;
  auto* au = app.add_subcommand("audit", "Run a recursion audit (interval | rect | box | curtain)");
  au->add_option("kind", audit.kind)->required()->check(CLI::IsMember({"interval", "rect", "box", "curtain"}));
  au->add_option("instance", audit.instance)->required()->check(CLI::ExistingFile);
  au->add_option("--k", audit.k, "Biclique size");
  au->add_option("--b", audit.b, "Slab fan-out");
  au->add_option("--csv", audit.csv, "Write one CSV row per recursion node");

  CensusOptions census;
  auto* ce = app.add_subcommand("census", "Shallow or depth census, or a census schedule");
  ce->add_option("kind", census.kind)->required()->check(CLI::IsMember({"shallow", "depth", "schedule"}));
  ce->add_option("instance", census.instance, "Instance (shallow and depth)");
  ce->add_option("--k", census.k, "Biclique size");
  ce->add_option("--r", census.rs, "Values of r (default 2 .. m/(2k))");
  ce->add_option("--shapes", census.shapes, "pseudo-disks | fat-triangles (depth)");
  ce->add_option("--m", census.m, "Number of ranges (schedule)");
  ce->add_option("--mode", census.mode, "general | fat (schedule)");
  ce->add_option("--c", census.c, "Exponent parameter (schedule)");

  ReduceOptions reduce;
  auto* rd = app.add_subcommand("reduce", "Apply a named reduction and certify it");
  rd->add_option("name", reduce.name)->required();
  rd->add_option("instance", reduce.instance)->required()->check(CLI::ExistingFile);
  rd->add_option("--origin", reduce.origin, "Origin for origin-triangle-to-curtain, as x,y");

  ReportOptions report;
  auto* rp = app.add_subcommand("report", "CSV table of incidence counts against a bound family");
  rp->add_option("instances", report.instances)->required()->check(CLI::ExistingFile);
  rp->add_option("--family", report.family, "Bound family");
  rp->add_option("--d", report.d, "Dimension for the bound");
  rp->add_option("--delta", report.delta, "Number of directions (polyhedra)");
  rp->add_option("--k", report.k, "Biclique size");
  rp->add_option("--constant", report.constant, "Constant multiplying the bound");

  FatCliOptions fat;
  auto* ft = app.add_subcommand("fat", "Build the fat-triangle reporting structure and run every triangle as a query");
  ft->add_option("instance", fat.instance)->required()->check(CLI::ExistingFile);
  ft->add_option("--delta", fat.delta, "Minimum angle of the queries (radians)");
  ft->add_option("--csv", fat.csv, "Write per-stratum structure statistics");
  ft->add_option("--queries-csv", fat.queries_csv, "Write one CSV row per query");

  PlotOptions plot;
  auto* pl = app.add_subcommand("plot", "SVG log-log plot of a report or census CSV");
  pl->add_option("csv", plot.csv)->required()->check(CLI::ExistingFile);
  pl->add_option("--family", plot.family, "Bound family for report tables");
  pl->add_option("--d", plot.d, "Dimension for the bound");
  pl->add_option("--delta", plot.delta, "Number of directions (polyhedra)");
  pl->add_option("--title", plot.title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return run_gen(gen, common);
    if (*cnt) return run_count(count_inputs, common);
    if (*kk) return run_kkk(kkk, common);
    if (*cv) return run_cover(cover, common);
    if (*au) return run_audit(audit, common);
    if (*ce) {
      if (census.kind != "schedule" && census.instance.empty()) throw incidence::InvalidInput("census needs an instance");
      return run_census(census, common);
    }
    if (*rd) return run_reduce(reduce, common);
    if (*rp) return run_report(report, common);
    if (*ft) return run_fat(fat, common);
    if (*pl) return run_plot(plot, common);
  } catch (const incidence::KkkPresent& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "witness points:";
    for (auto i : e.witness.points) std::cerr << ' ' << i;
    std::cerr << "\nwitness ranges:";
    for (auto j : e.witness.ranges) std::cerr << ' ' << j;
    std::cerr << "\n";
    return kIntegrity;
  } catch (const incidence::VerdictUnknown& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return kUnknown;
  } catch (const incidence::IntegrityError& e) {
    std::cerr << "integrity violation: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
