#include "commands.hpp"

#include <future>
#include <iostream>
#include <sstream>

#include "incidence/box_cover.hpp"
#include "incidence/curtain_audit.hpp"
#include "incidence/extremal.hpp"
#include "incidence/fat_structure.hpp"
#include "incidence/generators.hpp"
#include "incidence/graph.hpp"
#include "incidence/interval_audit.hpp"
#include "incidence/levels.hpp"
#include "incidence/reductions.hpp"
#include "incidence/slab_audit.hpp"
#include "json.hpp"
#include "util.hpp"

namespace cli {

using namespace incidence;

namespace {

// Writes to the explicit output file when one was given, else to stdout.
void emit(const std::string& content, const Common& c) {
  if (c.output.empty()) {
    std::cout << content;
  } else {
    write_atomically(c.output, content);
  }
}

std::string join(const std::vector<Index>& ids) {
  std::string s;
  for (Index i : ids) s += (s.empty() ? "" : " ") + std::to_string(i);
  return s;
}

void print_witness(std::ostream& os, const KkkResult& w) {
  os << "witness points: " << join(w.points) << "\n";
  os << "witness ranges: " << join(w.ranges) << "\n";
}

std::vector<Box> boxes_of(const Instance& inst) { return ranges_as<Box>(inst); }

Point parse_point(const std::string& text) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) coords.push_back(parse_rational(cell));
  return Point(std::move(coords));
}

// Distinct facet directions, each scaled so that its first nonzero
// coordinate is 1; every facet normal is a multiple of one of them.
std::vector<std::vector<Rational>> facet_directions(const std::vector<Polyhedron>& polys) {
  std::vector<std::vector<Rational>> dirs;
  for (const Polyhedron& p : polys) {
    for (const Facet& f : p.facets) {
      std::vector<Rational> v = f.normal;
      Rational lead = 0;
      for (const Rational& x : v) {
        if (x != 0) {
          lead = x;
          break;
        }
      }
      if (lead == 0) throw InvalidInput("facet with zero normal");
      for (Rational& x : v) x /= lead;
      if (std::find(dirs.begin(), dirs.end(), v) == dirs.end()) dirs.push_back(std::move(v));
    }
  }
  return dirs;
}

}  // namespace

int run_gen(const GenOptions& o, const Common& c) {
  Instance inst;
  std::string tag = std::to_string(o.seed);
  if (o.family == "elekes") {
    inst = elekes_instance(o.N);
    tag = "N" + std::to_string(o.N);
  } else if (o.family == "lower5d") {
    inst = lower5d_instance(o.N);
    tag = "N" + std::to_string(o.N);
  } else if (o.family == "random-boxes") {
    inst = random_boxes(o.n, o.m, o.d, o.seed, o.grid);
  } else if (o.family == "random-halfspaces") {
    inst = random_halfspaces(o.n, o.m, o.d, o.seed, o.grid);
  } else if (o.family == "random-fat") {
    inst = random_fat(o.n, o.m, o.seed, o.delta);
  } else if (o.family == "random-curtains") {
    inst = random_curtains(o.n, o.m, o.seed, o.grid);
  } else if (o.family == "kkk-free-intervals") {
    inst = kkk_free_intervals(o.n, o.m, o.k, o.seed);
  } else if (o.family == "k22-free-halfplanes") {
    inst = k22_free_halfplanes(o.n, o.m, o.seed);
  } else {
    throw InvalidInput("unknown generator family '" + o.family + "'");
  }
  inst.provenance["command"] = "gen " + o.family;
  const std::filesystem::path path =
      c.output.empty() ? output_dir(c.out_dir) / (o.family + "-" + tag + ".json") : std::filesystem::path(c.output);
  write_atomically(path, to_json(inst));
  std::cout << path.string() << "\n";
  return kOk;
}

int run_count(const std::vector<std::string>& instances, const Common& c) {
  // Independent instances are counted concurrently.
  std::vector<std::future<std::size_t>> jobs;
  for (const std::string& path : instances) {
    jobs.push_back(std::async(std::launch::async, [path] {
      const Instance inst = read_instance(path);
      return incidences_bruteforce(inst.points, inst.ranges).incidences();
    }));
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::size_t count = jobs[i].get();
    if (instances.size() > 1) os << instances[i] << ' ';
    os << count << "\n";
  }
  emit(os.str(), c);
  return kOk;
}

int run_kkk(const KkkOptions& o, const Common& c) {
  int status = kOk;
  std::ostringstream os;
  for (const std::string& path : o.instances) {
    const Instance inst = read_instance(path);
    const IncidenceGraph g = incidences_bruteforce(inst.points, inst.ranges);
    const KkkResult r = find_kkk(g, o.k, o.budget);
    if (o.instances.size() > 1) os << path << ": ";
    os << "verdict " << to_string(r.verdict) << " (k=" << o.k << ", nodes=" << r.nodes_explored << ")\n";
    if (r.verdict == KkkVerdict::found) {
      print_witness(os, r);
      status = std::max(status, kIntegrity);
    } else if (r.verdict == KkkVerdict::unknown) {
      status = std::max(status, kUnknown);
    }
  }
  emit(os.str(), c);
  return status;
}

int run_cover(const KkkOptions& o, const Common& c) {
  int status = kOk;
  std::ostringstream os;
  for (const std::string& path : o.instances) {
    const Instance inst = read_instance(path);
    const std::vector<Box> boxes = boxes_of(inst);
    const IncidenceGraph g = incidences_bruteforce(inst.points, boxes);
    const BoxCoverResult res = build_box_cover(inst.points, boxes);
    const bool exact = verify_cover(res.cover, g);
    const CoverBound cb = cover_bound(res.cover, o.k);
    const KkkResult kkk = find_kkk(g, o.k, o.budget);

    if (o.instances.size() > 1) os << "instance " << path << "\n";
    os << "incidences " << g.incidences() << "\n";
    os << "cover_pairs " << res.cover.pairs.size() << "\n";
    os << "cover_size " << res.cover.size() << "\n";
    os << "cover_exact " << (exact ? "yes" : "no") << "\n";
    os << "ledger_within_bounds " << (res.within_bounds() ? "yes" : "no") << "\n";
    os << "kkk " << to_string(kkk.verdict) << "\n";
    if (cb.certified) {
      os << "bound " << cb.bound << "\n";
    } else {
      os << "bound uncertified: pair " << *cb.offending_pair << " embeds K_{" << o.k << "," << o.k << "}\n";
      print_witness(os, cb.witness);
    }
    if (kkk.verdict == KkkVerdict::found) print_witness(os, kkk);

    if (!exact || !res.within_bounds() || !cb.certified || kkk.verdict == KkkVerdict::found ||
        (cb.certified && cb.bound < g.incidences())) {
      status = std::max(status, kIntegrity);
    } else if (kkk.verdict == KkkVerdict::unknown) {
      status = std::max(status, kUnknown);
    }
  }
  emit(os.str(), c);
  return status;
}

int run_audit(const AuditCliOptions& o, const Common& c) {
  const Instance inst = read_instance(o.instance);
  std::ostringstream os;
  if (o.kind == "interval") {
    const IntervalAuditReport r = interval_audit(inst.points, boxes_of(inst), o.k);
    os << "incidences " << r.incidences << "\n";
    os << "bound " << r.bound << "\n";
    os << "blocks " << r.blocks.size() << "\n";
    os << "endpoint_hits " << r.endpoint_hits_total << "\n";
    os << "last_block_term " << r.last_block_term << "\n";
    os << "blocks_ok " << (r.blocks_ok() ? "yes" : "no") << "\n";
    os << "within_bound " << (r.within_bound() ? "yes" : "no") << "\n";
    emit(os.str(), c);
    return r.blocks_ok() && r.within_bound() ? kOk : kIntegrity;
  }

  RecursionReport report;
  if (o.kind == "rect") {
    report = rect_audit(inst.points, boxes_of(inst), AuditOptions{o.b, o.k, true});
  } else if (o.kind == "box") {
    report = box_audit(inst.points, boxes_of(inst), AuditOptions{o.b, o.k, true});
  } else if (o.kind == "curtain") {
    report = curtain_audit(inst.points, ranges_as<Curtain>(inst), CurtainAuditOptions{o.k, 2, true});
  } else {
    throw InvalidInput("unknown audit kind '" + o.kind + "'");
  }
  if (!o.csv.empty()) {
    const Config cfg{{"command", "audit"}, {"kind", o.kind}, {"instance", o.instance}, {"k", std::to_string(o.k)},
                     {"b", std::to_string(o.b)}};
    write_atomically(o.csv, csv_config_header(cfg) + report.to_csv());
  }
  if (!c.output.empty()) {
    write_atomically(c.output, report.to_json());
  }
  std::cout << "total " << report.total << "\n";
  std::cout << "oracle " << (report.oracle ? std::to_string(*report.oracle) : "n/a") << "\n";
  std::cout << "nodes " << report.nodes << "\n";
  std::cout << "fitted_constant " << report.fitted_constant << "\n";
  std::cout << "vertices_ok " << (report.vertices_ok ? "yes" : "no") << "\n";
  return report.matches_oracle() && report.vertices_ok ? kOk : kIntegrity;
}

int run_census(const CensusOptions& o, const Common& c) {
  Config cfg{{"command", "census"}, {"kind", o.kind}, {"k", std::to_string(o.k)}};
  std::ostringstream os;
  if (o.kind == "schedule") {
    if (o.mode != "general" && o.mode != "fat") throw InvalidInput("schedule mode is general or fat");
    const ScheduleMode mode = o.mode == "fat" ? ScheduleMode::fat : ScheduleMode::general;
    const CensusSchedule s = census_schedule(o.k, o.m, mode, o.c);
    cfg.emplace_back("m", std::to_string(o.m));
    cfg.emplace_back("mode", o.mode);
    cfg.emplace_back("c", std::to_string(o.c));
    os << csv_config_header(cfg) << "step,threshold,phase\n";
    for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
      os << i << ',' << s.thresholds[i] << ',' << (i <= s.doubling_steps ? "doubling" : "power") << "\n";
    }
    emit(os.str(), c);
    return kOk;
  }

  const Instance inst = read_instance(o.instance);
  cfg.emplace_back("instance", o.instance);
  std::vector<std::uint64_t> rs = o.rs;
  const std::uint64_t m = inst.ranges.size();
  if (rs.empty()) {
    for (std::uint64_t r = 2; 2 * o.k * r <= m; ++r) rs.push_back(r);
  }
  std::vector<CensusRow> rows;
  if (o.kind == "shallow") {
    std::vector<Halfspace> hs = ranges_as<Halfspace>(inst);
    rows = shallow_census_sweep(inst.points, hs, o.k, rs);
  } else if (o.kind == "depth") {
    UnionFamily fam;
    if (o.shapes == "pseudo-disks") {
      fam = UnionFamily::pseudo_disks;
    } else if (o.shapes == "fat-triangles") {
      fam = UnionFamily::fat_triangles;
    } else {
      throw InvalidInput("depth census shapes are pseudo-disks or fat-triangles");
    }
    cfg.emplace_back("shapes", o.shapes);
    rows = depth_census_sweep(inst.points, inst.ranges, o.k, rs,
                              [fam](double r) { return union_complexity(fam, r); });
  } else {
    throw InvalidInput("unknown census kind '" + o.kind + "'");
  }
  os << csv_config_header(cfg) << CensusRow::csv_header() << "\n";
  for (const CensusRow& row : rows) os << row.to_csv() << "\n";
  emit(os.str(), c);
  return kOk;
}

int run_reduce(const ReduceOptions& o, const Common& c) {
  const Instance inst = read_instance(o.instance);
  ReductionResult r;
  if (o.name == "polyhedra-to-boxes") {
    const auto polys = ranges_as<Polyhedron>(inst);
    r = polyhedra_to_boxes(facet_directions(polys), inst.points, polys);
  } else if (o.name == "threesided-to-orthants") {
    r = threesided_to_orthants(inst.points, boxes_of(inst));
  } else if (o.name == "orthants-to-halfspaces") {
    r = orthants_to_halfspaces(inst.points, boxes_of(inst));
  } else if (o.name == "balls-to-halfspaces") {
    r = balls_to_halfspaces(inst.points, ranges_as<Ball>(inst));
  } else if (o.name == "pointline-to-5d") {
    r = pointline_to_5d(inst.points, ranges_as<Line>(inst));
  } else if (o.name == "wedge-duality") {
    r = wedge_duality(inst.points, ranges_as<Wedge>(inst));
  } else if (o.name == "wedge-lift") {
    r = wedge_lift(inst.points, ranges_as<Wedge>(inst));
  } else if (o.name == "origin-triangle-to-curtain") {
    r = origin_triangle_to_curtain(inst.points, ranges_as<Triangle>(inst), parse_point(o.origin));
  } else {
    throw InvalidInput("unknown reduction '" + o.name + "'");
  }
  const bool ok = certify(r);
  const ReductionCertificate& cert = r.certificate;
  nlohmann::ordered_json j;
  j["reduction"] = cert.reduction;
  j["instance"] = o.instance;
  j["source_id"] = cert.source_id;
  j["target_id"] = cert.target_id;
  j["point_map"] = cert.point_map;
  j["range_map"] = cert.range_map;
  j["notes"] = cert.notes;
  j["source_edges"] = cert.source_edges;
  j["target_edges"] = cert.target_edges;
  j["direct_edges"] = r.direct_edges.size();
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const ReductionPart& p : r.parts) {
    parts.push_back({{"label", p.label}, {"points", p.points.size()}, {"ranges", p.ranges.size()},
                     {"swapped", p.swapped}});
  }
  j["parts"] = parts;
  j["verified"] = cert.verified;
  emit(j.dump(2) + "\n", c);
  return ok ? kOk : kIntegrity;
}

int run_report(const ReportOptions& o, const Common& c) {
  BoundFormula f;
  f.family = parse_bound_family(o.family);
  f.d = o.d;
  f.delta = o.delta;
  if (f.family == BoundFamily::union_complexity) {
    f.f0 = [](double r) { return union_complexity(UnionFamily::pseudo_disks, r); };
  }
  struct Row {
    std::string fingerprint;
    std::size_t dimension, n, m, incidences;
    std::string kkk;
  };
  std::vector<std::future<Row>> jobs;
  for (const std::string& path : o.instances) {
    jobs.push_back(std::async(std::launch::async, [path, k = o.k] {
      const Instance inst = read_instance(path);
      const IncidenceGraph g = incidences_bruteforce(inst.points, inst.ranges);
      return Row{fingerprint(inst.points, inst.ranges), inst.dimension, inst.points.size(), inst.ranges.size(),
                 g.incidences(), to_string(find_kkk(g, k).verdict)};
    }));
  }
  const Config cfg{{"command", "report"},
                   {"family", o.family},
                   {"d", std::to_string(o.d)},
                   {"k", std::to_string(o.k)},
                   {"constant", std::to_string(o.constant)}};
  std::ostringstream os;
  os << csv_config_header(cfg) << "instance,fingerprint,dimension,n,m,k,incidences,kkk,family,bound,ratio\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Row row = jobs[i].get();
    const double bound = eval_bound(f, std::max<double>(1, row.n), row.m, o.k, o.constant);
    os << o.instances[i] << ',' << row.fingerprint << ',' << row.dimension << ',' << row.n << ',' << row.m << ','
       << o.k << ',' << row.incidences << ',' << row.kkk << ',' << o.family << ',' << bound << ','
       << (bound > 0 ? row.incidences / bound : 0.0) << "\n";
  }
  emit(os.str(), c);
  return kOk;
}

int run_fat(const FatCliOptions& o, const Common& c) {
  const Instance inst = read_instance(o.instance);
  const std::vector<Triangle> queries = ranges_as<Triangle>(inst);
  FatOptions opts;
  opts.delta = o.delta;
  const FatReportStructure fs(inst.points, opts);

  std::ostringstream rows;
  rows << "query,reported,oracle,tree_nodes,curtain_visits,stabber_tests,leaf_tests,stratum,brute_force\n";
  std::uint64_t mismatches = 0, max_visits = 0, total = 0;
  for (std::size_t j = 0; j < queries.size(); ++j) {
    FatQueryStats st;
    const std::vector<Index> got = fs.query(queries[j], &st);
    std::vector<Index> want;
    for (Index i = 0; i < inst.points.size(); ++i) {
      if (contains(queries[j], inst.points[i])) want.push_back(i);
    }
    if (got != want) ++mismatches;
    max_visits = std::max(max_visits, st.visits());
    total += got.size();
    rows << j << ',' << got.size() << ',' << want.size() << ',' << st.tree_nodes << ',' << st.curtain_visits << ','
         << st.stabber_tests << ',' << st.leaf_tests << ',' << st.stratum << ',' << (st.brute_force ? 1 : 0) << "\n";
  }

  const Config cfg{{"command", "fat"}, {"instance", o.instance}, {"delta", std::to_string(o.delta)}};
  if (!o.csv.empty()) write_atomically(o.csv, csv_config_header(cfg) + fs.stats_csv());
  if (!o.queries_csv.empty()) write_atomically(o.queries_csv, csv_config_header(cfg) + rows.str());

  std::ostringstream os;
  os << "points " << fs.size() << "\n";
  os << "queries " << queries.size() << "\n";
  os << "reported " << total << "\n";
  os << "stored_entries " << fs.stored_entries() << "\n";
  os << "curtain_entries " << fs.curtain_entries() << "\n";
  os << "depth " << fs.depth() << "\n";
  os << "max_visits " << max_visits << "\n";
  os << "fallbacks " << fs.integrity_events() << "\n";
  os << "mismatches " << mismatches << "\n";
  emit(os.str(), c);
  return mismatches == 0 && fs.integrity_events() == 0 ? kOk : kIntegrity;
}

}  // namespace cli
