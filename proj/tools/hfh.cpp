// Command-line front end: validate, nice, info, hf, hfk on .hd diagram files.
// Reports are deterministic for a given input and flag set; wall-clock timings
// are the only varying fields and are kept out of the comparison surface.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hfh/floer.hpp"
#include "hfh/lattice.hpp"
#include "hfh/moves.hpp"

using json = nlohmann::ordered_json;
using namespace hfh;

static std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DiagramError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

static std::string fnv1a(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

struct Timer {
  json& out;
  std::string stage;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out[stage] = s;
  }
};

static json region_histogram(const Traced& t) {
  int bigon = 0, square = 0, bad = 0, nondisk = 0;
  for (auto& r : t.regions) {
    if (r.cls == RegionClass::Bigon) bigon++;
    else if (r.cls == RegionClass::Square) square++;
    else if (r.cls == RegionClass::BadDisk) bad++;
    else nondisk++;
  }
  return {{"bigon", bigon}, {"square", square}, {"bad_disk", bad}, {"non_disk", nondisk}};
}

static json diagram_stats(const Traced& t) {
  json j;
  j["genus"] = t.d.genus;
  j["crossings"] = t.n_crossings();
  j["alpha_curves"] = t.d.alphaWords.size();
  j["beta_curves"] = t.d.betaWords.size();
  j["basepoints_w"] = t.wRegion.size();
  j["basepoints_z"] = t.zRegion.size();
  j["regions"] = region_histogram(t);
  j["nice"] = is_nice(t);
  j["admissible"] = is_admissible(t);
  return j;
}

static json rank_table(const FloerComplex& f, bool knot) {
  auto ranks = homology_ranks(f, knot);
  json rows = json::array();
  int total = 0;
  for (auto& [k, v] : ranks) {
    json row;
    row["class"] = k[0];
    row["pointed_class"] = k[1];
    if (knot) row["alexander"] = k[2];
    if (f.subGraded[(size_t)k[1]]) row["maslov"] = k[3];
    else row["maslov"] = nullptr;  // relative grading not defined on this piece
    row["rank"] = v;
    rows.push_back(row);
    total += v;
  }
  json j;
  j["total_rank"] = total;
  j["table"] = rows;
  return j;
}

static void run_oracle(const Traced& t, const FloerComplex& f, json& report) {
  if ((int)t.regions.size() > 32) {
    report["oracle"] = "skipped: more than 32 regions";
    return;
  }
  std::map<std::pair<int, int>, std::set<std::vector<int>>> found;
  for (auto& d : f.disks) found[{d.from, d.to}].insert(d.coeffs);
  long long pairs = 0, mismatches = 0;
  int n = (int)f.gens.size();
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      if (i == j) continue;
      pairs++;
      auto doms = bruteforce_domains(t, f.gens[i], f.gens[j]);
      std::set<std::vector<int>> ref(doms.begin(), doms.end());
      auto it = found.find({i, j});
      std::set<std::vector<int>> got = it == found.end() ? std::set<std::vector<int>>{} : it->second;
      if (ref != got) mismatches++;
    }
  report["oracle"] = {{"pairs", pairs}, {"mismatches", mismatches}};
  if (mismatches) throw InternalError("internal invariant failed: search disagrees with oracle");
}

static void print_text(const json& j, const std::string& prefix) {
  for (auto& [k, v] : j.items()) {
    std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) print_text(v, key);
    else if (v.is_array() && !v.empty() && v[0].is_object()) {
      for (auto& row : v) {
        std::cout << key << ":";
        for (auto& [rk, rv] : row.items()) std::cout << " " << rk << "=" << rv.dump();
        std::cout << "\n";
      }
    } else std::cout << key << ": " << v.dump() << "\n";
  }
}

int main(int argc, char** argv) {
  CLI::App app{"pointed Heegaard diagram toolkit"};
  app.require_subcommand(1);

  std::string path, outPath;
  bool jsonOut = false, strict = false, oracle = false, knotFlag = false, matrix = false;
  int jobs = 1;
  app.add_flag("--json", jsonOut, "emit the report as JSON");
  app.add_flag("--strict", strict, "refuse non-nice input instead of converting it");
  app.add_flag("--oracle", oracle, "cross-check the disk search against the brute-force oracle");
  app.add_flag("--knot", knotFlag, "require z basepoints");
  app.add_flag("--matrix", matrix, "dump the differential as sparse triples");
  app.add_option("--jobs", jobs, "worker threads for the disk search")->check(CLI::PositiveNumber);

  auto* cValidate = app.add_subcommand("validate", "parse and check a diagram");
  auto* cNice = app.add_subcommand("nice", "convert a diagram until every region away from the basepoints is a bigon or square");
  auto* cInfo = app.add_subcommand("info", "diagram statistics and generator count");
  auto* cHf = app.add_subcommand("hf", "homology of the closed manifold");
  auto* cHfk = app.add_subcommand("hfk", "knot homology, split by Alexander grading");
  for (auto* c : {cValidate, cNice, cInfo, cHf, cHfk}) {
    c->add_option("path", path, "diagram file")->required();
    c->fallthrough();  // global flags may follow the subcommand
  }
  cNice->add_option("-o,--out", outPath, "write the converted diagram here (move log beside it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  json report;
  json timings;
  report["schema"] = 1;
  try {
    std::string src = read_file(path);
    report["input"] = path;
    report["digest"] = fnv1a(src);

    Diagram d;
    Traced t;
    {
      Timer tm{timings, "parse_trace"};
      d = parse_diagram(src);
      t = trace_and_validate(d);
    }
    report["diagram"] = diagram_stats(t);

    if (cValidate->parsed()) {
      // nothing further: parsing and tracing already ran every check
    } else if (cNice->parsed()) {
      NiceResult res;
      {
        Timer tm{timings, "nice"};
        res = make_nice(d);
      }
      Traced tn = trace_and_validate(res.d);
      report["moves"] = res.log.moves.size();
      report["after"] = diagram_stats(tn);
      if (!outPath.empty()) {
        std::ofstream(outPath) << serialize_diagram(res.d);
        std::ofstream(outPath + ".log") << res.log.str();
      } else if (jsonOut) {
        report["output"] = serialize_diagram(res.d);
        json mv = json::array();
        for (auto& m : res.log.moves) mv.push_back(m.params);
        report["move_log"] = mv;
      }
      if (outPath.empty() && !jsonOut) std::cout << serialize_diagram(res.d);
    } else {
      bool knot = cHfk->parsed() || knotFlag;
      if (knot && t.zRegion.empty())
        throw DiagramError("knot mode needs z basepoints");
      if (!is_nice(t)) {
        if (strict) throw DiagramError("input is not nice and --strict is set");
        std::cerr << "notice: input is not nice; converting it first "
                     "(counts below refer to the converted diagram)" << std::endl;
        NiceResult res;
        {
          Timer tm{timings, "nice"};
          res = make_nice(d);
        }
        report["nicing_moves"] = res.log.moves.size();
        d = res.d;
        t = trace_and_validate(d);
        report["diagram"] = diagram_stats(t);
      }
      if (cInfo->parsed()) {
        report["generators"] = enumerate_generators(t).size();
        report["periodic_rank"] = periodic_rank(t);
      } else {
        if (!is_admissible(t))
          throw DiagramError("diagram is not admissible; rank counts would not be meaningful");
        FloerComplex f;
        {
          Timer tm{timings, "complex"};
          f = build_complex(t, jobs);
        }
        report["generators"] = f.gens.size();
        report["empty_disks"] = f.disks.size();
        {
          Timer tm{timings, "homology"};
          report["homology"] = rank_table(f, knot);
        }
        if (matrix) {
          json triples = json::array();
          for (auto& [k, v] : differential(f, knot)) triples.push_back({k.first, k.second, v});
          report["matrix"] = triples;
        }
        if (oracle) {
          Timer tm{timings, "oracle"};
          run_oracle(t, f, report);
        }
      }
    }
  } catch (const DiagramError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }

  report["timings"] = timings;
  bool quietStdout = cNice->parsed() && outPath.empty() && !jsonOut;
  if (jsonOut) std::cout << report.dump(2) << "\n";
  else if (!quietStdout) print_text(report, "");
  return 0;
}
