// acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Everything is recomputed from the checked-in fixtures.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "hfh/f2.hpp"
#include "hfh/floer.hpp"
#include "hfh/lattice.hpp"
#include "hfh/moves.hpp"

using namespace hfh;
namespace fs = std::filesystem;

static bool allOk = true;

static void report(int n, bool ok, const std::string& details) {
  if (!ok) allOk = false;
  std::cout << "criterion " << n << " " << (ok ? "PASS" : "FAIL") << ": " << details << std::endl;
}

static double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

static Diagram load(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw DiagramError("cannot open " + p.string());
  std::string s((std::istreambuf_iterator<char>(in)), {});
  return parse_diagram(s);
}

static fs::path fixture(const std::string& rel) { return fs::path(HFH_FIXTURE_DIR) / rel; }

static std::vector<fs::path> listing(const std::string& rel) {
  std::vector<fs::path> out;
  for (auto& e : fs::directory_iterator(fixture(rel))) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// per pointed class: ranks listed by grading offset from the lowest occupied
// level, or the total rank alone when the class carries no grading.  The
// multiset over classes is invariant under relabeling.
static std::multiset<std::vector<long long>> rank_profile(const FloerComplex& f) {
  auto ranks = homology_ranks(f, false);
  std::map<long long, std::map<long long, long long>> byClass;
  for (auto& [k, r] : ranks) byClass[k[1]][k[3]] += r;
  std::multiset<std::vector<long long>> prof;
  for (auto& [s, byMu] : byClass) {
    std::vector<long long> v;
    if (!f.subGraded[(int)s]) {
      long long tot = 0;
      for (auto& [m, r] : byMu) tot += r;
      v = {-1, tot};
    } else {
      long long lo = byMu.begin()->first, hi = byMu.rbegin()->first;
      for (long long m = lo; m <= hi; m++) v.push_back(byMu.count(m) ? byMu[m] : 0);
    }
    prof.insert(v);
  }
  return prof;
}

// a random isotopy that stays legal: push a beta edge of a disk region across
// one alpha edge of the same region
static Diagram wiggle(Diagram d, std::mt19937& rng, int count) {
  int done = 0, guard = 0;
  while (done < count && guard++ < 200) {
    Traced t = trace_and_validate(d);
    std::vector<std::pair<EdgeRef, CrossedArc>> opts;
    for (auto& reg : t.regions) {
      if (!reg.disk()) continue;
      for (auto& b : t.cycles[reg.cycles[0]].edges) {
        if (b.kind != 1) continue;
        for (auto& a : t.cycles[reg.cycles[0]].edges)
          if (a.kind == 0) opts.push_back({b, {a.tail, a.side}});
      }
    }
    if (opts.empty()) break;
    auto& [b, a] = opts[rng() % opts.size()];
    try {
      Diagram nd = apply_finger_spec(t, {b, {a}});
      trace_and_validate(nd);
      d = nd;
      done++;
    } catch (const std::exception&) {
    }
  }
  return d;
}

static int naive_rank(std::vector<std::vector<int>> m) {
  int rank = 0;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (size_t c = 0; c < cols && rank < (int)rows; c++) {
    size_t p = rank;
    while (p < rows && !m[p][c]) p++;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (size_t r = 0; r < rows; r++)
      if ((int)r != rank && m[r][c])
        for (size_t k = c; k < cols; k++) m[r][k] ^= m[rank][k];
    rank++;
  }
  return rank;
}

static void criterion1() {
  double t0 = now();
  Traced t = trace_and_validate(load(fixture("trefoil_nice.hd")));
  size_t n = enumerate_generators(t).size();
  double dt = now() - t0;
  std::ostringstream os;
  os << "nice trefoil has " << n << " generators (want 9) in " << dt << "s";
  report(1, n == 9 && dt < 1.0, os.str());
}

static void criterion2() {
  double t0 = now();
  Traced t = trace_and_validate(load(fixture("poincare_origin.hd")));
  size_t n = enumerate_generators(t).size();
  double dt = now() - t0;
  std::ostringstream os;
  os << "surgery presentation has " << n << " generators (want 21) in " << dt << "s";
  report(2, n == 21 && dt < 1.0, os.str());
}

static void criterion3() {
  double t0 = now();
  Traced t = trace_and_validate(load(fixture("poincare_nice.hd")));
  FloerComplex f = build_complex(t);
  auto d = differential(f, false);
  check_d_squared(f, d);
  int rank = total_rank(homology_ranks(f, false));
  double dt = now() - t0;
  std::ostringstream os;
  os << "nice presentation: " << f.gens.size() << " generators (want 335), " << f.disks.size()
     << " empty disks (want 505), rank " << rank << " (want 1), d^2 = 0, in " << dt << "s";
  report(3, f.gens.size() == 335 && f.disks.size() == 505 && rank == 1 && dt < 60.0, os.str());
}

static void criterion4() {
  int n = 0, violations = 0;
  std::string firstBad;
  for (auto& p : listing("corpus")) {
    n++;
    try {
      Diagram start = load(p);
      NiceResult res = make_nice(start);
      Traced tn = trace_and_validate(res.d);
      if (!is_nice(tn)) throw InternalError("result not nice");
      Diagram d = start;
      for (auto& m : res.log.moves) {
        Traced t = trace_and_validate(d);
        bool adm = is_admissible(t);
        std::string kind = m.params.substr(0, m.params.find(' '));
        bool step2 = kind == "finger" || kind == "handleslide";
        Complexity before;
        if (step2) before = complexity(t);
        d = apply_move(t, m.params);
        Traced t2 = trace_and_validate(d);
        if (adm && !is_admissible(t2)) throw InternalError("admissibility lost");
        if (step2 && !(complexity(t2) < before)) throw InternalError("complexity did not drop");
      }
      if (serialize_diagram(d) != serialize_diagram(res.d)) throw InternalError("replay mismatch");
    } catch (const std::exception& e) {
      violations++;
      if (firstBad.empty()) firstBad = p.filename().string() + ": " + e.what();
    }
  }
  std::ostringstream os;
  os << n << " corpus diagrams niced, " << violations << " violations";
  if (violations) os << " (first: " << firstBad << ")";
  report(4, n >= 20 && violations == 0, os.str());
}

static void criterion5() {
  double t0 = now();
  long long pairs = 0, mismatches = 0;
  int used = 0;
  for (auto& p : listing("corpus")) {
    Traced t = trace_and_validate(load(p));
    if ((int)t.regions.size() > 32) continue;
    used++;
    auto gens = enumerate_generators(t);
    std::map<Gen, int> toIndex;
    for (int i = 0; i < (int)gens.size(); i++) toIndex[gens[i]] = i;
    for (int i = 0; i < (int)gens.size(); i++) {
      std::map<int, std::set<std::vector<int>>> fast;
      for (auto& dk : empty_disks_from(t, gens, toIndex, i)) fast[dk.to].insert(dk.coeffs);
      for (int j = 0; j < (int)gens.size(); j++) {
        pairs++;
        auto slow = bruteforce_domains(t, gens[i], gens[j]);
        if (std::set<std::vector<int>>(slow.begin(), slow.end()) != fast[j]) mismatches++;
      }
    }
  }
  double dt = now() - t0;
  std::ostringstream os;
  os << "search vs oracle on " << used << " diagrams, " << pairs << " generator pairs, "
     << mismatches << " mismatches, in " << dt << "s";
  report(5, mismatches == 0 && dt < 600.0, os.str());
}

static void criterion6() {
  int n = 0, changed = 0;
  std::string firstBad;
  unsigned seed = 7;
  for (auto& p : listing("nice")) {
    n++;
    Diagram d = load(p);
    Traced t = trace_and_validate(d);
    auto before = rank_profile(build_complex(t));
    // some wiggles re-nice to something enormous; scan a few seeds and take
    // the first perturbation that stays desk-sized (still 1-5 legal moves)
    NiceResult res;
    bool found = false;
    for (int attempt = 0; attempt < 12 && !found; attempt++) {
      std::mt19937 rng(seed + 977 * attempt);
      Diagram moved = wiggle(d, rng, 1 + (int)(rng() % 5));
      NiceResult r = make_nice(moved);
      Traced tr = trace_and_validate(r.d);
      if (tr.n_crossings() <= 120) {
        res = std::move(r);
        found = true;
      }
    }
    seed++;
    if (!found) {
      changed++;
      if (firstBad.empty()) firstBad = p.filename().string() + " (no small perturbation)";
      continue;
    }
    Traced t2 = trace_and_validate(res.d);
    auto after = rank_profile(build_complex(t2));
    if (before != after) {
      changed++;
      if (firstBad.empty()) firstBad = p.filename().string();
    }
  }
  std::ostringstream os;
  os << n << " nice fixtures perturbed and re-niced, " << changed << " rank tables changed";
  if (changed) os << " (first: " << firstBad << ")";
  report(6, n >= 10 && changed == 0, os.str());
}

static void criterion7() {
  Traced t = trace_and_validate(load(fixture("trefoil_nice.hd")));
  FloerComplex f = build_complex(t);
  auto ranks = homology_ranks(f, true);
  std::map<long long, int> byAlex;
  for (auto& [k, r] : ranks) byAlex[k[2]] += r;
  int tot = total_rank(ranks);
  bool ok = tot == 3 && byAlex.size() == 3;
  std::ostringstream os;
  os << "hfk total rank " << tot << " (want 3), alexander ranks";
  if (ok) {
    // centre the symmetric grading at zero
    long long c = (byAlex.begin()->first + byAlex.rbegin()->first) / 2;
    for (long long a : {-1, 0, 1}) {
      int r = byAlex.count(a + c) ? byAlex[a + c] : 0;
      os << " " << r << "@" << a;
      ok = ok && r == 1;
    }
  }
  report(7, ok, os.str());
}

static void criterion8() {
  Traced t = trace_and_validate(load(fixture("sphere_two_points.hd")));
  FloerComplex f = build_complex(t);
  int rank = total_rank(homology_ranks(f, false));
  std::ostringstream os;
  os << "two-basepoint sphere has total rank " << rank << " (want 2 = 1 x rank H(T^1))";
  report(8, rank == 2, os.str());
}

static void criterion9() {
  double t0 = now();
  std::string bad;
  try {
    for (auto& p : listing("corpus")) {
      Traced t = trace_and_validate(load(p));  // Euler bookkeeping
      // distance counts beta crossings, so neighbours across a beta arc
      // differ by at most one step
      for (auto& [cid, ci] : t.info)
        if (std::abs(t.regions[t.beta_left(cid)].dist - t.regions[t.beta_right(cid)].dist) > 1)
          throw InternalError("distance not Lipschitz across a beta arc");
      NiceResult res = make_nice(load(p));
      Traced tn = trace_and_validate(res.d);
      FloerComplex f = build_complex(tn);  // asserts every disk has index one
      check_d_squared(f, differential(f, false));
      if (!tn.zRegion.empty()) check_d_squared(f, differential(f, true));
    }
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; i++) {
      int rows = 1 + (int)(rng() % 256), cols = 1 + (int)(rng() % 256);
      F2Matrix m(rows, cols);
      std::vector<std::vector<int>> n(rows, std::vector<int>(cols, 0));
      for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++)
          if (rng() % 2) {
            m.set(r, c, true);
            n[r][c] = 1;
          }
      if (f2_rank(m) != naive_rank(n)) throw InternalError("rank disagrees with naive oracle");
    }
  } catch (const std::exception& e) {
    bad = e.what();
  }
  double dt = now() - t0;
  std::ostringstream os;
  os << "d^2, disk index, Euler, distance Lipschitz, 1000 random rank checks in " << dt << "s";
  if (!bad.empty()) os << " (" << bad << ")";
  report(9, bad.empty() && dt < 300.0, os.str());
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  return allOk ? 0 : 1;
}
