#pragma once
// Pointed Heegaard diagrams as combinatorial maps: cyclic alpha/beta words of
// crossing ids plus crossing signs (a rotation system).  Faces are derived by
// tracing, never stored in the input beyond optional region groups.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfh {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HFH_CHECK(cond, msg) \
  do { if (!(cond)) throw ::hfh::InternalError(std::string("internal invariant failed: ") + (msg)); } while (0)

// Quadrants around a crossing, named by (ea, eb) with + meaning the outgoing
// half-edge of that curve: 0="++", 1="+-", 2="-+", 3="--".
inline const char* quad_name(int q) {
  static const char* n[4] = {"++", "+-", "-+", "--"};
  return n[q];
}
inline int quad_from_name(const std::string& s) {
  for (int q = 0; q < 4; q++) if (s == quad_name(q)) return q;
  return -1;
}

struct Anchor {
  int crossing = -1;
  int quad = -1;
  bool operator==(const Anchor&) const = default;
};

struct Diagram {
  int genus = 0;
  std::vector<std::vector<int>> alphaWords;
  std::vector<std::vector<int>> betaWords;
  std::map<int, int> sign;  // crossing id -> +1 / -1
  std::vector<Anchor> wps;  // one per component of the alpha complement
  std::vector<Anchor> zps;  // optional, knot/link mode
  // Optional grouping of traced boundary cycles into non-disk regions; cycle
  // indices refer to the deterministic tracing order.
  std::vector<std::vector<int>> regionGroups;

  bool operator==(const Diagram&) const = default;
  bool knot_mode() const { return !zps.empty(); }
};

enum class RegionClass { Bigon, Square, BadDisk, NonDisk };

struct Corner {
  int crossing;
  int quad;
  bool operator==(const Corner&) const = default;
  auto operator<=>(const Corner&) const = default;
};

// An edge of a region boundary: an arc (identified by curve kind + tail
// crossing) together with the side of the arc that faces the region.
struct EdgeRef {
  int kind;  // 0 = alpha arc, 1 = beta arc
  int tail;  // crossing id at the arc's tail (word order)
  int side;  // 0 = region on the left of the arc, 1 = on the right
  bool operator==(const EdgeRef&) const = default;
  auto operator<=>(const EdgeRef&) const = default;
};

struct Cycle {
  std::vector<Corner> corners;        // empty for phantom cycles
  std::vector<EdgeRef> edges;         // edge i follows corner i
  int phantomKind = -1;               // 0 = alpha, 1 = beta, -1 = traced
  int phantomCurve = -1;
  int phantomSide = -1;               // 0 / 1, the two sides of an isolated curve
  bool phantom() const { return phantomKind >= 0; }
};

struct Region {
  int id = -1;
  std::vector<int> cycles;
  int cornerCount = 0;
  RegionClass cls = RegionClass::NonDisk;
  bool containsW = false, containsZ = false;
  int dist = -1;
  bool disk() const { return cls != RegionClass::NonDisk; }
  int ngon() const { return cornerCount / 2; }  // disk region is a 2n-gon
  int badness() const {
    HFH_CHECK(disk(), "badness of non-disk region");
    return std::max(ngon() - 2, 0);
  }
  int euler() const { return 2 - (int)cycles.size(); }
};

struct CrossInfo {
  int aCurve = -1, aSlot = -1, bCurve = -1, bSlot = -1;
  int nextA = -1, prevA = -1, nextB = -1, prevB = -1;
  int sign = 0;
};

// dart roles
enum { Aout = 0, Ain = 1, Bout = 2, Bin = 3 };

// quadrant of the corner whose exit dart (in the face traversal) is x
inline int quad_of_exit(int sign, int x) {
  static const int pos[4] = {0, 3, 2, 1};  // Aout,Ain,Bout,Bin -> quad, sign +1
  static const int neg[4] = {1, 2, 0, 3};  // sign -1
  return sign > 0 ? pos[x] : neg[x];
}
// inverse: exit dart of the corner at quadrant q
inline int exit_of_quad(int sign, int q) {
  static const int pos[4] = {Aout, Bin, Bout, Ain};
  static const int neg[4] = {Bout, Aout, Ain, Bin};
  return sign > 0 ? pos[q] : neg[q];
}
// counterclockwise-previous dart (sigma^-1)
inline int prev_dart(int sign, int x) {
  static const int pos[4] = {Bin, Bout, Aout, Ain};  // indexed by Aout,Ain,Bout,Bin
  static const int neg[4] = {Bout, Bin, Ain, Aout};
  return sign > 0 ? pos[x] : neg[x];
}

struct Traced {
  Diagram d;
  std::map<int, CrossInfo> info;
  std::vector<Cycle> cycles;
  std::vector<Region> regions;
  std::vector<int> regionOfCycle;                 // cycle index -> region id
  std::map<Corner, int> cycleOfCorner;
  std::map<Corner, std::pair<int, int>> cornerPos;  // corner -> (cycle, index)
  std::vector<int> wRegion, zRegion;              // per basepoint

  int n_crossings() const { return (int)info.size(); }

  int region_of_corner(int crossing, int quad) const {
    auto it = cycleOfCorner.find({crossing, quad});
    HFH_CHECK(it != cycleOfCorner.end(), "unknown corner");
    return regionOfCycle[it->second];
  }

  // side quadrants of arcs, measured at the tail crossing
  int alpha_left(int tail) const {
    int s = info.at(tail).sign;
    return region_of_corner(tail, s > 0 ? 0 : 1);
  }
  int alpha_right(int tail) const {
    int s = info.at(tail).sign;
    return region_of_corner(tail, s > 0 ? 1 : 0);
  }
  int beta_left(int tail) const {
    int s = info.at(tail).sign;
    return region_of_corner(tail, s > 0 ? 2 : 0);
  }
  int beta_right(int tail) const {
    int s = info.at(tail).sign;
    return region_of_corner(tail, s > 0 ? 0 : 2);
  }
  int arc_side_region(const EdgeRef& e) const {
    if (e.kind == 0) return e.side == 0 ? alpha_left(e.tail) : alpha_right(e.tail);
    return e.side == 0 ? beta_left(e.tail) : beta_right(e.tail);
  }
  int arc_other_side(const EdgeRef& e) const {
    EdgeRef o = e;
    o.side = 1 - e.side;
    return arc_side_region(o);
  }

  // The four regions around a crossing, indexed by quadrant.
  std::array<int, 4> quad_regions(int crossing) const {
    std::array<int, 4> r;
    for (int q = 0; q < 4; q++) r[q] = region_of_corner(crossing, q);
    return r;
  }
};

// ---------------------------------------------------------------------------

inline void build_cross_info(const Diagram& d, std::map<int, CrossInfo>& info) {
  info.clear();
  for (int i = 0; i < (int)d.alphaWords.size(); i++) {
    const auto& w = d.alphaWords[i];
    for (int s = 0; s < (int)w.size(); s++) {
      auto& ci = info[w[s]];
      if (ci.aCurve >= 0) throw DiagramError("crossing " + std::to_string(w[s]) + ": duplicate alpha membership");
      ci.aCurve = i;
      ci.aSlot = s;
      ci.nextA = w[(s + 1) % w.size()];
      ci.prevA = w[(s + w.size() - 1) % w.size()];
    }
  }
  for (int i = 0; i < (int)d.betaWords.size(); i++) {
    const auto& w = d.betaWords[i];
    for (int s = 0; s < (int)w.size(); s++) {
      auto& ci = info[w[s]];
      if (ci.bCurve >= 0) throw DiagramError("crossing " + std::to_string(w[s]) + ": duplicate beta membership");
      ci.bCurve = i;
      ci.bSlot = s;
      ci.nextB = w[(s + 1) % w.size()];
      ci.prevB = w[(s + w.size() - 1) % w.size()];
    }
  }
  for (auto& [id, ci] : info) {
    if (ci.aCurve < 0) throw DiagramError("crossing " + std::to_string(id) + " missing from every alpha word");
    if (ci.bCurve < 0) throw DiagramError("crossing " + std::to_string(id) + " missing from every beta word");
    auto it = d.sign.find(id);
    if (it == d.sign.end()) throw DiagramError("crossing " + std::to_string(id) + " has no sign");
    ci.sign = it->second;
  }
  for (auto& [id, s] : d.sign)
    if (!info.count(id)) throw DiagramError("sign for unknown crossing " + std::to_string(id));
}

// travel along the arc of dart role x away from crossing c; returns the other
// endpoint and the dart role pointing back along the same arc.
inline std::pair<int, int> travel(const CrossInfo& ci, int x) {
  switch (x) {
    case Aout: return {ci.nextA, Ain};
    case Ain: return {ci.prevA, Aout};
    case Bout: return {ci.nextB, Bin};
    default: return {ci.prevB, Bout};
  }
}

inline EdgeRef edge_of_exit(int crossing, const CrossInfo& ci, int x) {
  switch (x) {
    case Aout: return {0, crossing, 0};        // forward, region on left
    case Ain: return {0, ci.prevA, 1};         // backward, region on right
    case Bout: return {1, crossing, 0};
    default: return {1, ci.prevB, 1};
  }
}

// The cycle-tracing core shared by trace_faces and the move machinery: cross
// info, traced boundary cycles in deterministic order, phantom cycles for
// isolated curves, and corner lookup tables.
struct RawTrace {
  std::map<int, CrossInfo> info;
  std::vector<Cycle> cycles;
  std::map<Corner, int> cycleOfCorner;
  std::map<Corner, std::pair<int, int>> cornerPos;
};

inline RawTrace trace_cycles(const Diagram& d) {
  RawTrace t;
  build_cross_info(d, t.info);
  if (t.info.empty()) throw DiagramError("diagram has no crossings");
  if (d.alphaWords.size() != d.betaWords.size())
    throw DiagramError("number of alpha curves differs from number of beta curves");

  // trace cycles, starting each from the lexicographically least unused
  // (crossing id, quadrant)
  std::set<Corner> used;
  for (auto& [cid, ci] : t.info) {
    for (int q = 0; q < 4; q++) {
      Corner start{cid, q};
      if (used.count(start)) continue;
      Cycle cyc;
      Corner cur = start;
      do {
        HFH_CHECK(!used.count(cur) || cur == start, "face trace revisited a corner");
        used.insert(cur);
        const CrossInfo& cc = t.info.at(cur.crossing);
        int x = exit_of_quad(cc.sign, cur.quad);
        cyc.corners.push_back(cur);
        cyc.edges.push_back(edge_of_exit(cur.crossing, cc, x));
        auto [c2, back] = travel(cc, x);
        const CrossInfo& ci2 = t.info.at(c2);
        cur = {c2, quad_of_exit(ci2.sign, prev_dart(ci2.sign, back))};
      } while (!(cur == start));
      int idx = (int)t.cycles.size();
      for (int i = 0; i < (int)cyc.corners.size(); i++) {
        t.cycleOfCorner[cyc.corners[i]] = idx;
        t.cornerPos[cyc.corners[i]] = {idx, i};
      }
      t.cycles.push_back(std::move(cyc));
    }
  }
  // phantom cycles for curves with empty words (isolated circles): two sides
  // each, alpha curves first, then beta, by curve index
  for (int kind = 0; kind < 2; kind++) {
    const auto& words = kind == 0 ? d.alphaWords : d.betaWords;
    for (int i = 0; i < (int)words.size(); i++) {
      if (!words[i].empty()) continue;
      for (int side = 0; side < 2; side++) {
        Cycle cyc;
        cyc.phantomKind = kind;
        cyc.phantomCurve = i;
        cyc.phantomSide = side;
        t.cycles.push_back(std::move(cyc));
      }
    }
  }
  return t;
}

inline Traced trace_faces(const Diagram& d) {
  Traced t;
  t.d = d;
  {
    RawTrace raw = trace_cycles(d);
    t.info = std::move(raw.info);
    t.cycles = std::move(raw.cycles);
    t.cycleOfCorner = std::move(raw.cycleOfCorner);
    t.cornerPos = std::move(raw.cornerPos);
  }

  // group cycles into regions
  int nc = (int)t.cycles.size();
  t.regionOfCycle.assign(nc, -1);
  for (const auto& g : d.regionGroups) {
    Region r;
    r.id = (int)t.regions.size();
    for (int idx : g) {
      if (idx < 0 || idx >= nc) throw DiagramError("regiongroup references unknown cycle " + std::to_string(idx));
      if (t.regionOfCycle[idx] >= 0) throw DiagramError("cycle " + std::to_string(idx) + " in two region groups");
      t.regionOfCycle[idx] = r.id;
      r.cycles.push_back(idx);
    }
    if (r.cycles.empty()) throw DiagramError("empty regiongroup");
    t.regions.push_back(std::move(r));
  }
  for (int i = 0; i < nc; i++) {
    if (t.regionOfCycle[i] >= 0) continue;
    if (t.cycles[i].phantom())
      throw DiagramError("isolated curve side not assigned to any regiongroup");
    Region r;
    r.id = (int)t.regions.size();
    r.cycles.push_back(i);
    t.regionOfCycle[i] = r.id;
    t.regions.push_back(std::move(r));
  }
  for (auto& r : t.regions) {
    for (int ci : r.cycles) r.cornerCount += (int)t.cycles[ci].corners.size();
    if ((int)r.cycles.size() >= 2)
      r.cls = RegionClass::NonDisk;
    else if (t.cycles[r.cycles[0]].phantom())
      throw DiagramError("regiongroup with a single isolated-curve side");
    else {
      int n = r.cornerCount;
      HFH_CHECK(n % 2 == 0, "odd corner count in a disk region");
      r.cls = n == 2 ? RegionClass::Bigon : n == 4 ? RegionClass::Square : RegionClass::BadDisk;
    }
  }

  // arc side consistency: the side regions computed at the two ends of every
  // arc must agree
  for (auto& [cid, ci] : t.info) {
    int s2 = t.info.at(ci.nextA).sign;
    HFH_CHECK(t.alpha_left(cid) == t.regionOfCycle[t.cycleOfCorner.at({ci.nextA, s2 > 0 ? 2 : 3})],
              "alpha arc side mismatch");
    HFH_CHECK(t.alpha_right(cid) == t.regionOfCycle[t.cycleOfCorner.at({ci.nextA, s2 > 0 ? 3 : 2})],
              "alpha arc side mismatch");
    int s3 = t.info.at(ci.nextB).sign;
    HFH_CHECK(t.beta_left(cid) == t.regionOfCycle[t.cycleOfCorner.at({ci.nextB, s3 > 0 ? 3 : 1})],
              "beta arc side mismatch");
    HFH_CHECK(t.beta_right(cid) == t.regionOfCycle[t.cycleOfCorner.at({ci.nextB, s3 > 0 ? 1 : 3})],
              "beta arc side mismatch");
  }

  // Euler bookkeeping: V - E + sum chi(R) = 2 - 2g with E = 2V
  {
    int V = (int)t.info.size();
    long long chi = 0;
    for (auto& r : t.regions) chi += r.euler();
    // isolated curves add circles: each contributes V=0,E=0 but its two sides
    // are extra boundary cycles already counted in region euler numbers; the
    // circle itself is a 1-complex with chi 0, so no correction.
    if (V - 2 * V + chi != 2 - 2 * (long long)d.genus)
      throw DiagramError("Euler characteristic mismatch: V - E + sum chi = " +
                         std::to_string(V - 2 * V + chi) + ", expected " +
                         std::to_string(2 - 2 * d.genus) +
                         " (inconsistent words/signs or missing regiongroup)");
  }

  // basepoints
  auto locate = [&](const Anchor& a) {
    if (!t.info.count(a.crossing))
      throw DiagramError("basepoint anchor references unknown crossing " + std::to_string(a.crossing));
    return t.region_of_corner(a.crossing, a.quad);
  };
  for (auto& a : d.wps) {
    int r = locate(a);
    t.wRegion.push_back(r);
    t.regions[r].containsW = true;
  }
  for (auto& a : d.zps) {
    int r = locate(a);
    t.zRegion.push_back(r);
    t.regions[r].containsZ = true;
  }
  if (d.wps.empty()) throw DiagramError("no w basepoint");
  if (!d.zps.empty() && d.zps.size() != d.wps.size())
    throw DiagramError("basepoint count mismatch: need one z per w in knot mode");
  return t;
}

// components of the complement of one curve family; regions are merged across
// arcs of the other family (removing alpha leaves beta arcs interior and vice
// versa).  kind: 0 = complement of alpha, 1 = complement of beta.
inline std::vector<int> complement_components(const Traced& t, int kind) {
  int n = (int)t.regions.size();
  std::vector<int> comp(n, -1);
  // union-find
  std::vector<int> parent(n);
  for (int i = 0; i < n; i++) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& [cid, ci] : t.info) {
    if (kind == 0) {
      parent[find(t.beta_left(cid))] = find(t.beta_right(cid));
    } else {
      parent[find(t.alpha_left(cid))] = find(t.alpha_right(cid));
    }
  }
  // isolated circles of the other family don't cut the complement: merge the
  // regions on their two sides.  Isolated circles of this family do cut.
  for (int ci = 0; ci < (int)t.cycles.size(); ci++) {
    const auto& c = t.cycles[ci];
    if (!c.phantom() || c.phantomKind == kind) continue;
    for (int cj = ci + 1; cj < (int)t.cycles.size(); cj++) {
      const auto& c2 = t.cycles[cj];
      if (c2.phantom() && c2.phantomKind == c.phantomKind && c2.phantomCurve == c.phantomCurve)
        parent[find(t.regionOfCycle[ci])] = find(t.regionOfCycle[cj]);
    }
  }
  std::map<int, int> label;
  for (int i = 0; i < n; i++) {
    int r = find(i);
    if (!label.count(r)) label[r] = (int)label.size();
    comp[i] = label[r];
  }
  return comp;
}

inline void validate(const Diagram& d, const Traced& t) {
  // each component of the alpha complement has exactly one w; same for beta
  for (int kind = 0; kind < 2; kind++) {
    auto comp = complement_components(t, kind);
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> count(ncomp, 0);
    for (int wr : t.wRegion) count[comp[wr]]++;
    for (int c = 0; c < ncomp; c++)
      if (count[c] != 1)
        throw DiagramError(std::string("component of the ") +
                           (kind == 0 ? "alpha" : "beta") +
                           " complement contains " + std::to_string(count[c]) +
                           " w basepoints (need exactly 1)");
  }
  // corner partition: total corners = 4 * #crossings
  int corners = 0;
  for (auto& r : t.regions) corners += r.cornerCount;
  if (corners != 4 * t.n_crossings())
    throw DiagramError("corner partition failed");
}

// BFS distance from the basepoint regions, crossing only beta arcs.
inline void compute_distances(Traced& t) {
  for (auto& r : t.regions) r.dist = -1;
  std::queue<int> q;
  for (int wr : t.wRegion)
    if (t.regions[wr].dist != 0) {
      t.regions[wr].dist = 0;
      q.push(wr);
    }
  // adjacency across beta arcs (including isolated beta circles)
  std::map<int, std::vector<int>> adj;
  for (auto& [cid, ci] : t.info) {
    int l = t.beta_left(cid), r = t.beta_right(cid);
    adj[l].push_back(r);
    adj[r].push_back(l);
  }
  for (int ci = 0; ci < (int)t.cycles.size(); ci++) {
    const auto& c = t.cycles[ci];
    if (!c.phantom() || c.phantomKind != 1) continue;
    for (int cj = ci + 1; cj < (int)t.cycles.size(); cj++) {
      const auto& c2 = t.cycles[cj];
      if (c2.phantom() && c2.phantomKind == 1 && c2.phantomCurve == c.phantomCurve) {
        int a = t.regionOfCycle[ci], b = t.regionOfCycle[cj];
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  while (!q.empty()) {
    int r = q.front();
    q.pop();
    for (int s : adj[r])
      if (t.regions[s].dist < 0) {
        t.regions[s].dist = t.regions[r].dist + 1;
        q.push(s);
      }
  }
  for (auto& r : t.regions)
    if (r.dist < 0)
      throw DiagramError("region unreachable from its basepoint (basepoint condition violated)");
}

inline Traced trace_and_validate(const Diagram& d) {
  Traced t = trace_faces(d);
  validate(d, t);
  compute_distances(t);
  return t;
}

// ---------------------------------------------------------------------------
// distance/badness/complexity

struct Complexity {
  int dist = 0;
  std::vector<long long> tuple{0};
  bool operator==(const Complexity&) const = default;
  bool operator<(const Complexity& o) const {
    if (dist != o.dist) return dist < o.dist;
    return std::lexicographical_compare(tuple.begin(), tuple.end(), o.tuple.begin(), o.tuple.end());
  }
  std::string str() const {
    std::ostringstream os;
    os << "d=" << dist << " (";
    for (size_t i = 0; i < tuple.size(); i++) os << (i ? "," : "") << tuple[i];
    os << ")";
    return os.str();
  }
};

// bad regions: non-basepoint (w) disk regions with >= 6 corners
inline std::vector<int> bad_regions(const Traced& t) {
  std::vector<int> out;
  for (auto& r : t.regions)
    if (!r.containsW && (!r.disk() || r.badness() > 0)) out.push_back(r.id);
  return out;
}

// distance-d bad regions in complexity order (badness descending, region id
// ascending among ties); requires all regions to be disks
inline std::vector<int> ordered_bad_regions(const Traced& t, int d) {
  std::vector<int> v;
  for (auto& r : t.regions) {
    HFH_CHECK(r.disk(), "complexity of a diagram with non-disk regions");
    if (!r.containsW && r.badness() > 0 && r.dist == d) v.push_back(r.id);
  }
  std::sort(v.begin(), v.end(), [&](int a, int b) {
    int ba = t.regions[a].badness(), bb = t.regions[b].badness();
    if (ba != bb) return ba > bb;
    return a < b;
  });
  return v;
}

inline Complexity complexity(const Traced& t) {
  int d = 0;
  for (auto& r : t.regions) {
    HFH_CHECK(r.disk(), "complexity of a diagram with non-disk regions");
    if (!r.containsW && r.badness() > 0) d = std::max(d, r.dist);
  }
  auto v = ordered_bad_regions(t, d);
  Complexity c;
  c.dist = d;
  if (v.empty()) return c;  // ((0),(0))
  long long total = 0;
  for (int id : v) total += t.regions[id].badness();
  c.tuple.clear();
  c.tuple.push_back(total);
  for (int id : v) c.tuple.push_back(-(long long)t.regions[id].badness());
  return c;
}

inline bool is_nice(const Traced& t) {
  for (auto& r : t.regions)
    if (!r.containsW &&
        !(r.cls == RegionClass::Bigon || r.cls == RegionClass::Square))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// .hd parsing and serialization

inline Diagram parse_diagram(const std::string& text) {
  Diagram d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool sawGenus = false;
  std::map<std::string, std::pair<int, Anchor>> wmap, zmap;  // name -> (order, anchor)
  auto fail = [&](const std::string& msg) {
    throw DiagramError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "genus") {
      if (!(ls >> d.genus) || d.genus < 0) fail("bad genus");
      sawGenus = true;
    } else if (key == "alpha" || key == "beta") {
      int idx;
      std::string colon;
      if (!(ls >> idx >> colon) || colon != ":") fail("expected '" + key + " <i> : ids...'");
      if (idx < 1) fail("curve index must be >= 1");
      auto& words = key == "alpha" ? d.alphaWords : d.betaWords;
      if ((int)words.size() < idx) words.resize(idx);
      if (!words[idx - 1].empty()) fail("duplicate " + key + " " + std::to_string(idx));
      int id;
      while (ls >> id) words[idx - 1].push_back(id);
      // an explicitly empty word (isolated curve) is permitted
    } else if (key == "sign") {
      int id;
      std::string colon, s;
      if (!(ls >> id >> colon >> s) || colon != ":" || (s != "+" && s != "-")) fail("expected 'sign <id> : +|-'");
      if (d.sign.count(id)) fail("duplicate sign for crossing " + std::to_string(id));
      d.sign[id] = s == "+" ? 1 : -1;
    } else if (key == "basepoint") {
      std::string name, colon, quad;
      int id;
      if (!(ls >> name >> colon >> id >> quad) || colon != ":") fail("expected 'basepoint w<i> : <id> <quadrant>'");
      int q = quad_from_name(quad);
      if (q < 0) fail("bad quadrant '" + quad + "'");
      if (name.size() < 2 || (name[0] != 'w' && name[0] != 'z')) fail("basepoint name must start with w or z");
      int ord = 0;
      try { ord = std::stoi(name.substr(1)); } catch (...) { fail("bad basepoint name '" + name + "'"); }
      auto& m = name[0] == 'w' ? wmap : zmap;
      if (m.count(name)) fail("duplicate basepoint " + name);
      m[name] = {ord, Anchor{id, q}};
    } else if (key == "regiongroup") {
      std::string colon;
      if (!(ls >> colon) || colon != ":") fail("expected 'regiongroup : indices...'");
      std::vector<int> g;
      int idx;
      while (ls >> idx) g.push_back(idx);
      if (g.empty()) fail("empty regiongroup");
      d.regionGroups.push_back(g);
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!sawGenus) throw DiagramError("missing genus line");
  auto emit = [&](std::map<std::string, std::pair<int, Anchor>>& m, std::vector<Anchor>& out) {
    std::vector<std::pair<int, Anchor>> v;
    for (auto& [n, p] : m) v.push_back(p);
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& p : v) out.push_back(p.second);
  };
  emit(wmap, d.wps);
  emit(zmap, d.zps);
  return d;
}

inline std::string serialize_diagram(const Diagram& d) {
  std::ostringstream os;
  os << "genus " << d.genus << "\n";
  for (int i = 0; i < (int)d.alphaWords.size(); i++) {
    os << "alpha " << i + 1 << " :";
    for (int id : d.alphaWords[i]) os << " " << id;
    os << "\n";
  }
  for (int i = 0; i < (int)d.betaWords.size(); i++) {
    os << "beta " << i + 1 << " :";
    for (int id : d.betaWords[i]) os << " " << id;
    os << "\n";
  }
  for (auto& [id, s] : d.sign) os << "sign " << id << " : " << (s > 0 ? "+" : "-") << "\n";
  for (int i = 0; i < (int)d.wps.size(); i++)
    os << "basepoint w" << i + 1 << " : " << d.wps[i].crossing << " " << quad_name(d.wps[i].quad) << "\n";
  for (int i = 0; i < (int)d.zps.size(); i++)
    os << "basepoint z" << i + 1 << " : " << d.zps[i].crossing << " " << quad_name(d.zps[i].quad) << "\n";
  for (auto& g : d.regionGroups) {
    os << "regiongroup :";
    for (int idx : g) os << " " << idx;
    os << "\n";
  }
  return os.str();
}

}  // namespace hfh
