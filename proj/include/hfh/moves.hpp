#pragma once
// Diagram moves: finger isotopies and handleslides on the beta curves, plus
// the preparatory fixes (poking isolated curves, killing non-disk regions) and
// the loop that drives the complexity down until every region away from the
// basepoints is a bigon or a square.  All moves are pure word rewrites; the
// diagram is fully re-traced after every one.

#include <sstream>

#include "hfh/diagram.hpp"

namespace hfh {

// ---------------------------------------------------------------------------
// word rewriting helpers

inline int max_crossing_id(const Diagram& d) {
  int m = 0;
  for (auto& [id, s] : d.sign) m = std::max(m, id);
  return m;
}

inline std::vector<int>* word_containing(std::vector<std::vector<int>>& words, int id) {
  for (auto& w : words)
    for (int c : w)
      if (c == id) return &w;
  return nullptr;
}

inline void insert_after(std::vector<int>& w, int anchor, const std::vector<int>& ins) {
  auto it = std::find(w.begin(), w.end(), anchor);
  HFH_CHECK(it != w.end(), "insert_after: anchor not in word");
  w.insert(it + 1, ins.begin(), ins.end());
}

// An alpha arc crossed by a finger, with the side the finger comes from.
struct CrossedArc {
  int tail = -1;
  int fromSide = -1;  // 0 = finger approaches from the left of the arc
  bool operator==(const CrossedArc&) const = default;
};

struct FingerSpec {
  EdgeRef base;  // beta edge being pushed; side faces the region pushed into
  std::vector<CrossedArc> crossed;
};

struct Rewritten {
  Diagram d;
  std::vector<std::pair<int, int>> pq;  // outbound/return crossing per crossed arc
};

// Push a bulge of the base beta arc across the listed alpha arcs.  Each
// crossed arc gains an antiparallel pair (p_i outbound, q_i return) of
// opposite signs; the base word gains u, p_0..p_k, q_k..q_0, v.
inline Rewritten finger_rewrite(const Diagram& d0, const FingerSpec& fs) {
  Rewritten out;
  out.d = d0;
  out.d.regionGroups.clear();
  int next = max_crossing_id(out.d) + 1;
  int h = fs.base.side == 0 ? -1 : +1;  // side of the base arc being pushed
  std::set<int> seen;
  for (auto& ca : fs.crossed) {
    HFH_CHECK(seen.insert(ca.tail).second, "finger crosses an arc twice");
    int p = next++, q = next++;
    int dir = ca.fromSide == 1 ? +1 : -1;
    out.d.sign[p] = dir;
    out.d.sign[q] = -dir;
    auto* w = word_containing(out.d.alphaWords, ca.tail);
    HFH_CHECK(w, "crossed arc tail not on any alpha curve");
    if (h * dir == -1)
      insert_after(*w, ca.tail, {p, q});
    else
      insert_after(*w, ca.tail, {q, p});
    out.pq.push_back({p, q});
  }
  auto* bw = word_containing(out.d.betaWords, fs.base.tail);
  HFH_CHECK(bw, "base tail not on any beta curve");
  std::vector<int> ins;
  for (auto& [p, q] : out.pq) ins.push_back(p);
  for (int i = (int)out.pq.size() - 1; i >= 0; i--) ins.push_back(out.pq[i].second);
  insert_after(*bw, fs.base.tail, ins);
  return out;
}

// ---------------------------------------------------------------------------
// region group inheritance
//
// After a rewrite, cycles that still contain corners at old crossings lie in a
// piece of a unique old region.  Our moves never disconnect a non-disk region,
// so its pieces regroup; pieces of disk regions stand alone.  Cycles made
// entirely of new corners are matched against explicit rules (the finger tip
// and, for pokes of isolated curves, the sides of the freshly crossed circle).

struct AllNewRule {
  std::vector<EdgeRef> has;     // side < 0 matches either side
  std::vector<EdgeRef> hasNot;
  int region = -1;              // old region whose group the cycle joins; -1 = standalone
};

inline bool cycle_has_edge(const Cycle& c, const EdgeRef& e) {
  for (auto& ce : c.edges)
    if (ce.kind == e.kind && ce.tail == e.tail && (e.side < 0 || ce.side == e.side)) return true;
  return false;
}

// fresh: crossings whose cycles are always standalone new disks (a push-off
// strip carries corners of every region flanking the slid-over curve, so its
// old corners must not drive inheritance)
inline void inherit_groups(Diagram& nd, const Traced& oldT, const std::vector<AllNewRule>& rules,
                           const std::set<int>* fresh = nullptr) {
  RawTrace raw = trace_cycles(nd);
  int nc = (int)raw.cycles.size();
  std::vector<int> oldRegion(nc, -1);
  for (int i = 0; i < nc; i++) {
    const Cycle& c = raw.cycles[i];
    if (c.phantom()) {
      int r = -1;
      for (int j = 0; j < (int)oldT.cycles.size(); j++) {
        const Cycle& oc = oldT.cycles[j];
        if (oc.phantom() && oc.phantomKind == c.phantomKind &&
            oc.phantomCurve == c.phantomCurve && oc.phantomSide == c.phantomSide)
          r = oldT.regionOfCycle[j];
      }
      HFH_CHECK(r >= 0, "phantom cycle with no old counterpart");
      oldRegion[i] = r;
      continue;
    }
    if (fresh) {
      bool touched = false;
      for (auto& corner : c.corners) touched = touched || fresh->count(corner.crossing);
      if (touched) continue;
    }
    int r = -1;
    bool any = false;
    for (auto& corner : c.corners) {
      auto it = oldT.cycleOfCorner.find(corner);
      if (it == oldT.cycleOfCorner.end()) continue;
      int rr = oldT.regionOfCycle[it->second];
      HFH_CHECK(r < 0 || r == rr, "cycle inherits from two old regions");
      r = rr;
      any = true;
    }
    if (any) {
      oldRegion[i] = r;
      continue;
    }
    // all corners are new: consult the rules
    int assign = -2;
    for (auto& rule : rules) {
      bool ok = true;
      for (auto& e : rule.has) ok = ok && cycle_has_edge(c, e);
      for (auto& e : rule.hasNot) ok = ok && !cycle_has_edge(c, e);
      if (ok) { assign = rule.region; break; }
    }
    HFH_CHECK(assign != -2, "unexpected all-new cycle");
    oldRegion[i] = assign < 0 ? -1 : assign;
  }
  std::map<int, std::vector<int>> byOld;
  for (int i = 0; i < nc; i++) {
    int r = oldRegion[i];
    if (r < 0) continue;
    if (!oldT.regions[r].disk()) byOld[r].push_back(i);
  }
  nd.regionGroups.clear();
  for (auto& [r, v] : byOld)
    if ((int)v.size() >= 2 || raw.cycles[v[0]].phantom())
      nd.regionGroups.push_back(v);
}

// ---------------------------------------------------------------------------
// finger tracing

enum class FingerOutcome { ReachedBigon, ReachedLowerDistance, ReachedEarlierBad, ReturnedToSource };

struct FingerPath {
  int source = -1;       // region the finger starts from
  EdgeRef base;          // beta edge being pushed
  int startEdge = -1;    // index l into the boundary alpha edges a_1..a_n
  std::vector<CrossedArc> crossed;
  std::vector<int> squares;  // interior squares traversed, in order
  FingerOutcome outcome = FingerOutcome::ReachedBigon;
  int terminal = -1;
  int returnEdge = -1;   // set when the finger comes back to its source
};

// boundary alpha edges of a disk region in traversal order, starting just
// after the given beta edge
inline std::vector<EdgeRef> alpha_edges_from(const Traced& t, int region, const EdgeRef& base) {
  const Region& r = t.regions[region];
  HFH_CHECK(r.cycles.size() == 1, "boundary walk needs a disk region");
  const Cycle& cyc = t.cycles[r.cycles[0]];
  int n = (int)cyc.edges.size();
  int pos = -1;
  for (int i = 0; i < n; i++)
    if (cyc.edges[i] == base) {
      HFH_CHECK(pos < 0, "base edge appears twice on the boundary");
      pos = i;
    }
  HFH_CHECK(pos >= 0, "base edge not on the region boundary");
  std::vector<EdgeRef> out;
  for (int i = 1; i <= n; i++) {
    const EdgeRef& e = cyc.edges[(pos + i) % n];
    if (e.kind == 0) out.push_back(e);
  }
  return out;
}

inline FingerPath trace_finger(const Traced& t, int source, const EdgeRef& base, int l) {
  FingerPath fp;
  fp.source = source;
  fp.base = base;
  fp.startEdge = l;
  int d = t.regions[source].dist;
  auto alphas = alpha_edges_from(t, source, base);
  HFH_CHECK(l >= 1 && l <= (int)alphas.size(), "finger start edge out of range");
  EdgeRef cur = alphas[l - 1];
  std::set<int> seen;
  for (;;) {
    HFH_CHECK(seen.insert(cur.tail).second, "finger crosses an arc twice");
    fp.crossed.push_back({cur.tail, cur.side});
    int R = t.arc_other_side(cur);
    const Region& reg = t.regions[R];
    fp.terminal = R;
    if (reg.cls == RegionClass::Bigon) {
      fp.outcome = FingerOutcome::ReachedBigon;
      return fp;
    }
    if (reg.dist <= d - 1) {
      fp.outcome = FingerOutcome::ReachedLowerDistance;
      return fp;
    }
    if (R == source) {
      fp.outcome = FingerOutcome::ReturnedToSource;
      EdgeRef entry{0, cur.tail, 1 - cur.side};
      for (int i = 0; i < (int)alphas.size(); i++)
        if (alphas[i] == entry) fp.returnEdge = i + 1;
      HFH_CHECK(fp.returnEdge > 0, "return edge not on the source boundary");
      return fp;
    }
    if (reg.cls == RegionClass::BadDisk) {
      fp.outcome = FingerOutcome::ReachedEarlierBad;
      return fp;
    }
    HFH_CHECK(reg.cls == RegionClass::Square, "finger entered a non-disk region");
    HFH_CHECK(reg.dist >= d, "corridor square closer to the basepoint than its source");
    fp.squares.push_back(R);
    EdgeRef entry{0, cur.tail, 1 - cur.side};
    const Cycle& cyc = t.cycles[reg.cycles[0]];
    EdgeRef exitE{-1, -1, -1};
    int na = 0, ne = 0;
    for (auto& e : cyc.edges) {
      if (e.kind != 0) continue;
      na++;
      if (e == entry) ne++;
      else exitE = e;
    }
    HFH_CHECK(na == 2 && ne == 1, "square without two distinct alpha edges");
    cur = exitE;
  }
}

// ---------------------------------------------------------------------------
// moves as serialized parameter strings (the replayable unit of the move log)

inline std::string finger_params(const char* kind, const FingerSpec& fs) {
  std::ostringstream os;
  os << kind << " " << fs.base.tail << " " << fs.base.side;
  for (auto& ca : fs.crossed) os << " " << ca.tail << ":" << ca.fromSide;
  return os.str();
}

inline Diagram apply_move(const Traced& t, const std::string& params);

// finger move: rewrite plus group inheritance (the tip bigon is the only
// cycle without old corners; it stands alone)
inline Diagram apply_finger_spec(const Traced& t, const FingerSpec& fs) {
  Rewritten rw = finger_rewrite(t.d, fs);
  // the corridor contributes the tip sliver plus one cell between each pair of
  // consecutive crossed arcs; all of them are fresh standalone disks
  inherit_groups(rw.d, t, {{{}, {}, -1}});
  return rw.d;
}

inline Diagram apply_finger_move(const Traced& t, const FingerPath& fp) {
  HFH_CHECK(fp.outcome != FingerOutcome::ReturnedToSource, "finger move from a returning finger");
  int before = (int)t.info.size();
  Diagram nd = apply_finger_spec(t, {fp.base, fp.crossed});
  HFH_CHECK((int)nd.sign.size() == before + 2 * (int)fp.crossed.size(),
            "finger move crossing count");
  return nd;
}

// handleslide of the base arc's curve over the curve of the beta edge b2: the
// base arc is replaced by a parallel push-off of the slid-over curve running
// through the region both edges bound.  The side the push-off runs on is fixed
// by b2, but the direction the detour traverses it in is not: only one of the
// two keeps the band embedded, and which one depends on how the base arc sits,
// so both are tried and the one whose rewrite still validates wins.
inline Diagram apply_handleslide_dir(const Traced& t, const EdgeRef& base, const EdgeRef& b2,
                                     int tau) {
  HFH_CHECK(base.kind == 1 && b2.kind == 1, "handleslide needs beta edges");
  int g = b2.tail;
  int j = t.info.at(base.tail).bCurve;
  int i = t.info.at(g).bCurve;
  HFH_CHECK(i != j, "handleslide of a curve over itself");
  Diagram nd = t.d;
  nd.regionGroups.clear();
  int next = max_crossing_id(nd) + 1;
  const std::vector<int>& wi = t.d.betaWords[i];
  std::map<int, int> copy;  // crossing of beta_i -> its push-off crossing
  for (int c : wi) {
    int n = next++;
    copy[c] = n;
    int s = t.info.at(c).sign;
    nd.sign[n] = tau * s;
    auto* w = word_containing(nd.alphaWords, c);
    HFH_CHECK(w, "slid-over crossing not on any alpha curve");
    auto it = std::find(w->begin(), w->end(), c);
    // before c along its alpha curve iff the push-off side matches the side of
    // the slid-over curve that the alpha strand approaches from
    if ((b2.side == 0) == (s == +1))
      w->insert(it, copy[c]);
    else
      w->insert(it + 1, copy[c]);
  }
  int h = t.info.at(g).nextB;
  std::vector<int> X;
  if (tau == +1) {
    int c = h;
    for (size_t k = 0; k < wi.size(); k++) {
      X.push_back(copy[c]);
      c = t.info.at(c).nextB;
    }
    HFH_CHECK(c == h, "push-off traversal mismatch");
  } else {
    int c = g;
    for (size_t k = 0; k < wi.size(); k++) {
      X.push_back(copy[c]);
      c = t.info.at(c).prevB;
    }
    HFH_CHECK(c == g, "push-off traversal mismatch");
  }
  insert_after(nd.betaWords[j], base.tail, X);
  std::set<int> fresh;
  for (auto& [c, n] : copy) fresh.insert(n);
  inherit_groups(nd, t, {}, &fresh);
  return nd;
}

inline Diagram apply_handleslide_edges(const Traced& t, const EdgeRef& base, const EdgeRef& b2) {
  int dirp = b2.side == 0 ? +1 : -1;
  for (int tau : {dirp, -dirp}) {
    Diagram nd = apply_handleslide_dir(t, base, b2, tau);
    try {
      trace_and_validate(nd);
    } catch (const DiagramError&) {
      continue;
    }
    return nd;
  }
  throw InternalError("internal invariant failed: no embedded push-off direction");
}

inline Diagram apply_handleslide(const Traced& t, const FingerPath& fp) {
  HFH_CHECK(fp.outcome == FingerOutcome::ReturnedToSource, "handleslide needs a returning finger");
  HFH_CHECK(std::abs(fp.returnEdge - fp.startEdge) == 1, "handleslide needs an adjacent return");
  auto alphas = alpha_edges_from(t, fp.source, fp.base);
  int lo = std::min(fp.startEdge, fp.returnEdge);
  const Cycle& cyc = t.cycles[t.regions[fp.source].cycles[0]];
  int n = (int)cyc.edges.size();
  int pos = -1;
  for (int k = 0; k < n; k++)
    if (cyc.edges[k] == alphas[lo - 1]) pos = k;
  HFH_CHECK(pos >= 0, "adjacent-return alpha edge not found");
  EdgeRef b2 = cyc.edges[(pos + 1) % n];
  HFH_CHECK(b2.kind == 1, "expected a beta edge between adjacent alpha edges");
  return apply_handleslide_edges(t, fp.base, b2);
}

// ---------------------------------------------------------------------------
// pokes: give an isolated curve its first crossings.  The handedness of the
// bulge is a free choice, so candidate conventions are tried in a fixed order
// and the first one that re-traces and validates wins (each candidate that
// does is an honest isotopy of the same diagram).

inline int phantom_region(const Traced& t, int kind, int curve, int side) {
  for (int i = 0; i < (int)t.cycles.size(); i++) {
    const Cycle& c = t.cycles[i];
    if (c.phantom() && c.phantomKind == kind && c.phantomCurve == curve && c.phantomSide == side)
      return t.regionOfCycle[i];
  }
  throw InternalError("internal invariant failed: no phantom side for isolated curve");
}

// isolated alpha curve crossed by a bulge of the beta arc u->v
inline Diagram apply_poke_alpha(const Traced& t, int curve, const EdgeRef& base, int variant) {
  Diagram nd = t.d;
  nd.regionGroups.clear();
  int p = max_crossing_id(nd) + 1, q = p + 1;
  int sp = (variant & 1) ? -1 : +1;
  nd.sign[p] = sp;
  nd.sign[q] = -sp;
  HFH_CHECK(nd.alphaWords[curve].empty(), "poke target is not isolated");
  nd.alphaWords[curve] = {p, q};
  auto* bw = word_containing(nd.betaWords, base.tail);
  HFH_CHECK(bw, "poke base not on any beta curve");
  insert_after(*bw, base.tail, {p, q});
  int baseRegion = t.arc_side_region(base);
  int s = phantom_region(t, 0, curve, 0) == baseRegion ? 0 : 1;
  HFH_CHECK(phantom_region(t, 0, curve, s) == baseRegion, "poke base not next to the isolated curve");
  int far = phantom_region(t, 0, curve, 1 - s);
  int sand = (variant & 2) ? q : p;  // alpha piece pinched between the strands
  int other = (variant & 2) ? p : q;
  inherit_groups(nd, t, {{{{0, sand, -1}}, {}, -1}, {{{0, other, -1}}, {}, far}});
  return nd;
}

// isolated beta curve pushed across the alpha arc a
inline Diagram apply_poke_beta(const Traced& t, int curve, const EdgeRef& a, int variant) {
  Diagram nd = t.d;
  nd.regionGroups.clear();
  int p = max_crossing_id(nd) + 1, q = p + 1;
  int sp = (variant & 1) ? -1 : +1;
  nd.sign[p] = sp;
  nd.sign[q] = -sp;
  HFH_CHECK(nd.betaWords[curve].empty(), "poke target is not isolated");
  nd.betaWords[curve] = {p, q};
  auto* aw = word_containing(nd.alphaWords, a.tail);
  HFH_CHECK(aw, "poke target arc not on any alpha curve");
  if (variant & 2)
    insert_after(*aw, a.tail, {q, p});
  else
    insert_after(*aw, a.tail, {p, q});
  int baseRegion = t.arc_side_region(a);
  int s = phantom_region(t, 1, curve, 0) == baseRegion ? 0 : 1;
  HFH_CHECK(phantom_region(t, 1, curve, s) == baseRegion, "poked arc not next to the isolated curve");
  int far = phantom_region(t, 1, curve, 1 - s);
  // tip of the bulge on one side, the rest of the circle on the other
  inherit_groups(nd, t, {{{{1, p, -1}}, {{1, q, -1}}, -1}, {{{1, q, -1}}, {}, far}});
  return nd;
}

// two isolated curves crossed with each other
inline Diagram apply_poke_double(const Traced& t, int ac, int bc, int sa, int sb, int variant) {
  Diagram nd = t.d;
  nd.regionGroups.clear();
  int p = max_crossing_id(nd) + 1, q = p + 1;
  int sp = (variant & 1) ? -1 : +1;
  nd.sign[p] = sp;
  nd.sign[q] = -sp;
  HFH_CHECK(nd.alphaWords[ac].empty() && nd.betaWords[bc].empty(), "poke targets are not isolated");
  nd.alphaWords[ac] = {p, q};
  nd.betaWords[bc] = {p, q};
  int R = phantom_region(t, 0, ac, sa);
  HFH_CHECK(R == phantom_region(t, 1, bc, sb), "double poke sides bound different regions");
  int farA = phantom_region(t, 0, ac, 1 - sa);
  int farB = phantom_region(t, 1, bc, 1 - sb);
  int u = (variant & 2) ? q : p, v = (variant & 2) ? p : q;
  inherit_groups(nd, t, {{{{0, u, -1}, {1, u, -1}}, {}, -1},
                         {{{0, u, -1}, {1, v, -1}}, {}, farB},
                         {{{0, v, -1}, {1, u, -1}}, {}, farA},
                         {{{0, v, -1}, {1, v, -1}}, {}, R}});
  return nd;
}

// ---------------------------------------------------------------------------
// move log

struct MoveRecord {
  std::string params;
  std::string before = "-", after = "-";  // complexity, when defined
};

struct MoveLog {
  std::vector<MoveRecord> moves;
  std::string str() const {
    std::ostringstream os;
    for (auto& m : moves) os << m.params << " | " << m.before << " -> " << m.after << "\n";
    return os.str();
  }
};

inline MoveLog parse_move_log(const std::string& text) {
  MoveLog log;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MoveRecord m;
    auto bar = line.find(" | ");
    if (bar == std::string::npos) {
      m.params = line;
    } else {
      m.params = line.substr(0, bar);
      std::string rest = line.substr(bar + 3);
      auto arrow = rest.find(" -> ");
      if (arrow == std::string::npos) throw DiagramError("bad move log line: " + line);
      m.before = rest.substr(0, arrow);
      m.after = rest.substr(arrow + 4);
    }
    log.moves.push_back(std::move(m));
  }
  return log;
}

inline Diagram apply_move(const Traced& t, const std::string& params) {
  std::istringstream in(params);
  std::string kind;
  in >> kind;
  auto want = [&](bool ok) {
    if (!ok) throw DiagramError("bad move parameters: " + params);
  };
  if (kind == "finger" || kind == "kill") {
    FingerSpec fs;
    fs.base.kind = 1;
    want(!!(in >> fs.base.tail >> fs.base.side));
    std::string tok;
    while (in >> tok) {
      auto colon = tok.find(':');
      want(colon != std::string::npos);
      CrossedArc ca;
      try {
        ca.tail = std::stoi(tok.substr(0, colon));
        ca.fromSide = std::stoi(tok.substr(colon + 1));
      } catch (...) { want(false); }
      fs.crossed.push_back(ca);
    }
    want(!fs.crossed.empty());
    return apply_finger_spec(t, fs);
  }
  if (kind == "handleslide") {
    EdgeRef base{1, -1, -1}, b2{1, -1, -1};
    want(!!(in >> base.tail >> base.side >> b2.tail >> b2.side));
    return apply_handleslide_edges(t, base, b2);
  }
  if (kind == "poke-alpha") {
    int curve, variant;
    EdgeRef base{1, -1, -1};
    want(!!(in >> curve >> base.tail >> base.side >> variant));
    return apply_poke_alpha(t, curve - 1, base, variant);
  }
  if (kind == "poke-beta") {
    int curve, variant;
    EdgeRef a{0, -1, -1};
    want(!!(in >> curve >> a.tail >> a.side >> variant));
    return apply_poke_beta(t, curve - 1, a, variant);
  }
  if (kind == "poke-double") {
    int ac, bc, sa, sb, variant;
    want(!!(in >> ac >> bc >> sa >> sb >> variant));
    return apply_poke_double(t, ac - 1, bc - 1, sa, sb, variant);
  }
  throw DiagramError("unknown move kind '" + kind + "'");
}

inline Diagram replay(const MoveLog& log, Diagram d) {
  for (auto& m : log.moves) {
    Traced t = trace_and_validate(d);
    d = apply_move(t, m.params);
  }
  trace_and_validate(d);
  return d;
}

// ---------------------------------------------------------------------------
// step 1a: every curve must cross something

namespace detail {

inline std::string complexity_or_dash(const Traced& t) {
  for (auto& r : t.regions)
    if (!r.disk()) return "-";
  return complexity(t).str();
}

inline Diagram try_move(const Traced& t, const std::string& params) {
  Diagram nd = apply_move(t, params);
  trace_and_validate(nd);  // throws on an inconsistent candidate
  return nd;
}

inline void log_move(MoveLog* log, const std::string& params, const std::string& before,
                     const Diagram& nd) {
  if (!log) return;
  MoveRecord m;
  m.params = params;
  m.before = before;
  m.after = complexity_or_dash(trace_and_validate(nd));
  log->moves.push_back(std::move(m));
}

// first isolated curve in fixing order: alphas by index, then betas
inline std::pair<int, int> first_isolated(const Diagram& d) {
  for (int i = 0; i < (int)d.alphaWords.size(); i++)
    if (d.alphaWords[i].empty()) return {0, i};
  for (int i = 0; i < (int)d.betaWords.size(); i++)
    if (d.betaWords[i].empty()) return {1, i};
  return {-1, -1};
}

// least real edge of the requested kind on the boundary of a region
inline std::optional<EdgeRef> least_edge(const Traced& t, int region, int kind) {
  std::optional<EdgeRef> best;
  for (int ci : t.regions[region].cycles) {
    for (auto& e : t.cycles[ci].edges)
      if (e.kind == kind && (!best || e.tail < best->tail || (e.tail == best->tail && e.side < best->side)))
        best = e;
  }
  return best;
}

// an isolated curve of the other family adjacent to the region, if any
inline std::optional<std::pair<int, int>> isolated_partner(const Traced& t, int region, int kind) {
  for (int i = 0; i < (int)t.cycles.size(); i++) {
    const Cycle& c = t.cycles[i];
    if (c.phantom() && c.phantomKind == kind && t.regionOfCycle[i] == region)
      return std::make_pair(c.phantomCurve, c.phantomSide);
  }
  return std::nullopt;
}

inline Diagram fix_one_isolated(const Traced& t, int kind, int curve, MoveLog* log) {
  std::string before = complexity_or_dash(t);
  for (int side = 0; side < 2; side++) {
    int region = phantom_region(t, kind, curve, side);
    // prefer a real edge of the other family next to the curve
    auto e = least_edge(t, region, 1 - kind);
    if (e) {
      std::string head = kind == 0 ? "poke-alpha" : "poke-beta";
      for (int variant = 0; variant < 4; variant++) {
        std::ostringstream os;
        os << head << " " << curve + 1 << " " << e->tail << " " << e->side << " " << variant;
        try {
          Diagram nd = try_move(t, os.str());
          log_move(log, os.str(), before, nd);
          return nd;
        } catch (const std::exception&) {}
      }
      throw InternalError("internal invariant failed: no consistent poke convention");
    }
    // otherwise look for an isolated curve of the other family to cross
    auto partner = isolated_partner(t, region, 1 - kind);
    if (partner) {
      int ac = kind == 0 ? curve : partner->first;
      int bc = kind == 0 ? partner->first : curve;
      int sa = kind == 0 ? side : partner->second;
      int sb = kind == 0 ? partner->second : side;
      for (int variant = 0; variant < 4; variant++) {
        std::ostringstream os;
        os << "poke-double " << ac + 1 << " " << bc + 1 << " " << sa << " " << sb << " " << variant;
        try {
          Diagram nd = try_move(t, os.str());
          log_move(log, os.str(), before, nd);
          return nd;
        } catch (const std::exception&) {}
      }
      throw InternalError("internal invariant failed: no consistent poke convention");
    }
  }
  throw DiagramError("isolated curve has no neighbouring curve of the other family to cross");
}

}  // namespace detail

inline Diagram ensure_intersections(Diagram d, MoveLog* log = nullptr) {
  for (;;) {
    auto [kind, curve] = detail::first_isolated(d);
    if (kind < 0) return d;
    Traced t = trace_and_validate(d);
    d = detail::fix_one_isolated(t, kind, curve, log);
  }
}

// ---------------------------------------------------------------------------
// step 1b: every region must be a disk

inline Diagram kill_non_disk_regions(Diagram d, MoveLog* log = nullptr) {
  for (;;) {
    Traced t = trace_and_validate(d);
    int R = -1;
    int excess = 0;
    for (auto& r : t.regions) {
      if (!r.disk() && R < 0) R = r.id;
      excess += (int)r.cycles.size() - 1;
    }
    if (R < 0) return d;
    // connect two boundary cycles of R: push the least beta edge across the
    // least alpha edge on a different cycle
    EdgeRef base{1, -1, -1};
    int baseCyc = -1;
    for (int ci : t.regions[R].cycles) {
      HFH_CHECK(!t.cycles[ci].phantom(), "non-disk region still touches an isolated curve");
      for (auto& e : t.cycles[ci].edges)
        if (e.kind == 1 && (base.tail < 0 || e.tail < base.tail)) {
          base = e;
          baseCyc = ci;
        }
    }
    HFH_CHECK(base.tail >= 0, "non-disk region without a beta edge");
    EdgeRef a{0, -1, -1};
    for (int ci : t.regions[R].cycles) {
      if (ci == baseCyc) continue;
      for (auto& e : t.cycles[ci].edges)
        if (e.kind == 0 && (a.tail < 0 || e.tail < a.tail)) a = e;
    }
    HFH_CHECK(a.tail >= 0, "no alpha edge on a second boundary cycle");
    std::ostringstream os;
    os << "kill " << base.tail << " " << base.side << " " << a.tail << ":" << a.side;
    std::string before = detail::complexity_or_dash(t);
    Diagram nd = apply_move(t, os.str());
    Traced t2 = trace_and_validate(nd);
    int excess2 = 0;
    for (auto& r : t2.regions) excess2 += (int)r.cycles.size() - 1;
    HFH_CHECK(excess2 < excess, "boundary cycle count did not decrease");
    detail::log_move(log, os.str(), before, nd);
    d = std::move(nd);
  }
}

// ---------------------------------------------------------------------------
// step 2: drive the complexity down

struct NiceResult {
  Diagram d;
  MoveLog log;
};

inline NiceResult make_nice(const Diagram& start) {
  NiceResult res;
  res.d = ensure_intersections(start, &res.log);
  res.d = kill_non_disk_regions(res.d, &res.log);
  Traced t = trace_and_validate(res.d);
  while (!is_nice(t)) {
    Complexity before = complexity(t);
    int dist = before.dist;
    auto order = ordered_bad_regions(t, dist);
    HFH_CHECK(!order.empty(), "not nice but no bad region at the top distance");
    int Dm = order.back();
    // neighbour across a beta edge one step closer to the basepoint
    int Dstar = -1;
    const Cycle& cyc = t.cycles[t.regions[Dm].cycles[0]];
    for (auto& e : cyc.edges) {
      if (e.kind != 1) continue;
      int o = t.arc_other_side(e);
      if (t.regions[o].dist == dist - 1 && (Dstar < 0 || o < Dstar)) Dstar = o;
    }
    HFH_CHECK(Dstar >= 0, "worst region has no closer beta neighbour");
    EdgeRef bstar{1, -1, -1};
    for (auto& e : cyc.edges)
      if (e.kind == 1 && t.arc_other_side(e) == Dstar && (bstar.tail < 0 || e.tail < bstar.tail))
        bstar = e;
    auto alphas = alpha_edges_from(t, Dm, bstar);
    int n = (int)alphas.size();
    int hi = n + 1;
    bool moved = false;
    for (int j = 2; j <= n && !moved; j++) {
      FingerPath fp = trace_finger(t, Dm, bstar, j);
      if (fp.outcome != FingerOutcome::ReturnedToSource) {
        std::string params = finger_params("finger", {fp.base, fp.crossed});
        res.d = apply_finger_move(t, fp);
        detail::log_move(&res.log, params, before.str(), res.d);
        moved = true;
      } else {
        int i = fp.returnEdge;
        // an immediate return through the other neighbour of a_j is the same
        // corridor picture mirrored, so both adjacent returns slide
        HFH_CHECK(i == j - 1 || (i > j && i < hi), "crossing fingers");
        if (i == j + 1 || i == j - 1) {
          Diagram nd = apply_handleslide(t, fp);
          const Cycle& c2 = t.cycles[t.regions[Dm].cycles[0]];
          int pos = -1;
          for (int k = 0; k < (int)c2.edges.size(); k++)
            if (c2.edges[k] == alphas[std::min(i, j) - 1]) pos = k;
          EdgeRef b2 = c2.edges[(pos + 1) % c2.edges.size()];
          std::ostringstream os;
          os << "handleslide " << fp.base.tail << " " << fp.base.side << " " << b2.tail << " " << b2.side;
          res.d = std::move(nd);
          detail::log_move(&res.log, os.str(), before.str(), res.d);
          moved = true;
        } else {
          hi = i;
        }
      }
    }
    HFH_CHECK(moved, "no applicable move for the worst region");
    t = trace_and_validate(res.d);
    Complexity after = complexity(t);
    HFH_CHECK(after < before, "complexity failed to decrease");
  }
  return res;
}

}  // namespace hfh
