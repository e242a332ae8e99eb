#include <catch2/catch_amalgamated.hpp>

#include "hfh/floer.hpp"

using namespace hfh;

static Diagram torus_one_crossing() {
  Diagram d;
  d.genus = 1;
  d.alphaWords = {{1}};
  d.betaWords = {{1}};
  d.sign[1] = 1;
  d.wps = {{1, 0}};
  return d;
}

static Diagram three_squares() {
  Diagram d;
  d.genus = 1;
  d.alphaWords = {{1, 2, 3}};
  d.betaWords = {{1, 2, 3}};
  d.sign = {{1, 1}, {2, 1}, {3, 1}};
  d.wps = {{1, 0}};
  return d;
}

// two circles on the sphere crossing twice: four bigon regions, two
// basepoints.  The basepoint conditions force w1/w2 into bigons of the same
// corner type, so the two remaining bigons cancel mod 2.
static Diagram sphere_two_points() {
  Diagram d;
  d.genus = 0;
  d.alphaWords = {{1, 2}};
  d.betaWords = {{1, 2}};
  d.sign = {{1, 1}, {2, -1}};
  d.wps = {{1, 0}, {1, 3}};
  return d;
}

TEST_CASE("one generator, no disks") {
  Traced t = trace_and_validate(torus_one_crossing());
  auto gens = enumerate_generators(t);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].coords == std::vector<int>{1});
  CHECK(find_empty_disks(t, gens).empty());
  FloerComplex f = build_complex(t);
  auto ranks = homology_ranks(f, false);
  CHECK(total_rank(ranks) == 1);
}

TEST_CASE("three squares: three classes, no differential") {
  Traced t = trace_and_validate(three_squares());
  auto gens = enumerate_generators(t);
  REQUIRE(gens.size() == 3);
  FloerComplex f = build_complex(t);
  // each generator sits in its own class: no two are connected by a domain
  CHECK(f.spinc[0] != f.spinc[1]);
  CHECK(f.spinc[1] != f.spinc[2]);
  CHECK(f.spinc[0] != f.spinc[2]);
  CHECK(f.disks.empty());
  CHECK(total_rank(homology_ranks(f, false)) == 3);
}

TEST_CASE("two-pointed sphere: cancelling bigon pair") {
  Traced t = trace_and_validate(sphere_two_points());
  REQUIRE(t.regions.size() == 4);
  for (auto& r : t.regions) CHECK(r.cls == RegionClass::Bigon);
  auto gens = enumerate_generators(t);
  REQUIRE(gens.size() == 2);
  FloerComplex f = build_complex(t);
  // both empty bigons run the same way, so they cancel mod 2
  REQUIRE(f.disks.size() == 2);
  CHECK(f.disks[0].from == f.disks[1].from);
  CHECK(f.disks[0].to == f.disks[1].to);
  CHECK(differential(f, false).empty());
  CHECK(total_rank(homology_ranks(f, false)) == 2);
}

TEST_CASE("invalid basepoint placement is rejected") {
  // putting both w's in bigons on the same side of beta violates the
  // one-per-component condition (and would break d^2 = 0)
  Diagram d = sphere_two_points();
  d.wps = {{1, 0}, {1, 1}};
  CHECK_THROWS_AS(trace_and_validate(d), DiagramError);
}

TEST_CASE("disk search agrees with the exhaustive oracle") {
  for (auto diag : {three_squares(), sphere_two_points()}) {
    Traced t = trace_and_validate(diag);
    auto gens = enumerate_generators(t);
    std::map<Gen, int> toIndex;
    for (int i = 0; i < (int)gens.size(); i++) toIndex[gens[i]] = i;
    auto disks = find_empty_disks(t, gens);
    for (int i = 0; i < (int)gens.size(); i++)
      for (int j = 0; j < (int)gens.size(); j++) {
        if (i == j) continue;
        auto oracle = bruteforce_domains(t, gens[i], gens[j]);
        std::vector<std::vector<int>> mine;
        for (auto& dk : disks)
          if (dk.from == i && dk.to == j) mine.push_back(dk.coeffs);
        std::sort(mine.begin(), mine.end());
        std::sort(oracle.begin(), oracle.end());
        REQUIRE(mine == oracle);
      }
  }
}

TEST_CASE("maslov index of elementary domains") {
  Traced t = trace_and_validate(sphere_two_points());
  auto gens = enumerate_generators(t);
  auto disks = find_empty_disks(t, gens);
  for (auto& d : disks) {
    std::vector<Int> dom(d.coeffs.begin(), d.coeffs.end());
    CHECK(maslov_index(t, dom, gens[d.from], gens[d.to]) == 1);
  }
}

TEST_CASE("knot mode on the two-pointed sphere") {
  Diagram d = sphere_two_points();
  // z's go in the other two bigons; each complement component gets one
  d.zps = {{1, 1}, {1, 2}};
  Traced t = trace_and_validate(d);
  FloerComplex f = build_complex(t);
  // the remaining bigons hit a z, so the knot differential is empty
  CHECK(differential(f, true).empty());
  auto ranks = homology_ranks(f, true);
  CHECK(total_rank(ranks) == 2);
}

TEST_CASE("nice diagram check guards the search") {
  // the disk search itself only relies on the combinatorics, but niceness is
  // what makes it complete; assert our fixtures really are nice
  for (auto diag : {torus_one_crossing(), three_squares(), sphere_two_points()}) {
    Traced t = trace_and_validate(diag);
    CHECK(is_nice(t));
  }
}
