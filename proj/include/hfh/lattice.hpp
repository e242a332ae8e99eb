#pragma once
// Periodic domains and admissibility.  A periodic domain is an integer
// combination of regions with multiplicity 0 at every w region whose boundary
// is a union of full curves (no net corner at any crossing); the diagram is
// admissible when every nonzero periodic domain has coefficients of both
// signs.

#include "hfh/exact.hpp"
#include "hfh/floer.hpp"

namespace hfh {

// basis of the periodic domain lattice: kernel of the corner relations with
// the w multiplicities pinned to zero
inline std::vector<std::vector<Int>> periodic_domains(const Traced& t) {
  return echelon_kernel(col_echelon(boundary_constraints_pointed(t)));
}

inline int periodic_rank(const Traced& t) { return (int)periodic_domains(t).size(); }

inline bool is_admissible(const Traced& t) {
  auto ks = periodic_domains(t);
  if (ks.empty()) return true;
  int nr = (int)t.regions.size(), nk = (int)ks.size();
  // admissible iff the cone { c : sum_i c_i K_i >= 0, total >= 1 } is empty;
  // a rational point scales and rounds to a nonzero nonnegative lattice
  // domain and vice versa
  std::vector<std::vector<Rat>> rows;
  for (int r = 0; r < nr; r++) {
    std::vector<Rat> row(nk + 1);
    for (int i = 0; i < nk; i++) row[i] = Rat(ks[i][r]);
    rows.push_back(std::move(row));
  }
  std::vector<Rat> total(nk + 1);
  for (int i = 0; i < nk; i++)
    for (int r = 0; r < nr; r++) total[i] += Rat(ks[i][r]);
  total[nk] = 1;
  rows.push_back(std::move(total));
  return !fm_feasible(std::move(rows), nk);
}

}  // namespace hfh
