#pragma once
// Exact integer/rational linear algebra: Smith normal form with recorded
// transforms (integer kernels, solvability of A x = b over Z) and
// Fourier-Motzkin feasibility of rational inequality systems.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "hfh/diagram.hpp"  // HFH_CHECK

namespace hfh {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;
  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  Int& at(int r, int c) { return a[(size_t)r * cols + c]; }
  const Int& at(int r, int c) const { return a[(size_t)r * cols + c]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
  }
  std::vector<Int> apply(const std::vector<Int>& v) const {
    HFH_CHECK((int)v.size() == cols, "IntMat::apply size");
    std::vector<Int> out(rows);
    for (int r = 0; r < rows; r++)
      for (int c = 0; c < cols; c++) out[r] += at(r, c) * v[c];
    return out;
  }
};

// Column echelon form over Z: A C = H with C unimodular.  Column k has its
// first nonzero entry (positive) in row pivotRow[k]; pivot rows strictly
// increase; columns >= rank are zero.  Earlier pivot columns are reduced mod
// the pivot in its row, which keeps entries from exploding.
struct ColEchelon {
  IntMat H, C;
  std::vector<int> pivotRow;
  int rank = 0;
  int rows = 0, cols = 0;
};

inline ColEchelon col_echelon(IntMat h) {
  ColEchelon e;
  e.rows = h.rows;
  e.cols = h.cols;
  e.C = IntMat::identity(h.cols);
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < h.rows; r++) std::swap(h.at(r, i), h.at(r, j));
    for (int r = 0; r < e.C.rows; r++) std::swap(e.C.at(r, i), e.C.at(r, j));
  };
  auto add_col = [&](int dst, int src, const Int& k) {  // col dst += k * col src
    for (int r = 0; r < h.rows; r++) h.at(r, dst) += k * h.at(r, src);
    for (int r = 0; r < e.C.rows; r++) e.C.at(r, dst) += k * e.C.at(r, src);
  };
  auto neg_col = [&](int j) {
    for (int r = 0; r < h.rows; r++) h.at(r, j) = -h.at(r, j);
    for (int r = 0; r < e.C.rows; r++) e.C.at(r, j) = -e.C.at(r, j);
  };
  int k = 0;
  for (int r = 0; r < h.rows && k < h.cols; r++) {
    // gcd the active columns on row r down to one nonzero
    for (;;) {
      int best = -1;
      int nz = 0;
      for (int j = k; j < h.cols; j++)
        if (h.at(r, j) != 0) {
          nz++;
          if (best < 0 || abs(h.at(r, j)) < abs(h.at(r, best))) best = j;
        }
      if (nz <= 1) {
        if (nz == 1) swap_cols(k, best);
        break;
      }
      for (int j = k; j < h.cols; j++) {
        if (j == best || h.at(r, j) == 0) continue;
        add_col(j, best, -h.at(r, j) / h.at(r, best));
      }
    }
    if (h.at(r, k) == 0) continue;  // no pivot in this row
    if (h.at(r, k) < 0) neg_col(k);
    // keep earlier pivot columns small in this row
    for (int j = 0; j < k; j++) {
      Int q = h.at(r, j) / h.at(r, k);
      if (q != 0) add_col(j, k, -q);
    }
    e.pivotRow.push_back(r);
    k++;
  }
  e.rank = k;
  e.H = std::move(h);
  return e;
}

// solve A x = b over the integers using A C = H: forward-substitute through
// the echelon columns, then map back through C.
inline std::optional<std::vector<Int>> echelon_solve(const ColEchelon& e, const std::vector<Int>& b) {
  HFH_CHECK((int)b.size() == e.rows, "echelon_solve size");
  std::vector<Int> y(e.cols, 0);
  int k = 0;
  for (int r = 0; r < e.rows; r++) {
    Int acc = 0;
    for (int j = 0; j < k; j++) acc += e.H.at(r, j) * y[j];
    Int resid = b[r] - acc;
    if (k < e.rank && e.pivotRow[k] == r) {
      if (resid % e.H.at(r, k) != 0) return std::nullopt;
      y[k] = resid / e.H.at(r, k);
      k++;
    } else if (resid != 0) {
      return std::nullopt;
    }
  }
  return e.C.apply(y);
}

// canonical representative of v modulo the column lattice of A (image of A),
// using its echelon form: unique per coset, so equal reductions mean equal
// cosets
inline std::vector<Int> reduce_mod_image(const ColEchelon& e, std::vector<Int> v) {
  HFH_CHECK((int)v.size() == e.rows, "reduce_mod_image size");
  auto floordiv = [](const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
  };
  for (int k = 0; k < e.rank; k++) {
    int r = e.pivotRow[k];
    Int q = floordiv(v[r], e.H.at(r, k));
    if (q != 0)
      for (int i = 0; i < e.rows; i++) v[i] -= q * e.H.at(i, k);
  }
  return v;
}

// basis of the integer kernel lattice of A: trailing columns of C
inline std::vector<std::vector<Int>> echelon_kernel(const ColEchelon& e) {
  std::vector<std::vector<Int>> out;
  for (int j = e.rank; j < e.cols; j++) {
    std::vector<Int> v(e.cols);
    for (int i = 0; i < e.cols; i++) v[i] = e.C.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

// determinant by fraction-free (Bareiss) elimination; used in tests and for
// certifying intersection matrices
inline Int int_det(IntMat m) {
  HFH_CHECK(m.rows == m.cols, "det of non-square matrix");
  int n = m.rows;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; k++) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; i++)
        if (m.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int c = 0; c < n; c++) std::swap(m.at(k, c), m.at(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++)
      for (int j = k + 1; j < n; j++) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin: decide whether { x : sum_i c_i x_i >= rhs for each row }
// is nonempty over the rationals.  A row is stored as n coefficients followed
// by the rhs.

inline bool fm_feasible(std::vector<std::vector<Rat>> rows, int nvars) {
  for (auto& r : rows) HFH_CHECK((int)r.size() == nvars + 1, "fm row size");
  for (int v = nvars - 1; v >= 0; v--) {
    std::vector<std::vector<Rat>> pos, neg, zero;
    for (auto& r : rows) {
      if (r[v] > 0) pos.push_back(std::move(r));
      else if (r[v] < 0) neg.push_back(std::move(r));
      else zero.push_back(std::move(r));
    }
    rows = std::move(zero);
    for (auto& p : pos)
      for (auto& n : neg) {
        // p: c x_v >= ..., n: -d x_v >= ...  combine d*p + c*n
        Rat c = p[v], d = -n[v];
        std::vector<Rat> r(v + 1);
        for (int i = 0; i < v; i++) r[i] = d * p[i] + c * n[i];
        r[v] = d * p[v + 1] + c * n[v + 1];  // rhs slot moves down
        rows.push_back(std::move(r));
      }
    // drop the eliminated column from the zero rows
    for (auto& r : rows)
      if ((int)r.size() == v + 2) r.erase(r.begin() + v);
    // dedupe would help performance; sizes stay small in our use
  }
  for (auto& r : rows)
    if (r[0] > 0) return false;  // 0 >= rhs with rhs > 0
  return true;
}

}  // namespace hfh
