#pragma once
// Dense bit-packed linear algebra over GF(2).

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hfh {

struct F2Matrix {
  int rows = 0, cols = 0;
  int words = 0;  // 64-bit words per row
  std::vector<uint64_t> bits;

  F2Matrix() = default;
  F2Matrix(int r, int c)
      : rows(r), cols(c), words((c + 63) / 64), bits((size_t)r * ((c + 63) / 64), 0) {}

  bool get(int r, int c) const {
    return (bits[(size_t)r * words + c / 64] >> (c % 64)) & 1u;
  }
  void set(int r, int c, bool v) {
    uint64_t& w = bits[(size_t)r * words + c / 64];
    uint64_t m = uint64_t(1) << (c % 64);
    if (v) w |= m; else w &= ~m;
  }
  void flip(int r, int c) { bits[(size_t)r * words + c / 64] ^= uint64_t(1) << (c % 64); }

  // row r ^= row s
  void xor_rows(int r, int s) {
    uint64_t* a = &bits[(size_t)r * words];
    const uint64_t* b = &bits[(size_t)s * words];
    for (int i = 0; i < words; i++) a[i] ^= b[i];
  }

  F2Matrix transpose() const {
    F2Matrix t(cols, rows);
    for (int r = 0; r < rows; r++)
      for (int c = 0; c < cols; c++)
        if (get(r, c)) t.set(c, r, true);
    return t;
  }

  // m * v over GF(2), v given as bit vector of length cols
  std::vector<bool> apply(const std::vector<bool>& v) const {
    std::vector<bool> out(rows, false);
    for (int r = 0; r < rows; r++) {
      uint64_t acc = 0;
      for (int c = 0; c < cols; c++)
        if (get(r, c) && v[c]) acc ^= 1;
      out[r] = acc & 1;
    }
    return out;
  }

  bool is_zero() const {
    for (uint64_t w : bits) if (w) return false;
    return true;
  }
};

// Rank by word-parallel Gaussian elimination (works on a copy).
inline int f2_rank(const F2Matrix& m) {
  F2Matrix a = m;
  int rank = 0;
  for (int c = 0; c < a.cols && rank < a.rows; c++) {
    int pivot = -1;
    for (int r = rank; r < a.rows; r++)
      if (a.get(r, c)) { pivot = r; break; }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int i = 0; i < a.words; i++)
        std::swap(a.bits[(size_t)pivot * a.words + i], a.bits[(size_t)rank * a.words + i]);
    for (int r = 0; r < a.rows; r++)
      if (r != rank && a.get(r, c)) a.xor_rows(r, rank);
    rank++;
  }
  return rank;
}

// Naive reference eliminator: bit-by-bit, no word tricks.  Oracle for f2_rank.
inline int f2_rank_naive(const F2Matrix& m) {
  std::vector<std::vector<int>> a(m.rows, std::vector<int>(m.cols, 0));
  for (int r = 0; r < m.rows; r++)
    for (int c = 0; c < m.cols; c++) a[r][c] = m.get(r, c) ? 1 : 0;
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; c++) {
    int pivot = -1;
    for (int r = rank; r < m.rows; r++)
      if (a[r][c]) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(a[pivot], a[rank]);
    for (int r = 0; r < m.rows; r++)
      if (r != rank && a[r][c])
        for (int k = 0; k < m.cols; k++) a[r][k] ^= a[rank][k];
    rank++;
  }
  return rank;
}

// dim ker(dOut) - rank(dIn), for a graded piece sitting between dIn and dOut.
// Requires dOut * dIn = 0.
inline int f2_homology_rank(const F2Matrix& dIn, const F2Matrix& dOut) {
  if (dIn.cols > 0 && dOut.rows > 0 && dIn.rows != dOut.cols)
    throw std::invalid_argument("f2_homology_rank: dimension mismatch");
  // check composition is zero: dOut * dIn
  if (dIn.cols > 0 && dOut.rows > 0) {
    for (int c = 0; c < dIn.cols; c++) {
      std::vector<bool> v(dIn.cols, false);
      v[c] = true;
      auto mid = dIn.apply(v);
      auto top = dOut.apply(mid);
      for (bool b : top)
        if (b) throw std::invalid_argument("f2_homology_rank: composition nonzero");
    }
  }
  int n = dOut.cols;  // dimension of the middle space
  int kerOut = n - f2_rank(dOut);
  return kerOut - f2_rank(dIn);
}

}  // namespace hfh
