#pragma once

// Exact integer linear algebra over free abelian groups: Hermite forms,
// integer kernels, saturation and lattice membership.  Everything here uses
// arbitrary-precision integers; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "nefmm/error.hpp"

namespace nefmm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw InputError("lattice/dimension-mismatch", "dot of unequal lengths");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec vec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline bool is_zero(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline IntVec unit_vec(std::size_t n, std::size_t k) {
  IntVec e(n, 0);
  e[k] = 1;
  return e;
}

// Rectangular matrix of arbitrary-precision integers stored by rows.
class IntMat {
public:
  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : cols_(c), rows_(r, IntVec(c, 0)) {}

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = 1;
    return m;
  }

  static IntMat from_rows(std::vector<IntVec> rows) {
    IntMat m;
    m.rows_ = std::move(rows);
    m.cols_ = m.rows_.empty() ? 0 : m.rows_[0].size();
    for (const auto& r : m.rows_)
      if (r.size() != m.cols_)
        throw InputError("lattice/dimension-mismatch", "ragged matrix rows");
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_.empty(); }

  Int& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const Int& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  IntVec& row(std::size_t i) { return rows_[i]; }
  const IntVec& row(std::size_t i) const { return rows_[i]; }
  const std::vector<IntVec>& row_list() const { return rows_; }

  void append_row(IntVec r) {
    if (rows_.empty()) cols_ = r.size();
    if (r.size() != cols_)
      throw InputError("lattice/dimension-mismatch", "appending row of wrong length");
    rows_.push_back(std::move(r));
  }

  IntMat transpose() const {
    IntMat t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.rows_[j][i] = rows_[i][j];
    return t;
  }

  bool operator==(const IntMat& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

private:
  std::size_t cols_ = 0;
  std::vector<IntVec> rows_;
};

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows())
    throw InputError("lattice/dimension-mismatch", "matrix product shapes");
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

struct HermiteResult {
  IntMat h;
  IntMat u;                            // unimodular, u * input = h
  std::vector<std::size_t> pivot_cols; // pivot column of each pivot row, top to bottom
  std::size_t rank = 0;
};

// Row-style Hermite normal form, lower-triangular convention.  Columns are
// processed right to left and pivot rows accumulate at the bottom: in h the
// trailing nonzero entry of each nonzero row is its pivot, pivots are
// positive, pivot columns strictly increase down the rows, and every entry
// below a pivot in the same column lies in [0, pivot).  Zero rows, if any,
// sit at the top.  For a full-rank square input h is lower triangular with
// positive diagonal.  This is the one place the convention is defined; the
// rest of the project relies on it only through the functions below.
inline HermiteResult hermite_form(const IntMat& m) {
  if (m.empty()) throw InputError("lattice/empty", "hermite_form of empty matrix");
  const std::size_t nr = m.rows(), nc = m.cols();
  HermiteResult res;
  res.h = m;
  res.u = IntMat::identity(nr);
  IntMat& h = res.h;
  IntMat& u = res.u;

  auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
    // row dst -= q * row src
    for (std::size_t j = 0; j < nc; ++j) h.at(dst, j) -= q * h.at(src, j);
    for (std::size_t j = 0; j < nr; ++j) u.at(dst, j) -= q * u.at(src, j);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(h.row(a), h.row(b));
    std::swap(u.row(a), u.row(b));
  };
  auto row_negate = [&](std::size_t i) {
    for (auto& x : h.row(i)) x = -x;
    for (auto& x : u.row(i)) x = -x;
  };

  std::vector<std::size_t> pivots_rev;
  std::size_t next = nr;  // pivot rows fill nr-1, nr-2, ...
  for (std::size_t cc = nc; cc-- > 0 && next > 0;) {
    const std::size_t r = next - 1;
    // Euclid among rows 0..r until at most one nonzero remains in column cc.
    for (;;) {
      std::size_t best = nr;
      for (std::size_t i = 0; i <= r; ++i)
        if (h.at(i, cc) != 0 &&
            (best == nr || abs(h.at(i, cc)) < abs(h.at(best, cc))))
          best = i;
      if (best == nr) break;  // column all zero among active rows
      bool others = false;
      for (std::size_t i = 0; i <= r; ++i) {
        if (i == best || h.at(i, cc) == 0) continue;
        row_axpy(i, best, floor_div(h.at(i, cc), h.at(best, cc)));
        others = true;
      }
      if (!others) {
        row_swap(best, r);
        break;
      }
    }
    if (h.at(r, cc) == 0) continue;  // no pivot in this column
    if (h.at(r, cc) < 0) row_negate(r);
    // Reduce the entries below the pivot (pivot rows of later columns).
    for (std::size_t i = r + 1; i < nr; ++i)
      if (h.at(i, cc) != 0) row_axpy(i, r, floor_div(h.at(i, cc), h.at(r, cc)));
    pivots_rev.push_back(cc);
    --next;
  }
  res.rank = pivots_rev.size();
  res.pivot_cols.assign(pivots_rev.rbegin(), pivots_rev.rend());
  return res;
}

inline std::size_t lattice_rank(const IntMat& m) {
  if (m.empty()) return 0;
  return hermite_form(m).rank;
}

// Basis of the saturated sublattice { v : v * m^T = 0 }, returned as rows.
// The zero rows of the Hermite form of m^T mark the left kernel; the matching
// rows of the unimodular factor are a basis, and such a kernel is always
// saturated.
inline IntMat integer_kernel(const IntMat& m) {
  IntMat a = m.transpose();
  if (a.empty()) {
    // No constraints: kernel is all of Z^cols(m)... but transpose of an
    // empty matrix loses the length, so handle via m directly.
    return IntMat::identity(m.cols());
  }
  HermiteResult hf = hermite_form(a);
  const std::size_t zero_rows = a.rows() - hf.rank;
  IntMat k(0, 0);
  for (std::size_t i = 0; i < zero_rows; ++i) k.append_row(hf.u.row(i));
  return k;
}

// Saturation of the lattice spanned by the rows of m: kernel of the kernel.
inline IntMat saturate(const IntMat& m) {
  IntMat k = integer_kernel(m);
  if (k.rows() == 0) return IntMat::identity(m.cols());
  return integer_kernel(k);
}

// Solves x * basis = v over the integers; nullopt when v is not in the
// row lattice.  basis need not be square.
inline std::optional<IntVec> solve_in_lattice(const IntMat& basis, const IntVec& v) {
  if (v.size() != basis.cols())
    throw InputError("lattice/dimension-mismatch", "solve_in_lattice length");
  HermiteResult hf = hermite_form(basis);
  const std::size_t nr = basis.rows();
  IntVec rem = v;
  IntVec y(nr, 0);
  // Pivot rows sit at the bottom; their pivot is the trailing nonzero entry,
  // and everything above a pivot in its column is zero.  Solve bottom-up.
  for (std::size_t t = hf.rank; t-- > 0;) {
    const std::size_t r = nr - hf.rank + t;
    const std::size_t c = hf.pivot_cols[t];
    const Int& p = hf.h.at(r, c);
    if (rem[c] % p != 0) return std::nullopt;
    Int q = rem[c] / p;
    y[r] = q;
    if (q != 0)
      for (std::size_t j = 0; j < v.size(); ++j) rem[j] -= q * hf.h.at(r, j);
  }
  if (!is_zero(rem)) return std::nullopt;
  // x = y * u
  IntVec x(nr, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < nr; ++j) x[j] += y[i] * hf.u.at(i, j);
  }
  return x;
}

// True iff the subgroup generated by the vectors equals Z^rank.
inline bool generates_full_lattice(const std::vector<IntVec>& vecs, std::size_t rank) {
  for (const auto& v : vecs)
    if (v.size() != rank)
      throw InputError("lattice/dimension-mismatch",
                       "vector of wrong rank in generates_full_lattice");
  if (rank == 0) return true;
  if (vecs.empty()) return false;
  HermiteResult hf = hermite_form(IntMat::from_rows(vecs));
  if (hf.rank != rank) return false;
  Int index = 1;
  const std::size_t nr = vecs.size();
  for (std::size_t t = 0; t < hf.rank; ++t)
    index *= hf.h.at(nr - hf.rank + t, hf.pivot_cols[t]);
  return index == 1;
}

// Ambient-basis overload: true iff the vectors generate the lattice spanned
// by the rows of ambient.  Every vector must already lie in that lattice.
inline bool generates_full_lattice(const std::vector<IntVec>& vecs, const IntMat& ambient) {
  std::vector<IntVec> coords;
  coords.reserve(vecs.size());
  for (const auto& v : vecs) {
    auto x = solve_in_lattice(ambient, v);
    if (!x)
      throw InputError("lattice/dimension-mismatch",
                       "vector outside the ambient lattice");
    coords.push_back(*x);
  }
  return generates_full_lattice(coords, ambient.rows());
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMat& m) {
  if (m.rows() != m.cols())
    throw InputError("lattice/dimension-mismatch", "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a.at(s, k) == 0) ++s;
      if (s == n) return 0;
      std::swap(a.row(k), a.row(s));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

}  // namespace nefmm
