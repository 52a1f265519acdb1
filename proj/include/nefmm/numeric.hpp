#pragma once

// Floating-point side of the pipeline: evaluating the cell matrix at torus
// points, the two factorizations, numeric rank with null bases, the Perron
// pair of a nonnegative matrix, the witness-point construction, and the
// open-set membership reports.
//
// Tolerances: residuals 1e-9 relative, rank pivots 1e-8 relative, Perron
// convergence 1e-12, null-vector entries 1e-6 of the largest.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "nefmm/cell_matrix.hpp"
#include "nefmm/error.hpp"

namespace nefmm {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

constexpr double kResidualTol = 1e-9;
constexpr double kRankTol = 1e-8;
constexpr double kPerronTol = 1e-12;
constexpr double kNullEntryTol = 1e-6;

// A point of the big torus: one nonzero value per base character of M, one
// per fiber direction, and one coefficient per character of the table.
struct TorusPoint {
  CVec base;   // n values
  CVec fiber;  // r values
  CVec coeff;  // one per character (coefficient id = character index)
};

inline Cplx ipow(Cplx x, long e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  Cplx r = 1.0;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline long to_long(const Int& x) { return x.convert_to<long>(); }

// chi(t) = prod base_i^{m_i} * fiber_a
inline Cplx char_value(const ExtChar& c, const TorusPoint& t) {
  Cplx v = t.fiber[c.a];
  for (std::size_t i = 0; i < c.m.size(); ++i)
    if (c.m[i] != 0) v *= ipow(t.base[long(i)], to_long(c.m[i]));
  return v;
}

inline void check_point(const CellMatrix& cm, const TorusPoint& t) {
  if (t.base.size() != long(cm.table.rank) || t.fiber.size() != cm.r() ||
      t.coeff.size() != long(cm.table.chars.size()))
    throw InputError("numeric/incomplete-point",
                     "torus point does not match the table dimensions");
}

// Entry (a,b) = sum over the cell of coeff * chi(t).
inline CMat evaluate_cells(const CellMatrix& cm, const TorusPoint& t) {
  check_point(cm, t);
  const int r = cm.r();
  CMat w = CMat::Zero(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int i : cm.table.cell[a][b]) w(a, b) += t.coeff[i] * char_value(cm.table.chars[i], t);
  return w;
}

inline CVec row_sums(const CMat& w) { return w.rowwise().sum(); }
inline CVec col_sums(const CMat& w) { return w.colwise().sum().transpose(); }

// Magnitude of the largest term entering any cell sum.  Residual and rank
// thresholds are measured against this rather than the evaluated entries,
// which can cancel to roundoff (every entry of a one-vertex block does).
inline double term_scale(const CellMatrix& cm, const TorusPoint& t) {
  double s = 0.0;
  for (int i = 0; i < int(cm.table.chars.size()); ++i)
    s = std::max(s, std::abs(t.coeff[i] * char_value(cm.table.chars[i], t)));
  return std::max(s, 1e-300);
}

struct Factors {
  CVec diag;  // values of the chosen diagonal characters
  CMat f1;    // diag^-1 * W, a function of the structure-1 base alone
  CMat f2;    // W * diag^-1, a function of the structure-2 base alone
};

inline Factors evaluate_factors(const CellMatrix& cm, const TorusPoint& t) {
  CMat w = evaluate_cells(cm, t);
  const int r = cm.r();
  Factors f;
  f.diag = CVec(r);
  for (int k = 0; k < r; ++k) {
    f.diag[k] = char_value(cm.table.chars[cm.diag_char[k]], t);
    if (f.diag[k] == Cplx(0.0))
      throw Error("numeric/zero-diagonal", "diagonal character vanished at a torus point");
  }
  f.f1 = f.diag.cwiseInverse().asDiagonal() * w;
  f.f2 = w * f.diag.cwiseInverse().asDiagonal();
  return f;
}

struct RankResult {
  int rank = 0;
  CMat right_null;  // orthonormal columns spanning { v : M v = 0 }
  CMat left_null;   // orthonormal rows spanning { z : z M = 0 }
};

inline CMat orthonormal_columns(const CMat& m) {
  if (m.cols() == 0) return m;
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ() * CMat::Identity(m.rows(), m.cols());
  return q;
}

// Rank by fully pivoted elimination with a relative threshold.  ref_scale
// overrides the magnitude the pivots are compared against (used for blocks
// of a larger matrix); 0 means the matrix's own largest pivot.
inline RankResult numeric_rank(const CMat& m, double tol = kRankTol, double ref_scale = 0.0) {
  RankResult res;
  if (m.rows() == 0 || m.cols() == 0) {
    res.right_null = CMat::Identity(m.cols(), m.cols());
    res.left_null = CMat::Identity(m.rows(), m.rows());
    return res;
  }
  Eigen::FullPivLU<CMat> lu(m);
  double max_pivot = lu.maxPivot();
  double ref = (ref_scale > 0.0) ? ref_scale : max_pivot;
  if (ref <= 0.0) ref = 1.0;
  lu.setThreshold(tol * ref / (max_pivot > 0.0 ? max_pivot : 1.0));
  res.rank = int(lu.rank());
  res.right_null = orthonormal_columns(lu.kernel());
  if (res.rank == int(m.cols())) res.right_null = CMat(m.cols(), 0);
  Eigen::FullPivLU<CMat> lut(m.transpose().eval());
  double max_pivot_t = lut.maxPivot();
  lut.setThreshold(tol * ref / (max_pivot_t > 0.0 ? max_pivot_t : 1.0));
  CMat ln = orthonormal_columns(lut.kernel());
  if (int(lut.rank()) == int(m.rows())) ln = CMat(m.rows(), 0);
  res.left_null = ln.transpose();
  return res;
}

struct PerronResult {
  double value = 0.0;
  Eigen::VectorXd right;  // column eigenvector, max entry 1
  Eigen::VectorXd left;   // row eigenvector, max entry 1
  int iterations = 0;
};

// Power iteration on (A + I): adding the identity makes an irreducible
// nonnegative matrix primitive, so convergence is unconditional.
inline PerronResult perron(const Eigen::MatrixXd& a, double tol = kPerronTol,
                           int max_iter = 100000) {
  const int n = int(a.rows());
  if (n == 0 || a.cols() != n)
    throw InputError("numeric/bad-matrix", "perron needs a nonempty square matrix");
  if (a.minCoeff() < 0.0)
    throw InputError("numeric/bad-matrix", "perron needs a nonnegative matrix");
  auto iterate = [&](const Eigen::MatrixXd& mat, int& iters) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n) / double(n);
    double lambda = 0.0;
    for (iters = 0; iters < max_iter; ++iters) {
      Eigen::VectorXd y = mat * x + x;
      double nrm = y.maxCoeff();
      y /= nrm;
      double delta = (y - x).cwiseAbs().maxCoeff();
      x = y;
      lambda = nrm;
      if (delta < tol) return std::make_pair(lambda - 1.0, x);
    }
    throw Error("numeric/non-convergence", "power iteration failed to converge");
  };
  PerronResult res;
  int it1 = 0, it2 = 0;
  auto [rv, v] = iterate(a, it1);
  auto [rh, h] = iterate(a.transpose(), it2);
  res.value = 0.5 * (rv + rh);
  res.right = v / v.maxCoeff();
  res.left = h / h.maxCoeff();
  res.iterations = std::max(it1, it2);
  return res;
}

// A witness torus point on which the evaluated cell matrix becomes
// diag(h_j) (diag(-r_j) + A) diag(v_j) per block: rows sum to zero, columns
// sum to zero, each block has corank one with all-ones null vectors on both
// sides.  Off-diagonal coefficients are 1/#cell, diagonal ones -r_j/#cell.
// A singleton block has r_j = 0, which would zero its diagonal coefficient
// and leave the coefficient torus; with at least two diagonal characters the
// coefficients are instead chosen nonzero summing to zero (flagged), and
// with a single character the block is witness-free and reported as
// evidence that the open set is empty.
struct WitnessResult {
  TorusPoint point;
  Eigen::MatrixXd adjacency;          // off-diagonal 0/1 pattern
  std::vector<double> perron_values;  // r_j per block (0 for singletons)
  std::vector<int> sum_zero_blocks;   // 1-based blocks using the sum-zero substitute
};

inline WitnessResult build_witness(const CellMatrix& cm) {
  const int r = cm.r();
  const std::size_t n = cm.table.rank;
  WitnessResult res;
  res.adjacency = Eigen::MatrixXd::Zero(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (a != b && !cm.table.cell[a][b].empty()) res.adjacency(a, b) = 1.0;

  Eigen::VectorXd vglob = Eigen::VectorXd::Ones(r), hglob = Eigen::VectorXd::Ones(r);
  CVec coeff = CVec::Zero(long(cm.table.chars.size()));
  for (int j = 0; j < cm.beta(); ++j) {
    const auto& verts = cm.blocks[j];
    const int d = int(verts.size());
    if (d == 1) {
      const int k = verts[0];
      const auto& diag_cell = cm.table.cell[k][k];
      if (diag_cell.size() < 2)
        throw Error("witness/degenerate-block",
                    "block " + std::to_string(j + 1) +
                        " is a singleton with a one-character diagonal cell; its open set is empty");
      for (std::size_t i = 0; i + 1 < diag_cell.size(); ++i) coeff[diag_cell[i]] = 1.0;
      coeff[diag_cell.back()] = -double(diag_cell.size() - 1);
      res.perron_values.push_back(0.0);
      res.sum_zero_blocks.push_back(j + 1);
      continue;
    }
    Eigen::MatrixXd ab(d, d);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) ab(x, y) = res.adjacency(verts[x], verts[y]);
    PerronResult p = perron(ab);
    res.perron_values.push_back(p.value);
    for (int x = 0; x < d; ++x) {
      vglob[verts[x]] = p.right[x];
      hglob[verts[x]] = p.left[x];
    }
    for (int x = 0; x < d; ++x) {
      const int k = verts[x];
      if (cm.table.cell[k][k].empty())
        throw Error("witness/degenerate-block",
                    "empty diagonal cell inside a multi-vertex block");
      for (int i : cm.table.cell[k][k])
        coeff[i] = -p.value / double(cm.table.cell[k][k].size());
      for (int y = 0; y < d; ++y) {
        if (y == x) continue;
        const auto& cell = cm.table.cell[k][verts[y]];
        for (int i : cell) coeff[i] = 1.0 / double(cell.size());
      }
    }
  }

  // Fibers carry h_k * v_k; the base compensates so the structure-2 base
  // characters stay at 1, i.e. y_i = prod_k v_k^{-(n_k)_i}.
  TorusPoint t;
  t.fiber = CVec(r);
  for (int k = 0; k < r; ++k) t.fiber[k] = hglob[k] * vglob[k];
  t.base = CVec::Ones(long(n));
  for (std::size_t i = 0; i < n; ++i) {
    double y = 1.0;
    for (int k = 0; k < r; ++k) {
      long e = to_long(cm.table.translations[k][i]);
      if (e != 0) y *= std::pow(vglob[k], double(-e));
    }
    t.base[long(i)] = y;
  }
  t.coeff = coeff;
  res.point = t;
  return res;
}

// Membership report for one side: side 1 checks that rows sum to zero, the
// rank is r - beta, and each block has a left null vector with no vanishing
// entry; side 2 is the mirror statement with columns and right null vectors.
struct SideReport {
  int side = 1;
  double max_sum_residual = 0.0;   // relative to the largest entry
  bool sums_ok = false;
  int rank = 0;
  int expected_rank = 0;
  bool rank_ok = false;
  double min_null_entry_ratio = 1.0;
  bool nulls_ok = false;
  bool pass = false;
  std::vector<CVec> block_nulls;
};

inline SideReport verify_side(const CellMatrix& cm, const TorusPoint& t, int side,
                              double resid_tol = kResidualTol, double rank_tol = kRankTol,
                              double entry_tol = kNullEntryTol) {
  if (side != 1 && side != 2) throw InputError("numeric/bad-side", "side must be 1 or 2");
  CMat w = evaluate_cells(cm, t);
  const double norm = std::max(w.cwiseAbs().maxCoeff(), term_scale(cm, t));
  SideReport rep;
  rep.side = side;
  CVec sums = (side == 1) ? row_sums(w) : col_sums(w);
  rep.max_sum_residual = sums.cwiseAbs().maxCoeff() / norm;
  rep.sums_ok = rep.max_sum_residual < resid_tol;
  rep.expected_rank = cm.r() - cm.beta();

  int rank = 0;
  rep.nulls_ok = true;
  rep.min_null_entry_ratio = 1.0;
  for (int j = 0; j < cm.beta(); ++j) {
    const auto& verts = cm.blocks[j];
    const int d = int(verts.size());
    CMat wb(d, d);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) wb(x, y) = w(verts[x], verts[y]);
    RankResult rr = numeric_rank(wb, rank_tol, norm);
    rank += rr.rank;
    CVec nv;
    if (side == 1)
      nv = (rr.left_null.rows() >= 1) ? CVec(rr.left_null.row(0).transpose()) : CVec();
    else
      nv = (rr.right_null.cols() >= 1) ? CVec(rr.right_null.col(0)) : CVec();
    if (nv.size() != d) {
      rep.nulls_ok = false;
      rep.block_nulls.emplace_back();
      continue;
    }
    double mx = nv.cwiseAbs().maxCoeff();
    double mn = nv.cwiseAbs().minCoeff();
    double ratio = (mx > 0.0) ? mn / mx : 0.0;
    rep.min_null_entry_ratio = std::min(rep.min_null_entry_ratio, ratio);
    if (!(ratio > entry_tol)) rep.nulls_ok = false;
    rep.block_nulls.push_back(nv);
  }
  rep.rank = rank;
  rep.rank_ok = (rank == rep.expected_rank);
  rep.pass = rep.sums_ok && rep.rank_ok && rep.nulls_ok;
  return rep;
}

}  // namespace nefmm
