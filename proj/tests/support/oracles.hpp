#pragma once

// Independent oracles used by the test suites.  These deliberately avoid the
// library's own code paths: the Hermite oracle reduces by plain repeated
// subtraction, the 2-d hull oracle is a monotone chain, saturation is tested
// through gcds of maximal minors, and Perron values come from bisecting the
// characteristic polynomial.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nefmm/lattice.hpp"

namespace oracles {

using nefmm::Int;
using nefmm::IntMat;
using nefmm::IntVec;

// Naive lower-triangular row Hermite form: columns right to left, pivot rows
// gathered at the bottom, single-step subtractions only.
inline IntMat naive_hermite(const IntMat& m) {
  IntMat h = m;
  const std::size_t nr = h.rows(), nc = h.cols();
  std::size_t next = nr;
  for (std::size_t cc = nc; cc-- > 0 && next > 0;) {
    const std::size_t r = next - 1;
    for (;;) {
      // Count active rows with a nonzero entry in column cc.
      std::vector<std::size_t> nz;
      for (std::size_t i = 0; i <= r; ++i)
        if (h.at(i, cc) != 0) nz.push_back(i);
      if (nz.empty()) break;
      if (nz.size() == 1) {
        std::swap(h.row(nz[0]), h.row(r));
        break;
      }
      // Subtract the smaller from the larger, one step at a time.
      std::size_t a = nz[0], b = nz[1];
      if (abs(h.at(a, cc)) < abs(h.at(b, cc))) std::swap(a, b);
      const Int q = h.at(a, cc) / h.at(b, cc);
      for (std::size_t j = 0; j < nc; ++j) h.at(a, j) -= q * h.at(b, j);
      if (h.at(a, cc) != 0) {
        // One more subtraction pushes the remainder through zero if signs
        // disagree; just loop again.
      }
    }
    if (h.at(r, cc) == 0) continue;
    if (h.at(r, cc) < 0)
      for (auto& x : h.row(r)) x = -x;
    for (std::size_t i = r + 1; i < nr; ++i) {
      const Int q = nefmm::floor_div(h.at(i, cc), h.at(r, cc));
      if (q != 0)
        for (std::size_t j = 0; j < nc; ++j) h.at(i, j) -= q * h.at(r, j);
    }
    --next;
  }
  return h;
}

// 2-d convex hull by monotone chain; returns the vertex list sorted
// lexicographically (the library's canonical order).
inline std::vector<IntVec> hull2d(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end(), nefmm::lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  auto cross = [](const IntVec& o, const IntVec& a, const IntVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<IntVec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  std::sort(h.begin(), h.end(), nefmm::lex_less);
  return h;
}

inline Int gcd_int(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Saturation oracle: a full-row-rank integer matrix spans a saturated lattice
// iff the gcd of its maximal minors is 1.
inline bool minors_gcd_is_one(const IntMat& b) {
  const std::size_t k = b.rows(), n = b.cols();
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  std::function<bool(std::size_t, std::size_t, Int&)> rec =
      [&](std::size_t pos, std::size_t start, Int& g) -> bool {
    if (pos == k) {
      IntMat sq(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sq.at(i, j) = b.at(i, idx[j]);
      g = gcd_int(g, nefmm::determinant(sq));
      return g == 1;
    }
    for (std::size_t c = start; c < n; ++c) {
      idx[pos] = c;
      if (rec(pos + 1, c + 1, g)) return true;
    }
    return false;
  };
  Int g = 0;
  return rec(0, 0, g);
}

// All vectors v with entries in [-bound, bound] annihilating every row of m.
inline std::vector<IntVec> brute_kernel_vectors(const IntMat& m, long bound) {
  const std::size_t n = m.cols();
  std::vector<IntVec> out;
  IntVec v(n, -bound);
  for (;;) {
    bool ann = true;
    for (std::size_t i = 0; i < m.rows() && ann; ++i)
      ann = (nefmm::dot(m.row(i), v) == 0);
    if (ann && !nefmm::is_zero(v)) out.push_back(v);
    std::size_t p = 0;
    while (p < n && v[p] == bound) v[p++] = -bound;
    if (p == n) break;
    ++v[p];
  }
  return out;
}

// Largest real root of a monic polynomial, located by a downward scan from
// hi followed by bisection.  Used as the Perron oracle via the characteristic
// polynomial of small nonnegative matrices.
inline double largest_real_root(const std::vector<double>& monic_coeffs, double hi) {
  auto eval = [&](double x) {
    double v = 1.0;
    for (double c : monic_coeffs) v = v * x + c;
    return v;
  };
  double a = hi;
  double step = 0.01;
  while (a > -hi - 1 && eval(a) > 0) a -= step;
  double lo = a, up = a + step;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + up);
    if (eval(mid) > 0)
      up = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + up);
}

// Characteristic polynomial coefficients (monic, descending, constant last)
// for 2x2 and 3x3 matrices given as row-major doubles.
inline std::vector<double> char_poly_coeffs(const std::vector<double>& a, int n) {
  if (n == 2) {
    double tr = a[0] + a[3];
    double det = a[0] * a[3] - a[1] * a[2];
    return {-tr, det};
  }
  // n == 3
  double tr = a[0] + a[4] + a[8];
  double m01 = a[0] * a[4] - a[1] * a[3];
  double m02 = a[0] * a[8] - a[2] * a[6];
  double m12 = a[4] * a[8] - a[5] * a[7];
  double det = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
  return {-tr, m01 + m02 + m12, -det};
}

inline IntMat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

}  // namespace oracles
