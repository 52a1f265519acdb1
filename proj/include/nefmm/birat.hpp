#pragma once

// Pointwise certification of the birational identification: sampling torus
// points lying over both complete intersections with maximal cell-matrix
// rank, gauge-fixed torsor sections over either base, the two cross maps,
// and round-trip verification with torsor invariance.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nefmm/numeric.hpp"

namespace nefmm {

// A point of the base torus on one side: n character values plus the
// coefficient assignment it travels with.
struct BasePoint {
  int side = 1;
  CVec values;  // n entries, all nonzero
  CVec coeff;
};

// The structure-1 base projection is the base part itself; the structure-2
// projection evaluates the graph-lift basis characters z_i = y_i * prod_j
// x_j^(n_j)_i.
inline CVec project_values_side2(const CellMatrix& cm, const TorusPoint& t) {
  const std::size_t n = cm.table.rank;
  CVec z = CVec::Zero(long(n));
  for (std::size_t i = 0; i < n; ++i) {
    Cplx v = t.base[long(i)];
    for (int j = 0; j < cm.r(); ++j) {
      long e = to_long(cm.table.translations[j][i]);
      if (e != 0) v *= ipow(t.fiber[j], e);
    }
    z[long(i)] = v;
  }
  return z;
}

inline BasePoint project_side1(const CellMatrix& /*cm*/, const TorusPoint& t) {
  return BasePoint{1, t.base, t.coeff};
}

inline BasePoint project_side2(const CellMatrix& cm, const TorusPoint& t) {
  return BasePoint{2, project_values_side2(cm, t), t.coeff};
}

// The factor matrices as functions of a base point alone.  Both share the
// same monomial exponents: on side 2 the coordinates of a character's base
// part in the graph-lift basis are again its m-part.
inline CMat factor_from_base(const CellMatrix& cm, const BasePoint& y) {
  const int r = cm.r();
  CMat f = CMat::Zero(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int i : cm.table.cell[a][b]) {
        const ExtChar& c = cm.table.chars[i];
        Cplx v = y.coeff[i];
        for (std::size_t k = 0; k < c.m.size(); ++k)
          if (c.m[k] != 0) v *= ipow(y.values[long(k)], to_long(c.m[k]));
        f(a, b) += v;
      }
  return f;
}

// Gauge-fixed torsor section over a base point.  On side 1 the fiber above
// y consists of the per-block left null rays of F1(y); the section picks the
// scaling with value 1 at the last index of each block.  Side 2 mirrors this
// with right null vectors of F2(z), and the base part is recovered through
// y_i = z_i * prod_j x_j^-(n_j)_i.
// Largest single term of the factor matrix at a base point; the reference
// scale for residuals and rank thresholds (entries of one-vertex blocks
// cancel to roundoff, so their own magnitude is no yardstick).
inline double factor_scale(const CellMatrix& cm, const BasePoint& y) {
  double s = 1e-300;
  for (int i = 0; i < int(cm.table.chars.size()); ++i) {
    const ExtChar& c = cm.table.chars[i];
    Cplx v = y.coeff[i];
    for (std::size_t k = 0; k < c.m.size(); ++k)
      if (c.m[k] != 0) v *= ipow(y.values[long(k)], to_long(c.m[k]));
    s = std::max(s, std::abs(v));
  }
  return s;
}

inline TorusPoint gauge_section(const CellMatrix& cm, const BasePoint& y,
                                double rank_tol = kRankTol, double entry_tol = kNullEntryTol) {
  CMat f = factor_from_base(cm, y);
  const double norm = std::max(f.cwiseAbs().maxCoeff(), factor_scale(cm, y));
  CVec fiber(cm.r());
  for (int j = 0; j < cm.beta(); ++j) {
    const auto& verts = cm.blocks[j];
    const int d = int(verts.size());
    CMat fb(d, d);
    for (int x = 0; x < d; ++x)
      for (int yy = 0; yy < d; ++yy) fb(x, yy) = f(verts[x], verts[yy]);
    RankResult rr = numeric_rank(fb, rank_tol, norm);
    if (rr.rank != d - 1)
      throw Error("birat/not-in-omega",
                  "factor matrix block " + std::to_string(j + 1) + " has rank " +
                      std::to_string(rr.rank) + ", expected " + std::to_string(d - 1));
    CVec nv = (y.side == 1) ? CVec(rr.left_null.row(0).transpose()) : CVec(rr.right_null.col(0));
    double mx = nv.cwiseAbs().maxCoeff();
    double mn = nv.cwiseAbs().minCoeff();
    if (!(mn > entry_tol * mx))
      throw Error("birat/not-in-omega",
                  "block " + std::to_string(j + 1) + " null vector has a vanishing entry");
    const int gauge = cm.gauge_vertex(j);
    int gpos = 0;
    for (int x = 0; x < d; ++x)
      if (verts[x] == gauge) gpos = x;
    for (int x = 0; x < d; ++x) fiber[verts[x]] = nv[x] / nv[gpos];
  }
  TorusPoint t;
  t.fiber = fiber;
  t.coeff = y.coeff;
  const std::size_t n = cm.table.rank;
  t.base = CVec(long(n));
  if (y.side == 1) {
    t.base = y.values;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      Cplx v = y.values[long(i)];
      for (int j = 0; j < cm.r(); ++j) {
        long e = to_long(cm.table.translations[j][i]);
        if (e != 0) v *= ipow(t.fiber[j], -e);
      }
      t.base[long(i)] = v;
    }
  }
  return t;
}

inline BasePoint map_1_to_2(const CellMatrix& cm, const BasePoint& y1) {
  if (y1.side != 1) throw InputError("birat/bad-side", "map_1_to_2 expects a side-1 point");
  TorusPoint t = gauge_section(cm, y1);
  return project_side2(cm, t);
}

inline BasePoint map_2_to_1(const CellMatrix& cm, const BasePoint& y2) {
  if (y2.side != 2) throw InputError("birat/bad-side", "map_2_to_1 expects a side-2 point");
  TorusPoint t = gauge_section(cm, y2);
  return project_side1(cm, t);
}

struct SampleResult {
  TorusPoint point;
  int retries = 0;
};

// Samples a torus point lying over both complete intersections where the
// cell matrix has rank r - beta and per-block null vectors with no vanishing
// entries.  Torus coordinates are drawn at random (log-uniform modulus in
// [1/2, 2], uniform phase); the row- and column-sum conditions are linear in
// the coefficients, so a random kernel element supplies them, with one
// redundant equation dropped per block (within a block the row sums and the
// column sums have equal totals).  Rejected draws retry with a fresh seed.
inline SampleResult sample_point(const CellMatrix& cm, std::uint64_t seed, int max_retries = 100) {
  const int r = cm.r();
  const std::size_t nchars = cm.table.chars.size();
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::mt19937_64 rng(seed + std::uint64_t(attempt));
    std::uniform_real_distribution<double> mod(std::log(0.5), std::log(2.0));
    std::uniform_real_distribution<double> arg(0.0, 2.0 * M_PI);
    auto draw = [&] { return std::polar(std::exp(mod(rng)), arg(rng)); };
    TorusPoint t;
    t.base = CVec(long(cm.table.rank));
    t.fiber = CVec(r);
    for (long i = 0; i < t.base.size(); ++i) t.base[i] = draw();
    for (long i = 0; i < t.fiber.size(); ++i) t.fiber[i] = draw();

    // Character values at the drawn coordinates.
    CVec vals = CVec::Zero(long(nchars));
    for (std::size_t i = 0; i < nchars; ++i)
      vals[long(i)] = char_value(cm.table.chars[i], t);

    // Linear system in the coefficients: all row sums, and all column sums
    // but the last of each block.
    std::vector<int> rows_eq, cols_eq;
    for (int j = 0; j < cm.beta(); ++j) {
      for (int v : cm.blocks[j]) rows_eq.push_back(v);
      for (int v : cm.blocks[j])
        if (v != cm.gauge_vertex(j)) cols_eq.push_back(v);
    }
    CMat e = CMat::Zero(long(rows_eq.size() + cols_eq.size()), long(nchars));
    long row = 0;
    for (int a : rows_eq) {
      for (int i : cm.table.row_chars(a)) e(row, i) = vals[i];
      ++row;
    }
    for (int b : cols_eq) {
      for (int i : cm.table.col_chars(b)) e(row, i) = vals[i];
      ++row;
    }
    RankResult kr = numeric_rank(e);
    if (kr.right_null.cols() == 0) continue;
    std::normal_distribution<double> g;
    CVec mix(kr.right_null.cols());
    for (long i = 0; i < mix.size(); ++i) mix[i] = Cplx(g(rng), g(rng));
    CVec c = kr.right_null * mix;
    double cmax = c.cwiseAbs().maxCoeff();
    if (cmax <= 0.0) continue;
    c /= cmax;
    if (c.cwiseAbs().minCoeff() < 1e-8) continue;
    t.coeff = c;

    auto o1 = verify_side(cm, t, 1, 1e-10);
    auto o2 = verify_side(cm, t, 2, 1e-10);
    if (o1.pass && o2.pass) return SampleResult{t, attempt};
  }
  throw Error("birat/sampling-failure",
              "no acceptable point found in " + std::to_string(max_retries) + " draws");
}

struct RoundTripReport {
  int samples_attempted = 0;
  int samples_succeeded = 0;
  int retries = 0;
  double max_on_z1 = 0.0;       // side-1 membership residual of the projection
  double max_on_z2 = 0.0;       // side-2 membership residual
  double max_phi_vs_proj = 0.0; // phi(pi_1(t)) against pi_2(t)
  double max_psi_vs_proj = 0.0; // psi(pi_2(t)) against pi_1(t)
  double max_psi_phi = 0.0;     // psi(phi(y)) against y
  double max_phi_psi = 0.0;     // phi(psi(z)) against z
  double max_torsor = 0.0;      // projection deviation under block rescaling
  double tol = 0.0;
  bool pass = false;
};

inline double rel_dev(const CVec& a, const CVec& b) {
  double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline RoundTripReport roundtrip_check(const CellMatrix& cm, int samples, double tol,
                                       std::uint64_t seed) {
  RoundTripReport rep;
  rep.samples_attempted = samples;
  rep.tol = tol;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = seed + 0x9e3779b97f4a7c15ull * std::uint64_t(s + 1);
    SampleResult sr = sample_point(cm, sample_seed);
    rep.retries += sr.retries;
    const TorusPoint& t = sr.point;
    BasePoint y1 = project_side1(cm, t);
    BasePoint z2 = project_side2(cm, t);

    // Membership: the side-1 projection satisfies the row-sum equations of
    // the factor matrix, the side-2 projection the column sums.
    CMat f1 = factor_from_base(cm, y1);
    CMat f2 = factor_from_base(cm, z2);
    double n1 = std::max(f1.cwiseAbs().maxCoeff(), factor_scale(cm, y1));
    double n2 = std::max(f2.cwiseAbs().maxCoeff(), factor_scale(cm, z2));
    rep.max_on_z1 = std::max(rep.max_on_z1, row_sums(f1).cwiseAbs().maxCoeff() / n1);
    rep.max_on_z2 = std::max(rep.max_on_z2, col_sums(f2).cwiseAbs().maxCoeff() / n2);

    BasePoint phi_y = map_1_to_2(cm, y1);
    BasePoint psi_z = map_2_to_1(cm, z2);
    rep.max_phi_vs_proj = std::max(rep.max_phi_vs_proj, rel_dev(phi_y.values, z2.values));
    rep.max_psi_vs_proj = std::max(rep.max_psi_vs_proj, rel_dev(psi_z.values, y1.values));
    rep.max_psi_phi = std::max(rep.max_psi_phi, rel_dev(map_2_to_1(cm, phi_y).values, y1.values));
    rep.max_phi_psi = std::max(rep.max_phi_psi, rel_dev(map_1_to_2(cm, psi_z).values, z2.values));

    // Torsor invariance: rescaling the fibers block by block must leave both
    // projections unchanged.
    std::mt19937_64 rng(sample_seed ^ 0xabcdef1234567890ull);
    std::uniform_real_distribution<double> mod(std::log(0.5), std::log(2.0));
    std::uniform_real_distribution<double> arg(0.0, 2.0 * M_PI);
    TorusPoint tr = t;
    for (int j = 0; j < cm.beta(); ++j) {
      Cplx lambda = std::polar(std::exp(mod(rng)), arg(rng));
      for (int v : cm.blocks[j]) tr.fiber[v] *= lambda;
    }
    rep.max_torsor = std::max(rep.max_torsor,
                              rel_dev(project_values_side2(cm, tr), z2.values));
    rep.max_torsor = std::max(rep.max_torsor, rel_dev(tr.base, y1.values));
    ++rep.samples_succeeded;
  }
  rep.pass = rep.samples_succeeded == rep.samples_attempted && rep.max_on_z1 < tol &&
             rep.max_on_z2 < tol && rep.max_phi_vs_proj < tol && rep.max_psi_vs_proj < tol &&
             rep.max_psi_phi < tol && rep.max_phi_psi < tol && rep.max_torsor < tol;
  return rep;
}

}  // namespace nefmm
