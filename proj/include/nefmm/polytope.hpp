#pragma once

// Exact lattice-polytope calculus at desk scale: hulls, facets, lattice
// points, Minkowski sums, polar duals and reflexivity.  All predicates are
// exact integer arithmetic; lower-dimensional polytopes are projected onto a
// lattice-preserving basis of their affine span and handled there.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "nefmm/error.hpp"
#include "nefmm/lattice.hpp"

namespace nefmm {

// Facet inequality <normal, x> >= -offset with a primitive integer normal.
struct Facet {
  IntVec normal;
  Int offset;
  bool operator==(const Facet& o) const { return normal == o.normal && offset == o.offset; }
};

namespace detail {

// Internal half-space a.x <= b with its tight point set (indices).
struct HalfSpace {
  IntVec a;
  Int b;
  std::vector<int> tight;
};

inline void primitivize(IntVec& a, Int& b) {
  Int g = 0;
  for (const auto& x : a) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : a) x /= g;
    b /= g;  // b is attained by lattice points, so g divides it
  }
}

// Number of affinely independent points among pts (indices into all).
inline std::size_t affine_count(const std::vector<IntVec>& all, const std::vector<int>& idx) {
  if (idx.empty()) return 0;
  IntMat diffs(0, 0);
  for (std::size_t i = 1; i < idx.size(); ++i)
    diffs.append_row(vec_sub(all[idx[i]], all[idx[0]]));
  if (diffs.rows() == 0) return 1;
  return 1 + lattice_rank(diffs);
}

// Greedy affinely independent subset of size at most want.
inline std::vector<int> independent_subset(const std::vector<IntVec>& pts, std::size_t want) {
  std::vector<int> sel;
  std::vector<IntVec> diffs;
  for (std::size_t i = 0; i < pts.size() && sel.size() < want; ++i) {
    if (sel.empty()) {
      sel.push_back(int(i));
      continue;
    }
    std::vector<IntVec> trial = diffs;
    trial.push_back(vec_sub(pts[i], pts[sel[0]]));
    if (lattice_rank(IntMat::from_rows(trial)) == trial.size()) {
      sel.push_back(int(i));
      diffs = std::move(trial);
    }
  }
  return sel;
}

// Integer normal of the hyperplane through k affinely independent points of
// Z^k, via cofactors of the (k-1) x k difference matrix.
inline IntVec hyperplane_normal(const std::vector<IntVec>& pts, const std::vector<int>& idx,
                                std::size_t k) {
  IntMat d(k - 1, k);
  for (std::size_t i = 0; i + 1 < k; ++i) d.row(i) = vec_sub(pts[idx[i + 1]], pts[idx[0]]);
  IntVec n(k);
  for (std::size_t j = 0; j < k; ++j) {
    IntMat minor(k - 1, k - 1);
    for (std::size_t r = 0; r < k - 1; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) minor.at(r, cc++) = d.at(r, c);
    }
    Int m = (k >= 2) ? determinant(minor) : Int(1);
    n[j] = ((j % 2) == 0) ? m : -m;
  }
  return n;
}

struct FullHull {
  std::vector<int> vertex_idx;        // into the deduplicated point list
  std::vector<HalfSpace> half_spaces; // complete irredundant facet list
};

// Incremental exact convex hull of a full-dimensional point set in Z^k.
// Facets are maintained as supporting hyperplanes with their full tight
// sets, so coplanar insertions merge instead of splintering.
inline FullHull hull_fulldim(const std::vector<IntVec>& pts, std::size_t k) {
  FullHull out;
  const std::size_t n = pts.size();
  if (k == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (pts[i][0] < pts[lo][0]) lo = i;
      if (pts[i][0] > pts[hi][0]) hi = i;
    }
    out.vertex_idx = {int(lo), int(hi)};
    out.half_spaces.push_back({IntVec{1}, pts[hi][0], {}});
    out.half_spaces.push_back({IntVec{-1}, -pts[lo][0], {}});
  } else {
    std::vector<int> simplex = independent_subset(pts, k + 1);
    // Interior reference point: the simplex centroid, scaled to integers.
    IntVec centroid_num(k, 0);
    for (int i : simplex) centroid_num = vec_add(centroid_num, pts[i]);
    const Int centroid_den = Int(simplex.size());

    auto oriented = [&](std::vector<int> on_plane) -> std::optional<HalfSpace> {
      IntVec a = hyperplane_normal(pts, on_plane, k);
      if (is_zero(a)) return std::nullopt;
      Int b = dot(a, pts[on_plane[0]]);
      Int side = dot(a, centroid_num) - b * centroid_den;
      if (side == 0) return std::nullopt;  // reference on the plane
      if (side > 0) {
        a = vec_neg(a);
        b = -b;
      }
      primitivize(a, b);
      return HalfSpace{std::move(a), std::move(b), {}};
    };

    std::vector<HalfSpace> hs;
    std::vector<char> in_simplex(n, 0);
    for (int i : simplex) in_simplex[i] = 1;
    for (std::size_t omit = 0; omit < simplex.size(); ++omit) {
      std::vector<int> face;
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != omit) face.push_back(simplex[i]);
      auto f = oriented(face);
      if (!f) throw Error("polytope/internal", "degenerate initial simplex facet");
      hs.push_back(std::move(*f));
    }

    std::vector<int> inserted = simplex;
    auto tight_insert = [](HalfSpace& f, int p) {
      f.tight.insert(std::lower_bound(f.tight.begin(), f.tight.end(), p), p);
    };
    auto refresh_tight = [&](HalfSpace& f) {
      f.tight.clear();
      for (int i : inserted)
        if (dot(f.a, pts[i]) == f.b) f.tight.push_back(i);
      std::sort(f.tight.begin(), f.tight.end());
    };
    for (auto& f : hs) refresh_tight(f);

    for (std::size_t p = 0; p < n; ++p) {
      if (in_simplex[p]) continue;
      std::vector<std::size_t> visible;
      for (std::size_t f = 0; f < hs.size(); ++f)
        if (dot(hs[f].a, pts[p]) > hs[f].b) visible.push_back(f);
      inserted.push_back(int(p));
      if (visible.empty()) {
        for (auto& f : hs)
          if (dot(f.a, pts[p]) == f.b) tight_insert(f, int(p));
        continue;
      }
      std::vector<char> vis(hs.size(), 0);
      for (auto f : visible) vis[f] = 1;
      std::vector<HalfSpace> fresh;
      auto known = [&](const IntVec& a, const Int& b) {
        for (const auto& g : fresh)
          if (g.a == a && g.b == b) return true;
        return false;
      };
      for (auto fv : visible) {
        for (std::size_t fk = 0; fk < hs.size(); ++fk) {
          if (vis[fk]) continue;
          if (dot(hs[fk].a, pts[p]) == hs[fk].b) continue;  // p extends that facet
          std::vector<int> ridge;
          std::set_intersection(hs[fv].tight.begin(), hs[fv].tight.end(),
                                hs[fk].tight.begin(), hs[fk].tight.end(),
                                std::back_inserter(ridge));
          if (affine_count(pts, ridge) != k - 1) continue;
          std::vector<int> base = independent_subset(
              [&] {
                std::vector<IntVec> rp;
                for (int i : ridge) rp.push_back(pts[i]);
                return rp;
              }(),
              k - 1);
          std::vector<int> plane;
          for (int i : base) plane.push_back(ridge[i]);
          plane.push_back(int(p));
          auto f = oriented(plane);
          if (!f) throw Error("polytope/internal", "degenerate horizon cone");
          if (!known(f->a, f->b)) fresh.push_back(std::move(*f));
        }
      }
      std::vector<HalfSpace> next;
      for (std::size_t f = 0; f < hs.size(); ++f) {
        if (vis[f]) continue;
        if (dot(hs[f].a, pts[p]) == hs[f].b) tight_insert(hs[f], int(p));
        next.push_back(std::move(hs[f]));
      }
      for (auto& f : fresh) {
        refresh_tight(f);
        next.push_back(std::move(f));
      }
      hs = std::move(next);
    }

    for (auto& f : hs) refresh_tight(f);
    // Soundness sweep: every point inside every facet, every facet spanning.
    for (const auto& f : hs) {
      for (std::size_t i = 0; i < n; ++i)
        if (dot(f.a, pts[i]) > f.b)
          throw Error("polytope/internal", "hull facet fails to support the input");
      if (affine_count(pts, f.tight) != k)
        throw Error("polytope/internal", "hull facet is not spanning");
    }
    out.half_spaces = std::move(hs);
    // Vertices: points whose tight facet normals span the whole space.
    for (std::size_t i = 0; i < n; ++i) {
      IntMat normals(0, 0);
      for (const auto& f : out.half_spaces)
        if (std::binary_search(f.tight.begin(), f.tight.end(), int(i)))
          normals.append_row(f.a);
      if (normals.rows() >= k && lattice_rank(normals) == k) out.vertex_idx.push_back(int(i));
    }
  }
  return out;
}

}  // namespace detail

class Polytope {
public:
  // Convex hull of a nonempty list of lattice points of uniform rank.
  static Polytope hull(std::vector<IntVec> points) {
    if (points.empty()) throw InputError("polytope/empty", "hull of empty point set");
    const std::size_t rank = points[0].size();
    for (const auto& p : points)
      if (p.size() != rank)
        throw InputError("lattice/dimension-mismatch", "hull points of mixed rank");
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Polytope P;
    P.rank_ = rank;
    if (points.size() == 1) {
      P.dim_ = 0;
      P.verts_ = points;
      P.span_origin_ = points[0];
      P.span_basis_ = IntMat(0, rank);
      P.points_ = points;
      return P;
    }

    // Affine span with a lattice-preserving (saturated) basis.
    IntMat diffs(0, 0);
    for (std::size_t i = 1; i < points.size(); ++i)
      diffs.append_row(vec_sub(points[i], points[0]));
    IntMat basis;
    {
      HermiteResult hf = hermite_form(diffs);
      std::size_t d = hf.rank;
      if (d < rank) {
        IntMat dir(0, 0);
        for (std::size_t i = 0; i < d; ++i)
          dir.append_row(hf.h.row(diffs.rows() - d + i));
        basis = saturate(dir);
      } else {
        basis = IntMat::identity(rank);
      }
    }
    const std::size_t d = basis.rows();
    P.dim_ = int(d);
    P.span_origin_ = points[0];
    P.span_basis_ = basis;

    std::vector<IntVec> local(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto c = solve_in_lattice(basis, vec_sub(points[i], points[0]));
      if (!c) throw Error("polytope/internal", "point outside its own affine span");
      local[i] = *c;
    }
    detail::FullHull fh = detail::hull_fulldim(local, d);
    for (int i : fh.vertex_idx) P.verts_.push_back(points[i]);
    std::sort(P.verts_.begin(), P.verts_.end(), lex_less);
    P.span_half_spaces_ = fh.half_spaces;
    for (auto& f : P.span_half_spaces_) f.tight.clear();
    if (d == rank) {
      // Span coordinates are translated by the origin; shift offsets back.
      for (const auto& f : P.span_half_spaces_)
        P.facets_.push_back(Facet{vec_neg(f.a), f.b + dot(f.a, P.span_origin_)});
    }
    P.enumerate_points(local);
    return P;
  }

  std::size_t rank() const { return rank_; }
  int dim() const { return dim_; }
  bool full_dim() const { return dim_ == int(rank_); }
  const std::vector<IntVec>& vertices() const { return verts_; }

  // Complete irredundant facet list; empty for lower-dimensional polytopes.
  const std::vector<Facet>& facets() const { return facets_; }

  // All lattice points, sorted lexicographically.
  const std::vector<IntVec>& lattice_points() const { return points_; }

  bool contains(const IntVec& p) const {
    if (p.size() != rank_)
      throw InputError("lattice/dimension-mismatch", "membership query of wrong rank");
    if (dim_ == 0) return p == span_origin_;
    auto c = solve_in_lattice(span_basis_, vec_sub(p, span_origin_));
    if (!c) return false;
    for (const auto& f : span_half_spaces_)
      if (dot(f.a, *c) > f.b) return false;
    return true;
  }

  bool contains_zero() const { return contains(IntVec(rank_, 0)); }
  bool is_single_point() const { return dim_ == 0; }

  Polytope translate(const IntVec& t) const {
    std::vector<IntVec> vs;
    for (const auto& v : verts_) vs.push_back(vec_add(v, t));
    return hull(vs);
  }

  Polytope negate() const {
    std::vector<IntVec> vs;
    for (const auto& v : verts_) vs.push_back(vec_neg(v));
    return hull(vs);
  }

  bool operator==(const Polytope& o) const { return rank_ == o.rank_ && verts_ == o.verts_; }
  bool operator!=(const Polytope& o) const { return !(*this == o); }

private:
  void enumerate_points(const std::vector<IntVec>& local_verts) {
    points_.clear();
    if (dim_ == 0) {
      points_.push_back(span_origin_);
      return;
    }
    const std::size_t d = std::size_t(dim_);
    IntVec lo(d), hi(d);
    std::vector<IntVec> lverts;
    {
      // Recover local vertex coordinates: hull() passes all local points, so
      // recompute bounds from them (vertices are among them).
      lverts = local_verts;
    }
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = lverts[0][j];
      hi[j] = lverts[0][j];
      for (const auto& v : lverts) {
        if (v[j] < lo[j]) lo[j] = v[j];
        if (v[j] > hi[j]) hi[j] = v[j];
      }
    }
    Int cells = 1;
    for (std::size_t j = 0; j < d; ++j) cells *= (hi[j] - lo[j] + 1);
    if (cells > 2000000)
      throw Error("polytope/too-large", "lattice point scan box exceeds desk scale");
    IntVec cur = lo;
    for (;;) {
      bool ok = true;
      for (const auto& f : span_half_spaces_)
        if (dot(f.a, cur) > f.b) {
          ok = false;
          break;
        }
      if (ok) {
        IntVec amb = span_origin_;
        for (std::size_t j = 0; j < d; ++j)
          if (cur[j] != 0)
            for (std::size_t t = 0; t < rank_; ++t) amb[t] += cur[j] * span_basis_.at(j, t);
        points_.push_back(amb);
      }
      std::size_t j = 0;
      while (j < d && cur[j] == hi[j]) cur[j] = lo[j], ++j;
      if (j == d) break;
      ++cur[j];
    }
    std::sort(points_.begin(), points_.end(), lex_less);
  }

  std::size_t rank_ = 0;
  int dim_ = -1;
  std::vector<IntVec> verts_;
  std::vector<Facet> facets_;
  std::vector<IntVec> points_;
  IntVec span_origin_;
  IntMat span_basis_;                              // saturated direction basis (dim rows)
  std::vector<detail::HalfSpace> span_half_spaces_; // facets in span coordinates
};

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.rank() != q.rank())
    throw InputError("lattice/dimension-mismatch", "minkowski_sum rank mismatch");
  std::vector<IntVec> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(vec_add(a, b));
  return Polytope::hull(sums);
}

// Polar dual with exact rational vertices, stored as an integer polytope
// scaled by a common denominator.  denom == 1 iff the dual is integral.
struct PolarDual {
  bool integral = false;
  Int denom = 1;
  Polytope scaled;  // denom * (the dual polytope)

  std::vector<std::pair<IntVec, Int>> rational_vertices() const {
    std::vector<std::pair<IntVec, Int>> out;
    for (const auto& v : scaled.vertices()) out.emplace_back(v, denom);
    return out;
  }
};

inline PolarDual polar_dual(const Polytope& p) {
  if (!p.full_dim())
    throw Error("polytope/unbounded-dual", "polar dual of a lower-dimensional polytope");
  for (const auto& f : p.facets())
    if (f.offset <= 0)
      throw Error("polytope/unbounded-dual", "0 is not interior; polar dual unbounded");
  Int lcm = 1;
  for (const auto& f : p.facets()) lcm = lcm / gcd(lcm, f.offset) * f.offset;
  std::vector<IntVec> pts;
  for (const auto& f : p.facets()) {
    Int s = lcm / f.offset;
    IntVec w(f.normal.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.normal[j] * s;
    pts.push_back(std::move(w));
  }
  PolarDual d;
  d.denom = lcm;
  d.integral = (lcm == 1);
  d.scaled = Polytope::hull(pts);
  return d;
}

// The dual as a lattice polytope; throws when it is not integral.
inline Polytope polar_dual_integral(const Polytope& p) {
  PolarDual d = polar_dual(p);
  if (!d.integral)
    throw Error("polytope/non-integral-dual", "polar dual has non-integral vertices");
  return d.scaled;
}

// Reflexive iff full-dimensional with 0 interior and every facet at lattice
// distance one (offset exactly 1 with a primitive normal).
inline bool is_reflexive(const Polytope& p) {
  if (!p.full_dim()) return false;
  for (const auto& f : p.facets())
    if (f.offset != 1) return false;
  return true;
}

}  // namespace nefmm
