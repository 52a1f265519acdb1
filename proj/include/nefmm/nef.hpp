#pragma once

// Nef-partitions and their combinatorics: validation, the dual partition,
// the search for translation vectors that produce a second partition with
// the same Minkowski sum, and coarsening by index classes.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nefmm/error.hpp"
#include "nefmm/polytope.hpp"

namespace nefmm {

struct NefPartition {
  std::size_t rank = 0;
  std::vector<Polytope> parts;
  Polytope sum;

  std::size_t size() const { return parts.size(); }
};

// Checks the defining clauses one by one: uniform rank, 0 in every part,
// no part equal to {0}, and a reflexive Minkowski sum.  Each violated clause
// raises its own error variant.
inline NefPartition validate_nef(std::vector<Polytope> parts) {
  if (parts.empty()) throw InputError("nef/empty", "a nef-partition needs at least one part");
  const std::size_t rank = parts[0].rank();
  for (const auto& p : parts)
    if (p.rank() != rank)
      throw InputError("lattice/dimension-mismatch", "nef-partition parts of mixed rank");
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (!parts[k].contains_zero())
      throw Error("nef/zero-membership",
                  "part " + std::to_string(k + 1) + " does not contain 0");
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (parts[k].is_single_point())
      throw Error("nef/zero-part", "part " + std::to_string(k + 1) + " equals {0}");
  Polytope sum = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) sum = minkowski_sum(sum, parts[k]);
  if (!is_reflexive(sum))
    throw Error("nef/not-reflexive", "the Minkowski sum of the parts is not reflexive");
  NefPartition np;
  np.rank = rank;
  np.parts = std::move(parts);
  np.sum = std::move(sum);
  return np;
}

// Dual partition: the k-th part collects the lattice points m with
// <m, y> >= -delta(k', k) for every y in part k', then takes their hull.
// All candidates lie in the polar dual of the Minkowski sum, which is a
// finite search region.
inline std::vector<Polytope> borisov_dual_parts(const NefPartition& p) {
  const Polytope region = polar_dual_integral(p.sum);
  std::vector<Polytope> duals;
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::vector<IntVec> pts;
    for (const auto& m : region.lattice_points()) {
      bool ok = true;
      for (std::size_t kp = 0; kp < p.size() && ok; ++kp) {
        const Int bound = (kp == k) ? -1 : 0;
        for (const auto& y : p.parts[kp].vertices())
          if (dot(m, y) < bound) {
            ok = false;
            break;
          }
      }
      if (ok) pts.push_back(m);
    }
    if (pts.empty())
      throw Error("nef/internal", "dual part " + std::to_string(k + 1) + " came out empty");
    duals.push_back(Polytope::hull(pts));
  }
  return duals;
}

inline NefPartition borisov_dual(const NefPartition& p) {
  return validate_nef(borisov_dual_parts(p));
}

// All tuples (n_1, ..., n_r), not all zero, with -n_k a lattice point of the
// k-th part and sum zero, whose translated family is again a valid
// nef-partition.  The final validation is redundant for genuine input and is
// kept as a loud cross-check of that fact.
inline std::vector<std::vector<IntVec>> find_translations(const NefPartition& p) {
  const std::size_t r = p.size(), n = p.rank;
  std::vector<std::vector<IntVec>> candidates(r);
  for (std::size_t k = 0; k < r; ++k)
    for (const auto& q : p.parts[k].lattice_points()) candidates[k].push_back(vec_neg(q));
  // Per-part bounds for partial-sum pruning.
  std::vector<IntVec> cmin(r, IntVec(n)), cmax(r, IntVec(n));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      cmin[k][j] = candidates[k][0][j];
      cmax[k][j] = candidates[k][0][j];
      for (const auto& c : candidates[k]) {
        if (c[j] < cmin[k][j]) cmin[k][j] = c[j];
        if (c[j] > cmax[k][j]) cmax[k][j] = c[j];
      }
    }
  std::vector<IntVec> suffix_min(r + 1, IntVec(n, 0)), suffix_max(r + 1, IntVec(n, 0));
  for (std::size_t k = r; k-- > 0;)
    for (std::size_t j = 0; j < n; ++j) {
      suffix_min[k][j] = suffix_min[k + 1][j] + cmin[k][j];
      suffix_max[k][j] = suffix_max[k + 1][j] + cmax[k][j];
    }

  std::vector<std::vector<IntVec>> found;
  std::vector<IntVec> tuple(r);
  IntVec partial(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == r) {
      if (!is_zero(partial)) return;
      bool nonzero = false;
      for (const auto& t : tuple) nonzero = nonzero || !is_zero(t);
      if (!nonzero) return;
      std::vector<Polytope> shifted;
      for (std::size_t i = 0; i < r; ++i) shifted.push_back(p.parts[i].translate(tuple[i]));
      try {
        validate_nef(shifted);
      } catch (const Error& e) {
        throw Error("nef/translation-check",
                    std::string("translated family unexpectedly failed validation: ") +
                        e.what());
      }
      found.push_back(tuple);
      return;
    }
    for (const auto& c : candidates[k]) {
      bool feasible = true;
      for (std::size_t j = 0; j < n && feasible; ++j) {
        Int v = partial[j] + c[j];
        feasible = (v + suffix_min[k + 1][j] <= 0) && (v + suffix_max[k + 1][j] >= 0);
      }
      if (!feasible) continue;
      tuple[k] = c;
      for (std::size_t j = 0; j < n; ++j) partial[j] += c[j];
      rec(k + 1);
      for (std::size_t j = 0; j < n; ++j) partial[j] -= c[j];
    }
  };
  rec(0);
  return found;
}

// A nef-partition together with translation data making the translated
// family a nef-partition again, plus both dual partitions.
struct MirrorPair {
  NefPartition nabla1;
  std::vector<IntVec> translations;
  NefPartition nabla2;
  std::vector<Polytope> delta1, delta2;

  std::size_t rank() const { return nabla1.rank; }
  std::size_t r() const { return nabla1.size(); }

  static MirrorPair build(NefPartition nabla1, std::vector<IntVec> translations) {
    const std::size_t r = nabla1.size(), n = nabla1.rank;
    if (translations.size() != r)
      throw InputError("lattice/dimension-mismatch", "one translation per part required");
    IntVec total(n, 0);
    bool nonzero = false;
    for (std::size_t k = 0; k < r; ++k) {
      if (translations[k].size() != n)
        throw InputError("lattice/dimension-mismatch", "translation of wrong rank");
      total = vec_add(total, translations[k]);
      nonzero = nonzero || !is_zero(translations[k]);
      if (!nabla1.parts[k].contains(vec_neg(translations[k])))
        throw Error("nef/translation-membership",
                    "-n_" + std::to_string(k + 1) + " is not in part " + std::to_string(k + 1));
    }
    if (!is_zero(total))
      throw Error("nef/translation-sum", "translations do not sum to zero");
    if (!nonzero)
      throw Error("nef/translation-trivial", "all translations are zero");

    MirrorPair mp;
    std::vector<Polytope> shifted;
    for (std::size_t k = 0; k < r; ++k)
      shifted.push_back(nabla1.parts[k].translate(translations[k]));
    mp.nabla2 = validate_nef(std::move(shifted));
    if (mp.nabla2.sum != nabla1.sum)
      throw Error("nef/translation-check", "translated family changed the Minkowski sum");
    mp.delta1 = borisov_dual_parts(nabla1);
    mp.delta2 = borisov_dual_parts(mp.nabla2);
    mp.nabla1 = std::move(nabla1);
    mp.translations = std::move(translations);
    return mp;
  }
};

// Coarsening by a set partition of the index set.  Parts and translations
// are summed over each class.  When every coarse translation vanishes the
// result is tagged degenerate and no MirrorPair is formed; the trivial
// translation data (all zeros) is still reported.
struct CoarsenResult {
  bool degenerate = false;
  NefPartition nabla;
  std::vector<IntVec> translations;
  std::optional<MirrorPair> pair;
};

inline CoarsenResult coarsen(const MirrorPair& mp, const std::vector<std::vector<int>>& classes) {
  const std::size_t r = mp.r();
  std::vector<char> seen(r, 0);
  for (const auto& cls : classes) {
    if (cls.empty()) throw InputError("nef/invalid-classes", "empty class");
    for (int i : cls) {
      if (i < 1 || std::size_t(i) > r)
        throw InputError("nef/invalid-classes", "class index out of range");
      if (seen[i - 1]) throw InputError("nef/invalid-classes", "repeated class index");
      seen[i - 1] = 1;
    }
  }
  for (char s : seen)
    if (!s) throw InputError("nef/invalid-classes", "classes do not cover every index");

  CoarsenResult out;
  std::vector<Polytope> parts;
  std::vector<IntVec> trans;
  for (const auto& cls : classes) {
    Polytope part = mp.nabla1.parts[cls[0] - 1];
    IntVec t = mp.translations[cls[0] - 1];
    for (std::size_t i = 1; i < cls.size(); ++i) {
      part = minkowski_sum(part, mp.nabla1.parts[cls[i] - 1]);
      t = vec_add(t, mp.translations[cls[i] - 1]);
    }
    parts.push_back(std::move(part));
    trans.push_back(std::move(t));
  }
  out.nabla = validate_nef(parts);
  out.translations = trans;
  out.degenerate = std::all_of(trans.begin(), trans.end(),
                               [](const IntVec& t) { return is_zero(t); });
  if (!out.degenerate) out.pair = MirrorPair::build(out.nabla, trans);
  return out;
}

}  // namespace nefmm
