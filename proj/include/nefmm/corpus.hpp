#pragma once

// A deterministic corpus of small nef-partitions in rank 2 and 3, used by
// the bundled fixtures and the verification suites.  Base families (segment
// splits of squares, hexagons and cubes, simplex pairs, products of the
// worked 2-d fixture) are replicated under fixed unimodular changes of
// basis, which preserves all the combinatorics while exercising the code on
// skewed coordinates.

#include <string>
#include <vector>

#include "nefmm/nef.hpp"

namespace nefmm {

struct CorpusEntry {
  std::string name;
  std::size_t rank = 0;
  std::vector<Polytope> parts;
};

namespace detail {

inline IntVec cv(std::vector<long> in) {
  IntVec v;
  for (long x : in) v.push_back(x);
  return v;
}

inline Polytope cp(std::vector<std::vector<long>> in) {
  std::vector<IntVec> pts;
  for (auto& p : in) pts.push_back(cv(p));
  return Polytope::hull(pts);
}

inline std::vector<Polytope> apply_unimodular(const std::vector<Polytope>& parts,
                                              const IntMat& u) {
  std::vector<Polytope> out;
  for (const auto& p : parts) {
    std::vector<IntVec> vs;
    for (const auto& v : p.vertices()) {
      IntVec w(u.rows(), 0);
      for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) w[i] += u.at(i, j) * v[j];
      vs.push_back(w);
    }
    out.push_back(Polytope::hull(vs));
  }
  return out;
}

}  // namespace detail

inline std::vector<CorpusEntry> corpus_partitions() {
  using detail::cp;
  using detail::cv;
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, std::size_t rank, std::vector<Polytope> parts) {
    out.push_back({std::move(name), rank, std::move(parts)});
  };

  // Rank 2 base families.
  add("bn51", 2, {cp({{0, 0}, {0, -1}}), cp({{0, 0}, {-1, 1}, {1, 1}})});
  add("square-4seg", 2,
      {cp({{0, 0}, {1, 0}}), cp({{0, 0}, {-1, 0}}), cp({{0, 0}, {0, 1}}), cp({{0, 0}, {0, -1}})});
  add("square-cross", 2, {cp({{1, 0}, {-1, 0}}), cp({{0, 1}, {0, -1}})});
  add("hexagon-3seg", 2, {cp({{0, 0}, {1, 0}}), cp({{0, 0}, {0, 1}}), cp({{0, 0}, {-1, -1}})});
  add("simplex-3", 2,
      {cp({{-1, 0}, {0, 0}, {-1, 1}}), cp({{0, -1}, {1, -1}, {0, 0}}),
       cp({{0, 0}, {1, 0}, {0, 1}})});
  add("hexagon-2tri", 2,
      {cp({{0, 0}, {1, 0}, {0, 1}}), cp({{0, 0}, {-1, 0}, {0, -1}})});

  // Rank 3 base families.
  add("pentagon-prism", 3,
      {cp({{0, 0, 0}, {0, -1, 0}}), cp({{0, 0, 0}, {-1, 1, 0}, {1, 1, 0}}),
       cp({{0, 0, -1}, {0, 0, 1}})});
  add("bn51-x-segpair", 3,
      {cp({{0, 0, 0}, {0, -1, 0}}), cp({{0, 0, 0}, {-1, 1, 0}, {1, 1, 0}}),
       cp({{0, 0, 0}, {0, 0, 1}}), cp({{0, 0, 0}, {0, 0, -1}})});
  add("cube-6seg", 3,
      {cp({{0, 0, 0}, {1, 0, 0}}), cp({{0, 0, 0}, {-1, 0, 0}}), cp({{0, 0, 0}, {0, 1, 0}}),
       cp({{0, 0, 0}, {0, -1, 0}}), cp({{0, 0, 0}, {0, 0, 1}}), cp({{0, 0, 0}, {0, 0, -1}})});
  add("simplex-3-x-segpair", 3,
      {cp({{-1, 0, 0}, {0, 0, 0}, {-1, 1, 0}}), cp({{0, -1, 0}, {1, -1, 0}, {0, 0, 0}}),
       cp({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), cp({{0, 0, 0}, {0, 0, 1}}),
       cp({{0, 0, 0}, {0, 0, -1}})});

  // Unimodular twists of the base families.
  IntMat u2a = IntMat::from_rows({cv({1, 1}), cv({0, 1})});
  IntMat u2b = IntMat::from_rows({cv({2, 1}), cv({1, 1})});
  IntMat u3a = IntMat::from_rows({cv({1, 1, 0}), cv({0, 1, 1}), cv({0, 0, 1})});
  IntMat u3b = IntMat::from_rows({cv({1, 0, 1}), cv({1, 1, 1}), cv({0, 1, 1})});
  std::vector<CorpusEntry> base = out;
  for (const auto& e : base) {
    if (e.rank == 2) {
      out.push_back({e.name + "-skew-a", 2, detail::apply_unimodular(e.parts, u2a)});
      out.push_back({e.name + "-skew-b", 2, detail::apply_unimodular(e.parts, u2b)});
    } else {
      out.push_back({e.name + "-skew-a", 3, detail::apply_unimodular(e.parts, u3a)});
      out.push_back({e.name + "-skew-b", 3, detail::apply_unimodular(e.parts, u3b)});
    }
  }
  return out;
}

}  // namespace nefmm
