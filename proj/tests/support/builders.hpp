#pragma once

// Shared fixture constructors for the test suites.

#include <vector>

#include "nefmm/nef.hpp"
#include "nefmm/polytope.hpp"

namespace builders {

using nefmm::Int;
using nefmm::IntVec;
using nefmm::Polytope;

inline std::vector<IntVec> pts(std::vector<std::vector<long>> in) {
  std::vector<IntVec> out;
  for (auto& p : in) {
    IntVec v;
    for (long x : p) v.push_back(x);
    out.push_back(v);
  }
  return out;
}

inline IntVec iv(std::vector<long> in) {
  IntVec v;
  for (long x : in) v.push_back(x);
  return v;
}

// The worked 2-d fixture: a segment and a triangle summing to the reflexive
// pentagon, with translation tuple ((0,1), (0,-1)).
inline nefmm::NefPartition bn51_nabla() {
  return nefmm::validate_nef({Polytope::hull(pts({{0, 0}, {0, -1}})),
                              Polytope::hull(pts({{0, 0}, {-1, 1}, {1, 1}}))});
}

inline nefmm::MirrorPair bn51() {
  return nefmm::MirrorPair::build(bn51_nabla(), {iv({0, 1}), iv({0, -1})});
}

// Two independent copies of the 2-d fixture stacked into rank 4.
inline nefmm::MirrorPair stacked2x() {
  auto emb = [](std::vector<std::vector<long>> v, bool hi) {
    std::vector<IntVec> out;
    for (auto& p : v)
      out.push_back(hi ? iv({0, 0, p[0], p[1]}) : iv({p[0], p[1], 0, 0}));
    return out;
  };
  std::vector<std::vector<long>> seg = {{0, 0}, {0, -1}};
  std::vector<std::vector<long>> tri = {{0, 0}, {-1, 1}, {1, 1}};
  auto np = nefmm::validate_nef({Polytope::hull(emb(seg, false)), Polytope::hull(emb(tri, false)),
                                 Polytope::hull(emb(seg, true)), Polytope::hull(emb(tri, true))});
  return nefmm::MirrorPair::build(
      np, {iv({0, 1, 0, 0}), iv({0, -1, 0, 0}), iv({0, 0, 0, 1}), iv({0, 0, 0, -1})});
}

// Rank-3, r = 3: the 2-d fixture extended by a symmetric segment in a third
// part.  The third translation is forced to zero, so its vertex is a
// singleton block whose diagonal cell has three characters.
inline nefmm::MirrorPair pentagon_prism() {
  auto np = nefmm::validate_nef(
      {Polytope::hull(pts({{0, 0, 0}, {0, -1, 0}})),
       Polytope::hull(pts({{0, 0, 0}, {-1, 1, 0}, {1, 1, 0}})),
       Polytope::hull(pts({{0, 0, -1}, {0, 0, 1}}))});
  return nefmm::MirrorPair::build(np, {iv({0, 1, 0}), iv({0, -1, 0}), iv({0, 0, 0})});
}

// Rank-2 hexagon split into three segments; all three translations nonzero.
inline nefmm::MirrorPair hexagon3() {
  auto np = nefmm::validate_nef({Polytope::hull(pts({{0, 0}, {1, 0}})),
                                 Polytope::hull(pts({{0, 0}, {0, 1}})),
                                 Polytope::hull(pts({{0, 0}, {-1, -1}}))});
  return nefmm::MirrorPair::build(np, {iv({-1, 0}), iv({0, -1}), iv({1, 1})});
}

}  // namespace builders
