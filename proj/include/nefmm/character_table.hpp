#pragma once

// The extended character set of a mirror pair and its double classification.
//
// Characters live in M + Z^r.  A character is a pair (m, e_a) with m a
// lattice point of the a-th structure-1 part.  Its structure-2 index b is
// read off the degree vector
//
//     deg2_j(m, e_a) = delta_{ja} - <m, n_j>,
//
// which must be a standard unit vector e_b.  Equivalently, (m, e_a) - (0,
// e_b) lies in the structure-2 base character lattice { (m, u) : u_j =
// <m, n_j> }.  Sign convention throughout: for nonzero m in an off-diagonal
// cell (a, b), <m, n_a> = +1 and <m, n_b> = -1.  The table build cross-checks
// the degree classification against the independently computed structure-2
// dual parts and refuses to build when they disagree.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nefmm/error.hpp"
#include "nefmm/lattice.hpp"
#include "nefmm/nef.hpp"

namespace nefmm {

struct ExtChar {
  IntVec m;   // M-component
  int a = 0;  // structure-1 index (0-based); the Z^r component is e_a
  int b = 0;  // structure-2 index (0-based)
};

struct CharTable {
  std::size_t rank = 0;  // rank of M
  int r = 0;             // number of parts
  std::vector<IntVec> translations;       // n_k, one per part
  std::vector<ExtChar> chars;             // sorted by (a, lex m); index = coefficient id
  std::vector<std::vector<std::vector<int>>> cell;  // [a][b] -> char indices
  std::vector<Polytope> delta1, delta2;

  const std::vector<int>& cell_at(int a, int b) const { return cell[a][b]; }
  std::vector<int> row_chars(int a) const {
    std::vector<int> out;
    for (int b = 0; b < r; ++b)
      for (int i : cell[a][b]) out.push_back(i);
    return out;
  }
  std::vector<int> col_chars(int b) const {
    std::vector<int> out;
    for (int a = 0; a < r; ++a)
      for (int i : cell[a][b]) out.push_back(i);
    return out;
  }
  std::vector<std::vector<std::size_t>> cell_sizes() const {
    std::vector<std::vector<std::size_t>> s(r, std::vector<std::size_t>(r, 0));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) s[a][b] = cell[a][b].size();
    return s;
  }
};

// Classification of a single lattice point of the a-th structure-1 part by
// its pairings with the translations: all pairings zero (or m = 0) stays on
// the diagonal, otherwise <m, n_a> = +1 picks out exactly one b with
// <m, n_b> = -1 and zeros elsewhere.  Any other pattern is rejected.
inline std::pair<int, int> classify_by_pairing(const IntVec& m, int a,
                                               const std::vector<IntVec>& translations) {
  const int r = int(translations.size());
  std::vector<Int> pair(r);
  bool all_zero = true;
  for (int j = 0; j < r; ++j) {
    pair[j] = dot(m, translations[j]);
    all_zero = all_zero && (pair[j] == 0);
  }
  if (is_zero(m) || all_zero) return {a, a};
  if (pair[a] != 1)
    throw Error("table/pairing-inconsistency",
                "nonzero character pairs to " + pair[a].str() + " against its own translation");
  int b = -1;
  for (int j = 0; j < r; ++j) {
    if (j == a) continue;
    if (pair[j] == 0) continue;
    if (pair[j] == -1 && b < 0) {
      b = j;
      continue;
    }
    throw Error("table/pairing-inconsistency", "pairing pattern is not (+1, -1, 0, ...)");
  }
  if (b < 0)
    throw Error("table/pairing-inconsistency", "no -1 partner for a nonzero character");
  return {a, b};
}

// Builds the table from structure-1 parts, translations, and independently
// supplied structure-2 parts.  The degree classification is primary; the
// structure-2 parts serve as the mandatory cross-check.
inline CharTable build_table(const std::vector<Polytope>& delta1,
                             const std::vector<Polytope>& delta2,
                             const std::vector<IntVec>& translations, std::size_t rank) {
  const int r = int(delta1.size());
  if (delta2.size() != delta1.size() || translations.size() != delta1.size())
    throw InputError("lattice/dimension-mismatch",
                     "delta1, delta2 and translations must have matching lengths");
  CharTable t;
  t.rank = rank;
  t.r = r;
  t.translations = translations;
  t.delta1 = delta1;
  t.delta2 = delta2;
  t.cell.assign(r, std::vector<std::vector<int>>(r));

  for (int a = 0; a < r; ++a) {
    std::vector<IntVec> pts = delta1[a].lattice_points();  // already lex-sorted
    for (const auto& m : pts) {
      // deg2_j = delta_{ja} - <m, n_j> must be a unit vector.
      int b = -1;
      bool ok = true;
      for (int j = 0; j < r && ok; ++j) {
        Int d = Int(j == a ? 1 : 0) - dot(m, translations[j]);
        if (d == 0) continue;
        if (d == 1 && b < 0)
          b = j;
        else
          ok = false;
      }
      if (!ok || b < 0)
        throw Error("table/structural-inconsistency",
                    "structure-2 degree of a character is not a unit vector");
      ExtChar c;
      c.m = m;
      c.a = a;
      c.b = b;
      t.chars.push_back(std::move(c));
    }
  }
  // Deterministic order and cells.
  std::sort(t.chars.begin(), t.chars.end(), [](const ExtChar& x, const ExtChar& y) {
    if (x.a != y.a) return x.a < y.a;
    return lex_less(x.m, y.m);
  });
  for (int i = 0; i < int(t.chars.size()); ++i)
    t.cell[t.chars[i].a][t.chars[i].b].push_back(i);

  // Cross-check: the m-parts classified into column b must be exactly the
  // lattice points of the independently computed structure-2 part b.
  for (int b = 0; b < r; ++b) {
    std::vector<IntVec> got;
    for (int i : t.col_chars(b)) got.push_back(t.chars[i].m);
    std::sort(got.begin(), got.end(), lex_less);
    if (got != delta2[b].lattice_points())
      throw Error("table/classification-conflict",
                  "column " + std::to_string(b + 1) +
                      " disagrees with the independently computed dual part");
  }
  return t;
}

inline CharTable build_table(const MirrorPair& mp) {
  return build_table(mp.delta1, mp.delta2, mp.translations, mp.rank());
}

// Index (0-based) of the origin character (0, e_k) in cell (k, k), if present.
inline std::optional<int> origin_char(const CharTable& t, int k) {
  for (int i : t.cell[k][k])
    if (is_zero(t.chars[i].m)) return i;
  return std::nullopt;
}

// Assumption 1: a labeling of the structure-2 parts making every diagonal
// cell nonempty.  The identity is preferred; otherwise a bipartite perfect
// matching on nonempty cells is returned, or nullopt when none exists.
inline std::optional<std::vector<int>> assumption1_permutation(const CharTable& t) {
  const int r = t.r;
  bool identity = true;
  for (int k = 0; k < r && identity; ++k) identity = !t.cell[k][k].empty();
  if (identity) {
    std::vector<int> id(r);
    for (int k = 0; k < r; ++k) id[k] = k;
    return id;
  }
  // Kuhn's augmenting paths: match rows to columns through nonempty cells.
  std::vector<int> match_col(r, -1);
  std::function<bool(int, std::vector<char>&)> try_row = [&](int a, std::vector<char>& used) {
    for (int b = 0; b < r; ++b) {
      if (t.cell[a][b].empty() || used[b]) continue;
      used[b] = 1;
      if (match_col[b] < 0 || try_row(match_col[b], used)) {
        match_col[b] = a;
        return true;
      }
    }
    return false;
  };
  for (int a = 0; a < r; ++a) {
    std::vector<char> used(r, 0);
    if (!try_row(a, used)) return std::nullopt;
  }
  std::vector<int> perm(r);  // perm[k] = structure-2 label matched to row k
  for (int b = 0; b < r; ++b) perm[match_col[b]] = b;
  return perm;
}

// Assumption 2.  Side 1: differences of the m-parts within each row,
// pooled over rows, generate M.  Side 2: differences of the full (m, u)
// vectors within each column generate the structure-2 base character
// lattice, the kernel of the degree map inside M + Z^r.
inline bool check_assumption2(const CharTable& t, int side) {
  if (side != 1 && side != 2)
    throw InputError("table/bad-side", "side must be 1 or 2");
  const std::size_t n = t.rank;
  const int r = t.r;
  auto embed = [&](const ExtChar& c) {
    IntVec v(n + std::size_t(r), 0);
    for (std::size_t j = 0; j < n; ++j) v[j] = c.m[j];
    v[n + std::size_t(c.a)] = 1;
    return v;
  };
  std::vector<IntVec> diffs;
  for (int k = 0; k < r; ++k) {
    std::vector<int> group = (side == 1) ? t.row_chars(k) : t.col_chars(k);
    for (std::size_t i = 1; i < group.size(); ++i) {
      if (side == 1)
        diffs.push_back(vec_sub(t.chars[group[i]].m, t.chars[group[0]].m));
      else
        diffs.push_back(vec_sub(embed(t.chars[group[i]]), embed(t.chars[group[0]])));
    }
  }
  if (side == 1) {
    if (diffs.empty()) return n == 0;
    return generates_full_lattice(diffs, n);
  }
  IntMat ambient = [&] {
    IntMat b(0, 0);
    for (std::size_t i = 0; i < n; ++i) {
      IntVec row(n + std::size_t(r), 0);
      row[i] = 1;
      for (int j = 0; j < r; ++j) row[n + std::size_t(j)] = t.translations[j][i];
      b.append_row(row);
    }
    return b;
  }();
  if (diffs.empty()) return n == 0;
  return generates_full_lattice(diffs, ambient);
}

// Basis of the structure-2 base character lattice { (m, u) : u_j = <m, n_j> }
// inside M + Z^r, as the graph lift of the standard basis of M.  Row i is
// (e_i, (<e_i, n_1>, ..., <e_i, n_r>)); projection to M is an isomorphism,
// so the coordinates of any lattice element in this basis are its m-part.
inline IntMat y2_lattice_basis(const std::vector<IntVec>& translations, std::size_t rank) {
  const std::size_t r = translations.size();
  IntMat b(0, 0);
  for (std::size_t i = 0; i < rank; ++i) {
    IntVec row(rank + r, 0);
    row[i] = 1;
    for (std::size_t j = 0; j < r; ++j) row[rank + j] = translations[j][i];
    b.append_row(row);
  }
  return b;
}

inline IntMat y2_lattice_basis(const MirrorPair& mp) {
  return y2_lattice_basis(mp.translations, mp.rank());
}

}  // namespace nefmm
