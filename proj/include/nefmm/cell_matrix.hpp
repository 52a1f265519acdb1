#pragma once

// The r x r arrangement of the character cells, the digraph it induces
// (arrow a -> b iff cell (a,b) is nonempty), its strongly connected
// components and condensation, the block decomposition by weak components,
// and restriction to a subset of blocks.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "nefmm/character_table.hpp"
#include "nefmm/error.hpp"

namespace nefmm {

struct Digraph {
  int n = 0;
  std::vector<std::vector<char>> arrow;  // adjacency matrix, loops included

  static Digraph from_cells(const CharTable& t) {
    Digraph d;
    d.n = t.r;
    d.arrow.assign(t.r, std::vector<char>(t.r, 0));
    for (int a = 0; a < t.r; ++a)
      for (int b = 0; b < t.r; ++b) d.arrow[a][b] = !t.cell[a][b].empty();
    return d;
  }

  bool loop(int k) const { return arrow[k][k]; }

  // Tarjan, iterative depth bounded by n (n <= 16 here, recursion is fine).
  std::vector<int> scc() const {
    std::vector<int> comp(n, -1), low(n), dfn(n, -1), stk;
    std::vector<char> on(n, 0);
    int time = 0, ncomp = 0;
    std::function<void(int)> dfs = [&](int v) {
      dfn[v] = low[v] = time++;
      stk.push_back(v);
      on[v] = 1;
      for (int w = 0; w < n; ++w) {
        if (!arrow[v][w] || v == w) continue;
        if (dfn[w] < 0) {
          dfs(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on[w]) {
          low[v] = std::min(low[v], dfn[w]);
        }
      }
      if (low[v] == dfn[v]) {
        int w;
        do {
          w = stk.back();
          stk.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    };
    for (int v = 0; v < n; ++v)
      if (dfn[v] < 0) dfs(v);
    return comp;
  }

  // Weakly connected components, numbered by smallest member vertex.
  std::vector<int> weak_components() const {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (arrow[a][b]) parent[find(a)] = find(b);
    std::vector<int> label(n, -1), out(n);
    int next = 0;
    for (int v = 0; v < n; ++v) {
      int rt = find(v);
      if (label[rt] < 0) label[rt] = next++;
      out[v] = label[rt];
    }
    return out;
  }
};

inline std::string to_dot(const Digraph& d) {
  std::ostringstream os;
  os << "digraph D {\n";
  for (int v = 0; v < d.n; ++v) os << "  " << (v + 1) << ";\n";
  for (int a = 0; a < d.n; ++a)
    for (int b = 0; b < d.n; ++b)
      if (d.arrow[a][b]) os << "  " << (a + 1) << " -> " << (b + 1) << ";\n";
  os << "}\n";
  return os.str();
}

struct CellMatrix {
  CharTable table;
  Digraph graph;
  std::vector<int> block_of;              // vertex -> block index
  std::vector<std::vector<int>> blocks;   // block -> vertices, stable order
  std::vector<int> order;                 // concatenated blocks: the permuted index order
  std::vector<int> diag_char;             // chosen diagonal character per vertex
  std::vector<int> perm2;                 // structure-2 relabeling applied (identity for mirrors)

  int r() const { return table.r; }
  int beta() const { return int(blocks.size()); }
  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> d;
    for (const auto& b : blocks) d.push_back(b.size());
    return d;
  }
  // Gauge vertex of a block: the last vertex in the permuted order.
  int gauge_vertex(int j) const { return blocks[j].back(); }
};

// Assembles the cell matrix.  Requires assumption 1; when the matching
// permutation is not the identity the structure-2 labels (columns, delta2
// parts and translations) are relabeled so diagonal cells are nonempty.
inline CellMatrix build_cell_matrix(CharTable t) {
  auto perm = assumption1_permutation(t);
  if (!perm)
    throw Error("table/assumption1-failure",
                "no structure-2 relabeling makes every diagonal cell nonempty");
  CellMatrix cm;
  cm.perm2 = *perm;
  bool identity = true;
  for (int k = 0; k < t.r; ++k) identity = identity && (*perm)[k] == k;
  if (!identity) {
    // Relabel structure-2: new label k refers to old label perm[k].
    std::vector<int> inv(t.r);
    for (int k = 0; k < t.r; ++k) inv[(*perm)[k]] = k;
    for (auto& c : t.chars) c.b = inv[c.b];
    std::vector<Polytope> d2;
    std::vector<IntVec> tr;
    for (int k = 0; k < t.r; ++k) {
      if (!t.delta2.empty()) d2.push_back(t.delta2[(*perm)[k]]);
      if (!t.translations.empty()) tr.push_back(t.translations[(*perm)[k]]);
    }
    t.delta2 = std::move(d2);
    t.translations = std::move(tr);
    for (auto& row : t.cell)
      for (auto& c : row) c.clear();
    for (int i = 0; i < int(t.chars.size()); ++i) t.cell[t.chars[i].a][t.chars[i].b].push_back(i);
  }

  cm.graph = Digraph::from_cells(t);
  std::vector<int> weak = cm.graph.weak_components();
  int beta = *std::max_element(weak.begin(), weak.end()) + 1;
  cm.blocks.assign(beta, {});
  for (int v = 0; v < t.r; ++v) cm.blocks[weak[v]].push_back(v);
  cm.block_of = weak;
  for (const auto& b : cm.blocks)
    for (int v : b) cm.order.push_back(v);
  for (int k = 0; k < t.r; ++k) {
    auto o = origin_char(t, k);
    if (o)
      cm.diag_char.push_back(*o);
    else if (!t.cell[k][k].empty())
      cm.diag_char.push_back(t.cell[k][k].front());
    else
      throw Error("table/assumption1-failure", "empty diagonal cell after relabeling");
  }
  cm.table = std::move(t);
  return cm;
}

struct ConnectivityReport {
  bool strongly_connected = true;  // every weak component is a single SCC
  bool all_loops = true;
  std::vector<int> scc_of;
  std::vector<std::vector<int>> condensation_arrows;  // between SCC classes, loops included
  std::vector<int> missing_loops;
  std::vector<int> split_components;  // weak components that are not one SCC
};

// Reports rather than throws: a violation on mirror data is test-failure
// evidence, not a runtime error.
inline ConnectivityReport verify_connectivity(const CellMatrix& cm) {
  ConnectivityReport rep;
  const Digraph& g = cm.graph;
  rep.scc_of = g.scc();
  for (int k = 0; k < g.n; ++k)
    if (!g.loop(k)) {
      rep.all_loops = false;
      rep.missing_loops.push_back(k);
    }
  for (int j = 0; j < cm.beta(); ++j) {
    const auto& verts = cm.blocks[j];
    for (std::size_t i = 1; i < verts.size(); ++i)
      if (rep.scc_of[verts[i]] != rep.scc_of[verts[0]]) {
        rep.strongly_connected = false;
        rep.split_components.push_back(j);
        break;
      }
  }
  int ncomp = *std::max_element(rep.scc_of.begin(), rep.scc_of.end()) + 1;
  rep.condensation_arrows.assign(ncomp, std::vector<int>());
  std::vector<std::vector<char>> seen(ncomp, std::vector<char>(ncomp, 0));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.arrow[a][b] && !seen[rep.scc_of[a]][rep.scc_of[b]]) {
        seen[rep.scc_of[a]][rep.scc_of[b]] = 1;
        rep.condensation_arrows[rep.scc_of[a]].push_back(rep.scc_of[b]);
      }
  return rep;
}

// Restriction to a nonempty proper subset of blocks: the sub-table over the
// kept vertices is rebuilt from its own parts and translations, so every
// downstream operation runs on it unchanged.
inline CellMatrix fano_restrict(const CellMatrix& cm, const std::vector<int>& block_indices) {
  const int beta = cm.beta();
  std::vector<char> keep_block(beta, 0);
  for (int j : block_indices) {
    if (j < 1 || j > beta)
      throw InputError("graph/invalid-blocks", "block index out of range");
    keep_block[j - 1] = 1;
  }
  int kept = std::count(keep_block.begin(), keep_block.end(), char(1));
  if (kept == 0 || kept == beta)
    throw Error("graph/invalid-blocks",
                "block restriction requires a nonempty proper subset of blocks");
  std::vector<Polytope> d1, d2;
  std::vector<IntVec> tr;
  for (int j = 0; j < beta; ++j) {
    if (!keep_block[j]) continue;
    for (int v : cm.blocks[j]) {
      d1.push_back(cm.table.delta1[v]);
      d2.push_back(cm.table.delta2[v]);
      tr.push_back(cm.table.translations[v]);
    }
  }
  return build_cell_matrix(build_table(d1, d2, tr, cm.table.rank));
}

}  // namespace nefmm
