#pragma once

// Shared analysis pipeline behind the CLI commands: resolving an input into
// mirror data (with a direct-table fallback for inputs that fail validation
// but still describe evaluable data), and the per-section report builders.

#include <optional>
#include <string>
#include <vector>

#include "nefmm/birat.hpp"
#include "nefmm/cell_matrix.hpp"
#include "nefmm/io.hpp"

namespace nefmm {

struct Resolved {
  std::size_t rank = 0;
  std::optional<NefPartition> nabla1;
  std::optional<MirrorPair> pair;
  std::vector<Polytope> delta1, delta2;    // operative table data
  std::vector<IntVec> translations;        // resolved (possibly all zero)
  std::vector<std::vector<IntVec>> found;  // tuples found by the search (nabla form)
  bool trivial = false;                    // translations all zero
  bool valid = false;                      // full validation succeeded
  Json validation;                         // report section
};

inline Json error_json(const Error& e) {
  return Json{{"ok", false}, {"error", e.code()}, {"message", e.what()}};
}

// Recovers the translation between two polytopes that are translates of one
// another, or throws.
inline IntVec translation_between(const Polytope& from, const Polytope& to) {
  if (from.vertices().size() != to.vertices().size())
    throw Error("nef/not-translates", "parts are not translates of each other");
  IntVec n = vec_sub(to.vertices().front(), from.vertices().front());
  if (from.translate(n) != to)
    throw Error("nef/not-translates", "parts are not translates of each other");
  return n;
}

inline Resolved resolve_input(const InputData& in) {
  Resolved r;
  r.rank = in.rank;
  if (in.nabla) {
    r.nabla1 = validate_nef(*in.nabla);  // throws on bad nabla input
    r.found = find_translations(*r.nabla1);
    Json v{{"ok", true}, {"side", "nabla"}, {"parts", int(r.nabla1->size())}};
    if (in.translations) {
      r.pair = MirrorPair::build(*r.nabla1, *in.translations);
      r.translations = *in.translations;
      bool among = std::find(r.found.begin(), r.found.end(), r.translations) != r.found.end();
      v["translations_among_found"] = among;
    } else if (!r.found.empty()) {
      r.pair = MirrorPair::build(*r.nabla1, r.found.front());
      r.translations = r.found.front();
      v["translations_chosen"] = "first found";
    } else {
      // No multiple mirror: proceed with the trivial (all-zero) data.
      r.trivial = true;
      r.translations.assign(r.nabla1->size(), IntVec(in.rank, 0));
      v["translations_chosen"] = "none found; trivial pair";
    }
    if (r.pair) {
      r.delta1 = r.pair->delta1;
      r.delta2 = r.pair->delta2;
    } else {
      r.delta1 = borisov_dual_parts(*r.nabla1);
      r.delta2 = r.delta1;
    }
    r.valid = true;
    r.validation = v;
    return r;
  }

  // Delta form: try the full reconstruction, falling back to the direct
  // table when validation fails but translations were supplied.
  try {
    NefPartition d1 = validate_nef(*in.delta1);
    NefPartition d2 = validate_nef(*in.delta2);
    std::vector<Polytope> n1 = borisov_dual_parts(d1);
    std::vector<Polytope> n2 = borisov_dual_parts(d2);
    std::vector<IntVec> trans;
    bool all_zero = true;
    for (std::size_t k = 0; k < n1.size(); ++k) {
      trans.push_back(translation_between(n1[k], n2[k]));
      all_zero = all_zero && is_zero(trans.back());
    }
    if (in.translations && *in.translations != trans)
      throw Error("nef/translation-mismatch",
                  "supplied translations disagree with the reconstructed ones");
    r.nabla1 = validate_nef(n1);
    r.translations = trans;
    if (all_zero) {
      r.trivial = true;
      r.delta1 = in.delta1.value();
      r.delta2 = in.delta2.value();
    } else {
      r.pair = MirrorPair::build(*r.nabla1, trans);
      // The pair's duals must reproduce the supplied delta data.
      for (std::size_t k = 0; k < n1.size(); ++k)
        if (r.pair->delta1[k] != (*in.delta1)[k] || r.pair->delta2[k] != (*in.delta2)[k])
          throw Error("nef/delta-mismatch",
                      "supplied delta parts disagree with the Borisov duals");
      r.delta1 = r.pair->delta1;
      r.delta2 = r.pair->delta2;
    }
    r.valid = true;
    r.validation = Json{{"ok", true}, {"side", "delta"}, {"parts", int(n1.size())},
                        {"reconstructed_translations", to_json(trans)}};
    return r;
  } catch (const Error& e) {
    if (!in.translations)
      throw Error(e.code(), std::string(e.what()) +
                                " (direct-table fallback needs an explicit translations field)");
    r.delta1 = *in.delta1;
    r.delta2 = *in.delta2;
    r.translations = *in.translations;
    r.trivial = std::all_of(r.translations.begin(), r.translations.end(),
                            [](const IntVec& t) { return is_zero(t); });
    r.valid = false;
    r.validation = error_json(e);
    r.validation["fallback"] = "direct table from delta data";
    return r;
  }
}

inline CharTable table_of(const Resolved& r) {
  return build_table(r.delta1, r.delta2, r.translations, r.rank);
}

inline Json graph_section(const CellMatrix& cm) {
  Json g;
  g["vertices"] = cm.r();
  Json arrows = Json::array();
  int loops = 0;
  for (int a = 0; a < cm.r(); ++a)
    for (int b = 0; b < cm.r(); ++b)
      if (cm.graph.arrow[a][b]) {
        if (a == b) ++loops;
        arrows.push_back(Json::array({a + 1, b + 1}));
      }
  g["arrows"] = arrows;
  g["loops"] = loops;
  g["beta"] = cm.beta();
  Json blocks = Json::array();
  for (const auto& b : cm.blocks) {
    Json blk = Json::array();
    for (int v : b) blk.push_back(v + 1);
    blocks.push_back(blk);
  }
  g["blocks"] = blocks;
  Json sizes = Json::array();
  for (auto d : cm.block_sizes()) sizes.push_back(d);
  g["block_sizes"] = sizes;
  auto rep = verify_connectivity(cm);
  g["strongly_connected"] = rep.strongly_connected;
  g["all_loops"] = rep.all_loops;
  Json cond = Json::array();
  for (std::size_t c = 0; c < rep.condensation_arrows.size(); ++c)
    for (int d : rep.condensation_arrows[c]) cond.push_back(Json::array({int(c) + 1, d + 1}));
  g["condensation_arrows"] = cond;
  g["dot"] = to_dot(cm.graph);
  return g;
}

inline Json table_section(const CellMatrix& cm, bool with_chars) {
  const CharTable& t = cm.table;
  Json s;
  s["size"] = t.chars.size();
  Json cells = Json::array();
  for (const auto& row : t.cell_sizes()) {
    Json jr = Json::array();
    for (auto c : row) jr.push_back(c);
    cells.push_back(jr);
  }
  s["cell_sizes"] = cells;
  Json rows = Json::array(), cols = Json::array();
  for (int k = 0; k < t.r; ++k) {
    rows.push_back(t.row_chars(k).size());
    cols.push_back(t.col_chars(k).size());
  }
  s["row_sizes"] = rows;
  s["column_sizes"] = cols;
  Json perm = Json::array();
  for (int k : cm.perm2) perm.push_back(k + 1);
  s["structure2_permutation"] = perm;
  if (with_chars) {
    Json chars = Json::array();
    for (int i = 0; i < int(t.chars.size()); ++i) {
      const auto& c = t.chars[i];
      Json u = Json::array();
      for (int j = 0; j < t.r; ++j) u.push_back(j == c.a ? 1 : 0);
      chars.push_back(Json{{"m", to_json(c.m)},
                           {"u", u},
                           {"a", c.a + 1},
                           {"b", c.b + 1},
                           {"coefficient_id", i}});
    }
    s["characters"] = chars;
  }
  return s;
}

inline Json assumptions_section(const CellMatrix& cm) {
  Json a;
  Json perm = Json::array();
  for (int k : cm.perm2) perm.push_back(k + 1);
  a["assumption1"] = Json{{"ok", true}, {"permutation", perm}};
  a["assumption2"] =
      Json{{"side1", check_assumption2(cm.table, 1)}, {"side2", check_assumption2(cm.table, 2)}};
  return a;
}

inline Json side_report_json(const SideReport& r) {
  return Json{{"side", r.side},
              {"max_sum_residual", r.max_sum_residual},
              {"sums_ok", r.sums_ok},
              {"rank", r.rank},
              {"expected_rank", r.expected_rank},
              {"rank_ok", r.rank_ok},
              {"min_null_entry_ratio", r.min_null_entry_ratio},
              {"nulls_ok", r.nulls_ok},
              {"pass", r.pass}};
}

inline Json witness_section(const CellMatrix& cm) {
  auto wr = build_witness(cm);
  Json w;
  w["ok"] = true;
  Json adj = Json::array();
  for (int a = 0; a < cm.r(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < cm.r(); ++b) row.push_back(int(wr.adjacency(a, b)));
    adj.push_back(row);
  }
  w["adjacency"] = adj;
  w["perron_values"] = wr.perron_values;
  w["sum_zero_blocks"] = wr.sum_zero_blocks;
  w["base"] = to_json(wr.point.base);
  w["fiber"] = to_json(wr.point.fiber);
  w["coefficients"] = to_json(wr.point.coeff);
  w["evaluated"] = to_json(evaluate_cells(cm, wr.point));
  w["verify_o1"] = side_report_json(verify_side(cm, wr.point, 1));
  w["verify_o2"] = side_report_json(verify_side(cm, wr.point, 2));
  w["tolerances"] = Json{{"residual", kResidualTol},
                         {"rank_pivot", kRankTol},
                         {"perron", kPerronTol},
                         {"null_entry", kNullEntryTol}};
  return w;
}

inline Json roundtrip_section(const CellMatrix& cm, int samples, double tol,
                              std::uint64_t seed) {
  auto rep = roundtrip_check(cm, samples, tol, seed);
  return Json{{"samples", rep.samples_attempted},
              {"succeeded", rep.samples_succeeded},
              {"retries", rep.retries},
              {"max_on_z1", rep.max_on_z1},
              {"max_on_z2", rep.max_on_z2},
              {"max_phi_vs_projection", rep.max_phi_vs_proj},
              {"max_psi_vs_projection", rep.max_psi_vs_proj},
              {"max_psi_phi_deviation", rep.max_psi_phi},
              {"max_phi_psi_deviation", rep.max_phi_psi},
              {"max_torsor_deviation", rep.max_torsor},
              {"tol", rep.tol},
              {"seed", seed},
              {"pass", rep.pass}};
}

}  // namespace nefmm
