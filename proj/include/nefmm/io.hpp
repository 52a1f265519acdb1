#pragma once

// JSON input parsing and report serialization.  Inputs carry the
// V-representation only; H-representations are always derived.  Input
// schema, top level:
//   { "rank": n, "nabla": [[...vertices...], ...], "translations": [[...], ...] }
// or
//   { "rank": n, "delta1": [...], "delta2": [...], "translations": [[...], ...] }
// where every polytope is an array of integer coordinate arrays and the
// translations field is optional in both forms.

#include <json.hpp>

#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nefmm/birat.hpp"
#include "nefmm/cell_matrix.hpp"
#include "nefmm/error.hpp"
#include "nefmm/nef.hpp"
#include "nefmm/numeric.hpp"

namespace nefmm {

using Json = nlohmann::ordered_json;

inline long json_safe_long(const Int& x) {
  if (x > Int(std::numeric_limits<long long>::max() / 2) ||
      x < Int(std::numeric_limits<long long>::min() / 2))
    throw Error("io/overflow", "integer too large for JSON export");
  return x.convert_to<long>();
}

inline Json to_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(json_safe_long(x));
  return a;
}

inline Json to_json(const Polytope& p) {
  Json a = Json::array();
  for (const auto& v : p.vertices()) a.push_back(to_json(v));
  return a;
}

inline Json to_json(const std::vector<Polytope>& parts) {
  Json a = Json::array();
  for (const auto& p : parts) a.push_back(to_json(p));
  return a;
}

inline Json to_json(const std::vector<IntVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline Json to_json(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const CVec& v) {
  Json a = Json::array();
  for (long i = 0; i < v.size(); ++i) a.push_back(to_json(v[i]));
  return a;
}

inline Json to_json(const CMat& m) {
  Json a = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

struct InputData {
  std::size_t rank = 0;
  std::optional<std::vector<Polytope>> nabla;
  std::optional<std::vector<Polytope>> delta1, delta2;
  std::optional<std::vector<IntVec>> translations;
  Json echo;
};

inline IntVec parse_vec(const Json& j, std::size_t rank, const std::string& where) {
  if (!j.is_array() || j.size() != rank)
    throw InputError("io/bad-vector", where + ": expected an array of " +
                                          std::to_string(rank) + " integers");
  IntVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer())
      throw InputError("io/bad-vector", where + ": coordinates must be integers");
    v.push_back(Int(x.get<long long>()));
  }
  return v;
}

inline std::vector<Polytope> parse_parts(const Json& j, std::size_t rank,
                                         const std::string& field) {
  if (!j.is_array() || j.empty())
    throw InputError("io/bad-field", field + ": expected a nonempty array of polytopes");
  std::vector<Polytope> parts;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& poly = j[k];
    if (!poly.is_array() || poly.empty())
      throw InputError("io/bad-field",
                       field + "[" + std::to_string(k) + "]: expected a vertex array");
    std::vector<IntVec> pts;
    for (const auto& v : poly)
      pts.push_back(parse_vec(v, rank, field + "[" + std::to_string(k) + "]"));
    parts.push_back(Polytope::hull(pts));
  }
  return parts;
}

inline InputData parse_input(const Json& j) {
  if (!j.is_object()) throw InputError("io/bad-input", "top-level JSON must be an object");
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    throw InputError("io/bad-field", "rank: required integer field");
  InputData in;
  in.rank = j["rank"].get<std::size_t>();
  if (in.rank == 0 || in.rank > 6)
    throw InputError("io/bad-field", "rank: must be between 1 and 6");
  in.echo = j;
  const bool has_nabla = j.contains("nabla");
  const bool has_delta = j.contains("delta1") || j.contains("delta2");
  if (has_nabla == has_delta)
    throw InputError("io/bad-input", "provide either nabla or delta1/delta2");
  if (has_nabla) in.nabla = parse_parts(j["nabla"], in.rank, "nabla");
  if (has_delta) {
    if (!j.contains("delta1") || !j.contains("delta2"))
      throw InputError("io/bad-input", "delta form needs both delta1 and delta2");
    in.delta1 = parse_parts(j["delta1"], in.rank, "delta1");
    in.delta2 = parse_parts(j["delta2"], in.rank, "delta2");
    if (in.delta1->size() != in.delta2->size())
      throw InputError("io/bad-input", "delta1 and delta2 must have the same length");
  }
  if (j.contains("translations")) {
    const auto& t = j["translations"];
    if (!t.is_array())
      throw InputError("io/bad-field", "translations: expected an array of vectors");
    std::vector<IntVec> tr;
    for (const auto& v : t) tr.push_back(parse_vec(v, in.rank, "translations"));
    in.translations = tr;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "rank" && key != "nabla" && key != "delta1" && key != "delta2" &&
        key != "translations" && key != "name")
      throw InputError("io/bad-field", key + ": unknown field");
  }
  return in;
}

inline InputData load_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("io/unreadable", "cannot open " + path);
  Json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("io/bad-json", std::string("malformed JSON: ") + e.what());
  }
  return parse_input(j);
}

inline Json input_to_json(const InputData& in) {
  Json j;
  j["rank"] = in.rank;
  if (in.nabla) j["nabla"] = to_json(*in.nabla);
  if (in.delta1) j["delta1"] = to_json(*in.delta1);
  if (in.delta2) j["delta2"] = to_json(*in.delta2);
  if (in.translations) j["translations"] = to_json(*in.translations);
  return j;
}

}  // namespace nefmm
