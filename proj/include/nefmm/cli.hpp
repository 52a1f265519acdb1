#pragma once

// Command-line front end.  Every command reads one JSON input file, writes a
// JSON report to stdout (or a human summary with --format summary) and a
// short summary to stderr.  Exit codes: 0 success, 1 structured domain
// failure, 2 input error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nefmm/pipeline.hpp"

namespace nefmm {

struct CliOptions {
  std::string file;
  int samples = -1;  // command-specific default when negative
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::vector<int> blocks;
  std::string classes;
  std::string format = "json";
  std::string dot_path;
};

inline std::vector<std::vector<int>> parse_classes(const std::string& text) {
  std::vector<std::vector<int>> classes;
  std::stringstream outer(text);
  std::string group;
  while (std::getline(outer, group, ';')) {
    std::vector<int> cls;
    std::stringstream inner(group);
    std::string tok;
    while (std::getline(inner, tok, ',')) {
      if (tok.empty()) continue;
      try {
        cls.push_back(std::stoi(tok));
      } catch (...) {
        throw InputError("io/bad-classes", "classes: expected 1-based integers");
      }
    }
    if (!cls.empty()) classes.push_back(cls);
  }
  if (classes.empty()) throw InputError("io/bad-classes", "classes: nothing parsed");
  return classes;
}

namespace cli_detail {

struct CommandResult {
  Json report;
  int exit_code = 0;
  std::string summary;
};

inline CellMatrix matrix_for(const Resolved& r, const CliOptions& opt) {
  CellMatrix cm = build_cell_matrix(table_of(r));
  if (!opt.blocks.empty()) cm = fano_restrict(cm, opt.blocks);
  return cm;
}

// Runs a section builder, recording a structured failure in place of the
// section and flipping the exit code to 1.
template <typename F>
inline void guarded(Json& report, const char* key, int& code, F&& f) {
  try {
    report[key] = f();
  } catch (const Error& e) {
    report[key] = error_json(e);
    code = 1;
  }
}

inline CommandResult run_command(const std::string& cmd, const CliOptions& opt) {
  CommandResult res;
  InputData in = load_input(opt.file);
  Json& rep = res.report;
  rep["command"] = cmd;
  rep["input"] = input_to_json(in);
  int code = 0;

  Resolved r = resolve_input(in);
  rep["validation"] = r.validation;
  if (!r.valid) code = 1;

  std::ostringstream sum;
  sum << cmd << " " << opt.file << ": ";

  if (cmd == "validate") {
    sum << (r.valid ? "valid" : "invalid");
    res.exit_code = code;
    res.summary = sum.str();
    return res;
  }

  if (cmd == "dual") {
    if (r.nabla1) {
      rep["dual"] = to_json(borisov_dual_parts(*r.nabla1));
    } else {
      rep["dual"] = to_json(r.delta1);  // fallback data is already the dual side
    }
    sum << "dual computed";
    res.exit_code = code;
    res.summary = sum.str();
    return res;
  }

  if (cmd == "mirrors") {
    Json tuples = Json::array();
    for (const auto& t : r.found) tuples.push_back(to_json(t));
    rep["translations_found"] = tuples;
    sum << r.found.size() << " translation tuple(s)";
    res.exit_code = code;
    res.summary = sum.str();
    return res;
  }

  if (cmd == "coarsen") {
    if (!r.pair) throw Error("nef/no-pair", "coarsen needs a resolvable mirror pair");
    auto classes = parse_classes(opt.classes);
    auto c = coarsen(*r.pair, classes);
    Json j;
    j["degenerate"] = c.degenerate;
    j["nabla"] = to_json(c.nabla.parts);
    j["translations"] = to_json(c.translations);
    if (c.pair) {
      auto coarse_cm = build_cell_matrix(build_table(*c.pair));
      j["graph"] = graph_section(coarse_cm);
    } else {
      auto duals = borisov_dual_parts(c.nabla);
      auto coarse_cm = build_cell_matrix(build_table(duals, duals, c.translations, c.nabla.rank));
      j["graph"] = graph_section(coarse_cm);
    }
    rep["coarsened"] = j;
    sum << "coarsened into " << classes.size() << " part(s)";
    res.exit_code = code;
    res.summary = sum.str();
    return res;
  }

  // Table-based commands: analyze, witness, birat-check, fano.
  if (r.pair)
    rep["duals"] = Json{{"delta1", to_json(r.delta1)}, {"delta2", to_json(r.delta2)}};
  else
    rep["duals"] = Json{{"skipped", "no mirror pair resolved; using direct table data"}};
  if (r.nabla1) {
    Json tuples = Json::array();
    for (const auto& t : r.found) tuples.push_back(to_json(t));
    rep["translations"] =
        Json{{"used", to_json(r.translations)}, {"found", tuples}, {"trivial", r.trivial}};
  } else {
    rep["translations"] = Json{{"used", to_json(r.translations)}, {"trivial", r.trivial}};
  }

  std::optional<CellMatrix> cm;
  guarded(rep, "character_table", code, [&] {
    cm = matrix_for(r, opt);
    return table_section(*cm, cmd == "analyze");
  });
  if (!cm) {
    const Json skipped{{"skipped", "character table unavailable"}};
    rep["graph"] = skipped;
    rep["assumptions"] = skipped;
    if (cmd == "analyze" || cmd == "witness" || cmd == "fano") rep["witness"] = skipped;
    if (cmd == "analyze" || cmd == "birat-check" || cmd == "fano") rep["roundtrip"] = skipped;
    res.exit_code = 1;
    sum << "table build failed";
    res.summary = sum.str();
    return res;
  }
  rep["graph"] = graph_section(*cm);
  rep["assumptions"] = assumptions_section(*cm);

  const int default_samples = (cmd == "birat-check") ? 100 : (cmd == "fano" ? 50 : 10);
  const int samples = opt.samples >= 0 ? opt.samples : default_samples;

  if (cmd == "analyze" || cmd == "witness" || cmd == "fano")
    guarded(rep, "witness", code, [&] { return witness_section(*cm); });
  if (cmd == "analyze" || cmd == "birat-check" || cmd == "fano")
    guarded(rep, "roundtrip", code,
            [&] { return roundtrip_section(*cm, samples, opt.tol, opt.seed); });

  if (rep.contains("roundtrip") && rep["roundtrip"].contains("pass") &&
      !rep["roundtrip"]["pass"].get<bool>())
    code = 1;

  sum << "r=" << cm->r() << " beta=" << cm->beta();
  if (rep.contains("witness") && rep["witness"].contains("ok"))
    sum << " witness=" << (rep["witness"]["ok"].is_boolean() &&
                                   rep["witness"]["ok"].get<bool>()
                               ? "ok"
                               : "failed");
  if (rep.contains("roundtrip") && rep["roundtrip"].contains("pass"))
    sum << " roundtrip=" << (rep["roundtrip"]["pass"].get<bool>() ? "pass" : "fail");
  res.exit_code = code;
  res.summary = sum.str();
  return res;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nef-partition multiple mirror toolkit"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string command;
  for (const char* name :
       {"validate", "dual", "mirrors", "analyze", "witness", "birat-check", "coarsen", "fano"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("file", opt.file, "input JSON file")->required();
    sub->add_option("--samples", opt.samples, "round-trip sample count");
    sub->add_option("--tol", opt.tol, "round-trip tolerance");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--blocks", opt.blocks, "restrict to these 1-based blocks");
    sub->add_option("--classes", opt.classes, "coarsening classes, e.g. 1,2;3");
    sub->add_option("--format", opt.format, "json or summary")
        ->check(CLI::IsMember({"json", "summary"}));
    sub->add_option("--dot", opt.dot_path, "write the digraph in DOT format to this file");
    sub->callback([&command, name] { command = name; });
  }

  std::vector<const char*> argv;
  argv.push_back("nefmm");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto res = cli_detail::run_command(command, opt);
    if (!opt.dot_path.empty() && res.report.contains("graph") &&
        res.report["graph"].contains("dot")) {
      std::ofstream f(opt.dot_path);
      if (!f) throw InputError("io/unwritable", "cannot write " + opt.dot_path);
      f << res.report["graph"]["dot"].get<std::string>();
    }
    if (opt.format == "summary")
      out << res.summary << "\n";
    else
      out << res.report.dump(2) << "\n";
    err << res.summary << "\n";
    return res.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nefmm
