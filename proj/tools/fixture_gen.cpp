// Regenerates the bundled fixture files.  The rank-3 mirror pairs are not
// written by hand: they are found by running the translation search over the
// skewed corpus entries, exactly as the `mirrors` command would.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "nefmm/corpus.hpp"
#include "nefmm/io.hpp"

using namespace nefmm;

static void write(const std::string& dir, const std::string& name, const Json& j) {
  std::ofstream f(dir + "/" + name);
  if (!f) {
    std::cerr << "cannot write " << dir << "/" << name << "\n";
    std::exit(1);
  }
  f << j.dump(2) << "\n";
  std::cout << "wrote " << dir << "/" << name << "\n";
}

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";

  // The worked 2-d example, entered on the nabla side.
  {
    Json j;
    j["name"] = "bn51";
    j["rank"] = 2;
    auto np = validate_nef({Polytope::hull({{Int(0), Int(0)}, {Int(0), Int(-1)}}),
                            Polytope::hull({{Int(0), Int(0)}, {Int(-1), Int(1)}, {Int(1), Int(1)}})});
    j["nabla"] = to_json(np.parts);
    j["translations"] = to_json(std::vector<IntVec>{{Int(0), Int(1)}, {Int(0), Int(-1)}});
    write(dir, "bn51.json", j);

    // The same pair entered on the delta side, for cross-checking.
    auto mp = MirrorPair::build(np, {{Int(0), Int(1)}, {Int(0), Int(-1)}});
    Json d;
    d["name"] = "bn51-delta";
    d["rank"] = 2;
    d["delta1"] = to_json(mp.delta1);
    d["delta2"] = to_json(mp.delta2);
    write(dir, "bn51-delta.json", d);
  }

  // Fixtures taken from the corpus: the stacked two-factor pair and three
  // rank-3 pairs discovered by the translation search over skewed entries.
  std::map<std::string, std::string> picks = {
      {"pentagon-prism-skew-a", "rank3-a.json"},
      {"bn51-x-segpair-skew-b", "rank3-b.json"},
      {"simplex-3-x-segpair-skew-a", "rank3-c.json"},
  };
  for (const auto& e : corpus_partitions()) {
    auto it = picks.find(e.name);
    if (it == picks.end()) continue;
    auto np = validate_nef(e.parts);
    auto tuples = find_translations(np);
    if (tuples.empty()) {
      std::cerr << e.name << ": no translations found\n";
      return 1;
    }
    Json j;
    j["name"] = e.name;
    j["rank"] = e.rank;
    j["nabla"] = to_json(np.parts);
    j["translations"] = to_json(tuples.front());
    write(dir, it->second, j);
  }

  // Two independent copies of the worked fixture in rank 4.
  {
    auto seg = [](bool hi) {
      return hi ? Polytope::hull({{Int(0), Int(0), Int(0), Int(0)},
                                  {Int(0), Int(0), Int(0), Int(-1)}})
                : Polytope::hull({{Int(0), Int(0), Int(0), Int(0)},
                                  {Int(0), Int(-1), Int(0), Int(0)}});
    };
    auto tri = [](bool hi) {
      return hi ? Polytope::hull({{Int(0), Int(0), Int(0), Int(0)},
                                  {Int(0), Int(0), Int(-1), Int(1)},
                                  {Int(0), Int(0), Int(1), Int(1)}})
                : Polytope::hull({{Int(0), Int(0), Int(0), Int(0)},
                                  {Int(-1), Int(1), Int(0), Int(0)},
                                  {Int(1), Int(1), Int(0), Int(0)}});
    };
    auto np = validate_nef({seg(false), tri(false), seg(true), tri(true)});
    Json j;
    j["name"] = "stacked-2x";
    j["rank"] = 4;
    j["nabla"] = to_json(np.parts);
    j["translations"] = to_json(std::vector<IntVec>{{Int(0), Int(1), Int(0), Int(0)},
                                                    {Int(0), Int(-1), Int(0), Int(0)},
                                                    {Int(0), Int(0), Int(0), Int(1)},
                                                    {Int(0), Int(0), Int(0), Int(-1)}});
    write(dir, "stacked-2x.json", j);
  }

  // Error-path fixtures, entered on the delta side: a one-character section
  // that can never vanish on a torus, and a segment whose differences span
  // only a rank-1 sublattice.
  {
    Json j;
    j["name"] = "degenerate-singleton";
    j["rank"] = 1;
    j["delta1"] = Json::array({Json::array({Json::array({0})})});
    j["delta2"] = Json::array({Json::array({Json::array({0})})});
    j["translations"] = Json::array({Json::array({0})});
    write(dir, "degenerate-singleton.json", j);

    Json s;
    s["name"] = "asm2-segment";
    s["rank"] = 2;
    s["delta1"] = Json::array({Json::array({Json::array({0, 0}), Json::array({0, 1})})});
    s["delta2"] = Json::array({Json::array({Json::array({0, 0}), Json::array({0, 1})})});
    s["translations"] = Json::array({Json::array({0, 0})});
    write(dir, "asm2-segment.json", s);
  }

  return 0;
}
