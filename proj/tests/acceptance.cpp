// Acceptance suite: runs the end-to-end checks the project promises, one
// line of output per criterion.  Returns the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "nefmm/cli.hpp"
#include "nefmm/corpus.hpp"
#include "support/oracles.hpp"

using namespace nefmm;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
  auto t0 = Clock::now();
  std::string verdict = "PASS";
  std::string detail;
  try {
    body();
  } catch (const std::exception& e) {
    verdict = "FAIL";
    detail = e.what();
    ++failures;
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%s  %-28s (%.2fs)%s%s\n", verdict.c_str(), name.c_str(), secs,
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::string fixture(const std::string& name) {
  return std::string(NEFMM_FIXTURE_DIR) + "/" + name;
}

MirrorPair pair_from_fixture(const std::string& name) {
  InputData in = load_input(fixture(name));
  Resolved r = resolve_input(in);
  require(r.pair.has_value(), name + ": fixture did not resolve to a mirror pair");
  return *r.pair;
}

// Every mirror pair arising from the generated corpus: each partition is run
// through the translation search and every tuple found becomes a pair.
std::vector<std::pair<std::string, MirrorPair>> corpus_pairs() {
  std::vector<std::pair<std::string, MirrorPair>> out;
  for (const auto& e : corpus_partitions()) {
    auto np = validate_nef(e.parts);
    auto tuples = find_translations(np);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      out.emplace_back(e.name + "#" + std::to_string(i), MirrorPair::build(np, tuples[i]));
  }
  return out;
}

const std::vector<std::string> kPairFixtures = {"bn51.json",    "bn51-delta.json",
                                                "stacked-2x.json", "rank3-a.json",
                                                "rank3-b.json", "rank3-c.json"};

}  // namespace

int main() {
  std::vector<std::pair<std::string, MirrorPair>> corpus;

  criterion("1 worked-example structure", [&] {
    auto t0 = Clock::now();
    auto mp = pair_from_fixture("bn51.json");
    auto cm = build_cell_matrix(build_table(mp));
    require(cm.table.chars.size() == 8, "expected 8 characters");
    require(cm.table.cell_sizes() == std::vector<std::vector<std::size_t>>{{1, 3}, {1, 3}},
            "cell sizes differ from [[1,3],[1,3]]");
    require(cm.table.row_chars(0).size() == 4 && cm.table.row_chars(1).size() == 4,
            "row sizes differ from (4,4)");
    require(cm.table.col_chars(0).size() == 2 && cm.table.col_chars(1).size() == 6,
            "column sizes differ from (2,6)");
    int loops = 0, cross = 0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (cm.graph.arrow[a][b]) (a == b ? loops : cross)++;
    require(cm.graph.n == 2 && loops == 2 && cross == 2, "digraph is not 2 loops + 2 arrows");
    require(cm.beta() == 1, "expected one block");
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    require(secs < 1.0, "structure run exceeded 1 s");
  });

  criterion("2 worked-example witness", [&] {
    auto cm = build_cell_matrix(build_table(pair_from_fixture("bn51.json")));
    auto wr = build_witness(cm);
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 1, 0;
    require((wr.adjacency - a).cwiseAbs().maxCoeff() == 0.0, "adjacency is not [[0,1],[1,0]]");
    require(wr.perron_values.size() == 1 && std::abs(wr.perron_values[0] - 1.0) < 1e-10,
            "Perron value differs from 1");
    CMat w = evaluate_cells(cm, wr.point);
    CMat expect(2, 2);
    expect << -1, 1, 1, -1;
    require((w - expect).cwiseAbs().maxCoeff() < 1e-12, "evaluated matrix is off");
    auto rr = numeric_rank(w);
    require(rr.rank == 1 && rr.rank == cm.r() - cm.beta(), "rank is not r - beta");
    require(rr.right_null.cols() == 1 && rr.left_null.rows() == 1, "null spaces not 1-d");
    CVec rn = rr.right_null.col(0), ln = rr.left_null.row(0).transpose();
    require(std::abs(rn[0] - rn[1]) < 1e-12 && std::abs(ln[0] - ln[1]) < 1e-12,
            "null vectors are not proportional to (1,1)");
  });

  criterion("3 duality involution", [&] {
    for (const auto& name : kPairFixtures) {
      auto mp = pair_from_fixture(name);
      for (const NefPartition* np : {&mp.nabla1, &mp.nabla2}) {
        auto dual = borisov_dual(*np);
        auto back = borisov_dual(dual);
        for (std::size_t k = 0; k < np->size(); ++k)
          require(back.parts[k] == np->parts[k], name + ": dual is not an involution");
        // polar(sum) = hull of the union of the dual parts.
        std::vector<IntVec> all;
        for (const auto& d : dual.parts)
          for (const auto& v : d.vertices()) all.push_back(v);
        require(polar_dual_integral(np->sum) == Polytope::hull(all),
                name + ": polar of sum differs from hull of dual union");
      }
    }
    auto mp = pair_from_fixture("bn51.json");
    require(mp.delta1[0].lattice_points() ==
                Polytope::hull({{Int(0), Int(0)}, {Int(-1), Int(1)}, {Int(1), Int(1)}})
                    .lattice_points(),
            "delta1[0] differs from the published row data");
    require(mp.delta1[1].lattice_points() ==
                Polytope::hull({{Int(-1), Int(0)}, {Int(1), Int(0)}, {Int(0), Int(-1)}})
                    .lattice_points(),
            "delta1[1] differs from the published row data");
    require(mp.delta2[0].lattice_points() ==
                Polytope::hull({{Int(0), Int(0)}, {Int(0), Int(-1)}}).lattice_points(),
            "delta2[0] differs from the published column data");
    require(mp.delta2[1].lattice_points() ==
                Polytope::hull({{Int(-1), Int(0)}, {Int(1), Int(0)}, {Int(-1), Int(1)},
                                {Int(1), Int(1)}})
                    .lattice_points(),
            "delta2[1] differs from the published column data");
  });

  criterion("4 pairing proposition", [&] {
    auto t0 = Clock::now();
    corpus = corpus_pairs();
    require(corpus.size() >= 20, "corpus produced fewer than 20 mirror pairs");
    std::size_t partitions = corpus_partitions().size();
    require(partitions >= 20, "corpus has fewer than 20 partitions");
    auto check_pair = [&](const std::string& name, const MirrorPair& mp) {
      auto t = build_table(mp);
      for (const auto& c : t.chars) {
        auto [a, b] = classify_by_pairing(c.m, c.a, t.translations);
        require(a == c.a && b == c.b, name + ": pairing disagrees with the degree class");
        require(mp.delta2[b].contains(c.m), name + ": pairing class not in the dual part");
      }
      for (int b = 0; b < t.r; ++b) {
        std::vector<IntVec> got;
        for (int i : t.col_chars(b)) got.push_back(t.chars[i].m);
        std::sort(got.begin(), got.end(), lex_less);
        require(got == mp.delta2[b].lattice_points(),
                name + ": column multiset differs from the dual part");
      }
    };
    for (const auto& name : kPairFixtures) check_pair(name, pair_from_fixture(name));
    for (const auto& [name, mp] : corpus) check_pair(name, mp);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    require(secs < 60.0, "pairing sweep exceeded 60 s");
  });

  criterion("5 strong connectivity", [&] {
    if (corpus.empty()) corpus = corpus_pairs();
    for (const auto& [name, mp] : corpus) {
      auto cm = build_cell_matrix(build_table(mp));
      auto rep = verify_connectivity(cm);
      require(rep.strongly_connected, name + ": a component is not strongly connected");
      require(rep.all_loops, name + ": a vertex is missing its loop");
    }
  });

  criterion("6 block translation sums", [&] {
    if (corpus.empty()) corpus = corpus_pairs();
    for (const auto& [name, mp] : corpus) {
      auto cm = build_cell_matrix(build_table(mp));
      for (const auto& block : cm.blocks) {
        IntVec s(mp.rank(), 0);
        for (int v : block) s = vec_add(s, cm.table.translations[v]);
        require(is_zero(s), name + ": block translations do not sum to zero");
      }
    }
  });

  criterion("7 round-trip birationality", [&] {
    auto t0 = Clock::now();
    for (const auto& name : {"bn51.json", "stacked-2x.json"}) {
      auto cm = build_cell_matrix(build_table(pair_from_fixture(name)));
      auto rep = roundtrip_check(cm, 100, 1e-9, 7);
      require(rep.samples_succeeded == 100, std::string(name) + ": a sample failed");
      require(rep.pass, std::string(name) + ": a residual exceeded 1e-9");
      require(rep.retries * 10 < rep.samples_attempted,
              std::string(name) + ": retry rate reached 10%");
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    require(secs < 30.0, "round-trip runs exceeded 30 s");
  });

  criterion("8 coarsening", [&] {
    for (const auto& name : kPairFixtures) {
      auto mp = pair_from_fixture(name);
      auto cm = build_cell_matrix(build_table(mp));
      // Coarsening by weak components gives the loop-only condensation.
      std::vector<std::vector<int>> classes;
      for (const auto& b : cm.blocks) {
        std::vector<int> cls;
        for (int v : b) cls.push_back(v + 1);
        classes.push_back(cls);
      }
      auto c = coarsen(mp, classes);
      require(c.degenerate, name + ": weak-component coarsening is not degenerate");
      auto duals = borisov_dual_parts(c.nabla);
      auto coarse = build_cell_matrix(build_table(duals, duals, c.translations, mp.rank()));
      require(coarse.r() == cm.beta(), name + ": coarse vertex count is not beta");
      for (int a = 0; a < coarse.r(); ++a)
        for (int b = 0; b < coarse.r(); ++b)
          require(bool(coarse.graph.arrow[a][b]) == (a == b),
                  name + ": coarse graph is not loop-only");
      // Coarsening by singletons is the identity.
      std::vector<std::vector<int>> singletons;
      for (std::size_t k = 1; k <= mp.r(); ++k) singletons.push_back({int(k)});
      auto id = coarsen(mp, singletons);
      require(!id.degenerate && id.pair.has_value(), name + ": singleton coarsening degenerated");
      require(id.pair->translations == mp.translations,
              name + ": singleton coarsening changed the translations");
      for (std::size_t k = 0; k < mp.r(); ++k)
        require(id.pair->nabla1.parts[k] == mp.nabla1.parts[k],
                name + ": singleton coarsening changed a part");
    }
  });

  criterion("9 numeric kernel oracles", [&] {
    // Perron values against characteristic-polynomial roots, exhaustively
    // over nonnegative irreducible integer matrices with entries <= 3.
    auto strongly_connected = [](const std::vector<int>& a, int n) {
      std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) reach[i][j] = (i == j) || a[i * n + j] != 0;
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) reach[i][j] |= reach[i][k] && reach[k][j];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!reach[i][j]) return false;
      return true;
    };
    for (int n : {2, 3}) {
      const int cells = n * n;
      long total = 1;
      for (int i = 0; i < cells; ++i) total *= 4;
      for (long code = 0; code < total; ++code) {
        std::vector<int> entries(cells);
        long c = code;
        bool zero = true;
        for (int i = 0; i < cells; ++i) {
          entries[i] = int(c % 4);
          zero = zero && entries[i] == 0;
          c /= 4;
        }
        if (zero || !strongly_connected(entries, n)) continue;
        Eigen::MatrixXd a(n, n);
        std::vector<double> flat(cells);
        double max_row = 0;
        for (int i = 0; i < n; ++i) {
          double rs = 0;
          for (int j = 0; j < n; ++j) {
            a(i, j) = entries[i * n + j];
            flat[i * n + j] = a(i, j);
            rs += a(i, j);
          }
          max_row = std::max(max_row, rs);
        }
        double got = perron(a).value;
        double oracle =
            oracles::largest_real_root(oracles::char_poly_coeffs(flat, n), max_row + 1.0);
        if (std::abs(got - oracle) >= 1e-9 * std::max(1.0, oracle))
          throw std::runtime_error("perron mismatch at code " + std::to_string(code) +
                                   " n=" + std::to_string(n));
      }
    }
    // Hermite form and integer kernel against the independent oracles on 200
    // random small matrices.
    std::mt19937_64 rng(0xace5u);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      IntMat m = oracles::random_mat(rng, r, c, -5, 5);
      auto hf = hermite_form(m);
      require(hf.h == oracles::naive_hermite(m), "hermite form differs from the oracle");
      require(mat_mul(hf.u, m) == hf.h, "u*m != h");
      Int du = determinant(hf.u);
      require(du == 1 || du == -1, "u is not unimodular");
      require(hermite_form(hf.h).h == hf.h, "hermite form is not idempotent");
      IntMat k = integer_kernel(m);
      require(k.rows() == c - lattice_rank(m), "kernel rank mismatch");
      for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < r; ++j)
          require(dot(k.row(i), m.row(j)) == 0, "kernel row fails to annihilate");
      if (k.rows() > 0)
        require(oracles::minors_gcd_is_one(k), "kernel basis is not saturated");
      if (c <= 3 && k.rows() > 0)
        for (const auto& v : oracles::brute_kernel_vectors(m, 3))
          require(solve_in_lattice(k, v).has_value(),
                  "small annihilator escapes the kernel lattice");
    }
  });

  criterion("10 error paths", [&] {
    {
      InputData in = load_input(fixture("degenerate-singleton.json"));
      Resolved r = resolve_input(in);
      auto cm = build_cell_matrix(table_of(r));
      bool witness_failed = false;
      try {
        build_witness(cm);
      } catch (const Error& e) {
        witness_failed = (e.code() == "witness/degenerate-block");
      }
      require(witness_failed, "degenerate singleton did not fail the witness");
      bool sampling_failed = false;
      try {
        sample_point(cm, 1, 30);
      } catch (const Error& e) {
        sampling_failed = (e.code() == "birat/sampling-failure");
      }
      require(sampling_failed, "degenerate singleton did not fail sampling");
    }
    {
      InputData in = load_input(fixture("asm2-segment.json"));
      Resolved r = resolve_input(in);
      auto cm = build_cell_matrix(table_of(r));
      require(!check_assumption2(cm.table, 1), "segment fixture passed assumption 2 (side 1)");
      require(!check_assumption2(cm.table, 2), "segment fixture passed assumption 2 (side 2)");
    }
  });

  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
