#include <catch2/catch_amalgamated.hpp>

#include "nefmm/birat.hpp"
#include "support/builders.hpp"

using namespace nefmm;
using builders::iv;

TEST_CASE("the witness point passes the sampler's acceptance predicate") {
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  auto wr = build_witness(cm);
  CHECK(verify_side(cm, wr.point, 1, 1e-10).pass);
  CHECK(verify_side(cm, wr.point, 2, 1e-10).pass);
}

TEST_CASE("gauge section at the witness base") {
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  auto wr = build_witness(cm);
  BasePoint y1 = project_side1(cm, wr.point);
  TorusPoint t = gauge_section(cm, y1);
  // F1 at the all-ones base with witness coefficients is [[-1,1],[1,-1]];
  // the left null ray is (1,1) and the gauge sets the last index to 1.
  CHECK(std::abs(t.fiber[0] - Cplx(1.0)) < 1e-12);
  CHECK(std::abs(t.fiber[1] - Cplx(1.0)) < 1e-12);

  // phi at the witness base gives the all-ones side-2 point, and the column
  // sums of the evaluated matrix vanish there.
  BasePoint z = map_1_to_2(cm, y1);
  CHECK((z.values - CVec::Ones(2)).cwiseAbs().maxCoeff() < 1e-12);
  CMat w = evaluate_cells(cm, t);
  CHECK(col_sums(w).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gauge fixing is invariant under null-vector rescaling") {
  // Scaling all fiber values of a sampled point per block and re-gauging
  // lands on the same section.
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  auto sr = sample_point(cm, 11);
  BasePoint y1 = project_side1(cm, sr.point);
  TorusPoint a = gauge_section(cm, y1);
  TorusPoint b = gauge_section(cm, y1);  // deterministic
  CHECK((a.fiber - b.fiber).cwiseAbs().maxCoeff() == 0.0);
  // The gauged fiber lies on the same block ray as the sampled fiber.
  for (int j = 0; j < cm.beta(); ++j) {
    Cplx ratio = a.fiber[cm.blocks[j][0]] / sr.point.fiber[cm.blocks[j][0]];
    for (int v : cm.blocks[j])
      CHECK(std::abs(a.fiber[v] / sr.point.fiber[v] - ratio) < 1e-9 * std::abs(ratio));
  }
}

TEST_CASE("gauge section rejects points outside the open set") {
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  // Coefficients making the factor matrix full rank at the all-ones base.
  CVec c = CVec::Ones(8);
  c[7] = 2.0;
  BasePoint bad{1, CVec::Ones(2), c};
  try {
    gauge_section(cm, bad);
    FAIL("expected not-in-omega");
  } catch (const Error& e) {
    CHECK(e.code() == "birat/not-in-omega");
  }
}

TEST_CASE("sampled points round-trip on the worked fixture") {
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  auto rep = roundtrip_check(cm, 25, 1e-9, 7);
  CHECK(rep.pass);
  CHECK(rep.samples_succeeded == 25);
  CHECK(rep.max_psi_phi < 1e-9);
  CHECK(rep.max_phi_psi < 1e-9);
  CHECK(rep.max_torsor < 1e-9);
}

TEST_CASE("round trips across fixtures, including multi-block gauges") {
  for (const auto& mp : {builders::stacked2x(), builders::pentagon_prism(),
                         builders::hexagon3()}) {
    auto cm = build_cell_matrix(build_table(mp));
    auto rep = roundtrip_check(cm, 10, 1e-9, 3);
    CHECK(rep.pass);
  }
}

TEST_CASE("round trip on a fano block restriction") {
  auto cm = build_cell_matrix(build_table(builders::stacked2x()));
  auto first = fano_restrict(cm, {1});
  auto rep = roundtrip_check(first, 10, 1e-9, 5);
  CHECK(rep.pass);
}

TEST_CASE("round trips degenerate gracefully on a trivial r=1 pair") {
  // A single reflexive part with the zero translation: the maps reduce to
  // the identity, and the one-vertex block's entry cancels to roundoff,
  // which the term-scale thresholds must absorb.
  auto sq = validate_nef({Polytope::hull(builders::pts({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}))});
  auto duals = borisov_dual_parts(sq);
  auto cm = build_cell_matrix(build_table(duals, duals, {iv({0, 0})}, 2));
  auto rep = roundtrip_check(cm, 5, 1e-9, 2);
  CHECK(rep.pass);
}

TEST_CASE("sampling fails loudly on the degenerate singleton") {
  auto zero = Polytope::hull({iv({0})});
  auto cm = build_cell_matrix(build_table({zero}, {zero}, {iv({0})}, 1));
  try {
    sample_point(cm, 1, 20);
    FAIL("expected sampling failure");
  } catch (const Error& e) {
    CHECK(e.code() == "birat/sampling-failure");
  }
}

TEST_CASE("gauge section is locally regular at well-conditioned samples") {
  // The section's fiber values are an algebraic function of the base (the
  // gauged null ray of the factor matrix); evaluate it through the smallest
  // singular vector so it extends off the intersection, and difference it.
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  auto sr = sample_point(cm, 99);
  BasePoint y1 = project_side1(cm, sr.point);
  auto section_fiber = [&](const BasePoint& y) {
    CMat f = factor_from_base(cm, y);
    Eigen::JacobiSVD<CMat> svd(f, Eigen::ComputeFullU);
    CVec z = svd.matrixU().col(f.rows() - 1).conjugate();
    return CVec(z / z[1]);  // gauge vertex of the single block is index 1
  };
  CVec x0 = section_fiber(y1);
  TorusPoint t0 = gauge_section(cm, y1);
  CHECK((x0 - t0.fiber).cwiseAbs().maxCoeff() < 1e-9);
  const double h = 1e-6;
  BasePoint y1p = y1;
  y1p.values[0] *= (1.0 + h);
  CVec x1 = section_fiber(y1p);
  CHECK((x1 - x0).cwiseAbs().maxCoeff() < 1e-3);
  CHECK((x1 - x0).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("sampler determinism") {
  auto cm = build_cell_matrix(build_table(builders::bn51()));
  auto a = sample_point(cm, 42);
  auto b = sample_point(cm, 42);
  CHECK((a.point.coeff - b.point.coeff).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.point.base - b.point.base).cwiseAbs().maxCoeff() == 0.0);
}
