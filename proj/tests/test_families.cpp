#include <catch_amalgamated.hpp>

#include <algorithm>

#include "oracles.hpp"
#include "ybe4/families.hpp"

using namespace ybe4;

namespace {

const CandidateRep& candidate(const std::string& name) {
  static const auto all = hietarinta_candidates();
  return *std::find_if(all.begin(), all.end(), [&](const CandidateRep& c) { return c.name == name; });
}

/// Well-conditioned Gaussian Q scaled to unit max entry.
Matrix tame_q(Rng& rng) {
  for (;;) {
    Matrix q = random_matrix(rng, 2);
    q *= Complex{1.0 / max_abs(q)};
    if (condition_number(q) <= 10.0) return q;
  }
}

bool has_violation(const std::vector<Violation>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.constraint.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("family representatives") {
  FamilySpec f5;
  f5.family = Family::F5;
  CHECK(family_representative(f5) == swap_matrix(2));

  FamilySpec f1;
  f1.family = Family::F1;
  CHECK(family_representative(f1) == Matrix::identity(4));

  FamilySpec f4;
  f4.family = Family::F4;
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(family_representative(f4) == Matrix{{h, 0, 0, h}, {0, h, h, 0}, {0, h, -h, 0}, {-h, 0, 0, h}});

  Rng rng = make_rng(31);
  for (Family f : kAllFamilies) {
    for (int t = 0; t < 10; ++t) CHECK(algebraic_residual(family_representative(random_family_spec(f, rng))) <= 1e-12);
  }

  SECTION("the F2/F3 shape sends v0⊗v0 to q·v1⊗v1") {
    for (Family f : {Family::F2, Family::F3}) {
      const auto spec = random_family_spec(f, rng);
      const Matrix rep = family_representative(spec);
      std::vector<Complex> e0{1.0, 0.0, 0.0, 0.0};
      const auto out = apply(rep, std::span<const Complex>(e0));
      CHECK(std::abs(out[0]) + std::abs(out[1]) + std::abs(out[2]) == 0.0);
      CHECK(std::abs(out[3] - spec.q) <= 1e-15);
    }
  }
}

TEST_CASE("family members") {
  FamilySpec f1;
  f1.family = Family::F1;
  CHECK(approx_equal(family_member(f1), swap_matrix(2), 1e-15));

  Rng rng = make_rng(32);
  FamilySpec f5;
  f5.family = Family::F5;
  for (int t = 0; t < 10; ++t) {
    f5.Q = random_matrix(rng, 2);
    CHECK(approx_equal(family_member(f5), Matrix::identity(4), 1e-12));
  }

  FamilySpec f4;
  f4.family = Family::F4;
  CHECK(approx_equal(family_member(f4), family4_representative() * swap_matrix(2), 1e-15));

  SECTION("every member is a unitary braided solution") {
    for (Family f : kAllFamilies) {
      for (int t = 0; t < 50; ++t) {
        const Matrix m = family_member(random_family_spec(f, rng));
        CHECK(oracle::unitarity_defect(m) <= 1e-9);
        CHECK(oracle::braided_defect(m) <= 1e-9);
      }
    }
  }

  SECTION("family-2 p and q are reciprocal") {
    for (int t = 0; t < 50; ++t) {
      const auto spec = random_family_spec(Family::F2, rng);
      CHECK(std::abs(spec.p * spec.q - 1.0) <= 1e-12);
    }
  }

  SECTION("a non-unit phase is rejected and breaks unitarity") {
    auto spec = random_family_spec(Family::F1, rng);
    spec.phase = 1.5;
    CHECK_THROWS_AS(family_member(spec), ConstraintViolation);
    const Matrix m = build_member(Family::F1, spec.phase, spec.Q, spec.p, spec.q, spec.r);
    CHECK(unitarity_defect(m) > 1e-3);
  }
}

TEST_CASE("validate_params") {
  FamilySpec f1;
  f1.family = Family::F1;
  f1.p = 2.0;
  const auto v = validate_params(f1);
  REQUIRE(v.size() == 1);
  CHECK(v[0].constraint.find("|p|") != std::string::npos);
  CHECK(v[0].deviation == Catch::Approx(1.0));

  // F3 with c = −a·b̄/d̄ and matching moduli
  const Complex a{1.0, 0.5}, b{0.3, -0.2}, d{2.0, 0.0};
  const Complex c = -a * std::conj(b) / std::conj(d);
  FamilySpec f3;
  f3.family = Family::F3;
  f3.Q = Matrix{{a, b}, {c, d}};
  const double ratio = std::norm(d) / std::norm(a);
  f3.p = std::polar(ratio, 0.4);
  f3.q = std::polar(1.0 / ratio, -1.3);
  CHECK(validate_params(f3).empty());
  f3.p *= 1.1;
  CHECK(has_violation(validate_params(f3), "|p|"));

  FamilySpec f2;
  f2.family = Family::F2;
  f2.Q = f3.Q;
  CHECK(has_violation(validate_params(f2), "c != "));
  CHECK_THROWS_AS(family_member(f2), ConstraintViolation);

  FamilySpec f4;
  f4.family = Family::F4;
  f4.Q = f3.Q;  // |a| ≠ |d|
  CHECK(has_violation(validate_params(f4), "|a| = |d|"));

  FamilySpec f5;
  f5.family = Family::F5;
  f5.Q = Matrix{{1, 2}, {2, 4}};
  CHECK(has_violation(validate_params(f5), "invertible"));
}

TEST_CASE("gram") {
  const auto g1 = gram(Matrix{{1, 1}, {-1, 1}});
  CHECK(g1.z == Complex{0.0});
  CHECK(approx_equal(g1.H, 4.0 * Matrix::identity(4), 1e-15));

  CHECK(approx_equal(gram(Matrix::identity(2)).H, Matrix::identity(4), 1e-15));

  const auto g3 = gram(Matrix{{1, 1}, {0, 1}});
  CHECK(g3.x == 1.0);
  CHECK(g3.y == 2.0);
  CHECK(g3.z == Complex{1.0});
  for (const auto& e : g3.H.data()) CHECK(std::abs(e) > 0.0);

  CHECK_THROWS_AS(gram(Matrix{{1, 2}, {2, 4}}), SingularMatrix);

  Rng rng = make_rng(33);
  for (int t = 0; t < 50; ++t) {
    const Matrix q = random_matrix(rng, 2);
    const auto g = gram(q);
    CHECK(oracle::max_diff(g.H, gram_closed_form(g.x, g.y, g.z)) <= 1e-12 * max_abs(g.H));
    CHECK(oracle::max_diff(g.H, dagger(g.H)) <= 1e-12 * max_abs(g.H));
  }
}

TEST_CASE("gram dichotomy") {
  Rng rng = make_rng(34);
  for (int t = 0; t < 200; ++t) {
    const Matrix q = (t % 2 == 0) ? random_column_orthogonal_q(rng) : random_matrix(rng, 2);
    const auto g = gram(q);
    const double hn = frobenius_norm(g.H);
    double off = 0.0, min_diag = 1e300;
    for (std::size_t i = 0; i < 4; ++i) {
      min_diag = std::min(min_diag, std::abs(g.H(i, i)));
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) off = std::max(off, std::abs(g.H(i, j)));
    }
    const bool z_zero = std::abs(g.z) <= 1e-12 * std::max(g.x, g.y);
    const bool column_rule = column_constraint_defect(q) <= 1e-12 * std::max(1.0, std::abs(q(1, 0)));
    CHECK(z_zero == (off <= 1e-12 * hn));
    CHECK(column_rule == z_zero);
    CHECK(min_diag > 0.0);
  }
}

TEST_CASE("D-matrix criterion") {
  Rng rng = make_rng(35);

  SECTION("examples") {
    const Matrix q{{1, 1}, {-1, 1}};
    const Matrix r = Matrix::diagonal({Complex{1.0}, random_phase(rng), random_phase(rng), random_phase(rng)});
    CHECK(max_abs(d_matrix(r, q)) <= 1e-12);

    const Matrix r01 = candidate("R01").build({});
    for (int t = 0; t < 20; ++t) {
      const Matrix qq = random_matrix(rng, 2);
      const auto g = gram(qq);
      const Matrix d = d_matrix(r01, qq);
      CHECK(std::abs(d(3, 0) + g.H(0, 0)) <= 1e-10 * max_abs(g.H));
      CHECK(std::abs(g.H(0, 0)) > 0.0);
    }

    for (int t = 0; t < 20; ++t) {
      const Matrix qq = random_matrix(rng, 2);  // violates the column rule almost surely
      const Matrix diag = Matrix::diagonal({Complex{1.0}, random_phase(rng), random_phase(rng), random_phase(rng)});
      CHECK(frobenius_norm(d_matrix(diag, qq)) > 1e-3);
    }
  }

  SECTION("equivalence with unitarity of the conjugate") {
    int counterexamples = 0;
    for (int t = 0; t < 200; ++t) {
      const Matrix q = tame_q(rng);
      const Matrix a = kron(q, q);
      Matrix r;
      switch (t % 4) {
        case 0: r = inverse(a) * random_unitary(rng, 4) * a; break;
        case 1: r = random_matrix(rng, 4); break;
        case 2: r = Matrix::diagonal({Complex{1.0}, random_phase(rng), random_phase(rng), random_phase(rng)}); break;
        default: r = family_representative(random_family_spec(Family::F3, rng)); break;
      }
      const bool d_zero = frobenius_norm(d_matrix(r, q)) <= 1e-8;
      const bool unitary = unitarity_defect(a * r * inverse(a)) <= 1e-8;
      if (d_zero != unitary) ++counterexamples;
    }
    CHECK(counterexamples == 0);
  }

  SECTION("case formulas") {
    for (int t = 0; t < 50; ++t) {
      // R21 with H diagonal
      const Complex p = random_gaussian(rng), qv = random_gaussian(rng);
      const Matrix r21 = candidate("R21").build({1.0, p, qv, 0.0});
      const Matrix qd = random_column_orthogonal_q(rng);
      const auto gd = gram(qd);
      const Matrix d21 = d_matrix(r21, qd);
      CHECK(std::abs(d21(1, 2) - gd.H(1, 1) * (1.0 - 1.0 / (p * qv))) <= 1e-10 * std::max(1.0, max_abs(gd.H)));

      // R13, any Q
      const Matrix q = tame_q(rng);
      const auto g = gram(q);
      const Matrix r13 = candidate("R13").build({1.0, p, qv, 0.0});
      CHECK(std::abs(d_matrix(r13, q)(0, 1) + p * g.H(0, 0)) <= 1e-10 * std::max(1.0, max_abs(g.H)) * std::abs(p));

      // R12 in its scaled form (leading entry 1), any Q
      const Complex k = random_gaussian(rng), qu = random_phase(rng);
      const Matrix r12 = candidate("R12").build({k, 1.0, qu, 0.0});
      const Complex expect = (1.0 - 1.0 / qu) * (g.H(1, 1) - g.H(1, 2));
      CHECK(std::abs(d_matrix(r12, q)(1, 2) - expect) <= 1e-10 * std::max(1.0, max_abs(g.H)));
    }
  }
}

TEST_CASE("candidate representatives") {
  CHECK(hietarinta_candidates().size() == 11);
  CHECK(candidate("R03").build({}) == swap_matrix(2));
  CHECK(candidate("R23").build({1.0, 0.0, 0.0, 0.0}) == Matrix::identity(4));
  CHECK(candidate("R14").build({1.0, 1.0, 1.0, 0.0}) ==
        Matrix{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  CHECK(candidate("R01").build({}) == Matrix{{1, 0, 0, 1}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}});
  CHECK(candidate("R02").build({}) == Matrix{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, -1, 0}, {-1, 0, 0, 1}});
  CHECK(candidate("R31").build({2.0, 3.0, 4.0, 5.0}) == Matrix::diagonal({2.0, 3.0, 4.0, 5.0}));
  CHECK(candidate("R11").build({1.0, 1.0, 2.0, 0.0}) ==
        Matrix{{1, 0, 0, -3}, {0, 5, -3, 0}, {0, -3, 5, 0}, {-3, 0, 0, -7}});

  SECTION("each candidate solves the algebraic equation") {
    Rng rng = make_rng(36);
    for (const auto& c : hietarinta_candidates()) {
      for (int t = 0; t < 5; ++t) {
        const Matrix r = c.build(c.sample(rng));
        CHECK(algebraic_residual(r) <= 1e-9 * std::max(1.0, std::pow(frobenius_norm(r), 3)));
      }
    }
  }
}

TEST_CASE("eigenvalue filter") {
  Rng rng = make_rng(37);
  CHECK(eigenvalue_filter(candidate("R31").build({1.0, random_phase(rng), random_phase(rng), random_phase(rng)})).pass);
  const auto r11 = eigenvalue_filter(candidate("R11").build({1.0, 1.0, 2.0, 0.0}));
  CHECK_FALSE(r11.pass);
  std::vector<double> moduli = r11.moduli;
  std::sort(moduli.begin(), moduli.end());
  CHECK(moduli[0] == Catch::Approx(2.0));
  CHECK(moduli[1] == Catch::Approx(2.0));
  CHECK(moduli[2] == Catch::Approx(8.0));
  CHECK(moduli[3] == Catch::Approx(8.0));
  CHECK(eigenvalue_filter(candidate("R01").build({})).pass);
  CHECK_THROWS_AS(eigenvalue_filter(Matrix::diagonal({1.0, 0.0, 1.0, 1.0})), SingularMatrix);

  SECTION("scale invariance") {
    const Matrix r = candidate("R22").build(candidate("R22").sample(rng));
    CHECK(eigenvalue_filter(Complex{3.0, -2.0} * r).pass);
  }
}

TEST_CASE("elimination") {
  const auto report = run_elimination(1000, 1);
  REQUIRE(report.candidates.size() == 11);
  for (const auto& c : report.candidates) {
    INFO(c.name);
    if (c.name == "R11") {
      CHECK(c.pass_fraction < 0.01);
      CHECK_FALSE(c.passes_filter);
    } else {
      CHECK(c.pass_fraction == 1.0);
      CHECK(c.passes_filter);
    }
  }

  const auto again = run_elimination(1000, 1);
  for (std::size_t i = 0; i < 11; ++i) CHECK(again.candidates[i].passes == report.candidates[i].passes);

  const auto one = run_elimination(1, 5);
  for (const auto& c : one.candidates)
    if (c.name == "R01" || c.name == "R02" || c.name == "R03") CHECK(c.passes == 1);

  CHECK_THROWS_AS(run_elimination(0, 1), PreconditionFailed);
}
