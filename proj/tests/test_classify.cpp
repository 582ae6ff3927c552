#include <catch_amalgamated.hpp>

#include "ybe4/classify.hpp"

using namespace ybe4;

namespace {

bool correct(const ClassificationResult& r, Family generated, const Matrix& input) {
  if (!r.family || !r.certificate || r.certificate->residual > 1e-6) return false;
  // overlap: another family is fine when its certificate rebuilds the input
  return *r.family == generated || frobenius_norm(rebuild(*r.certificate) - input) <= 1e-6;
}

}  // namespace

TEST_CASE("fixed inputs") {
  const auto id = classify(Matrix::identity(4));
  REQUIRE(id.family);
  CHECK(*id.family == Family::F5);
  CHECK(id.certificate->phase == Complex{1.0});
  CHECK(id.certificate->Q == Matrix::identity(2));

  const auto sw = classify(swap_matrix(2));
  REQUIRE(sw.family);
  CHECK(*sw.family == Family::F1);
  CHECK(std::abs(sw.certificate->p - 1.0) <= 1e-9);
  CHECK(std::abs(sw.certificate->q - 1.0) <= 1e-9);
  CHECK(std::abs(sw.certificate->r - 1.0) <= 1e-9);

  const Matrix f4 = family4_representative() * swap_matrix(2);
  const auto r4 = classify(f4);
  REQUIRE(r4.family);
  CHECK(*r4.family == Family::F4);
  CHECK(r4.certificate->residual <= 1e-6);
  CHECK(r4.evidence.entangling.entangling);
  // Q is recovered up to a local unitary symmetry of R02′, so compare A·R·A⁻¹
  const Matrix a = kron(r4.certificate->Q, r4.certificate->Q);
  CHECK(frobenius_norm(r4.certificate->phase * a * family4_representative() * inverse(a) - family4_representative()) <=
        1e-6);

  SECTION("deterministic under a fixed seed") {
    for (const Matrix& m : {Matrix::identity(4), swap_matrix(2), f4}) {
      const auto x = classify(m), y = classify(m);
      CHECK(x.family == y.family);
      CHECK(x.certificate->residual == y.certificate->residual);
      CHECK(x.certificate->Q == y.certificate->Q);
    }
  }
}

TEST_CASE("round trip on generated members") {
  for (Family f : kAllFamilies) {
    Rng rng = make_rng(51, static_cast<std::uint64_t>(f));
    int ok = 0;
    for (int t = 0; t < 50; ++t) {
      const Matrix m = family_member(random_family_spec(f, rng));
      const auto r = classify(m);
      if (correct(r, f, m)) ++ok;
      if (r.certificate) CHECK(frobenius_norm(rebuild(*r.certificate) - m) <= 1e-6);
    }
    INFO(to_string(f) << " correct " << ok << "/50");
    const bool strict = f == Family::F1 || f == Family::F4 || f == Family::F5;
    CHECK(ok >= (strict ? 48 : 40));
  }
}

TEST_CASE("direct certificate searches") {
  Rng rng = make_rng(52);
  for (Family f : {Family::F2, Family::F3}) {
    for (int t = 0; t < 5; ++t) {
      const Matrix m = family_member(random_family_spec(f, rng));
      const auto c = find_certificate(f, m);
      REQUIRE(c);
      CHECK(c->residual <= 1e-6);
      CHECK(c->family == f);
    }
  }
}

TEST_CASE("classify preconditions") {
  CHECK_THROWS_AS(classify(2.0 * Matrix::identity(4)), NotUnitary);
  Rng rng = make_rng(53);
  CHECK_THROWS_AS(classify(random_unitary(rng, 4)), NotASolution);
  CHECK_THROWS_AS(classify(Matrix::identity(2)), DimensionError);
}

TEST_CASE("product-basis conjugates of diagonal solutions classify as F1") {
  Rng rng = make_rng(54);
  const Matrix u = random_unitary(rng, 2);
  const Matrix w = kron(u, u);
  const Matrix d = Matrix::diagonal({Complex{1.0}, random_phase(rng), random_phase(rng), random_phase(rng)});
  const Matrix m = random_phase(rng) * w * d * dagger(w) * swap_matrix(2);
  const auto r = classify(m);
  REQUIRE(r.family);
  CHECK(*r.family == Family::F1);
  CHECK(r.certificate->residual <= 1e-9);
}
