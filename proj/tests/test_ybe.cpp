#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ybe4/families.hpp"
#include "ybe4/random.hpp"
#include "ybe4/ybe.hpp"

using namespace ybe4;

namespace {

Matrix family_rep_random(Family f, Rng& rng) {
  const auto spec = random_family_spec(f, rng);
  return family_representative(spec);
}

Matrix braid(int strands, std::initializer_list<int> gens, const Matrix& r) {
  BraidWord w{strands, {}};
  for (int g : gens) w.letters.push_back({std::abs(g), g > 0 ? 1 : -1});
  return braid_rep(w, r);
}

}  // namespace

TEST_CASE("swap_matrix") {
  CHECK(swap_matrix(1) == Matrix{{1}});
  CHECK(swap_matrix(2) == Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  CHECK(swap_matrix(2) * swap_matrix(2) == Matrix::identity(4));
  CHECK(swap_matrix(3) * swap_matrix(3) == Matrix::identity(9));
}

TEST_CASE("braided residual on known solutions") {
  const Matrix t = swap_matrix(2);
  CHECK(braided_residual(t) <= 1e-13);
  CHECK(braided_residual(Matrix::identity(4)) == 0.0);
  CHECK(braided_residual(family4_representative() * t) <= 1e-12);
  CHECK(oracle::braided_defect(family4_representative() * t) <= 1e-12);
}

TEST_CASE("algebraic residual on representatives") {
  Rng rng = make_rng(21);
  CHECK(algebraic_residual(Matrix::identity(4)) == 0.0);
  CHECK(algebraic_residual(swap_matrix(2)) <= 1e-13);
  for (int t = 0; t < 20; ++t) {
    CHECK(algebraic_residual(family_rep_random(Family::F1, rng)) <= 1e-12);
    CHECK(algebraic_residual(family_rep_random(Family::F2, rng)) <= 1e-12);
    CHECK(algebraic_residual(family_rep_random(Family::F3, rng)) <= 1e-12);
  }
  CHECK(algebraic_residual(family4_representative()) <= 1e-12);
}

TEST_CASE("contraction and embedding residuals agree") {
  Rng rng = make_rng(22);
  CHECK(contraction_residual(Matrix::identity(4), YbeForm::algebraic) == 0.0);
  for (int t = 0; t < 100; ++t) {
    const Matrix r = (t % 2 == 0) ? random_matrix(rng, 4) : family_member(random_family_spec(Family::F3, rng));
    const auto emb = ybe_residuals(r, ResidualMethod::embedding);
    const auto con = ybe_residuals(r, ResidualMethod::contraction);
    const double scale = std::max(1.0, std::pow(frobenius_norm(r), 3));
    CHECK(std::abs(emb.braided - con.braided) <= 1e-12 * scale);
    CHECK(std::abs(emb.algebraic - con.algebraic) <= 1e-12 * scale);
    CHECK(std::abs(emb.braided - oracle::braided_defect(r)) <= 1e-12 * scale);
  }
}

TEST_CASE("compose_with_swap carries braided solutions to algebraic ones") {
  const Matrix t = swap_matrix(2);
  CHECK(compose_with_swap(t) == Matrix::identity(4));
  CHECK(compose_with_swap(Matrix::identity(4)) == t);

  Rng rng = make_rng(23);
  const Matrix rep = family_rep_random(Family::F3, rng);
  CHECK(algebraic_residual(rep) <= 1e-12);
  CHECK(braided_residual(compose_with_swap(rep)) <= 1e-12);

  for (int i = 0; i < 100; ++i) {
    const Matrix r = (i % 2 == 0) ? random_matrix(rng, 4) : family_member(random_family_spec(Family::F1, rng));
    const double b = braided_residual(r), a = algebraic_residual(compose_with_swap(r));
    CHECK(a <= 10.0 * b + 1e-12);
    CHECK(b <= 10.0 * a + 1e-12);
  }
}

TEST_CASE("closure of the braided solution set") {
  Rng rng = make_rng(24);
  for (int t = 0; t < 20; ++t) {
    const Matrix r = family_member(random_family_spec(Family::F4, rng));
    REQUIRE(braided_residual(r) <= 1e-10);
    CHECK(braided_residual(random_phase(rng) * r) <= 1e-9);
    const Matrix q = random_matrix(rng, 2);
    const Matrix a = kron(q, q);
    CHECK(braided_residual(a * r * inverse(a)) <= 1e-7 * condition_number(a));
    CHECK(braided_residual(inverse(r)) <= 1e-7);
  }
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(braided_residual(Matrix::identity(2)), DimensionError);
  CHECK_THROWS_AS(algebraic_residual(Matrix::identity(8)), DimensionError);
  CHECK_THROWS_AS(contraction_residual(Matrix::identity(3), YbeForm::braided), DimensionError);
}

TEST_CASE("braid representation") {
  const Matrix t = swap_matrix(2);
  CHECK(braid(3, {1, 2, 1}, t) == braid(3, {2, 1, 2}, t));
  CHECK(braid(3, {}, t) == Matrix::identity(8));
  CHECK(braid(5, {}, t) == Matrix::identity(32));

  Rng rng = make_rng(25);
  const Matrix f4 = family_member(random_family_spec(Family::F4, rng));
  CHECK(frobenius_norm(braid(4, {1, 3}, f4) - braid(4, {3, 1}, f4)) <= 1e-9);

  SECTION("word order is left to right") {
    const Matrix r = random_matrix(rng, 4);
    const Matrix id2 = Matrix::identity(2);
    CHECK(oracle::max_diff(braid(3, {1, 2}, r), kron(r, id2) * kron(id2, r)) <= 1e-13);
  }

  SECTION("inverse letters cancel") {
    CHECK(frobenius_norm(braid(3, {1, -1, 2, -2}, f4) - Matrix::identity(8)) <= 1e-12);
  }

  SECTION("every family satisfies both braid relations") {
    for (Family f : kAllFamilies) {
      for (int t = 0; t < 5; ++t) {
        const Matrix r = family_member(random_family_spec(f, rng));
        CHECK(frobenius_norm(braid(3, {1, 2, 1}, r) - braid(3, {2, 1, 2}, r)) <= 1e-9);
        CHECK(frobenius_norm(braid(4, {1, 3}, r) - braid(4, {3, 1}, r)) <= 1e-9);
      }
    }
  }

  SECTION("guards") {
    CHECK_THROWS_AS(braid(7, {1}, t), SizeExceeded);
    CHECK_THROWS_AS(braid(3, {3}, t), PreconditionFailed);
    const Matrix singular = Matrix::diagonal({1.0, 0.0, 1.0, 1.0});
    CHECK_THROWS_AS(braid(3, {-1}, singular), SingularMatrix);
    CHECK_NOTHROW(braid(3, {1}, singular));
  }
}
