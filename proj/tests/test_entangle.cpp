#include <catch_amalgamated.hpp>

#include "ybe4/entangle.hpp"
#include "ybe4/families.hpp"
#include "ybe4/random.hpp"

using namespace ybe4;

namespace {

TwoQubitState random_product(Rng& rng) {
  auto qubit = [&] {
    const Complex u = random_gaussian(rng), v = random_gaussian(rng);
    const double n = std::sqrt(std::norm(u) + std::norm(v));
    return std::array<Complex, 2>{u / n, v / n};
  };
  return TwoQubitState::product(qubit(), qubit());
}

}  // namespace

TEST_CASE("is_product_state") {
  const auto zero = is_product_state({1.0, 0.0, 0.0, 0.0});
  CHECK(zero.product);
  CHECK(zero.determinant == Complex{0.0});

  const double h = 1.0 / std::sqrt(2.0);
  const auto bell = is_product_state({h, 0.0, 0.0, h});
  CHECK_FALSE(bell.product);
  CHECK(std::abs(bell.determinant - 0.5) <= 1e-15);

  Rng rng = make_rng(41);
  const Complex q = random_phase(rng);
  CHECK(is_product_state({0.0, 0.0, h, q * h}).product);

  for (int t = 0; t < 100; ++t) {
    const auto s = random_product(rng);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
    CHECK(is_product_state(s).product);
  }
}

TEST_CASE("realign detects tensor products") {
  Rng rng = make_rng(42);
  const Matrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
  CHECK(schmidt_ratio(kron(a, b)) <= 1e-10);
  CHECK(schmidt_ratio(swap_matrix(2)) > 0.5);
  CHECK(realign(Matrix::identity(4))(0, 0) == Complex{1.0});
}

TEST_CASE("entangling verdicts") {
  CHECK_FALSE(is_entangling_gate(Matrix::identity(4)).entangling);
  CHECK_FALSE(is_entangling_gate(swap_matrix(2)).entangling);

  SECTION("family-4 member with Q = I") {
    FamilySpec f4;
    f4.family = Family::F4;
    const auto v = is_entangling_gate(family_member(f4));
    REQUIRE(v.entangling);
    REQUIRE(v.witness);
    // witness |00>, output (|00> − |11>)/√2
    CHECK(std::abs(v.witness->alpha - 1.0) <= 1e-12);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(v.output->alpha - h) <= 1e-12);
    CHECK(std::abs(v.output->delta + h) <= 1e-12);
    CHECK(v.witness_determinant == Catch::Approx(0.5));
  }

  Rng rng = make_rng(43);
  SECTION("family-5 members never entangle") {
    for (int t = 0; t < 20; ++t) CHECK_FALSE(is_entangling_gate(family_member(random_family_spec(Family::F5, rng))).entangling);
  }

  SECTION("family-2 members act as local gates composed with the swap") {
    for (int t = 0; t < 20; ++t) CHECK_FALSE(is_entangling_gate(family_member(random_family_spec(Family::F2, rng))).entangling);
  }

  SECTION("non-unitary input") {
    CHECK_THROWS_AS(is_entangling_gate(2.0 * Matrix::identity(4)), NotUnitary);
  }
}

TEST_CASE("entangling verdict is invariant under local unitaries") {
  Rng rng = make_rng(44);
  for (int t = 0; t < 50; ++t) {
    const Family f = kAllFamilies[t % 5];
    const Matrix g = family_member(random_family_spec(f, rng));
    if (!is_unitary(g).unitary) continue;
    const Matrix w = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    CHECK(is_entangling_gate(g).entangling == is_entangling_gate(w * g * dagger(w)).entangling);
  }
}

TEST_CASE("non-entangling gates keep product inputs product") {
  Rng rng = make_rng(45);
  for (Family f : kAllFamilies) {
    const Matrix g = family_member(random_family_spec(f, rng));
    const auto v = is_entangling_gate(g);
    if (v.entangling) {
      CHECK(v.witness_determinant > 1e-3);
      CHECK_FALSE(is_product_state(*v.output).product);
      continue;
    }
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) worst = std::max(worst, std::abs(is_product_state(apply_gate(g, random_product(rng))).determinant));
    CHECK(worst <= 1e-9);
  }
}
