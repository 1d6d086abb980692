#include <doctest.h>

#include "qsl/hamiltonians.hpp"
#include "test_util.hpp"

using namespace qsl;
using qsl::testing::kPi;

TEST_CASE("build_pauli") {
  SUBCASE("single-spin drift") {
    const Matrix h = build_pauli({{"X", 0.4}, {"Y", -0.2}});
    const Matrix expect = 0.4 * pauli('X') - 0.2 * pauli('Y');
    CHECK((h - expect).norm() < 1e-15);
  }
  SUBCASE("Heisenberg drift strength is 4 lambda.lambda") {
    const Matrix h = build_pauli({{"XX", 1}, {"YY", 2}, {"ZZ", 3}});
    CHECK(hilbert_schmidt(h, h).real() ==
          doctest::Approx(4.0 * (1 + 4 + 9)).epsilon(1e-14));
    const Matrix iso = build_pauli({{"XX", 1}, {"YY", 1}, {"ZZ", 1}});
    CHECK(hilbert_schmidt(iso, iso).real() == doctest::Approx(12.0));
  }
  SUBCASE("all-identity with zero coefficient") {
    const Matrix h = build_pauli({{"I", 0.0}});
    CHECK(h.rows() == 2);
    CHECK(h.norm() == 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build_pauli({}), std::invalid_argument);
    CHECK_THROWS_AS(build_pauli({{"X", 1.0}, {"XX", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_pauli({{"Q", 1.0}}), std::invalid_argument);
  }
  SUBCASE("Hermitian, traceless without identity strings") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const Matrix h = build_pauli(
        {{"XY", unif(rng)}, {"ZZ", unif(rng)}, {"YI", unif(rng)}});
    CHECK((h - h.adjoint()).norm() < 1e-15);
    CHECK(std::abs(h.trace()) < 1e-15);
  }
}

TEST_CASE("Clifford identity for Pauli vectors") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double dx = unif(rng), dy = unif(rng), dz = unif(rng);
    const Matrix h = build_pauli({{"X", dx}, {"Y", dy}, {"Z", dz}});
    CHECK(hilbert_schmidt(h, h).real() ==
          doctest::Approx(2.0 * (dx * dx + dy * dy + dz * dz)).epsilon(1e-13));
  }
}

TEST_CASE("rho") {
  SUBCASE("ratio definition") {
    std::mt19937 rng(17);
    const Matrix h0 = testing::random_hermitian_traceless(3, rng);
    const double h = (h0 * h0).trace().real();
    CHECK(rho(make_problem(h0, 2.0 * h)) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("single-spin data gives D^2/B^2") {
    const double bx = 0.1, by = 0.2, d = 1.0;
    const ControlProblem p =
        make_problem(build_pauli({{"X", bx}, {"Y", by}}), 2.0 * d * d);
    CHECK(rho(p) == doctest::Approx(d * d / (bx * bx + by * by)).epsilon(1e-13));
  }
  SUBCASE("Heisenberg data gives 1/(4 alpha lambda^2)") {
    const double alpha = 1.0 / 24.0;
    const ControlProblem p = make_problem(
        build_pauli({{"XX", 1}, {"YY", 1}, {"ZZ", 1}}), 1.0 / alpha);
    CHECK(rho(p) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("drift-free is rejected") {
    CHECK_THROWS_AS(rho(make_problem(Matrix::Zero(2, 2), 1.0)),
                    std::domain_error);
  }
}

TEST_CASE("uniform superposition identity") {
  SUBCASE("sigma_z") {
    const auto [lhs, rhs] = uniform_superposition_check(pauli('Z'));
    CHECK(lhs == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rhs == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("Heisenberg drift, lambda = (1,2,3)") {
    const Matrix h = build_pauli({{"XX", 1}, {"YY", 2}, {"ZZ", 3}});
    const auto [lhs, rhs] = uniform_superposition_check(h);
    CHECK(lhs == doctest::Approx(56.0).epsilon(1e-13));
    CHECK(rhs == doctest::Approx(56.0).epsilon(1e-13));
  }
  SUBCASE("zero matrix") {
    const auto [lhs, rhs] = uniform_superposition_check(Matrix::Zero(3, 3));
    CHECK(lhs == 0.0);
    CHECK(rhs == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("holds for random Hermitian matrices") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 << (trial % 3);
      const Matrix h = testing::random_hermitian(n, rng);
      const auto [lhs, rhs] = uniform_superposition_check(h);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("validate") {
  std::mt19937 rng(41);
  SUBCASE("valid single-spin setup") {
    const ControlProblem p =
        make_problem(build_pauli({{"X", 0.1}, {"Y", 0.2}}), 2.0);
    CHECK(validate(p).empty());
    CHECK(rho(p) > 1.0);
  }
  SUBCASE("budget equal to drift strength violates small wind") {
    const Matrix h0 = testing::random_hermitian_traceless(2, rng);
    const double h = (h0 * h0).trace().real();
    const auto violations = validate(make_problem(h0, h));
    REQUIRE(violations.size() == 1);
    CHECK(violations.front().name == "small_wind_violated");
  }
  SUBCASE("nonzero trace is reported") {
    ControlProblem p;
    p.dim = 2;
    p.h0 = Matrix::Identity(2, 2);
    p.budget = 10.0;
    bool found = false;
    for (const auto& v : validate(p)) found |= v.name == "not_traceless";
    CHECK(found);
  }
  SUBCASE("small trace is projected away by make_problem") {
    Matrix h0 = testing::random_hermitian_traceless(2, rng);
    h0 += 1e-11 * Matrix::Identity(2, 2);
    const ControlProblem p = make_problem(h0, 100.0);
    CHECK(std::abs(p.h0.trace()) < 1e-15);
  }
}
