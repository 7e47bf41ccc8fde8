#include "freedim/cutoff.hpp"
#include "freedim/errors.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace freedim;

namespace {

const CutoffShape kShapes[] = {CutoffShape::ExponentialClamp, CutoffShape::Smooth};

// A self-adjoint matrix with prescribed, possibly repeated, eigenvalues.
Matrix with_spectrum(const RealVector& lambda, Rng& rng) {
  const Matrix u = random_unitary(lambda.size(), rng);
  return u * lambda.cast<cplx>().asDiagonal() * u.adjoint();
}

double spectral_radius(const Matrix& a) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(a, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("cutoff conditions on a grid") {
  for (CutoffShape shape : kShapes)
    for (double r : {0.5, 1.0, 2.5, 7.0}) {
      const CutoffFamily f(r, shape);
      for (double x = -3.0 * r - 5.0; x <= 3.0 * r + 5.0; x += 0.0625) {
        if (std::abs(x) <= r) CHECK(f.value(x) == x);
        CHECK(std::abs(f.value(x)) <= r + 1.0);
        CHECK(f.value(-x) == doctest::Approx(-f.value(x)).epsilon(1e-14));
        for (double y = -3.0 * r - 5.0; y <= 3.0 * r + 5.0; y += 0.375) {
          const double g = f.quotient(x, y);
          CHECK(std::abs(g) <= 2.0);
          CHECK(g >= -1e-12);
          CHECK(g <= 1.0 + 1e-12);
        }
      }
    }
}

TEST_CASE("derivative agrees with central differences") {
  for (CutoffShape shape : kShapes) {
    const CutoffFamily f(1.5, shape);
    for (double x = -5.0; x <= 5.0; x += 0.1) {
      // f is only C^1 at |x| = R, where the central difference error is O(h).
      const double h = 1e-5;
      const double fd = (f.value(x + h) - f.value(x - h)) / (2 * h);
      CHECK(std::abs(fd - f.derivative(x)) < 1e-5);
    }
  }
}

TEST_CASE("closed forms of the two shapes") {
  const CutoffFamily e(2.0);
  CHECK(e.value(3.0) == doctest::Approx(3.0 - std::exp(-1.0)));
  CHECK(e.value(-2.0) == -2.0);
  CHECK(e.value(50.0) == doctest::Approx(3.0));
  CHECK(cutoff_eval(2.0, 3.0) == e.value(3.0));
  CHECK(quotient_eval(2.0, 3.0, 3.0) == doctest::Approx(std::exp(-1.0)));
  const CutoffFamily s(2.0, CutoffShape::Smooth);
  CHECK(s.value(10.0) == doctest::Approx(2.5).epsilon(1e-12));
  // Midpoint value by a fine midpoint-rule quadrature of 1 - psi.
  auto psi = [](double u) {
    if (u <= 0) return 0.0;
    if (u >= 1) return 1.0;
    const double a = std::exp(-1 / u), b = std::exp(-1 / (1 - u));
    return a / (a + b);
  };
  double integral = 0.0;
  const int steps = 200000;
  for (int k = 0; k < steps; ++k) integral += (1.0 - psi((k + 0.5) * 0.5 / steps)) * 0.5 / steps;
  CHECK(s.value(2.5) == doctest::Approx(2.0 + integral).epsilon(1e-9));
}

TEST_CASE("difference quotient switches to the derivative near the diagonal") {
  ScalarFunction cube{[](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }};
  CHECK(difference_quotient(cube, 2.0, 1.0) == doctest::Approx(7.0));
  CHECK(difference_quotient(cube, 2.0, 2.0 + 1e-9) == doctest::Approx(12.0).epsilon(1e-7));
}

TEST_CASE("functional calculus against polynomials") {
  Rng rng(51);
  const Matrix a = random_hermitian(6, rng);
  ScalarFunction square{[](double x) { return x * x; }, [](double x) { return 2 * x; }};
  CHECK((apply_function(a, square) - a * a).norm() < 1e-12);
  Matrix bad = random_matrix(3, rng);
  CHECK_THROWS_AS(apply_function(bad, square), NotSelfAdjoint);
  CHECK_THROWS_AS(apply_cutoff(bad, 1.0), NotSelfAdjoint);
  CHECK_THROWS_AS(CutoffFamily(0.0), std::invalid_argument);
}

TEST_CASE("commutator identity on 50 seeded pairs, degenerate spectra included") {
  Rng rng(52);
  std::uniform_int_distribution<int> dim(1, 32);
  std::uniform_real_distribution<double> radius(0.2, 4.0);
  for (int t = 0; t < 50; ++t) {
    const int d = dim(rng);
    Matrix a;
    if (t % 3 == 0) {
      // Only three distinct eigenvalues.
      RealVector lambda(d);
      for (int k = 0; k < d; ++k) lambda(k) = static_cast<double>(k % 3) - 1.0;
      a = with_spectrum(lambda * 2.0, rng);
    } else if (t % 3 == 1) {
      a = random_hermitian(d, rng);
    } else {
      RealVector lambda(d);
      for (int k = 0; k < d; ++k) lambda(k) = k < d / 2 ? 3.0 : 3.0 + 1e-10;  // nearly degenerate
      a = with_spectrum(lambda, rng);
    }
    const Matrix x = random_matrix(d, rng);
    for (CutoffShape shape : kShapes) CHECK(commutator_identity_check(a, x, radius(rng), shape) <= 1e-9);
  }
}

TEST_CASE("convergence sweep against direct commutators") {
  Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_hermitian(6, rng) * (1.0 + t % 4);
    const std::vector<Matrix> xs{random_hermitian(6, rng), random_matrix(6, rng)};
    const double rho = spectral_radius(a);
    std::vector<double> radii;
    for (double r = 0.25; r <= rho + 2.0; r += 0.5) radii.push_back(r);
    radii.push_back(rho);
    std::sort(radii.begin(), radii.end());
    for (CutoffShape shape : kShapes) {
      const auto sweep = convergence_sweep(a, xs, radii, shape);
      for (std::size_t k = 0; k < sweep.size(); ++k) {
        double sq = 0.0;
        const Matrix ar = apply_cutoff(a, radii[k], shape);
        for (const auto& x : xs) sq += (commutator(ar, x) - commutator(a, x)).squaredNorm();
        CHECK(std::abs(sweep[k].hs_error - std::sqrt(sq)) < 1e-9);
        if (k > 0) CHECK(sweep[k].hs_error <= sweep[k - 1].hs_error + 1e-12);
        if (radii[k] >= rho) CHECK(sweep[k].hs_error <= 1e-10);
      }
    }
  }
}

TEST_CASE("sweep csv") {
  const std::vector<SweepPoint> points{{1.0, 0.5}, {2.0, 0.0}};
  CHECK(sweep_csv(points) == "R,hs_error\n1,0.5\n2,0\n");
}
