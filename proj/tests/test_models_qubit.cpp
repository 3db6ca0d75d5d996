#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "seqmeas/models.hpp"
#include "seqmeas/tradeoff.hpp"

using namespace seqmeas;
using models::QubitParams;

namespace {

constexpr double kPi = 3.14159265358979323846;

double bloch(const QubitParams& p, const std::array<double, 3>& axis) {
  const double s2a = std::sin(2.0 * p.alpha);
  return axis[0] * s2a * std::cos(p.phi) + axis[1] * s2a * std::sin(p.phi) +
         axis[2] * std::cos(2.0 * p.alpha);
}

}  // namespace

TEST_CASE("simulation reproduces the closed-form distributions") {
  QubitParams p;
  p.alpha = 0.6;
  p.phi = 0.3;
  p.theta = 0.35;
  p.b_axis = {1.0, 1.0, 1.0};

  auto s = models::qubit_cnot_model(p);
  const double rt3 = 1.0 / std::sqrt(3.0);
  const double A = bloch(p, {0, 0, 1});
  const double B = bloch(p, {rt3, rt3, rt3});
  const double ba = rt3;
  const double c2 = std::cos(2 * p.theta), s2 = std::sin(2 * p.theta);
  const double T = s2 * B + (1 - s2) * ba * A;

  CHECK(s.p_a[0] == doctest::Approx(0.5 * (1 + A)).epsilon(1e-12));
  CHECK(s.p_b[0] == doctest::Approx(0.5 * (1 + B)).epsilon(1e-12));
  CHECK(s.p_c[0] == doctest::Approx(0.5 * (1 + c2 * A)).epsilon(1e-12));
  CHECK(s.p_d[0] == doctest::Approx(0.5 * (1 + T)).epsilon(1e-12));
  for (const auto* d : {&s.p_a, &s.p_b, &s.p_c, &s.p_d}) {
    CHECK(d->physical);
    CHECK((*d)[0] + (*d)[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed forms match the permutation machinery on random settings") {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto rand_axis = [&]() {
    std::array<double, 3> v{nd(gen), nd(gen), nd(gen)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return std::array<double, 3>{v[0] / n, v[1] / n, v[2] / n};
  };

  for (int t = 0; t < 300; ++t) {
    QubitParams p;
    p.alpha = u01(gen) * kPi;
    p.phi = u01(gen) * 2 * kPi;
    p.theta = u01(gen) * kPi / 4;
    p.a_axis = rand_axis();
    p.b_axis = rand_axis();

    auto rep = tradeoff::tradeoff_report(models::qubit_cnot_model(p));
    auto cf = models::qubit_closed_forms(p);
    CAPTURE(t);
    CHECK(rep.epsilon == doctest::Approx(cf.epsilon).epsilon(1e-10).scale(1.0));
    CHECK(rep.eta == doctest::Approx(cf.eta).epsilon(1e-10).scale(1.0));
    CHECK(rep.xi_g_max == doctest::Approx(cf.xi_g_max).epsilon(1e-10).scale(1.0));
    CHECK(rep.Xi == doctest::Approx(cf.Xi).epsilon(1e-10).scale(1.0));
    CHECK(cf.Xi >= -1e-10);
  }
}

TEST_CASE("anchor settings") {
  // theta = 0: sharp readout, no error; disturbance collapses b onto a.
  QubitParams p;
  p.alpha = 0.4;
  p.phi = 0.0;
  p.theta = 0.0;
  p.b_axis = {1.0, 0.0, 0.0};
  auto cf = models::qubit_closed_forms(p);
  CHECK(cf.epsilon == doctest::Approx(0.0).epsilon(1e-14));
  const double B = std::sin(2 * p.alpha);
  CHECK(cf.eta == doctest::Approx(B).epsilon(1e-12));  // a.b = 0 kills T

  // theta = pi/4: the meter stays uncoupled, so no disturbance, full error.
  p.theta = kPi / 4;
  cf = models::qubit_closed_forms(p);
  CHECK(cf.eta == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cf.epsilon == doctest::Approx(std::abs(std::cos(2 * p.alpha))).epsilon(1e-12));
  auto rep = tradeoff::tradeoff_report(models::qubit_cnot_model(p));
  CHECK(rep.epsilon == doctest::Approx(cf.epsilon).epsilon(1e-11));
  CHECK(rep.eta == doctest::Approx(cf.eta).scale(1.0).epsilon(1e-11));
}

TEST_CASE("orthogonal axes saturate the bound") {
  // a = z, b = x: the inequality becomes an equality for every setting.
  for (double alpha : {0.1, 0.5, 1.0, 1.4}) {
    for (double theta : {0.0, 0.2, 0.5, kPi / 4}) {
      QubitParams p;
      p.alpha = alpha;
      p.theta = theta;
      auto rep = tradeoff::tradeoff_report(models::qubit_cnot_model(p));
      CHECK(std::abs(rep.Xi) <= 1e-10);
      auto cf = models::qubit_closed_forms(p);
      CHECK(std::abs(cf.Xi) <= 1e-12);
    }
  }
}

TEST_CASE("parameter validation") {
  QubitParams p;
  p.theta = 0.9;  // cos(2 theta) < 0
  CHECK_THROWS_AS(models::qubit_closed_forms(p), models::ModelError);
  p.theta = 0.2;
  p.a_axis = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(models::qubit_cnot_model(p), models::ModelError);
  CHECK_THROWS_AS(models::qubit_closed_forms(p), models::ModelError);
}
