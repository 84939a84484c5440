#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "rqode/errors.hpp"
#include "rqode/problems.hpp"
#include "rqode/taylor.hpp"

using rqode::find_problem;
using rqode::IVProblem;
using rqode::NamedProblem;
using rqode::Vec;

TEST_SUITE("problems") {

TEST_CASE("catalog holds the seven built-ins in order") {
  const auto& cat = rqode::builtin_problems();
  REQUIRE(cat.size() == 7);
  const char* names[] = {"const_zero", "exp_growth", "exp_decay", "riccati",
                         "logistic",   "harmonic_2d", "nonauto_poly"};
  for (size_t i = 0; i < 7; ++i) CHECK(cat[i].name == names[i]);
}

TEST_CASE("unknown names are rejected with the catalog listed") {
  CHECK_THROWS_WITH_AS(find_problem("nope"), doctest::Contains("logistic"),
                       rqode::UnknownProblem);
}

TEST_CASE("references start at the initial state") {
  for (const NamedProblem& np : rqode::builtin_problems()) {
    REQUIRE(np.problem.reference);
    CHECK(np.problem.reference(np.problem.a) == np.problem.eta);
  }
}

TEST_CASE("references satisfy their equations along the interval") {
  for (const NamedProblem& np : rqode::builtin_problems()) {
    const IVProblem& p = np.problem;
    const double h = 1e-6;
    for (double frac : {0.1, 0.5, 0.9}) {
      const double t = p.a + frac * (p.b - p.a);
      const Vec fwd = p.reference(t + h);
      const Vec bwd = p.reference(t - h);
      const Vec want = p.rhs(p.reference(t));
      for (size_t c = 0; c < want.size(); ++c) {
        const double got = (fwd[c] - bwd[c]) / (2.0 * h);
        CHECK(std::fabs(got - want[c]) <= 1e-6 * (1.0 + std::fabs(want[c])));
      }
    }
  }
}

TEST_CASE("catalog carries positive residual bounds") {
  for (const NamedProblem& np : rqode::builtin_problems()) {
    CHECK(np.bound_g > 0.0);
    CHECK(!np.note.empty());
    CHECK(np.problem.b > np.problem.a);
    CHECK(static_cast<int>(np.problem.eta.size()) == np.problem.rhs.dim());
  }
}

TEST_CASE("the zero field is exactly zero") {
  const auto& p = find_problem("const_zero").problem;
  CHECK(p.rhs(Vec{0.5}) == Vec{0.0});
}

TEST_CASE("appended clock turns z' = t into an autonomous system") {
  auto rhs = rqode::autonomize(
      1, [](const auto& t, const auto& z) {
        using S = typename std::decay_t<decltype(z)>::value_type;
        (void)z;
        return std::vector<S>{t};
      });
  CHECK(rhs.dim() == 2);
  CHECK(rhs(Vec{3.0, 2.0}) == Vec{2.0, 1.0});

  // Flow from (0, 0): z = t^2/2, clock = t, termwise exact.
  auto zc = rqode::ode_taylor_coeffs(rhs, Vec{0.0, 0.0}, 3);
  CHECK(zc[0][0] == 0.0);
  CHECK(zc[0][1] == 0.0);
  CHECK(zc[0][2] == 0.5);
  CHECK(zc[0][3] == 0.0);
  CHECK(zc[1][1] == 1.0);
  CHECK(zc[1][2] == 0.0);
}

TEST_CASE("appended clock handles a transcendental drive") {
  using std::sin;
  auto rhs = rqode::autonomize(
      1, [](const auto& t, const auto& z) {
        using S = typename std::decay_t<decltype(z)>::value_type;
        (void)z;
        return std::vector<S>{sin(t)};
      });
  // z' = sin t, z(0) = 0 has solution 1 - cos t = t^2/2 - t^4/24 + ...
  auto zc = rqode::ode_taylor_coeffs(rhs, Vec{0.0, 0.0}, 4);
  CHECK(zc[0][2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(zc[0][3] == 0.0);
  CHECK(zc[0][4] == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
}

TEST_CASE("the nonautonomous catalog entry tracks its clock") {
  const auto& p = find_problem("nonauto_poly").problem;
  CHECK(p.rhs.dim() == 2);
  const Vec mid = p.reference(0.5);
  CHECK(mid == Vec{0.125, 0.5});
}

}  // TEST_SUITE
