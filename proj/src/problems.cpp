#include "rqode/problems.hpp"

#include <cmath>

#include "rqode/errors.hpp"

namespace rqode {
namespace {

std::vector<NamedProblem> make_catalog() {
  std::vector<NamedProblem> cat;

  cat.push_back({"const_zero",
                 {RhsProgram(1,
                             [](const auto& z) {
                               using std::vector;
                               return vector{zero_like(z[0])};
                             }),
                  Vec{0.7},
                  0.0,
                  1.0,
                  [](double) { return Vec{0.7}; }},
                 1.0,
                 "z' = 0, z(0) = 0.7; every residual vanishes identically"});

  cat.push_back({"exp_growth",
                 {RhsProgram(1,
                             [](const auto& z) {
                               using std::vector;
                               return vector{z[0]};
                             }),
                  Vec{1.0},
                  0.0,
                  1.0,
                  [](double t) { return Vec{std::exp(t)}; }},
                 8.0,
                 "z' = z, z(0) = 1; solution e^t"});

  cat.push_back({"exp_decay",
                 {RhsProgram(1,
                             [](const auto& z) {
                               using std::vector;
                               return vector{-z[0]};
                             }),
                  Vec{1.0},
                  0.0,
                  1.0,
                  [](double t) { return Vec{std::exp(-t)}; }},
                 8.0,
                 "z' = -z, z(0) = 1; solution e^-t"});

  cat.push_back({"riccati",
                 {RhsProgram(1,
                             [](const auto& z) {
                               using std::vector;
                               return vector{z[0] * z[0]};
                             }),
                  Vec{1.0},
                  0.0,
                  0.5,
                  [](double t) { return Vec{1.0 / (1.0 - t)}; }},
                 24.0,
                 "z' = z^2, z(0) = 1 on [0, 1/2]; solution 1/(1-t)"});

  cat.push_back({"logistic",
                 {RhsProgram(1,
                             [](const auto& z) {
                               using std::vector;
                               return vector{z[0] * (one_like(z[0]) - z[0])};
                             }),
                  Vec{0.5},
                  0.0,
                  1.0,
                  [](double t) { return Vec{1.0 / (1.0 + std::exp(-t))}; }},
                 1.0,
                 "z' = z(1-z), z(0) = 1/2; solution 1/(1+e^-t)"});

  cat.push_back({"harmonic_2d",
                 {RhsProgram(2,
                             [](const auto& z) {
                               using std::vector;
                               return vector{z[1], -z[0]};
                             }),
                  Vec{0.0, 1.0},
                  0.0,
                  1.0,
                  [](double t) { return Vec{std::sin(t), std::cos(t)}; }},
                 1.0,
                 "z'' = -z as a system; solution (sin t, cos t)"});

  cat.push_back(
      {"nonauto_poly",
       {autonomize(1,
                   [](const auto& t, const auto& z) {
                     using S = typename std::decay_t<decltype(z)>::value_type;
                     (void)z;
                     return std::vector<S>{t};
                   }),
        Vec{0.0, 0.0},
        0.0,
        1.0,
        [](double t) { return Vec{0.5 * t * t, t}; }},
       1.0,
       "z' = t via the appended-clock construction; solution t^2/2"});

  return cat;
}

}  // namespace

const std::vector<NamedProblem>& builtin_problems() {
  static const std::vector<NamedProblem> catalog = make_catalog();
  return catalog;
}

const NamedProblem& find_problem(const std::string& name) {
  for (const NamedProblem& p : builtin_problems())
    if (p.name == name) return p;
  std::string known;
  for (const NamedProblem& p : builtin_problems()) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  throw UnknownProblem("unknown problem '" + name + "'; known: " + known);
}

}  // namespace rqode
