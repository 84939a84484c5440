#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "rqode/rhs.hpp"

namespace rqode {

// An autonomous initial-value problem z' = f(z) on [a, b], z(a) = eta.
// reference, when set, is the exact solution used for error measurement.
struct IVProblem {
  RhsProgram rhs;
  Vec eta;
  double a = 0.0;
  double b = 1.0;
  std::function<Vec(double)> reference;
};

struct NamedProblem {
  std::string name;
  IVProblem problem;
  double bound_g = 1.0;  // sup-norm bound on scaled residuals fed to sampling
  std::string note;
};

const std::vector<NamedProblem>& builtin_problems();

// Lookup by name; throws UnknownProblem listing the catalog.
const NamedProblem& find_problem(const std::string& name);

// Turns z' = f(t, z), z in R^dim, into an autonomous system by appending the
// clock as the last state component (value a at the left endpoint). f must be
// generic over the scalar: f(const S& t, const std::vector<S>& z).
template <class F>
RhsProgram autonomize(int dim, F f) {
  return RhsProgram(dim + 1, [dim, f](const auto& state) {
    using S = typename std::decay_t<decltype(state)>::value_type;
    std::vector<S> z(state.begin(), state.begin() + dim);
    std::vector<S> out = f(state[static_cast<size_t>(dim)], z);
    out.push_back(one_like(state[0]));
    return out;
  });
}

}  // namespace rqode
