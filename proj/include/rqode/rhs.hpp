#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rqode/errors.hpp"
#include "rqode/jet.hpp"

namespace rqode {

using Vec = std::vector<double>;

// d jet components sharing one truncation order.
struct VectorJet {
  std::vector<Jet> comps;

  int dim() const { return static_cast<int>(comps.size()); }
  int order() const { return comps.empty() ? 0 : comps[0].order(); }
  Jet& operator[](int i) { return comps[static_cast<size_t>(i)]; }
  const Jet& operator[](int i) const { return comps[static_cast<size_t>(i)]; }
};

// A right-hand side f: R^d -> R^d given as one pure program over an abstract
// scalar. Construction instantiates the same callable for plain doubles and
// for jets, so truncated expansions of f are obtained by running the original
// program, never by a separate hand-derived formula.
//
// The callable must accept const std::vector<S>& and return std::vector<S>
// for S in {double, Jet}; generic lambdas fit naturally.
class RhsProgram {
 public:
  template <class F>
  RhsProgram(int dim, F f)
      : dim_(dim),
        real_([f](const Vec& y) { return f(y); }),
        jets_([f](const std::vector<Jet>& y) { return f(y); }) {
    if (dim < 1) throw InvalidSpec("rhs dimension must be >= 1");
  }

  int dim() const { return dim_; }

  Vec operator()(const Vec& y) const {
    require_dim(static_cast<int>(y.size()), "input");
    Vec out = real_(y);
    require_dim(static_cast<int>(out.size()), "output");
    return out;
  }

  VectorJet operator()(const VectorJet& y) const {
    require_dim(y.dim(), "input");
    VectorJet out{jets_(y.comps)};
    require_dim(out.dim(), "output");
    return out;
  }

 private:
  void require_dim(int got, const char* what) const {
    if (got != dim_)
      throw Error(std::string("rhs ") + what + " dimension mismatch");
  }

  int dim_;
  std::function<Vec(const Vec&)> real_;
  std::function<std::vector<Jet>(const std::vector<Jet>&)> jets_;
};

}  // namespace rqode
