#pragma once

// Exact rational scalar for Eigen fixed-size algebra.

#include <boost/rational.hpp>

#include <Eigen/Core>

#include <cstdint>

namespace ngpair {
using Rational = boost::rational<std::int64_t>;
}

namespace Eigen {

template <>
struct NumTraits<ngpair::Rational> : GenericNumTraits<ngpair::Rational> {
  using Real = ngpair::Rational;
  using NonInteger = ngpair::Rational;
  using Nested = ngpair::Rational;
  using Literal = ngpair::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
