#pragma once

#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sclab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Value and first two derivatives of a scalar function of one variable.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Bad user input: out-of-domain arguments, inconsistent parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not deliver a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { left, right };

}  // namespace sclab
