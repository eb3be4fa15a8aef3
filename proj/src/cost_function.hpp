#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace auglab::routing {

// Flow-dependent edge cost. All supported kinds are nonnegative,
// continuous and nondecreasing on their domain; x*c(x) is convex.
// Closed forms exist per kind for the value, the primitive from 0,
// and the marginal cost c(x) + x*c'(x).
class CostFunction {
 public:
  enum class Kind { Constant, Affine, Monomial, Polynomial, Mm1, MaxConst };

  static CostFunction constant(double c);
  static CostFunction affine(double slope, double intercept);  // a*x + b
  static CostFunction monomial(double coeff, int degree);      // a*x^d
  static CostFunction polynomial(std::vector<double> coeffs);  // sum c_i x^i
  static CostFunction mm1(double capacity);                    // 1/(u - x)

  // Pointwise max with a constant floor; identity when the floor never
  // binds (floor <= c(0)).
  CostFunction max_with(double floor) const;

  Kind kind() const { return kind_; }
  double value(double x) const;
  double derivative(double x) const;
  double primitive(double x) const;  // integral of value over [0, x]
  double marginal(double x) const;   // value(x) + x * derivative(x)

  // Least x >= 0 with value(x) = level; only for strictly increasing kinds.
  double inverse(double level) const;
  bool strictly_increasing() const;

  bool has_capacity() const;   // true when an mm1 asymptote bounds the flow
  double capacity() const;     // +inf when unbounded

  CostFunction slower() const;  // x -> c(x/2)/2

  nlohmann::json to_json() const;
  static CostFunction from_json(const nlohmann::json& j);

 private:
  CostFunction() = default;
  double crossing(double level) const;  // inf{t >= 0 : value(t) >= level}

  Kind kind_ = Kind::Constant;
  double a_ = 0.0;  // constant value / affine slope / monomial coeff / mm1 u
  double b_ = 0.0;  // affine intercept
  int degree_ = 1;
  std::vector<double> coeffs_;  // polynomial, ascending powers
  double floor_ = 0.0;          // MaxConst
  std::shared_ptr<const CostFunction> inner_;  // MaxConst
};

}  // namespace auglab::routing
