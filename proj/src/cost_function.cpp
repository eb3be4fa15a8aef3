#include "cost_function.hpp"

#include <cmath>
#include <limits>

namespace auglab::routing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double checked_nonneg(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw InvalidInput(std::string(what) + " must be finite and >= 0");
  return v;
}

double parse_decimal_field(const nlohmann::json& j, const char* field) {
  if (!j.contains(field))
    throw ParseFailure(std::string("cost: missing field '") + field + "'");
  const auto& v = j.at(field);
  if (v.is_string()) return parse_double(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw ParseFailure(std::string("cost: field '") + field +
                     "' must be a decimal string");
}

}  // namespace

CostFunction CostFunction::constant(double c) {
  CostFunction f;
  f.kind_ = Kind::Constant;
  f.a_ = checked_nonneg(c, "constant cost");
  return f;
}

CostFunction CostFunction::affine(double slope, double intercept) {
  CostFunction f;
  f.kind_ = Kind::Affine;
  f.a_ = checked_nonneg(slope, "affine slope");
  f.b_ = checked_nonneg(intercept, "affine intercept");
  return f;
}

CostFunction CostFunction::monomial(double coeff, int degree) {
  if (degree < 1) throw InvalidInput("monomial degree must be >= 1");
  CostFunction f;
  f.kind_ = Kind::Monomial;
  f.a_ = checked_nonneg(coeff, "monomial coefficient");
  f.degree_ = degree;
  return f;
}

CostFunction CostFunction::polynomial(std::vector<double> coeffs) {
  for (double c : coeffs) checked_nonneg(c, "polynomial coefficient");
  if (coeffs.empty()) coeffs.push_back(0.0);
  CostFunction f;
  f.kind_ = Kind::Polynomial;
  f.coeffs_ = std::move(coeffs);
  return f;
}

CostFunction CostFunction::mm1(double capacity) {
  if (!(capacity > 0.0) || !std::isfinite(capacity))
    throw InvalidInput("mm1 capacity u must be > 0");
  CostFunction f;
  f.kind_ = Kind::Mm1;
  f.a_ = capacity;
  return f;
}

CostFunction CostFunction::max_with(double floor) const {
  checked_nonneg(floor, "cost floor");
  if (kind_ == Kind::Constant) return constant(std::max(a_, floor));
  if (kind_ == Kind::MaxConst) {
    if (floor <= floor_) return *this;
    CostFunction f;
    f.kind_ = Kind::MaxConst;
    f.floor_ = floor;
    f.inner_ = inner_;
    return f;
  }
  if (floor <= value(0.0)) return *this;  // the floor never binds
  CostFunction f;
  f.kind_ = Kind::MaxConst;
  f.floor_ = floor;
  f.inner_ = std::make_shared<CostFunction>(*this);
  return f;
}

double CostFunction::value(double x) const {
  switch (kind_) {
    case Kind::Constant: return a_;
    case Kind::Affine: return a_ * x + b_;
    case Kind::Monomial: return a_ * std::pow(x, degree_);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
      return acc;
    }
    case Kind::Mm1: return x < a_ ? 1.0 / (a_ - x) : kInf;
    case Kind::MaxConst: return std::max(inner_->value(x), floor_);
  }
  return 0.0;
}

double CostFunction::derivative(double x) const {
  switch (kind_) {
    case Kind::Constant: return 0.0;
    case Kind::Affine: return a_;
    case Kind::Monomial:
      return degree_ == 1 ? a_ : a_ * degree_ * std::pow(x, degree_ - 1);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 1;)
        acc = acc * x + coeffs_[i] * static_cast<double>(i);
      return acc;
    }
    case Kind::Mm1: {
      if (x >= a_) return kInf;
      double d = a_ - x;
      return 1.0 / (d * d);
    }
    case Kind::MaxConst:
      return x < inner_->crossing(floor_) ? 0.0 : inner_->derivative(x);
  }
  return 0.0;
}

double CostFunction::primitive(double x) const {
  switch (kind_) {
    case Kind::Constant: return a_ * x;
    case Kind::Affine: return 0.5 * a_ * x * x + b_ * x;
    case Kind::Monomial:
      return a_ * std::pow(x, degree_ + 1) / (degree_ + 1);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = (acc * x) + coeffs_[i] * x / static_cast<double>(i + 1);
      return acc;
    }
    case Kind::Mm1:
      return x < a_ ? std::log(a_ / (a_ - x)) : kInf;
    case Kind::MaxConst: {
      double x0 = inner_->crossing(floor_);
      if (x <= x0) return floor_ * x;
      return floor_ * x0 + inner_->primitive(x) - inner_->primitive(x0);
    }
  }
  return 0.0;
}

double CostFunction::marginal(double x) const {
  double v = value(x);
  if (!std::isfinite(v)) return kInf;
  return v + x * derivative(x);
}

bool CostFunction::strictly_increasing() const {
  switch (kind_) {
    case Kind::Constant: return false;
    case Kind::Affine: return a_ > 0.0;
    case Kind::Monomial: return a_ > 0.0;
    case Kind::Polynomial:
      for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] > 0.0) return true;
      return false;
    case Kind::Mm1: return true;
    case Kind::MaxConst: return false;  // flat below the floor
  }
  return false;
}

double CostFunction::inverse(double level) const {
  switch (kind_) {
    case Kind::Affine:
      if (!(a_ > 0.0)) break;
      return level <= b_ ? 0.0 : (level - b_) / a_;
    case Kind::Monomial:
      if (!(a_ > 0.0)) break;
      return level <= 0.0 ? 0.0 : std::pow(level / a_, 1.0 / degree_);
    case Kind::Mm1:
      return level <= 1.0 / a_ ? 0.0 : a_ - 1.0 / level;
    default: break;
  }
  throw InvalidInput("cost function is not strictly increasing; no inverse");
}

bool CostFunction::has_capacity() const {
  if (kind_ == Kind::Mm1) return true;
  if (kind_ == Kind::MaxConst) return inner_->has_capacity();
  return false;
}

double CostFunction::capacity() const {
  if (kind_ == Kind::Mm1) return a_;
  if (kind_ == Kind::MaxConst) return inner_->capacity();
  return kInf;
}

CostFunction CostFunction::slower() const {
  switch (kind_) {
    case Kind::Constant: return constant(a_ / 2.0);
    case Kind::Affine: return affine(a_ / 4.0, b_ / 2.0);
    case Kind::Monomial:
      return monomial(a_ / std::pow(2.0, degree_ + 1), degree_);
    case Kind::Polynomial: {
      std::vector<double> c = coeffs_;
      for (std::size_t i = 0; i < c.size(); ++i)
        c[i] /= std::pow(2.0, static_cast<double>(i + 1));
      return polynomial(std::move(c));
    }
    case Kind::Mm1: return mm1(2.0 * a_);
    case Kind::MaxConst: return inner_->slower().max_with(floor_ / 2.0);
  }
  return constant(0.0);
}

double CostFunction::crossing(double level) const {
  switch (kind_) {
    case Kind::Constant: return a_ >= level ? 0.0 : kInf;
    case Kind::Affine:
      if (b_ >= level) return 0.0;
      return a_ > 0.0 ? (level - b_) / a_ : kInf;
    case Kind::Monomial:
      if (level <= 0.0) return 0.0;
      return a_ > 0.0 ? std::pow(level / a_, 1.0 / degree_) : kInf;
    case Kind::Mm1:
      return level <= 1.0 / a_ ? 0.0 : a_ - 1.0 / level;
    case Kind::Polynomial: {
      if (value(0.0) >= level) return 0.0;
      double hi = 1.0;
      int guard = 0;
      while (value(hi) < level) {
        hi *= 2.0;
        if (++guard > 200) return kInf;
      }
      double lo = 0.0;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (value(mid) >= level ? hi : lo) = mid;
      }
      return hi;
    }
    case Kind::MaxConst:
      if (floor_ >= level) return 0.0;
      return inner_->crossing(level);
  }
  return kInf;
}

nlohmann::json CostFunction::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::Constant:
      j["kind"] = "constant";
      j["c"] = format_double(a_);
      break;
    case Kind::Affine:
      j["kind"] = "affine";
      j["a"] = format_double(a_);
      j["b"] = format_double(b_);
      break;
    case Kind::Monomial:
      j["kind"] = "monomial";
      j["a"] = format_double(a_);
      j["d"] = degree_;
      break;
    case Kind::Polynomial: {
      j["kind"] = "polynomial";
      nlohmann::json arr = nlohmann::json::array();
      for (double c : coeffs_) arr.push_back(format_double(c));
      j["coeffs"] = std::move(arr);
      break;
    }
    case Kind::Mm1:
      j["kind"] = "mm1";
      j["u"] = format_double(a_);
      break;
    case Kind::MaxConst:
      j["kind"] = "max";
      j["floor"] = format_double(floor_);
      j["inner"] = inner_->to_json();
      break;
  }
  return j;
}

CostFunction CostFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParseFailure("cost: missing field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return constant(parse_decimal_field(j, "c"));
  if (kind == "affine")
    return affine(parse_decimal_field(j, "a"), parse_decimal_field(j, "b"));
  if (kind == "monomial") {
    if (!j.contains("d") || !j.at("d").is_number_integer())
      throw ParseFailure("cost: field 'd' must be an integer");
    return monomial(parse_decimal_field(j, "a"), j.at("d").get<int>());
  }
  if (kind == "polynomial") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array())
      throw ParseFailure("cost: field 'coeffs' must be an array");
    std::vector<double> coeffs;
    for (const auto& c : j.at("coeffs"))
      coeffs.push_back(c.is_string() ? parse_double(c.get<std::string>())
                                     : c.get<double>());
    return polynomial(std::move(coeffs));
  }
  if (kind == "mm1") return mm1(parse_decimal_field(j, "u"));
  if (kind == "max") {
    if (!j.contains("inner"))
      throw ParseFailure("cost: field 'inner' required for kind 'max'");
    return from_json(j.at("inner")).max_with(parse_decimal_field(j, "floor"));
  }
  throw ParseFailure("cost: unknown kind '" + kind + "'");
}

}  // namespace auglab::routing
