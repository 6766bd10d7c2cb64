#include "hopfalg/scalar.hpp"

#include <cctype>

namespace hopfalg {

void FieldContext::set_sqrt_d(int d) {
  if (d < 0 || d == 1) throw Error("InvalidField", "sqrt context must be 0 or d > 1");
  for (int f = 2; f * f <= d; ++f)
    if (d % (f * f) == 0) throw Error("InvalidField", "d must be square-free");
  d_ = d;
}

namespace {
void require_context(const mpq_class& q) {
  if (sgn(q) != 0 && FieldContext::sqrt_d() == 0)
    throw Error("MixedFieldContext", "irrational value used in a rational context");
}
}  // namespace

Scalar::Scalar(const mpq_class& p, const mpq_class& q) : p_(p), q_(q) {
  p_.canonicalize();
  q_.canonicalize();
  require_context(q_);
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error("DivisionByZero", "zero denominator");
  mpq_class v(num, den);
  v.canonicalize();
  return Scalar(v);
}

Scalar Scalar::sqrt() {
  if (FieldContext::sqrt_d() == 0) throw Error("MixedFieldContext", "no quadratic extension selected");
  return Scalar(mpq_class(0), mpq_class(1));
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.p_ = -p_;
  r.q_ = -q_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  p_ += o.p_;
  if (sgn(o.q_) != 0 || sgn(q_) != 0) q_ += o.q_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  p_ -= o.p_;
  if (sgn(o.q_) != 0 || sgn(q_) != 0) q_ -= o.q_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(q_) == 0 && sgn(o.q_) == 0) {
    p_ *= o.p_;
    return *this;
  }
  require_context(q_);
  require_context(o.q_);
  const mpq_class d(FieldContext::sqrt_d());
  mpq_class np = p_ * o.p_ + d * q_ * o.q_;
  mpq_class nq = p_ * o.q_ + q_ * o.p_;
  p_ = np;
  q_ = nq;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  if (sgn(q_) == 0) return Scalar(mpq_class(1) / p_);
  const mpq_class d(FieldContext::sqrt_d());
  mpq_class norm = p_ * p_ - d * q_ * q_;
  return Scalar(mpq_class(p_ / norm), mpq_class(-q_ / norm));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error("DivisionByZero", "division by zero");
  if (sgn(o.q_) == 0) {
    p_ /= o.p_;
    if (sgn(q_) != 0) q_ /= o.p_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::str() const {
  if (sgn(q_) == 0) return p_.get_str();
  std::string s;
  if (sgn(p_) != 0) s = p_.get_str();
  if (sgn(q_) > 0 && !s.empty()) s += "+";
  s += q_.get_str() + "*s" + std::to_string(FieldContext::sqrt_d());
  return s;
}

namespace {
mpq_class parse_rational(const std::string& t) {
  if (t.empty()) return mpq_class(1);
  mpq_class v;
  if (v.set_str(t, 10) != 0) throw Error("ParseError", "bad rational '" + t + "'");
  if (sgn(v.get_den()) == 0) throw Error("DivisionByZero", "zero denominator in '" + t + "'");
  v.canonicalize();
  return v;
}
}  // namespace

Scalar Scalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("ParseError", "empty scalar");
  mpq_class p(0), q(0);
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw Error("ParseError", "dangling sign in '" + text + "'");
    size_t spos = term.find('s');
    if (spos == std::string::npos) {
      p += sign * parse_rational(term);
    } else {
      std::string coef = term.substr(0, spos);
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      q += sign * parse_rational(coef);
    }
    i = j;
  }
  return Scalar(p, q);
}

}  // namespace hopfalg
