#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "daff/exact/linalg.hpp"
#include "daff/exact/scalar.hpp"

namespace daff::exact {

// Exponent vector, one entry per declared variable.
using Monomial = std::vector<unsigned>;

// Sparse multivariate polynomial over Scalar in variables x1..xm.
class Poly {
 public:
  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Scalar& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(const Monomial& e, const Scalar& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;

  Scalar eval(const Vec& point) const;
  // Same polynomial with variables appended so that nvars() == n.
  Poly extend(std::size_t n) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& s);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Scalar(-1); }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

  void add_term(const Monomial& e, const Scalar& c);

 private:
  std::size_t nvars_;
  std::map<Monomial, Scalar> terms_;
};

Poly pow(const Poly& p, unsigned k);

// Substitutes subst[v] for each variable v of f. Every variable that occurs
// in f needs an entry; the substitutes share one variable count.
Poly poly_compose(const Poly& f, const std::map<std::size_t, Poly>& subst);
Poly poly_compose(const Poly& f, const std::vector<Poly>& subst);

std::string to_string(const Poly& p, const std::vector<std::string>& names = {});
std::string default_var_name(std::size_t i);

}  // namespace daff::exact
