#pragma once

#include <vector>

#include "daff/exact/linalg.hpp"
#include "daff/exact/poly.hpp"

namespace daff::exact {

// x' = P x + q with P invertible.
class BaseMap {
 public:
  BaseMap(Mat p, Vec q);
  static BaseMap identity(std::size_t m);

  std::size_t dim() const { return p_.rows(); }
  const Mat& p() const { return p_; }
  const Vec& q() const { return q_; }

  Vec apply(const Vec& x) const;
  BaseMap inverse() const;
  // The map x -> next(this(x)).
  BaseMap then(const BaseMap& next) const;
  // Coordinates x'_k as polynomials in x.
  std::vector<Poly> as_polys() const;
  // f o this, i.e. f(Px + q).
  Poly pullback(const Poly& f) const;

  friend bool operator==(const BaseMap& a, const BaseMap& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  Mat p_;
  Vec q_;
};

}  // namespace daff::exact
