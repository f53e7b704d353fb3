#include "daff/exact/base_map.hpp"

#include "daff/error.hpp"

namespace daff::exact {

BaseMap::BaseMap(Mat p, Vec q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_.rows() != p_.cols() || p_.rows() != q_.size())
    throw DimMismatch("base map shape");
  if (p_.rows() && sgn(det(p_)) == 0) throw SingularMatrix("base map linear part");
}

BaseMap BaseMap::identity(std::size_t m) { return BaseMap(Mat::identity(m), Vec(m)); }

Vec BaseMap::apply(const Vec& x) const { return p_ * x + q_; }

BaseMap BaseMap::inverse() const {
  Mat pi = mat_inverse(p_);
  return BaseMap(pi, -(pi * q_));
}

BaseMap BaseMap::then(const BaseMap& next) const {
  return BaseMap(next.p_ * p_, next.p_ * q_ + next.q_);
}

std::vector<Poly> BaseMap::as_polys() const {
  const std::size_t m = dim();
  std::vector<Poly> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Poly f = Poly::constant(m, q_[k]);
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(p_(k, j)) != 0) f += p_(k, j) * Poly::variable(m, j);
    out.push_back(std::move(f));
  }
  return out;
}

Poly BaseMap::pullback(const Poly& f) const {
  if (dim() == 0) return f;
  return poly_compose(f, as_polys());
}

}  // namespace daff::exact
