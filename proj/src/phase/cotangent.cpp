#include "daff/phase/cotangent.hpp"

#include "daff/error.hpp"

namespace daff::phase {

std::vector<std::size_t> NormalForm::inner() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < fiber(); ++i)
    if (i != alpha && i != v) r.push_back(i);
  return r;
}

void check_point(const NormalForm& e, const CotangentPoint& w) {
  if (w.x.size() != e.m || w.p.size() != e.m) throw DimMismatch("base coordinates of a covector");
  if (w.y.size() != e.fiber() || w.pi.size() != e.fiber())
    throw DimMismatch("fiber coordinates of a covector");
}

ReducedCovector::ReducedCovector(NormalForm e, unsigned mask, CotangentPoint w)
    : e_(e), mask_(mask), w_(std::move(w)) {
  check_point(e_, w_);
  if (mask_ & kChi1) w_.y[e_.v] = 0;
  if (mask_ & kChi2) w_.pi[e_.alpha] = 0;
}

CotangentPoint chi(const NormalForm& e, const Scalar& s, const Scalar& t, const CotangentPoint& w) {
  check_point(e, w);
  CotangentPoint r = w;
  r.y[e.v] += s;
  r.pi[e.alpha] += t;
  return r;
}

std::pair<Scalar, Scalar> lifts(const ReducedCovector& w) {
  return {w.rep().y[w.form().alpha], w.rep().pi[w.form().v]};
}

CotangentPoint homothety(int which, const Scalar& t, const CotangentPoint& w) {
  CotangentPoint r = w;
  r.p *= t;
  if (which == 1)
    r.pi *= t;
  else
    r.y *= t;
  return r;
}

CotangentPoint beta(const CotangentPoint& w) { return {w.x, w.pi, -w.p, w.y}; }

ReducedCovector beta(const ReducedCovector& w) {
  unsigned mask = ((w.mask() & kChi1) ? kChi2 : 0u) | ((w.mask() & kChi2) ? kChi1 : 0u);
  return {w.form().dual(), mask, beta(w.rep())};
}

bool is_adapted(const NormalForm& e, const Mat& a) {
  const std::size_t n = e.fiber();
  if (a.rows() != n || a.cols() != n) return false;
  if (a(e.v, e.v) != 1 || a(e.alpha, e.alpha) != 1) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (j != e.v && a(e.v, j) != 0) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (i != e.alpha && a(i, e.alpha) != 0) return false;
  return exact::det(a) != 0;
}

CotangentPoint change_basis(const Mat& a, const CotangentPoint& w) {
  return {w.x, exact::mat_inverse(a).transpose() * w.y, w.p, a * w.pi};
}

ReducedCovector change_basis(const Mat& a, const ReducedCovector& w) {
  if (!is_adapted(w.form(), a)) throw ConstraintViolated("basis change does not fix v_A and alpha_A");
  return {w.form(), w.mask(), change_basis(a, w.rep())};
}

}  // namespace daff::phase
