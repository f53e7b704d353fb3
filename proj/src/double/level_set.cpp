#include "daff/double/level_set.hpp"

#include <sstream>

#include "daff/error.hpp"
#include "daff/exact/poly.hpp"

namespace daff::dbl {

namespace {

// A c-free row a + b.y + e.z + y^T G z = 0.
struct SideRow {
  Scalar a;
  Vec b, e;
  Mat g;

  Scalar eval(const Vec& y, const Vec& z) const {
    return a + exact::dot(b, y) + exact::dot(e, z) + exact::dot(y, g * z);
  }
};

class SideSystem {
 public:
  SideSystem(const DecomposedDouble& d, std::vector<SideRow> rows) : d_(d), rows_(std::move(rows)) {}

  bool contains(const Vec& y, const Vec& z) const {
    for (const auto& r : rows_)
      if (sgn(r.eval(y, z)) != 0) return false;
    return true;
  }

  // Some z with (y, z) in the system.
  std::optional<Vec> fiber_over_y(const Vec& y) const {
    Mat m(rows_.size(), d_.n2);
    Vec rhs(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Vec coef = rows_[k].e + y * rows_[k].g;
      for (std::size_t j = 0; j < d_.n2; ++j) m(k, j) = coef[j];
      rhs[k] = -(rows_[k].a + exact::dot(rows_[k].b, y));
    }
    return exact::solve(m, rhs);
  }

  std::optional<Vec> fiber_over_z(const Vec& z) const {
    Mat m(rows_.size(), d_.n1);
    Vec rhs(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Vec coef = rows_[k].b + rows_[k].g * z;
      for (std::size_t j = 0; j < d_.n1; ++j) m(k, j) = coef[j];
      rhs[k] = -(rows_[k].a + exact::dot(rows_[k].e, z));
    }
    return exact::solve(m, rhs);
  }

  const std::vector<SideRow>& rows() const { return rows_; }
  const DecomposedDouble& d() const { return d_; }

 private:
  DecomposedDouble d_;
  std::vector<SideRow> rows_;
};

Vec deterministic_vec(std::size_t n, std::size_t seed) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<long>((seed * 7 + i * 3) % 5) - 2;
  return v;
}

Classification subbundle(std::string reason) {
  return {Verdict::Subbundle, std::move(reason), std::nullopt, std::nullopt};
}

// Affine case: the c-free rows cut an affine subspace P of V1 x V2.
Classification classify_affine(const SideSystem& sys) {
  const auto& d = sys.d();
  const std::size_t n = d.n1 + d.n2;
  Mat m(sys.rows().size(), n);
  Vec rhs(sys.rows().size());
  for (std::size_t k = 0; k < sys.rows().size(); ++k) {
    const auto& r = sys.rows()[k];
    for (std::size_t j = 0; j < d.n1; ++j) m(k, j) = r.b[j];
    for (std::size_t j = 0; j < d.n2; ++j) m(k, d.n1 + j) = r.e[j];
    rhs[k] = -r.a;
  }
  auto p0 = exact::solve(m, rhs);
  if (!p0) return {Verdict::NotSubbundle, "level set is empty", std::nullopt, std::nullopt};
  Mat k = exact::nullspace(m);
  Mat k1 = k.block(0, 0, d.n1, k.cols());
  Mat k2 = k.block(d.n1, 0, d.n2, k.cols());
  if (exact::rank(k1) + exact::rank(k2) == k.cols())
    return subbundle("projection onto V1 x V2 is a product of affine subspaces");
  Vec y0 = p0->slice(0, d.n1), z0 = p0->slice(d.n1, d.n2);
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Vec y = y0 + k1.col(j);
    if (!sys.contains(y, z0))
      return {Verdict::NotSubbundle, "point of pi1(A) x pi2(A) with empty preimage", y, z0};
    Vec z = z0 + k2.col(j);
    if (!sys.contains(y0, z))
      return {Verdict::NotSubbundle, "point of pi1(A) x pi2(A) with empty preimage", y0, z};
  }
  throw InvariantViolation("non-product affine projection without witness");
}

// Some point of the projection missing from it while y0 +- v are present.
std::optional<Classification> closure_witness_y(const SideSystem& sys,
                                                const std::vector<Vec>& candidates) {
  const std::size_t n1 = sys.d().n1;
  for (const Vec& y0 : candidates) {
    if (sys.fiber_over_y(y0)) continue;
    for (std::size_t s = 0; s < n1 + 4; ++s) {
      Vec dir = s < n1 ? Vec::unit(n1, s) : deterministic_vec(n1, s);
      if (dir.is_zero()) continue;
      for (long scale : {1, 2, 3}) {
        Vec step = exact::Scalar(scale) * dir;
        if (sys.fiber_over_y(y0 + step) && sys.fiber_over_y(y0 - step)) {
          Classification c{Verdict::NotSubbundle,
                           "pi1(A) is not affine: midpoint of two of its points is missing", y0,
                           std::nullopt};
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Classification> closure_witness_z(const SideSystem& sys,
                                                const std::vector<Vec>& candidates) {
  const std::size_t n2 = sys.d().n2;
  for (const Vec& z0 : candidates) {
    if (sys.fiber_over_z(z0)) continue;
    for (std::size_t s = 0; s < n2 + 4; ++s) {
      Vec dir = s < n2 ? Vec::unit(n2, s) : deterministic_vec(n2, s);
      if (dir.is_zero()) continue;
      for (long scale : {1, 2, 3}) {
        Vec step = exact::Scalar(scale) * dir;
        if (sys.fiber_over_z(z0 + step) && sys.fiber_over_z(z0 - step)) {
          Classification c{Verdict::NotSubbundle,
                           "pi2(A) is not affine: midpoint of two of its points is missing",
                           std::nullopt, z0};
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

// Rows with bilinear part: parametrize the affine rows, substitute, and if
// the remaining rows vanish identically reduce to the affine case.
Classification classify_bilinear(const SideSystem& sys) {
  const auto& d = sys.d();
  std::vector<SideRow> affine_rows, bilinear_rows;
  for (const auto& r : sys.rows()) (r.g.is_zero() ? affine_rows : bilinear_rows).push_back(r);

  const std::size_t n = d.n1 + d.n2;
  Mat m(affine_rows.size(), n);
  Vec rhs(affine_rows.size());
  for (std::size_t k = 0; k < affine_rows.size(); ++k) {
    for (std::size_t j = 0; j < d.n1; ++j) m(k, j) = affine_rows[k].b[j];
    for (std::size_t j = 0; j < d.n2; ++j) m(k, d.n1 + j) = affine_rows[k].e[j];
    rhs[k] = -affine_rows[k].a;
  }
  auto q0 = exact::solve(m, rhs);
  if (!q0) return {Verdict::NotSubbundle, "level set is empty", std::nullopt, std::nullopt};
  Mat kern = exact::nullspace(m);
  const std::size_t t = kern.cols();
  // y, z as affine polynomials in the parameters.
  std::vector<exact::Poly> coords;
  for (std::size_t i = 0; i < n; ++i) {
    exact::Poly p = exact::Poly::constant(t, (*q0)[i]);
    for (std::size_t j = 0; j < t; ++j)
      if (sgn(kern(i, j)) != 0) p += kern(i, j) * exact::Poly::variable(t, j);
    coords.push_back(std::move(p));
  }
  bool residue = false;
  for (const auto& r : bilinear_rows) {
    exact::Poly h = exact::Poly::constant(t, r.a);
    for (std::size_t i = 0; i < d.n1; ++i) {
      if (sgn(r.b[i]) != 0) h += r.b[i] * coords[i];
      for (std::size_t b = 0; b < d.n2; ++b)
        if (sgn(r.g(i, b)) != 0) h += r.g(i, b) * (coords[i] * coords[d.n1 + b]);
    }
    for (std::size_t b = 0; b < d.n2; ++b)
      if (sgn(r.e[b]) != 0) h += r.e[b] * coords[d.n1 + b];
    if (!h.is_zero()) residue = true;
  }
  if (!residue) return classify_affine(SideSystem(d, affine_rows));

  // Candidates where some row loses its dependence on the other side.
  std::vector<Vec> ys{Vec(d.n1)}, zs{Vec(d.n2)};
  for (const auto& r : bilinear_rows) {
    if (auto y = exact::solve(r.g.transpose(), -r.e)) ys.push_back(*y);
    if (auto z = exact::solve(r.g, -r.b)) zs.push_back(*z);
  }
  for (std::size_t s = 0; s < 4; ++s) {
    ys.push_back(deterministic_vec(d.n1, s + 11));
    zs.push_back(deterministic_vec(d.n2, s + 13));
  }
  if (auto w = closure_witness_y(sys, ys)) return *w;
  if (auto w = closure_witness_z(sys, zs)) return *w;

  // Rectangle test on sample points of the projection.
  std::vector<std::pair<Vec, Vec>> samples;
  for (const Vec& y : ys)
    if (auto z = sys.fiber_over_y(y)) samples.emplace_back(y, *z);
  for (const Vec& z : zs)
    if (auto y = sys.fiber_over_z(z)) samples.emplace_back(*y, z);
  for (const auto& [ya, za] : samples)
    for (const auto& [yb, zb] : samples)
      if (!sys.contains(ya, zb))
        return {Verdict::NotSubbundle, "point of pi1(A) x pi2(A) with empty preimage", ya, zb};

  return {Verdict::Undecided, "bilinear constraints without a witness found", std::nullopt,
          std::nullopt};
}

void validate_row(const DecomposedDouble& d, const LevelRow& r) {
  if (r.gy.size() != d.n1 || r.gz.size() != d.n2 || r.sigma.size() != d.n3 ||
      r.gyz.rows() != d.n1 || r.gyz.cols() != d.n2)
    throw MalformedConstraint("row coefficients do not match the double space dimensions");
  if (r.gy.is_zero() && r.gz.is_zero() && r.gyz.is_zero() && r.sigma.is_zero())
    throw MalformedConstraint("row does not depend on any coordinate");
}

}  // namespace

Scalar LevelRow::eval(const DoublePoint& p) const {
  return g00 + exact::dot(gy, p.y()) + exact::dot(gz, p.z()) + exact::dot(p.y(), gyz * p.z()) +
         exact::dot(sigma, p.c()) - value;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Subbundle: return "Subbundle";
    case Verdict::NotSubbundle: return "NotSubbundle";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

Classification classify_level_set(const DecomposedDouble& d, const std::vector<LevelRow>& rows) {
  if (rows.empty()) throw MalformedConstraint("no constraint rows");
  for (const auto& r : rows) validate_row(d, r);

  std::vector<Vec> sigma_rows;
  for (const auto& r : rows) sigma_rows.push_back(r.sigma);
  Mat s = Mat::from_rows(sigma_rows, d.n3);
  // Row combinations w with w^T S = 0 eliminate the core coordinates.
  Mat left_null = exact::nullspace(s.transpose());
  if (left_null.cols() == 0)
    return subbundle("core block has full row rank; the level set surjects onto V1 x V2");

  std::vector<SideRow> side;
  for (std::size_t k = 0; k < left_null.cols(); ++k) {
    SideRow sr{0, Vec(d.n1), Vec(d.n2), Mat(d.n1, d.n2)};
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar& w = left_null(r, k);
      if (sgn(w) == 0) continue;
      sr.a += w * (rows[r].g00 - rows[r].value);
      sr.b += w * rows[r].gy;
      sr.e += w * rows[r].gz;
      sr.g += w * rows[r].gyz;
    }
    side.push_back(std::move(sr));
  }
  SideSystem sys(d, std::move(side));
  for (const auto& r : sys.rows())
    if (!r.g.is_zero()) return classify_bilinear(sys);
  return classify_affine(sys);
}

}  // namespace daff::dbl
