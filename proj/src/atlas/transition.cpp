#include "daff/atlas/transition.hpp"

#include <sstream>

#include "daff/error.hpp"

namespace daff::atlas {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimMismatch(what);
}

std::string idx(std::initializer_list<std::size_t> is) {
  std::ostringstream os;
  for (auto i : is) os << '[' << i << ']';
  return os.str();
}

std::vector<std::string> base_names(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back(exact::default_var_name(i));
  return names;
}

}  // namespace

TransitionData TransitionData::identity(std::size_t m, const FiberDims& d) {
  return linear(BaseMap::identity(m), PolyMat::identity(d.n1, m), PolyMat::identity(d.n2, m),
                PolyMat::identity(d.n3, m));
}

TransitionData TransitionData::linear(BaseMap base, PolyMat alpha, PolyMat beta, PolyMat sigma) {
  const std::size_t m = base.dim();
  const std::size_t n1 = alpha.rows(), n2 = beta.rows(), n3 = sigma.rows();
  TransitionData t{std::move(base),
                   PolyVec(n1, m),
                   std::move(alpha),
                   PolyVec(n2, m),
                   std::move(beta),
                   PolyVec(n3, m),
                   PolyMat(n3, n1, m),
                   PolyMat(n3, n2, m),
                   PolyBilinear(n3, n1, n2, m),
                   std::move(sigma)};
  t.validate();
  return t;
}

void TransitionData::validate() const {
  const std::size_t m = base.dim();
  const auto [n1, n2, n3] = dims();
  require(alpha.cols() == n1 && alpha0.size() == n1, "alpha shape");
  require(beta.cols() == n2 && beta0.size() == n2, "beta shape");
  require(sigma.cols() == n3 && gamma00.size() == n3, "sigma shape");
  require(gamma_y.rows() == n3 && gamma_y.cols() == n1, "gamma_y shape");
  require(gamma_z.rows() == n3 && gamma_z.cols() == n2, "gamma_z shape");
  require(gamma_yz.n3() == n3 && gamma_yz.n1() == n1 && gamma_yz.n2() == n2, "gamma_yz shape");
  for_each_coefficient(*this, [&](const std::string& name, const Poly& p) {
    if (p.nvars() != m) throw DimMismatch(name + " is not a polynomial in the base coordinates");
  });
}

dbl::DoubleMorphism TransitionData::at(const Vec& x) const {
  const auto [n1, n2, n3] = dims();
  dbl::DecomposedDouble d{n1, n2, n3};
  dbl::DoubleMorphism f{d,
                        d,
                        alpha.eval(x),
                        beta.eval(x),
                        sigma.eval(x),
                        gamma_yz.eval(x),
                        alpha0.eval(x),
                        beta0.eval(x),
                        gamma00.eval(x),
                        gamma_y.eval(x),
                        gamma_z.eval(x)};
  return f;
}

TransitionData TransitionData::pulled_back(const BaseMap& b) const {
  const auto s = b.as_polys();
  TransitionData r = *this;
  const std::size_t m = b.dim();
  auto vec = [&](const PolyVec& v) {
    PolyVec out(v.size(), m);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = exact::poly_compose(v[i], s);
    return out;
  };
  auto mat = [&](const PolyMat& a) {
    PolyMat out(a.rows(), a.cols(), m);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = exact::poly_compose(a(i, j), s);
    return out;
  };
  r.alpha0 = vec(alpha0);
  r.beta0 = vec(beta0);
  r.gamma00 = vec(gamma00);
  r.alpha = mat(alpha);
  r.beta = mat(beta);
  r.sigma = mat(sigma);
  r.gamma_y = mat(gamma_y);
  r.gamma_z = mat(gamma_z);
  PolyBilinear g(gamma_yz.n3(), gamma_yz.n1(), gamma_yz.n2(), m);
  for (std::size_t u = 0; u < g.n3(); ++u)
    for (std::size_t i = 0; i < g.n1(); ++i)
      for (std::size_t k = 0; k < g.n2(); ++k) g(u, i, k) = exact::poly_compose(gamma_yz(u, i, k), s);
  r.gamma_yz = std::move(g);
  return r;
}

void for_each_coefficient(const TransitionData& t, const CoefficientVisitor& visit) {
  auto vec = [&](const char* name, const PolyVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) visit(name + idx({i}), v[i]);
  };
  auto mat = [&](const char* name, const PolyMat& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) visit(name + idx({i, j}), a(i, j));
  };
  vec("alpha0", t.alpha0);
  mat("alpha", t.alpha);
  vec("beta0", t.beta0);
  mat("beta", t.beta);
  vec("gamma00", t.gamma00);
  mat("gamma_y", t.gamma_y);
  mat("gamma_z", t.gamma_z);
  for (std::size_t u = 0; u < t.gamma_yz.n3(); ++u)
    for (std::size_t i = 0; i < t.gamma_yz.n1(); ++i)
      for (std::size_t b = 0; b < t.gamma_yz.n2(); ++b)
        visit("gamma_yz" + idx({u, i, b}), t.gamma_yz(u, i, b));
  mat("sigma", t.sigma);
}

std::optional<Difference> first_difference(const TransitionData& expected,
                                           const TransitionData& actual) {
  if (expected.dims() != actual.dims() || expected.base_dim() != actual.base_dim())
    return Difference{"dims", "", ""};
  const std::size_t m = expected.base_dim();
  auto names = base_names(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (expected.base.p()(i, j) != actual.base.p()(i, j))
        return Difference{"base.P" + idx({i, j}), exact::to_string(expected.base.p()(i, j)),
                          exact::to_string(actual.base.p()(i, j))};
    if (expected.base.q()[i] != actual.base.q()[i])
      return Difference{"base.q" + idx({i}), exact::to_string(expected.base.q()[i]),
                        exact::to_string(actual.base.q()[i])};
  }
  std::vector<std::pair<std::string, Poly>> lhs;
  for_each_coefficient(expected, [&](const std::string& n, const Poly& p) { lhs.emplace_back(n, p); });
  std::size_t k = 0;
  std::optional<Difference> found;
  for_each_coefficient(actual, [&](const std::string& n, const Poly& p) {
    if (!found && !(lhs[k].second == p))
      found = Difference{n, exact::to_string(lhs[k].second, names), exact::to_string(p, names)};
    ++k;
  });
  return found;
}

TransitionData compose(const TransitionData& f, const TransitionData& g_raw) {
  require(f.dims() == g_raw.dims() && f.base_dim() == g_raw.base_dim(), "composable transitions");
  // The second transition's coefficients live on the middle chart.
  const TransitionData g = g_raw.pulled_back(f.base);
  TransitionData r = f;
  r.base = f.base.then(g.base);
  r.alpha = g.alpha * f.alpha;
  r.alpha0 = g.alpha0 + g.alpha * f.alpha0;
  r.beta = g.beta * f.beta;
  r.beta0 = g.beta0 + g.beta * f.beta0;
  const PolyMat g_right = g.gamma_yz.fix_right(f.beta0);  // Gamma(., beta0)
  const PolyMat g_left = g.gamma_yz.fix_left(f.alpha0);   // Gamma(alpha0, .)
  r.gamma00 = g.gamma00 + g.gamma_y * f.alpha0 + g.gamma_z * f.beta0 + g_left * f.beta0 +
              g.sigma * f.gamma00;
  r.gamma_y = (g.gamma_y + g_right) * f.alpha + g.sigma * f.gamma_y;
  r.gamma_z = (g.gamma_z + g_left) * f.beta + g.sigma * f.gamma_z;
  r.gamma_yz = g.gamma_yz.pull(f.alpha, f.beta) + g.sigma * f.gamma_yz;
  r.sigma = g.sigma * f.sigma;
  return r;
}

TransitionData inverse(const TransitionData& t) {
  const PolyMat a = exact::poly_inverse(t.alpha);
  const PolyMat b = exact::poly_inverse(t.beta);
  const PolyMat s = exact::poly_inverse(t.sigma);
  TransitionData r = t;
  r.alpha = a;
  r.alpha0 = -(a * t.alpha0);
  r.beta = b;
  r.beta0 = -(b * t.beta0);
  const PolyMat g_right = t.gamma_yz.fix_right(r.beta0);
  const PolyMat g_left = t.gamma_yz.fix_left(r.alpha0);
  r.sigma = s;
  r.gamma_yz = -(s * t.gamma_yz.pull(a, b));
  r.gamma_y = -(s * ((t.gamma_y + g_right) * a));
  r.gamma_z = -(s * ((t.gamma_z + g_left) * b));
  r.gamma00 = -(s * (t.gamma00 + t.gamma_y * r.alpha0 + t.gamma_z * r.beta0 + g_left * r.beta0));
  // Coefficients above are functions of the old base point; express them on
  // the target chart.
  const BaseMap back = t.base.inverse();
  r = r.pulled_back(back);
  r.base = back;
  return r;
}

TransitionData induce_v1(const TransitionData& t) {
  TransitionData r = t;
  const std::size_t m = t.base_dim();
  const auto [n1, n2, n3] = t.dims();
  r.beta0 = PolyVec(n2, m);
  r.gamma00 = PolyVec(n3, m);
  r.gamma_y = PolyMat(n3, n1, m);
  return r;
}

TransitionData induce_v2(const TransitionData& t) {
  TransitionData r = t;
  const std::size_t m = t.base_dim();
  const auto [n1, n2, n3] = t.dims();
  r.alpha0 = PolyVec(n1, m);
  r.gamma00 = PolyVec(n3, m);
  r.gamma_z = PolyMat(n3, n2, m);
  return r;
}

TransitionData induce_model(const TransitionData& t) { return induce_v2(induce_v1(t)); }

TransitionData induce_hull(const TransitionData& t) {
  const std::size_t m = t.base_dim();
  const auto [n1, n2, n3] = t.dims();
  TransitionData r = TransitionData::identity(m, {n1 + 1, n2 + 1, n3});
  r.base = t.base;
  for (std::size_t i = 0; i < n1; ++i) {
    r.alpha(i + 1, 0) = t.alpha0[i];
    for (std::size_t j = 0; j < n1; ++j) r.alpha(i + 1, j + 1) = t.alpha(i, j);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    r.beta(i + 1, 0) = t.beta0[i];
    for (std::size_t j = 0; j < n2; ++j) r.beta(i + 1, j + 1) = t.beta(i, j);
  }
  for (std::size_t u = 0; u < n3; ++u) {
    r.gamma_yz(u, 0, 0) = t.gamma00[u];
    for (std::size_t i = 0; i < n1; ++i) r.gamma_yz(u, i + 1, 0) = t.gamma_y(u, i);
    for (std::size_t b = 0; b < n2; ++b) r.gamma_yz(u, 0, b + 1) = t.gamma_z(u, b);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t b = 0; b < n2; ++b) r.gamma_yz(u, i + 1, b + 1) = t.gamma_yz(u, i, b);
  }
  r.sigma = t.sigma;
  return r;
}

TransitionData restrict_hull(const TransitionData& h, const Scalar& s, const Scalar& tv) {
  const std::size_t m = h.base_dim();
  const auto [h1, h2, n3] = h.dims();
  require(h1 >= 1 && h2 >= 1, "hull transition needs the t and s coordinates");
  const std::size_t n1 = h1 - 1, n2 = h2 - 1;
  auto is_unit_row = [](const PolyMat& a, const PolyVec& a0) {
    if (!a0[0].is_zero()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Poly& p = a(0, j);
      if (j == 0 ? !(p.is_constant() && p.constant_term() == 1) : !p.is_zero()) return false;
    }
    return true;
  };
  if (!is_unit_row(h.alpha, h.alpha0) || !is_unit_row(h.beta, h.beta0))
    throw ConstraintViolated("hull transition does not fix t and s");
  // Evaluate the affine hull map on the slice t = tv, s = s: every term that
  // involves y^0 or z^0 becomes a lower-order coefficient.
  TransitionData r = TransitionData::identity(m, {n1, n2, n3});
  r.base = h.base;
  for (std::size_t i = 0; i < n1; ++i) {
    r.alpha0[i] = h.alpha0[i + 1] + tv * h.alpha(i + 1, 0);
    for (std::size_t j = 0; j < n1; ++j) r.alpha(i, j) = h.alpha(i + 1, j + 1);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    r.beta0[i] = h.beta0[i + 1] + s * h.beta(i + 1, 0);
    for (std::size_t j = 0; j < n2; ++j) r.beta(i, j) = h.beta(i + 1, j + 1);
  }
  const Scalar st = s * tv;
  for (std::size_t u = 0; u < n3; ++u) {
    r.gamma00[u] = h.gamma00[u] + tv * h.gamma_y(u, 0) + s * h.gamma_z(u, 0) + st * h.gamma_yz(u, 0, 0);
    for (std::size_t i = 0; i < n1; ++i)
      r.gamma_y(u, i) = h.gamma_y(u, i + 1) + s * h.gamma_yz(u, i + 1, 0);
    for (std::size_t b = 0; b < n2; ++b)
      r.gamma_z(u, b) = h.gamma_z(u, b + 1) + tv * h.gamma_yz(u, 0, b + 1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t b = 0; b < n2; ++b) r.gamma_yz(u, i, b) = h.gamma_yz(u, i + 1, b + 1);
  }
  r.sigma = h.sigma;
  return r;
}

}  // namespace daff::atlas
