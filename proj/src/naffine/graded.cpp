#include "daff/naffine/graded.hpp"

#include <sstream>

#include "daff/error.hpp"

namespace daff::naffine {

std::string degree_string(Degree d, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t k = 0; k < n; ++k)
    if (d & unit_degree(k)) s[k] = '1';
  return s;
}

Degree parse_degree(const std::string& bits) {
  if (bits.empty() || bits.size() > 16) throw MalformedConstraint("bad degree '" + bits + "'");
  Degree d = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') d |= unit_degree(k);
    else if (bits[k] != '0') throw MalformedConstraint("bad degree '" + bits + "'");
  }
  return d;
}

GradedSpace::GradedSpace(std::size_t n, std::map<Degree, std::size_t> dims) : n_(n) {
  if (n == 0 || n > 16) throw DimMismatch("graded space order must be in 1..16");
  for (const auto& [d, k] : dims) {
    if (d == 0 || d > full_degree(n))
      throw DimMismatch("degree " + std::to_string(d) + " outside {0,1}^n minus 0");
    if (k == 0) continue;
    dims_[d] = k;
    total_ += k;
  }
}

std::size_t GradedSpace::dim(Degree d) const {
  auto it = dims_.find(d);
  return it == dims_.end() ? 0 : it->second;
}

std::size_t GradedSpace::offset(Degree d) const {
  std::size_t off = 0;
  for (const auto& [e, k] : dims_) {
    if (e >= d) break;
    off += k;
  }
  return off;
}

Degree GradedSpace::degree_of(std::size_t coord) const {
  for (const auto& [d, k] : dims_) {
    if (coord < k) return d;
    coord -= k;
  }
  throw DimMismatch("coordinate index out of range");
}

Vec GradedSpace::component(const Vec& x, Degree d) const {
  if (x.size() != total_) throw DimMismatch("vector does not match graded space");
  return x.slice(offset(d), dim(d));
}

Vec GradedSpace::embed(Degree d, const Vec& part) const {
  if (part.size() != dim(d)) throw DimMismatch("component size mismatch");
  Vec out(total_);
  const std::size_t off = offset(d);
  for (std::size_t i = 0; i < part.size(); ++i) out[off + i] = part[i];
  return out;
}

namespace {

Degree var_degree(const GradedSpace& e, std::size_t m, std::size_t v) {
  return v < m ? 0 : e.degree_of(v - m);
}

std::string monomial_string(const exact::Monomial& mono) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < mono.size(); ++v) {
    if (mono[v] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << exact::default_var_name(v);
    if (mono[v] > 1) os << '^' << mono[v];
  }
  if (first) os << '1';
  return os.str();
}

void check_shape(const GradedSpace& e, const FilteredMap& f) {
  if (f.f.size() != f.m + e.total()) throw DimMismatch("filtered map has the wrong number of rows");
  for (const Poly& p : f.f)
    if (p.nvars() != f.m + e.total()) throw DimMismatch("filtered map row in the wrong variables");
}

}  // namespace

FiltrationReport filtration_check(const GradedSpace& e, const FilteredMap& f) {
  check_shape(e, f);
  const std::size_t n = e.n();
  for (std::size_t r = 0; r < f.f.size(); ++r) {
    const Degree mu = var_degree(e, f.m, r);
    for (const auto& [mono, c] : f.f[r].terms()) {
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        unsigned count = 0;
        for (std::size_t v = 0; v < mono.size(); ++v)
          if (var_degree(e, f.m, v) & unit_degree(k)) count += mono[v];
        ok = count <= ((mu & unit_degree(k)) ? 1u : 0u);
      }
      if (!ok) return {false, r, monomial_string(mono)};
    }
  }
  return {};
}

FilteredMap compose(const FilteredMap& first, const FilteredMap& second) {
  if (first.m != second.m || first.f.size() != second.f.size())
    throw DimMismatch("filtered maps on different spaces");
  FilteredMap out{first.m, {}};
  out.f.reserve(second.f.size());
  for (const Poly& p : second.f) out.f.push_back(exact::poly_compose(p, first.f));
  return out;
}

exact::PolyMat linear_block(const GradedSpace& e, const FilteredMap& f, Degree d) {
  check_shape(e, f);
  const std::size_t k = e.dim(d), off = e.offset(d), m = f.m;
  exact::PolyMat block(k, k, m);
  for (std::size_t a = 0; a < k; ++a) {
    for (const auto& [mono, c] : f.f[m + off + a].terms()) {
      std::size_t hit = mono.size(), count = 0;
      for (std::size_t v = m; v < mono.size(); ++v) {
        count += mono[v];
        if (mono[v] != 0) hit = v;
      }
      if (count != 1 || e.degree_of(hit - m) != d) continue;
      exact::Monomial base(mono.begin(), mono.begin() + static_cast<long>(m));
      block(a, hit - m - off) += Poly::monomial(base, c);
    }
  }
  return block;
}

bool linear_blocks_invertible(const GradedSpace& e, const FilteredMap& f, const Vec& x) {
  for (const auto& [d, k] : e.dims())
    if (sgn(exact::det(linear_block(e, f, d).eval(x))) == 0) return false;
  return true;
}

GradedSpace graded_for(const atlas::FiberDims& d) {
  return GradedSpace(2, {{1, d.n2}, {2, d.n1}, {3, d.n3}});
}

FilteredMap as_filtered_map(const atlas::TransitionData& t) {
  t.validate();
  const atlas::FiberDims d = t.dims();
  const std::size_t m = t.base_dim(), nv = m + d.n1 + d.n2 + d.n3;
  const std::size_t z0 = m, y0 = m + d.n2, c0 = m + d.n2 + d.n1;
  auto var = [&](std::size_t v) { return Poly::variable(nv, v); };
  auto lift = [&](const Poly& p) { return p.extend(nv); };

  FilteredMap out{m, std::vector<Poly>(nv, Poly(nv))};
  const std::vector<Poly> base = t.base.as_polys();
  for (std::size_t k = 0; k < m; ++k) out.f[k] = lift(base[k]);
  for (std::size_t b = 0; b < d.n2; ++b) {
    Poly row = lift(t.beta0[b]);
    for (std::size_t j = 0; j < d.n2; ++j) row += lift(t.beta(b, j)) * var(z0 + j);
    out.f[z0 + b] = row;
  }
  for (std::size_t i = 0; i < d.n1; ++i) {
    Poly row = lift(t.alpha0[i]);
    for (std::size_t j = 0; j < d.n1; ++j) row += lift(t.alpha(i, j)) * var(y0 + j);
    out.f[y0 + i] = row;
  }
  for (std::size_t u = 0; u < d.n3; ++u) {
    Poly row = lift(t.gamma00[u]);
    for (std::size_t i = 0; i < d.n1; ++i) row += lift(t.gamma_y(u, i)) * var(y0 + i);
    for (std::size_t b = 0; b < d.n2; ++b) row += lift(t.gamma_z(u, b)) * var(z0 + b);
    for (std::size_t i = 0; i < d.n1; ++i)
      for (std::size_t b = 0; b < d.n2; ++b)
        row += lift(t.gamma_yz(u, i, b)) * var(y0 + i) * var(z0 + b);
    for (std::size_t w = 0; w < d.n3; ++w) row += lift(t.sigma(u, w)) * var(c0 + w);
    out.f[c0 + u] = row;
  }
  return out;
}

Core core(const GradedSpace& e) {
  const Degree d = full_degree(e.n());
  return {d, e.dim(d), e.offset(d)};
}

Vec core_act(const GradedSpace& e, const Vec& c, const Vec& v) {
  return v + e.embed(full_degree(e.n()), c);
}

Vec side_projection(const GradedSpace& e, std::size_t k, const Vec& v) {
  if (k >= e.n()) throw DimMismatch("side index out of range");
  Vec out;
  for (const auto& [d, dim] : e.dims())
    if (!(d & unit_degree(k))) out = Vec::concat(out, e.component(v, d));
  return out;
}

NAffine::NAffine(GradedSpace e, std::vector<Vec> l, std::optional<Vec> sigma)
    : e_(std::move(e)), l_(std::move(l)), sigma_(std::move(sigma)) {
  if (l_.size() != e_.n()) throw DimMismatch("need one functional per degree direction");
  for (std::size_t k = 0; k < l_.size(); ++k) {
    if (l_[k].size() != e_.dim(unit_degree(k)))
      throw DimMismatch("l_" + std::to_string(k + 1) + " does not match its component");
    if (l_[k].is_zero()) throw ZeroFunctional("l_" + std::to_string(k + 1) + " is zero");
  }
  if (sigma_) {
    if (sigma_->size() != e_.dim(full_degree(e_.n())))
      throw DimMismatch("sigma does not match the core");
    if (sigma_->is_zero()) throw ZeroForm("core section is zero");
  }
}

bool NAffine::contains(const Vec& x) const {
  for (std::size_t k = 0; k < l_.size(); ++k)
    if (exact::dot(functional(k), x) != 1) return false;
  return true;
}

}  // namespace daff::naffine
