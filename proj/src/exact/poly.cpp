#include "daff/exact/poly.hpp"

#include <algorithm>
#include <sstream>

#include "daff/error.hpp"

namespace daff::exact {

namespace {

void require_vars(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) {
    std::ostringstream os;
    os << "polynomials in " << a.nvars() << " and " << b.nvars() << " variables";
    throw DimMismatch(os.str());
  }
}

unsigned degree_of(const Monomial& e) {
  unsigned d = 0;
  for (auto k : e) d += k;
  return d;
}

}  // namespace

Poly Poly::constant(std::size_t nvars, const Scalar& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DimMismatch("variable index out of range");
  Monomial e(nvars, 0);
  e[i] = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Monomial& e, const Scalar& c) {
  Poly p(e.size());
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Monomial& e, const Scalar& c) {
  if (e.size() != nvars_) throw DimMismatch("monomial arity");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Scalar Poly::constant_term() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Scalar(0) : it->second;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

Scalar Poly::eval(const Vec& point) const {
  if (point.size() != nvars_) throw DimMismatch("evaluation point arity");
  Scalar total = 0;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t v = 0; v < nvars_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) t *= point[v];
    total += t;
  }
  return total;
}

Poly Poly::extend(std::size_t n) const {
  if (n < nvars_) throw DimMismatch("cannot drop variables");
  Poly r(n);
  for (const auto& [e, c] : terms_) {
    Monomial f(e);
    f.resize(n, 0);
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_vars(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_vars(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_vars(a, b);
  Poly r(a.nvars());
  Monomial e(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly pow(const Poly& p, unsigned k) {
  Poly r = Poly::constant(p.nvars(), 1);
  Poly base = p;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

Poly poly_compose(const Poly& f, const std::map<std::size_t, Poly>& subst) {
  std::size_t target_vars = 0;
  bool have_target = false;
  for (const auto& [v, s] : subst) {
    if (have_target && s.nvars() != target_vars)
      throw DimMismatch("substitutes have different variable counts");
    target_vars = s.nvars();
    have_target = true;
  }
  // Cache of powers per variable.
  std::map<std::size_t, std::vector<Poly>> powers;
  auto power = [&](std::size_t v, unsigned k) -> const Poly& {
    auto it = subst.find(v);
    if (it == subst.end()) throw MissingSubstitute(default_var_name(v));
    auto& list = powers[v];
    if (list.empty()) list.push_back(Poly::constant(target_vars, 1));
    while (list.size() <= k) list.push_back(list.back() * it->second);
    return list[k];
  };
  Poly r(target_vars);
  for (const auto& [e, c] : f.terms()) {
    Poly t = Poly::constant(target_vars, c);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v]) t = t * power(v, e[v]);
    r += t;
  }
  return r;
}

Poly poly_compose(const Poly& f, const std::vector<Poly>& subst) {
  if (subst.size() < f.nvars()) {
    for (const auto& [e, c] : f.terms())
      for (std::size_t v = subst.size(); v < e.size(); ++v)
        if (e[v]) throw MissingSubstitute(default_var_name(v));
  }
  std::map<std::size_t, Poly> m;
  for (std::size_t v = 0; v < subst.size(); ++v) m.emplace(v, subst[v]);
  if (m.empty()) {
    if (!f.is_constant()) throw MissingSubstitute("no substitutes given");
    return Poly::constant(0, f.constant_term());
  }
  return poly_compose(f, m);
}

std::string default_var_name(std::size_t i) { return "x" + std::to_string(i + 1); }

std::string to_string(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  // Highest total degree first, then reverse lexicographic on exponents.
  std::vector<std::pair<Monomial, Scalar>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    unsigned da = degree_of(a.first), db = degree_of(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Scalar mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      if (!factors.empty()) factors += "*";
      factors += v < names.size() ? names[v] : default_var_name(v);
      if (e[v] > 1) factors += "^" + std::to_string(e[v]);
    }
    if (factors.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += to_string(mag) + "*" + factors;
    }
  }
  return out;
}

}  // namespace daff::exact
