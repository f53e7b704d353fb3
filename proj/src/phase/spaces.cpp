#include "daff/phase/spaces.hpp"

#include <algorithm>

#include "daff/error.hpp"

namespace daff::phase {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::AffCtg: return "affctg";
    case SpaceKind::PhaseP: return "phase";
    case SpaceKind::Bbl: return "bbl";
    case SpaceKind::ContactC: return "contact";
  }
  return "?";
}

namespace {

std::vector<std::size_t> all_but(std::size_t n, std::optional<std::size_t> skip) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < n; ++i)
    if (i != skip) r.push_back(i);
  return r;
}

Vec unit_at(const std::vector<std::size_t>& idx, std::size_t target) {
  auto it = std::find(idx.begin(), idx.end(), target);
  if (it == idx.end()) throw InvariantViolation("distinguished coordinate is masked");
  return Vec::unit(idx.size(), static_cast<std::size_t>(it - idx.begin()));
}

}  // namespace

Constructed build(SpaceKind kind, const NormalForm& e, std::optional<Vec> omega_m) {
  Constructed c{kind, e, kNoMask, {}, {}, {}, false, {}, {}, {}, std::nullopt};
  const std::size_t f = e.fiber();
  switch (kind) {
    case SpaceKind::AffCtg:
    case SpaceKind::PhaseP: c.mask = kChi; break;
    case SpaceKind::Bbl: c.mask = kNoMask; break;
    case SpaceKind::ContactC:
      c.mask = kChi2;
      c.core_has_y = true;
      break;
  }
  const bool drop_v = (c.mask & kChi1) || c.core_has_y;
  c.side1 = all_but(f, drop_v ? std::optional(e.v) : std::nullopt);
  c.side2 = all_but(f, (c.mask & kChi2) ? std::optional(e.alpha) : std::nullopt);
  c.d = {c.side1.size(), c.side2.size(), e.m + (c.core_has_y ? 1 : 0)};
  c.l1 = unit_at(c.side1, e.alpha);
  c.l2 = unit_at(c.side2, e.v);
  if (kind != SpaceKind::AffCtg) {
    c.constraints.push_back({false, e.alpha, 1});
    c.constraints.push_back({true, e.v, 1});
  }
  if (kind == SpaceKind::PhaseP && omega_m) {
    if (omega_m->size() != e.m) throw DimMismatch("omega_M");
    if (omega_m->is_zero()) throw ZeroForm("omega_M vanishes");
    c.core_section = *omega_m;
  }
  if (kind == SpaceKind::ContactC) c.core_section = Vec::unit(e.m + 1, e.m);
  return c;
}

bool Constructed::contains(const ReducedCovector& w) const {
  if (!(w.form() == e) || w.mask() != mask) return false;
  for (const auto& k : constraints)
    if ((k.on_pi ? w.rep().pi : w.rep().y)[k.index] != k.value) return false;
  return true;
}

dbl::DoublePoint Constructed::to_double(const ReducedCovector& w) const {
  if (!(w.form() == e) || w.mask() != mask) throw SpaceMismatch(to_string(kind) + " point expected");
  const auto& r = w.rep();
  Vec y(side1.size()), z(side2.size());
  for (std::size_t k = 0; k < side1.size(); ++k) y[k] = r.y[side1[k]];
  for (std::size_t k = 0; k < side2.size(); ++k) z[k] = r.pi[side2[k]];
  Vec c = core_has_y ? Vec::concat(r.p, Vec{r.y[e.v]}) : r.p;
  return dbl::DoublePoint(d, y, z, c);
}

ReducedCovector Constructed::from_double(const Vec& x, const dbl::DoublePoint& p) const {
  if (!(p.owner() == d)) throw SpaceMismatch(to_string(kind) + " coordinates expected");
  CotangentPoint w{x, Vec(e.fiber()), p.c().slice(0, e.m), Vec(e.fiber())};
  for (std::size_t k = 0; k < side1.size(); ++k) w.y[side1[k]] = p.y()[k];
  for (std::size_t k = 0; k < side2.size(); ++k) w.pi[side2[k]] = p.z()[k];
  if (core_has_y) w.y[e.v] = p.c()[e.m];
  return {e, mask, w};
}

dbl::DoubleAffine Constructed::affine() const {
  if (constraints.empty()) throw ConstraintViolated(to_string(kind) + " is not cut by level sets");
  return dbl::DoubleAffine(d, l1, l2, core_section);
}

ReducedCovector iota(const NormalForm& e, const Vec& x, const Vec& ybar, const Vec& p, const Vec& pibar) {
  const auto inner = e.inner();
  if (ybar.size() != inner.size() || pibar.size() != inner.size())
    throw DimMismatch("cotangent point of the model of A-bar");
  CotangentPoint w{x, Vec(e.fiber()), p, Vec(e.fiber())};
  for (std::size_t k = 0; k < inner.size(); ++k) {
    w.y[inner[k]] = ybar[k];
    w.pi[inner[k]] = pibar[k];
  }
  return {e, kChi, w};
}

}  // namespace daff::phase
