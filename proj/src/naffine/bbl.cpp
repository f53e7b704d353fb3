#include "daff/naffine/bbl.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "daff/affine/affine.hpp"
#include "daff/error.hpp"
#include "daff/verify/generators.hpp"

namespace daff::naffine {

std::size_t Bbl::index_of(bool momentum, Degree alpha, std::size_t j) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i].momentum == momentum && coords[i].alpha == alpha && coords[i].j == j) return i;
  throw DimMismatch("no such cotangent coordinate");
}

Bbl bbl_n(const NAffine& a) {
  if (!a.is_special()) throw NotSpecial("the dual bundle needs a core section");
  const GradedSpace& e = a.space();
  const std::size_t n = e.n();
  const Degree top = full_degree(n + 1);
  std::map<Degree, std::size_t> dims;
  for (const auto& [alpha, k] : e.dims()) {
    dims[alpha] = k;
    dims[top ^ alpha] = k;
  }
  GradedSpace b(n + 1, dims);
  std::vector<CotangentCoord> coords;
  for (const auto& [mu, k] : b.dims()) {
    const bool momentum = (mu & unit_degree(n)) != 0;
    for (std::size_t j = 0; j < k; ++j) coords.push_back({momentum, momentum ? top ^ mu : mu, j});
  }
  std::vector<Vec> l = a.l();
  l.push_back(*a.sigma());
  return {NAffine(std::move(b), std::move(l)), std::move(coords)};
}

namespace {



// Indices into bbl coordinates of the given kind whose source degree
// satisfies pred, in source order.
std::vector<std::size_t> pick(const NAffine& a, const Bbl& bbl, bool momentum,
                              const std::function<bool(Degree)>& pred) {
  std::vector<std::size_t> out;
  for (const auto& [alpha, k] : a.space().dims())
    if (pred(alpha))
      for (std::size_t j = 0; j < k; ++j) out.push_back(bbl.index_of(momentum, alpha, j));
  return out;
}

Vec restrict_to(const Vec& v, const std::vector<std::size_t>& idx) {
  Vec out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

// Positions of the source coordinates with degree satisfying pred.
std::vector<std::size_t> source_coords(const GradedSpace& e, const std::function<bool(Degree)>& pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.total(); ++i)
    if (pred(e.degree_of(i))) out.push_back(i);
  return out;
}

bool has(Degree d, std::size_t k) { return (d & unit_degree(k)) != 0; }

}  // namespace

dbl::DoubleAffine restrict_pair(const NAffine& a, std::size_t i, std::size_t j) {
  const GradedSpace& e = a.space();
  if (i >= e.n() || j >= e.n() || i == j) throw DimMismatch("need two distinct directions");
  if (!a.is_special()) throw NotSpecial("restriction needs a core section");
  const auto y = source_coords(e, [&](Degree d) { return has(d, i) && !has(d, j); });
  const auto z = source_coords(e, [&](Degree d) { return has(d, j) && !has(d, i); });
  const auto c = source_coords(e, [&](Degree d) { return has(d, i) && has(d, j); });
  const Vec sigma = e.embed(full_degree(e.n()), *a.sigma());
  return dbl::DoubleAffine({y.size(), z.size(), c.size()}, restrict_to(a.functional(i), y),
                           restrict_to(a.functional(j), z), restrict_to(sigma, c));
}

SideBaseReport side_bases(const NAffine& a, const Bbl& bbl, std::uint64_t seed, int trials) {
  const GradedSpace& e = a.space();
  const GradedSpace& be = bbl.b.space();
  const std::size_t n = e.n();
  SideBaseReport report;
  auto flag = [&](const std::string& what) { report.flags.push_back(what); };

  if (be.n() != n + 1 || bbl.coords.size() != be.total())
    throw DimMismatch("dual bundle does not match A");

  for (std::size_t k = 0; k <= n; ++k) {
    SideBase side{k, {}, false, false};
    for (std::size_t i = 0; i < be.total(); ++i)
      if (!has(be.degree_of(i), k)) side.kept.push_back(i);

    if (k == n) {
      std::map<Degree, std::size_t> dims;
      for (const auto& [mu, dim] : be.dims())
        if (!has(mu, n)) dims[mu] = dim;
      std::vector<Vec> l(bbl.b.l().begin(), bbl.b.l().begin() + static_cast<long>(n));
      bool ok = side.kept == pick(a, bbl, false, [](Degree) { return true; });
      ok = ok && GradedSpace(n, dims) == e && l == a.l();
      side.is_a = ok;
      if (!ok) flag("side base " + std::to_string(k + 1) + " is not A");
    } else {
      const auto ys = pick(a, bbl, false, [&](Degree d) { return !has(d, k); });
      const auto ps = pick(a, bbl, true, [&](Degree d) { return has(d, k); });
      std::vector<std::size_t> expected = ys;
      expected.insert(expected.end(), ps.begin(), ps.end());
      std::sort(expected.begin(), expected.end());
      bool ok = side.kept == expected;

      // Fiber of aff_k over A_k and its special dual.
      const auto fiber = source_coords(e, [&](Degree d) { return has(d, k); });
      const Vec sigma = e.embed(full_degree(n), *a.sigma());
      const affine::BispecialRep dual = affine::special_dual(affine::BispecialRep(
          fiber.size(), restrict_to(a.functional(k), fiber), restrict_to(sigma, fiber)));
      ok = ok && dual.alpha() == restrict_to(bbl.b.functional(n), ps);
      ok = ok && dual.special_vector() == restrict_to(a.functional(k), fiber);
      // The remaining functionals cut out A_k on the y side and l_k drops out.
      for (std::size_t j = 0; j < n && ok; ++j) {
        const Vec lj = bbl.b.functional(j);
        if (j == k) {
          ok = restrict_to(lj, side.kept).is_zero();
        } else {
          ok = restrict_to(lj, ps).is_zero() &&
               restrict_to(lj, ys) ==
                   restrict_to(a.functional(j), source_coords(e, [&](Degree d) { return !has(d, k); }));
        }
      }
      side.is_dual = ok;
      if (!ok) flag("side base " + std::to_string(k + 1) + " is not the special dual over A_" +
                    std::to_string(k + 1));
    }
    report.sides.push_back(std::move(side));
  }

  verify::Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PairCheck pc{i, j};
      const dbl::DoubleAffine d = restrict_pair(a, i, j);
      const Vec lb = bbl.b.functional(n);
      auto both = [&](Degree x) { return has(x, i) && has(x, j); };
      auto only_i = [&](Degree x) { return has(x, i) && !has(x, j); };
      auto only_j = [&](Degree x) { return has(x, j) && !has(x, i); };

      const dbl::DoubleAffine v = dbl::special_dual_vertical(d);
      const auto vy = pick(a, bbl, false, only_i);
      const auto vg = pick(a, bbl, true, both);
      const auto vz = pick(a, bbl, true, only_j);
      pc.vertical_matches = v.l1() == restrict_to(bbl.b.functional(i), vy) &&
                            v.l2() == restrict_to(lb, vg) && v.sigma().size() == vz.size();
      for (std::size_t idx : vy) pc.vertical_matches = pc.vertical_matches && !has(be.degree_of(idx), j);
      for (std::size_t idx : vg) pc.vertical_matches = pc.vertical_matches && !has(be.degree_of(idx), j);
      for (std::size_t idx : vz) pc.vertical_matches = pc.vertical_matches && !has(be.degree_of(idx), j);

      const dbl::DoubleAffine h = dbl::special_dual_horizontal(d);
      const auto hz = pick(a, bbl, false, only_j);
      const auto heta = pick(a, bbl, true, only_i);
      pc.horizontal_matches = h.l1() == restrict_to(lb, vg) &&
                              h.l2() == restrict_to(bbl.b.functional(j), hz) &&
                              h.sigma().size() == heta.size();
      for (std::size_t idx : hz) pc.horizontal_matches = pc.horizontal_matches && !has(be.degree_of(idx), i);
      for (std::size_t idx : vg) pc.horizontal_matches = pc.horizontal_matches && !has(be.degree_of(idx), i);
      for (std::size_t idx : heta) pc.horizontal_matches = pc.horizontal_matches && !has(be.degree_of(idx), i);

      // Shifting by the core sections moves the pairing by one on both sides.
      pc.adjoint_pairing = true;
      for (int t = 0; t < trials && pc.adjoint_pairing; ++t) {
        const Vec gamma = verify::level_point(rng, v.l2());
        const dbl::DoublePoint phi(v.d(), verify::level_point(rng, v.l1()), gamma, rng.vec(v.d().n3));
        const dbl::DoublePoint psi(h.d(), gamma, verify::level_point(rng, h.l2()), rng.vec(h.d().n3));
        const Scalar base = dbl::pairing(phi, psi, d);
        const dbl::DoublePoint phi2(v.d(), phi.y(), phi.z(), phi.c() + v.sigma());
        const dbl::DoublePoint psi2(h.d(), psi.y(), psi.z(), psi.c() - h.sigma());
        pc.adjoint_pairing = dbl::pairing(phi2, psi, d) == Scalar(base + 1) &&
                             dbl::pairing(phi, psi2, d) == Scalar(base + 1);
      }
      std::ostringstream tag;
      tag << "(" << i + 1 << "," << j + 1 << ")";
      if (!pc.vertical_matches) flag("vertical dual mismatch on " + tag.str());
      if (!pc.horizontal_matches) flag("horizontal dual mismatch on " + tag.str());
      if (!pc.adjoint_pairing) flag("adjoint pairing fails on " + tag.str());
      report.pairs.push_back(pc);
    }
  }
  return report;
}

}  // namespace daff::naffine
