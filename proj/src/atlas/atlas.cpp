#include "daff/atlas/atlas.hpp"

#include <set>

#include "daff/error.hpp"

namespace daff::atlas {

Atlas::Atlas(std::size_t base_dim, FiberDims dims, std::vector<std::string> charts,
             std::map<Edge, TransitionData> edges, std::map<Edge, std::vector<Vec>> samples)
    : base_dim_(base_dim),
      dims_(dims),
      charts_(std::move(charts)),
      edges_(std::move(edges)),
      samples_(std::move(samples)) {
  std::set<std::string> known;
  for (const auto& c : charts_)
    if (!known.insert(c).second) throw DuplicateName("chart " + c);
  auto check_edge = [&](const Edge& e) {
    for (const auto& end : {e.first, e.second})
      if (!known.count(end)) throw UnresolvedReference("chart " + end);
  };
  for (const auto& [e, t] : edges_) {
    check_edge(e);
    t.validate();
    if (t.base_dim() != base_dim_ || !(t.dims() == dims_))
      throw DimMismatch("transition " + e.first + "->" + e.second + " has the wrong shape");
  }
  for (const auto& [e, pts] : samples_) {
    check_edge(e);
    for (const auto& p : pts)
      if (p.size() != base_dim_)
        throw DimMismatch("sample point on " + e.first + "->" + e.second);
  }
  for (const auto& c : charts_) edges_.try_emplace({c, c}, TransitionData::identity(base_dim_, dims_));
  std::vector<std::pair<Edge, TransitionData>> missing;
  for (const auto& [e, t] : edges_) {
    Edge back{e.second, e.first};
    if (edges_.count(back)) continue;
    try {
      missing.emplace_back(back, inverse(t));
    } catch (const SingularMatrix&) {
      throw SingularMatrix("transition " + e.first + "->" + e.second +
                           " has no polynomial inverse; give " + back.first + "->" + back.second +
                           " explicitly");
    }
  }
  for (auto& [e, t] : missing) edges_.emplace(e, std::move(t));
}

const TransitionData* Atlas::find(const std::string& a, const std::string& b) const {
  auto it = edges_.find({a, b});
  return it == edges_.end() ? nullptr : &it->second;
}

Atlas Atlas::map(const std::function<TransitionData(const TransitionData&)>& f) const {
  std::map<Edge, TransitionData> mapped;
  for (const auto& [e, t] : edges_) mapped.emplace(e, f(t));
  FiberDims d = mapped.empty() ? dims_ : mapped.begin()->second.dims();
  return Atlas(base_dim_, d, charts_, std::move(mapped), samples_);
}

CocycleReport cocycle_check(const Atlas& atlas) {
  CocycleReport report;
  for (const auto& a : atlas.charts())
    for (const auto& b : atlas.charts()) {
      const TransitionData* ab = atlas.find(a, b);
      if (!ab) continue;
      for (const auto& c : atlas.charts()) {
        const TransitionData* bc = atlas.find(b, c);
        const TransitionData* ac = atlas.find(a, c);
        if (!bc || !ac) continue;
        ++report.triangles_checked;
        if (auto d = first_difference(*ac, compose(*ab, *bc)))
          report.failures.push_back({a, b, c, std::move(*d)});
      }
    }
  for (const auto& [e, pts] : atlas.samples()) {
    const TransitionData* t = atlas.find(e.first, e.second);
    if (!t) continue;
    for (const auto& x : pts) {
      if (exact::det(t->alpha.eval(x)) == 0) report.singular_samples.push_back({e.first, e.second, "alpha", x});
      if (exact::det(t->beta.eval(x)) == 0) report.singular_samples.push_back({e.first, e.second, "beta", x});
      if (exact::det(t->sigma.eval(x)) == 0) report.singular_samples.push_back({e.first, e.second, "sigma", x});
    }
  }
  return report;
}

ModelHullReport check_atlas_model_hull(const Atlas& atlas) {
  ModelHullReport report;
  report.model = cocycle_check(atlas.map(induce_model));
  report.hull = cocycle_check(atlas.map(induce_hull));
  for (const auto& [e, t] : atlas.edges()) {
    if (auto d = first_difference(induce_v2(induce_v1(t)), induce_v1(induce_v2(t))))
      report.order_mismatches.emplace_back(e, std::move(*d));
  }
  return report;
}

}  // namespace daff::atlas
