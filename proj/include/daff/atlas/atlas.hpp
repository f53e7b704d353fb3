#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daff/atlas/transition.hpp"

namespace daff::atlas {

class Atlas {
 public:
  using Edge = std::pair<std::string, std::string>;

  // Missing reverse edges are filled with formal inverses; self-loops are
  // the identity.
  Atlas(std::size_t base_dim, FiberDims dims, std::vector<std::string> charts,
        std::map<Edge, TransitionData> edges, std::map<Edge, std::vector<Vec>> samples = {});

  std::size_t base_dim() const { return base_dim_; }
  const FiberDims& dims() const { return dims_; }
  const std::vector<std::string>& charts() const { return charts_; }
  const std::map<Edge, TransitionData>& edges() const { return edges_; }
  const std::map<Edge, std::vector<Vec>>& samples() const { return samples_; }
  const TransitionData* find(const std::string& a, const std::string& b) const;

  // Applies f to every edge, keeping charts and samples.
  Atlas map(const std::function<TransitionData(const TransitionData&)>& f) const;

 private:
  std::size_t base_dim_;
  FiberDims dims_;
  std::vector<std::string> charts_;
  std::map<Edge, TransitionData> edges_;
  std::map<Edge, std::vector<Vec>> samples_;
};

struct TriangleFailure {
  std::string a, b, c;
  Difference difference;
};

struct SampleFailure {
  std::string a, b;
  std::string block;  // alpha, beta or sigma
  Vec point;
};

struct CocycleReport {
  std::size_t triangles_checked = 0;
  std::vector<TriangleFailure> failures;
  std::vector<SampleFailure> singular_samples;

  bool passed() const { return failures.empty() && singular_samples.empty(); }
};

CocycleReport cocycle_check(const Atlas& atlas);

struct ModelHullReport {
  CocycleReport model, hull;
  // Edges where the two orders of linearization disagree.
  std::vector<std::pair<Atlas::Edge, Difference>> order_mismatches;

  bool passed() const { return model.passed() && hull.passed() && order_mismatches.empty(); }
};

ModelHullReport check_atlas_model_hull(const Atlas& atlas);

}  // namespace daff::atlas
