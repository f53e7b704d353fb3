#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "daff/atlas/transition.hpp"
#include "daff/exact/poly.hpp"

namespace daff::naffine {

using exact::Mat;
using exact::Poly;
using exact::Scalar;
using exact::Vec;

// A degree in {0,1}^n as a bitmask: bit k is the (k+1)-st entry.
using Degree = unsigned;

std::string degree_string(Degree d, std::size_t n);  // "01" style, first entry first
Degree parse_degree(const std::string& bits);
inline Degree unit_degree(std::size_t k) { return Degree(1) << k; }
inline Degree full_degree(std::size_t n) { return (Degree(1) << n) - 1; }

// K = prod_{eps != 0} K_eps; coordinates ordered by degree, then index.
class GradedSpace {
 public:
  GradedSpace(std::size_t n, std::map<Degree, std::size_t> dims);

  std::size_t n() const { return n_; }
  const std::map<Degree, std::size_t>& dims() const { return dims_; }
  std::size_t dim(Degree d) const;
  std::size_t total() const { return total_; }
  std::size_t offset(Degree d) const;
  Degree degree_of(std::size_t coord) const;
  Vec component(const Vec& x, Degree d) const;
  Vec embed(Degree d, const Vec& part) const;

  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;

 private:
  std::size_t n_;
  std::map<Degree, std::size_t> dims_;
  std::size_t total_ = 0;
};

// Polynomial self-map of base (degree 0, m coordinates) times K: the first
// m entries are the new base coordinates, the rest the new fiber ones, all
// in the m + total variables (base first).
struct FilteredMap {
  std::size_t m = 0;
  std::vector<Poly> f;
};

struct FiltrationReport {
  bool ok = true;
  std::size_t coordinate = 0;
  std::string monomial;
};

// Every monomial in the row of a coordinate of degree mu has multi-degree
// <= mu (entrywise, powers counted).
FiltrationReport filtration_check(const GradedSpace& e, const FilteredMap& f);
FilteredMap compose(const FilteredMap& first, const FilteredMap& second);
// Coefficients of the degree-preserving linear terms for the target
// component d, as polynomials in the base.
exact::PolyMat linear_block(const GradedSpace& e, const FilteredMap& f, Degree d);
bool linear_blocks_invertible(const GradedSpace& e, const FilteredMap& f, const Vec& x);

// n = 2 layout of a transition: z has degree 10, y degree 01, c degree 11.
GradedSpace graded_for(const atlas::FiberDims& d);
FilteredMap as_filtered_map(const atlas::TransitionData& t);

struct Core {
  Degree degree;
  std::size_t dim, offset;
};
Core core(const GradedSpace& e);
Vec core_act(const GradedSpace& e, const Vec& c, const Vec& v);
// Coordinates whose degree has entry k equal to zero.
Vec side_projection(const GradedSpace& e, std::size_t k, const Vec& v);

// A = {l_k = 1, k = 0..n-1} with l_k on K_{e_k}; special with sigma in the core.
class NAffine {
 public:
  NAffine(GradedSpace e, std::vector<Vec> l, std::optional<Vec> sigma = std::nullopt);

  const GradedSpace& space() const { return e_; }
  const std::vector<Vec>& l() const { return l_; }
  const std::optional<Vec>& sigma() const { return sigma_; }
  bool is_special() const { return sigma_.has_value(); }
  // l_k as a covector on the whole of K.
  Vec functional(std::size_t k) const { return e_.embed(unit_degree(k), l_[k]); }
  bool contains(const Vec& x) const;

  friend bool operator==(const NAffine&, const NAffine&) = default;

 private:
  GradedSpace e_;
  std::vector<Vec> l_;
  std::optional<Vec> sigma_;
};

}  // namespace daff::naffine
