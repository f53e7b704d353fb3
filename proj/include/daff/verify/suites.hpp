#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daff/affine/affine.hpp"
#include "daff/atlas/atlas.hpp"
#include "daff/double/double_affine.hpp"
#include "daff/naffine/graded.hpp"
#include "daff/phase/cotangent.hpp"

// Property checks shared by the CLI suites and the acceptance runner. Each
// randomized check runs `trials` trials seeded by derive_seed(seed, trial)
// and stops at the first failing trial, whose seed it reports.
namespace daff::verify {

enum class Status { Pass, Fail, Skip };
std::string to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::optional<std::string> witness;
  std::uint64_t seed = 0;

  bool ok() const { return status != Status::Fail; }
  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};
using Checks = std::vector<CheckResult>;

bool all_ok(const Checks& c);

// aff2 o aff1 = aff1 o aff2 on a square of points, and aff1 = aff2 where
// both are defined.
Checks check_interchange(const dbl::DoubleAffine& a, std::uint64_t seed, int trials);
Checks check_common_fiber(const dbl::DoubleAffine& a, std::uint64_t seed, int trials);
// Hull and model membership against direct evaluation of l1, l2.
Checks check_model_hull(const dbl::DoubleAffine& a, std::uint64_t seed, int trials);
// Hull transitions restrict to the original and model ones; the two
// orders of linearization agree.
Checks check_atlas_hull(const atlas::Atlas& a);
// Cocycle of the atlas and of both induced atlases.
Checks check_cocycle(const atlas::Atlas& a);
// Pairing of the two special duals.
Checks check_duality(const dbl::DoubleAffine& a, std::uint64_t seed, int trials);
Checks check_affine_duality(const affine::BispecialRep& a, std::uint64_t seed, int trials);
Checks check_hvh(const dbl::DoubleAffine& a);
Checks check_phase_tower(const phase::NormalForm& e, const std::optional<exact::Vec>& omega,
                         std::uint64_t seed, int trials);
Checks check_tau_kappa(const phase::NormalForm& e, std::uint64_t seed, int trials);
Checks check_naffine(const naffine::NAffine& a, std::uint64_t seed, int trials);

}  // namespace daff::verify
