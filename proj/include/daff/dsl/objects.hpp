#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "daff/affine/affine.hpp"
#include "daff/atlas/atlas.hpp"
#include "daff/double/level_set.hpp"
#include "daff/dsl/document.hpp"
#include "daff/naffine/graded.hpp"
#include "daff/phase/cotangent.hpp"

namespace daff::dsl {

struct SpecialBundle {
  phase::NormalForm e;
  std::optional<exact::Vec> omega;
};

struct LevelSet {
  std::string over;
  dbl::DecomposedDouble d;
  std::vector<dbl::LevelRow> rows;
};

// Library objects built from a validated document, keyed by block name.
struct Objects {
  std::map<std::string, affine::BispecialRep> spaces;
  std::map<std::string, dbl::DoubleAffine> doubles;
  std::map<std::string, atlas::Atlas> atlases;
  std::map<std::string, SpecialBundle> bundles;
  std::map<std::string, naffine::NAffine> graded;
  std::map<std::string, LevelSet> level_sets;
};

// Throws MalformedConstraint for missing, unknown or ill-typed fields,
// UnresolvedReference for names that do not resolve, and whatever the
// object constructors reject.
Objects lower(const Document& doc);

// Inverse direction, for emitting constructed objects.
Block to_block(const std::string& name, const affine::BispecialRep& a);
Block to_block(const std::string& name, const dbl::DoubleAffine& a);
Block to_block(const std::string& name, const atlas::Atlas& a);
Block to_block(const std::string& name, const naffine::NAffine& a);

}  // namespace daff::dsl
