#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "daff/exact/poly.hpp"

namespace daff::dsl {

// Field value: a polynomial expression (rationals are constants), a
// nonempty list of values, or an identifier.
struct Value {
  enum class Kind { Expr, List, Ident };

  Kind kind = Kind::Expr;
  exact::Poly expr;
  std::vector<Value> items;
  std::string ident;
  std::size_t line = 0, col = 0;

  static Value number(const exact::Scalar& s);
  static Value list(std::vector<Value> items);
  static Value name(std::string id);

  bool operator==(const Value& o) const;
};

struct Field {
  std::string key;  // dotted path, e.g. "edge.a.b.alpha" or "dim.01"
  Value value;
  std::size_t line = 0, col = 0;

  bool operator==(const Field& o) const { return key == o.key && value == o.value; }
};

struct Block {
  std::string kind, name;
  std::vector<Field> fields;  // canonical order
  std::size_t line = 0, col = 0;

  const Field* find(const std::string& key) const;
  bool operator==(const Block& o) const {
    return kind == o.kind && name == o.name && fields == o.fields;
  }
};

struct Document {
  std::vector<Block> blocks;

  const Block* find(const std::string& name) const;
  bool operator==(const Document& o) const { return blocks == o.blocks; }
};

extern const std::vector<std::string> kBlockKinds;

// Fields are sorted into canonical order; repeated block names or keys
// throw DuplicateName.
Document parse(std::string_view text);
std::string print(const Document& doc);
std::string print(const Value& v);

// Orders keys the way print emits them.
bool field_less(const std::string& kind, const std::string& a, const std::string& b);

}  // namespace daff::dsl
