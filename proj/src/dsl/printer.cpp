#include <algorithm>
#include <cctype>
#include <map>

#include "daff/dsl/document.hpp"

namespace daff::dsl {

namespace {

std::vector<std::string> split(const std::string& key) {
  std::vector<std::string> out(1);
  for (char c : key) {
    if (c == '.') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

bool digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Known field names in emission order; the leading ones are plain keys,
// the trailing ones are leaves of dotted keys.
const std::map<std::string, std::vector<std::string>>& orders() {
  static const std::map<std::string, std::vector<std::string>> o = {
      {"space", {"hull_dim", "alpha", "v"}},
      {"double", {"n1", "n2", "n3", "l1", "l2", "sigma"}},
      {"atlas", {"base", "n1", "n2", "n3", "charts", "edge", "sample", "P", "q", "alpha0", "alpha",
                 "beta0", "beta", "gamma00", "gamma_y", "gamma_z", "gamma_yz", "sigma"}},
      {"special_bundle", {"m", "n", "omega"}},
      {"graded", {"n", "dim", "l", "sigma"}},
      {"level_set", {"over", "row", "g00", "gy", "gz", "gyz", "sigma", "value"}},
  };
  return o;
}

std::size_t rank(const std::string& kind, const std::string& word) {
  auto it = orders().find(kind);
  if (it == orders().end()) return 0;
  auto pos = std::find(it->second.begin(), it->second.end(), word);
  return static_cast<std::size_t>(pos - it->second.begin());
}

bool segment_less(const std::string& kind, const std::string& a, const std::string& b) {
  const std::size_t ra = rank(kind, a), rb = rank(kind, b);
  if (ra != rb) return ra < rb;
  if (digits(a) && digits(b) && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

bool field_less(const std::string& kind, const std::string& a, const std::string& b) {
  const auto sa = split(a), sb = split(b);
  const std::size_t n = std::min(sa.size(), sb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (sa[i] == sb[i]) continue;
    return segment_less(kind, sa[i], sb[i]);
  }
  return sa.size() < sb.size();
}

std::string print(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Expr: return exact::to_string(v.expr);
    case Value::Kind::Ident: return v.ident;
    case Value::Kind::List: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) s += ", ";
        s += print(v.items[i]);
      }
      return s + "]";
    }
  }
  return "";
}

std::string print(const Document& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
    const Block& b = doc.blocks[i];
    if (i) out += "\n";
    out += b.kind + " " + b.name + " {\n";
    for (const auto& f : b.fields) out += "  " + f.key + " = " + print(f.value) + ";\n";
    out += "}\n";
  }
  return out;
}

}  // namespace daff::dsl
