#include "daff/dsl/objects.hpp"

#include <algorithm>
#include <set>

#include "daff/error.hpp"

namespace daff::dsl {

using exact::Mat;
using exact::Poly;
using exact::PolyBilinear;
using exact::PolyMat;
using exact::PolyVec;
using exact::Scalar;
using exact::Vec;

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

// Typed access to one block's fields with located error messages.
class Reader {
 public:
  explicit Reader(const Block& b) : b_(b) {}

  const Block& block() const { return b_; }

  [[noreturn]] void bad(const Field& f, const std::string& what) const {
    throw MalformedConstraint(b_.kind + " " + b_.name + ", field '" + f.key + "' (line " +
                              std::to_string(f.line) + "): " + what);
  }

  const Field& need(const std::string& key) {
    const Field* f = b_.find(key);
    if (!f)
      throw MalformedConstraint(b_.kind + " " + b_.name + " (line " + std::to_string(b_.line) +
                                "): missing field '" + key + "'");
    used_.insert(key);
    return *f;
  }

  const Field* maybe(const std::string& key) {
    const Field* f = b_.find(key);
    if (f) used_.insert(key);
    return f;
  }

  void mark(const std::string& key) { used_.insert(key); }

  void finish() const {
    for (const auto& f : b_.fields)
      if (!used_.count(f.key)) bad(f, "unknown field");
  }

  Scalar scalar(const Field& f, const Value& v) const {
    if (v.kind != Value::Kind::Expr || !(v.expr.is_zero() || v.expr.is_constant()))
      bad(f, "expected a rational number");
    return v.expr.constant_term();
  }

  std::size_t natural(const Field& f) const {
    const Scalar s = scalar(f, f.value);
    if (s.get_den() != 1 || sgn(s) < 0 || s > 64) bad(f, "expected a natural number up to 64");
    return s.get_num().get_ui();
  }

  const std::vector<Value>& items(const Field& f, const Value& v, std::size_t n) const {
    if (v.kind != Value::Kind::List) bad(f, "expected a list");
    if (v.items.size() != n)
      bad(f, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.items.size()));
    return v.items;
  }

  Vec vec(const Field& f, const Value& v, std::size_t n) const {
    const auto& it = items(f, v, n);
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = scalar(f, it[i]);
    return out;
  }

  Mat mat(const Field& f, std::size_t r, std::size_t c) const {
    const auto& rows = items(f, f.value, r);
    Mat out(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      const Vec row = vec(f, rows[i], c);
      for (std::size_t j = 0; j < c; ++j) out(i, j) = row[j];
    }
    return out;
  }

  Poly poly(const Field& f, const Value& v, std::size_t nv) const {
    if (v.kind != Value::Kind::Expr) bad(f, "expected a polynomial");
    if (v.expr.nvars() > nv)
      bad(f, "uses x" + std::to_string(v.expr.nvars()) + " but the base has dimension " + std::to_string(nv));
    return v.expr.extend(nv);
  }

  PolyVec polyvec(const Field& f, std::size_t n, std::size_t nv) const {
    const auto& it = items(f, f.value, n);
    PolyVec out(n, nv);
    for (std::size_t i = 0; i < n; ++i) out[i] = poly(f, it[i], nv);
    return out;
  }

  PolyMat polymat(const Field& f, const Value& v, std::size_t r, std::size_t c, std::size_t nv) const {
    const auto& rows = items(f, v, r);
    PolyMat out(r, c, nv);
    for (std::size_t i = 0; i < r; ++i) {
      const auto& row = items(f, rows[i], c);
      for (std::size_t j = 0; j < c; ++j) out(i, j) = poly(f, row[j], nv);
    }
    return out;
  }

  PolyBilinear bilinear(const Field& f, std::size_t n3, std::size_t n1, std::size_t n2, std::size_t nv) const {
    const auto& slabs = items(f, f.value, n3);
    PolyBilinear out(n3, n1, n2, nv);
    for (std::size_t u = 0; u < n3; ++u) {
      const PolyMat m = polymat(f, slabs[u], n1, n2, nv);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t b = 0; b < n2; ++b) out(u, i, b) = m(i, b);
    }
    return out;
  }

  std::vector<std::string> names(const Field& f) const {
    if (f.value.kind != Value::Kind::List) bad(f, "expected a list of names");
    std::vector<std::string> out;
    for (const auto& v : f.value.items) {
      if (v.kind != Value::Kind::Ident) bad(f, "expected a name");
      out.push_back(v.ident);
    }
    return out;
  }

  std::string name(const Field& f) const {
    if (f.value.kind != Value::Kind::Ident) bad(f, "expected a name");
    return f.value.ident;
  }

 private:
  const Block& b_;
  std::set<std::string> used_;
};

affine::BispecialRep lower_space(Reader& r) {
  const std::size_t n = r.natural(r.need("hull_dim"));
  const Field& alpha = r.need("alpha");
  std::optional<Vec> v;
  if (const Field* f = r.maybe("v")) v = r.vec(*f, f->value, n);
  r.finish();
  return affine::BispecialRep(n, r.vec(alpha, alpha.value, n), v);
}

dbl::DecomposedDouble dims(Reader& r) {
  return {r.natural(r.need("n1")), r.natural(r.need("n2")), r.natural(r.need("n3"))};
}

dbl::DoubleAffine lower_double(Reader& r) {
  const auto d = dims(r);
  const Field& l1 = r.need("l1");
  const Field& l2 = r.need("l2");
  std::optional<Vec> sigma;
  if (const Field* f = r.maybe("sigma")) sigma = r.vec(*f, f->value, d.n3);
  r.finish();
  return dbl::DoubleAffine(d, r.vec(l1, l1.value, d.n1), r.vec(l2, l2.value, d.n2), sigma);
}

atlas::Atlas lower_atlas(Reader& r) {
  const std::size_t m = r.natural(r.need("base"));
  const auto d = dims(r);
  const atlas::FiberDims fd{d.n1, d.n2, d.n3};
  const auto charts = r.names(r.need("charts"));
  auto chart = [&](const Field& f, const std::string& c) {
    if (std::find(charts.begin(), charts.end(), c) == charts.end())
      throw UnresolvedReference("atlas " + r.block().name + ", field '" + f.key + "': no chart '" + c + "'");
  };

  std::map<atlas::Atlas::Edge, atlas::TransitionData> edges;
  std::map<atlas::Atlas::Edge, std::vector<Vec>> samples;
  std::map<atlas::Atlas::Edge, std::pair<Mat, Vec>> base;
  for (const auto& f : r.block().fields) {
    const auto seg = split(f.key);
    if (seg[0] == "sample") {
      if (seg.size() != 3) r.bad(f, "expected sample.<from>.<to>");
      chart(f, seg[1]);
      chart(f, seg[2]);
      r.mark(f.key);
      auto& list = samples[{seg[1], seg[2]}];
      if (f.value.kind != Value::Kind::List) r.bad(f, "expected a list of base points");
      for (const auto& p : f.value.items) list.push_back(r.vec(f, p, m));
      continue;
    }
    if (seg[0] != "edge") continue;
    if (seg.size() != 4) r.bad(f, "expected edge.<from>.<to>.<coefficient>");
    chart(f, seg[1]);
    chart(f, seg[2]);
    r.mark(f.key);
    const atlas::Atlas::Edge e{seg[1], seg[2]};
    auto it = edges.find(e);
    if (it == edges.end()) {
      it = edges.emplace(e, atlas::TransitionData::identity(m, fd)).first;
      base.emplace(e, std::pair(Mat::identity(m), Vec(m)));
    }
    auto& t = it->second;
    const std::string& c = seg[3];
    if (c == "P") base[e].first = r.mat(f, m, m);
    else if (c == "q") base[e].second = r.vec(f, f.value, m);
    else if (c == "alpha0") t.alpha0 = r.polyvec(f, d.n1, m);
    else if (c == "alpha") t.alpha = r.polymat(f, f.value, d.n1, d.n1, m);
    else if (c == "beta0") t.beta0 = r.polyvec(f, d.n2, m);
    else if (c == "beta") t.beta = r.polymat(f, f.value, d.n2, d.n2, m);
    else if (c == "gamma00") t.gamma00 = r.polyvec(f, d.n3, m);
    else if (c == "gamma_y") t.gamma_y = r.polymat(f, f.value, d.n3, d.n1, m);
    else if (c == "gamma_z") t.gamma_z = r.polymat(f, f.value, d.n3, d.n2, m);
    else if (c == "gamma_yz") t.gamma_yz = r.bilinear(f, d.n3, d.n1, d.n2, m);
    else if (c == "sigma") t.sigma = r.polymat(f, f.value, d.n3, d.n3, m);
    else r.bad(f, "unknown coefficient '" + c + "'");
  }
  for (auto& [e, t] : edges) t.base = exact::BaseMap(base.at(e).first, base.at(e).second);
  r.finish();
  return atlas::Atlas(m, fd, charts, std::move(edges), std::move(samples));
}

SpecialBundle lower_bundle(Reader& r) {
  const std::size_t m = r.natural(r.need("m")), n = r.natural(r.need("n"));
  SpecialBundle b{phase::NormalForm::of(m, n), std::nullopt};
  if (const Field* f = r.maybe("omega")) b.omega = r.vec(*f, f->value, m);
  r.finish();
  return b;
}

naffine::NAffine lower_graded(Reader& r) {
  const Field& nf = r.need("n");
  const std::size_t n = r.natural(nf);
  if (n == 0 || n > 8) r.bad(nf, "order must be in 1..8");
  auto degree = [&](const Field& f, const std::string& bits) {
    if (bits.size() != n) r.bad(f, "degree '" + bits + "' needs " + std::to_string(n) + " bits");
    try {
      return naffine::parse_degree(bits);
    } catch (const MalformedConstraint&) {
      r.bad(f, "degree '" + bits + "' is not a bitstring");
    }
  };
  std::map<naffine::Degree, std::size_t> dims;
  std::map<naffine::Degree, const Field*> ls;
  for (const auto& f : r.block().fields) {
    const auto seg = split(f.key);
    if (seg[0] != "dim" && seg[0] != "l") continue;
    if (seg.size() != 2) r.bad(f, "expected " + seg[0] + ".<bits>");
    r.mark(f.key);
    const naffine::Degree d = degree(f, seg[1]);
    if (d == 0) r.bad(f, "the zero degree is the base");
    if (seg[0] == "dim") dims[d] = r.natural(f);
    else ls[d] = &f;
  }
  naffine::GradedSpace e(n, dims);
  std::vector<Vec> l;
  for (std::size_t k = 0; k < n; ++k) {
    auto it = ls.find(naffine::unit_degree(k));
    if (it == ls.end())
      throw MalformedConstraint("graded " + r.block().name + ": missing field 'l." +
                                naffine::degree_string(naffine::unit_degree(k), n) + "'");
    l.push_back(r.vec(*it->second, it->second->value, e.dim(naffine::unit_degree(k))));
    ls.erase(it);
  }
  if (!ls.empty()) r.bad(*ls.begin()->second, "functionals live on the degrees with a single 1");
  std::optional<Vec> sigma;
  if (const Field* f = r.maybe("sigma")) sigma = r.vec(*f, f->value, e.dim(naffine::full_degree(n)));
  r.finish();
  return naffine::NAffine(e, l, sigma);
}

LevelSet lower_level_set(Reader& r, const Objects& done) {
  const Field& over = r.need("over");
  const std::string target = r.name(over);
  auto it = done.doubles.find(target);
  if (it == done.doubles.end())
    throw UnresolvedReference("level_set " + r.block().name + ": '" + target + "' is not a double block");
  LevelSet ls{target, it->second.d(), {}};
  const auto& d = ls.d;
  std::map<std::string, dbl::LevelRow> rows;
  for (const auto& f : r.block().fields) {
    const auto seg = split(f.key);
    if (seg[0] != "row") continue;
    if (seg.size() != 3) r.bad(f, "expected row.<k>.<part>");
    r.mark(f.key);
    auto [row, fresh] = rows.try_emplace(seg[1]);
    auto& lr = row->second;
    if (fresh) lr = dbl::LevelRow{0, Vec(d.n1), Vec(d.n2), Mat(d.n1, d.n2), Vec(d.n3), 0};
    const std::string& p = seg[2];
    if (p == "g00") lr.g00 = r.scalar(f, f.value);
    else if (p == "gy") lr.gy = r.vec(f, f.value, d.n1);
    else if (p == "gz") lr.gz = r.vec(f, f.value, d.n2);
    else if (p == "gyz") lr.gyz = r.mat(f, d.n1, d.n2);
    else if (p == "sigma") lr.sigma = r.vec(f, f.value, d.n3);
    else if (p == "value") lr.value = r.scalar(f, f.value);
    else r.bad(f, "unknown row part '" + p + "'");
  }
  if (rows.empty()) throw MalformedConstraint("level_set " + r.block().name + ": no rows");
  for (auto& [k, row] : rows) ls.rows.push_back(row);
  r.finish();
  return ls;
}

Value number(const Scalar& s) { return Value::number(s); }

Value vec_value(const Vec& v) {
  std::vector<Value> items;
  for (std::size_t i = 0; i < v.size(); ++i) items.push_back(number(v[i]));
  return Value::list(std::move(items));
}

Value poly_value(const Poly& p) {
  Value v;
  std::size_t used = 0;
  for (const auto& [e, c] : p.terms())
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) used = std::max(used, k + 1);
  Poly t(used);
  for (const auto& [e, c] : p.terms()) t.add_term(exact::Monomial(e.begin(), e.begin() + static_cast<long>(used)), c);
  v.expr = t;
  return v;
}

Value polyvec_value(const PolyVec& p) {
  std::vector<Value> items;
  for (const auto& q : p) items.push_back(poly_value(q));
  return Value::list(std::move(items));
}

Value polymat_value(const PolyMat& m) {
  std::vector<Value> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Value> row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_value(m(i, j)));
    rows.push_back(Value::list(std::move(row)));
  }
  return Value::list(std::move(rows));
}

void sort_fields(Block& b) {
  std::stable_sort(b.fields.begin(), b.fields.end(),
                   [&](const Field& x, const Field& y) { return field_less(b.kind, x.key, y.key); });
}

}  // namespace

Objects lower(const Document& doc) {
  Objects out;
  for (const auto& b : doc.blocks) {
    if (b.kind == "level_set") continue;
    Reader r(b);
    if (b.kind == "space") out.spaces.emplace(b.name, lower_space(r));
    else if (b.kind == "double") out.doubles.emplace(b.name, lower_double(r));
    else if (b.kind == "atlas") out.atlases.emplace(b.name, lower_atlas(r));
    else if (b.kind == "special_bundle") out.bundles.emplace(b.name, lower_bundle(r));
    else if (b.kind == "graded") out.graded.emplace(b.name, lower_graded(r));
  }
  for (const auto& b : doc.blocks) {
    if (b.kind != "level_set") continue;
    Reader r(b);
    out.level_sets.emplace(b.name, lower_level_set(r, out));
  }
  return out;
}

Block to_block(const std::string& name, const affine::BispecialRep& a) {
  Block b{"space", name, {}, 0, 0};
  b.fields.push_back({"hull_dim", number(Scalar(static_cast<long>(a.hull_dim())))});
  b.fields.push_back({"alpha", vec_value(a.alpha())});
  if (a.v()) b.fields.push_back({"v", vec_value(*a.v())});
  return b;
}

Block to_block(const std::string& name, const dbl::DoubleAffine& a) {
  Block b{"double", name, {}, 0, 0};
  const auto& d = a.d();
  b.fields.push_back({"n1", number(Scalar(static_cast<long>(d.n1)))});
  b.fields.push_back({"n2", number(Scalar(static_cast<long>(d.n2)))});
  b.fields.push_back({"n3", number(Scalar(static_cast<long>(d.n3)))});
  b.fields.push_back({"l1", vec_value(a.l1())});
  b.fields.push_back({"l2", vec_value(a.l2())});
  if (a.is_special() && d.n3 > 0) b.fields.push_back({"sigma", vec_value(a.sigma())});
  return b;
}

Block to_block(const std::string& name, const atlas::Atlas& a) {
  Block b{"atlas", name, {}, 0, 0};
  const auto& d = a.dims();
  const std::size_t m = a.base_dim();
  b.fields.push_back({"base", number(Scalar(static_cast<long>(m)))});
  b.fields.push_back({"n1", number(Scalar(static_cast<long>(d.n1)))});
  b.fields.push_back({"n2", number(Scalar(static_cast<long>(d.n2)))});
  b.fields.push_back({"n3", number(Scalar(static_cast<long>(d.n3)))});
  std::vector<Value> charts;
  for (const auto& c : a.charts()) charts.push_back(Value::name(c));
  b.fields.push_back({"charts", Value::list(std::move(charts))});
  const auto id = atlas::TransitionData::identity(m, d);
  for (const auto& [e, t] : a.edges()) {
    if (e.first == e.second) continue;
    const std::string pre = "edge." + e.first + "." + e.second + ".";
    auto put = [&](const std::string& key, bool nonempty, bool differs, Value v) {
      if (nonempty && differs) b.fields.push_back({pre + key, std::move(v)});
    };
    if (m > 0) {
      put("P", true, !(t.base.p() == Mat::identity(m)),
          polymat_value(PolyMat::from_constant(t.base.p(), 0)));
      put("q", true, !t.base.q().is_zero(), vec_value(t.base.q()));
    }
    put("alpha0", d.n1 > 0, !t.alpha0.is_zero(), polyvec_value(t.alpha0));
    put("alpha", d.n1 > 0, !(t.alpha == id.alpha), polymat_value(t.alpha));
    put("beta0", d.n2 > 0, !t.beta0.is_zero(), polyvec_value(t.beta0));
    put("beta", d.n2 > 0, !(t.beta == id.beta), polymat_value(t.beta));
    put("gamma00", d.n3 > 0, !t.gamma00.is_zero(), polyvec_value(t.gamma00));
    put("gamma_y", d.n3 > 0 && d.n1 > 0, !t.gamma_y.is_zero(), polymat_value(t.gamma_y));
    put("gamma_z", d.n3 > 0 && d.n2 > 0, !t.gamma_z.is_zero(), polymat_value(t.gamma_z));
    if (d.n3 > 0 && d.n1 > 0 && d.n2 > 0 && !t.gamma_yz.is_zero()) {
      std::vector<Value> slabs;
      for (std::size_t u = 0; u < d.n3; ++u) {
        PolyMat s(d.n1, d.n2, m);
        for (std::size_t i = 0; i < d.n1; ++i)
          for (std::size_t j = 0; j < d.n2; ++j) s(i, j) = t.gamma_yz(u, i, j);
        slabs.push_back(polymat_value(s));
      }
      b.fields.push_back({pre + "gamma_yz", Value::list(std::move(slabs))});
    }
    put("sigma", d.n3 > 0, !(t.sigma == id.sigma), polymat_value(t.sigma));
  }
  for (const auto& [e, pts] : a.samples()) {
    if (pts.empty() || m == 0) continue;
    std::vector<Value> items;
    for (const auto& p : pts) items.push_back(vec_value(p));
    b.fields.push_back({"sample." + e.first + "." + e.second, Value::list(std::move(items))});
  }
  sort_fields(b);
  return b;
}

Block to_block(const std::string& name, const naffine::NAffine& a) {
  Block b{"graded", name, {}, 0, 0};
  const auto& e = a.space();
  const std::size_t n = e.n();
  b.fields.push_back({"n", number(Scalar(static_cast<long>(n)))});
  for (const auto& [d, k] : e.dims())
    b.fields.push_back({"dim." + naffine::degree_string(d, n), number(Scalar(static_cast<long>(k)))});
  for (std::size_t k = 0; k < n; ++k)
    b.fields.push_back({"l." + naffine::degree_string(naffine::unit_degree(k), n), vec_value(a.l()[k])});
  if (a.sigma()) b.fields.push_back({"sigma", vec_value(*a.sigma())});
  sort_fields(b);
  return b;
}

}  // namespace daff::dsl
