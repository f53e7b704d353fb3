#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "daff/dsl/objects.hpp"
#include "daff/dsl/run.hpp"
#include "daff/error.hpp"
#include "daff/verify/atlas_generators.hpp"
#include "daff/verify/generators.hpp"

using namespace daff;
using namespace daff::dsl;
using exact::Poly;
using exact::Scalar;
using exact::Vec;
using verify::Rng;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(DAFF_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = daff::cli::run(args, o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

std::string path(const std::string& name) { return std::string(DAFF_FIXTURE_DIR) + "/" + name; }

// Random polynomial expression text together with the polynomial it denotes.
std::pair<std::string, Poly> random_expr(Rng& rng, std::size_t nv, int depth) {
  if (depth == 0 || rng.uniform(0, 3) == 0) {
    if (nv > 0 && rng.coin()) {
      const std::size_t v = rng.index(nv);
      return {"x" + std::to_string(v + 1), Poly::variable(nv, v)};
    }
    const Scalar s = rng.scalar(7);
    return {"(" + exact::to_string(s) + ")", Poly::constant(nv, s)};
  }
  auto [a, pa] = random_expr(rng, nv, depth - 1);
  auto [b, pb] = random_expr(rng, nv, depth - 1);
  switch (rng.uniform(0, 3)) {
    case 0: return {"(" + a + " + " + b + ")", pa + pb};
    case 1: return {"(" + a + " - " + b + ")", pa - pb};
    case 2: return {a + "*" + b, pa * pb};
    default: return {"(" + a + ")^2", pa * pa};
  }
}

}  // namespace

TEST_SUITE("dsl") {

TEST_CASE("minimal double block") {
  Document doc = parse(fixture("minimal.daff"));
  REQUIRE(doc.blocks.size() == 1);
  CHECK(doc.blocks[0].kind == "double");
  Objects o = lower(doc);
  REQUIRE(o.doubles.count("A"));
  const auto& a = o.doubles.at("A");
  CHECK(a.is_special());
  CHECK(a.d() == dbl::DecomposedDouble{1, 1, 1});
  CHECK(a.sigma() == Vec{Scalar(1)});
}

TEST_CASE("expressions") {
  Document doc = parse("space S { hull_dim = 2*(x1 + 1)^2 - x2/3 + -1/2; }");
  const Value& v = doc.blocks[0].fields[0].value;
  Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
  Poly one = Poly::constant(2, 1);
  Poly expect = Scalar(2) * ((x1 + one) * (x1 + one)) - Scalar(1, 3) * x2 - Scalar(1, 2) * one;
  CHECK(v.expr == expect);
  // Variables that cancel do not count.
  CHECK(parse("space S { a = x3 - x3 + 4/6; }").blocks[0].fields[0].value.expr ==
        Poly::constant(0, Scalar(2, 3)));

  Rng rng(301);
  for (int k = 0; k < 40; ++k) {
    const std::size_t nv = rng.uniform(1, 3);
    auto [text, p] = random_expr(rng, nv, 3);
    Document d = parse("atlas T { f = " + text + "; }");
    Poly got = d.blocks[0].fields[0].value.expr.extend(nv);
    CHECK(got == p);
  }
}

TEST_CASE("parse errors carry a location") {
  try {
    parse(fixture("parse_error.daff"));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 42);
    CHECK(std::string(e.what()).find("'l1'") != std::string::npos);
  }
  auto fails_at = [](const std::string& text, std::size_t line, std::size_t col) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.col() == col);
      return;
    }
    FAIL("no error for: " << text);
  };
  fails_at("double A {\n  n1 = 1\n}", 3, 1);
  fails_at("dubble A { }", 1, 1);
  fails_at("double A { n1 = 1 / 0; }", 1, 19);
  fails_at("double A { n1 = 1 / x1; }", 1, 19);
  fails_at("double A { n1 = $; }", 1, 17);
  fails_at("double A { n1 = 1;", 1, 19);
  fails_at("double A { n1 = x1 + b; }", 1, 22);
  try {
    parse("double");
  } catch (const ParseError& e) {
    CHECK(e.expected() == std::vector<std::string>{"block name"});
  }
}

TEST_CASE("names and references") {
  CHECK_THROWS_AS(parse("double A { } double A { }"), DuplicateName);
  CHECK_THROWS_AS(parse("double A { n1 = 1; n1 = 2; }"), DuplicateName);
  CHECK_THROWS_AS(lower(parse("level_set L { over = Nope; row.1.value = 1; }")), UnresolvedReference);
  CHECK_THROWS_AS(lower(parse("atlas T { base = 0; n1 = 1; n2 = 1; n3 = 1; charts = [a]; "
                              "edge.a.z.alpha = [[1]]; }")),
                  UnresolvedReference);
  CHECK_THROWS_AS(lower(parse("double A { n1 = 1; n2 = 1; n3 = 0; l1 = [1]; l2 = [1]; colour = 3; }")),
                  MalformedConstraint);
  CHECK_THROWS_AS(lower(parse("double A { n1 = 1; n2 = 1; n3 = 0; l1 = [1, 2]; l2 = [1]; }")),
                  MalformedConstraint);
  CHECK_THROWS_AS(lower(parse("double A { n1 = 1; n2 = 1; n3 = 0; l1 = [0]; l2 = [1]; }")), ZeroFunctional);
  CHECK_THROWS_AS(lower(parse("graded G { n = 2; dim.10 = 1; dim.01 = 1; l.10 = [1]; }")),
                  MalformedConstraint);
  CHECK_THROWS_AS(lower(parse("graded G { n = 2; dim.1 = 1; }")), MalformedConstraint);
  CHECK_THROWS_AS(lower(parse("special_bundle P { m = 1; n = 1; omega = [x1]; }")), MalformedConstraint);
}

TEST_CASE("fixture corpus round trips") {
  for (const char* f : {"pass.daff", "cocycle_perturbed.daff", "minimal.daff"}) {
    Document doc = parse(fixture(f));
    const std::string text = print(doc);
    CHECK(parse(text) == doc);
    CHECK(print(parse(text)) == text);
  }
}

TEST_CASE("random documents round trip") {
  Rng rng(302);
  for (int k = 0; k < 30; ++k) {
    Document doc;
    doc.blocks.push_back(to_block("D", verify::random_double_affine(rng, 3, rng.coin())));
    const std::size_t m = rng.uniform(1, 2);
    atlas::FiberDims d{std::size_t(rng.uniform(1, 2)), std::size_t(rng.uniform(1, 2)), std::size_t(rng.uniform(1, 2))};
    doc.blocks.push_back(to_block("T", verify::random_atlas3(rng, m, d, 2)));
    const std::size_t n = rng.uniform(1, 3);
    std::map<naffine::Degree, std::size_t> dims;
    for (naffine::Degree g = 1; g <= naffine::full_degree(n); ++g) dims[g] = rng.uniform(1, 2);
    naffine::GradedSpace e(n, dims);
    std::vector<Vec> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(rng.nonzero_vec(e.dim(naffine::unit_degree(i))));
    doc.blocks.push_back(to_block("G", naffine::NAffine(e, l, rng.nonzero_vec(e.dim(naffine::full_degree(n))))));
    const std::string text = print(doc);
    Document back = parse(text);
    CHECK(back == doc);
    // The lowered objects agree with the originals.
    Objects o = lower(back);
    CHECK(to_block("D", o.doubles.at("D")) == doc.blocks[0]);
    CHECK(to_block("G", o.graded.at("G")) == doc.blocks[2]);
    CHECK(to_block("T", o.atlases.at("T")) == doc.blocks[1]);
  }
}

TEST_CASE("reports") {
  Document pass = parse(fixture("pass.daff"));
  for (const std::string& s : kSuites) {
    Report a = run(pass, "verify:" + s, 7, 10), b = run(pass, "verify:" + s, 7, 10);
    CHECK(render_json(a) == render_json(b));
    CHECK(a.passed());
    CHECK(std::is_sorted(a.records.begin(), a.records.end(),
                         [](const Record& x, const Record& y) { return x.name < y.name; }));
  }
  Report bad = run(parse(fixture("cocycle_perturbed.daff")), "verify:cocycle", 0, 1);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.records.front().witness);
  CHECK(bad.records.front().witness->find("gamma_yz[0][0][0]") != std::string::npos);

  Report model = run(pass, "build:model", 0, 1);
  bool found = false;
  for (const auto& r : model.records)
    if (r.name == "A/model") found = r.detail && r.detail->find("l1 = 0 = l2") != std::string::npos;
  CHECK(found);

  Report cls = run(pass, "build:classify", 0, 1);
  REQUIRE(cls.records.size() == 2);
  CHECK(cls.records[1].name == "XY/classify");
  CHECK(cls.records[1].detail->rfind("NotSubbundle", 0) == 0);
  CHECK(cls.records[0].detail->rfind("Subbundle", 0) == 0);

  Report dual = run(pass, "build:dual_v", 0, 1);
  CHECK(lower(dual.produced).doubles.at("B_dual_v") ==
        dbl::special_dual_vertical(lower(pass).doubles.at("B")));

  CHECK_THROWS_AS(run(pass, "verify:nothing"), UnknownSuite);
  CHECK_THROWS_AS(run(pass, "build:nothing"), UnknownOp);
}

TEST_CASE("command line exit codes") {
  CHECK(run_cli({"check", path("pass.daff")}) == 0);
  CHECK(run_cli({"verify", "--suite", "cocycle", path("pass.daff")}) == 0);
  std::string out;
  CHECK(run_cli({"verify", "--suite", "cocycle", "--format", "json", path("cocycle_perturbed.daff")}, &out) == 1);
  CHECK(out.find("\"status\": \"fail\"") != std::string::npos);
  CHECK(run_cli({"check", path("parse_error.daff")}, &out) == 2);
  CHECK(out.find("ParseError at 1:42") != std::string::npos);
  CHECK(run_cli({"verify", "--suite", "bogus", path("pass.daff")}) == 2);
  CHECK(run_cli({"build", "--op", "bogus", path("pass.daff")}) == 2);
  CHECK(run_cli({"check", path("missing.daff")}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  std::string a, b;
  run_cli({"verify", "--suite", "naffine", "--seed", "5", "--trials", "3", path("pass.daff")}, &a);
  run_cli({"verify", "--suite", "naffine", "--seed", "5", "--trials", "3", path("pass.daff")}, &b);
  CHECK(a == b);
}

}
