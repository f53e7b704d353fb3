// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "daff/double/level_set.hpp"
#include "daff/dsl/run.hpp"
#include "daff/naffine/bbl.hpp"
#include "daff/verify/atlas_generators.hpp"
#include "daff/verify/generators.hpp"
#include "daff/verify/suites.hpp"

using namespace daff;
using verify::Checks;
using exact::Scalar;
using exact::Vec;
using verify::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

// First failing check, if any, becomes the note.
void absorb(Outcome& o, const Checks& c, const std::string& where) {
  if (!o.ok) return;
  for (const auto& r : c)
    if (!r.ok()) {
      o.ok = false;
      o.note = where + " " + r.name + ": " + r.witness.value_or("") + " (seed " + std::to_string(r.seed) + ")";
      return;
    }
}

void require(Outcome& o, bool cond, const std::string& what) {
  if (o.ok && !cond) {
    o.ok = false;
    o.note = what;
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome interchange() {
  Outcome o;
  Rng rng(1001);
  for (int k = 0; k < 100; ++k) {
    const auto a = verify::random_double_affine(rng, 3, rng.coin());
    absorb(o, verify::check_interchange(a, verify::derive_seed(1, k), 10), "instance " + std::to_string(k));
  }
  o.note = o.ok ? "100 instances x 10 tuples" : o.note;
  return o;
}

Outcome common_fiber() {
  Outcome o;
  Rng rng(1002);
  for (int k = 0; k < 50; ++k) {
    const auto a = verify::random_double_affine(rng, 3, false);
    absorb(o, verify::check_common_fiber(a, verify::derive_seed(2, k), 10), "fiber " + std::to_string(k));
  }
  o.note = o.ok ? "50 instances x 10 fibers" : o.note;
  return o;
}

atlas::FiberDims random_fiber(Rng& rng) {
  return {std::size_t(rng.uniform(1, 2)), std::size_t(rng.uniform(1, 2)), std::size_t(rng.uniform(1, 2))};
}

Outcome model_hull() {
  Outcome o;
  Rng rng(1003);
  for (int k = 0; k < 100; ++k) {
    const auto a = verify::random_double_affine(rng, 3, rng.coin());
    absorb(o, verify::check_model_hull(a, verify::derive_seed(3, k), 3), "instance " + std::to_string(k));
  }
  for (int k = 0; k < 20; ++k) {
    const auto at = verify::random_atlas3(rng, rng.uniform(1, 2), random_fiber(rng));
    absorb(o, verify::check_atlas_hull(at), "atlas " + std::to_string(k));
  }
  o.note = o.ok ? "100 instances, 20 atlases at (s,t) = (1,1) and (0,0)" : o.note;
  return o;
}

Outcome cocycle() {
  Outcome o;
  Rng rng(1004);
  for (int k = 0; k < 20; ++k) {
    const auto at = verify::random_atlas3(rng, rng.uniform(1, 2), random_fiber(rng), rng.uniform(1, 2));
    const auto base = atlas::cocycle_check(at);
    require(o, base.passed() && base.triangles_checked == 27, "generated atlas fails its own cocycle check");
    absorb(o, verify::check_cocycle(at), "atlas " + std::to_string(k));
  }
  o.note = o.ok ? "20 atlases; both induced atlases pass; V1 V2 = V2 V1" : o.note;
  return o;
}

Outcome duality() {
  Outcome o;
  Rng rng(1005);
  for (int k = 0; k < 100; ++k) {
    const auto a = verify::random_double_affine(rng, 3, true);
    absorb(o, verify::check_duality(a, verify::derive_seed(5, k), 1), "instance " + std::to_string(k));
  }
  o.note = o.ok ? "100 special instances" : o.note;
  return o;
}

Outcome hvh() {
  Outcome o;
  Rng rng(1006);
  int count = 0;
  for (std::size_t n1 = 1; n1 <= 3; ++n1)
    for (std::size_t n2 = 1; n2 <= 3; ++n2)
      for (std::size_t n3 = 1; n3 <= 3; ++n3) {
        absorb(o, verify::check_hvh(verify::random_double_affine(rng, {n1, n2, n3}, true)),
               "dims " + std::to_string(n1) + std::to_string(n2) + std::to_string(n3));
        ++count;
      }
  o.note = o.ok ? std::to_string(count) + " dimension triples" : o.note;
  return o;
}

Outcome counterexamples() {
  Outcome o;
  const dbl::DecomposedDouble d{1, 1, 1};
  dbl::LevelRow xy{0, Vec(1), Vec(1), exact::Mat(1, 1), Vec(1), 1};
  xy.gyz(0, 0) = 1;
  const auto c1 = dbl::classify_level_set(d, {xy});
  require(o, c1.verdict == dbl::Verdict::NotSubbundle, "{xy = 1} not rejected");
  require(o, c1.y.has_value() || c1.z.has_value(), "{xy = 1} verdict has no witness");
  const Vec one{Scalar(1)};
  dbl::LevelRow sum{0, one, one, exact::Mat(1, 1), one, 1};
  require(o, dbl::classify_level_set(d, {sum}).verdict == dbl::Verdict::Subbundle, "{x + y + z = 1} rejected");
  if (o.ok) o.note = "{xy=1}: NotSubbundle (" + c1.reason + "); {x+y+z=1}: Subbundle";
  return o;
}

Outcome phase_tower() {
  Outcome o;
  Rng rng(1008);
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      std::optional<Vec> omega;
      if (m > 0) omega = rng.nonzero_vec(m);
      auto c = verify::check_phase_tower(phase::NormalForm::of(m, n), omega, verify::derive_seed(8, m * 4 + n), 20);
      for (const auto& r : c)
        require(o, !(m > 0 && r.status == verify::Status::Skip), "unexpected skip " + r.name);
      absorb(o, c, "m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
  o.note = o.ok ? "m <= 2, n <= 3" : o.note;
  return o;
}

Outcome tau_kappa() {
  Outcome o;
  int forms = 0;
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      absorb(o, verify::check_tau_kappa(phase::NormalForm::of(m, n), verify::derive_seed(9, m * 4 + n), 10),
             "m=" + std::to_string(m) + " n=" + std::to_string(n));
      ++forms;
    }
  o.note = o.ok ? std::to_string(forms * 10) + " adapted basis changes" : o.note;
  return o;
}

Outcome thm_side_bases() {
  Outcome o;
  Rng rng(1010);
  int instances = 0;
  for (std::size_t n : {2u, 3u})
    for (int k = 0; k < 10; ++k) {
      std::map<naffine::Degree, std::size_t> dims;
      for (naffine::Degree g = 1; g <= naffine::full_degree(n); ++g) dims[g] = rng.uniform(1, 2);
      naffine::GradedSpace e(n, dims);
      std::vector<Vec> l;
      for (std::size_t i = 0; i < n; ++i) l.push_back(rng.nonzero_vec(e.dim(naffine::unit_degree(i))));
      naffine::NAffine a(e, l, rng.nonzero_vec(e.dim(naffine::full_degree(n))));
      const auto r = naffine::side_bases(a, naffine::bbl_n(a), verify::derive_seed(10, instances), 5);
      require(o, r.sides.size() == n + 1, "wrong number of side bases");
      require(o, r.sides.back().is_a, "last side base is not A");
      for (std::size_t s = 0; s < n; ++s) require(o, r.sides[s].is_dual, "side base is not a dual");
      require(o, r.pairs.size() == n * (n - 1) / 2, "missing pair checks");
      require(o, r.passed(), r.flags.empty() ? "" : r.flags.front());
      ++instances;
    }
  o.note = o.ok ? std::to_string(instances) + " instances, all pairs checked" : o.note;
  return o;
}

Outcome dsl_checks(const std::filesystem::path& dir) {
  Outcome o;
  int corpus = 0;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".daff") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    if (p.filename() == "parse_error.daff") continue;
    const auto doc = dsl::parse(slurp(p));
    const std::string text = dsl::print(doc);
    require(o, dsl::parse(text) == doc && dsl::print(dsl::parse(text)) == text,
            "round trip fails on " + p.filename().string());
    ++corpus;
  }
  const auto pass = dsl::parse(slurp(dir / "pass.daff"));
  for (const auto& s : dsl::kSuites)
    require(o, dsl::render_json(dsl::run(pass, "verify:" + s, 3, 5)) ==
                   dsl::render_json(dsl::run(pass, "verify:" + s, 3, 5)),
            "report for " + s + " is not deterministic");
  auto code = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };
  require(o, code({"verify", "--suite", "interchange", (dir / "pass.daff").string()}) == 0, "pass fixture exit code");
  require(o, code({"verify", "--suite", "cocycle", (dir / "cocycle_perturbed.daff").string()}) == 1,
          "perturbed fixture exit code");
  require(o, code({"check", (dir / "parse_error.daff").string()}) == 2, "parse-error fixture exit code");
  o.note = o.ok ? std::to_string(corpus) + " fixtures round trip; exit codes 0/1/2" : o.note;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path fixtures = argc > 1 ? argv[1] : DAFF_FIXTURE_DIR;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"interchange law", interchange},
      {"aff1 = aff2 on common fibers", common_fiber},
      {"hull and model", model_hull},
      {"cocycle functoriality", cocycle},
      {"duality pairing", duality},
      {"HVH isomorphism", hvh},
      {"level-set counterexamples", counterexamples},
      {"phase tower", phase_tower},
      {"tau and kappa", tau_kappa},
      {"side bases of the dual bundle", thm_side_bases},
      {"DSL round trip, determinism, exit codes", [&] { return dsl_checks(fixtures); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failed;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << i + 1 << " " << (o.ok ? "PASS" : "FAIL") << " " << criteria[i].first << ": " << o.note
         << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
