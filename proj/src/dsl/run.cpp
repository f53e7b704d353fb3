#include "daff/dsl/run.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "daff/dsl/objects.hpp"
#include "daff/error.hpp"
#include "daff/naffine/bbl.hpp"
#include "daff/phase/duality.hpp"
#include "daff/phase/spaces.hpp"

namespace daff::dsl {

using exact::to_string;
using verify::Status;

const std::vector<std::string> kSuites = {"interchange",     "model-hull", "cocycle",     "duality-pairing",
                                          "hvh",             "phase-tower", "tau-kappa",  "naffine"};
const std::vector<std::string> kOps = {"hull",   "model",   "dual_v",  "dual_h",   "flip",     "adjoint",
                                       "hvh",    "dual",    "classify", "induce_v1", "induce_v2", "induce_model",
                                       "induce_hull", "phase", "contact", "bbl",  "tbar",     "affctg",
                                       "bbl_n",  "side_bases"};

bool Report::passed() const {
  return std::none_of(records.begin(), records.end(), [](const Record& r) { return r.status == Status::Fail; });
}

namespace {

std::string dims_string(const dbl::DecomposedDouble& d) {
  std::ostringstream os;
  os << "(" << d.n1 << ", " << d.n2 << ", " << d.n3 << ")";
  return os.str();
}

void add(Report& rep, const std::string& block, const verify::Checks& checks) {
  for (const auto& c : checks) rep.records.push_back({block + "/" + c.name, c.status, c.witness, c.seed, std::nullopt});
}

void add_detail(Report& rep, const std::string& name, std::string detail) {
  rep.records.push_back({name, Status::Pass, std::nullopt, 0, std::move(detail)});
}

std::string mask_string(unsigned mask) {
  switch (mask) {
    case phase::kNoMask: return "none";
    case phase::kChi1: return "chi1";
    case phase::kChi2: return "chi2";
    default: return "chi1+chi2";
  }
}

std::string describe(const phase::Constructed& c) {
  std::ostringstream os;
  os << "kind " << phase::to_string(c.kind) << "; mask " << mask_string(c.mask) << "; constraints";
  if (c.constraints.empty()) os << " none";
  for (const auto& k : c.constraints)
    os << " " << (k.on_pi ? "pi_" : "y^") << k.index << "=" << to_string(k.value);
  os << "; sides y [";
  for (std::size_t i = 0; i < c.side1.size(); ++i) os << (i ? ", " : "") << c.side1[i];
  os << "] pi [";
  for (std::size_t i = 0; i < c.side2.size(); ++i) os << (i ? ", " : "") << c.side2[i];
  os << "]; core " << (c.core_has_y ? "(p, y^v)" : "p") << "; dims " << dims_string(c.d) << "; l1 "
     << to_string(c.l1) << "; l2 " << to_string(c.l2);
  if (c.core_section) os << "; core section " << to_string(*c.core_section);
  return os.str();
}

void build_op(Report& rep, const Objects& obj, const std::string& op) {
  const bool on_double = op == "hull" || op == "model" || op == "dual_v" || op == "dual_h" || op == "flip" ||
                         op == "adjoint" || op == "hvh";
  const bool on_atlas = op.rfind("induce_", 0) == 0;
  const bool on_bundle = op == "phase" || op == "contact" || op == "bbl" || op == "tbar" || op == "affctg";
  if (on_double) {
    for (const auto& [name, a] : obj.doubles) {
      const std::string rec = name + "/" + op;
      if (op == "hull") {
        const dbl::Hull h = dbl::hull(a);
        add_detail(rep, rec, "dims " + dims_string(h.d) + "; A = {l1 = 1, l2 = 1}; l1 " + to_string(h.l1) +
                                 "; l2 " + to_string(h.l2));
      } else if (op == "model") {
        const dbl::ModelVV m = dbl::model_vv(a);
        add_detail(rep, rec, "dims " + dims_string(m.dims) + "; constraints l1 = 0 = l2; l1 " + to_string(m.l1) +
                                 "; l2 " + to_string(m.l2));
      } else if (!a.is_special()) {
        rep.records.push_back({rec, Status::Skip, "not special", 0, std::nullopt});
      } else {
        dbl::DoubleAffine r = a;
        if (op == "dual_v") r = dbl::special_dual_vertical(a);
        else if (op == "dual_h") r = dbl::special_dual_horizontal(a);
        else if (op == "flip") r = dbl::flip(a);
        else if (op == "adjoint") r = dbl::adjoint(a);
        else r = dbl::hvh_iso(a).hvh;
        Block b = to_block(name + "_" + op, r);
        add_detail(rep, rec, print(Document{{b}}));
        rep.produced.blocks.push_back(std::move(b));
      }
    }
  } else if (op == "dual") {
    for (const auto& [name, a] : obj.spaces) {
      if (!a.is_special()) {
        rep.records.push_back({name + "/dual", Status::Skip, "not special", 0, std::nullopt});
        continue;
      }
      Block b = to_block(name + "_dual", affine::special_dual(a));
      add_detail(rep, name + "/dual", print(Document{{b}}));
      rep.produced.blocks.push_back(std::move(b));
    }
  } else if (op == "classify") {
    for (const auto& [name, ls] : obj.level_sets) {
      const auto c = dbl::classify_level_set(ls.d, ls.rows);
      std::string w = dbl::to_string(c.verdict) + ": " + c.reason;
      if (c.y) w += "; y " + to_string(*c.y);
      if (c.z) w += "; z " + to_string(*c.z);
      add_detail(rep, name + "/classify", w);
    }
  } else if (on_atlas) {
    for (const auto& [name, a] : obj.atlases) {
      atlas::TransitionData (*f)(const atlas::TransitionData&) =
          op == "induce_v1"      ? atlas::induce_v1
          : op == "induce_v2"    ? atlas::induce_v2
          : op == "induce_model" ? atlas::induce_model
                                 : atlas::induce_hull;
      const atlas::Atlas r = a.map(f);
      Block b = to_block(name + "_" + op.substr(7), atlas::Atlas(r.base_dim(), r.edges().begin()->second.dims(),
                                                                 r.charts(), r.edges(), r.samples()));
      add_detail(rep, name + "/" + op, print(Document{{b}}));
      rep.produced.blocks.push_back(std::move(b));
    }
  } else if (on_bundle) {
    for (const auto& [name, sb] : obj.bundles) {
      const std::string rec = name + "/" + op;
      if (op == "tbar") {
        const auto xz = phase::tbar_x_z(sb.e);
        std::ostringstream os;
        os << "base (x, y^inner) of dim " << sb.e.m + sb.e.inner().size() << "; fiber s = -y^" << sb.e.v
           << "; action (s, ds) -> (s + t, ds - t); X_Z model vector (" << to_string(xz.first) << ", "
           << to_string(xz.second) << ")";
        add_detail(rep, rec, os.str());
        continue;
      }
      const phase::SpaceKind kind = op == "phase"     ? phase::SpaceKind::PhaseP
                                    : op == "contact" ? phase::SpaceKind::ContactC
                                    : op == "bbl"     ? phase::SpaceKind::Bbl
                                                      : phase::SpaceKind::AffCtg;
      add_detail(rep, rec, describe(phase::build(kind, sb.e, sb.omega)));
    }
  } else if (op == "bbl_n" || op == "side_bases") {
    for (const auto& [name, a] : obj.graded) {
      const std::string rec = name + "/" + op;
      if (!a.is_special()) {
        rep.records.push_back({rec, Status::Skip, "not special", 0, std::nullopt});
        continue;
      }
      const naffine::Bbl b = naffine::bbl_n(a);
      if (op == "bbl_n") {
        Block blk = to_block(name + "_bbl", b.b);
        add_detail(rep, rec, print(Document{{blk}}));
        rep.produced.blocks.push_back(std::move(blk));
        continue;
      }
      const auto sides = naffine::side_bases(a, b, rep.seed, 5);
      std::ostringstream os;
      for (const auto& s : sides.sides)
        os << "side " << s.k + 1 << ": " << (s.is_a ? "A" : s.is_dual ? "dual over A_" + std::to_string(s.k + 1) : "?")
           << " (" << s.kept.size() << " coordinates); ";
      for (const auto& p : sides.pairs)
        os << "pair (" << p.i + 1 << "," << p.j + 1 << "): " << (p.vertical_matches && p.horizontal_matches && p.adjoint_pairing ? "ok" : "flagged") << "; ";
      std::string text = os.str();
      if (text.size() >= 2) text.resize(text.size() - 2);
      Record r{rec, sides.passed() ? Status::Pass : Status::Fail, std::nullopt, rep.seed, text};
      if (!sides.passed()) r.witness = sides.flags.front();
      rep.records.push_back(r);
    }
  }
  if (rep.records.empty()) rep.records.push_back({op, Status::Skip, "no block applies", 0, std::nullopt});
}

void verify_suite(Report& rep, const Objects& obj, const std::string& suite) {
  const std::uint64_t seed = rep.seed;
  const int trials = rep.trials;
  if (suite == "interchange") {
    for (const auto& [n, a] : obj.doubles) {
      add(rep, n, verify::check_interchange(a, seed, trials));
      add(rep, n, verify::check_common_fiber(a, seed, trials));
    }
  } else if (suite == "model-hull") {
    for (const auto& [n, a] : obj.doubles) add(rep, n, verify::check_model_hull(a, seed, trials));
    for (const auto& [n, a] : obj.atlases) add(rep, n, verify::check_atlas_hull(a));
  } else if (suite == "cocycle") {
    for (const auto& [n, a] : obj.atlases) add(rep, n, verify::check_cocycle(a));
  } else if (suite == "duality-pairing") {
    for (const auto& [n, a] : obj.doubles) add(rep, n, verify::check_duality(a, seed, trials));
    for (const auto& [n, a] : obj.spaces) add(rep, n, verify::check_affine_duality(a, seed, trials));
  } else if (suite == "hvh") {
    for (const auto& [n, a] : obj.doubles) add(rep, n, verify::check_hvh(a));
  } else if (suite == "phase-tower") {
    for (const auto& [n, b] : obj.bundles) add(rep, n, verify::check_phase_tower(b.e, b.omega, seed, trials));
  } else if (suite == "tau-kappa") {
    for (const auto& [n, b] : obj.bundles) add(rep, n, verify::check_tau_kappa(b.e, seed, trials));
  } else if (suite == "naffine") {
    for (const auto& [n, a] : obj.graded) add(rep, n, verify::check_naffine(a, seed, trials));
  }
  if (rep.records.empty()) rep.records.push_back({suite, Status::Skip, "no block applies", seed, std::nullopt});
}

}  // namespace

Report run(const Document& doc, const std::string& command, std::uint64_t seed, int trials) {
  Report rep{command, seed, trials, {}, {}};
  const auto colon = command.find(':');
  const std::string verb = command.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : command.substr(colon + 1);
  if (verb == "build" && std::find(kOps.begin(), kOps.end(), arg) == kOps.end())
    throw UnknownOp("'" + arg + "'");
  if (verb == "verify" && std::find(kSuites.begin(), kSuites.end(), arg) == kSuites.end())
    throw UnknownSuite("'" + arg + "'");
  if (verb != "check" && verb != "build" && verb != "verify") throw UnknownOp("command '" + command + "'");

  const Objects obj = lower(doc);
  if (verb == "check") {
    for (const auto& b : doc.blocks) rep.records.push_back({b.name + "/valid", Status::Pass, std::nullopt, 0, b.kind});
  } else if (verb == "build") {
    build_op(rep, obj, arg);
  } else {
    verify_suite(rep, obj, arg);
  }
  std::stable_sort(rep.records.begin(), rep.records.end(),
                   [](const Record& a, const Record& b) { return a.name < b.name; });
  return rep;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  std::size_t fails = 0;
  for (const auto& rec : r.records) {
    if (rec.status == Status::Fail) ++fails;
    std::string status = verify::to_string(rec.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    os << status << " " << rec.name;
    if (rec.status == Status::Fail) os << " [seed " << rec.seed << "]";
    os << "\n";
    if (rec.witness) os << "  witness: " << *rec.witness << "\n";
    if (rec.detail) {
      std::istringstream lines(*rec.detail);
      for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
    }
  }
  os << r.command << ": " << r.records.size() - fails << "/" << r.records.size() << " passed or skipped";
  if (r.command.rfind("verify:", 0) == 0) os << " (seed " << r.seed << ", trials " << r.trials << ")";
  os << "\n";
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["passed"] = r.passed();
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    nlohmann::ordered_json x;
    x["name"] = rec.name;
    x["status"] = verify::to_string(rec.status);
    if (rec.witness) x["witness"] = *rec.witness;
    x["seed"] = rec.seed;
    if (rec.detail) x["detail"] = *rec.detail;
    j["records"].push_back(x);
  }
  return j.dump(2) + "\n";
}

}  // namespace daff::dsl
