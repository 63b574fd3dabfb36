#include "artin/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iterator>
#include <mutex>
#include <random>
#include <sstream>

#include "artin/anfamily.hpp"
#include "artin/error.hpp"
#include "artin/htpair.hpp"
#include "artin/kernels.hpp"
#include "artin/serialize.hpp"

namespace artin {

namespace {

using nlohmann::json;

constexpr unsigned kMinN = 2;
constexpr unsigned kMaxN = 64;
constexpr std::size_t kOracleBound = 80;
constexpr int kExpSamples = 3;
constexpr int kOrbitSamples = 10;

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string n_text;
  std::string field_text = "q";
  std::string format = "text";
  std::uint64_t seed = 20240917;
  bool steps = false;
  double budget = 0;
  bool verbose = false;
  std::string functional;
  std::string file;

  unsigned n_lo = 0, n_hi = 0;
  Field field;
  Budget deadline;
  bool json() const { return format == "json"; }
};

unsigned parse_n(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    throw UsageError("--n expects an integer or a range a..b, got '" + s + "'");
  }
  if (used != s.size()) throw UsageError("--n expects an integer or a range a..b, got '" + s + "'");
  if (v < kMinN || v > kMaxN) {
    throw UsageError("--n must lie in [" + std::to_string(kMinN) + ", " + std::to_string(kMaxN) + "]");
  }
  return static_cast<unsigned>(v);
}

void finish_config(RunConfig& cfg, const std::string& default_n) {
  const std::string n = cfg.n_text.empty() ? default_n : cfg.n_text;
  if (n.empty()) throw UsageError("--n is required");
  if (const auto dots = n.find(".."); dots != std::string::npos) {
    cfg.n_lo = parse_n(n.substr(0, dots));
    cfg.n_hi = parse_n(n.substr(dots + 2));
    if (cfg.n_lo > cfg.n_hi) throw UsageError("empty --n range " + n);
  } else {
    cfg.n_lo = cfg.n_hi = parse_n(n);
  }
  try {
    cfg.field = Field::parse(cfg.field_text);
  } catch (const Error& e) {
    throw UsageError(std::string("--field: ") + e.what());
  }
}

std::string field_name(const Field& f) { return f.is_rational() ? "q" : f.to_string(); }

std::string join_monomials(const AnPresentation& P, const std::vector<Monomial>& ms) {
  std::string s;
  for (const auto& m : ms) s += (s.empty() ? "" : ", ") + P.context()->render(m);
  return s;
}

// --- verify -----------------------------------------------------------------

struct Check {
  std::string name;
  bool pass;
  bool informational;
  std::string detail;
};

struct NReport {
  unsigned n;
  std::size_t dimension = 0;
  std::vector<Check> checks;
  std::vector<StepReport> steps;
  std::string error;

  bool pass() const {
    if (!error.empty()) return false;
    for (const auto& c : checks)
      if (!c.pass && !c.informational) return false;
    for (const auto& s : steps)
      if (!s.all_pass()) return false;
    return true;
  }
};

class Progress {
 public:
  Progress(std::ostream& err, bool on) : err_(err), on_(on) {}
  void line(unsigned n, const std::string& text) {
    if (!on_) return;
    std::lock_guard lock(mutex_);
    err_ << "[n=" << n << "] " << text << '\n' << std::flush;
  }

 private:
  std::ostream& err_;
  bool on_;
  std::mutex mutex_;
};

NReport verify_one(unsigned n, const RunConfig& cfg, Progress& progress) {
  NReport r;
  r.n = n;
  auto add = [&](std::string name, bool pass, std::string detail, bool informational = false) {
    progress.line(n, (informational ? "INFO " : pass ? "PASS " : "FAIL ") + name + ": " + detail);
    r.checks.push_back({std::move(name), pass, informational, std::move(detail)});
  };

  const AnPresentation P = AnPresentation::build(n, cfg.field);
  const auto& A = *P.algebra();
  r.dimension = P.dimension();
  const bool caveat = P.hypothesis_violated();

  {
    const auto G = buchberger(P.generators());
    const std::vector<Monomial> expected{Monomial{0, 2 * n + 3}, Monomial{1, n + 3}, Monomial{n, 2},
                                         Monomial{2 * n + 1, 0}};
    std::vector<Polynomial> with_f4 = P.generators();
    with_f4.push_back(P.f4());
    const bool ok = G.certified() && G.leading_monomials() == expected && is_groebner(with_f4) &&
                    ideal_member(P.f4(), G);
    add("groebner", ok, "leading monomials " + join_monomials(P, G.leading_monomials()));
  }
  add("cofactors", cofactor_identity(P), "f4 = " + P.f4().render() + " = c1*f1 + c2*f2 + c3*f3");
  add("dimension", P.dimension() == AnPresentation::expected_dimension(n),
      std::to_string(P.dimension()) + " (expected " + std::to_string(AnPresentation::expected_dimension(n)) + ")");
  {
    const auto rel = verify_relations(P);
    std::size_t held = 0;
    std::string failed;
    for (const auto& c : rel) {
      if (c.pass) ++held;
      else failed += "; fails: " + c.label;
    }
    add("relations", held == rel.size(), std::to_string(held) + " of " + std::to_string(rel.size()) + " hold" + failed);
  }
  {
    const auto s = socle_report(P);
    add("socle", s.matches_expected && s.gorenstein,
        "dim " + std::to_string(s.socle.dim()) + ", spanned by y^" + std::to_string(2 * n + 2) +
            (s.matches_expected ? "" : " (mismatch)") + (s.gorenstein ? ", Gorenstein" : ", not Gorenstein"));
  }
  cfg.deadline.check("verify");
  {
    const auto space = derivation_space(P);
    if (A.dimension() <= kOracleBound) {
      const auto oracle = derivation_full_oracle(A, kOracleBound);
      const bool agree = derivation_spaces_agree(P, space, oracle);
      add("derivations", agree,
          "dim " + std::to_string(space.size()) +
              (agree ? ", oracle agrees" : ", oracle disagrees (dim " + std::to_string(oracle.size()) + ")"));
    } else {
      add("derivations", true,
          "dim " + std::to_string(space.size()) + ", oracle skipped above dimension " + std::to_string(kOracleBound),
          true);
    }
    const auto ann = derivations_annihilate(P, space);
    const bool ok = ann.annihilated && ann.representatives_agree;
    add("annihilation", ok,
        std::string(ann.annihilated ? "every derivation kills y^" : "some derivation moves y^") +
            std::to_string(2 * n + 1) + (ann.representatives_agree ? ", both representatives agree" :
                                                                      ", representatives disagree") +
            (caveat ? " (hypothesis on char K fails)" : ""),
        caveat);
  }
  cfg.deadline.check("verify");
  {
    const auto flip = verify_automorphism(P, sign_flip(P));
    const auto swap = verify_automorphism(P, swap_map(P));
    const Scalar expected_gamma(cfg.field, (n * (2 * n + 1)) % 2 == 0 ? 1L : -1L);
    const bool ok = flip.valid && flip.gamma && *flip.gamma == expected_gamma && flip.line_preserved &&
                    flip.exponent_condition && !swap.valid;
    std::string detail = "sign flip ";
    detail += flip.valid ? "valid" : "invalid";
    if (flip.gamma) detail += ", gamma = " + flip.gamma->to_string();
    detail += flip.line_preserved ? ", line preserved" : ", line moved";
    detail += flip.exponent_condition ? ", exponent condition holds" : ", exponent condition fails";
    detail += swap.valid ? "; swap accepted" : "; swap rejected";
    if (!flip.finding.empty()) detail += "; " + flip.finding;
    add("automorphisms", ok, detail, caveat && flip.valid && !swap.valid);
  }
  if (cfg.field.is_rational()) {
    std::mt19937_64 rng(cfg.seed + n);
    std::uniform_int_distribution<long> coef(-3, 3);
    const auto space = derivation_space(P);
    int good = 0;
    for (int i = 0; i < kExpSamples; ++i) {
      AlgebraElement dx = A.zero(), dy = A.zero();
      for (const auto& d : space) {
        const Scalar c(cfg.field, coef(rng));
        dx += d.dx.scaled(c);
        dy += d.dy.scaled(c);
      }
      const auto rep = verify_automorphism(P, compose_maps(P, exponential(P, {dx, dy}), sign_flip(P)));
      if (rep.valid && rep.line_preserved && rep.exponent_condition) ++good;
    }
    add("exp-sample", good == kExpSamples,
        std::to_string(good) + " of " + std::to_string(kExpSamples) + " random exp(delta) o flip preserve the line");
  }
  if (cfg.steps) {
    for (auto theorem : {StepReport::Theorem::Automorphisms, StepReport::Theorem::Derivations}) {
      r.steps.push_back(verify_proof_steps(P, theorem, cfg.deadline));
      for (const auto& s : r.steps.back().steps) {
        progress.line(n, "STEP " + std::to_string(s.index) + (s.pass ? ": PASS" : ": FAIL"));
      }
    }
  }
  return r;
}

std::string theorem_name(StepReport::Theorem t) {
  return t == StepReport::Theorem::Automorphisms ? "automorphisms" : "derivations";
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.steps) {
    if (cfg.n_hi > 3) throw UsageError("--steps supports n <= 3 only");
    if (!cfg.field.is_rational()) throw UsageError("--steps requires --field q");
  }
  Progress progress(err, cfg.verbose);
  const std::size_t count = cfg.n_hi - cfg.n_lo + 1;
  const auto reports = indexed_map(
      count,
      [&](std::size_t i) {
        const unsigned n = cfg.n_lo + static_cast<unsigned>(i);
        try {
          return verify_one(n, cfg, progress);
        } catch (const BudgetExceeded& e) {
          NReport r;
  r.n = n;
          r.error = e.what();
          return r;
        }
      },
      !cfg.verbose);

  bool all = true;
  for (const auto& r : reports) all = all && r.pass();

  if (cfg.json()) {
    json results = json::array();
    for (const auto& r : reports) {
      json checks = json::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"informational", c.informational}, {"detail", c.detail}});
      }
      json j{{"n", r.n}, {"dimension", r.dimension}, {"checks", checks}, {"pass", r.pass()}};
      if (!r.steps.empty()) {
        j["steps"] = json::array();
        for (const auto& s : r.steps) j["steps"].push_back(s.to_json());
      }
      if (!r.error.empty()) j["error"] = r.error;
      results.push_back(std::move(j));
    }
    out << json{{"command", "verify"}, {"field", field_name(cfg.field)}, {"results", results}, {"pass", all}}.dump(2)
        << '\n';
  } else {
    for (const auto& r : reports) {
      out << "== n = " << r.n << ", field " << field_name(cfg.field) << " ==\n";
      for (const auto& c : r.checks) {
        out << (c.informational ? "INFO " : c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      }
      for (const auto& s : r.steps) {
        out << "-- proof steps (" << theorem_name(s.theorem) << ") --\n" << s.text();
      }
      if (!r.error.empty()) out << "FAIL budget: " << r.error << '\n';
    }
    out << "verify: " << (all ? "all checks passed" : "FAILED") << " for n = " << cfg.n_lo;
    if (cfg.n_hi != cfg.n_lo) out << ".." << cfg.n_hi;
    out << '\n';
  }
  return all ? kSuccess : kVerificationFailed;
}

// --- hypersurface -----------------------------------------------------------

int cmd_hypersurface(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_lo != cfg.n_hi) throw UsageError("hypersurface takes a single --n");
  if (cfg.functional.empty()) throw UsageError("--functional is required");
  const AnPresentation P = AnPresentation::build(cfg.n_lo, cfg.field);

  const auto F = [&] {
    try {
      return HPairFunctional::parse(P.algebra(), cfg.functional);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--functional: ") + e.what());
    } catch (const DomainError& e) {
      throw UsageError(std::string("--functional: ") + e.what());
    }
  }();
  if (!F.complementary()) throw UsageError("functional " + cfg.functional + " is not complementary");
  if (!F.generating()) throw UsageError("functional " + cfg.functional + " has a kernel that does not generate");

  const auto eq = [&] {
    try {
      return hypersurface_equation(F, ExpansionRoute::StructureTable, cfg.deadline);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();

  std::mt19937_64 rng(cfg.seed);
  int on = 0;
  for (int i = 0; i < kOrbitSamples; ++i) on += point_membership(F, eq, random_kernel_point(F, rng));

  if (cfg.json()) {
    out << json{{"command", "hypersurface"},
                {"n", cfg.n_lo},
                {"field", field_name(cfg.field)},
                {"functional", F.as_polynomial().render()},
                {"degree", eq.degree},
                {"polynomial", to_json(eq.polynomial)},
                {"orbit_check", {{"seed", cfg.seed}, {"points", kOrbitSamples}, {"on_hypersurface", on}}}}
                   .dump(2)
        << '\n';
  } else {
    out << "d=" << eq.degree << '\n';
    out << eq.polynomial.render() << '\n';
    out << "orbit check: " << on << " of " << kOrbitSamples << " random exp(u), u in ker pi, lie on X\n";
  }
  return on == kOrbitSamples ? kSuccess : kVerificationFailed;
}

// --- derivations -------------------------------------------------------------

int cmd_derivations(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_lo != cfg.n_hi) throw UsageError("derivations takes a single --n");
  const AnPresentation P = AnPresentation::build(cfg.n_lo, cfg.field);
  const auto space = derivation_space(P);
  if (cfg.json()) {
    json basis = json::array();
    for (const auto& d : space) basis.push_back({{"dx", to_json(d.dx.to_polynomial())}, {"dy", to_json(d.dy.to_polynomial())}});
    out << json{{"command", "derivations"},
                {"n", cfg.n_lo},
                {"field", field_name(cfg.field)},
                {"dimension", space.size()},
                {"basis", basis}}
                   .dump(2)
        << '\n';
  } else {
    out << "dim Der = " << space.size() << '\n';
    for (std::size_t i = 0; i < space.size(); ++i) {
      out << '[' << i + 1 << "] D_x = " << space[i].dx.to_polynomial().render()
          << ", D_y = " << space[i].dy.to_polynomial().render() << '\n';
    }
  }
  return kSuccess;
}

// --- groebner ----------------------------------------------------------------

int cmd_groebner(const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.file);
  if (!in) throw UsageError("cannot read " + cfg.file);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  IdealFile ideal;
  try {
    ideal = parse_ideal_file(text, cfg.field);
  } catch (const Error& e) {
    throw UsageError(cfg.file + ": " + e.what());
  }
  if (ideal.generators.empty()) throw UsageError(cfg.file + ": no generators");
  const auto G = buchberger(ideal.generators);
  if (cfg.json()) {
    json basis = json::array();
    for (const auto& g : G.elements()) basis.push_back(to_json(g));
    out << json{{"command", "groebner"},
                {"field", field_name(cfg.field)},
                {"vars", ideal.context->names()},
                {"basis", basis}}
                   .dump(2)
        << '\n';
  } else {
    for (const auto& g : G.elements()) out << g.render() << '\n';
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on the local algebras A_n and their H-pairs", "artin"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool budget_given = false;

  auto common = [&](CLI::App* sub, bool with_n) {
    if (with_n) sub->add_option("--n", cfg.n_text, "n or a range a..b, within [2, 64]");
    sub->add_option("--field", cfg.field_text, "q or fp:P")->capture_default_str();
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "runtime budget in seconds")
        ->each([&](const std::string&) { budget_given = true; });
    sub->add_flag("--verbose", cfg.verbose, "stream progress to stderr");
  };

  auto* verify = app.add_subcommand("verify", "check the A_n family claims for each n");
  common(verify, true);
  verify->add_flag("--steps", cfg.steps, "also replay the proof steps (n <= 3)");
  auto* hyper = app.add_subcommand("hypersurface", "hypersurface equation of an H-pair on A_n");
  common(hyper, true);
  hyper->add_option("--functional", cfg.functional, "linear form in the z-names, e.g. z_05+z_06");
  auto* ders = app.add_subcommand("derivations", "row-echelon basis of Der A_n");
  common(ders, true);
  auto* gb = app.add_subcommand("groebner", "reduced Groebner basis of an ideal file");
  common(gb, false);
  gb->add_option("file", cfg.file, "ideal file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (budget_given) {
      if (!(cfg.budget > 0)) throw UsageError("--budget must be positive");
      cfg.deadline = Budget(cfg.budget);
    }
    if (verify->parsed()) {
      finish_config(cfg, "2..6");
      return cmd_verify(cfg, out, err);
    }
    if (hyper->parsed()) {
      finish_config(cfg, "");
      return cmd_hypersurface(cfg, out);
    }
    if (ders->parsed()) {
      finish_config(cfg, "");
      return cmd_derivations(cfg, out);
    }
    finish_config(cfg, "2");
    return cmd_groebner(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace artin
