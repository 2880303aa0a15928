#include "qrforce/appendix.hpp"
#include "qrforce/certifier.hpp"
#include "qrforce/exceptional.hpp"
#include "qrforce/json_io.hpp"
#include "qrforce/permuton.hpp"
#include "qrforce/perturbation.hpp"
#include "qrforce/pipeline.hpp"
#include "qrforce/workers.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qrf;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

// Thrown for bad user input detected after CLI11 parsing.
struct UsageError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

void write_json(const Json &j, const std::string &path)
{
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json read_json_arg(const std::string &arg)
{
  if (!arg.empty() && arg.front() == '{')
    return Json::parse(arg);
  std::ifstream in(arg);
  if (!in)
    throw UsageError("cannot read " + arg);
  return Json::parse(in);
}

// "uniformK", an inline JSON object, or a JSON file.
StepPermuton permuton_arg(const std::string &arg)
{
  if (arg.rfind("uniform", 0) == 0) {
    const int k = std::stoi(arg.substr(7));
    if (k < 1)
      throw UsageError("uniform permuton needs k >= 1");
    return StepPermuton::uniform(k);
  }
  return permuton_from_json(read_json_arg(arg));
}

RatVector signs_arg(const std::string &s)
{
  RatVector a;
  for (char c : s) {
    if (c == '+')
      a.emplace_back(1);
    else if (c == '-')
      a.emplace_back(-1);
    else
      throw UsageError("signs must be a string of '+' and '-', got '" + s + "'");
  }
  if (a.size() != 4)
    throw UsageError("signs must have four characters");
  return a;
}

std::string join(const RatVector &v, const char *sep = " ")
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + to_string(v[i]);
  return s;
}

std::string inertia_text(const Inertia &in)
{
  return "(" + std::to_string(in.n_pos) + "," + std::to_string(in.n_zero) + "," + std::to_string(in.n_neg) + ")";
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Exact pattern-density, perturbation and certificate computations for 4-point permutation "
               "quadruples"};
  app.require_subcommand(1);

  // density
  auto *density = app.add_subcommand("density", "Exact density of a pattern");
  std::string sigma_s, perm_s, permuton_s;
  density->add_option("--sigma", sigma_s, "Pattern")->required();
  auto *perm_opt = density->add_option("--perm", perm_s, "Finite permutation");
  auto *permuton_opt = density->add_option("--permuton", permuton_s, "uniformK, JSON file or inline JSON");
  perm_opt->excludes(permuton_opt);

  // gradient / hessian
  auto *gradient = app.add_subcommand("gradient", "Gradient of h^n_sigma at 0");
  int n = 0;
  bool row_layout = false, as_json = false;
  gradient->add_option("--sigma", sigma_s, "Pattern")->required();
  gradient->add_option("--n", n, "Grid size")->required()->check(CLI::Range(2, 8));
  gradient->add_flag("--row-layout", row_layout, "Single row of entries separated by spaces");
  gradient->add_flag("--json", as_json, "JSON output");

  auto *hessian = app.add_subcommand("hessian", "Hessian of h^n_sigma at 0, or a signed combination");
  std::string quad_s, signs_s = "++++";
  auto *hs_sigma = hessian->add_option("--sigma", sigma_s, "Pattern");
  auto *hs_quad = hessian->add_option("--quad", quad_s, "Four comma-separated permutations");
  hs_sigma->excludes(hs_quad);
  hessian->add_option("--signs", signs_s, "Signs for --quad, e.g. ++--");
  hessian->add_option("--n", n, "Grid size")->required()->check(CLI::Range(2, 8));
  hessian->add_flag("--json", as_json, "JSON output");

  // certify
  auto *certify = app.add_subcommand("certify", "Non-forcing certificate for a quadruple");
  std::string n_s, out_s;
  certify->add_option("--quad", quad_s, "Four comma-separated permutations")->required();
  certify->add_option("--n", n_s, "Grid size or 'auto'")->required();
  certify->add_option("--signs", signs_s, "Coefficient signs, e.g. ++++ or ++--; omitted: kernel vector");
  certify->add_option("--json", out_s, "Write the evidence as JSON ('-' for stdout)");

  // dependence
  auto *dependence = app.add_subcommand("dependence", "Linear dependence of gradient polynomials");
  std::string perms_s;
  dependence->add_option("--perms", perms_s, "Comma-separated permutations")->required();

  // enumerate
  auto *enumerate = app.add_subcommand("enumerate", "All-one and zero-combination symmetry classes");
  enumerate->add_flag("--json", as_json, "JSON output");

  // exceptional
  auto *exceptional = app.add_subcommand("exceptional", "Exceptional quadruple witness construction");
  int case_id = 1;
  std::string emit_s, report_s;
  std::uint64_t trials = 0, seed = 1;
  exceptional->add_option("--case", case_id, "1 or 2")->required()->check(CLI::Range(1, 2));
  exceptional->add_option("--emit", emit_s, "Write the witness permuton and enclosure as JSON");
  exceptional->add_option("--report", report_s, "Write the lemma fact report as JSON");
  exceptional->add_option("--mc-trials", trials, "Monte Carlo samples at the witness (0 skips)");
  exceptional->add_option("--seed", seed, "Monte Carlo seed");

  // sample
  auto *sample = app.add_subcommand("sample", "Pattern frequencies of random permutations from a permuton");
  int m = 4;
  bool check = false;
  sample->add_option("--permuton", permuton_s, "uniformK, JSON file or inline JSON")->required();
  sample->add_option("--m", m, "Sample size")->check(CLI::Range(1, 8));
  sample->add_option("--trials", trials, "Number of samples")->required();
  sample->add_option("--seed", seed, "Seed")->required();
  sample->add_flag("--check", check, "Fail unless every frequency is within 5 standard errors of the exact density");
  sample->add_flag("--json", as_json, "JSON output");

  // reproduce
  auto *reproduce = app.add_subcommand("reproduce", "Run every verification and report");
  std::vector<std::string> only;
  reproduce->add_option("--only", only, "Restrict to sections")
    ->check(CLI::IsMember({"enumeration", "trichotomy", "certificates", "exceptional", "appendix"}));
  reproduce->add_option("--json", out_s, "Write the report as JSON ('-' for stdout)");
  reproduce->add_option("--mc-trials", trials, "Monte Carlo samples per exceptional case");
  reproduce->add_option("--seed", seed, "Monte Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (density->parsed()) {
      const Permutation sigma = parse_permutation(sigma_s);
      if (!perm_s.empty())
        std::cout << to_string(pattern_density_perm(sigma, parse_permutation(perm_s))) << "\n";
      else if (!permuton_s.empty())
        std::cout << to_string(density_in_step_permuton(sigma, permuton_arg(permuton_s))) << "\n";
      else
        throw UsageError("density needs --perm or --permuton");
      return exit_ok;
    }

    if (gradient->parsed()) {
      const auto g = h_gradient_at_zero(parse_permutation(sigma_s), n);
      if (as_json)
        std::cout << to_json(g).dump() << "\n";
      else if (row_layout)
        std::cout << join(g) << "\n";
      else
        for (std::size_t t = 0; t < g.size(); ++t)
          std::cout << "x" << t + 1 << " (Z^{" << t / (n - 1) + 1 << "," << t % (n - 1) + 1 << "}): " << to_string(g[t])
                    << "\n";
      return exit_ok;
    }

    if (hessian->parsed()) {
      RatMatrix h;
      if (!quad_s.empty())
        h = hessian_combination(parse_quadruple(quad_s), n, signs_arg(signs_s));
      else if (!sigma_s.empty())
        h = h_hessian_at_zero(parse_permutation(sigma_s), n);
      else
        throw UsageError("hessian needs --sigma or --quad");
      if (as_json) {
        std::cout << to_json(h).dump() << "\n";
      } else {
        for (std::size_t i = 0; i < h.rows(); ++i)
          std::cout << join(h.row(i)) << "\n";
        std::cout << "inertia " << inertia_text(inertia(h)) << "\n";
      }
      return exit_ok;
    }

    if (certify->parsed()) {
      const Quadruple q = parse_quadruple(quad_s);
      const RatVector alpha = certify->count("--signs") ? signs_arg(signs_s) : RatVector{};
      NonForcingEvidence ev;
      if (n_s == "auto") {
        ev = certify_auto(q, alpha);
      } else {
        int nn = 0;
        try {
          nn = std::stoi(n_s);
        } catch (const std::exception &) {
          throw UsageError("--n must be an integer or 'auto'");
        }
        ev = certify_non_forcing(q, nn, alpha);
      }
      const auto chk = check_evidence(ev);
      std::cout << "quadruple " << to_string(q) << "  n=" << ev.n << "  alpha=(" << join(ev.alpha, ",") << ")\n"
                << "full inertia " << inertia_text(ev.full_inertia) << "\n";
      if (ev.restricted_inertia)
        std::cout << "restricted inertia " << inertia_text(*ev.restricted_inertia) << "\n";
      if (ev.witness)
        std::cout << "w+ = (" << join(ev.witness->w_plus, ",") << ")  value " << to_string(ev.witness->value_plus)
                  << "\n"
                  << "w- = (" << join(ev.witness->w_minus, ",") << ")  value "
                  << to_string(ev.witness->value_minus) << "\n";
      std::cout << "verdict " << verdict_name(ev.verdict) << (chk.ok ? "" : "  (evidence check FAILED)") << "\n";
      for (const auto &p : chk.problems)
        std::cout << "  " << p << "\n";
      if (!out_s.empty())
        write_json(to_json(ev), out_s);
      return ev.verdict != Verdict::Inconclusive && chk.ok ? exit_ok : exit_failed;
    }

    if (dependence->parsed()) {
      const auto r = grad_poly_dependence(parse_permutation_list(perms_s));
      if (r.independent) {
        std::cout << "independent (rank " << r.rank << ")\n";
      } else {
        std::cout << "dependent (rank " << r.rank << "), t = (" << join(r.t, ",") << ")\n"
                  << "combination matrix " << (r.combination_constant ? "constant" : "not constant") << "\n";
      }
      return exit_ok;
    }

    if (enumerate->parsed()) {
      const auto a = enumerate_allone_quadruples();
      const auto z = enumerate_zerocombo_quadruples();
      if (as_json) {
        Json j;
        j["latin_squares"] = a.latin_squares;
        j["allone_quadruples"] = a.quadruples;
        j["allone_classes"] = Json::array();
        for (const auto &q : a.classes)
          j["allone_classes"].push_back(to_string(q));
        j["zerocombo_ordered_tuples"] = z.ordered_tuples;
        j["zerocombo_quadruples"] = z.quadruples;
        j["zerocombo_classes"] = Json::array();
        for (const auto &q : z.classes)
          j["zerocombo_classes"].push_back({{"plus", {q.plus[0].to_string(), q.plus[1].to_string()}},
                                            {"minus", {q.minus[0].to_string(), q.minus[1].to_string()}}});
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "Latin squares of order 4: " << a.latin_squares << "\n"
                  << "all-one quadruples: " << a.quadruples << ", classes: " << a.classes.size() << "\n";
        for (std::size_t i = 0; i < a.classes.size(); ++i)
          std::cout << "  " << i + 1 << ". " << to_string(a.classes[i]) << "\n";
        std::cout << "zero-combination quadruples: " << z.quadruples << ", classes: " << z.classes.size() << "\n";
        for (std::size_t i = 0; i < z.classes.size(); ++i)
          std::cout << "  " << i + 1 << ". +" << z.classes[i].plus[0].to_string() << " +"
                    << z.classes[i].plus[1].to_string() << " -" << z.classes[i].minus[0].to_string() << " -"
                    << z.classes[i].minus[1].to_string() << "\n";
      }
      return exit_ok;
    }

    if (exceptional->parsed()) {
      const auto c = build_case(case_id);
      const auto facts = verify_lemma_facts(c);
      for (const auto &l : facts.lines)
        std::cout << (l.pass ? "PASS " : "FAIL ") << l.name << (l.pass ? "" : "  computed " + l.computed +
                                                                               ", expected " + l.expected)
                  << "\n";
      const auto solved = solve_case(c);
      const auto bundle = emit_witness(c, solved, !emit_s.empty());
      std::cout.precision(15);
      std::cout << "s in [" << to_double(solved.s_lo) << ", " << to_double(solved.s_hi) << "]\n"
                << "t in [" << to_double(solved.t_lo) << ", " << to_double(solved.t_hi) << "]\n"
                << "residuals g1 " << to_double(solved.residual_g1) << ", g2 " << to_double(solved.residual_g2)
                << "\n";
      for (const auto &[sigma, d] : bundle.densities)
        std::cout << "d(" << sigma.to_string() << ") = " << to_double(d) << "\n";
      bool mc_ok = true;
      if (trials > 0) {
        const auto counts = mc_pattern_counts(bundle.permuton, 4, trials, seed);
        for (const auto &sigma : c.targets) {
          const double f = static_cast<double>(counts[permutation_rank(sigma.image())]) / trials;
          const double se = std::sqrt(f * (1 - f) / static_cast<double>(trials));
          const double z = (f - 1.0 / 24) / se;
          mc_ok = mc_ok && std::abs(z) <= 5;
          std::cout << "MC " << sigma.to_string() << ": " << f << " (z = " << z << ")\n";
        }
      }
      if (!emit_s.empty())
        write_json(to_json(bundle), emit_s);
      if (!report_s.empty())
        write_json(to_json(facts), report_s);
      return facts.ok() && mc_ok ? exit_ok : exit_failed;
    }

    if (sample->parsed()) {
      const StepPermuton p = permuton_arg(permuton_s);
      if (trials < 1)
        throw UsageError("--trials must be positive");
      const auto counts = mc_pattern_counts(p, m, trials, seed);
      const auto perms = enumerate_Sk(m);
      bool ok = true;
      Json j = Json::array();
      for (std::size_t i = 0; i < perms.size(); ++i) {
        const double f = static_cast<double>(counts[i]) / trials;
        const Rational exact = density_in_step_permuton(perms[i], p);
        const double e = to_double(exact);
        const double se = std::sqrt(e * (1 - e) / static_cast<double>(trials));
        const double z = se > 0 ? (f - e) / se : (f == e ? 0.0 : INFINITY);
        ok = ok && std::abs(z) <= 5;
        if (as_json)
          j.push_back({{"sigma", perms[i].to_string()}, {"count", counts[i]}, {"frequency", f},
                       {"exact", to_string(exact)}, {"z", z}});
        else
          std::cout << perms[i].to_string() << " " << counts[i] << " " << f << " exact " << to_string(exact)
                    << " z " << z << "\n";
      }
      if (as_json)
        std::cout << Json{{"trials", trials}, {"seed", seed}, {"patterns", j}}.dump(2) << "\n";
      return !check || ok ? exit_ok : exit_failed;
    }

    if (reproduce->parsed()) {
      ReproduceOptions opts;
      opts.only = {only.begin(), only.end()};
      opts.mc_trials = trials;
      if (reproduce->count("--seed"))
        opts.seed = seed;
      const auto r = cmd_reproduce(opts);
      std::string section;
      for (const auto &item : r.items) {
        if (item.section != section) {
          section = item.section;
          std::cout << "[" << section << "]\n";
        }
        std::cout << (item.pass ? "  PASS " : "  FAIL ") << item.name << "\n";
      }
      std::size_t passed = 0;
      for (const auto &item : r.items)
        passed += item.pass;
      std::cout << passed << "/" << r.items.size() << " items passed in " << r.wall_seconds << " s\n";
      if (!out_s.empty())
        write_json(r.to_json(), out_s);
      return r.ok() ? exit_ok : exit_failed;
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception &e) {
    std::cerr << "failure: " << e.what() << "\n";
    return exit_failed;
  }
  return exit_usage;
}
