#include "gvi/bench.hpp"
#include "gvi/convexity.hpp"
#include "gvi/obstacle.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw gvi::SpecError("cannot write " + out);
  file << text;
}

std::string vec_text(const gvi::Vec& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

std::string cert_row(const std::string& name, const gvi::CertReport& r, gvi::TableFormat fmt) {
  char buf[256];
  const char* sep = fmt == gvi::TableFormat::Csv ? "," : " | ";
  std::snprintf(buf, sizeof buf, "%s%s%s%ld%s%.3e%s%.3e%s%s%s", fmt == gvi::TableFormat::Csv ? "" : "| ",
                name.c_str(), sep, r.checked_count, sep, r.worst_violation, sep, r.tolerance, sep,
                r.pass ? "no violation found" : "violated", sep);
  std::string row = buf;
  row += r.checked_count ? "u=" + vec_text(r.witness.u) + " v=" + vec_text(r.witness.v) +
                               " t=" + std::to_string(r.witness.t)
                         : "-";
  if (fmt == gvi::TableFormat::Markdown) row += " |";
  return row + "\n";
}

std::string cert_header(gvi::TableFormat fmt) {
  if (fmt == gvi::TableFormat::Csv) return "check,checked,worst_violation,tolerance,verdict,witness\n";
  return "| check | checked | worst_violation | tolerance | verdict | witness |\n"
         "| --- | --- | --- | --- | --- | --- |\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gvi: general variational inequality solvers, benchmarks and checks"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "run (problem, algorithm) benchmark rows");
  bench->set_config("--config", "", "flat key = value file; flags override file values");
  std::vector<std::string> problems{"example3"};
  std::vector<int> ns{10};
  std::vector<std::string> algs{"dp-basic"};
  std::optional<double> rho;
  gvi::BenchConfig bcfg;
  unsigned seed = 0;
  std::string out, format = "csv", variant = "verbatim";
  bool no_time = false;
  bench->add_option("--problem", problems, "example2, example3, example4, obstacle, custom:<path>")
      ->delimiter(',');
  bench->add_option("--n", ns, "problem sizes")->delimiter(',');
  bench->add_option("--alg", algs, "algorithm ids")->delimiter(',');
  bench->add_option("--rho", rho, "step size (default: per algorithm)");
  bench->add_option("--tol", bcfg.tol, "stopping tolerance");
  bench->add_option("--max_iters,--max-iters", bcfg.max_iters, "iteration cap");
  bench->add_option("--sigma", bcfg.sigma, "Armijo constant");
  bench->add_option("--gamma", bcfg.gamma, "backtracking ratio");
  bench->add_option("--seed", seed, "accepted for manifests; benchmarks are deterministic");
  bench->add_option("--out", out, "output file (default stdout)");
  bench->add_option("--format", format, "csv or markdown");
  bench->add_option("--variant", variant, "obstacle boundary row: verbatim or corrected");
  bench->add_flag("--no-time", no_time, "omit the wall-time column");
  bench->add_flag("--list", "list algorithm ids and exit");

  // obstacle
  auto* obstacle = app.add_subcommand("obstacle", "cubic-spline error table for the obstacle instance");
  std::vector<int> obstacle_ns{15, 31, 63, 127};
  std::string obstacle_variant = "verbatim", obstacle_out, obstacle_format = "markdown";
  obstacle->add_option("--n", obstacle_ns, "grid sizes with (n + 1) divisible by 4")->delimiter(',');
  obstacle->add_option("--variant", obstacle_variant, "verbatim, corrected or both");
  obstacle->add_option("--out", obstacle_out, "output file (default stdout)");
  obstacle->add_option("--format", obstacle_format, "csv or markdown");

  // certify
  auto* certify = app.add_subcommand("certify", "sampling checks of convexity classes");
  std::string fn_id = "square", cls = "hos-convex", cert_format = "markdown";
  double p = 2.0, mu = 0.0;
  int samples = 1000, dim = 3;
  std::uint64_t cert_seed = 2024;
  certify->add_option("--function", fn_id, "builtin function id");
  certify->add_option("--class", cls,
                      "hos-convex, hos-affine, gradient, exp-convex, exp-concave, strong-exp-convex, "
                      "hierarchy, parallelogram");
  certify->add_option("--p", p, "exponent > 1");
  certify->add_option("--mu", mu, "modulus >= 0");
  certify->add_option("--samples", samples, "sample pairs");
  certify->add_option("--dim", dim, "dimension for the parallelogram check");
  certify->add_option("--seed", cert_seed, "sampling seed");
  certify->add_option("--format", cert_format, "csv or markdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*bench) {
      if (bench->count("--list")) {
        for (const auto& alg : gvi::algorithm_registry()) std::cout << alg.id << "\n";
        return 0;
      }
      bcfg.rho = rho;
      if (variant == "verbatim") bcfg.variant = gvi::BoundaryVariant::Verbatim;
      else if (variant == "corrected") bcfg.variant = gvi::BoundaryVariant::Corrected;
      else throw gvi::SpecError("unknown variant '" + variant + "'");
      std::vector<gvi::ProblemSpec> specs;
      for (const auto& id : problems) {
        if (id == "example2" || id.rfind("custom:", 0) == 0)
          specs.push_back(gvi::parse_problem(id, 0));
        else
          for (int n : ns) specs.push_back(gvi::parse_problem(id, n));
      }
      const auto results = gvi::run_suite(specs, algs, bcfg);
      write_output(gvi::emit_table(results, gvi::parse_format(format), !no_time), out);
      for (const auto& r : results)
        if (!r.error.empty()) std::cerr << r.problem << " n=" << r.n << " " << r.algorithm << ": " << r.error << "\n";
      for (const auto& r : results)
        if (!r.converged) return 2;
      return 0;
    }

    if (*obstacle) {
      std::vector<gvi::BoundaryVariant> variants;
      if (obstacle_variant == "verbatim" || obstacle_variant == "both")
        variants.push_back(gvi::BoundaryVariant::Verbatim);
      if (obstacle_variant == "corrected" || obstacle_variant == "both")
        variants.push_back(gvi::BoundaryVariant::Corrected);
      if (variants.empty()) throw gvi::SpecError("unknown variant '" + obstacle_variant + "'");
      const auto fmt = gvi::parse_format(obstacle_format);
      std::string text;
      for (auto v : variants) {
        if (variants.size() > 1) text += std::string("variant: ") + gvi::to_string(v) + "\n";
        text += gvi::emit_error_table(gvi::error_table(gvi::test_instance(), obstacle_ns, v), fmt);
      }
      write_output(text, obstacle_out);
      return 0;
    }

    if (*certify) {
      const auto fmt = gvi::parse_format(cert_format);
      std::string text = cert_header(fmt);
      bool pass = true;
      const auto add = [&](const std::string& name, const gvi::CertReport& r) {
        text += cert_row(name, r, fmt);
        pass = pass && r.pass;
      };
      if (cls == "parallelogram") {
        const auto rep = gvi::check_parallelogram(p, mu, samples, dim, cert_seed);
        add("lower", rep.lower);
        add("upper", rep.upper);
        add("equality(p=2,mu=1)", rep.equality);
        char buf[128];
        std::snprintf(buf, sizeof buf, "mu_lower=%.6g mu_upper=%.6g\n", rep.mu_lower, rep.mu_upper);
        text += buf;
        pass = rep.lower.pass;
      } else {
        const gvi::FunctionUnderTest fut = gvi::builtin_function(fn_id, p, mu);
        const auto grid = gvi::default_t_grid();
        if (cls == "hos-convex") {
          add(cls, gvi::check_hos_convex(fut, samples, grid, cert_seed));
        } else if (cls == "hos-affine") {
          add(cls, gvi::check_hos_affine(fut, samples, grid, cert_seed));
        } else if (cls == "gradient") {
          add(cls, gvi::check_gradient_char(fut, samples, cert_seed));
        } else if (cls == "exp-convex" || cls == "exp-concave" || cls == "strong-exp-convex") {
          const auto rep = gvi::check_exp_convex(fut, samples, grid, cls == "strong-exp-convex",
                                                 cls == "exp-concave", cert_seed);
          add(cls, rep.definition);
          if (rep.gradient_form.checked_count) add(cls + "(gradient form)", rep.gradient_form);
        } else if (cls == "hierarchy") {
          const auto rep = gvi::check_hierarchy(fut, samples, grid, cert_seed);
          text += cert_row("log-convex", rep.log_convex, fmt);
          text += cert_row("convex", rep.convex, fmt);
          text += cert_row("quasi-convex", rep.quasi_convex, fmt);
          text += "implication failures: " + std::to_string(rep.implication_failures) + "\n";
          pass = rep.pass();
        } else {
          throw gvi::SpecError("unknown class '" + cls + "'");
        }
      }
      std::cout << text;
      return pass ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
