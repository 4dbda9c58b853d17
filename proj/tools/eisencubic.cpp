#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eisen/gauss.hpp"
#include "eisen/session.hpp"
#include "eisen/verify.hpp"

namespace {

constexpr const char* kLiteralHelp =
    "Eisenstein integers are written a+b*w with w = exp(2 pi i/3): an optional sign and "
    "integer, then an optional +/- integer *w (bare w and -w are allowed; whitespace is "
    "ignored). Examples: 7, -2, 1+3*w, 4-9*w.";

std::vector<std::int64_t> parse_grid(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = std::stoll(item, &used);
    if (used != item.size() || v < 1) throw std::invalid_argument("bad X grid entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty X grid");
  return out;
}

std::string complex_text(eisen::Complex z) {
  return eisen::format_double(z.real()) + " " + eisen::format_double(z.imag());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic characters over Q(w): symbols, Gauss sums, central L-values and moments"};
  app.footer(kLiteralHelp);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  double tolerance = 0.0;
  double fixed_y = 0.0;
  std::string cache;
  std::string format;
  std::string output;
  int threads = 0;
  std::int64_t x_max = 0, prime_cutoff = 0, cube_cutoff = 0, inner_cutoff = 0;
  std::uint64_t seed = eisen::VerifyOptions{}.seed;

  app.add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--tolerance", tolerance, "L-value tolerance in [1e-12, 1e-4]");
  app.add_option("--y", fixed_y, "fixed Y for the functional equation (default sqrt(3 cond))");
  app.add_option("--cache", cache, std::string("L-value cache (default $") + eisen::kCachePathEnv + ")");
  app.add_option("--format", format, "output format: csv or jsonl");
  app.add_option("--output,-o", output, "write the report to this file instead of stdout");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--x-max", x_max, "largest conductor norm");
  app.add_option("--prime-cutoff", prime_cutoff, "Euler product cutoff for D (>= 100)");
  app.add_option("--cube-cutoff", cube_cutoff, "cube range for E (>= 10)");
  app.add_option("--inner-cutoff", inner_cutoff, "inner sum range for E (>= 10)");
  app.add_option("--seed", seed, "seed for randomized checks");

  auto* family = app.add_subcommand("family", "list F(X) in canonical order");
  auto* symbol = app.add_subcommand("symbol", "cubic residue symbol (alpha/n)_3");
  std::string alpha_text, n_text, r_text, c1_text, c2_text;
  symbol->add_option("--alpha", alpha_text, "numerator")->required();
  symbol->add_option("--n", n_text, "primary modulus")->required();
  auto* gauss = app.add_subcommand("gauss", "cubic Gauss sum g(r, n)");
  gauss->add_option("--r", r_text, "shift")->required();
  gauss->add_option("--n", n_text, "primary modulus")->required();
  auto* lvalue = app.add_subcommand("lvalue", "central value L(1/2, chi) of the family element (c1, c2)");
  lvalue->add_option("--c1", c1_text)->required();
  lvalue->add_option("--c2", c2_text)->required();
  auto* moment = app.add_subcommand("moment", "first or second moment over F(X) for each X in a grid");
  std::string kind, grid_text;
  double threshold = 1e-6;
  moment->add_option("kind", kind, "first or second")->required()->check(CLI::IsMember({"first", "second"}));
  moment->add_option("--x-grid", grid_text, "comma separated X values")->required();
  moment->add_option("--threshold", threshold, "non-vanishing threshold");
  auto* constants = app.add_subcommand("constants", "A, B, D, E and h9");
  auto* verify = app.add_subcommand("verify", "run invariant suites; exits nonzero on failure");
  std::string suite = "all";
  bool quick = false;
  verify->add_option("--suite", suite, "core, characters, gauss, lfunctions, moments, cache or all");
  verify->add_flag("--quick", quick, "smaller sweeps");

  CLI11_PARSE(app, argc, argv);

  try {
    eisen::RunConfig cfg = eisen::default_config();
    if (!config_file.empty()) cfg = eisen::load_config(config_file, cfg);
    if (app.count("--tolerance")) cfg.tolerance = tolerance;
    if (app.count("--y")) cfg.fixed_y = fixed_y;
    if (app.count("--cache")) cfg.cache_path = cache;
    if (app.count("--format")) cfg.output_format = eisen::parse_output_format(format);
    if (app.count("--threads")) cfg.threads = threads;
    if (app.count("--x-max")) cfg.x_max = x_max;
    if (app.count("--prime-cutoff")) cfg.prime_cutoff = prime_cutoff;
    if (app.count("--cube-cutoff")) cfg.cube_cutoff = cube_cutoff;
    if (app.count("--inner-cutoff")) cfg.inner_cutoff = inner_cutoff;
    cfg.validate();

    std::ofstream file;
    if (!output.empty()) {
      file.open(output);
      if (!file) throw std::runtime_error("cannot write " + output);
    }
    std::ostream& out = output.empty() ? std::cout : file;

    if (*family) {
      eisen::write_family(out, eisen::enumerate_family(cfg.x_max), cfg.output_format);
    } else if (*symbol) {
      out << eisen::cubic_symbol_fast(eisen::parse_eisenstein(alpha_text), eisen::parse_eisenstein(n_text)).to_string()
          << '\n';
    } else if (*gauss) {
      out << complex_text(eisen::gauss_sum(eisen::parse_eisenstein(r_text), eisen::parse_eisenstein(n_text))) << '\n';
    } else if (*lvalue) {
      auto elem = eisen::make_family_element(eisen::parse_eisenstein(c1_text), eisen::parse_eisenstein(c2_text));
      eisen::Session session(cfg);
      eisen::write_lvalues(out, {session.lvalue(elem)}, cfg.output_format);
    } else if (*moment) {
      eisen::Session session(cfg);
      eisen::write_moment_reports(out, session.moments(parse_grid(grid_text), threshold), cfg.output_format);
    } else if (*constants) {
      eisen::Session session(cfg);
      eisen::write_constants(out, session.constants(), cfg.output_format);
    } else if (*verify) {
      eisen::VerifyOptions opts;
      opts.seed = seed;
      opts.quick = quick;
      auto results = eisen::run_verify(suite, opts);
      int failed = 0;
      for (const auto& r : results) {
        out << (r.passed ? "PASS" : "FAIL") << "  [" << r.suite << "] " << r.name << ": " << r.detail << '\n';
        failed += r.passed ? 0 : 1;
      }
      out << results.size() - failed << "/" << results.size() << " checks passed\n";
      return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return EXIT_SUCCESS;
}
