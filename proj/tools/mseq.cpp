// mseq: joint linear complexity census and polytope toolkit.
//
// Exit status: 0 on success, 1 when a verification check fails, 2 on bad
// input (parse/field errors, exceeded budget, unknown suite, bad flags).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mseq/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint linear complexity of multisequences over F_q"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string modulus;
  std::optional<std::uint64_t> budget;
  unsigned jobs = 1;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "table"}));
  };

  auto* profile = app.add_subcommand("profile", "Complexity profile and witness of a seqfile");
  std::string input;
  profile->add_option("input", input, "Seqfile path")->required();
  add_format(profile);

  auto* census = app.add_subcommand("census", "Exhaustive complexity distribution per n");
  int q = 2;
  std::size_t m = 1;
  std::string n_range = "1";
  census->add_option("--q", q, "Field size")->required();
  census->add_option("--m", m, "Number of sequences")->required();
  census->add_option("--n", n_range, "Length or range a..b")->required();
  census->add_option("--budget", budget, "Max states per n (default: MSEQ_BUDGET or 2^26)");
  census->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  census->add_option("--modulus", modulus, "Comma-separated base-p digits, constant term first");
  add_format(census);

  auto* polytope = app.add_subcommand("polytope", "Lattice-point counts of the partition simplex slices");
  std::size_t pm = 1;
  std::string l_range = "0";
  bool with_vertices = false;
  polytope->add_option("--m", pm, "Dimension")->required()->check(CLI::PositiveNumber);
  polytope->add_option("--L", l_range, "Total or range a..b")->required();
  polytope->add_flag("--vertices", with_vertices, "Also list vertices x(H, nu)");
  add_format(polytope);

  auto* montecarlo = app.add_subcommand("montecarlo", "Seeded Monte Carlo estimate of the expected complexity");
  std::size_t mc_n = 0;
  std::uint64_t samples = 10000, seed = 0;
  montecarlo->add_option("--q", q, "Field size")->required();
  montecarlo->add_option("--m", m, "Number of sequences")->required();
  montecarlo->add_option("--n", mc_n, "Length")->required();
  montecarlo->add_option("--samples", samples, "Sample count");
  montecarlo->add_option("--seed", seed, "64-bit seed");
  montecarlo->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  montecarlo->add_option("--modulus", modulus, "Comma-separated base-p digits, constant term first");
  add_format(montecarlo);

  auto* series = app.add_subcommand("series", "Bracket sum_H (H+1)^m / q^H");
  double eps = 1e-9;
  series->add_option("--q", q, "Base")->required();
  series->add_option("--m", m, "Exponent")->required();
  series->add_option("--eps", eps, "Bracket width");
  add_format(series);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::uint64_t verify_seed = mseq::VerifyOptions{}.seed;
  verify->add_option("suite", suite, "lemma2 | bounds | polytope | identity | oracle")->required();
  verify->add_option("--budget", budget, "Max states per census cell");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed, "Seed for randomized checks");

  CLI11_PARSE(app, argc, argv);

  try {
    const mseq::Format fmt = mseq::parse_format(format);
    std::optional<mseq::DigitPoly> mod;
    if (!modulus.empty()) mod = mseq::parse_modulus(modulus);
    const std::uint64_t cap = budget ? *budget : mseq::default_budget();

    if (*profile) {
      std::cout << mseq::cmd_profile(read_file(input), fmt);
    } else if (*census) {
      std::cout << mseq::cmd_census({q, m, mseq::parse_range(n_range), cap, jobs, fmt, mod});
    } else if (*polytope) {
      std::cout << mseq::cmd_polytope({pm, mseq::parse_range(l_range), with_vertices, fmt});
    } else if (*montecarlo) {
      std::cout << mseq::cmd_montecarlo({q, m, mc_n, samples, seed, jobs, fmt, mod});
    } else if (*series) {
      std::cout << mseq::cmd_series(static_cast<std::uint64_t>(q), m, eps, fmt);
    } else if (*verify) {
      const auto outcome = mseq::cmd_verify(suite, {cap, jobs, verify_seed});
      std::cout << outcome.text;
      return outcome.passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
