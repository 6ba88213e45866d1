// Command-line front end: load operators and channels from JSON files, run
// the divergence/exponent/bound computations, emit CSV curves, and run the
// seeded verification suites.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qconv/qconv.hpp"

namespace {

void print_value(double v) {
  std::printf("%s\n", qconv::format_real(v).c_str());
}

// Shared --rate/--rate-bits handling; rates are nats everywhere internally.
void add_rate_options(CLI::App* cmd, double& rate_nats, double& rate_bits,
                      bool& has_bits) {
  auto* nats = cmd->add_option("--rate", rate_nats, "rate in nats per use");
  auto* bits =
      cmd->add_option("--rate-bits", rate_bits, "rate in bits per use");
  nats->excludes(bits);
  bits->excludes(nats);
  cmd->callback([&rate_nats, &rate_bits, &has_bits, nats, bits]() {
    if (bits->count() > 0) {
      has_bits = true;
      rate_nats = rate_bits * std::log(2.0);
    } else if (nats->count() == 0) {
      throw CLI::RequiredError("--rate or --rate-bits");
    }
  });
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  std::printf("# verify suite=%s seed=%llu\n", suite.c_str(),
              static_cast<unsigned long long>(seed));
  const auto results = qconv::verify_suite(suite, seed);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("# %zu properties, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi divergences, Gallager exponents, and strong-converse "
               "fidelity bounds for finite-dimensional quantum channels"};
  app.require_subcommand(1);

  // divergence
  auto* div = app.add_subcommand(
      "divergence", "Renyi or hockey-stick divergence of two operators");
  std::string rho_path, sigma_path;
  double div_lambda = 2.0, div_gamma = 1.0;
  bool div_hockey = false;
  div->add_option("--rho", rho_path, "operator JSON file")->required();
  div->add_option("--sigma", sigma_path, "operator JSON file")->required();
  div->add_option("--lambda", div_lambda, "Renyi order in (1, 2]");
  div->add_flag("--hockey", div_hockey, "hockey-stick divergence instead");
  div->add_option("--gamma", div_gamma, "hockey-stick gamma >= 1");

  // k-lambda
  auto* kl = app.add_subcommand(
      "k-lambda", "K_lambda(A>B) of a bipartite state (closed form)");
  std::string state_path;
  double kl_lambda = 2.0;
  bool kl_numeric = false;
  std::uint64_t kl_seed = 0;
  kl->add_option("--state", state_path, "bipartite operator JSON file")
      ->required();
  kl->add_option("--lambda", kl_lambda, "Renyi order in (1, 2]")->required();
  kl->add_flag("--numeric", kl_numeric, "also run the numeric infimum oracle");
  kl->add_option("--seed", kl_seed, "oracle seed (default 0)");

  // e0
  auto* e0 = app.add_subcommand("e0",
                                "Gallager function E0(s, channel) at an input");
  std::string e0_channel_path, e0_input_path;
  double e0_s = -0.5;
  e0->add_option("--channel", e0_channel_path, "channel JSON file")
      ->required();
  e0->add_option("--input", e0_input_path, "bipartite operator JSON file")
      ->required();
  e0->add_option("--s", e0_s, "s in [-1/2, 0]")->required();

  // erasure-curve
  auto* curve = app.add_subcommand(
      "erasure-curve", "strong-converse bound curve for the erasure channel");
  double cv_p = 0.25, cv_rate = 0.0, cv_rate_bits = 0.0;
  bool cv_has_bits = false;
  int cv_d = 2, cv_nmax = 100;
  std::string cv_method = "renyi", cv_out;
  curve->add_option("--p", cv_p, "erasure probability")->required();
  curve->add_option("--d", cv_d, "input dimension dA >= 2")->required();
  add_rate_options(curve, cv_rate, cv_rate_bits, cv_has_bits);
  curve->add_option("--n-max", cv_nmax, "sweep n = 1..n-max")->required();
  curve->add_option("--method", cv_method, "renyi|hockey|both")
      ->check(CLI::IsMember({"renyi", "hockey", "both"}));
  curve->add_option("--out", cv_out, "output CSV path")->required();

  // theorem1
  auto* th1 = app.add_subcommand(
      "theorem1", "converse slack K_lambda - D_lambda(F || e^{-nR})");
  std::string th1_channel_path, th1_input_path;
  double th1_fidelity = 1.0, th1_rate = 0.0, th1_rate_bits = 0.0;
  bool th1_has_bits = false;
  int th1_n = 1;
  double th1_lambda = 2.0;
  th1->add_option("--channel", th1_channel_path, "channel JSON file")
      ->required();
  th1->add_option("--input", th1_input_path,
                  "bipartite operator JSON file (input on A (x) A'^n)")
      ->required();
  th1->add_option("--fidelity", th1_fidelity, "promised fidelity F")
      ->required();
  add_rate_options(th1, th1_rate, th1_rate_bits, th1_has_bits);
  th1->add_option("--n", th1_n, "channel uses")->required();
  th1->add_option("--lambda", th1_lambda, "Renyi order in (1, 2]")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "run the invariant suites");
  std::string ver_suite = "all";
  std::uint64_t ver_seed = 0;
  ver->add_option("--suite", ver_suite, "all|mono|sibson|erasure")
      ->check(CLI::IsMember({"all", "mono", "sibson", "erasure"}));
  ver->add_option("--seed", ver_seed, "suite seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (div->parsed()) {
      const auto rho = qconv::load_operator(rho_path);
      const auto sigma = qconv::load_operator(sigma_path);
      if (div_hockey) {
        print_value(qconv::hockey_stick(qconv::PsdOperator(rho.entries),
                                        qconv::PsdOperator(sigma.entries),
                                        div_gamma));
      } else {
        print_value(qconv::renyi_divergence(
            qconv::PsdOperator(rho.entries), qconv::PsdOperator(sigma.entries),
            qconv::RenyiOrder(div_lambda)));
      }
    } else if (kl->parsed()) {
      const auto state = qconv::to_bipartite(qconv::load_operator(state_path));
      const qconv::RenyiOrder order(kl_lambda);
      if (kl_numeric) {
        std::printf("# seed=%llu\n",
                    static_cast<unsigned long long>(kl_seed));
      }
      std::printf("k_lambda = %s\n",
                  qconv::format_real(qconv::k_lambda(state, order)).c_str());
      if (kl_numeric) {
        qconv::OptimizerOptions opts;
        opts.seed = kl_seed;
        std::printf(
            "k_lambda_numeric = %s\n",
            qconv::format_real(qconv::k_lambda_numeric(state, order, opts))
                .c_str());
      }
    } else if (e0->parsed()) {
      const auto ch = qconv::load_channel(e0_channel_path);
      const auto input =
          qconv::to_bipartite(qconv::load_operator(e0_input_path));
      print_value(qconv::e0_channel(ch, input, qconv::SParam(e0_s)));
    } else if (curve->parsed()) {
      qconv::BoundQuery query(std::max(1, cv_nmax), cv_rate, cv_p, cv_d);
      qconv::SweepSpec sweep;
      for (int n = 1; n <= cv_nmax; ++n) sweep.over_n.push_back(n);
      qconv::BoundMethod method = qconv::BoundMethod::renyi;
      if (cv_method == "hockey") method = qconv::BoundMethod::hockey;
      if (cv_method == "both") method = qconv::BoundMethod::both;
      const qconv::BoundCurve result =
          qconv::curve_sweep(query, sweep, method);
      qconv::write_curve_csv(cv_out, result);
      std::printf("wrote %s (%zu rows)\n", cv_out.c_str(),
                  result.rows.size());
    } else if (th1->parsed()) {
      const auto ch = qconv::load_channel(th1_channel_path);
      const auto input =
          qconv::to_bipartite(qconv::load_operator(th1_input_path));
      print_value(qconv::theorem1_slack(th1_fidelity, th1_n, th1_rate, ch,
                                        input,
                                        qconv::RenyiOrder(th1_lambda)));
    } else if (ver->parsed()) {
      return run_verify(ver_suite, ver_seed);
    }
  } catch (const qconv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
