#pragma once

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qconv/bounds.hpp"
#include "qconv/channel.hpp"
#include "qconv/divergence.hpp"
#include "qconv/exponent.hpp"
#include "qconv/hermitian.hpp"

namespace qconv {

struct PropertyResult {
  std::string name;
  bool pass;
  std::string detail;
};

namespace detail {

inline std::string format(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

inline BipartiteOperator random_bipartite(int da, int db,
                                          std::uint64_t seed) {
  return BipartiteOperator(da, db, random_density(da * db, seed));
}

// Worst-margin accumulator: a property passes when its minimum margin stays
// above -tolerance.
struct MarginCheck {
  double worst = kInfinity;
  long checks = 0;
  void add(double margin) {
    if (margin < worst) worst = margin;
    ++checks;
  }
  PropertyResult result(const std::string& name, double tolerance) const {
    return PropertyResult{
        name, worst >= -tolerance,
        format("worst margin %.3e over %ld checks (tolerance %.0e)", worst,
               checks, tolerance)};
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// mono: monotonicity and the binary-divergence properties
// ---------------------------------------------------------------------------

inline std::vector<PropertyResult> verify_mono(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const double lambdas[] = {1.25, 1.5, 2.0};

  {
    detail::MarginCheck renyi_mono;
    detail::MarginCheck hockey_mono;
    const double gammas[] = {1.0, 2.0, 5.0};
    for (int t = 0; t < 200; ++t) {
      auto gen = substream(seed, 1000 + t);
      const int d = 2 + static_cast<int>(gen() % 3);
      const int d_out = 2 + static_cast<int>(gen() % 2);
      const DensityOperator rho_n = random_density(d, gen());
      const DensityOperator sigma_n = random_density(d, gen());
      // Property 1 covers un-normalized arguments; scale half the cases.
      const double c_rho = (t % 2 == 0) ? 1.0 : 0.5 + (gen() % 1501) / 1000.0;
      const double c_sigma = (t % 2 == 0) ? 1.0 : 0.5 + (gen() % 1501) / 1000.0;
      const PsdOperator rho(c_rho * rho_n.matrix(), detail::trusted);
      const PsdOperator sigma(c_sigma * sigma_n.matrix(), detail::trusted);
      const QuantumChannel ch = random_channel(d, d_out, 2, gen());
      const PsdOperator rho_out(apply(ch, rho).matrix(), detail::trusted);
      const PsdOperator sigma_out(apply(ch, sigma).matrix(), detail::trusted);
      for (double l : lambdas) {
        const RenyiOrder order(l);
        renyi_mono.add(renyi_divergence(rho, sigma, order) -
                       renyi_divergence(rho_out, sigma_out, order));
      }
      for (double g : gammas) {
        hockey_mono.add(hockey_stick(rho, sigma, g) -
                        hockey_stick(rho_out, sigma_out, g));
      }
    }
    out.push_back(renyi_mono.result("renyi_monotonicity", 1e-9));
    out.push_back(hockey_mono.result("hockey_monotonicity", 1e-9));
  }

  {
    detail::MarginCheck mc;
    for (double beta : {0.1, 0.5}) {
      for (double l : {1.5, 2.0}) {
        const RenyiOrder order(l);
        double prev = binary_renyi(beta, beta, order);
        for (int i = 1; i < 100; ++i) {
          const double alpha = std::min(1.0, beta + (1.0 - beta) * i / 99.0);
          const double cur = binary_renyi(alpha, beta, order);
          mc.add(cur - prev);
          prev = cur;
        }
      }
    }
    out.push_back(mc.result("property2_alpha_monotone", 1e-12));
  }

  {
    detail::MarginCheck mc;
    for (int bi = 0; bi < 10; ++bi) {
      const double beta = 0.05 + 0.1 * bi;
      for (int ai = 0; ai < 10; ++ai) {
        const double alpha = ai / 9.0;
        for (double l : {1.5, 2.0}) {
          const RenyiOrder order(l);
          Matrix rho = Matrix::Zero(2, 2);
          rho(0, 0) = alpha;
          rho(1, 1) = 1.0 - alpha;
          Matrix sig = Matrix::Zero(2, 2);
          sig(0, 0) = beta;
          sig(1, 1) = 1.0 / beta - beta;
          const double via_matrix = renyi_divergence(
              PsdOperator(rho), PsdOperator(sig), order);
          mc.add(1e-12 -
                 std::abs(binary_renyi(alpha, beta, order) - via_matrix));
        }
      }
    }
    // Margin here is tolerance minus deviation, so pass needs worst >= 0.
    out.push_back(mc.result("binary_renyi_matches_matrix", 0.0));
  }

  {
    detail::MarginCheck mc;
    for (int fi = 1; fi <= 20; ++fi) {
      const double f = fi / 20.0;
      for (int bi = 1; bi <= 20; ++bi) {
        const double beta = bi / 20.0;
        for (double g : {1.0, 2.0, 5.0}) {
          mc.add(binary_hockey_stick(f, beta, g) - (f - g * beta));
        }
      }
    }
    out.push_back(mc.result("binary_hockey_lower_bound", 1e-12));
  }

  {
    detail::MarginCheck mc;
    const int n = 2;
    for (int ri = 0; ri < 20; ++ri) {
      const double rate = 0.05 + ri * (1.5 - 0.05) / 19.0;
      const double f_min = std::exp(-n * rate);
      for (int fi = 0; fi < 20; ++fi) {
        const double f = std::min(1.0, f_min + (1.0 - f_min) * fi / 19.0);
        for (double l : {1.25, 1.5, 2.0}) {
          mc.add(renyi_lower_bound_check(f, n, rate, RenyiOrder(l)));
        }
      }
    }
    out.push_back(mc.result("renyi_lower_bound", 1e-10));
  }

  {
    detail::MarginCheck mc;
    for (int t = 0; t < 20; ++t) {
      auto gen = substream(seed, 2000 + t);
      const int da = 2 + static_cast<int>(gen() % 2);
      const int db = 2 + static_cast<int>(gen() % 2);
      const BipartiteOperator rho = detail::random_bipartite(da, db, gen());
      const double ci = coherent_information(rho);
      mc.add(std::log(da) - std::abs(ci));
    }
    out.push_back(mc.result("coherent_information_range", 1e-12));
  }

  return out;
}

// ---------------------------------------------------------------------------
// sibson: oracle equivalence, data processing, and the g-function suite
// ---------------------------------------------------------------------------

inline std::vector<PropertyResult> verify_sibson(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const double lambdas[] = {1.25, 1.5, 2.0};

  {
    detail::MarginCheck equiv;
    detail::MarginCheck minimizer;
    for (int t = 0; t < 20; ++t) {
      auto gen = substream(seed, 3000 + t);
      const int da = 2 + static_cast<int>(gen() % 2);
      const int db = 2 + static_cast<int>(gen() % 2);
      const BipartiteOperator rho = detail::random_bipartite(da, db, gen());
      for (double l : lambdas) {
        const RenyiOrder order(l);
        const double closed = k_lambda(rho, order);
        OptimizerOptions opts;
        opts.seed = gen();
        const double numeric = k_lambda_numeric(rho, order, opts);
        equiv.add(1e-6 - std::abs(closed - numeric));

        const DensityOperator sigma_star = sibson_state(rho, order);
        const PsdOperator one_sigma(
            kron(identity(da), sigma_star.matrix()), detail::trusted);
        const double at_star =
            renyi_divergence(PsdOperator(rho.op()), one_sigma, order);
        minimizer.add(1e-10 - std::abs(at_star - closed));
      }
    }
    out.push_back(equiv.result("sibson_oracle_equivalence", 0.0));
    out.push_back(minimizer.result("sibson_minimizer_optimal", 0.0));
  }

  {
    detail::MarginCheck mc;
    for (int t = 0; t < 100; ++t) {
      auto gen = substream(seed, 4000 + t);
      const int da = 2 + static_cast<int>(gen() % 2);
      const int db = 2 + static_cast<int>(gen() % 2);
      const int d_out = 2 + static_cast<int>(gen() % 2);
      const BipartiteOperator rho = detail::random_bipartite(da, db, gen());
      const QuantumChannel ch = random_channel(db, d_out, 2, gen());
      const BipartiteOperator rho_out = apply_to_B(ch, rho);
      for (double l : lambdas) {
        const RenyiOrder order(l);
        mc.add(k_lambda(rho, order) - k_lambda(rho_out, order));
      }
    }
    out.push_back(mc.result("k_lambda_data_processing", 1e-9));
  }

  {
    detail::MarginCheck mc;
    for (int t = 0; t < 10; ++t) {
      auto gen = substream(seed, 5000 + t);
      const int da = 2 + static_cast<int>(gen() % 2);
      const int db = 2 + static_cast<int>(gen() % 2);
      const int d_out = 2 + static_cast<int>(gen() % 2);
      const BipartiteOperator rho = detail::random_bipartite(da, db, gen());
      const QuantumChannel ch = random_channel(db, d_out, 2, gen());
      const BipartiteOperator rho_out = apply_to_B(ch, rho);
      for (double sv : {-0.5, -0.25, -0.1}) {
        const SParam s(sv);
        const double via_e0 = e0_channel(ch, rho, s);
        const double via_k = sv * k_lambda(rho_out, s.order());
        mc.add(1e-10 - std::abs(via_e0 - via_k));
      }
    }
    out.push_back(mc.result("e0_k_lambda_relation", 0.0));
  }

  {
    detail::MarginCheck g_zero;
    detail::MarginCheck d_analytic;
    detail::MarginCheck d_fd;
    detail::MarginCheck mono;
    for (int t = 0; t < 20; ++t) {
      auto gen = substream(seed, 6000 + t);
      const int da = 2 + static_cast<int>(gen() % 2);
      const int db = 2 + static_cast<int>(gen() % 2);
      const BipartiteOperator rho = detail::random_bipartite(da, db, gen());

      g_zero.add(1e-12 - std::abs(g_function(rho, SParam(0.0))));

      const double ci = coherent_information(rho);
      const double da0 =
          g_derivative(rho, SParam(0.0), DerivativeMethod::analytic);
      d_analytic.add(1e-10 - std::abs(da0 - ci));
      const double df0 =
          g_derivative(rho, SParam(0.0), DerivativeMethod::finite_difference);
      d_fd.add(1e-4 - std::abs(df0 - ci) / std::abs(ci));

      double prev = -kInfinity;
      for (int i = 0; i < 64; ++i) {
        const double s = -0.5 + 0.5 * i / 63.0;
        const double v = g_function(rho, SParam(s)) + (s + 1.0) * std::log(da);
        if (i > 0) mono.add(v - prev);
        prev = v;
      }
    }
    out.push_back(g_zero.result("g_zero_at_origin", 0.0));
    out.push_back(d_analytic.result("g_derivative_coherent_info", 0.0));
    out.push_back(d_fd.result("g_derivative_fd_relative", 0.0));
    out.push_back(mono.result("g_shifted_monotonicity", 1e-9));
  }

  {
    // Cross-check of the analytic derivative formula away from s = 0;
    // disagreements are reported, never silently accepted.
    detail::MarginCheck mc;
    for (int t = 0; t < 10; ++t) {
      auto gen = substream(seed, 7000 + t);
      const int da = 2 + static_cast<int>(gen() % 2);
      const int db = 2 + static_cast<int>(gen() % 2);
      const BipartiteOperator rho = detail::random_bipartite(da, db, gen());
      for (double sv : {-0.5, -0.45, -0.25, -0.1}) {
        const SParam s(sv);
        const double a = g_derivative(rho, s, DerivativeMethod::analytic);
        const double f =
            g_derivative(rho, s, DerivativeMethod::finite_difference);
        const double scale = std::max(std::abs(a), 1e-3);
        mc.add(1e-4 - std::abs(a - f) / scale);
      }
    }
    out.push_back(mc.result("g_derivative_cross_method", 0.0));
  }

  {
    detail::MarginCheck mc;
    auto gen = substream(seed, 7100);
    OptimizerOptions opts;
    opts.seed = gen();
    const BipartiteOperator phi = maximally_entangled(2);
    const double v = k_hockey_numeric(phi, 1.0, opts);
    const PsdOperator one_mixed(0.5 * identity(4), detail::trusted);
    const double feasible =
        hockey_stick(PsdOperator(phi.op()), one_mixed, 1.0);
    mc.add(1e-5 - std::abs(v - 0.5));
    mc.add(feasible + 1e-9 - v);
    mc.add(0.75 - v);
    // Product state with a large enough gamma: infimum is exactly 0.
    const DensityOperator rho_b = random_density(2, gen());
    const Matrix prod = kron(0.5 * identity(2), rho_b.matrix());
    const BipartiteOperator prod_state(
        2, 2, HermitianOperator(prod, detail::trusted));
    OptimizerOptions opts2;
    opts2.seed = gen();
    mc.add(1e-8 - k_hockey_numeric(prod_state, 2.0, opts2));
    out.push_back(mc.result("k_hockey_oracle", 0.0));
  }

  return out;
}

// ---------------------------------------------------------------------------
// erasure: block decomposition, exponent chain, thresholds, converse slack
// ---------------------------------------------------------------------------

inline std::vector<PropertyResult> verify_erasure(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const double probs[] = {0.1, 0.25, 0.4};
  const double lambdas[] = {1.25, 1.5, 2.0};

  {
    detail::MarginCheck weights;
    detail::MarginCheck ortho;
    detail::MarginCheck recon;
    for (int n : {1, 2, 3}) {
      const int d = 2;
      const int dan = 1 << n;
      const BipartiteOperator input = maximally_entangled(dan);
      for (double p : probs) {
        const auto dec = erasure_block_decomposition(d, p, n, input);
        double wsum = 0.0;
        for (const auto& b : dec.blocks) wsum += b.weight;
        weights.add(1e-12 - std::abs(wsum - 1.0));

        for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
          for (std::size_t j = i + 1; j < dec.blocks.size(); ++j) {
            const double overlap = (dec.blocks[i].state.matrix() *
                                    dec.blocks[j].state.matrix())
                                       .trace()
                                       .real();
            ortho.add(1e-12 - std::abs(overlap));
          }
        }

        const BipartiteOperator direct =
            apply_to_B(tensor_power(erasure_channel(d, p), n), input);
        Matrix mixture = Matrix::Zero(direct.matrix().rows(),
                                      direct.matrix().cols());
        for (const auto& b : dec.blocks) {
          mixture += b.weight * b.state.matrix();
        }
        recon.add(1e-10 - (mixture - direct.matrix()).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(weights.result("erasure_block_weights", 0.0));
    out.push_back(ortho.result("erasure_block_orthogonality", 0.0));
    out.push_back(recon.result("erasure_block_reconstruction", 0.0));
  }

  {
    // d_A^k rho^{A A'_S} is a projector of rank d_A^k for maximally
    // entangled inputs.
    detail::MarginCheck mc;
    const int d = 2;
    for (int n : {2, 3}) {
      int dan = 1;
      for (int i = 0; i < n; ++i) dan *= d;
      const BipartiteOperator input = maximally_entangled(dan);
      for (int k = 1; k < n; ++k) {
        // Trace out the last k A' slots.
        Matrix m = input.matrix();
        int kept = n;
        for (int j = 0; j < k; ++j) {
          int left = dan;
          for (int i = 0; i < kept - 1; ++i) left *= d;
          m = trace_middle_factor(m, left, d, 1);
          --kept;
        }
        double dk = std::pow(static_cast<double>(d), k);
        Eigen::SelfAdjointEigenSolver<Matrix> es(dk * m,
                                                 Eigen::EigenvaluesOnly);
        long rank = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
          const double w = es.eigenvalues()[i];
          mc.add(1e-9 - std::min(std::abs(w), std::abs(w - 1.0)));
          if (w > 0.5) ++rank;
        }
        mc.add(rank == static_cast<long>(dk) ? 0.0 : -1.0);
      }
    }
    out.push_back(mc.result("erasure_projector_fact", 0.0));
  }

  {
    detail::MarginCheck mc;
    const int da = 2;
    for (int n : {1, 2}) {
      const int dan = (n == 1) ? 2 : 4;
      const BipartiteOperator input = maximally_entangled(dan);
      for (double p : probs) {
        const BipartiteOperator output =
            apply_to_B(tensor_power(erasure_channel(da, p), n), input);
        for (double sv : {-0.5, -0.25, -0.1}) {
          const SParam s(sv);
          const double k = k_lambda(output, s.order());
          mc.add(n * erasure_e0(p, da, sv) / sv + 1e-9 - k);
        }
      }
    }
    out.push_back(mc.result("erasure_exponent_chain", 0.0));
  }

  {
    // Cross-validate the n = 1 chain with the independent optimizer.
    detail::MarginCheck mc;
    auto gen = substream(seed, 8000);
    for (double p : probs) {
      const BipartiteOperator output =
          apply_to_B(erasure_channel(2, p), maximally_entangled(2));
      OptimizerOptions opts;
      opts.seed = gen();
      const double numeric = k_lambda_numeric(output, RenyiOrder(2.0), opts);
      const double closed = k_lambda(output, RenyiOrder(2.0));
      mc.add(1e-6 - std::abs(numeric - closed));
      mc.add(erasure_e0(p, 2, -0.5) / -0.5 + 1e-6 - numeric);
    }
    out.push_back(mc.result("erasure_numeric_cross_check", 0.0));
  }

  {
    detail::MarginCheck mc;
    for (double p : {0.25, 0.4}) {
      const double cap = erasure_capacity(p, 2);
      for (double off : {1e-3, 2e-3, 5e-3, 1e-2, 0.1}) {
        mc.add(strong_converse_exponent(cap - off, p, 2).exponent == 0.0
                   ? 0.0
                   : -1.0);
        mc.add(strong_converse_exponent(cap + off, p, 2).exponent > 0.0
                   ? 0.0
                   : -1.0);
      }
      mc.add(std::abs(strong_converse_exponent(cap, p, 2).exponent) <= 1e-6
                 ? 0.0
                 : -1.0);
    }
    for (double rate : {1e-3, 0.1, 1.0}) {
      mc.add(strong_converse_exponent(rate, 0.6, 2).exponent > 0.0 ? 0.0
                                                                   : -1.0);
    }
    out.push_back(mc.result("exponent_threshold", 0.0));
  }

  {
    detail::MarginCheck mc;
    for (double p : {0.0, 0.1, 0.25, 0.4, 0.5}) {
      const double cap = erasure_capacity(p, 2);
      mc.add(1e-12 - std::abs(cap - std::max(0.0, 1.0 - 2.0 * p) *
                                        std::log(2.0)));
      const double limit = erasure_e0(p, 2, -1e-4) / -1e-4;
      mc.add(1e-4 - std::abs(limit - cap));
    }
    for (double p : {0.6, 1.0}) {
      mc.add(erasure_capacity(p, 2) == 0.0 ? 0.0 : -1.0);
    }
    out.push_back(mc.result("capacity_and_limit", 0.0));
  }

  {
    detail::MarginCheck mc;
    const QuantumChannel id2(2, 2, {identity(2)});
    const BipartiteOperator input = maximally_entangled(2);
    for (double l : lambdas) {
      const double slack =
          theorem1_slack(1.0, 1, std::log(2.0), id2, input, RenyiOrder(l));
      mc.add(1e-10 - std::abs(slack));
    }
    out.push_back(mc.result("theorem1_identity_equality", 0.0));
  }

  {
    detail::MarginCheck mc;
    for (int n : {1, 2}) {
      const int dan = (n == 1) ? 2 : 4;
      const BipartiteOperator input = maximally_entangled(dan);
      for (double p : probs) {
        const double f = std::pow(1.0 - p, n);
        for (double l : lambdas) {
          mc.add(theorem1_slack(f, n, std::log(2.0), erasure_channel(2, p),
                                input, RenyiOrder(l)));
        }
      }
    }
    out.push_back(mc.result("theorem1_erasure_protocols", 1e-9));
  }

  return out;
}

inline std::vector<PropertyResult> verify_suite(const std::string& suite,
                                                std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const auto append = [&](std::vector<PropertyResult> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  if (suite == "mono" || suite == "all") append(verify_mono(seed));
  if (suite == "sibson" || suite == "all") append(verify_sibson(seed));
  if (suite == "erasure" || suite == "all") append(verify_erasure(seed));
  if (out.empty()) {
    throw BadParameterError("unknown suite: " + suite);
  }
  return out;
}

}  // namespace qconv
