// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// argv[1] must point at the qconv_cli binary (used by criterion 8).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "qconv/qconv.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct CriterionLine {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::map<std::string, qconv::PropertyResult> by_name(
    const std::vector<qconv::PropertyResult>& results) {
  std::map<std::string, qconv::PropertyResult> out;
  for (const auto& r : results) out[r.name] = r;
  return out;
}

// Conjunction of named properties; detail reports the weakest member.
CriterionLine from_properties(
    int id, const std::string& name,
    const std::map<std::string, qconv::PropertyResult>& pool,
    const std::vector<std::string>& wanted) {
  bool pass = true;
  std::string detail;
  for (const auto& w : wanted) {
    const auto it = pool.find(w);
    if (it == pool.end()) {
      pass = false;
      detail += w + ": missing; ";
      continue;
    }
    if (!it->second.pass) pass = false;
    detail += w + ": " + it->second.detail + "; ";
  }
  if (!detail.empty()) detail.resize(detail.size() - 2);
  return CriterionLine{id, name, pass, detail};
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = (argc > 1) ? argv[1] : "";
  const std::uint64_t seed = 42;
  std::vector<CriterionLine> lines;

  const auto t_mono = Clock::now();
  const auto mono = by_name(qconv::verify_mono(seed));
  const double mono_s = seconds_since(t_mono);

  const auto t_sibson = Clock::now();
  const auto sibson = by_name(qconv::verify_sibson(seed));
  const double sibson_s = seconds_since(t_sibson);

  const auto erasure = by_name(qconv::verify_erasure(seed));

  // 1. Sibson oracle equivalence, runtime < 2 minutes.
  {
    CriterionLine c = from_properties(1, "sibson oracle equivalence", sibson,
                                      {"sibson_oracle_equivalence"});
    c.detail += qconv::detail::format("; suite runtime %.1f s (limit 120 s)",
                                      sibson_s);
    if (sibson_s >= 120.0) c.pass = false;
    lines.push_back(c);
  }

  // 2. g-function suite.
  lines.push_back(from_properties(
      2, "g-function suite", sibson,
      {"g_zero_at_origin", "g_derivative_coherent_info",
       "g_derivative_fd_relative", "g_shifted_monotonicity"}));

  // 3. Monotonicity suites.
  {
    auto pool = mono;
    pool.insert(sibson.begin(), sibson.end());
    lines.push_back(from_properties(
        3, "monotonicity suites", pool,
        {"renyi_monotonicity", "hockey_monotonicity",
         "k_lambda_data_processing"}));
  }

  // 4. Erasure exponent chain.
  lines.push_back(from_properties(4, "erasure exponent chain", erasure,
                                  {"erasure_exponent_chain"}));

  // 5. Strong-converse numbers at (p=0.25, dA=2, rate=0.45).
  {
    const qconv::ConverseExponent ce =
        qconv::strong_converse_exponent(0.45, 0.25, 2);
    const double bound500 = qconv::fidelity_bound_renyi(
        qconv::BoundQuery(500, 0.45, 0.25, 2), qconv::SParam(-0.5));
    const double cap = qconv::erasure_capacity(0.25, 2);
    const double cap_dev = std::abs(cap - 0.5 * std::log(2.0));
    const double limit_dev =
        std::abs(qconv::erasure_e0(0.25, 2, -1e-4) / -1e-4 - cap);
    const bool pass = ce.exponent >= 0.01198 - 1e-3 && bound500 <= 2.6e-3 &&
                      cap_dev <= 1e-9 && limit_dev <= 1e-4;
    lines.push_back(CriterionLine{
        5, "strong-converse numbers", pass,
        qconv::detail::format(
            "exponent %.6f (>= 0.01098), bound(n=500) %.4e (<= 2.6e-3), "
            "capacity dev %.1e (<= 1e-9), limit dev %.1e (<= 1e-4)",
            ce.exponent, bound500, cap_dev, limit_dev)});
  }

  // 6. Hockey-stick bound value and Chernoff dominance of the exact tail.
  {
    const double bound = qconv::fidelity_bound_hockey(
        qconv::BoundQuery(100, 0.45, 0.25, 2));
    const bool value_ok = std::abs(bound - 1.083e-2) <= 1e-4;
    bool dominance_ok = true;
    std::string tail_detail;
    for (int n : {50, 100, 200}) {
      const long m = qconv::hockey_tail_cutoff(n, 0.45, 0.25, 2);
      const double tail = qconv::binomial_tail(n, m, 0.25);
      const double t = 0.45 / (4.0 * std::log(2.0));
      const double chernoff = std::exp(-(n / 0.5) * t * t);
      if (!(tail <= chernoff)) dominance_ok = false;
      tail_detail += qconv::detail::format(
          "n=%d: tail(m=%ld) %.4e vs term2 %.4e; ", n, m, tail, chernoff);
    }
    lines.push_back(CriterionLine{
        6, "hockey-stick bound", value_ok && dominance_ok,
        qconv::detail::format("bound(n=100) %.6e (target 1.083e-2 +- 1e-4); ",
                              bound) +
            tail_detail + (dominance_ok ? "dominance holds" : "dominance FAILS")});
  }

  // 7. Converse slack end to end.
  {
    auto pool = erasure;
    pool.insert(mono.begin(), mono.end());
    lines.push_back(from_properties(
        7, "converse slack end-to-end", pool,
        {"theorem1_identity_equality", "theorem1_erasure_protocols",
         "renyi_lower_bound"}));
  }

  // 8. CLI determinism, verify exit status and runtime, JSON round trip.
  {
    bool pass = true;
    std::string detail;
    if (cli.empty()) {
      pass = false;
      detail = "no CLI path supplied";
    } else {
      const fs::path dir =
          fs::temp_directory_path() /
          ("qconv_acceptance_" + std::to_string(::getpid()));
      fs::create_directories(dir);
      const fs::path state = dir / "state.json";
      qconv::save_operator(state.string(), qconv::maximally_entangled(2));
      const std::string q = "\"" + cli + "\"";

      const auto run_twice = [&](const std::string& args,
                                 const std::string& tag,
                                 const fs::path& extra1,
                                 const fs::path& extra2) {
        const fs::path o1 = dir / (tag + "_1.out");
        const fs::path o2 = dir / (tag + "_2.out");
        const int r1 = run_command(q + " " + args + " > " + o1.string() +
                                   " 2> /dev/null");
        const int r2 = run_command(q + " " + args + " > " + o2.string() +
                                   " 2> /dev/null");
        if (r1 != 0 || r2 != 0) {
          pass = false;
          detail += tag + ": nonzero exit; ";
          return;
        }
        if (read_file(o1) != read_file(o2)) {
          pass = false;
          detail += tag + ": stdout differs between reruns; ";
        }
        if (!extra1.empty() && read_file(extra1) != read_file(extra2)) {
          pass = false;
          detail += tag + ": output file differs between reruns; ";
        }
      };

      run_twice("k-lambda --state " + state.string() +
                    " --lambda 2 --numeric --seed 7",
                "klambda", {}, {});

      const fs::path csv1 = dir / "curve_1.csv";
      const fs::path csv2 = dir / "curve_2.csv";
      const std::string curve_args =
          "erasure-curve --p 0.25 --d 2 --rate 0.45 --n-max 40 "
          "--method both --out ";
      {
        const fs::path o1 = dir / "curve_1.out";
        const fs::path o2 = dir / "curve_2.out";
        const int r1 = run_command(q + " " + curve_args + csv1.string() +
                                   " > " + o1.string() + " 2> /dev/null");
        const int r2 = run_command(q + " " + curve_args + csv2.string() +
                                   " > " + o2.string() + " 2> /dev/null");
        if (r1 != 0 || r2 != 0) {
          pass = false;
          detail += "curve: nonzero exit; ";
        } else if (read_file(csv1) != read_file(csv2)) {
          pass = false;
          detail += "curve: CSV differs between reruns; ";
        }
      }

      run_twice("verify --suite mono --seed 42", "verify_mono", {}, {});

      const auto t0 = Clock::now();
      const int rv = run_command(q + " verify --suite all --seed 42 > " +
                                 (dir / "verify_all.out").string() +
                                 " 2> /dev/null");
      const double all_s = seconds_since(t0);
      if (rv != 0) {
        pass = false;
        detail += "verify all: exit " + std::to_string(rv) + "; ";
      }
      if (all_s >= 300.0) {
        pass = false;
        detail += "verify all: too slow; ";
      }
      detail += qconv::detail::format("verify all %.1f s (limit 300 s); ",
                                      all_s);

      const qconv::DensityOperator rho = qconv::random_density(3, 99);
      std::stringstream ss;
      qconv::save_operator(ss, {3}, rho.matrix());
      const qconv::OperatorRecord rec = qconv::load_operator(ss);
      if (rec.entries != rho.matrix()) {
        pass = false;
        detail += "JSON round trip not value-identical; ";
      } else {
        detail += "JSON round trip value-identical";
      }
      fs::remove_all(dir);
    }
    lines.push_back(CriterionLine{8, "CLI determinism and formats", pass,
                                  detail});
  }

  int failures = 0;
  for (const auto& line : lines) {
    std::printf("[%s] criterion %d (%s): %s\n", line.pass ? "PASS" : "FAIL",
                line.id, line.name.c_str(), line.detail.c_str());
    if (!line.pass) ++failures;
  }
  std::printf("# mono %.1f s, sibson %.1f s\n", mono_s, sibson_s);
  std::printf("# %zu criteria, %d failed\n", lines.size(), failures);
  return failures == 0 ? 0 : 1;
}
