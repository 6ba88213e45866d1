#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace qconv {

struct SimplexOptions {
  int max_iterations = 5000;
  // Stall criterion: stop once the best value improved by less than this
  // over `stall_window` consecutive iterations.
  double value_tolerance = 1e-9;
  int stall_window = 50;
  double initial_step = 0.25;
};

struct SimplexResult {
  Eigen::VectorXd point;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool stalled = false;
};

// Nelder-Mead downhill simplex. Infinite objective values are allowed; they
// simply rank worst, which is how infeasible regions are fenced off.
template <typename F>
SimplexResult nelder_mead(F&& f, const Eigen::VectorXd& x0,
                          const SimplexOptions& opt) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> ord(n + 1);
  auto sort_simplex = [&] {
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
  };
  sort_simplex();

  double anchor = vals[ord[0]];
  int stall = 0;
  SimplexResult res;

  for (int it = 0; it < opt.max_iterations; ++it) {
    const int best = ord[0];
    const int worst = ord[n];
    const int second_worst = ord[n - 1];

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
    const double fr = f(reflected);

    if (fr < vals[best]) {
      const Eigen::VectorXd expanded =
          centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
    } else if (fr < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      Eigen::VectorXd contracted;
      if (outside) {
        contracted = centroid + 0.5 * (reflected - centroid);
      } else {
        contracted = centroid - 0.5 * (centroid - pts[worst]);
      }
      const double fc = f(contracted);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = contracted;
        vals[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          vals[i] = f(pts[i]);
        }
      }
    }

    sort_simplex();
    res.iterations = it + 1;

    if (anchor - vals[ord[0]] >= opt.value_tolerance) {
      anchor = vals[ord[0]];
      stall = 0;
    } else {
      ++stall;
    }
    if (stall >= opt.stall_window) {
      res.stalled = true;
      break;
    }
  }

  res.point = pts[ord[0]];
  res.value = vals[ord[0]];
  return res;
}

}  // namespace qconv
