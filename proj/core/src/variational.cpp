/* Copyright 2026 The entropylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "entropylab/variational.hpp"

#include <cmath>
#include <sstream>

namespace entropylab {
namespace {

struct Evaluation {
  HermitianMatrix y;
  PositiveDefiniteMatrix x;
  double value;
  HermitianMatrix gradient;
  double grad_norm;
};

double objective_value(const Objective& obj, const PositiveDefiniteMatrix& x) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GibbsProblem>) {
          return gibbs_objective(x, p.B);
        } else {
          return phi_objective(x, p.A, p.L, p.H);
        }
      },
      obj);
}

HermitianMatrix objective_gradient(const Objective& obj, const PositiveDefiniteMatrix& x) {
  return std::visit(
      [&](const auto& p) -> HermitianMatrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GibbsProblem>) {
          return gibbs_gradient(x, p.B);
        } else {
          return phi_gradient(x, p.A, p.L, p.H);
        }
      },
      obj);
}

Evaluation evaluate_at(const Objective& obj, HermitianMatrix y) {
  auto x = [&] {
    try {
      return matrix_exp(y);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      raise(ErrorKind::NonFiniteObjective, "exp(Y) left the positive definite cone: " + e.detail());
    }
  }();
  double value = 0.0;
  HermitianMatrix grad = HermitianMatrix::zero(y.dim());
  try {
    value = objective_value(obj, x);
    grad = objective_gradient(obj, x);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Domain && e.kind() != ErrorKind::NumericalInconsistency) throw;
    raise(ErrorKind::NonFiniteObjective, e.detail());
  }
  const double norm = grad.dense().norm();
  if (!std::isfinite(value) || !std::isfinite(norm)) {
    std::ostringstream os;
    os << "objective " << value << ", gradient norm " << norm;
    raise(ErrorKind::NonFiniteObjective, os.str());
  }
  return {std::move(y), std::move(x), value, std::move(grad), norm};
}

}  // namespace

void SolverConfig::validate() const {
  auto fail = [](const char* what) { raise(ErrorKind::Domain, std::string("solver config: ") + what); };
  if (max_iters < 1) fail("max_iters must be positive");
  if (!(grad_tol > 0.0)) fail("grad_tol must be positive");
  if (!(initial_step > 0.0)) fail("initial_step must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) fail("backtrack_factor must lie in (0, 1)");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) fail("armijo_c must lie in (0, 1)");
}

HermitianMatrix gibbs_gradient(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& b) {
  if (x.dim() != b.dim()) raise(ErrorKind::Dimension, "gibbs_gradient: X and B differ in size");
  return HermitianMatrix::symmetrize(matrix_log(b).dense() - matrix_log(x).dense());
}

HermitianMatrix phi_gradient(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& a,
                             const HermitianMatrix& l, const ComplexMatrix& h) {
  if (x.dim() != l.dim()) raise(ErrorKind::Dimension, "phi_gradient: X and L differ in size");
  const HermitianMatrix target = trace_exp_exponent(a, l, h);
  return HermitianMatrix::symmetrize(target.dense() - matrix_log(x).dense());
}

Index variable_dim(const Objective& objective) {
  return std::visit(
      [](const auto& p) -> Index {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GibbsProblem>) {
          return p.B.dim();
        } else {
          return p.L.dim();
        }
      },
      objective);
}

SolverResult maximize(const Objective& objective, const SolverConfig& cfg) {
  cfg.validate();
  constexpr int kMaxBacktracks = 60;

  Evaluation current = evaluate_at(objective, HermitianMatrix::zero(variable_dim(objective)));
  std::vector<double> history{current.value};
  std::size_t iterations = 0;
  bool converged = current.grad_norm <= cfg.grad_tol;

  while (!converged && iterations < cfg.max_iters) {
    const double slope = current.grad_norm * current.grad_norm;
    double step = cfg.initial_step;
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxBacktracks; ++attempt) {
      auto trial = evaluate_at(
          objective, HermitianMatrix::symmetrize(current.y.dense() + step * current.gradient.dense()));
      if (trial.value >= current.value + cfg.armijo_c * step * slope) {
        current = std::move(trial);
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) break;  // Line search stalled at round-off level.
    ++iterations;
    history.push_back(current.value);
    converged = current.grad_norm <= cfg.grad_tol;
  }

  return SolverResult{std::move(current.x), current.value, iterations, current.grad_norm, converged,
                      std::move(history)};
}

Json to_json(const SolverConfig& cfg) {
  return {{"max_iters", cfg.max_iters},
          {"grad_tol", cfg.grad_tol},
          {"initial_step", cfg.initial_step},
          {"backtrack_factor", cfg.backtrack_factor},
          {"armijo_c", cfg.armijo_c}};
}

Json to_json(const SolverResult& result) {
  return {{"argmax", to_json(result.argmax)},
          {"value", result.value},
          {"iterations", result.iterations},
          {"final_grad_norm", result.final_grad_norm},
          {"converged", result.converged},
          {"value_history", result.value_history}};
}

}  // namespace entropylab
