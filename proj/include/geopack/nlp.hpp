#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geopack {

enum class Sense { minimize, maximize };

// Inequalities are stored in the canonical g(x) <= 0 orientation; builders
// flip any printed >= constraint by negation before adding it.
enum class ConstraintKind { inequality, equality };

// One nonzero of a sparse gradient: d(func)/d(x[index]) = value.
struct GradEntry {
  int index = 0;
  double value = 0.0;
};

// Smooth scalar function of the full variable vector. The gradient callback
// appends entries only for the variables the function actually touches, so
// evaluating all constraint gradients of a large model stays proportional to
// the number of structural nonzeros.
struct SmoothFunction {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::vector<GradEntry>&)> gradient;
};

struct Constraint {
  ConstraintKind kind = ConstraintKind::inequality;
  SmoothFunction func;
  std::string label;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable smooth NLP: minimize or maximize f(x) subject to g_k(x) <= 0,
// h_e(x) = 0 and box bounds lower <= x <= upper (+-inf allowed). Constraint
// order is fixed at construction. Instances are safe to share across
// threads; evaluate/gradient are reentrant.
class NlpProblem {
 public:
  NlpProblem(std::vector<double> lower, std::vector<double> upper, Sense sense,
             SmoothFunction objective, std::vector<Constraint> constraints,
             std::vector<std::string> var_labels = {});

  int num_vars() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  Sense sense() const { return sense_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const SmoothFunction& objective() const { return objective_; }
  const Constraint& constraint(int k) const { return constraints_.at(k); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::string& var_label(int i) const { return var_labels_.at(i); }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  Sense sense_;
  SmoothFunction objective_;
  std::vector<Constraint> constraints_;
  std::vector<std::string> var_labels_;
};

struct Evaluation {
  double objective_value = 0.0;
  std::vector<double> constraint_values;  // construction order
  // max over inequality positive parts, absolute equality residuals and box
  // violations; exactly 0 iff x is feasible to machine comparison.
  double max_violation = 0.0;
};

// Pure evaluation of objective, all constraints and the violation metric.
// Throws EvalError naming the offending function if any value is NaN, and
// std::invalid_argument on a dimension mismatch.
Evaluation evaluate(const NlpProblem& problem, std::span<const double> x);

// Dense analytic gradients (sparse entries scattered into a full vector).
std::vector<double> objective_gradient(const NlpProblem& problem,
                                       std::span<const double> x);
std::vector<double> constraint_gradient(const NlpProblem& problem,
                                        std::span<const double> x, int k);

// Violation metric alone (same definition as Evaluation::max_violation).
double max_violation(const NlpProblem& problem, std::span<const double> x);

}  // namespace geopack
