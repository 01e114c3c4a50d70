#include "geopack/nlp.hpp"

#include <algorithm>
#include <cmath>

namespace geopack {

NlpProblem::NlpProblem(std::vector<double> lower, std::vector<double> upper,
                       Sense sense, SmoothFunction objective,
                       std::vector<Constraint> constraints,
                       std::vector<std::string> var_labels)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      sense_(sense),
      objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      var_labels_(std::move(var_labels)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("NlpProblem: bound vectors differ in length");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] <= upper_[i])) {
      throw std::invalid_argument("NlpProblem: lower[" + std::to_string(i) +
                                  "] > upper[" + std::to_string(i) + "]");
    }
  }
  if (var_labels_.empty()) {
    var_labels_.reserve(lower_.size());
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      var_labels_.push_back("x" + std::to_string(i));
    }
  }
  if (var_labels_.size() != lower_.size()) {
    throw std::invalid_argument("NlpProblem: wrong number of variable labels");
  }
}

namespace {

void check_dimension(const NlpProblem& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.num_vars()) {
    throw std::invalid_argument(
        "evaluate: vector length " + std::to_string(x.size()) +
        " does not match num_vars " + std::to_string(p.num_vars()));
  }
}

}  // namespace

Evaluation evaluate(const NlpProblem& p, std::span<const double> x) {
  check_dimension(p, x);
  Evaluation out;
  out.objective_value = p.objective().value(x);
  if (std::isnan(out.objective_value)) {
    throw EvalError("evaluate: objective returned NaN");
  }
  out.constraint_values.reserve(p.num_constraints());
  double viol = 0.0;
  for (const Constraint& c : p.constraints()) {
    const double v = c.func.value(x);
    if (std::isnan(v)) {
      throw EvalError("evaluate: constraint '" + c.label + "' returned NaN");
    }
    out.constraint_values.push_back(v);
    if (c.kind == ConstraintKind::inequality) {
      viol = std::max(viol, v);
    } else {
      viol = std::max(viol, std::abs(v));
    }
  }
  for (int i = 0; i < p.num_vars(); ++i) {
    viol = std::max(viol, p.lower()[i] - x[i]);
    viol = std::max(viol, x[i] - p.upper()[i]);
  }
  out.max_violation = std::max(viol, 0.0);
  return out;
}

namespace {

std::vector<double> densify(const NlpProblem& p, std::span<const double> x,
                            const SmoothFunction& f, const std::string& what) {
  std::vector<GradEntry> entries;
  f.gradient(x, entries);
  std::vector<double> g(static_cast<std::size_t>(p.num_vars()), 0.0);
  for (const GradEntry& e : entries) {
    if (e.index < 0 || e.index >= p.num_vars()) {
      throw EvalError("gradient of '" + what + "' touches variable " +
                      std::to_string(e.index) + " out of range");
    }
    if (std::isnan(e.value)) {
      throw EvalError("gradient of '" + what + "' returned NaN");
    }
    g[static_cast<std::size_t>(e.index)] += e.value;
  }
  return g;
}

}  // namespace

std::vector<double> objective_gradient(const NlpProblem& p,
                                       std::span<const double> x) {
  check_dimension(p, x);
  return densify(p, x, p.objective(), "objective");
}

std::vector<double> constraint_gradient(const NlpProblem& p,
                                        std::span<const double> x, int k) {
  check_dimension(p, x);
  if (k < 0 || k >= p.num_constraints()) {
    throw std::invalid_argument("constraint_gradient: index out of range");
  }
  const Constraint& c = p.constraint(k);
  return densify(p, x, c.func, c.label);
}

double max_violation(const NlpProblem& p, std::span<const double> x) {
  return evaluate(p, x).max_violation;
}

}  // namespace geopack
