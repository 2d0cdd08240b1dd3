#include "pmu/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "pmu/error.hpp"
#include "pmu/rng.hpp"

namespace pmu {
namespace {

constexpr double kComponentDecay = 0.05;
constexpr double kLoadingSpread = 0.05;

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

void ScenarioSpec::validate() const {
  if (rows < 1 || cols < 1) throw ParameterError("scenario needs at least one row and column");
  if (signal_rank < 1 || signal_rank > std::min(rows, cols))
    throw ParameterError("signal_rank must lie in [1, min(rows, cols)]");
  if (!(noise_var >= 0.0) || !std::isfinite(noise_var))
    throw ParameterError("noise_var must be nonnegative");
  if (event) {
    if (event->onset < 1 || event->onset > rows)
      throw ParameterError("event onset must lie in [1, rows]");
    if (!(event->damping >= 0.0) || !std::isfinite(event->frequency) ||
        !std::isfinite(event->amplitude))
      throw ParameterError("event parameters must be finite with nonnegative damping");
  }
}

DenseMatrix generate_synthetic(const ScenarioSpec& spec) {
  spec.validate();
  const Index n1 = spec.rows;
  const Index n2 = spec.cols;
  Rng rng(spec.seed);

  Eigen::VectorXd u = Eigen::VectorXd::Ones(n1);
  if (spec.event) {
    const auto& ev = *spec.event;
    for (Index t = ev.onset; t <= n1; ++t) {
      const double dt = static_cast<double>(t - ev.onset);
      u(t - 1) += ev.amplitude * std::exp(-ev.damping * dt) *
                  std::sin(2.0 * std::numbers::pi * ev.frequency * dt);
    }
  }
  Eigen::VectorXd v(n2);
  for (Index j = 0; j < n2; ++j) v(j) = 1.0 + kLoadingSpread * rng.gaussian();

  MatrixXd x = u * v.transpose();
  double weight = 1.0;
  for (int p = 2; p <= spec.signal_rank; ++p) {
    weight *= kComponentDecay;
    Eigen::VectorXd up(n1), vp(n2);
    for (Index i = 0; i < n1; ++i) up(i) = rng.gaussian();
    for (Index j = 0; j < n2; ++j) vp(j) = rng.gaussian();
    x.noalias() += weight * up * vp.transpose();
  }
  if (spec.noise_var > 0.0) {
    const double sd = std::sqrt(spec.noise_var);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] += sd * rng.gaussian();
  }
  return DenseMatrix(std::move(x));
}

ObservedMatrix apply_random_mask(const DenseMatrix& x, double p_observe, std::uint64_t seed) {
  require_probability(p_observe, "p_observe");
  Rng rng(seed);
  MaskMatrix mask(x.rows(), x.cols(), 0);
  for (Index r = 0; r < x.rows(); ++r)
    for (Index c = 0; c < x.cols(); ++c) mask.set(r, c, rng.uniform() < p_observe);
  return ObservedMatrix(x, std::move(mask));
}

ObservedMatrix apply_row_mask(const DenseMatrix& x, double p_row_observe, std::uint64_t seed) {
  require_probability(p_row_observe, "p_row_observe");
  Rng rng(seed);
  MaskMatrix mask(x.rows(), x.cols(), 0);
  for (Index r = 0; r < x.rows(); ++r) {
    const bool keep = rng.uniform() < p_row_observe;
    for (Index c = 0; c < x.cols(); ++c) mask.set(r, c, keep);
  }
  return ObservedMatrix(x, std::move(mask));
}

BurstSpec default_burst() {
  BurstSpec b;
  for (Index c = 1; c <= 9; ++c) b.channels.push_back(c);
  b.t_start = 90;
  b.t_end = 200;
  return b;
}

ObservedMatrix apply_burst_mask(const DenseMatrix& x, const BurstSpec& burst) {
  if (burst.t_start < 1 || burst.t_start > burst.t_end || burst.t_end > x.rows())
    throw ParameterError("burst instants must satisfy 1 <= t_start <= t_end <= " +
                         std::to_string(x.rows()));
  std::set<Index> seen;
  for (Index c : burst.channels) {
    if (c < 1 || c > x.cols())
      throw ParameterError("burst channel " + std::to_string(c) + " outside [1, " +
                           std::to_string(x.cols()) + "]");
    if (!seen.insert(c).second)
      throw ParameterError("burst channel " + std::to_string(c) + " listed twice");
  }
  MaskMatrix mask(x.rows(), x.cols(), 1);
  for (Index c : burst.channels)
    for (Index t = burst.t_start; t <= burst.t_end; ++t) mask.set(t - 1, c - 1, false);
  return ObservedMatrix(x, std::move(mask));
}

}  // namespace pmu
