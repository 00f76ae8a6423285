#include "confmodel/offspring_law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace confmodel {

namespace {
constexpr double kMassTolerance = 1e-12;
constexpr double kNegligiblePower = 1e-18;
}  // namespace

OffspringLaw::OffspringLaw(std::vector<double> head, double tail_mass, double mean)
    : head_(std::move(head)), tail_mass_(tail_mass), mean_(mean) {
  if (head_.empty()) throw std::invalid_argument("OffspringLaw: empty head");
  if (tail_mass_ < 0.0) throw std::invalid_argument("OffspringLaw: negative tail mass");
  // Long heads carry many tiny terms; adding them smallest first keeps the
  // rounding of the total well below the tolerance.
  double total = tail_mass_;
  for (auto it = head_.rbegin(); it != head_.rend(); ++it) {
    if (!(*it >= 0.0)) throw std::invalid_argument("OffspringLaw: negative probability");
    total += *it;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw std::invalid_argument("OffspringLaw: probabilities sum to " + std::to_string(total));
}

OffspringLaw OffspringLaw::from_pmf(const std::map<std::size_t, double>& pmf) {
  if (pmf.empty()) throw std::invalid_argument("OffspringLaw: empty pmf");
  std::vector<double> head(pmf.rbegin()->first + 1, 0.0);
  double mean = 0.0;
  for (const auto& [k, p] : pmf) {
    head[k] = p;
    mean += static_cast<double>(k) * p;
  }
  return OffspringLaw(std::move(head), 0.0, mean);
}

double OffspringLaw::pgf(double s) const {
  if (s >= 1.0) return 1.0;
  double acc = 0.0;
  double power = 1.0;
  for (double p : head_) {
    acc += p * power;
    power *= s;
    if (power < kNegligiblePower) return acc;
  }
  return acc + tail_mass_ * power;
}

double OffspringLaw::pgf_derivative(double s) const {
  if (s >= 1.0) return mean_;
  double acc = 0.0;
  double power = 1.0;  // s^(k-1)
  for (std::size_t k = 1; k < head_.size(); ++k) {
    acc += static_cast<double>(k) * head_[k] * power;
    power *= s;
    if (power * static_cast<double>(k + 1) < kNegligiblePower) return acc;
  }
  return acc + tail_mass_ * static_cast<double>(head_.size()) * power;
}

OffspringSampler::OffspringSampler(const OffspringLaw& law) {
  const auto& head = law.head();
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < head.size(); ++k) {
    if (head[k] > 0.0) {
      ++nonzero;
      constant_ = k;
    }
  }
  deterministic_ = nonzero == 1 && law.tail_mass() == 0.0;
  cumulative_.resize(head.size());
  std::partial_sum(head.begin(), head.end(), cumulative_.begin());
  if (law.tail_mass() == 0.0) cumulative_.back() = 1.0;
}

std::size_t OffspringSampler::operator()(Rng& rng) const {
  if (deterministic_) return constant_;
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

}  // namespace confmodel
