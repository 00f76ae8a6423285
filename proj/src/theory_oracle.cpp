#include "confmodel/theory_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace confmodel::oracle {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_domain(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

void require_tau_23(double tau, const char* who) {
  if (!(tau > 2.0 && tau < 3.0)) throw std::domain_error(std::string(who) + ": tau must lie in (2, 3)");
}

double power_ratio(double tau) { return (tau - 1.0) / (2.0 - tau); }

}  // namespace

double gamma_star(double tau, double delta, double mu) {
  require(delta >= 0.0, "gamma_star: delta must be >= 0");
  require(tau > 1.0, "gamma_star: tau must exceed 1");
  require_domain(tau != 2.0, "gamma_star: undefined at tau = 2");
  if (tau < 2.0) return power_ratio(tau) * (1.0 + delta);
  require_domain(mu > 2.0 && std::isfinite(mu), "gamma_star: needs finite mu > 2");
  return (1.0 + delta) / (std::log(mu) - std::log(2.0));
}

double gamma_n(double delta, double eps, std::uint64_t stub_count, std::uint64_t n) {
  require(delta >= 0.0, "gamma_n: delta must be >= 0");
  require(eps >= 0.0 && eps < 0.5, "gamma_n: eps must lie in [0, 1/2)");
  require(n >= 2 && stub_count > 0, "gamma_n: needs n >= 2 and L_N > 0");
  const double mu_n = static_cast<double>(stub_count) / static_cast<double>(n);
  const double denom = std::log(mu_n) - std::log(2.0) - eps / (1.0 - 2.0 * eps);
  require_domain(denom > 0.0, "gamma_n: log mu_N - log 2 - eps/(1-2eps) must be positive");
  return (1.0 + delta) / denom * std::log(static_cast<double>(n));
}

double gamma_double_star(double tau, double delta, double mu, double f1) {
  require(f1 > 0.0, "gamma_double_star: f1 must be positive");
  require(tau > 1.0, "gamma_double_star: tau must exceed 1");
  require_domain(tau != 2.0, "gamma_double_star: undefined at tau = 2");
  if (tau < 2.0) return power_ratio(tau) * (1.0 - delta);
  require_domain(mu > f1 && std::isfinite(mu), "gamma_double_star: needs finite mu > f1");
  return (1.0 - delta) / (std::log(mu) - std::log(f1));
}

double prop21_bound(std::uint64_t n, std::uint64_t s, int r, std::uint64_t stub_count) {
  require(r == 1 || r == 2, "prop21_bound: r must be 1 or 2");
  require(s >= 1 && 3 * s <= n, "prop21_bound: need 1 <= s <= n/3");
  require(stub_count > 0, "prop21_bound: L_N must be positive");
  const double nd = static_cast<double>(n);
  const double base = 2.0 * std::pow(nd, 2.0 / r) / static_cast<double>(stub_count);
  long double sum = 0.0L;
  for (std::uint64_t j = s; j <= n - s; ++j) {
    const std::uint64_t e = (j * static_cast<std::uint64_t>(r) + 1) / 2;
    sum += std::pow(static_cast<long double>(base), static_cast<long double>(e));
  }
  return static_cast<double>(2.0L * sum);
}

double disconnect_product(std::uint64_t a, std::uint64_t stub_count) {
  require(a % 2 == 0, "disconnect_product: A must be even");
  require(stub_count % 2 == 0, "disconnect_product: L_N must be even");
  require(a <= stub_count, "disconnect_product: need A <= L_N");
  long double p = 1.0L;
  for (std::uint64_t m = 0; m < a / 2; ++m)
    p *= static_cast<long double>(2 * m + 1) / static_cast<long double>(stub_count - 2 * m - 1);
  return static_cast<double>(p);
}

HProduct h_product_check(std::uint64_t n, std::uint64_t k) {
  require(k >= 1 && k + 1 <= n, "h_product_check: need 1 <= k <= n-1");
  long double p = 1.0L;
  for (std::uint64_t m = 0; m < k; ++m) {
    p *= static_cast<long double>(n - m) * static_cast<long double>(2 * m + 1) /
         (static_cast<long double>(m + 1) * static_cast<long double>(2 * n - 2 * m - 1));
  }
  return {static_cast<double>(p), p <= 1.0L};
}

std::vector<double> u_sequence(double n, double tau, double c, std::size_t k_max) {
  require_tau_23(tau, "u_sequence");
  require(n >= 3.0, "u_sequence: need n >= 3");
  require(c > 0.0, "u_sequence: C must be positive");
  require(k_max >= 1, "u_sequence: need k_max >= 1");
  const double log_n = std::log(n);
  std::vector<double> u(k_max);
  u[0] = std::pow(n, 1.0 / (tau - 1.0)) / log_n;
  for (std::size_t k = 1; k < k_max; ++k) u[k] = c * log_n * std::pow(u[k - 1], tau - 2.0);
  return u;
}

double u_closed_form(double n, double tau, double c, std::size_t k) {
  require_tau_23(tau, "u_closed_form");
  require(n >= 3.0, "u_closed_form: need n >= 3");
  require(c > 0.0, "u_closed_form: C must be positive");
  require(k >= 1, "u_closed_form: need k >= 1");
  const double rho = std::pow(tau - 2.0, static_cast<double>(k - 1));
  const double a_k = (1.0 - rho) / (3.0 - tau);
  const double b_k = 1.0 / (3.0 - tau) - (4.0 - tau) / (3.0 - tau) * rho;
  const double c_k = rho / (tau - 1.0);
  return std::exp(a_k * std::log(c) + b_k * std::log(std::log(n)) + c_k * std::log(n));
}

double c_m_eps(std::uint64_t m, double eps, double tau) {
  require(m >= 2, "c_m_eps: need m >= 2");
  require(eps > 0.0, "c_m_eps: eps must be positive");
  require_tau_23(tau, "c_m_eps");
  return ((tau - 2.0) / (3.0 - tau) + 1.0 + eps) / std::log(static_cast<double>(m));
}

double c_f(double tau, std::uint64_t m, double eps) {
  require(m >= 2, "c_f: need m >= 2");
  require(eps > 0.0, "c_f: eps must be positive");
  require_tau_23(tau, "c_f");
  return 2.0 / std::abs(std::log(tau - 2.0)) +
         2.0 * ((tau - 2.0) / (3.0 - tau) + 1.0 + eps) / std::log(static_cast<double>(m));
}

double centering_term(Regime regime, double n, double tau, double nu) {
  if (regime == Regime::Tau23) {
    require_tau_23(tau, "centering_term");
    require(n > std::exp(1.0), "centering_term: need n > e");
    return 2.0 * std::log(std::log(n)) / std::abs(std::log(tau - 2.0));
  }
  require_domain(nu > 1.0, "centering_term: needs nu > 1");
  require(n > 1.0, "centering_term: need n > 1");
  return std::log(n) / std::log(nu);
}

double no_connect_bound(double d_a, double d_b, double stub_count) {
  require(d_a >= 0.0 && d_b >= 0.0, "no_connect_bound: stub totals must be >= 0");
  require(stub_count > 0.0, "no_connect_bound: L_N must be positive");
  return std::exp(-d_a * d_b / stub_count);
}

double two_cycle_mean(double f2, double mu) {
  require(mu > 0.0, "two_cycle_mean: mu must be positive");
  require(f2 >= 0.0, "two_cycle_mean: f2 must be >= 0");
  return (f2 / mu) * (f2 / mu);
}

double binomial_deviation_bound(double mean, double t) {
  require(mean >= 0.0, "binomial_deviation_bound: mean must be >= 0");
  require(t > 0.0, "binomial_deviation_bound: t must be positive");
  return 2.0 * std::exp(-t * t / (2.0 * (mean + t / 3.0)));
}

ComplementTail complement_tail_constants(double mu) {
  require_domain(mu > 2.0 && std::isfinite(mu), "complement_tail_constants: needs 2 < mu < infinity");
  return {4.0 / (2.0 + mu), 1.0 + 2.0 * (2.0 + mu) / (mu - 2.0)};
}

}  // namespace confmodel::oracle
