#pragma once

#include <cstdint>
#include <vector>

// Closed-form constants and bounds for the configuration model. Every function
// is pure; inputs outside the stated domain raise std::invalid_argument (bad
// argument shape) or std::domain_error (the formula is undefined there).

namespace confmodel::oracle {

/// Non-giant size scale (1+delta)/(log mu - log 2) for tau > 2, which is to be
/// multiplied by log n; ((tau-1)/(2-tau))(1+delta) for tau in (1, 2).
double gamma_star(double tau, double delta, double mu);

/// Same with mu replaced by L_N/n and an eps correction in the denominator,
/// already multiplied by log n.
double gamma_n(double delta, double eps, std::uint64_t stub_count, std::uint64_t n);

/// (1-delta)/(log mu - log f1) for tau > 2; ((tau-1)/(2-tau))(1-delta) for tau in (1, 2).
double gamma_double_star(double tau, double delta, double mu, double f1);

/// 2 sum_{j=s}^{n-s} (2 n^(2/r) / L_N)^ceil(jr/2), r in {1, 2}, 1 <= s <= n/3.
double prop21_bound(std::uint64_t n, std::uint64_t s, int r, std::uint64_t stub_count);

/// prod_{m=0}^{A/2-1} (2m+1)/(L-2m-1): the chance that a fixed set of A stubs is
/// paired only among itself. A = 0 gives the empty product 1.
double disconnect_product(std::uint64_t a, std::uint64_t stub_count);

struct HProduct {
  double value;
  bool at_most_one;
};

/// prod_{m=0}^{k-1} (n-m)(2m+1) / ((m+1)(2n-2m-1)), 1 <= k <= n-1.
HProduct h_product_check(std::uint64_t n, std::uint64_t k);

/// u_1 = n^(1/(tau-1)) / log n, u_k = C log n u_{k-1}^(tau-2); returns u_1..u_{k_max}.
std::vector<double> u_sequence(double n, double tau, double c, std::size_t k_max);

/// u_k = C^(a_k) (log n)^(b_k) n^(c_k) with
/// a_k = (1 - (tau-2)^(k-1)) / (3-tau),
/// b_k = 1/(3-tau) - ((4-tau)/(3-tau)) (tau-2)^(k-1),
/// c_k = (tau-2)^(k-1) / (tau-1).
double u_closed_form(double n, double tau, double c, std::size_t k);

double c_m_eps(std::uint64_t m, double eps, double tau);

/// Diameter constant: 2/|log(tau-2)| + 2((tau-2)/(3-tau) + 1 + eps)/log m.
double c_f(double tau, std::uint64_t m, double eps);

enum class Regime { Tau23, Tau3Plus };

/// 2 log log n / |log(tau-2)| for Tau23, log n / log nu for Tau3Plus.
double centering_term(Regime regime, double n, double tau, double nu);

/// exp(-D_A D_B / L_N).
double no_connect_bound(double d_a, double d_b, double stub_count);

/// (f2/mu)^2.
double two_cycle_mean(double f2, double mu);

/// 2 exp(-t^2 / (2 (mean + t/3))).
double binomial_deviation_bound(double mean, double t);

/// P(C_N >= s) <= b a^s with a = 4/(2+mu), b = 1 + 2(2+mu)/(mu-2), valid when
/// P(D >= 2) = 1 and 2 < mu < infinity, up to the large-deviation term of mu_N.
struct ComplementTail {
  double a;
  double b;
};
ComplementTail complement_tail_constants(double mu);

}  // namespace confmodel::oracle
