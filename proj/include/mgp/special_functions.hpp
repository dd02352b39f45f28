#pragma once

// Scalar special functions used by the GIG prior and the probit likelihood.
// All Bessel quantities are returned in log scale so that large orders and
// extreme arguments never overflow.

namespace mgp {

// ln K_order(z), modified Bessel function of the second kind, real order.
// Evaluated on |order|, so the result is exactly even in order.
// Throws DomainError for z <= 0 or non-finite arguments.
double log_bessel_k(double order, double z);

// K_{order+1}(z) / K_order(z), computed in log space.
double bessel_ratio(double order, double z);

// d/d(order) ln K_order(z) by a fourth-order central difference.
// Exactly antisymmetric in order and exactly zero at order == 0.
double dlogK_dorder(double order, double z);

double std_normal_pdf(double a);
double std_normal_cdf(double a);
// ln Phi(a); finite down to a ~ -1e150 via the Mills-ratio continued fraction.
double log_std_normal_cdf(double a);

// phi(a) / Phi(a), the inverse Mills ratio, stable for a -> -infinity.
double normal_hazard(double a);

// Digamma function psi(x) for x > 0.
double digamma(double x);

}  // namespace mgp
