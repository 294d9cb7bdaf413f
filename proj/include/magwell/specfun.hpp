#pragma once

namespace magwell {

/// Normalized Laguerre function of the Landau basis,
///
///   I_{n,l}(x) = sqrt(n! / (n+|l|)!) e^{-x/2} x^{|l|/2} L_n^{|l|}(x),
///
/// so that int_0^inf I_{n,l} I_{n',l} dx = delta_{n n'}. Evaluated with the
/// three-term recurrence on the normalized polynomials, rescaled on the fly,
/// so n in the thousands and large x neither overflow nor lose accuracy.
/// Throws DomainError for n < 0 or x < 0.
double laguerre_fn(int n, int l, double x);

/// Hurwitz zeta function zeta(s, q) = sum_{k>=0} (k+q)^{-s}, continued
/// analytically to all real s != 1 by Euler-Maclaurin summation.
/// Throws DomainError for q <= 0 or s == 1.
double hurwitz_zeta(double s, double q);

}  // namespace magwell
