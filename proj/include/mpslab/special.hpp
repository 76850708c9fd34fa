#pragma once

namespace mpslab::distributions {

// Gamma function on the real line.  Lanczos approximation (g=7, 9 terms),
// ~14 significant digits; the poles 0, -1, -2, ... raise DomainError.
double gamma_fn(double x);

// ln Gamma(x) for x > 0.
double log_gamma_fn(double x);

// Euler integral of the first kind, p, q > 0; evaluated in log space so
// large arguments cannot overflow intermediate Gamma values.
double beta_fn(double p, double q);

}  // namespace mpslab::distributions
