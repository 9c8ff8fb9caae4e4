#pragma once

namespace syncact {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1], via the
// Lentz continued fraction on whichever side of the mean converges fastest.
// Absolute accuracy about 1e-14 for a, b up to a few thousand.
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability P(|T| >= |t|) of Student's t with `df` degrees of
// freedom. Infinite |t| gives 0.
double student_t_two_sided(double t, double df);

}  // namespace syncact
