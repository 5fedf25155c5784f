#pragma once

namespace phonosurp {

// Regularized incomplete beta I_x(a, b), evaluated by a modified-Lentz
// continued fraction (converged to 1e-15 relative). `one_minus_x` lets callers
// pass 1 - x without cancellation; pass a negative value to have it computed.
double regularized_incomplete_beta(double a, double b, double x, double one_minus_x = -1.0);

// Upper-tail probability P(T > t) of Student's t with `df` degrees of freedom.
// Throws DomainError for non-finite t or df, or df <= 0.
double student_t_sf(double t, double df);

// 2 * sf(|t|), clamped to [0, 1]. Infinite |t| gives 0.
double student_t_two_sided_p(double t, double df);

}  // namespace phonosurp
