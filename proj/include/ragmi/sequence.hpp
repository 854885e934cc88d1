#pragma once

#include <vector>

namespace ragmi {

/// A finite sequence of real scores (natural-log scale when holding PMI).
using RealSequence = std::vector<double>;

/// Second difference 2*a[n] - a[n+1] - a[n-1] at 1-based interior position n
/// (2 <= n <= N-1).
double second_difference(const RealSequence& seq, int n);

/// True iff every interior second difference is <= 0. Sequences with fewer
/// than three elements are convex vacuously.
bool is_convex(const RealSequence& seq);

/// True iff both endpoints are >= every interior element (non-strict).
bool is_u_shaped(const RealSequence& seq);

/// Exhaustive check whether some arrangement of seq is convex. Capped at
/// N <= 10; intended as a test oracle, not a production path.
bool convex_permutation_exists(const RealSequence& seq);

/// Sum of the interior second differences. Telescopes to
/// a[2] + a[N-1] - a[1] - a[N] (1-based); zero when N < 3.
double curvature_sum(const RealSequence& seq);

/// The endpoint form -2*(a[1] + a[N]) + sum(a). For a fixed multiset this
/// depends on the arrangement only through its endpoints; it equals
/// curvature_sum exactly when N == 4.
double endpoint_curvature(const RealSequence& seq);

}  // namespace ragmi
