#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace erlmag {

// Run fn(i) for i in [begin, end) on up to `threads` workers with a static
// stride partition. Each index must write only its own slots; under that
// contract the outcome is identical for every worker count.
void parallel_for_indices(int begin, int end, int threads,
                          const std::function<void(int)>& fn);

// Adaptive Gauss-Kronrod (7-15) integration on a finite interval.
// Subdivision stops when the panel error estimate drops below
// max(rel_tol * |panel value|, abs_tol). Deterministic: no randomization,
// fixed node tables, left-to-right recursion.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12,
                          double abs_tol = 0.0, int max_depth = 48);

// Levin u-transform estimate of lim S_n from the full sequence of partial
// sums and their terms. Best suited to alternating series; accuracy in
// double degrades past ~15 terms, so callers pass a short sequence.
double levin_u(const std::vector<double>& partial_sums,
               const std::vector<double>& terms, double beta = 1.0);

// Wynn rho extrapolation of lim S_n for sequences whose remainder has a
// polynomial expansion in 1/n (one-signed segment sums of a decaying
// oscillation). Returns the most self-consistent even-column estimate and
// the spread between the agreeing pair as the error estimate.
struct ExtrapolationResult {
    double value;
    double error_estimate;
};
ExtrapolationResult rho_extrapolate(const std::vector<double>& partial_sums);

// First sign change of f in (from, limit], located by scanning with the
// given step and bisecting to ~1e-13 relative. nullopt if none found.
std::optional<double> next_sign_change(const std::function<double(double)>& f,
                                       double from, double step, double limit);

// Infinite oscillatory tail: integral of `integrand` over [start, inf),
// where `oscillator` changes sign once per arch of the integrand (the
// integrand itself may be one-signed, e.g. a squared transform). Segments
// run between consecutive oscillator zeros and the segment-sum sequence is
// accelerated; series acceleration is chosen by the observed sign pattern.
struct OscillatoryTailOptions {
    double rel_tol = 1e-10;    // on the extrapolated tail value
    double scale_hint = 0.0;   // external magnitude the tolerance is relative to
    int max_segments = 400;
    int min_segments = 12;
    int threads = 1;           // worker count; result is independent of it
    double zero_scan_step = 0.7853981633974483;  // pi/4
};

struct OscillatoryTailResult {
    double value;
    double error_estimate;
    int segments;
};

OscillatoryTailResult integrate_oscillatory_tail(
    const std::function<double(double)>& integrand,
    const std::function<double(double)>& oscillator, double start,
    const OscillatoryTailOptions& opts = {});

}  // namespace erlmag
