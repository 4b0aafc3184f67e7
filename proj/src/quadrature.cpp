#include "erlmag/quadrature.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "erlmag/errors.hpp"

namespace erlmag {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]; even nodes are the
// embedded Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double value;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double rel_tol, double abs_tol, int depth, int max_depth) {
    const Panel p = gk15(f, a, b);
    if (depth >= max_depth) return p.value;
    const double limit = std::max(abs_tol, rel_tol * std::abs(p.value));
    if (p.error <= limit) return p.value;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, rel_tol, 0.5 * abs_tol, depth + 1, max_depth) +
           adapt(f, mid, b, rel_tol, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

void parallel_for_indices(int begin, int end, int threads,
                          const std::function<void(int)>& fn) {
    const int n = end - begin;
    if (threads <= 1 || n < 2) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn] {
            for (int i = begin + w; i < end; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          int max_depth) {
    if (!(a <= b)) throw DomainError("integrate_adaptive: interval reversed");
    if (a == b) return 0.0;
    return adapt(f, a, b, rel_tol, abs_tol, 0, max_depth);
}

double levin_u(const std::vector<double>& partial_sums,
               const std::vector<double>& terms, double beta) {
    if (partial_sums.empty() || partial_sums.size() != terms.size())
        throw DomainError("levin_u: need equal, nonempty sums and terms");
    const int n = static_cast<int>(partial_sums.size()) - 1;
    long double num = 0.0L;
    long double den = 0.0L;
    long double binom = 1.0L;  // C(n, j), updated multiplicatively
    for (int j = 0; j <= n; ++j) {
        if (terms[j] == 0.0) throw DomainError("levin_u: zero term");
        const long double scale =
            std::pow((beta + j) / (beta + n), static_cast<long double>(n - 1));
        const long double w = ((j % 2 == 0) ? 1.0L : -1.0L) * binom * scale /
                              ((beta + j) * static_cast<long double>(terms[j]));
        num += w * static_cast<long double>(partial_sums[j]);
        den += w;
        binom = binom * (n - j) / (j + 1);
    }
    if (den == 0.0L) throw DomainError("levin_u: degenerate weights");
    return static_cast<double>(num / den);
}

ExtrapolationResult rho_extrapolate(const std::vector<double>& partial_sums) {
    const std::size_t n = partial_sums.size();
    if (n < 4) {
        const double v = partial_sums.empty() ? 0.0 : partial_sums.back();
        const double e = n < 2 ? std::abs(v)
                               : std::abs(partial_sums[n - 1] - partial_sums[n - 2]);
        return {v, e};
    }
    // Build the rho table column by column; keep the last entry of each even
    // column (the odd columns are auxiliary reciprocal differences).
    std::vector<double> prev(n + 1, 0.0);  // column k-1
    std::vector<double> curr(partial_sums);  // column k = 0
    std::vector<double> evens;
    for (int k = 1; curr.size() > 1; ++k) {
        std::vector<double> next(curr.size() - 1);
        for (std::size_t i = 0; i + 1 < curr.size(); ++i) {
            double d = curr[i + 1] - curr[i];
            if (d == 0.0) d = std::numeric_limits<double>::min();
            next[i] = prev[i + 1] + k / d;
        }
        prev = std::move(curr);
        curr = std::move(next);
        if (k % 2 == 0) evens.push_back(curr.back());
    }
    if (evens.size() < 2) return {partial_sums.back(), std::abs(evens.empty() ? partial_sums.back() : evens[0] - partial_sums.back())};
    // The most trustworthy estimate is the pair of consecutive even columns
    // that agree best; deep columns can glitch on rounding noise.
    std::size_t best = 1;
    double best_gap = std::abs(evens[1] - evens[0]);
    for (std::size_t i = 2; i < evens.size(); ++i) {
        const double gap = std::abs(evens[i] - evens[i - 1]);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    return {evens[best], best_gap};
}

std::optional<double> next_sign_change(const std::function<double(double)>& f,
                                       double from, double step, double limit) {
    if (!(step > 0.0)) throw DomainError("next_sign_change: step must be positive");
    double x0 = from;
    double f0 = f(x0);
    while (x0 < limit) {
        double x1 = std::min(x0 + step, limit);
        double f1 = f(x1);
        if (f0 == 0.0) {
            x0 = x1;
            f0 = f1;
            continue;
        }
        if (f1 == 0.0 || (f0 > 0.0) != (f1 > 0.0)) {
            // Bisect to locate the crossing.
            double lo = x0, hi = x1;
            for (int it = 0; it < 100 && (hi - lo) > 1e-14 * std::abs(hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) return mid;
                if ((fm > 0.0) == (f0 > 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        x0 = x1;
        f0 = f1;
    }
    return std::nullopt;
}

OscillatoryTailResult integrate_oscillatory_tail(
    const std::function<double(double)>& integrand,
    const std::function<double(double)>& oscillator, double start,
    const OscillatoryTailOptions& opts) {
    constexpr double kPi = 3.141592653589793238462643383279503;
    std::vector<double> cuts{start};
    std::vector<double> terms;
    std::vector<double> sums;
    double running = 0.0;
    double prev_round_value = std::numeric_limits<double>::quiet_NaN();

    // Round schedule fixed up front so batching cannot depend on thread
    // count: 12, 20, 28, ... segments.
    int target = opts.min_segments;
    while (true) {
        const int have = static_cast<int>(terms.size());
        if (have >= opts.max_segments)
            throw Error("oscillatory tail: acceleration did not reach the "
                        "requested tolerance within the segment budget");
        const int want = std::min(target, opts.max_segments);

        // Discover the new cut points sequentially.
        while (static_cast<int>(cuts.size()) <= want) {
            const double last = cuts.back();
            auto z = next_sign_change(oscillator, last + 0.5 * opts.zero_scan_step,
                                      opts.zero_scan_step, last + 64.0 * kPi);
            cuts.push_back(z.has_value() ? *z : last + kPi);
        }

        // Integrate the new segments in parallel; slot-indexed writes keep
        // the result identical for every worker count.
        terms.resize(want);
        parallel_for_indices(have, want, opts.threads, [&](int i) {
            terms[i] = integrate_adaptive(integrand, cuts[i], cuts[i + 1], 1e-12,
                                          0.0, 40);
        });
        sums.resize(want);
        for (int i = have; i < want; ++i) {
            running += terms[i];
            sums[i] = running;
        }

        // Pick the accelerator by sign pattern: alternating segment sums go
        // to the Levin u-transform, one-signed tails to rho extrapolation.
        bool alternating = true;
        for (std::size_t i = 1; i < terms.size() && alternating; ++i) {
            if (terms[i] == 0.0 || terms[i - 1] == 0.0 ||
                (terms[i] > 0.0) == (terms[i - 1] > 0.0))
                alternating = false;
        }

        ExtrapolationResult est{};
        if (alternating) {
            const std::size_t w = std::min<std::size_t>(terms.size(), 14);
            const std::size_t j0 = terms.size() - w;
            std::vector<double> ws(sums.begin() + j0, sums.end());
            std::vector<double> wt(terms.begin() + j0, terms.end());
            est.value = levin_u(ws, wt, 1.0 + static_cast<double>(j0));
            est.error_estimate = std::abs(est.value - sums.back());
            if (terms.size() >= 2) {
                std::vector<double> ws2(ws.begin(), ws.end() - 1);
                std::vector<double> wt2(wt.begin(), wt.end() - 1);
                est.error_estimate =
                    std::abs(est.value - levin_u(ws2, wt2, 1.0 + static_cast<double>(j0)));
            }
        } else {
            est = rho_extrapolate(sums);
        }

        const double scale =
            std::max({std::abs(est.value), opts.scale_hint,
                      std::numeric_limits<double>::min()});
        const bool round_stable =
            !std::isnan(prev_round_value) &&
            std::abs(est.value - prev_round_value) <= 8.0 * opts.rel_tol * scale;
        if (est.error_estimate <= opts.rel_tol * scale && round_stable) {
            return {est.value, est.error_estimate, want};
        }
        prev_round_value = est.value;
        target += 8;
    }
}

}  // namespace erlmag
