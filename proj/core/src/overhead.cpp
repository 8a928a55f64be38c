#include <specon/overhead.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specon {

namespace {

double pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

struct Moments {
    double mean;
    double second;
};

Moments clipped_moments(double mu, double sigma, double lo, double hi) {
    if (sigma == 0.0) {
        double v = std::clamp(mu, lo, hi);
        return {v, v * v};
    }
    double a = (lo - mu) / sigma;
    double b = (hi - mu) / sigma;
    double pa = cdf(a);
    double pb = cdf(b);
    double fa = pdf(a);
    double fb = pdf(b);
    double mid = pb - pa;
    double mean = lo * pa + hi * (1.0 - pb) + mu * mid + sigma * (fa - fb);
    double second = lo * lo * pa + hi * hi * (1.0 - pb) + mu * mu * mid +
                    2.0 * mu * sigma * (fa - fb) + sigma * sigma * (mid + a * fa - b * fb);
    return {mean, second};
}

// mu giving the requested clipped mean at fixed sigma; the clipped mean is
// increasing in mu.
double solve_mu(double target_mean, double sigma, double lo, double hi) {
    double span = hi - lo;
    double left = lo - 50.0 * (span + sigma);
    double right = hi + 50.0 * (span + sigma);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (left + right);
        if (clipped_moments(mid, sigma, lo, hi).mean < target_mean) {
            left = mid;
        } else {
            right = mid;
        }
    }
    return 0.5 * (left + right);
}

double clipped_sd(double mu, double sigma, double lo, double hi) {
    auto m = clipped_moments(mu, sigma, lo, hi);
    return std::sqrt(std::max(m.second - m.mean * m.mean, 0.0));
}

}  // namespace

void OverheadModel::validate() const {
    if (!(lo >= 0.0 && hi >= lo)) {
        throw std::invalid_argument("overhead bounds must satisfy 0 <= lo <= hi");
    }
    if (!(mean >= lo && mean <= hi)) {
        throw std::invalid_argument("overhead mean must lie inside its bounds");
    }
    if (!(sd >= 0.0)) {
        throw std::invalid_argument("overhead sd must be non-negative");
    }
}

double ClippedNormal::mean() const {
    return clipped_moments(mu, sigma, lo, hi).mean;
}

double ClippedNormal::stddev() const {
    return clipped_sd(mu, sigma, lo, hi);
}

double ClippedNormal::sample(Rng& rng) const {
    return std::clamp(mu + sigma * rng.normal(), lo, hi);
}

ClippedNormal fit_overhead(const OverheadModel& model) {
    model.validate();
    ClippedNormal out{model.mean, 0.0, model.lo, model.hi};
    if (model.sd == 0.0 || model.hi == model.lo) {
        return out;
    }
    // Two-point mass on the bounds is the widest clipped distribution.
    double ceiling = std::sqrt((model.mean - model.lo) * (model.hi - model.mean));
    if (model.sd >= ceiling) {
        throw std::invalid_argument(fmt::format(
            "overhead sd {} unreachable within [{}, {}] at mean {} (max {:.4f})", model.sd,
            model.lo, model.hi, model.mean, ceiling));
    }
    double left = 0.0;
    double right = model.sd;
    while (clipped_sd(solve_mu(model.mean, right, model.lo, model.hi), right, model.lo,
                      model.hi) < model.sd) {
        right *= 2.0;
        if (right > 1e6 * (model.hi - model.lo + 1.0)) {
            throw std::invalid_argument("overhead sd cannot be fitted");
        }
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (left + right);
        double mu = solve_mu(model.mean, mid, model.lo, model.hi);
        if (clipped_sd(mu, mid, model.lo, model.hi) < model.sd) {
            left = mid;
        } else {
            right = mid;
        }
    }
    out.sigma = 0.5 * (left + right);
    out.mu = solve_mu(model.mean, out.sigma, model.lo, model.hi);
    return out;
}

}  // namespace specon
