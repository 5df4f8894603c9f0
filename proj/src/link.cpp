#include "ocd/link.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "ocd/error.hpp"

namespace ocd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// log(1 - exp(z)) for z <= 0.
double log1mexp(double z) {
    if (z == 0) return -kInf;
    return z > -std::numbers::ln2 ? std::log(-std::expm1(z)) : std::log1p(-std::exp(z));
}

double probit_log_cdf(double x) {
    if (x > 0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
    if (x > -20) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
    // Mills-ratio asymptotic series; the truncation error is below 1e-13 here.
    const double r = 1.0 / (x * x);
    const double series = 1 - r * (1 - 3 * r * (1 - 5 * r * (1 - 7 * r)));
    return -0.5 * x * x - std::log(-x) - kLogSqrt2Pi + std::log(series);
}

double logit_log_cdf(double x) {
    return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

}  // namespace

std::string to_string(LinkKind kind) { return kind == LinkKind::Probit ? "probit" : "logit"; }

LinkKind parse_link(const std::string& text) {
    if (text == "probit") return LinkKind::Probit;
    if (text == "logit") return LinkKind::Logit;
    throw Error(ErrorKind::InvalidArgument, "unknown link '" + text + "' (probit|logit)");
}

double link_cdf(LinkKind kind, double x) {
    if (x == kInf) return 1;
    if (x == -kInf) return 0;
    if (kind == LinkKind::Probit) return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    return x >= 0 ? 1 / (1 + std::exp(-x)) : std::exp(x) / (1 + std::exp(x));
}

double link_log_cdf(LinkKind kind, double x) {
    if (x == kInf) return 0;
    if (x == -kInf) return -kInf;
    return kind == LinkKind::Probit ? probit_log_cdf(x) : logit_log_cdf(x);
}

double link_log_pdf(LinkKind kind, double x) {
    if (std::isinf(x)) return -kInf;
    if (kind == LinkKind::Probit) return -0.5 * x * x - kLogSqrt2Pi;
    return logit_log_cdf(x) + logit_log_cdf(-x);
}

double link_pdf(LinkKind kind, double x) { return std::exp(link_log_pdf(kind, x)); }

double link_pdf_slope(LinkKind kind, double x) {
    if (kind == LinkKind::Probit) return -x;
    return link_cdf(kind, -x) - link_cdf(kind, x);
}

double link_quantile(LinkKind kind, double p) {
    if (!(p > 0 && p < 1)) {
        if (p == 0) return -kInf;
        if (p == 1) return kInf;
        throw Error(ErrorKind::InvalidArgument, "quantile probability outside [0, 1]");
    }
    if (kind == LinkKind::Probit) return -std::numbers::sqrt2 * boost::math::erfc_inv(2 * p);
    return std::log(p) - std::log1p(-p);
}

double log_interval_probability(LinkKind kind, double lo, double hi) {
    if (!(lo < hi)) return -kInf;
    if (hi == kInf) return link_log_cdf(kind, -lo);
    if (lo == -kInf) return link_log_cdf(kind, hi);
    if (lo >= 0) {
        // Both ends in the upper tail: difference of upper-tail masses.
        const double a = link_log_cdf(kind, -lo);
        return a + log1mexp(link_log_cdf(kind, -hi) - a);
    }
    if (hi <= 0) {
        const double b = link_log_cdf(kind, hi);
        return b + log1mexp(link_log_cdf(kind, lo) - b);
    }
    // Interval straddles 0: one minus the two tails.
    return std::log1p(-(link_cdf(kind, lo) + link_cdf(kind, -hi)));
}

}  // namespace ocd
