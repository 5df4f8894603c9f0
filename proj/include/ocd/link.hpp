#pragma once

#include <string>

namespace ocd {

// Cumulative link F of the ordinal regression. Both kinds are symmetric,
// F(-x) = 1 - F(x), which the tail-accurate helpers below rely on.
enum class LinkKind { Probit, Logit };

std::string to_string(LinkKind kind);
LinkKind parse_link(const std::string& text);

double link_cdf(LinkKind kind, double x);
double link_log_cdf(LinkKind kind, double x);
double link_pdf(LinkKind kind, double x);
double link_log_pdf(LinkKind kind, double x);
// f'(x) / f(x).
double link_pdf_slope(LinkKind kind, double x);
double link_quantile(LinkKind kind, double p);

// log(F(hi) - F(lo)) for lo < hi; either end may be infinite. Accurate when
// the interval sits far in one tail or covers almost all the mass.
double log_interval_probability(LinkKind kind, double lo, double hi);

}  // namespace ocd
