#include "assign/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace assign::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// exp(max) * scale, accumulated one log-term at a time.
struct LogSum {
  double max = kNegInf;
  double scale = 0.0;

  void add(double log_term) noexcept {
    if (log_term == kNegInf) return;
    if (log_term > max) {
      scale = scale * std::exp(max - log_term) + 1.0;
      max = log_term;
    } else {
      scale += std::exp(log_term - max);
    }
  }
  double log() const noexcept { return scale == 0.0 ? kNegInf : max + std::log(scale); }
};

struct Terms {
  LogSum pos;
  LogSum neg;

  void add(int sign, double log_magnitude) noexcept {
    if (sign > 0) pos.add(log_magnitude);
    if (sign < 0) neg.add(log_magnitude);
  }
  void add_value(double v) noexcept {
    if (v != 0.0) add(v > 0.0 ? 1 : -1, std::log(std::abs(v)));
  }
};

// Row-invariant tables shared by every entry.
struct RowContext {
  const DiscreteDistribution& dist;
  std::vector<double> log_cum;
  std::vector<double> log_surv;

  explicit RowContext(const DiscreteDistribution& d) : dist(d) {
    const auto cum = d.cum();
    const auto surv = d.surv();
    log_cum.resize(cum.size());
    log_surv.resize(surv.size());
    for (std::size_t i = 0; i < cum.size(); ++i) {
      log_cum[i] = std::log(cum[i]);
      log_surv[i] = std::log(surv[i]);
    }
  }

  std::size_t nearest_atom(double v) const noexcept {
    const auto xs = dist.support();
    const auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it == xs.begin()) return 0;
    if (it == xs.end()) return xs.size() - 1;
    const auto hi = static_cast<std::size_t>(it - xs.begin());
    return (*it - v) < (v - xs[hi - 1]) ? hi : hi - 1;
  }

  // Endpoint b weighted by exp(log_weight), as an offset from atom c.
  void add_endpoint(Terms& terms, const AnchoredValue& b, double log_weight,
                    std::size_t c) const noexcept {
    if (log_weight == kNegInf) return;
    if (b.anchor == c) {
      if (b.sign != 0) terms.add(b.sign, log_weight + b.log_offset);
      return;
    }
    const double offset = (dist.support()[b.anchor] - dist.support()[c]) +
                          (b.sign == 0 ? 0.0 : b.sign * std::exp(b.log_offset));
    if (offset != 0.0) {
      terms.add(offset > 0.0 ? 1 : -1, log_weight + std::log(std::abs(offset)));
    }
  }

  AnchoredValue entry(const AnchoredValue* lo, const AnchoredValue* hi) const noexcept {
    const auto xs = dist.support();
    const auto ps = dist.probs();
    const auto cum = dist.cum();
    const auto cxp = dist.cum_xp();
    const auto surv = dist.surv();
    const std::size_t lo_count = lo ? lo->count_at_or_below() : 0;
    const std::size_t hi_count = hi ? hi->count_at_or_below() : xs.size();

    double approx = cxp[hi_count] - cxp[lo_count];
    if (lo) approx += lo->to_double(dist) * cum[lo_count];
    if (hi) approx += hi->to_double(dist) * surv[hi_count];
    const std::size_t c = nearest_atom(approx);

    Terms terms;
    if (lo) add_endpoint(terms, *lo, log_cum[lo_count], c);
    for (std::size_t j = lo_count; j < hi_count; ++j) {
      if (j != c) terms.add_value(ps[j] * (xs[j] - xs[c]));
    }
    if (hi) add_endpoint(terms, *hi, log_surv[hi_count], c);

    const double p = terms.pos.log();
    const double q = terms.neg.log();
    AnchoredValue out = AnchoredValue::atom(c);
    if (p > q) {
      out.sign = 1;
      out.log_offset = p + std::log1p(-std::exp(q - p));
    } else if (q > p) {
      out.sign = -1;
      out.log_offset = q + std::log1p(-std::exp(p - q));
    }
    return out;
  }
};

}  // namespace

void threshold_row_serial(const DiscreteDistribution& dist,
                          std::span<const AnchoredValue> prev,
                          std::span<AnchoredValue> out) {
  const RowContext ctx(dist);
  const std::size_t n_out = prev.size() + 1;
  for (std::size_t n = 0; n < n_out; ++n) {
    const AnchoredValue* lo = n > 0 ? &prev[n - 1] : nullptr;
    const AnchoredValue* hi = n + 1 < n_out ? &prev[n] : nullptr;
    out[n] = ctx.entry(lo, hi);
  }
}

void threshold_row_omp(const DiscreteDistribution& dist,
                       std::span<const AnchoredValue> prev,
                       std::span<AnchoredValue> out) {
  const RowContext ctx(dist);
  const auto n_out = static_cast<std::int64_t>(prev.size() + 1);

#pragma omp parallel for schedule(static) if (n_out > 2048)
  for (std::int64_t n = 0; n < n_out; ++n) {
    const AnchoredValue* lo = n > 0 ? &prev[n - 1] : nullptr;
    const AnchoredValue* hi = n + 1 < n_out ? &prev[n] : nullptr;
    out[n] = ctx.entry(lo, hi);
  }
}

}  // namespace assign::kernels
