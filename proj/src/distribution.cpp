#include "assign/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "assign/error.hpp"

namespace assign {

namespace {

constexpr double kProbSumTolerance = 1e-9;

double xlogy_ratio(double y, double p) {
  // y log(y/p) with 0 log 0 = 0
  return y == 0.0 ? 0.0 : y * std::log(y / p);
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> support,
                                           std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.size() != probs_.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "support has " + std::to_string(support_.size()) +
                    " points but probs has " + std::to_string(probs_.size()));
  }
  if (support_.size() < 2) {
    throw Error(ErrorCode::LengthMismatch,
                "distribution needs at least two support points");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i])) {
      throw Error(ErrorCode::UnsortedSupport, "support values must be finite");
    }
    if (i > 0 && !(support_[i - 1] < support_[i])) {
      throw Error(ErrorCode::UnsortedSupport,
                  "support must be strictly increasing");
    }
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::NonPositiveProb, "every probability must be > 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << sum;
    throw Error(ErrorCode::ProbSumOutOfTolerance, msg.str());
  }
  for (double& p : probs_) p /= sum;

  const std::size_t k = support_.size();
  cum_.assign(k + 1, 0.0);
  cum_xp_.assign(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    cum_[i + 1] = cum_[i] + probs_[i];
    cum_xp_[i + 1] = cum_xp_[i] + support_[i] * probs_[i];
  }
  cum_[k] = 1.0;
  surv_.assign(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) surv_[i] = surv_[i + 1] + probs_[i];
}

DiscreteDistribution DiscreteDistribution::fair_die(int sides) {
  std::vector<double> support(sides), probs(sides, 1.0 / sides);
  for (int i = 0; i < sides; ++i) support[i] = i + 1;
  return {std::move(support), std::move(probs)};
}

std::size_t DiscreteDistribution::count_at_or_below(double x) const noexcept {
  return static_cast<std::size_t>(
      std::upper_bound(support_.begin(), support_.end(), x) - support_.begin());
}

std::size_t DiscreteDistribution::index_of(double x) const noexcept {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return 0;
  return static_cast<std::size_t>(it - support_.begin()) + 1;
}

DiscreteDistribution make_distribution(std::vector<double> support,
                                       std::vector<double> probs) {
  return {std::move(support), std::move(probs)};
}

double cdf(const DiscreteDistribution& dist, double x) noexcept {
  return dist.cum()[dist.count_at_or_below(x)];
}

double truncated_mean(const DiscreteDistribution& dist, double lo,
                      double hi) noexcept {
  if (!(lo < hi)) return 0.0;
  const auto cxp = dist.cum_xp();
  return cxp[dist.count_at_or_below(hi)] - cxp[dist.count_at_or_below(lo)];
}

double kl_bernoulli(double y, double p) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::DomainError, "kl_bernoulli: y must lie in [0,1]");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::DomainError, "kl_bernoulli: p must lie in (0,1)");
  }
  return xlogy_ratio(y, p) + xlogy_ratio(1.0 - y, 1.0 - p);
}

namespace {

void check_interior(const DiscreteDistribution& dist, std::size_t i) {
  if (i < 2 || i + 1 > dist.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "rate index must satisfy 2 <= i <= k-1, got " +
                    std::to_string(i));
  }
}

}  // namespace

double rate_minus(const DiscreteDistribution& dist, std::size_t i, double y) {
  check_interior(dist, i);
  return kl_bernoulli(y, dist.f(i - 1));
}

double rate_plus(const DiscreteDistribution& dist, std::size_t i, double y) {
  check_interior(dist, i);
  return kl_bernoulli(y, dist.f(i));
}

AsymptoticProfile asymptotic_profile(const DiscreteDistribution& dist) {
  const std::size_t k = dist.size();
  const auto tail = dist.surv();

  AsymptoticProfile profile;
  profile.d.assign(k, 0.0);
  profile.d[k - 1] = 1.0;
  for (std::size_t i = 2; i + 1 <= k; ++i) {
    const double log_tail_ratio = std::log(tail[i]) - std::log(tail[i - 1]);
    const double log_cum_ratio = std::log(dist.f(i - 1)) - std::log(dist.f(i));
    profile.d[i - 1] = log_tail_ratio / (log_cum_ratio + log_tail_ratio);
  }
  return profile;
}

DiscreteDistribution distribution_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  auto numbers = [&](const char* key) {
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array()) {
      throw Error(ErrorCode::ParseError,
                  std::string("distribution needs a numeric array \"") + key +
                      "\"");
    }
    std::vector<double> out;
    for (const auto& v : doc[key]) {
      if (!v.is_number()) {
        throw Error(ErrorCode::ParseError,
                    std::string("non-numeric entry in \"") + key + "\"");
      }
      out.push_back(v.get<double>());
    }
    return out;
  };
  return {numbers("support"), numbers("probs")};
}

DiscreteDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return distribution_from_json(buffer.str());
}

std::string distribution_to_json(const DiscreteDistribution& dist) {
  nlohmann::json doc;
  doc["support"] = std::vector<double>(dist.support().begin(), dist.support().end());
  doc["probs"] = std::vector<double>(dist.probs().begin(), dist.probs().end());
  return doc.dump();
}

}  // namespace assign
