#include "pbe/expoly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "pbe/errors.hpp"
#include "pbe/simd/kernels.hpp"

namespace pbe {

namespace {

std::atomic<std::size_t> g_term_budget{512};

double lgamma_d(double x) { return std::lgamma(x); }

// Gamma(p + j + 1) / a^(p + j + 1) for rational p, a.
double gamma_over_rate_power(const Rational& p, int j, const Rational& a) {
  const double e = to_double(p) + j + 1.0;
  return std::exp(lgamma_d(e) - e * std::log(to_double(a)));
}

double beta_fn(double x, double y) {
  return std::exp(lgamma_d(x) + lgamma_d(y) - lgamma_d(x + y));
}

}  // namespace

std::size_t term_budget() { return g_term_budget.load(); }
void set_term_budget(std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("term budget must be positive");
  g_term_budget.store(cap);
}

ExpPoly::ExpPoly(std::vector<ExpPolyTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!(t.power > Rational(-1))) throw std::domain_error("ExpPoly term power must be > -1");
    if (!(t.rate > Rational(0))) throw std::domain_error("ExpPoly term rate must be > 0");
    if (!std::isfinite(t.coeff)) throw std::domain_error("ExpPoly term coefficient not finite");
  }
  auto key_less = [](const ExpPolyTerm& a, const ExpPolyTerm& b) {
    if (a.rate != b.rate) return a.rate < b.rate;
    return a.power < b.power;
  };
  std::sort(terms_.begin(), terms_.end(), key_less);

  // Merge duplicate (power, rate) keys.
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    ExpPolyTerm merged = terms_[i];
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].rate == merged.rate && terms_[j].power == merged.power) {
      merged.coeff += terms_[j].coeff;
      ++j;
    }
    terms_[out++] = merged;
    i = j;
  }
  terms_.resize(out);

  std::vector<double> weight(terms_.size());
  double max_abs = 0.0, max_weight = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    weight[i] = std::abs(t.coeff) * gamma_over_rate_power(t.power, 1, t.rate);
    max_abs = std::max(max_abs, std::abs(t.coeff));
    max_weight = std::max(max_weight, weight[i]);
  }
  const double drop_c = kTermDropTolerance * max_abs;
  const double drop_w = kTermDropTolerance * max_weight;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(std::abs(terms_[i].coeff) <= drop_c && weight[i] <= drop_w))
      terms_[kept++] = terms_[i];
  terms_.resize(kept);

  if (terms_.size() > term_budget())
    throw term_budget_exceeded("ExpPoly term count " + std::to_string(terms_.size()) +
                               " exceeds budget " + std::to_string(term_budget()));
}

ExpPoly ExpPoly::term(double coeff, const Rational& power, const Rational& rate) {
  return ExpPoly(std::vector<ExpPolyTerm>{{coeff, power, rate}});
}

double ExpPoly::operator()(double s) const {
  if (s < 0.0) throw std::domain_error("ExpPoly evaluated at negative s");
  double sum = 0.0;
  if (s == 0.0) {
    for (const auto& t : terms_) {
      if (t.power < Rational(0))
        throw std::domain_error("ExpPoly with negative power evaluated at s = 0");
      if (t.power == Rational(0)) sum += t.coeff;
    }
    return sum;
  }
  const double ls = std::log(s);
  for (const auto& t : terms_)
    sum += t.coeff * std::exp(to_double(t.power) * ls - to_double(t.rate) * s);
  return sum;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  std::vector<ExpPolyTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  *this = ExpPoly(std::move(all));
  return *this;
}

ExpPoly operator+(ExpPoly lhs, const ExpPoly& rhs) {
  lhs += rhs;
  return lhs;
}

ExpPoly operator-(const ExpPoly& lhs, const ExpPoly& rhs) { return lhs + (-1.0 * rhs); }

ExpPoly operator*(double scale, const ExpPoly& f) {
  if (scale == 0.0) return ExpPoly{};
  std::vector<ExpPolyTerm> terms = f.terms();
  for (auto& t : terms) t.coeff *= scale;
  return ExpPoly(std::move(terms));
}

ExpPoly pointwise_product(const ExpPoly& f, const ExpPoly& g) {
  std::vector<ExpPolyTerm> terms;
  terms.reserve(f.size() * g.size());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      const Rational p = a.power + b.power;
      if (!(p > Rational(-1)))
        throw std::domain_error("pointwise product produced power <= -1");
      terms.push_back({a.coeff * b.coeff, p, a.rate + b.rate});
    }
  return ExpPoly(std::move(terms));
}

ExpPoly monomial_multiply(const ExpPoly& f, const Rational& q) {
  std::vector<ExpPolyTerm> terms = f.terms();
  for (auto& t : terms) {
    t.power += q;
    if (!(t.power > Rational(-1)))
      throw std::domain_error("monomial multiply produced power <= -1");
  }
  return ExpPoly(std::move(terms));
}

ExpPoly convolve(const ExpPoly& f, const ExpPoly& g) {
  std::vector<ExpPolyTerm> terms;
  terms.reserve(f.size() * g.size());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      if (a.rate != b.rate)
        throw unsupported_combination(
            "convolution requires equal decay rates (" + to_string(a.rate) + " vs " +
            to_string(b.rate) + ")");
      const double c =
          a.coeff * b.coeff * beta_fn(to_double(a.power) + 1.0, to_double(b.power) + 1.0);
      terms.push_back({c, a.power + b.power + 1, a.rate});
    }
  return ExpPoly(std::move(terms));
}

double total_integral(const ExpPoly& f) { return moment(f, 0); }

double moment(const ExpPoly& f, int j) {
  if (j < 0) throw std::invalid_argument("moment order must be >= 0");
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    if (!(t.power + j > Rational(-1)))
      throw std::domain_error("moment does not converge: power + j <= -1");
    sum += t.coeff * gamma_over_rate_power(t.power, j, t.rate);
  }
  return sum;
}

ExpPoly tail_integral(const ExpPoly& f) {
  // int_s^inf xi^m e^(-a xi) dxi = e^(-a s) * sum_{i=0}^m (m!/i!) s^i / a^(m-i+1)
  std::vector<ExpPolyTerm> terms;
  for (const auto& t : f.terms()) {
    if (!is_nonnegative_integer(t.power))
      throw unsupported_combination("tail integral requires non-negative integer powers, got s^" +
                                    to_string(t.power));
    const auto m = t.power.numerator();
    const double a = to_double(t.rate);
    double fact_ratio = 1.0;  // m!/i!, built downward from i = m
    for (std::int64_t i = m; i >= 0; --i) {
      terms.push_back(
          {t.coeff * fact_ratio * std::pow(a, static_cast<double>(i - m - 1)),
           Rational(i), t.rate});
      fact_ratio *= static_cast<double>(i);
    }
  }
  return ExpPoly(std::move(terms));
}

void evaluate_many(const ExpPoly& f, std::span<const double> s, std::span<double> out) {
  if (s.size() != out.size()) throw std::invalid_argument("evaluate_many: size mismatch");
  if (f.empty()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const std::size_t nt = f.size();
  std::vector<double> c(nt), p(nt), a(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    c[i] = f.terms()[i].coeff;
    p[i] = to_double(f.terms()[i].power);
    a[i] = to_double(f.terms()[i].rate);
  }

  // The kernel needs strictly positive abscissae; zeros are resolved exactly
  // here and the rest handed over contiguously.
  std::vector<double> pos;
  std::vector<std::size_t> pos_idx;
  pos.reserve(s.size());
  pos_idx.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0.0) throw std::domain_error("evaluate_many: negative s");
    if (s[k] == 0.0)
      out[k] = f(0.0);
    else {
      pos.push_back(s[k]);
      pos_idx.push_back(k);
    }
  }
  if (pos.empty()) return;
  std::vector<double> vals(pos.size());
  simd::ops().exp_poly_eval(c.data(), p.data(), a.data(), nt, pos.data(), vals.data(),
                            pos.size());
  for (std::size_t k = 0; k < pos.size(); ++k) out[pos_idx[k]] = vals[k];
}

TimeField::TimeField(ExpPoly constant_part) {
  if (!constant_part.empty()) coeffs_.emplace_back(0, std::move(constant_part));
}

TimeField::TimeField(std::vector<std::pair<int, ExpPoly>> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& [k, f] : coeffs_)
    if (k < 0) throw std::domain_error("TimeField degree must be >= 0");
  std::sort(coeffs_.begin(), coeffs_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < coeffs_.size();) {
    int deg = coeffs_[i].first;
    ExpPoly sum = std::move(coeffs_[i].second);
    std::size_t j = i + 1;
    while (j < coeffs_.size() && coeffs_[j].first == deg) {
      sum += coeffs_[j].second;
      ++j;
    }
    if (!sum.empty()) coeffs_[out++] = {deg, std::move(sum)};
    i = j;
  }
  coeffs_.resize(out);
}

const ExpPoly& TimeField::coeff(int degree) const {
  static const ExpPoly zero{};
  for (const auto& [k, f] : coeffs_)
    if (k == degree) return f;
  return zero;
}

int TimeField::max_degree() const { return coeffs_.empty() ? 0 : coeffs_.back().first; }

std::size_t TimeField::term_count() const {
  std::size_t n = 0;
  for (const auto& [k, f] : coeffs_) n += f.size();
  return n;
}

double TimeField::operator()(double s, double tau) const {
  double sum = 0.0;
  for (const auto& [k, f] : coeffs_) sum += std::pow(tau, k) * f(s);
  return sum;
}

ExpPoly TimeField::at_time(double tau) const {
  ExpPoly result;
  for (const auto& [k, f] : coeffs_) result += std::pow(tau, k) * f;
  return result;
}

TimeField TimeField::integral_in_time() const {
  std::vector<std::pair<int, ExpPoly>> out;
  out.reserve(coeffs_.size());
  for (const auto& [k, f] : coeffs_) out.emplace_back(k + 1, (1.0 / (k + 1)) * f);
  return TimeField(std::move(out));
}

TimeField TimeField::derivative_in_time() const {
  std::vector<std::pair<int, ExpPoly>> out;
  out.reserve(coeffs_.size());
  for (const auto& [k, f] : coeffs_)
    if (k > 0) out.emplace_back(k - 1, static_cast<double>(k) * f);
  return TimeField(std::move(out));
}

TimeField& TimeField::operator+=(const TimeField& other) {
  std::vector<std::pair<int, ExpPoly>> all = coeffs_;
  all.insert(all.end(), other.coeffs_.begin(), other.coeffs_.end());
  *this = TimeField(std::move(all));
  return *this;
}

TimeField operator+(TimeField lhs, const TimeField& rhs) {
  lhs += rhs;
  return lhs;
}

TimeField operator-(const TimeField& lhs, const TimeField& rhs) { return lhs + (-1.0 * rhs); }

TimeField operator*(double scale, const TimeField& f) {
  std::vector<std::pair<int, ExpPoly>> out;
  if (scale == 0.0) return TimeField{};
  out.reserve(f.coeffs().size());
  for (const auto& [k, g] : f.coeffs()) out.emplace_back(k, scale * g);
  return TimeField(std::move(out));
}

void evaluate_many(const TimeField& f, std::span<const double> s, double tau,
                   std::span<double> out) {
  evaluate_many(f.at_time(tau), s, out);
}

}  // namespace pbe
