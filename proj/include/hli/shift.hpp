// SPDX-License-Identifier: Apache-2.0
//
// Symbolic shift parameter t = c*gamma + d + log q + a*log(mu) + b*log(alpha*).
// Keeping t symbolic lets gamma cancel exactly in H_k - gamma + t and keeps
// e^t or mu e^{-t} rational where possible.
#ifndef HLI_SHIFT_HPP
#define HLI_SHIFT_HPP

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "hli/constants.hpp"
#include "hli/error.hpp"
#include "hli/interval.hpp"
#include "hli/special_functions.hpp"

namespace hli {

class Shift {
 public:
  Shift() = default;

  static Shift rational(const mpq_class& value) {
    Shift s;
    s.rational_ = value;
    s.label_ = value.get_str();
    return s;
  }

  static Shift integer(long value) { return rational(mpq_class(value)); }

  /// Parses sums of terms such as "gamma+1", "log2", "-log(3/2)", "logmu",
  /// "logalpha", "0.5", "1e-3".
  static Shift parse(std::string_view text) {
    Shift s;
    std::string compact;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    }
    if (compact.empty()) {
      throw DomainError("empty shift expression");
    }
    std::string_view rest(compact);
    bool first = true;
    while (!rest.empty()) {
      int sign = 1;
      if (rest.front() == '+' || rest.front() == '-') {
        sign = rest.front() == '-' ? -1 : 1;
        rest.remove_prefix(1);
      } else if (!first) {
        throw DomainError("expected '+' or '-' in shift expression: " + std::string(text));
      }
      first = false;
      s.parse_term(rest, sign, text);
    }
    s.label_ = compact;
    return s;
  }

  int gamma_coeff() const { return gamma_coeff_; }
  const mpq_class& rational_part() const { return rational_; }
  const mpq_class& log_argument() const { return log_argument_; }
  int log_mu_coeff() const { return log_mu_coeff_; }
  int log_alpha_coeff() const { return log_alpha_coeff_; }
  const std::string& label() const { return label_; }

  Shift& set_label(std::string label) {
    label_ = std::move(label);
    return *this;
  }

  /// t without the gamma multiple.
  Interval value_without_gamma() const {
    Interval v = Interval::from_rational(rational_);
    if (log_argument_ != 1) v += log(Interval::from_rational(log_argument_));
    if (log_mu_coeff_ != 0) v += Interval(log_mu_coeff_) * log(mu_constant());
    if (log_alpha_coeff_ != 0) v += Interval(log_alpha_coeff_) * log(alpha_star_constant());
    return v;
  }

  Interval value() const {
    Interval v = value_without_gamma();
    if (gamma_coeff_ != 0) v += Interval(gamma_coeff_) * gamma_constant();
    return v;
  }

  /// t - gamma, with exact cancellation when t contains exactly one gamma.
  Interval minus_gamma() const {
    Interval v = value_without_gamma();
    if (gamma_coeff_ != 1) v += Interval(gamma_coeff_ - 1) * gamma_constant();
    return v;
  }

  /// e^t when it is rational.
  std::optional<mpq_class> exact_exp() const {
    if (gamma_coeff_ == 0 && rational_ == 0 && log_mu_coeff_ == 0 && log_alpha_coeff_ == 0) {
      return log_argument_;
    }
    return std::nullopt;
  }

  Interval exp_value() const {
    if (auto e = exact_exp()) return Interval::from_rational(*e);
    return exp(value());
  }

  /// mu e^{-t} when it is rational.
  std::optional<mpq_class> exact_mu_exp_neg() const {
    if (gamma_coeff_ == 0 && rational_ == 0 && log_mu_coeff_ == 1 && log_alpha_coeff_ == 0) {
      return 1 / log_argument_;
    }
    return std::nullopt;
  }

  Interval mu_exp_neg() const {
    if (auto e = exact_mu_exp_neg()) return Interval::from_rational(*e);
    return mu_constant() / exp_value();
  }

 private:
  static bool is_number_char(char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) != 0 || ch == '.';
  }

  // Consumes a decimal numeral with optional exponent; "1e-3" stays one token.
  static std::string_view take_number(std::string_view& rest) {
    std::size_t i = 0;
    while (i < rest.size() && is_number_char(rest[i])) ++i;
    if (i > 0 && i < rest.size() && (rest[i] == 'e' || rest[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < rest.size() && (rest[j] == '+' || rest[j] == '-')) ++j;
      if (j < rest.size() && std::isdigit(static_cast<unsigned char>(rest[j]))) {
        while (j < rest.size() && std::isdigit(static_cast<unsigned char>(rest[j]))) ++j;
        i = j;
      }
    }
    std::string_view number = rest.substr(0, i);
    rest.remove_prefix(i);
    return number;
  }

  static mpq_class parse_log_argument(std::string_view body, std::string_view text) {
    auto slash = body.find('/');
    mpq_class value;
    if (slash == std::string_view::npos) {
      value = parse_decimal(body);
    } else {
      mpq_class den = parse_decimal(body.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in shift expression: " + std::string(text));
      value = parse_decimal(body.substr(0, slash)) / den;
    }
    if (value <= 0) {
      throw DomainError("logarithm of a non-positive number in shift expression: " + std::string(text));
    }
    return value;
  }

  void parse_term(std::string_view& rest, int sign, std::string_view text) {
    auto consume = [&rest](std::string_view word) {
      if (rest.substr(0, word.size()) == word) {
        rest.remove_prefix(word.size());
        return true;
      }
      return false;
    };
    if (consume("gamma")) {
      gamma_coeff_ += sign;
    } else if (consume("logmu")) {
      log_mu_coeff_ += sign;
    } else if (consume("logalpha")) {
      log_alpha_coeff_ += sign;
    } else if (consume("log(")) {
      auto close = rest.find(')');
      if (close == std::string_view::npos) {
        throw DomainError("unbalanced parenthesis in shift expression: " + std::string(text));
      }
      mpq_class arg = parse_log_argument(rest.substr(0, close), text);
      rest.remove_prefix(close + 1);
      log_argument_ = sign > 0 ? mpq_class(log_argument_ * arg) : mpq_class(log_argument_ / arg);
    } else if (consume("log")) {
      std::string_view number = take_number(rest);
      if (number.empty()) throw DomainError("expected a number after 'log' in: " + std::string(text));
      mpq_class arg = parse_log_argument(number, text);
      log_argument_ = sign > 0 ? mpq_class(log_argument_ * arg) : mpq_class(log_argument_ / arg);
    } else {
      std::string_view number = take_number(rest);
      if (number.empty()) throw DomainError("unrecognised term in shift expression: " + std::string(text));
      rational_ += sign * parse_decimal(number);
    }
    log_argument_.canonicalize();
  }

  int gamma_coeff_ = 0;
  mpq_class rational_ = 0;
  mpq_class log_argument_ = 1;
  int log_mu_coeff_ = 0;
  int log_alpha_coeff_ = 0;
  std::string label_ = "0";
};

}  // namespace hli

#endif  // HLI_SHIFT_HPP
