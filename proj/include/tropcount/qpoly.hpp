#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace tropcount {

/// Raised when a y -> -1 limit does not exist (the expression has a pole there).
struct PoleAtMinusOne : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when a quotient of quantum integers is not a Laurent polynomial.
struct NotPolynomial : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised when substituting q = i leaves a nonzero imaginary part.
struct NonRealAtI : std::domain_error {
  using std::domain_error::domain_error;
};

/// Laurent polynomial in q = y^(1/2) with arbitrary-precision coefficients.
///
/// Exponents are powers of q, so the y-exponent of a term is exp / 2.
/// Zero coefficients are never stored.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(const mpz_class& constant);
  static QPoly monomial(int exp, const mpz_class& coeff = 1);

  const std::map<int, mpz_class>& terms() const { return terms_; }
  mpz_class coeff(int exp) const;
  bool is_zero() const { return terms_.empty(); }
  int min_exp() const;
  int max_exp() const;
  bool is_palindromic() const;

  QPoly& operator+=(const QPoly& other);
  QPoly& operator-=(const QPoly& other);
  QPoly& operator*=(const QPoly& other);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(QPoly a, const QPoly& b) { return a *= b; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms_ == b.terms_; }

  /// Exact division. Throws NotPolynomial when a remainder is left.
  QPoly divided_by(const QPoly& divisor) const;

  std::string to_string() const;

 private:
  void add_term(int exp, const mpz_class& c);
  std::map<int, mpz_class> terms_;
};

/// The quantum integer [a]_y^- = q^{-(a-1)} + q^{-(a-3)} + ... + q^{a-1}.
QPoly qint(int a);

/// Value at y = 1 (sum of coefficients).
mpz_class poly_eval_y1(const QPoly& p);

/// Value at y = -1 via q = i. Throws NonRealAtI for a nonreal result.
mpq_class poly_limit_yneg1(const QPoly& p);

/// scalar * q^monomial_exp * prod [numerator] / prod [denominator].
///
/// Entries equal to 1 are dropped and equal numerator/denominator entries
/// cancel, so structurally equal products compare equal.
class QProduct {
 public:
  QProduct() = default;
  QProduct(mpq_class scalar, int monomial_exp, std::vector<int> numerator,
           std::vector<int> denominator);

  const mpq_class& scalar() const { return scalar_; }
  int monomial_exp() const { return monomial_exp_; }
  const std::vector<int>& numerator() const { return numerator_; }
  const std::vector<int>& denominator() const { return denominator_; }

  QProduct& operator*=(const QProduct& other);
  friend QProduct operator*(QProduct a, const QProduct& b) { return a *= b; }
  friend bool operator==(const QProduct& a, const QProduct& b) {
    return a.scalar_ == b.scalar_ && a.monomial_exp_ == b.monomial_exp_ &&
           a.numerator_ == b.numerator_ && a.denominator_ == b.denominator_;
  }

  std::string to_string() const;

 private:
  void canonicalize();

  mpq_class scalar_ = 1;
  int monomial_exp_ = 0;
  std::vector<int> numerator_;
  std::vector<int> denominator_;
};

mpq_class eval_y1(const QProduct& p);
mpq_class limit_yneg1(const QProduct& p);
QPoly qproduct_to_poly(const QProduct& p);

/// Serialized form: {"variable":"q","meaning":"q = y^(1/2)","coefficients":[{"exp":..,"coeff":".."}]}
nlohmann::json to_json(const QPoly& p);
QPoly qpoly_from_json(const nlohmann::json& j);

}  // namespace tropcount
