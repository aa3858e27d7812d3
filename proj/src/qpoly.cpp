#include "tropcount/qpoly.hpp"

#include <algorithm>
#include <sstream>

namespace tropcount {

QPoly::QPoly(const mpz_class& constant) { add_term(0, constant); }

QPoly QPoly::monomial(int exp, const mpz_class& coeff) {
  QPoly p;
  p.add_term(exp, coeff);
  return p;
}

void QPoly::add_term(int exp, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpz_class QPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

int QPoly::min_exp() const {
  if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
  return terms_.begin()->first;
}

int QPoly::max_exp() const {
  if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

bool QPoly::is_palindromic() const {
  for (const auto& [e, c] : terms_) {
    if (coeff(-e) != c) return false;
  }
  return true;
}

QPoly& QPoly::operator+=(const QPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& other) {
  QPoly out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) out.add_term(e1 + e2, c1 * c2);
  }
  terms_ = std::move(out.terms_);
  return *this;
}

QPoly QPoly::divided_by(const QPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  // Long division from the top degree; Laurent shifts are harmless here.
  QPoly rem = *this;
  QPoly quot;
  const int dtop = divisor.max_exp();
  const int dbot = divisor.min_exp();
  const mpz_class& lead = divisor.terms_.rbegin()->second;
  while (!rem.is_zero() && rem.max_exp() - dtop >= rem.min_exp() - dbot) {
    const int shift = rem.max_exp() - dtop;
    const mpz_class& top = rem.terms_.rbegin()->second;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) break;
    mpz_class factor = top / lead;
    QPoly step = QPoly::monomial(shift, factor);
    quot += step;
    rem -= step * divisor;
  }
  if (!rem.is_zero()) throw NotPolynomial("division leaves a remainder: " + rem.to_string());
  return quot;
}

std::string QPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpz_class a = abs(c);
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

QPoly qint(int a) {
  if (a <= 0) throw std::invalid_argument("qint requires a positive integer, got " + std::to_string(a));
  QPoly p;
  for (int e = -(a - 1); e <= a - 1; e += 2) p += QPoly::monomial(e);
  return p;
}

mpz_class poly_eval_y1(const QPoly& p) {
  mpz_class s = 0;
  for (const auto& [e, c] : p.terms()) s += c;
  return s;
}

mpq_class poly_limit_yneg1(const QPoly& p) {
  // i^e cycles through 1, i, -1, -i.
  mpz_class re = 0, im = 0;
  for (const auto& [e, c] : p.terms()) {
    switch (((e % 4) + 4) % 4) {
      case 0: re += c; break;
      case 1: im += c; break;
      case 2: re -= c; break;
      default: im -= c; break;
    }
  }
  if (im != 0) throw NonRealAtI("value at q = i has imaginary part " + im.get_str());
  return mpq_class(re);
}

QProduct::QProduct(mpq_class scalar, int monomial_exp, std::vector<int> numerator,
                   std::vector<int> denominator)
    : scalar_(std::move(scalar)),
      monomial_exp_(monomial_exp),
      numerator_(std::move(numerator)),
      denominator_(std::move(denominator)) {
  canonicalize();
}

void QProduct::canonicalize() {
  scalar_.canonicalize();
  auto check = [](const std::vector<int>& v) {
    for (int a : v) {
      if (a < 1) throw std::invalid_argument("quantum integer factors must be >= 1");
    }
  };
  check(numerator_);
  check(denominator_);
  std::erase(numerator_, 1);
  std::erase(denominator_, 1);
  std::sort(numerator_.begin(), numerator_.end());
  std::sort(denominator_.begin(), denominator_.end());
  std::vector<int> num, den;
  std::set_difference(numerator_.begin(), numerator_.end(), denominator_.begin(),
                      denominator_.end(), std::back_inserter(num));
  std::set_difference(denominator_.begin(), denominator_.end(), numerator_.begin(),
                      numerator_.end(), std::back_inserter(den));
  numerator_ = std::move(num);
  denominator_ = std::move(den);
  if (scalar_ == 0) {
    monomial_exp_ = 0;
    numerator_.clear();
    denominator_.clear();
  }
}

QProduct& QProduct::operator*=(const QProduct& other) {
  scalar_ *= other.scalar_;
  monomial_exp_ += other.monomial_exp_;
  numerator_.insert(numerator_.end(), other.numerator_.begin(), other.numerator_.end());
  denominator_.insert(denominator_.end(), other.denominator_.begin(), other.denominator_.end());
  canonicalize();
  return *this;
}

std::string QProduct::to_string() const {
  std::ostringstream os;
  os << scalar_.get_str();
  if (monomial_exp_ != 0) os << "*q^" << monomial_exp_;
  for (int a : numerator_) os << "*[" << a << "]";
  for (int a : denominator_) os << "/[" << a << "]";
  return os.str();
}

mpq_class eval_y1(const QProduct& p) {
  mpq_class v = p.scalar();
  for (int a : p.numerator()) v *= a;
  for (int a : p.denominator()) v /= a;
  return v;
}

namespace {

// Sign and leading coefficient of [a] at q = i, after stripping the vanishing
// factor (q + 1/q) from even a.
mpq_class yneg1_factor(int a) {
  if (a % 2 == 1) return ((a - 1) / 2) % 2 == 0 ? 1 : -1;
  mpq_class v = a / 2;
  return (a / 2 - 1) % 2 == 0 ? v : mpq_class(-v);
}

}  // namespace

mpq_class limit_yneg1(const QProduct& p) {
  auto count_even = [](const std::vector<int>& v) {
    return std::count_if(v.begin(), v.end(), [](int a) { return a % 2 == 0; });
  };
  const auto num_even = count_even(p.numerator());
  const auto den_even = count_even(p.denominator());
  if (den_even > num_even) throw PoleAtMinusOne("refined expression has a pole at y = -1: " + p.to_string());
  if (p.scalar() == 0 || num_even > den_even) return 0;
  if (p.monomial_exp() % 2 != 0) throw NonRealAtI("odd power of q in " + p.to_string());
  mpq_class v = p.scalar();
  if (((p.monomial_exp() / 2) % 2 + 2) % 2 == 1) v = -v;
  for (int a : p.numerator()) v *= yneg1_factor(a);
  for (int a : p.denominator()) v /= yneg1_factor(a);
  return v;
}

QPoly qproduct_to_poly(const QProduct& p) {
  if (p.scalar() == 0) return {};
  QPoly num = QPoly::monomial(p.monomial_exp(), p.scalar().get_num());
  for (int a : p.numerator()) num *= qint(a);
  QPoly den(p.scalar().get_den());
  for (int a : p.denominator()) den *= qint(a);
  return num.divided_by(den);
}

nlohmann::json to_json(const QPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) coeffs.push_back({{"exp", e}, {"coeff", c.get_str()}});
  return {{"variable", "q"}, {"meaning", "q = y^(1/2)"}, {"coefficients", coeffs}};
}

QPoly qpoly_from_json(const nlohmann::json& j) {
  if (j.at("variable") != "q") throw std::invalid_argument("unsupported polynomial variable");
  QPoly p;
  for (const auto& t : j.at("coefficients")) {
    p += QPoly::monomial(t.at("exp").get<int>(), mpz_class(t.at("coeff").get<std::string>()));
  }
  return p;
}

}  // namespace tropcount
