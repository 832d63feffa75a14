#include "zkpol/polynomial.hpp"

#include <algorithm>

#include "zkpol/error.hpp"

namespace zkpol {

// Hot loops accumulate unreduced products in mpz_class and reduce once per
// output coefficient.

namespace {

void check_same_field(const PrimeField& a, const PrimeField& b) {
  if (!a.same_as(b)) throw Error(ErrorCode::InvalidParameters, "polynomial field mismatch");
}

FieldElement reduce_into(const PrimeField& field, mpz_class& acc) {
  mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), field.modulus().get_mpz_t());
  return FieldElement::from_canonical(field, acc);
}

}  // namespace

Polynomial::Polynomial(const PrimeField& field, std::vector<FieldElement> coefficients)
    : field_(&field), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) check_same_field(field, c.field());
  normalize();
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : field_->zero();
}

FieldElement Polynomial::evaluate(const FieldElement& x) const {
  check_same_field(*field_, x.field());
  mpz_class acc = 0;
  const mpz_class& p = field_->modulus();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x.value();
    acc += it->value();
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), p.get_mpz_t());
  }
  return FieldElement::from_canonical(*field_, acc);
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  check_same_field(*field_, *rhs.field_);
  std::vector<FieldElement> out(std::max(coeffs_.size(), rhs.coeffs_.size()), field_->zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coefficient(i) + rhs.coefficient(i);
  return Polynomial(*field_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  check_same_field(*field_, *rhs.field_);
  std::vector<FieldElement> out(std::max(coeffs_.size(), rhs.coeffs_.size()), field_->zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coefficient(i) - rhs.coefficient(i);
  return Polynomial(*field_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  check_same_field(*field_, *rhs.field_);
  if (is_zero() || rhs.is_zero()) return Polynomial(*field_);
  const std::size_t n = coeffs_.size();
  const std::size_t m = rhs.coeffs_.size();
  std::vector<FieldElement> out;
  out.reserve(n + m - 1);
  mpz_class acc;
  for (std::size_t k = 0; k < n + m - 1; ++k) {
    acc = 0;
    const std::size_t lo = k >= m ? k - m + 1 : 0;
    const std::size_t hi = std::min(k, n - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      mpz_addmul(acc.get_mpz_t(), coeffs_[i].value().get_mpz_t(),
                 rhs.coeffs_[k - i].value().get_mpz_t());
    }
    out.push_back(reduce_into(*field_, acc));
  }
  return Polynomial(*field_, std::move(out));
}

Polynomial Polynomial::scaled(const FieldElement& k) const {
  std::vector<FieldElement> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c * k);
  return Polynomial(*field_, std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  check_same_field(*field_, *divisor.field_);
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (coeffs_.size() < divisor.coeffs_.size()) return {Polynomial(*field_), *this};

  const std::size_t nb = divisor.coeffs_.size() - 1;  // divisor degree
  const std::size_t nq = coeffs_.size() - 1 - nb;     // quotient degree
  const FieldElement lead_inv = divisor.coeffs_.back().inverse();
  const auto& b = divisor.coeffs_;

  std::vector<FieldElement> q(nq + 1, field_->zero());
  mpz_class acc;
  for (std::size_t k = nq + 1; k-- > 0;) {
    // a_{k+nb} = sum_{i=0..nb} q_{k+nb-i} b_i
    acc = coeffs_[k + nb].value();
    for (std::size_t i = 0; i < nb; ++i) {
      const std::size_t qi = k + nb - i;
      if (qi > nq) continue;
      mpz_submul(acc.get_mpz_t(), q[qi].value().get_mpz_t(), b[i].value().get_mpz_t());
    }
    q[k] = reduce_into(*field_, acc) * lead_inv;
  }

  std::vector<FieldElement> r;
  r.reserve(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    acc = coeffs_[j].value();
    const std::size_t lo = j > nq ? j - nq : 0;
    for (std::size_t i = lo; i <= j; ++i) {
      mpz_submul(acc.get_mpz_t(), q[j - i].value().get_mpz_t(), b[i].value().get_mpz_t());
    }
    r.push_back(reduce_into(*field_, acc));
  }
  return {Polynomial(*field_, std::move(q)), Polynomial(*field_, std::move(r))};
}

Polynomial vanishing_polynomial(const PrimeField& field, std::size_t d) {
  // Multiply (x - i) in one at a time.
  std::vector<mpz_class> c{1};
  const mpz_class& p = field.modulus();
  for (std::size_t i = 1; i <= d; ++i) {
    c.push_back(0);
    for (std::size_t k = c.size() - 1; k > 0; --k) {
      c[k] = c[k - 1] - c[k] * static_cast<unsigned long>(i);
      mpz_mod(c[k].get_mpz_t(), c[k].get_mpz_t(), p.get_mpz_t());
    }
    c[0] = -c[0] * static_cast<unsigned long>(i);
    mpz_mod(c[0].get_mpz_t(), c[0].get_mpz_t(), p.get_mpz_t());
  }
  std::vector<FieldElement> out;
  out.reserve(c.size());
  for (auto& v : c) out.push_back(FieldElement::from_canonical(field, std::move(v)));
  return Polynomial(field, std::move(out));
}

std::vector<FieldElement> lagrange_weights(const PrimeField& field, std::size_t d) {
  // prod_{k != j} (j - k) = (j - 1)! * (-1)^(d - j) * (d - j)!
  std::vector<FieldElement> factorial{field.one()};
  for (std::size_t i = 1; i < d; ++i) factorial.push_back(factorial.back() * field.from_u64(i));
  std::vector<FieldElement> w;
  w.reserve(d);
  for (std::size_t j = 1; j <= d; ++j) {
    FieldElement denom = factorial[j - 1] * factorial[d - j];
    if ((d - j) % 2 == 1) denom = -denom;
    w.push_back(denom.inverse());
  }
  return w;
}

Polynomial interpolate_on_points(const Polynomial& target, std::span<const FieldElement> weights,
                                 std::span<const FieldElement> values) {
  const PrimeField& field = target.field();
  const std::size_t d = values.size();
  if (weights.size() != d || target.degree() != static_cast<long>(d)) {
    throw Error(ErrorCode::InvalidParameters, "interpolation size mismatch");
  }
  if (d == 0) return Polynomial(field);
  const mpz_class& p = field.modulus();
  const auto& t = target.coefficients();

  std::vector<mpz_class> acc(d);
  std::vector<mpz_class> q(d);
  for (std::size_t j = 1; j <= d; ++j) {
    const FieldElement& y = values[j - 1];
    if (y.is_zero()) continue;
    const FieldElement c = y * weights[j - 1];
    // q = t(x) / (x - j) by synthetic division from the top.
    q[d - 1] = t[d].value();
    for (std::size_t k = d - 1; k > 0; --k) {
      q[k - 1] = q[k] * static_cast<unsigned long>(j);
      q[k - 1] += t[k].value();
      mpz_mod(q[k - 1].get_mpz_t(), q[k - 1].get_mpz_t(), p.get_mpz_t());
    }
    for (std::size_t k = 0; k < d; ++k) {
      mpz_addmul(acc[k].get_mpz_t(), c.value().get_mpz_t(), q[k].get_mpz_t());
    }
  }
  std::vector<FieldElement> out;
  out.reserve(d);
  for (auto& a : acc) out.push_back(reduce_into(field, a));
  return Polynomial(field, std::move(out));
}

Polynomial interpolate_on_points(const PrimeField& field, std::span<const FieldElement> values) {
  const Polynomial target = vanishing_polynomial(field, values.size());
  const auto weights = lagrange_weights(field, values.size());
  return interpolate_on_points(target, weights, values);
}

}  // namespace zkpol
