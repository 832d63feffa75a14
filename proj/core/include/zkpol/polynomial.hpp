#pragma once

#include <span>
#include <utility>
#include <vector>

#include "zkpol/field.hpp"

namespace zkpol {

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
/// The zero polynomial has no coefficients.
class Polynomial {
 public:
  explicit Polynomial(const PrimeField& field) : field_(&field) {}
  Polynomial(const PrimeField& field, std::vector<FieldElement> coefficients);

  const PrimeField& field() const noexcept { return *field_; }
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  FieldElement coefficient(std::size_t k) const;

  FieldElement evaluate(const FieldElement& x) const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial scaled(const FieldElement& k) const;

  /// (quotient, remainder); throws DivisionByZero for a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

 private:
  void normalize();

  const PrimeField* field_;
  std::vector<FieldElement> coeffs_;
};

/// prod_{i=1..d} (x - i).
Polynomial vanishing_polynomial(const PrimeField& field, std::size_t d);

/// Barycentric weights w_j = 1 / prod_{k != j} (j - k) for points 1..d.
std::vector<FieldElement> lagrange_weights(const PrimeField& field, std::size_t d);

/// Unique polynomial of degree < d with p(j) = values[j - 1] for j = 1..d.
/// `target` must be vanishing_polynomial(field, d) and `weights` the matching
/// lagrange_weights; both are passed in so callers can reuse them.
Polynomial interpolate_on_points(const Polynomial& target, std::span<const FieldElement> weights,
                                 std::span<const FieldElement> values);

/// Convenience overload that derives target and weights itself.
Polynomial interpolate_on_points(const PrimeField& field, std::span<const FieldElement> values);

}  // namespace zkpol
