#pragma once

#include <vector>

#include "zkpol/circuit.hpp"
#include "zkpol/polynomial.hpp"

namespace zkpol {

/// Quadratic arithmetic program over evaluation points 1..d.
///
/// Variable polynomials are held in the Lagrange basis of those points: l_i is
/// the unique polynomial of degree < d with l_i(j) = coefficient of variable i
/// in the left operand of constraint j. That form is exactly the constraint
/// matrix, so it is stored as the constraint rows; coefficient forms are
/// materialized on request.
class QapInstance {
 public:
  const PrimeField& field() const noexcept { return *field_; }
  std::size_t num_constraints() const noexcept { return rows_.size(); }
  std::size_t num_variables() const noexcept { return num_variables_; }
  std::size_t num_public() const noexcept { return num_public_; }
  const Digest32& circuit_id() const noexcept { return circuit_id_; }
  const std::vector<Constraint>& rows() const noexcept { return rows_; }

  /// t(x) = prod_{j=1..d} (x - j).
  const Polynomial& target() const noexcept { return target_; }
  const std::vector<FieldElement>& lagrange_weights() const noexcept { return weights_; }

  Polynomial left(VariableIndex i) const;
  Polynomial right(VariableIndex i) const;
  Polynomial output(VariableIndex i) const;

  struct Evaluations {
    std::vector<FieldElement> left;
    std::vector<FieldElement> right;
    std::vector<FieldElement> output;
    FieldElement target;
  };
  /// Every variable polynomial and t at one point, in O(d + nonzeros).
  Evaluations evaluate_at(const FieldElement& s) const;

 private:
  friend QapInstance circuit_to_qap(const Circuit& circuit);
  explicit QapInstance(const PrimeField& field)
      : field_(&field), target_(field) {}

  enum class Operand { Left, Right, Output };
  Polynomial materialize(VariableIndex i, Operand which) const;

  const PrimeField* field_;
  std::vector<Constraint> rows_;
  std::size_t num_variables_ = 0;
  std::size_t num_public_ = 0;
  Digest32 circuit_id_{};
  Polynomial target_;
  std::vector<FieldElement> weights_;
};

/// Throws FieldTooSmall when d >= p (points 1..d would collide) and
/// InternalInconsistency for malformed circuits.
QapInstance circuit_to_qap(const Circuit& circuit);

struct AssembledPolynomials {
  Polynomial left;      // L = sum v_i l_i
  Polynomial right;     // R = sum v_i r_i
  Polynomial output;    // O = sum v_i o_i
  Polynomial quotient;  // h = (L R - O) / t
};

/// Throws UnsatisfiedWitness when t does not divide L R - O, and
/// ArityMismatch when the witness length does not match the instance.
AssembledPolynomials assemble(const QapInstance& qap, const Witness& witness);

}  // namespace zkpol
