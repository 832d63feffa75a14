#include "zkpol/qap.hpp"

#include "zkpol/error.hpp"

namespace zkpol {

QapInstance circuit_to_qap(const Circuit& circuit) {
  circuit.validate();
  const PrimeField& field = circuit.field();
  const std::size_t d = circuit.num_constraints();
  if (d == 0) throw Error(ErrorCode::InvalidParameters, "circuit has no constraints");
  if (mpz_class(static_cast<unsigned long>(d)) >= field.modulus()) {
    throw Error(ErrorCode::FieldTooSmall, "need d < p distinct evaluation points");
  }
  QapInstance q(field);
  q.rows_ = circuit.constraints();
  q.num_variables_ = circuit.num_variables();
  q.num_public_ = circuit.num_public();
  q.circuit_id_ = circuit.id();
  q.target_ = vanishing_polynomial(field, d);
  q.weights_ = zkpol::lagrange_weights(field, d);
  return q;
}

Polynomial QapInstance::materialize(VariableIndex i, Operand which) const {
  if (i >= num_variables_) throw Error(ErrorCode::InvalidParameters, "variable index out of range");
  std::vector<FieldElement> values(rows_.size(), field_->zero());
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const Constraint& c = rows_[j];
    switch (which) {
      case Operand::Left:
        if (auto k = c.left.coefficient_of(i)) values[j] = *k;
        break;
      case Operand::Right:
        if (auto k = c.right.coefficient_of(i)) values[j] = *k;
        break;
      case Operand::Output:
        if (c.output == i) values[j] = field_->one();
        break;
    }
  }
  return interpolate_on_points(target_, weights_, values);
}

Polynomial QapInstance::left(VariableIndex i) const { return materialize(i, Operand::Left); }
Polynomial QapInstance::right(VariableIndex i) const { return materialize(i, Operand::Right); }
Polynomial QapInstance::output(VariableIndex i) const { return materialize(i, Operand::Output); }

QapInstance::Evaluations QapInstance::evaluate_at(const FieldElement& s) const {
  const std::size_t d = rows_.size();
  std::vector<FieldElement> basis(d, field_->zero());
  const FieldElement t_at_s = target_.evaluate(s);
  if (t_at_s.is_zero()) {
    // s is one of the points: the basis is an indicator.
    basis[static_cast<std::size_t>(s.value().get_ui()) - 1] = field_->one();
  } else {
    for (std::size_t j = 0; j < d; ++j) {
      basis[j] = weights_[j] * t_at_s / (s - field_->from_u64(j + 1));
    }
  }

  Evaluations out{std::vector<FieldElement>(num_variables_, field_->zero()),
                  std::vector<FieldElement>(num_variables_, field_->zero()),
                  std::vector<FieldElement>(num_variables_, field_->zero()), t_at_s};
  for (std::size_t j = 0; j < d; ++j) {
    const Constraint& c = rows_[j];
    for (const auto& t : c.left.terms()) out.left[t.variable] += t.coefficient * basis[j];
    for (const auto& t : c.right.terms()) out.right[t.variable] += t.coefficient * basis[j];
    out.output[c.output] += basis[j];
  }
  return out;
}

AssembledPolynomials assemble(const QapInstance& qap, const Witness& witness) {
  const auto& v = witness.values();
  if (v.size() != qap.num_variables() || witness.num_public() != qap.num_public()) {
    throw Error(ErrorCode::ArityMismatch, "witness does not match the QAP dimensions");
  }
  const PrimeField& field = qap.field();
  const std::size_t d = qap.num_constraints();
  std::vector<FieldElement> lv, rv, ov;
  lv.reserve(d);
  rv.reserve(d);
  ov.reserve(d);
  for (const auto& c : qap.rows()) {
    lv.push_back(c.left.evaluate(field, v));
    rv.push_back(c.right.evaluate(field, v));
    ov.push_back(v[c.output]);
  }
  Polynomial left = interpolate_on_points(qap.target(), qap.lagrange_weights(), lv);
  Polynomial right = interpolate_on_points(qap.target(), qap.lagrange_weights(), rv);
  Polynomial output = interpolate_on_points(qap.target(), qap.lagrange_weights(), ov);

  auto [quotient, remainder] = (left * right - output).divmod(qap.target());
  if (!remainder.is_zero()) {
    throw Error(ErrorCode::UnsatisfiedWitness, "t(x) does not divide L(x)R(x) - O(x)");
  }
  return AssembledPolynomials{std::move(left), std::move(right), std::move(output),
                              std::move(quotient)};
}

}  // namespace zkpol
