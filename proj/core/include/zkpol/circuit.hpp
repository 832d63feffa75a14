#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zkpol/bytes.hpp"
#include "zkpol/field.hpp"

namespace zkpol {

using VariableIndex = std::uint32_t;

/// Index of the constant-one pseudo-variable.
inline constexpr VariableIndex kOne = 0;

struct Term {
  VariableIndex variable;
  FieldElement coefficient;
};

/// Sparse sum of coefficient * variable, kept sorted by variable index with
/// no zero coefficients.
class LinearCombination {
 public:
  LinearCombination() = default;
  static LinearCombination of(VariableIndex v, const FieldElement& coefficient);

  LinearCombination& add_term(VariableIndex v, const FieldElement& coefficient);
  LinearCombination& operator+=(const LinearCombination& rhs);
  LinearCombination operator+(const LinearCombination& rhs) const;

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  /// Returns nullopt when the variable does not appear.
  std::optional<FieldElement> coefficient_of(VariableIndex v) const;

  /// Every referenced variable must be assigned (bound) in `values`.
  FieldElement evaluate(const PrimeField& field, std::span<const FieldElement> values) const;

 private:
  std::vector<Term> terms_;
};

enum class Visibility : std::uint8_t { Public, Private };

struct Variable {
  std::string name;
  Visibility visibility;
  /// Inputs are assigned by the caller; all other variables are the output
  /// of exactly one constraint.
  bool is_input;
};

/// left * right = output, with linear-combination operands.
struct Constraint {
  LinearCombination left;
  LinearCombination right;
  VariableIndex output;
};

/// Flattened computation. Variable 0 is `one`, public variables occupy the
/// contiguous range 1..m, everything after is private.
class Circuit {
 public:
  explicit Circuit(const PrimeField& field);

  const PrimeField& field() const noexcept { return *field_; }

  /// Public variables must all be declared before the first private one.
  VariableIndex add_public_input(std::string name);
  VariableIndex add_public_output(std::string name);
  VariableIndex add_private_input(std::string name);
  VariableIndex add_intermediate(std::string name);

  void add_constraint(LinearCombination left, LinearCombination right, VariableIndex output);
  /// Declares a fresh intermediate `name` and constrains it to left * right.
  VariableIndex multiply(const LinearCombination& left, const LinearCombination& right,
                         std::string name);

  LinearCombination one() const { return LinearCombination::of(kOne, field_->one()); }
  LinearCombination var(VariableIndex v) const { return LinearCombination::of(v, field_->one()); }
  LinearCombination constant(const FieldElement& c) const { return LinearCombination::of(kOne, c); }

  /// n + 1, counting `one`.
  std::size_t num_variables() const noexcept { return variables_.size(); }
  /// m.
  std::size_t num_public() const noexcept { return num_public_; }
  /// d.
  std::size_t num_constraints() const noexcept { return constraints_.size(); }

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  std::optional<VariableIndex> find(std::string_view name) const;

  /// Throws InternalInconsistency when an invariant is broken: an output
  /// assigned twice or never, an input used as an output, a reference to an
  /// undeclared variable.
  void validate() const;

  /// Line-oriented text: header, one line per variable, one per constraint.
  std::string export_text() const;
  /// hash_bytes(export_text()).
  Digest32 id() const;

 private:
  VariableIndex add_variable(std::string name, Visibility visibility, bool is_input);

  const PrimeField* field_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::size_t num_public_ = 0;
};

/// Full assignment v_0..v_n with v_0 = 1.
class Witness {
 public:
  Witness(std::vector<FieldElement> values, std::size_t num_public);

  const std::vector<FieldElement>& values() const noexcept { return values_; }
  std::size_t num_public() const noexcept { return num_public_; }
  /// v_1..v_m.
  std::span<const FieldElement> public_values() const {
    return std::span(values_).subspan(1, num_public_);
  }
  /// v_{m+1}..v_n.
  std::span<const FieldElement> private_values() const {
    return std::span(values_).subspan(1 + num_public_);
  }
  FieldElement& operator[](std::size_t i) { return values_[i]; }
  const FieldElement& operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<FieldElement> values_;
  std::size_t num_public_;
};

using Assignment = std::map<VariableIndex, FieldElement>;

/// Forward-evaluates the constraints in order. Throws MissingInput when an
/// input variable is unassigned, InvalidParameters when a non-input is
/// assigned, InternalInconsistency when evaluation hits an unassigned operand
/// or a constraint it cannot satisfy.
Witness compute_witness(const Circuit& circuit, const Assignment& inputs);

}  // namespace zkpol
