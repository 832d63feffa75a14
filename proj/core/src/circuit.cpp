#include "zkpol/circuit.hpp"

#include <algorithm>
#include <sstream>

#include "zkpol/error.hpp"
#include "zkpol/hash.hpp"

namespace zkpol {

LinearCombination LinearCombination::of(VariableIndex v, const FieldElement& coefficient) {
  LinearCombination lc;
  lc.add_term(v, coefficient);
  return lc;
}

LinearCombination& LinearCombination::add_term(VariableIndex v, const FieldElement& coefficient) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                             [](const Term& t, VariableIndex idx) { return t.variable < idx; });
  if (it != terms_.end() && it->variable == v) {
    it->coefficient += coefficient;
    if (it->coefficient.is_zero()) terms_.erase(it);
  } else if (!coefficient.is_zero()) {
    terms_.insert(it, Term{v, coefficient});
  }
  return *this;
}

LinearCombination& LinearCombination::operator+=(const LinearCombination& rhs) {
  for (const auto& t : rhs.terms_) add_term(t.variable, t.coefficient);
  return *this;
}

LinearCombination LinearCombination::operator+(const LinearCombination& rhs) const {
  LinearCombination out = *this;
  out += rhs;
  return out;
}

std::optional<FieldElement> LinearCombination::coefficient_of(VariableIndex v) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                             [](const Term& t, VariableIndex idx) { return t.variable < idx; });
  if (it != terms_.end() && it->variable == v) return it->coefficient;
  return std::nullopt;
}

FieldElement LinearCombination::evaluate(const PrimeField& field,
                                         std::span<const FieldElement> values) const {
  mpz_class acc = 0;
  for (const auto& t : terms_) {
    if (t.variable >= values.size() || !values[t.variable].is_bound()) {
      throw Error(ErrorCode::InternalInconsistency,
                  "operand references unassigned variable " + std::to_string(t.variable));
    }
    mpz_addmul(acc.get_mpz_t(), t.coefficient.value().get_mpz_t(),
               values[t.variable].value().get_mpz_t());
  }
  return field.reduce(acc);
}

Circuit::Circuit(const PrimeField& field) : field_(&field) {
  variables_.push_back(Variable{"one", Visibility::Public, true});
}

VariableIndex Circuit::add_variable(std::string name, Visibility visibility, bool is_input) {
  if (visibility == Visibility::Public) {
    if (variables_.size() != num_public_ + 1) {
      throw Error(ErrorCode::InvalidParameters,
                  "public variable '" + name + "' declared after a private one");
    }
    ++num_public_;
  }
  variables_.push_back(Variable{std::move(name), visibility, is_input});
  return static_cast<VariableIndex>(variables_.size() - 1);
}

VariableIndex Circuit::add_public_input(std::string name) {
  return add_variable(std::move(name), Visibility::Public, true);
}
VariableIndex Circuit::add_public_output(std::string name) {
  return add_variable(std::move(name), Visibility::Public, false);
}
VariableIndex Circuit::add_private_input(std::string name) {
  return add_variable(std::move(name), Visibility::Private, true);
}
VariableIndex Circuit::add_intermediate(std::string name) {
  return add_variable(std::move(name), Visibility::Private, false);
}

void Circuit::add_constraint(LinearCombination left, LinearCombination right, VariableIndex output) {
  constraints_.push_back(Constraint{std::move(left), std::move(right), output});
}

VariableIndex Circuit::multiply(const LinearCombination& left, const LinearCombination& right,
                                std::string name) {
  VariableIndex out = add_intermediate(std::move(name));
  add_constraint(left, right, out);
  return out;
}

std::optional<VariableIndex> Circuit::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return static_cast<VariableIndex>(i);
  }
  return std::nullopt;
}

void Circuit::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InternalInconsistency, what); };
  if (variables_.empty() || variables_[0].name != "one" || !variables_[0].is_input) {
    fail("variable 0 must be the constant one");
  }
  for (std::size_t i = 1; i < variables_.size(); ++i) {
    const bool is_public = variables_[i].visibility == Visibility::Public;
    if (is_public != (i <= num_public_)) fail("public variables are not a contiguous prefix");
  }
  std::vector<int> assigned(variables_.size(), 0);
  for (const auto& c : constraints_) {
    for (const auto* lc : {&c.left, &c.right}) {
      for (const auto& t : lc->terms()) {
        if (t.variable >= variables_.size()) fail("constraint references undeclared variable");
      }
    }
    if (c.output >= variables_.size()) fail("constraint output is undeclared");
    if (variables_[c.output].is_input) fail("input '" + variables_[c.output].name + "' used as output");
    ++assigned[c.output];
  }
  for (std::size_t i = 1; i < variables_.size(); ++i) {
    if (!variables_[i].is_input && assigned[i] != 1) {
      fail("variable '" + variables_[i].name + "' assigned " + std::to_string(assigned[i]) +
           " times");
    }
  }
}

namespace {

void write_lc(std::ostringstream& out, const LinearCombination& lc) {
  for (const auto& t : lc.terms()) out << ' ' << t.variable << ':' << t.coefficient.to_string();
}

}  // namespace

std::string Circuit::export_text() const {
  std::ostringstream out;
  out << "zkpol-circuit v1\n";
  out << "field " << field_->modulus().get_str() << '\n';
  out << "variables " << variables_.size() << " public " << num_public_ << " constraints "
      << constraints_.size() << '\n';
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    out << "v " << i << ' ' << (v.visibility == Visibility::Public ? "pub" : "priv") << ' '
        << (v.is_input ? "in" : "out") << ' ' << v.name << '\n';
  }
  for (std::size_t j = 0; j < constraints_.size(); ++j) {
    const auto& c = constraints_[j];
    out << "c " << (j + 1) << " L";
    write_lc(out, c.left);
    out << " | R";
    write_lc(out, c.right);
    out << " | O " << c.output << ":1\n";
  }
  return out.str();
}

Digest32 Circuit::id() const { return hash_bytes(as_bytes(export_text())); }

Witness::Witness(std::vector<FieldElement> values, std::size_t num_public)
    : values_(std::move(values)), num_public_(num_public) {
  if (values_.empty() || !values_[0].is_one() || values_.size() < num_public_ + 1) {
    throw Error(ErrorCode::InvalidParameters, "witness must start with the constant one");
  }
}

Witness compute_witness(const Circuit& circuit, const Assignment& inputs) {
  const auto& vars = circuit.variables();
  const PrimeField& field = circuit.field();
  std::vector<FieldElement> values(vars.size());
  values[kOne] = field.one();

  for (const auto& [index, value] : inputs) {
    if (index == kOne) continue;
    if (index >= vars.size() || !vars[index].is_input) {
      throw Error(ErrorCode::InvalidParameters, "assignment to non-input variable " +
                                                    std::to_string(index));
    }
    values[index] = field.reduce(value.value());
  }
  for (std::size_t i = 1; i < vars.size(); ++i) {
    if (vars[i].is_input && !values[i].is_bound()) {
      throw Error(ErrorCode::MissingInput, "input '" + vars[i].name + "' is not assigned");
    }
  }

  for (const auto& c : circuit.constraints()) {
    const FieldElement product = c.left.evaluate(field, values) * c.right.evaluate(field, values);
    FieldElement& out = values[c.output];
    if (out.is_bound()) {
      if (out != product) {
        throw Error(ErrorCode::InternalInconsistency,
                    "constraint on '" + vars[c.output].name + "' is violated");
      }
    } else {
      out = product;
    }
  }
  for (std::size_t i = 1; i < vars.size(); ++i) {
    if (!values[i].is_bound()) {
      throw Error(ErrorCode::InternalInconsistency, "variable '" + vars[i].name + "' never assigned");
    }
  }
  return Witness(std::move(values), circuit.num_public());
}

}  // namespace zkpol
