#include <gtest/gtest.h>

#include "test_support.hpp"
#include "zkpol/error.hpp"
#include "zkpol/qap.hpp"

namespace zkpol {
namespace {

using testing::random_instance;
using testing::satisfies_every_constraint;

class CircuitQap : public ::testing::Test {
 protected:
  const PrimeField& f = Profile::oracle()->scalar_field();

  Polynomial of(std::initializer_list<long> c) {
    std::vector<FieldElement> v;
    for (long x : c) v.push_back(f.from_i64(x));
    return Polynomial(f, v);
  }
};

TEST_F(CircuitQap, SingleMultiplication) {
  Circuit c(f);
  const VariableIndex x = c.add_private_input("x");
  const VariableIndex y = c.add_private_input("y");
  const VariableIndex z = c.multiply(c.var(x), c.var(y), "z");
  const Witness w = compute_witness(c, {{x, f.from_u64(3)}, {y, f.from_u64(4)}});
  EXPECT_EQ(w.values(), (std::vector<FieldElement>{f.one(), f.from_u64(3), f.from_u64(4), f.from_u64(12)}));

  const QapInstance q = circuit_to_qap(c);
  EXPECT_EQ(q.target(), of({-1, 1}));
  EXPECT_EQ(q.left(x), of({1}));
  EXPECT_EQ(q.right(y), of({1}));
  EXPECT_EQ(q.output(z), of({1}));
  for (VariableIndex i : {kOne, y, z}) EXPECT_TRUE(q.left(i).is_zero());
  for (VariableIndex i : {kOne, x, z}) EXPECT_TRUE(q.right(i).is_zero());
  for (VariableIndex i : {kOne, x, y}) EXPECT_TRUE(q.output(i).is_zero());

  const AssembledPolynomials a = assemble(q, w);
  EXPECT_TRUE((a.left * a.right - a.output).evaluate(f.one()).is_zero());

  Witness bad = w;
  bad[z] = f.from_u64(13);
  try {
    assemble(q, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsatisfiedWitness);
  }
}

TEST_F(CircuitQap, TwoOperationInterpolation) {
  Circuit c(f);
  const VariableIndex a = c.add_private_input("a");
  const VariableIndex b = c.multiply(c.var(a), c.var(a), "b");
  c.multiply(c.var(b), c.var(a), "c");
  const QapInstance q = circuit_to_qap(c);
  EXPECT_EQ(q.left(a), of({2, -1}));
  EXPECT_EQ(q.left(b), of({-1, 1}));
  EXPECT_EQ(q.right(a), of({1}));
  EXPECT_EQ(q.target(), of({2, -3, 1}));
}

TEST_F(CircuitQap, MissingAndIllegalInputs) {
  Circuit c(f);
  const VariableIndex x = c.add_private_input("x");
  const VariableIndex y = c.add_private_input("y");
  const VariableIndex z = c.multiply(c.var(x), c.var(y), "z");
  try {
    compute_witness(c, {{x, f.from_u64(3)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingInput);
  }
  EXPECT_THROW(compute_witness(c, {{x, f.one()}, {y, f.one()}, {z, f.one()}}), Error);
}

TEST_F(CircuitQap, PublicVariablesMustComeFirst) {
  Circuit c(f);
  c.add_private_input("x");
  EXPECT_THROW(c.add_public_input("late"), Error);
}

TEST_F(CircuitQap, MalformedCircuitsAreRejected) {
  Circuit c(f);
  const VariableIndex x = c.add_private_input("x");
  const VariableIndex t = c.add_intermediate("t");
  c.add_constraint(c.var(x), c.var(x), t);
  c.add_constraint(c.var(x), c.var(x), t);  // assigned twice
  try {
    c.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InternalInconsistency);
  }
  Circuit empty(f);
  EXPECT_THROW(circuit_to_qap(empty), Error);
}

TEST_F(CircuitQap, FieldTooSmallForConstraintCount) {
  const PrimeField tiny(5);
  Circuit c(tiny);
  VariableIndex v = c.add_private_input("x");
  for (int i = 0; i < 5; ++i) v = c.multiply(c.var(v), c.var(v), "s" + std::to_string(i));
  try {
    circuit_to_qap(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldTooSmall);
  }
}

TEST_F(CircuitQap, InterpolationMatchesConstraintRowsExhaustively) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instance(f, rng, 8);
    const Circuit& c = inst.circuit;
    const QapInstance q = circuit_to_qap(c);
    const std::size_t d = c.num_constraints();
    for (VariableIndex i = 0; i < c.num_variables(); ++i) {
      const Polynomial l = q.left(i), r = q.right(i), o = q.output(i);
      EXPECT_LE(l.degree(), static_cast<long>(d) - 1);
      for (std::size_t j = 1; j <= d; ++j) {
        const Constraint& k = c.constraints()[j - 1];
        const FieldElement x = f.from_u64(j);
        EXPECT_EQ(l.evaluate(x), k.left.coefficient_of(i).value_or(f.zero()));
        EXPECT_EQ(r.evaluate(x), k.right.coefficient_of(i).value_or(f.zero()));
        EXPECT_EQ(o.evaluate(x), k.output == i ? f.one() : f.zero());
      }
    }
    // evaluate_at agrees with the materialized polynomials.
    const FieldElement s = f.random(rng);
    const auto ev = q.evaluate_at(s);
    EXPECT_EQ(ev.target, q.target().evaluate(s));
    for (VariableIndex i = 0; i < c.num_variables(); ++i) {
      EXPECT_EQ(ev.left[i], q.left(i).evaluate(s));
      EXPECT_EQ(ev.right[i], q.right(i).evaluate(s));
      EXPECT_EQ(ev.output[i], q.output(i).evaluate(s));
    }
  }
}

TEST_F(CircuitQap, DivisibilityAgreesWithBruteForce) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(f, rng, 8);
    const QapInstance q = circuit_to_qap(inst.circuit);
    const bool brute = satisfies_every_constraint(inst.circuit, inst.witness);
    bool divides = true;
    try {
      const AssembledPolynomials a = assemble(q, inst.witness);
      EXPECT_LE(a.quotient.degree(), static_cast<long>(q.num_constraints()) - 2);
      const auto [quot, rem] = (a.left * a.right - a.output).divmod(q.target());
      EXPECT_TRUE(rem.is_zero());
      EXPECT_EQ(quot, a.quotient);
      for (std::size_t j = 1; j <= q.num_constraints(); ++j) {
        EXPECT_TRUE((a.left * a.right - a.output).evaluate(f.from_u64(j)).is_zero());
      }
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::UnsatisfiedWitness);
      divides = false;
    }
    EXPECT_EQ(divides, brute) << "trial " << trial;
    if (!inst.corrupted) EXPECT_TRUE(brute);
  }
}

TEST_F(CircuitQap, AssembleChecksArity) {
  testing::CubicCircuit cubic(f);
  const QapInstance q = circuit_to_qap(cubic.circuit);
  const Witness w(std::vector<FieldElement>{f.one(), f.one()}, 1);
  try {
    assemble(q, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST_F(CircuitQap, ExportAndIdentifier) {
  testing::CubicCircuit a(f), b(f);
  EXPECT_EQ(a.circuit.id(), b.circuit.id());
  const std::string text = a.circuit.export_text();
  EXPECT_EQ(text.rfind("zkpol-circuit v1\n", 0), 0u);
  EXPECT_NE(text.find("variables 5 public 1 constraints 3"), std::string::npos);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  EXPECT_EQ(lines, 3u + 5u + 3u);
  b.circuit.multiply(b.circuit.var(b.x), b.circuit.one(), "extra");
  EXPECT_NE(a.circuit.id(), b.circuit.id());
}

}  // namespace
}  // namespace zkpol
