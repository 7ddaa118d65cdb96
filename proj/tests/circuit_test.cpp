// Copyright 2026 The ptq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ptq/circuit.hpp"
#include "ptq/random_system.hpp"
#include "ptq/synthesis.hpp"

namespace ptq {
namespace {

RegisterLayout layout(int n, int ancillas) {
  RegisterLayout l;
  l.n_system = n;
  for (int j = 0; j < ancillas; ++j) l.ancillas.push_back("a" + std::to_string(j));
  return l;
}

TEST(Validate, EmptyCircuitIsWellFormed) {
  EXPECT_TRUE(validate(Circuit(layout(2, 1))).empty());
}

TEST(Validate, MissingSystemRegister) {
  EXPECT_FALSE(validate(Circuit(layout(0, 1))).empty());
}

TEST(Validate, TargetAmongControls) {
  Circuit c(layout(2, 1));
  c.add(Gate::controlled_ry(2, 0.3, 0b101));
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].gate_index, 0);
}

TEST(Validate, OutOfRangeQubits) {
  Circuit c(layout(1, 1));
  c.add(Gate::ry(2, 0.3));
  c.add(Gate::controlled_ry(1, 0.3, 0b100));
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 2U);
  EXPECT_EQ(v[0].gate_index, 0);
  EXPECT_EQ(v[1].gate_index, 1);
}

TEST(Validate, ReportsUnitarityDeviation) {
  const PerturbedSystem s = random_system(2, 1);
  Matrix u = hermitian_exponential(s.perturbation, 0.1);
  u(0, 0) += 1e-3;
  Circuit c(layout(2, 0));
  c.add(Gate::system_unitary(u, true));
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_GT(v[0].deviation, 5e-4);
  EXPECT_LT(v[0].deviation, 5e-3);
  // The same matrix is accepted when it does not claim to be unitary.
  Circuit lin(layout(2, 0));
  lin.add(Gate::system_unitary(u, false));
  EXPECT_TRUE(validate(lin).empty());
}

TEST(Validate, WrongDimensionAndControlValues) {
  Circuit c(layout(2, 1));
  c.add(Gate::system_unitary(Matrix::Identity(2, 2), true));
  Gate g = Gate::controlled_ry(2, 0.1, 0b01);
  g.control_values = 0b11;
  c.add(g);
  EXPECT_EQ(validate(c).size(), 2U);
}

TEST(Validate, StageMarksMustIncrease) {
  Circuit c(layout(1, 1));
  c.mark("a");
  c.add(Gate::ry(1, 0.2));
  c.mark("b");
  c.mutable_stage_marks().push_back({"c", 1});
  EXPECT_EQ(validate(c).size(), 1U);
}

TEST(Serialize, RoundTripKeepsEveryField) {
  const PerturbedSystem s = random_system(2, 3);
  Circuit c(layout(2, 2));
  c.mark("start");
  c.add(Gate::system_unitary(hermitian_exponential(s.perturbation, 0.01), true));
  c.add(Gate::controlled_ry(2, std::numbers::pi / 3, 0b11, 0b01));
  c.add(Gate::ry(3, -0.25));
  c.mark("end");
  const Circuit back = parse_circuit(serialize_circuit(c));
  ASSERT_EQ(back.gates().size(), 3U);
  EXPECT_EQ(back.layout().ancillas, c.layout().ancillas);
  EXPECT_EQ(back.layout().n_system, 2);
  EXPECT_LE(max_abs(back.gates()[0].matrix - c.gates()[0].matrix), 0.0);
  EXPECT_EQ(back.gates()[1].kind, GateKind::MultiControlledRy);
  EXPECT_EQ(back.gates()[1].control_mask, 0b11U);
  EXPECT_EQ(back.gates()[1].control_values, 0b01U);
  EXPECT_EQ(back.gates()[1].angle, std::numbers::pi / 3);
  EXPECT_EQ(back.gates()[2].angle, -0.25);
  ASSERT_EQ(back.stage_marks().size(), 2U);
  EXPECT_EQ(back.stage_marks()[1].position, 3U);
  EXPECT_EQ(serialize_circuit(back), serialize_circuit(c));
}

TEST(Serialize, RejectsUnknownGateKind) {
  try {
    parse_circuit(R"({"layout": {"n_system": 1, "ancillas": []},
        "gates": [{"kind": "cnot", "target": 0}], "stage_marks": []})");
    FAIL() << "unknown kind accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

TEST(Layout, AncillaLookup) {
  const RegisterLayout l = layout(3, 2);
  EXPECT_EQ(l.ancilla_qubit("a1"), 4);
  EXPECT_EQ(l.ancilla_qubit(0), 3);
  EXPECT_EQ(l.total_qubits(), 5);
  EXPECT_THROW((void)l.ancilla_qubit("zz"), Error);
}

}  // namespace
}  // namespace ptq
