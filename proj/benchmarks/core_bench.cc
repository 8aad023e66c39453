// Copyright 2026 The gtubqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "gtubqc/qft.h"
#include "gtubqc/rotations.h"
#include "gtubqc/session.h"
#include "gtubqc/teleport.h"
#include "gtubqc/verify.h"

namespace {

using namespace gtubqc;

void BM_EulerDecompose(benchmark::State &state) {
    Matrix u = named_gate_matrix(NamedGate::kT) * named_gate_matrix(NamedGate::kH);
    auto order = kAllEulerOrders[static_cast<size_t>(state.range(0))];
    for (auto _ : state) {
        benchmark::DoNotOptimize(euler_decompose(u, order));
    }
    state.SetLabel(std::string(euler_order_name(order)));
}
BENCHMARK(BM_EulerDecompose)->DenseRange(0, 5);

void BM_TeleportRotation(benchmark::State &state) {
    auto wires = static_cast<size_t>(state.range(0));
    StateVector s = StateVector::basis(wires, 0);
    Rng rng(1);
    RotationGate g{Axis::kZ, Angle::parse("pi/4")};
    for (auto _ : state) {
        benchmark::DoNotOptimize(teleport_rotation(s, 0, BellCode{1, 0}, g, rng));
    }
}
BENCHMARK(BM_TeleportRotation)->Arg(1)->Arg(4)->Arg(8);

void BM_TestOracle(benchmark::State &state) {
    auto kind = state.range(0) == 0 ? TestKind::kRotation : TestKind::kControlled;
    Rng rng(2);
    TestSetup setup = random_test_setup(kind, rng);
    Server b1(PartyRole::kServer1, AdversaryModel::parse("flip:bob1:1"));
    Server b2(PartyRole::kServer2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(test_oracle(setup, b1, b2));
    }
    state.SetLabel(std::string(test_kind_name(kind)));
}
BENCHMARK(BM_TestOracle)->Arg(0)->Arg(1);

void BM_BlindQft(benchmark::State &state) {
    auto n = static_cast<size_t>(state.range(0));
    StateVector input = StateVector::basis(n, 1);
    SessionConfig config;
    uint64_t seed = 0;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(run_blind_qft(n, input, config));
    }
}
BENCHMARK(BM_BlindQft)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
