// Copyright 2026 The SNI-Sim Authors.
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

#ifndef SNI_CIRCUITS_H
#define SNI_CIRCUITS_H

#include "sni/circuit.h"
#include "sni/noise_model.h"

namespace sni {

struct CircuitWithObservable {
    RandomizedDynamicCircuit circuit;
    Observable observable;
};

/// Two qubits in |+>, `steps` Trotter steps of exp(-i pi/8 (X0 + X1)) exp(-i pi/8 Z0 Z1) written with
/// CNOT, H and T, then an X measurement of qubit 0. All slots are twirled.
CircuitWithObservable trotter_circuit(size_t steps = 8);

/// Four qubits, ten layers (X preparation, two T layers, Clifford layers, X measurement), observable
/// X on every qubit. All layers are twirled.
CircuitWithObservable spatial_circuit();

/// Noise of the Trotter study: Clifford gates, preparation, measurement and twirl Cliffords depolarizing at
/// p; T depolarizing at p/2 with a Z over-rotation by sqrt(2p); encode/decode depolarizing at p/3 per
/// qubit. p is drawn from `p_values` with equal weights.
NoiseSpec trotter_noise(std::vector<double> p_values);
/// Noise of the four-qubit study: layer-wide depolarizing at p, T layers depolarizing at p/2 with a
/// Z^{(x)4} over-rotation by sqrt(2p), encode/decode as one four-qubit depolarizing channel at p/3.
NoiseSpec spatial_noise(double p);
/// Observable equal to the product of the listed outcomes (same for every lambda).
Observable product_observable(const RandomizedDynamicCircuit &c, const std::vector<std::string> &labels,
                              double coefficient = 1.0);

}  // namespace sni

#endif
