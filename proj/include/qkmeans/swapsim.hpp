// Copyright 2026 The qkmeans Authors
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

// Three-qubit statevector simulation of the swap test.
//
// Qubit 0 is the ancilla and the most significant bit of the basis index:
// amplitude k corresponds to |a q1 q2> with k = 4a + 2q1 + q2. Qubits 1 and 2
// carry the two data states. The circuit is
//
//   |0> --------- H --*-- H -- measure Z
//   |0> -- U_psi -----x-------
//   |0> -- U_phi -----x-------
//
// and only the ancilla is read out, so a run of n shots is n i.i.d. draws from
// Bernoulli(P(ancilla = 1)) with P(1) = (1 - |<psi|phi>|^2) / 2.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "qkmeans/embedding.hpp"
#include "qkmeans/error.hpp"
#include "qkmeans/random.hpp"

namespace qkmeans {

template <typename Scalar>
using Statevector3 = Eigen::Matrix<std::complex<Scalar>, 8, 1>;

/// Minimal 3-qubit register; gates act in place.
template <typename Scalar>
class ThreeQubitRegister {
 public:
  ThreeQubitRegister() { amps_.setZero(); amps_(0) = Scalar(1); }

  const Statevector3<Scalar>& amplitudes() const { return amps_; }

  void apply(const Unitary2<Scalar>& u, int qubit) {
    const int mask = bit_of(qubit);
    for (int k = 0; k < 8; ++k) {
      if (k & mask) continue;
      const auto a0 = amps_(k);
      const auto a1 = amps_(k | mask);
      amps_(k) = u(0, 0) * a0 + u(0, 1) * a1;
      amps_(k | mask) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  void hadamard(int qubit) {
    const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
    Unitary2<Scalar> u;
    u << h, h, h, -h;
    apply(u, qubit);
  }

  void controlled_swap(int control, int a, int b) {
    const int c = bit_of(control);
    const int ma = bit_of(a);
    const int mb = bit_of(b);
    for (int k = 0; k < 8; ++k) {
      // Visit each swapped pair once: control set, a set, b clear.
      if ((k & c) && (k & ma) && !(k & mb)) std::swap(amps_(k), amps_((k & ~ma) | mb));
    }
  }

  /// Probability that measuring qubit in Z yields 1.
  Scalar probability_one(int qubit) const {
    const int mask = bit_of(qubit);
    Scalar p = 0;
    for (int k = 0; k < 8; ++k) {
      if (k & mask) p += std::norm(amps_(k));
    }
    return p;
  }

  /// Projects qubit onto |outcome> and renormalises.
  void collapse(int qubit, int outcome) {
    const int mask = bit_of(qubit);
    for (int k = 0; k < 8; ++k) {
      if (((k & mask) != 0) != (outcome != 0)) amps_(k) = 0;
    }
    const Scalar n = amps_.norm();
    if (n > Scalar(0)) amps_ /= n;
  }

 private:
  static int bit_of(int qubit) { return 1 << (2 - qubit); }

  Statevector3<Scalar> amps_;
};

template <typename Scalar>
void check_normalized(const QubitState<Scalar>& s) {
  const Scalar tol = std::max(Scalar(1e-10), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
  if (std::abs(s.squaredNorm() - Scalar(1)) > tol) {
    throw Error(ErrorCode::kNormalization, "qubit state is not normalised");
  }
}

/// A unitary whose first column is the given state.
template <typename Scalar>
Unitary2<Scalar> state_preparation(const QubitState<Scalar>& s) {
  Unitary2<Scalar> u;
  u << s(0), -std::conj(s(1)), s(1), std::conj(s(0));
  return u;
}

/// <phi|psi>, i.e. conj(phi) . psi.
template <typename Scalar>
std::complex<Scalar> overlap(const QubitState<Scalar>& psi, const QubitState<Scalar>& phi) {
  return phi.dot(psi);
}

/// Closed form of the ancilla-one probability, (1 - |<psi|phi>|^2) / 2.
template <typename Scalar>
Scalar swap_probability_closed_form(const QubitState<Scalar>& psi,
                                    const QubitState<Scalar>& phi) {
  return (Scalar(1) - std::norm(overlap(psi, phi))) / Scalar(2);
}

/// Register after H, CSWAP, H, before measurement.
template <typename Scalar>
ThreeQubitRegister<Scalar> run_swap_test_circuit(const Unitary2<Scalar>& prep_psi,
                                                 const Unitary2<Scalar>& prep_phi) {
  ThreeQubitRegister<Scalar> reg;
  reg.apply(prep_psi, 1);
  reg.apply(prep_phi, 2);
  reg.hadamard(0);
  reg.controlled_swap(0, 1, 2);
  reg.hadamard(0);
  return reg;
}

/// P(ancilla = 1) from the full statevector.
template <typename Scalar>
Scalar swap_test_exact(const QubitState<Scalar>& psi, const QubitState<Scalar>& phi) {
  check_normalized(psi);
  check_normalized(phi);
  return run_swap_test_circuit(state_preparation(psi), state_preparation(phi))
      .probability_one(0);
}

/// Same circuit, driven by the embedding unitaries themselves.
template <typename Scalar>
Scalar swap_test_exact(const EmbeddedPoint<Scalar>& a, const EmbeddedPoint<Scalar>& b) {
  return run_swap_test_circuit(preparation_unitary(a.theta, a.gamma),
                               preparation_unitary(b.theta, b.gamma))
      .probability_one(0);
}

struct ShotPolicy {
  enum class Mode { kAnalytic, kSampled };

  Mode mode = Mode::kAnalytic;
  int shots = 0;
  std::uint64_t seed = 0;

  static ShotPolicy analytic() { return {}; }
  static ShotPolicy sampled(int shots, std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorCode::kInvalidCount, "shot count must be >= 1");
    return {Mode::kSampled, shots, seed};
  }

  bool is_sampled() const { return mode == Mode::kSampled; }
};

template <typename Scalar>
struct SwapTestOutcome {
  Scalar p1_estimate{};
  int shots = 0;
  int ones_count = 0;
};

/// Counts ancilla ones over policy.shots runs. The count is drawn as a single
/// Binomial(shots, p) variate, which has the same law as summing the
/// individual Bernoulli outcomes.
template <typename Scalar>
SwapTestOutcome<Scalar> sample_ancilla(Scalar p_one, const ShotPolicy& policy) {
  if (!policy.is_sampled()) {
    throw Error(ErrorCode::kInvalidArgument, "sampling needs a sampled shot policy");
  }
  if (policy.shots < 1) throw Error(ErrorCode::kInvalidCount, "shot count must be >= 1");
  const double p = std::clamp(static_cast<double>(p_one), 0.0, 1.0);
  StreamRng rng(policy.seed);
  std::binomial_distribution<int> draw(policy.shots, p);
  const int ones = draw(rng);
  return {static_cast<Scalar>(ones) / static_cast<Scalar>(policy.shots), policy.shots, ones};
}

template <typename Scalar>
SwapTestOutcome<Scalar> swap_test_sampled(const QubitState<Scalar>& psi,
                                          const QubitState<Scalar>& phi,
                                          const ShotPolicy& policy) {
  return sample_ancilla(swap_test_exact(psi, phi), policy);
}

/// Variance of the shot-averaged estimator, (1 - overlap_sq^2) / (4 shots).
inline double estimator_variance(double overlap_sq, int shots) {
  if (!(overlap_sq >= 0.0 && overlap_sq <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap_sq must lie in [0, 1]");
  }
  if (shots < 1) throw Error(ErrorCode::kInvalidCount, "shot count must be >= 1");
  return (1.0 - overlap_sq * overlap_sq) / (4.0 * shots);
}

}  // namespace qkmeans
