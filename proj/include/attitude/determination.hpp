#pragma once

// Single-frame attitude reconstruction (Wahba's problem).

#include <vector>

#include "attitude/sim.hpp"
#include "attitude/so3.hpp"

namespace att {

struct DeterminationResult {
  RotationMatrix r_y = Mat3::Identity();
  UnitQuaternion q_y = UnitQuaternion(1, 0, 0, 0);
};

struct WahbaWeights {
  std::vector<double> s;
  std::vector<double> w;  // s_i / sum(s)
};

WahbaWeights make_weights(const std::vector<double>& s);

enum class DeterminationMethod { Triad, Quest, Svd };

// Uses the first two pairs only; pass vectors in confidence order.
// Throws CollinearObservations.
DeterminationResult triad(const MeasurementFrame& frame);
DeterminationResult quest(const MeasurementFrame& frame, const WahbaWeights& weights);
DeterminationResult quest(const MeasurementFrame& frame);
DeterminationResult svd_wahba(const MeasurementFrame& frame, const WahbaWeights& weights);
DeterminationResult svd_wahba(const MeasurementFrame& frame);
DeterminationResult determine(DeterminationMethod m, const MeasurementFrame& frame);

// (1/2) sum s_i |upsilon_B - R^T upsilon_I|^2 on the normalized vectors.
double wahba_cost(const RotationMatrix& r, const MeasurementFrame& frame,
                  const WahbaWeights& weights);

}  // namespace att
