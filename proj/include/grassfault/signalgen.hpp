#pragma once

#include <cstdint>
#include <vector>

#include "grassfault/window.hpp"

namespace grassfault {

// One synthetic case on the fault grid. Defaults follow the generator's
// native grid; see desk_grid() / paper_grid() for full case sets.
struct CaseParams {
    FaultClass fault_class = FaultClass::NF;
    double resistance_ohm = 0.01;      // fault resistance
    double incidence_angle_deg = 0.0;  // point on wave at fault onset, [0, 180]
    double location_km = 1.0;          // distance from the measurement bus
    double load_scale = 0.0;           // honoured only for NF, in [-0.6, 0.6]
    double noise_snr_db = 40.0;        // non-finite disables noise
    std::uint64_t seed = 0;
};

inline constexpr double kSampleRateHz = 3200.0;  // 64 samples per 50 Hz cycle
inline constexpr int kDefaultTau = 128;          // two cycles

// Synthesizes one tau x 6 window (Va, Vb, Vc, Ia, Ib, Ic). The capture starts
// half a cycle before fault onset; the incidence angle shifts the onset within
// the following half cycle. Deterministic for a fixed params.seed.
MultichannelWindow generate_case(const CaseParams& params, int tau = kDefaultTau);

// One window per grid point per repetition, in grid order then repetition
// order. Repetition i re-seeds the case with params.seed + i.
LabeledDataset generate_dataset(const std::vector<CaseParams>& grid,
                                int per_case_windows, int tau = kDefaultTau);

// Full case grid: 23 locations x 9 resistances x 7 incidence angles per fault
// class (1449 cases each), plus 13 load scales x 169 seeds of NF (2197 cases)
// when include_no_fault is set.
std::vector<CaseParams> paper_grid(std::uint64_t seed, double noise_snr_db = 40.0,
                                   bool include_no_fault = true);

// Desk-scale grid: 3 locations x 3 resistances x 3 angles per fault class
// (27 cases each) plus 13 load scales x 4 seeds of NF (52 cases), 349 total.
std::vector<CaseParams> desk_grid(std::uint64_t seed, double noise_snr_db = 40.0);

}  // namespace grassfault
