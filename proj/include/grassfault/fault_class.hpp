#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace grassfault {

// The 12 waveform classes: 11 fault types plus the no-fault condition.
// TLG is the three-phase-to-ground fault (ABCG); TSC is the ungrounded
// three-phase short circuit (ABC).
enum class FaultClass : int {
    AG,
    BG,
    CG,
    ABG,
    BCG,
    CAG,
    AB,
    BC,
    CA,
    TLG,
    TSC,
    NF,
};

inline constexpr int kNumFaultClasses = 12;
inline constexpr int kNumFeatures = 6;  // Va, Vb, Vc, Ia, Ib, Ic

const std::array<FaultClass, kNumFaultClasses>& all_fault_classes();

std::string to_string(FaultClass c);

// Returns nullopt for a label string that names no class.
std::optional<FaultClass> fault_class_from_string(std::string_view s);

// Phase bitmask over {A=1, B=2, C=4}; NF maps to 0.
unsigned faulted_phases(FaultClass c);

bool involves_ground(FaultClass c);

}  // namespace grassfault
