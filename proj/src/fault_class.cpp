#include "grassfault/fault_class.hpp"

namespace grassfault {

const std::array<FaultClass, kNumFaultClasses>& all_fault_classes() {
    static const std::array<FaultClass, kNumFaultClasses> classes = {
        FaultClass::AG,  FaultClass::BG,  FaultClass::CG,  FaultClass::ABG,
        FaultClass::BCG, FaultClass::CAG, FaultClass::AB,  FaultClass::BC,
        FaultClass::CA,  FaultClass::TLG, FaultClass::TSC, FaultClass::NF,
    };
    return classes;
}

std::string to_string(FaultClass c) {
    switch (c) {
        case FaultClass::AG: return "AG";
        case FaultClass::BG: return "BG";
        case FaultClass::CG: return "CG";
        case FaultClass::ABG: return "ABG";
        case FaultClass::BCG: return "BCG";
        case FaultClass::CAG: return "CAG";
        case FaultClass::AB: return "AB";
        case FaultClass::BC: return "BC";
        case FaultClass::CA: return "CA";
        case FaultClass::TLG: return "TLG";
        case FaultClass::TSC: return "TSC";
        case FaultClass::NF: return "NF";
    }
    return "?";
}

std::optional<FaultClass> fault_class_from_string(std::string_view s) {
    for (FaultClass c : all_fault_classes()) {
        if (s == to_string(c)) return c;
    }
    return std::nullopt;
}

unsigned faulted_phases(FaultClass c) {
    constexpr unsigned A = 1, B = 2, C = 4;
    switch (c) {
        case FaultClass::AG: return A;
        case FaultClass::BG: return B;
        case FaultClass::CG: return C;
        case FaultClass::ABG: return A | B;
        case FaultClass::BCG: return B | C;
        case FaultClass::CAG: return C | A;
        case FaultClass::AB: return A | B;
        case FaultClass::BC: return B | C;
        case FaultClass::CA: return C | A;
        case FaultClass::TLG: return A | B | C;
        case FaultClass::TSC: return A | B | C;
        case FaultClass::NF: return 0;
    }
    return 0;
}

bool involves_ground(FaultClass c) {
    switch (c) {
        case FaultClass::AG:
        case FaultClass::BG:
        case FaultClass::CG:
        case FaultClass::ABG:
        case FaultClass::BCG:
        case FaultClass::CAG:
        case FaultClass::TLG:
            return true;
        default:
            return false;
    }
}

}  // namespace grassfault
