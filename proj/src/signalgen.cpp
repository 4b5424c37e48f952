#include "grassfault/signalgen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "grassfault/errors.hpp"

namespace grassfault {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridHz = 50.0;
constexpr double kOmega = 2.0 * kPi * kGridHz;
constexpr int kSamplesPerCycle = 64;  // at kSampleRateHz

constexpr double kVoltAmp = 1.0;
constexpr double kLoadAmp = 0.5;
constexpr double kLoadLag = 25.0 * kPi / 180.0;

// Harmonic content of the steady state. Balanced sets live in the zero-sum
// plane of their three channels, so a clean window can reach at most rank 5
// of 6; the triplen (3rd) current harmonic is zero-sequence and adds the
// in-phase direction the balanced terms cannot.
constexpr double kVolt5th = 0.030, kVolt5thPhase = 10.0 * kPi / 180.0;
constexpr double kVolt7th = 0.020, kVolt7thPhase = -35.0 * kPi / 180.0;
constexpr double kCurr3rd = 0.025, kCurr3rdPhase = 30.0 * kPi / 180.0;
constexpr double kCurr5th = 0.050, kCurr5thPhase = -20.0 * kPi / 180.0;
constexpr double kCurr7th = 0.030, kCurr7thPhase = 40.0 * kPi / 180.0;

// Fault severity: amplitude gain / (R + r_base), attenuated with distance.
constexpr double kFaultGain = 5.0;
constexpr double kBaseResistance = 0.5;
constexpr double kAttenuationKm = 25.0;
constexpr double kFaultLag = 70.0 * kPi / 180.0;
constexpr double kFault5th = 0.15, kFault5thPhase = 15.0 * kPi / 180.0;
constexpr double kDcFraction = 0.7;
constexpr double kDcTimeConstant = 0.03;  // seconds, ~1.5 cycles
constexpr double kZeroSeqFraction = 0.5;  // TLG ground-path component

constexpr double kPhaseShift[3] = {0.0, -2.0 * kPi / 3.0, 2.0 * kPi / 3.0};

double base_voltage(double theta) {
    return kVoltAmp * (std::sin(theta) + kVolt5th * std::sin(5.0 * theta + kVolt5thPhase) +
                       kVolt7th * std::sin(7.0 * theta + kVolt7thPhase));
}

double base_current(double theta, double scale) {
    // 3*theta is phase-independent for a balanced set: the triplen term is
    // identical on all three phases (zero sequence).
    return kLoadAmp * scale *
           (std::sin(theta - kLoadLag) + kCurr3rd * std::sin(3.0 * theta + kCurr3rdPhase) +
            kCurr5th * std::sin(5.0 * theta + kCurr5thPhase) +
            kCurr7th * std::sin(7.0 * theta + kCurr7thPhase));
}

// Unit fault waveform for an injection referenced to phase angle phi.
double fault_wave(double t, double phi) {
    const double theta = kOmega * t + phi;
    return std::sin(theta - kFaultLag) + kFault5th * std::sin(5.0 * theta + kFault5thPhase);
}

// Decaying asymmetry of the fault current; largest when the fault strikes
// near a voltage zero crossing of the referenced phase.
double fault_dc(double t_rel, double incidence_rad, double phi) {
    return kDcFraction * std::cos(incidence_rad + phi) * std::exp(-t_rel / kDcTimeConstant);
}

void validate(const CaseParams& p, int tau) {
    if (tau < 64) throw ParameterError("generate_case: tau must be >= 64");
    if (!(p.resistance_ohm > 0.0))
        throw ParameterError("generate_case: resistance_ohm must be positive");
    if (!(p.incidence_angle_deg >= 0.0 && p.incidence_angle_deg <= 180.0))
        throw ParameterError("generate_case: incidence_angle_deg must lie in [0, 180]");
    if (!(p.location_km > 0.0))
        throw ParameterError("generate_case: location_km must be positive");
    if (p.fault_class == FaultClass::NF && !(p.load_scale >= -0.6 && p.load_scale <= 0.6))
        throw ParameterError("generate_case: load_scale must lie in [-0.6, 0.6]");
}

// Deterministic standard normals: mt19937_64 stream through Box-Muller.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return radius * std::cos(2.0 * kPi * u2);
    }

private:
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

MultichannelWindow generate_case(const CaseParams& params, int tau) {
    validate(params, tau);

    const double dt = 1.0 / kSampleRateHz;
    const double incidence_rad = params.incidence_angle_deg * kPi / 180.0;
    // Capture starts half a cycle before the earliest onset; the incidence
    // angle delays the onset by up to another half cycle.
    const int onset = kSamplesPerCycle / 2 +
                      static_cast<int>(std::lround(params.incidence_angle_deg / 360.0 *
                                                   kSamplesPerCycle));
    const double t_fault = onset * dt;

    const bool is_fault = params.fault_class != FaultClass::NF;
    const double load_scale = is_fault ? 1.0 : 1.0 + params.load_scale;
    const double severity = is_fault
                                ? kFaultGain / (params.resistance_ohm + kBaseResistance) *
                                      std::exp(-params.location_km / kAttenuationKm)
                                : 0.0;
    const double sag = std::min(0.6, 0.7 * severity / (1.0 + severity));
    const unsigned phases = faulted_phases(params.fault_class);
    const bool grounded = involves_ground(params.fault_class);
    const bool line_to_line = is_fault && !grounded && params.fault_class != FaultClass::TSC;

    // For line-to-line faults the circulating current is referenced to the
    // leading phase of the pair, shifted +30 degrees toward the line-line
    // voltage.
    int ll_first = -1, ll_second = -1;
    if (line_to_line) {
        switch (params.fault_class) {
            case FaultClass::AB: ll_first = 0; ll_second = 1; break;
            case FaultClass::BC: ll_first = 1; ll_second = 2; break;
            default:             ll_first = 2; ll_second = 0; break;  // CA
        }
    }

    MultichannelWindow window;
    window.sample_rate_hz = kSampleRateHz;
    window.data.resize(tau, kNumFeatures);

    for (int n = 0; n < tau; ++n) {
        const double t = n * dt;
        const bool in_fault = is_fault && n >= onset;
        const double t_rel = t - t_fault;

        double volt[3];
        double curr[3];
        for (int p = 0; p < 3; ++p) {
            const double theta = kOmega * t + kPhaseShift[p];
            volt[p] = base_voltage(theta);
            curr[p] = base_current(theta, load_scale);
        }

        if (in_fault) {
            if (line_to_line) {
                const double phi = kPhaseShift[ll_first] + kPi / 6.0;
                const double component =
                    kLoadAmp * severity *
                    (fault_wave(t, phi) + fault_dc(t_rel, incidence_rad, phi));
                curr[ll_first] += component;
                curr[ll_second] -= component;
                volt[ll_first] *= 1.0 - 0.5 * sag;
                volt[ll_second] *= 1.0 - 0.5 * sag;
            } else {
                for (int p = 0; p < 3; ++p) {
                    if (!(phases & (1u << p))) continue;
                    curr[p] += kLoadAmp * severity *
                               (fault_wave(t, kPhaseShift[p]) +
                                fault_dc(t_rel, incidence_rad, kPhaseShift[p]));
                    volt[p] *= 1.0 - sag;
                }
                if (params.fault_class == FaultClass::TLG) {
                    // Common ground-path component separates TLG from TSC.
                    const double zero_seq =
                        kLoadAmp * severity * kZeroSeqFraction *
                        (std::sin(kOmega * t - kFaultLag) +
                         kDcFraction * std::cos(incidence_rad) *
                             std::exp(-t_rel / kDcTimeConstant));
                    curr[0] += zero_seq;
                    curr[1] += zero_seq;
                    curr[2] += zero_seq;
                }
            }
        }

        for (int p = 0; p < 3; ++p) {
            window.data(n, p) = volt[p];
            window.data(n, 3 + p) = curr[p];
        }
    }

    if (std::isfinite(params.noise_snr_db)) {
        NormalStream noise(params.seed);
        const double gain = std::pow(10.0, -params.noise_snr_db / 20.0);
        for (int c = 0; c < kNumFeatures; ++c) {
            const double rms = std::sqrt(window.data.col(c).squaredNorm() / tau);
            const double sigma = rms * gain;
            for (int n = 0; n < tau; ++n) window.data(n, c) += sigma * noise.next();
        }
    }

    return window;
}

LabeledDataset generate_dataset(const std::vector<CaseParams>& grid, int per_case_windows,
                                int tau) {
    if (grid.empty()) throw ParameterError("generate_dataset: grid must not be empty");
    if (per_case_windows < 1)
        throw ParameterError("generate_dataset: per_case_windows must be >= 1");

    LabeledDataset dataset;
    dataset.windows.reserve(grid.size() * per_case_windows);
    dataset.labels.reserve(grid.size() * per_case_windows);
    for (const CaseParams& base : grid) {
        for (int rep = 0; rep < per_case_windows; ++rep) {
            CaseParams params = base;
            params.seed = base.seed + static_cast<std::uint64_t>(rep);
            dataset.windows.push_back(generate_case(params, tau));
            dataset.labels.push_back(params.fault_class);
        }
    }
    return dataset;
}

std::vector<CaseParams> paper_grid(std::uint64_t seed, double noise_snr_db,
                                   bool include_no_fault) {
    std::vector<CaseParams> grid;
    std::uint64_t next_seed = seed;

    const double resistances[] = {0.01, 0.2, 2.0, 6.0, 10.0, 25.0, 50.0, 75.0, 100.0};
    const double angles[] = {0.0, 30.0, 60.0, 90.0, 120.0, 150.0, 180.0};

    for (FaultClass cls : all_fault_classes()) {
        if (cls == FaultClass::NF) continue;
        for (int loc = 1; loc <= 23; ++loc) {
            for (double resistance : resistances) {
                for (double angle : angles) {
                    CaseParams p;
                    p.fault_class = cls;
                    p.location_km = static_cast<double>(loc);
                    p.resistance_ohm = resistance;
                    p.incidence_angle_deg = angle;
                    p.noise_snr_db = noise_snr_db;
                    p.seed = next_seed++;
                    grid.push_back(p);
                }
            }
        }
    }

    if (include_no_fault) {
        for (int step = -6; step <= 6; ++step) {
            for (int rep = 0; rep < 169; ++rep) {
                CaseParams p;
                p.fault_class = FaultClass::NF;
                p.load_scale = step / 10.0;
                p.noise_snr_db = noise_snr_db;
                p.seed = next_seed++;
                grid.push_back(p);
            }
        }
    }
    return grid;
}

std::vector<CaseParams> desk_grid(std::uint64_t seed, double noise_snr_db) {
    std::vector<CaseParams> grid;
    std::uint64_t next_seed = seed;

    const double locations[] = {2.0, 10.0, 20.0};
    const double resistances[] = {0.01, 2.0, 25.0};
    const double angles[] = {0.0, 60.0, 120.0};

    for (FaultClass cls : all_fault_classes()) {
        if (cls == FaultClass::NF) continue;
        for (double location : locations) {
            for (double resistance : resistances) {
                for (double angle : angles) {
                    CaseParams p;
                    p.fault_class = cls;
                    p.location_km = location;
                    p.resistance_ohm = resistance;
                    p.incidence_angle_deg = angle;
                    p.noise_snr_db = noise_snr_db;
                    p.seed = next_seed++;
                    grid.push_back(p);
                }
            }
        }
    }

    for (int step = -6; step <= 6; ++step) {
        for (int rep = 0; rep < 4; ++rep) {
            CaseParams p;
            p.fault_class = FaultClass::NF;
            p.load_scale = step / 10.0;
            p.noise_snr_db = noise_snr_db;
            p.seed = next_seed++;
            grid.push_back(p);
        }
    }
    return grid;
}

}  // namespace grassfault
