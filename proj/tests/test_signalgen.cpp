#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "grassfault/dataset_io.hpp"
#include "grassfault/errors.hpp"
#include "grassfault/signalgen.hpp"

using namespace grassfault;

namespace {

constexpr double kNoNoise = std::numeric_limits<double>::infinity();

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

double fault_interval_max_current_sum(const MultichannelWindow& w, int onset) {
    double peak = 0.0;
    for (Eigen::Index t = onset; t < w.tau(); ++t)
        peak = std::max(peak, std::abs(w.data(t, 3) + w.data(t, 4) + w.data(t, 5)));
    return peak;
}

}  // namespace

TEST_CASE("no-fault voltages form a balanced set") {
    CaseParams p;
    p.fault_class = FaultClass::NF;
    p.noise_snr_db = kNoNoise;
    const MultichannelWindow w = generate_case(p);
    REQUIRE(w.tau() == 128);
    REQUIRE(w.features() == 6);
    for (Eigen::Index t = 0; t < w.tau(); ++t)
        CHECK(std::abs(w.data(t, 0) + w.data(t, 1) + w.data(t, 2)) < 1e-9);
}

TEST_CASE("low fault resistance drives a larger phase-A current") {
    CaseParams low;
    low.fault_class = FaultClass::AG;
    low.resistance_ohm = 0.01;
    low.incidence_angle_deg = 0.0;
    low.seed = 3;
    CaseParams high = low;
    high.resistance_ohm = 100.0;
    const double peak_low = generate_case(low).data.col(3).cwiseAbs().maxCoeff();
    const double peak_high = generate_case(high).data.col(3).cwiseAbs().maxCoeff();
    CHECK(peak_low > peak_high);
}

TEST_CASE("an AB fault leaves phase C current untouched") {
    CaseParams ab;
    ab.fault_class = FaultClass::AB;
    ab.resistance_ohm = 2.0;
    ab.seed = 17;
    CaseParams nf;
    nf.fault_class = FaultClass::NF;
    nf.seed = 17;
    const MultichannelWindow wab = generate_case(ab);
    const MultichannelWindow wnf = generate_case(nf);
    // Same seed aligns the noise stream, so the healthy column matches bit
    // for bit while the faulted ones diverge.
    CHECK((wab.data.col(5) - wnf.data.col(5)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((wab.data.col(3) - wnf.data.col(3)).cwiseAbs().maxCoeff() > 0.1);
    CHECK((wab.data.col(4) - wnf.data.col(4)).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("windows are bit-identical for identical params") {
    CaseParams p;
    p.fault_class = FaultClass::CAG;
    p.resistance_ohm = 6.0;
    p.incidence_angle_deg = 60.0;
    p.seed = 1234;
    const MultichannelWindow a = generate_case(p);
    const MultichannelWindow b = generate_case(p);
    CHECK((a.data - b.data).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("different seeds change the noise") {
    CaseParams p;
    p.fault_class = FaultClass::NF;
    p.seed = 1;
    CaseParams q = p;
    q.seed = 2;
    CHECK((generate_case(p).data - generate_case(q).data).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("ground faults create zero-sequence current, line faults do not") {
    for (FaultClass cls : all_fault_classes()) {
        if (cls == FaultClass::NF) continue;
        CaseParams p;
        p.fault_class = cls;
        p.resistance_ohm = 2.0;
        p.noise_snr_db = kNoNoise;
        p.seed = 7;
        const MultichannelWindow w = generate_case(p);
        double pre = 0.0;
        for (int t = 0; t < 32; ++t)
            pre = std::max(pre, std::abs(w.data(t, 3) + w.data(t, 4) + w.data(t, 5)));
        const double during = fault_interval_max_current_sum(w, 64);
        INFO("class ", to_string(cls));
        if (involves_ground(cls))
            CHECK(during > pre + 0.05);
        else
            CHECK(during <= pre + 1e-9);
    }
}

TEST_CASE("load scale alters only current amplitudes") {
    CaseParams base;
    base.fault_class = FaultClass::NF;
    base.noise_snr_db = kNoNoise;
    CaseParams loaded = base;
    loaded.load_scale = 0.5;
    const MultichannelWindow a = generate_case(base);
    const MultichannelWindow b = generate_case(loaded);
    CHECK((a.data.leftCols(3) - b.data.leftCols(3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b.data.rightCols(3) - 1.5 * a.data.rightCols(3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parameter validation") {
    CaseParams p;
    p.fault_class = FaultClass::AG;
    p.resistance_ohm = -1.0;
    CHECK_THROWS_AS(generate_case(p), ParameterError);
    p.resistance_ohm = 1.0;
    p.incidence_angle_deg = 270.0;
    CHECK_THROWS_AS(generate_case(p), ParameterError);
    p.incidence_angle_deg = 0.0;
    p.location_km = 0.0;
    CHECK_THROWS_AS(generate_case(p), ParameterError);
    p.location_km = 1.0;
    CHECK_THROWS_AS(generate_case(p, 32), ParameterError);
    CaseParams nf;
    nf.fault_class = FaultClass::NF;
    nf.load_scale = 0.9;
    CHECK_THROWS_AS(generate_case(nf), ParameterError);
}

TEST_CASE("dataset generation follows grid order and repetition count") {
    std::vector<CaseParams> grid;
    CaseParams p;
    p.fault_class = FaultClass::AG;
    p.seed = 100;
    grid.push_back(p);
    p.fault_class = FaultClass::NF;
    grid.push_back(p);
    const LabeledDataset ds = generate_dataset(grid, 3);
    REQUIRE(ds.size() == 6);
    CHECK(ds.labels[0] == FaultClass::AG);
    CHECK(ds.labels[2] == FaultClass::AG);
    CHECK(ds.labels[3] == FaultClass::NF);
    // Repetitions reseed, so they differ.
    CHECK((ds.windows[0].data - ds.windows[1].data).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("empty grid is rejected") {
    CHECK_THROWS_AS(generate_dataset({}, 1), ParameterError);
}

TEST_CASE("desk grid counts") {
    const auto grid = desk_grid(42);
    CHECK(grid.size() == 11 * 27 + 52);
    int ag = 0, nf = 0;
    for (const auto& p : grid) {
        if (p.fault_class == FaultClass::AG) ++ag;
        if (p.fault_class == FaultClass::NF) ++nf;
    }
    CHECK(ag == 27);
    CHECK(nf == 52);
}

TEST_CASE("paper grid counts") {
    const auto faults_only = paper_grid(42, 40.0, false);
    CHECK(faults_only.size() == 11 * 1449);
    int per_class = 0;
    for (const auto& p : faults_only)
        if (p.fault_class == FaultClass::BG) ++per_class;
    CHECK(per_class == 1449);
    const auto full = paper_grid(42, 40.0, true);
    CHECK(full.size() == 11 * 1449 + 2197);

    // One window per case: spot-generate a single class of the full grid.
    std::vector<CaseParams> bg_cases;
    for (const auto& p : faults_only)
        if (p.fault_class == FaultClass::BG) bg_cases.push_back(p);
    const LabeledDataset ds = generate_dataset(bg_cases, 1, 64);
    CHECK(ds.size() == 1449);
}

TEST_CASE("csv round-trip preserves values to serialized precision") {
    std::vector<CaseParams> grid;
    CaseParams p;
    p.fault_class = FaultClass::AG;
    p.seed = 55;
    grid.push_back(p);
    p.fault_class = FaultClass::NF;
    grid.push_back(p);
    const LabeledDataset ds = generate_dataset(grid, 1);

    const auto path = temp_file("grassfault_roundtrip.csv");
    save_csv(ds, path);
    const LabeledDataset back = load_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back.labels[0] == FaultClass::AG);
    CHECK(back.labels[1] == FaultClass::NF);
    CHECK(back.windows[0].sample_rate_hz == ds.windows[0].sample_rate_hz);
    // 9 significant digits.
    CHECK((back.windows[0].data - ds.windows[0].data).cwiseAbs().maxCoeff() < 1e-8);

    // Serialize -> parse -> serialize is a fixed point.
    const auto path2 = temp_file("grassfault_roundtrip2.csv");
    save_csv(back, path2);
    std::ifstream f1(path), f2(path2);
    const std::string s1((std::istreambuf_iterator<char>(f1)), {});
    const std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("csv loader rejects malformed input") {
    const auto path = temp_file("grassfault_bad.csv");

    {
        std::ofstream out(path);
    }
    CHECK_THROWS_AS(load_csv(path), DataError);  // empty file

    {
        std::ofstream out(path);
        out << "XY,3200,2,2\n0,0\n0,0\n";
    }
    CHECK_THROWS_AS(load_csv(path), DataError);  // unknown label

    {
        std::ofstream out(path);
        out << "AG,3200,2\n";
    }
    CHECK_THROWS_AS(load_csv(path), DataError);  // malformed header

    {
        std::ofstream out(path);
        out << "AG,3200,2,3\n1,2,3\n1,2\n";
    }
    CHECK_THROWS_AS(load_csv(path), DataError);  // inconsistent columns

    {
        std::ofstream out(path);
        out << "AG,3200,2,2\n1,2\nnan,2\n";
    }
    CHECK_THROWS_AS(load_csv(path), DataError);  // non-finite value

    CHECK_THROWS_AS(load_csv(temp_file("grassfault_missing_file.csv")), DataError);
    std::filesystem::remove(path);
}
