// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion; with
// --criterion N only that criterion runs. Exit status is nonzero when any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "drcs/ambiguity.hpp"
#include "drcs/error.hpp"
#include "drcs/toolkit.hpp"

namespace {

using namespace drcs;
using namespace drcs::toolkit;

// Pinned tolerances.
constexpr double kTableTolerance = 5e-4;
constexpr double kThetaRelTolerance = 1e-6;  // times M N
constexpr double kPaprRelTolerance = 0.01;
constexpr double kOracleRelTolerance = 1e-10;
constexpr double kRhoCeilingAt43 = 1.11;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void fail(const std::string& what) {
        if (!passed) detail << "; ";
        passed = false;
        detail << what;
    }
};

struct ReferenceRow {
    int q;
    double theta_opt;
    double rho;
};

// Reference parameter tables, one per construction, q = 5 .. 43.
const std::map<Construction, std::vector<ReferenceRow>>& reference_tables() {
    static const std::map<Construction, std::vector<ReferenceRow>> tables{
        {Construction::T1,
         {{5, 3.6352, 1.3754}, {7, 5.3848, 1.3000}, {11, 8.9815, 1.2247}, {13, 10.8095, 1.2026},
          {17, 14.5032, 1.1722}, {19, 16.3643, 1.1611}, {23, 20.1075, 1.1438}, {29, 25.7624, 1.1257},
          {31, 27.6557, 1.1209}, {37, 33.3557, 1.1093}, {41, 37.1684, 1.1031}, {43, 39.0785, 1.1003}}},
        {Construction::T2,
         {{5, 3.0756, 1.6257}, {7, 4.8456, 1.4446}, {11, 8.4583, 1.3005}, {13, 10.2904, 1.2633},
          {17, 13.9890, 1.2152}, {19, 15.8517, 1.1986}, {23, 19.5973, 1.1736}, {29, 25.2544, 1.1483},
          {31, 27.1482, 1.1419}, {37, 32.8489, 1.1264}, {41, 36.6628, 1.1183}, {43, 38.5732, 1.1147}}},
        {Construction::T3,
         {{5, 3.7668, 1.3274}, {7, 5.5952, 1.2511}, {11, 9.2657, 1.1872}, {13, 11.1149, 1.1696},
          {17, 14.8376, 1.1457}, {19, 16.7092, 1.1371}, {23, 20.4687, 1.1237}, {29, 26.1408, 1.1094},
          {31, 28.0386, 1.1056}, {37, 33.7491, 1.0963}, {41, 37.5682, 1.0913}, {43, 39.4810, 1.0891}}},
        {Construction::T4,
         {{5, 3.1100, 1.2862}, {7, 4.8651, 1.2332}, {11, 8.4678, 1.1810}, {13, 10.2976, 1.1653},
          {17, 13.9937, 1.1433}, {19, 15.8557, 1.1352}, {23, 19.6002, 1.1224}, {29, 25.2565, 1.1086},
          {31, 27.1501, 1.1050}, {37, 32.8503, 1.0959}, {41, 36.6640, 1.0910}, {43, 38.5744, 1.0888}}},
        {Construction::T5,
         {{5, 2.6005, 1.5382}, {7, 4.3623, 1.3754}, {11, 7.9678, 1.2551}, {13, 9.7980, 1.2247},
          {17, 13.4944, 1.1857}, {19, 15.3563, 1.1722}, {23, 19.1010, 1.1518}, {29, 24.7572, 1.1310},
          {31, 26.6508, 1.1257}, {37, 32.3510, 1.1128}, {41, 36.1646, 1.1061}, {43, 38.0749, 1.1031}}},
    };
    return tables;
}

const std::vector<Construction> kAll{Construction::T1, Construction::T2, Construction::T3, Construction::T4,
                                     Construction::T5};

const std::vector<TableRow>& sweep(Construction c) {
    static std::map<Construction, std::vector<TableRow>> cache;
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, cmd_tables(c, kPrimeSweep)).first;
    return it->second;
}

ExtensionTower default_tower(int q, int r = 2) {
    const auto params = resolve_field_params(q, std::nullopt, std::nullopt);
    return ExtensionTower::make(FiniteField::make(params.p, params.n), r);
}

Outcome criterion_1() {
    Outcome out;
    int checked = 0;
    for (auto c : kAll) {
        const auto& rows = sweep(c);
        const auto& printed = reference_tables().at(c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& got = rows[i];
            const auto& want = printed[i];
            checked += 2;
            if (std::abs(got.theta_opt - want.theta_opt) > kTableTolerance) {
                out.fail(fmt::format("{} q={} theta_opt {:.4f} vs {:.4f}", to_string(c), got.q, got.theta_opt,
                                     want.theta_opt));
            }
            if (std::abs(got.rho - want.rho) > kTableTolerance) {
                out.fail(fmt::format("{} q={} rho {:.4f} vs {:.4f}", to_string(c), got.q, got.rho, want.rho));
            }
        }
    }
    if (out.passed) out.detail << checked << " table values within " << kTableTolerance;
    return out;
}

Outcome criterion_2() {
    Outcome out;
    for (int id = 1; id <= 5; ++id) {
        const auto report = cmd_verify_example(id);
        if (!report.passed()) {
            std::set<int> matrices;
            for (const auto& d : report.diffs) matrices.insert(d.k);
            std::string where;
            for (int k : matrices) where += fmt::format("{}C^{}", where.empty() ? "" : ",", k);
            out.fail(fmt::format("example {} has {} differing entries in {}{}", id, report.diffs.size(), where,
                                 report.theta_ok ? "" : ", theta mismatch"));
        }
    }
    if (out.passed) out.detail << "examples 1-5 reproduced exactly";
    return out;
}

Outcome criterion_3() {
    Outcome out;
    for (int q : {5, 7, 8, 9}) {
        const auto tower = default_tower(q);
        for (auto c : kAll) {
            std::optional<OrthoMatrix> psi;
            const bool uses_psi = c == Construction::T1 || c == Construction::T2 || c == Construction::T3;
            if (uses_psi) psi = character_matrix(tower.base());
            const auto set = construct(c, tower, phi_default(tower.base()), psi);
            const auto report = metrics(set);
            const double target = uses_psi ? q : q - 1;
            const double tol = kThetaRelTolerance * set.M * set.N;
            if (std::abs(report.theta_max - target) > tol) {
                out.fail(fmt::format("{} q={} theta_max {:.6f} vs {}", to_string(c), q, report.theta_max, target));
            }
            const std::vector<double> classes{0.0, target};
            const auto stray = magnitudes_outside(report, classes, tol);
            if (!stray.empty()) {
                out.fail(fmt::format("{} q={} {} off-class magnitudes, first {:.6f}", to_string(c), q, stray.size(),
                                     stray.front()));
            }
        }
    }
    if (out.passed) out.detail << "q in {5,7,8,9}, all constructions, full grid";
    return out;
}

Outcome criterion_4() {
    Outcome out;
    auto check = [&](int q, int r, int expected_zeros) {
        const auto tower = default_tower(q, r);
        const auto s = m_sequence(tower);
        const std::size_t window = (static_cast<std::size_t>(std::pow(q, r)) - 1) / (q - 1);
        for (std::size_t start = 0; start < s.size(); ++start) {
            int zeros = 0;
            for (std::size_t i = 0; i < window; ++i) zeros += s[(start + i) % s.size()] == 0;
            if (zeros != expected_zeros) {
                out.fail(fmt::format("q={} r={} window at {} has {} zeros", q, r, start, zeros));
                return;
            }
        }
        if (r == 2) {
            const auto e = static_cast<std::size_t>(find_zero_exponent(tower));
            for (std::size_t t = 0; t < s.size(); ++t) {
                if ((s[t] == 0) != (t % window == e)) {
                    out.fail(fmt::format("q={} zero pattern breaks at t={}", q, t));
                    return;
                }
            }
        }
    };
    for (int q : {4, 5, 7, 8, 9}) check(q, 2, 1);
    for (int q : {2, 3}) check(q, 3, q + 1);
    if (out.passed) out.detail << "windows checked for q in {4,5,7,8,9} (r=2) and {2,3} (r=3)";
    return out;
}

Outcome criterion_5() {
    Outcome out;
    int fields = 0;
    for (int q = 2; q <= 49; ++q) {
        const auto factors = prime_factors(static_cast<std::uint64_t>(q));
        if (factors.size() != 1) continue;
        const auto params = resolve_field_params(q, std::nullopt, std::nullopt);
        const auto report = validate_orthogonality(character_matrix(FiniteField::make(params.p, params.n)));
        ++fields;
        if (!report.passed || !report.exact) out.fail(fmt::format("character matrix q={}", q));
    }
    const auto example = validate_orthogonality(example_matrix_q5());
    if (!example.passed || !example.exact) out.fail("example matrix");
    if (out.passed) out.detail << fields << " character matrices and the example matrix, exact";
    return out;
}

Outcome criterion_6() {
    Outcome out;
    int columns = 0;
    for (int p : {5, 7, 11, 13}) {
        const auto tower = default_tower(p);
        for (auto c : {Construction::T1, Construction::T2, Construction::T3}) {
            const auto set = construct(c, tower, phi_default(tower.base()), dft_matrix(p));
            const auto report = cmd_papr(set, kDefaultOversampling);
            if (report.oversampling % p != 0) out.fail(fmt::format("oversampling {} not a multiple of {}", report.oversampling, p));
            for (const auto& per : report.per_matrix) {
                for (double value : per.per_column) {
                    ++columns;
                    if (std::abs(value - p) > kPaprRelTolerance * p) {
                        out.fail(fmt::format("{} p={} column PAPR {:.6f}", to_string(c), p, value));
                    }
                }
            }
        }
    }
    // Monotone in L over nested grids, on construction columns and random phases.
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<std::vector<std::complex<double>>> samples;
    for (int i = 0; i < 50; ++i) {
        std::vector<std::complex<double>> u(1 + i % 24);
        for (auto& x : u) x = std::polar(1.0, phase(rng));
        samples.push_back(std::move(u));
    }
    const auto t1 = construct(Construction::T1, default_tower(7), PhiMap::identity(7), dft_matrix(7));
    for (const auto& cm : t1.matrices)
        for (std::size_t t = 0; t < cm.cols(); ++t) samples.push_back(to_complex(cm.exponents.column(t), 7));
    for (const auto& u : samples) {
        double previous = 0.0;
        for (int L : {4, 8, 16, 32, 64, 128}) {
            const double value = papr(u, L);
            if (value < previous - 1e-12) {
                out.fail(fmt::format("PAPR decreased at L={} for length {}", L, u.size()));
                break;
            }
            previous = value;
        }
    }
    if (out.passed) out.detail << columns << " columns equal p within 1%, " << samples.size() << " monotone checks";
    return out;
}

Outcome criterion_7() {
    Outcome out;
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> length(1, 32);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = length(rng);
        std::vector<std::complex<double>> a(n), b(n);
        for (auto& x : a) x = std::polar(1.0, phase(rng));
        for (auto& x : b) x = std::polar(1.0, phase(rng));
        for (int tau = 1 - n; tau < n; ++tau) {
            // Shift b by tau, then correlate sample by sample.
            std::vector<std::complex<double>> shifted(n, 0.0);
            for (int i = 0; i < n; ++i)
                if (i + tau >= 0 && i + tau < n) shifted[i] = b[i + tau];
            std::complex<double> oracle = 0.0;
            for (int i = 0; i < n; ++i) oracle += a[i] * std::conj(shifted[i]);
            const auto got = cross_af(a, b, tau, 0);
            const double err = std::abs(got - oracle) / std::max(1.0, std::abs(oracle));
            worst = std::max(worst, err);
        }
    }
    if (worst > kOracleRelTolerance) out.fail(fmt::format("worst relative error {:.3e}", worst));
    if (out.passed) out.detail << fmt::format("200 pairs, worst relative error {:.3e}", worst);
    return out;
}

Outcome criterion_8() {
    Outcome out;
    for (auto c : kAll) {
        const auto& rows = sweep(c);
        std::vector<double> rhos;
        for (const auto& r : rows) rhos.push_back(r.rho);
        if (!strictly_decreasing(rhos)) out.fail(fmt::format("{} rho not strictly decreasing", to_string(c)));
        if (rows.back().q != 43 || !(rows.back().rho < kRhoCeilingAt43)) {
            out.fail(fmt::format("{} rho at q=43 is {:.4f}, not below {}", to_string(c), rows.back().rho,
                                 kRhoCeilingAt43));
        }
    }
    if (out.passed) out.detail << "strictly decreasing, all below " << kRhoCeilingAt43 << " at q=43";
    return out;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"table reproduction", criterion_1},     {"worked examples", criterion_2},
    {"theta_max and magnitude classes", criterion_3},
    {"m-sequence zero windows", criterion_4}, {"orthogonality", criterion_5},
    {"column PAPR", criterion_6},             {"zero-Doppler oracle", criterion_7},
    {"rho trend", criterion_8},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    int selected = 0;
    app.add_option("--criterion", selected, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    bool all_passed = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (selected != 0 && number != selected) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = kCriteria[i].second();
        } catch (const std::exception& ex) {
            outcome.fail(std::string("exception: ") + ex.what());
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::cout << fmt::format("[{}] criterion {} ({}): {} ({:.2f} s)\n", outcome.passed ? "PASS" : "FAIL", number,
                                 kCriteria[i].first, outcome.detail.str(), elapsed.count());
        all_passed = all_passed && outcome.passed;
    }
    return all_passed ? 0 : 1;
}
