// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "drcs/constructions.hpp"

namespace drcs {

using Complex = std::complex<double>;

// Aperiodic cross-ambiguity function
//   sum_i a(i) conj(b(i + tau)) xi_N^{i v}
// over the indices where both samples exist; zero for |tau| >= N.
Complex cross_af(std::span<const Complex> a, std::span<const Complex> b, int tau, int v);

// Row-wise cross_af of two complementary matrices, summed over the flock.
Complex set_af(const ComplementaryMatrix& c1, const ComplementaryMatrix& c2, int tau, int v);

// AF over tau, v in (-N, N).
struct AFSurface {
    int n = 0;
    int k1 = 0;
    int k2 = 0;
    bool is_auto = false;
    std::vector<Complex> values;  // row-major: (tau + n - 1) * (2n - 1) + (v + n - 1)

    int side() const noexcept { return 2 * n - 1; }
    // Zero outside the stored window in tau; v must satisfy |v| < n.
    Complex at(int tau, int v) const;
};

AFSurface af_surface(const ComplementaryMatrix& c1, const ComplementaryMatrix& c2);

// tau,v,re,im,mag
std::string to_csv(const AFSurface& surface);

// Low-ambiguity zone (-zx, zx) x (-zy, zy).
struct Region {
    int zx = 0;
    int zy = 0;
};

struct MetricsReport {
    int K = 0;
    int M = 0;
    int N = 0;
    Region region;
    double theta_a = 0.0;  // auto scan, (0, 0) excluded
    double theta_c = 0.0;  // every ordered pair k1 != k2, (0, 0) included
    double theta_max = 0.0;
    std::optional<double> bound_lemma1;
    std::optional<double> bound_eq2;
    std::optional<double> rho;  // theta_max / bound_eq2
    // Smallest zx for which the eq2 bound is stated to hold; informational.
    std::optional<double> eq2_min_zx;
    // |AF| rounded to 1e-6 (key in micro-units) -> number of scanned cells.
    // Same cells as theta_a and theta_c, so the auto-AF peaks are absent.
    std::map<std::int64_t, std::size_t> magnitude_histogram;
};

// Exhaustive scan. Region defaults to the full plane (N, N).
MetricsReport metrics(const SequenceSet& set, std::optional<Region> region = std::nullopt);

// (MN / sqrt(zy)) sqrt((K zx zy / (M (N + zx - 1)) - 1) / (K zx - 1)).
// Throws NotApplicable for a negative radicand or K zx <= 1.
double bound_lemma1(int K, int M, int N, int zx, int zy);

// sqrt(MN (1 - 2 sqrt(M / (3 K zy)))), valid for K > 3M / zy.
double bound_eq2(int K, int M, int N, int zy);

// N sqrt(3M / (K zy)): the lower end of the zx range attached to bound_eq2.
double bound_eq2_min_zx(int K, int M, int N, int zy);

double optimality_factor(double theta_max, double bound);

bool strictly_decreasing(std::span<const double> values);

// Histogram magnitudes farther than `tolerance` from every value in `classes`.
std::vector<double> magnitudes_outside(const MetricsReport& report, std::span<const double> classes,
                                       double tolerance);

nlohmann::ordered_json to_json(const MetricsReport& report);

}  // namespace drcs
