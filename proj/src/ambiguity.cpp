// SPDX-License-Identifier: Apache-2.0

#include "drcs/ambiguity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "drcs/error.hpp"

namespace drcs {

namespace {

std::vector<Complex> roots_table(int order) {
    std::vector<Complex> out(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) out[k] = root_of_unity(order, k);
    return out;
}

int wrap(long long value, int modulus) {
    auto r = static_cast<int>(value % modulus);
    return r < 0 ? r + modulus : r;
}

void check_shapes(const ComplementaryMatrix& c1, const ComplementaryMatrix& c2) {
    if (c1.rows() != c2.rows() || c1.cols() != c2.cols() || c1.alphabet != c2.alphabet) {
        throw Error(ErrorCode::ShapeMismatch, "complementary matrices differ in shape or alphabet");
    }
}

std::int64_t histogram_key(double magnitude) { return std::llround(magnitude * 1e6); }

// Partial results of one worker.
struct ScanAccumulator {
    double theta_a = 0.0;
    double theta_c = 0.0;
    std::map<std::int64_t, std::size_t> histogram;

    void merge(const ScanAccumulator& other) {
        theta_a = std::max(theta_a, other.theta_a);
        theta_c = std::max(theta_c, other.theta_c);
        for (const auto& [key, count] : other.histogram) histogram[key] += count;
    }
};

}  // namespace

Complex cross_af(std::span<const Complex> a, std::span<const Complex> b, int tau, int v) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "sequences differ in length");
    const int n = static_cast<int>(a.size());
    if (tau >= n || tau <= -n) return {};
    const auto doppler = roots_table(n);
    const int first = tau >= 0 ? 0 : -tau;
    const int last = tau >= 0 ? n - 1 - tau : n - 1;
    Complex sum{};
    for (int i = first; i <= last; ++i) {
        sum += a[i] * std::conj(b[i + tau]) * doppler[wrap(static_cast<long long>(i) * v, n)];
    }
    return sum;
}

Complex set_af(const ComplementaryMatrix& c1, const ComplementaryMatrix& c2, int tau, int v) {
    check_shapes(c1, c2);
    Complex sum{};
    for (std::size_t m = 0; m < c1.rows(); ++m) {
        const auto a = to_complex(c1.exponents.row(m), c1.alphabet);
        const auto b = to_complex(c2.exponents.row(m), c2.alphabet);
        sum += cross_af(a, b, tau, v);
    }
    return sum;
}

Complex AFSurface::at(int tau, int v) const {
    if (tau >= n || tau <= -n) return {};
    if (v >= n || v <= -n) throw Error(ErrorCode::RegionOutOfRange, "Doppler bin outside (-N, N)");
    return values[static_cast<std::size_t>(tau + n - 1) * side() + static_cast<std::size_t>(v + n - 1)];
}

namespace {

// Lag products g(i) = sum_m c1(m, i) conj(c2(m, i + tau)), then the Doppler
// sum over i for every requested v. Calls sink(tau, v, value).
template <typename Sink>
void scan_pair(const ComplementaryMatrix& c1, const ComplementaryMatrix& c2, const std::vector<Complex>& symbol,
               const std::vector<Complex>& doppler, int zx, int zy, Sink&& sink) {
    const int rows = static_cast<int>(c1.rows());
    const int n = static_cast<int>(c1.cols());
    const int alphabet = c1.alphabet;
    std::vector<Complex> lag(static_cast<std::size_t>(n));
    for (int tau = 1 - zx; tau < zx; ++tau) {
        const int first = tau >= 0 ? 0 : -tau;
        const int last = tau >= 0 ? n - 1 - tau : n - 1;
        for (int i = first; i <= last; ++i) {
            Complex g{};
            for (int m = 0; m < rows; ++m) g += symbol[wrap(c1.exponents(m, i) - c2.exponents(m, i + tau), alphabet)];
            lag[i] = g;
        }
        for (int v = 1 - zy; v < zy; ++v) {
            const int step = wrap(v, n);
            int phase = wrap(static_cast<long long>(first) * v, n);
            Complex sum{};
            for (int i = first; i <= last; ++i) {
                sum += lag[i] * doppler[phase];
                phase += step;
                if (phase >= n) phase -= n;
            }
            sink(tau, v, sum);
        }
    }
}

}  // namespace

AFSurface af_surface(const ComplementaryMatrix& c1, const ComplementaryMatrix& c2) {
    check_shapes(c1, c2);
    AFSurface surface;
    surface.n = static_cast<int>(c1.cols());
    surface.k1 = c1.index_k;
    surface.k2 = c2.index_k;
    surface.is_auto = &c1 == &c2 || c1.index_k == c2.index_k;
    surface.values.assign(static_cast<std::size_t>(surface.side()) * surface.side(), Complex{});
    const auto symbol = roots_table(c1.alphabet);
    const auto doppler = roots_table(surface.n);
    scan_pair(c1, c2, symbol, doppler, surface.n, surface.n, [&](int tau, int v, Complex value) {
        surface.values[static_cast<std::size_t>(tau + surface.n - 1) * surface.side() +
                       static_cast<std::size_t>(v + surface.n - 1)] = value;
    });
    return surface;
}

std::string to_csv(const AFSurface& surface) {
    std::ostringstream out;
    out.precision(12);
    out << "tau,v,re,im,mag\n";
    for (int tau = 1 - surface.n; tau < surface.n; ++tau) {
        for (int v = 1 - surface.n; v < surface.n; ++v) {
            const auto value = surface.at(tau, v);
            out << tau << ',' << v << ',' << value.real() << ',' << value.imag() << ',' << std::abs(value) << '\n';
        }
    }
    return out.str();
}

MetricsReport metrics(const SequenceSet& set, std::optional<Region> region) {
    if (set.matrices.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence set");
    const auto& first = set.matrices.front();
    for (const auto& cm : set.matrices) check_shapes(first, cm);
    const int n = static_cast<int>(first.cols());
    const Region r = region.value_or(Region{n, n});
    if (r.zx < 1 || r.zx > n || r.zy < 1 || r.zy > n) {
        throw Error(ErrorCode::RegionOutOfRange, "region must satisfy 1 <= zx, zy <= N");
    }

    const auto symbol = roots_table(first.alphabet);
    const auto doppler = roots_table(n);
    const auto count = set.matrices.size();

    std::atomic<std::size_t> next{0};
    std::mutex merge_mutex;
    ScanAccumulator total;
    auto worker = [&] {
        ScanAccumulator local;
        for (std::size_t k1 = next++; k1 < count; k1 = next++) {
            // |AF_{k1,k2}(tau, v)| = |AF_{k2,k1}(-tau, -v)| and the region is
            // symmetric, so k2 > k1 stands in for both orders.
            for (std::size_t k2 = k1; k2 < count; ++k2) {
                const bool is_auto = k1 == k2;
                const std::size_t weight = is_auto ? 1 : 2;
                scan_pair(set.matrices[k1], set.matrices[k2], symbol, doppler, r.zx, r.zy,
                          [&](int tau, int v, Complex value) {
                              if (is_auto && tau == 0 && v == 0) return;
                              const double mag = std::abs(value);
                              double& theta = is_auto ? local.theta_a : local.theta_c;
                              theta = std::max(theta, mag);
                              local.histogram[histogram_key(mag)] += weight;
                          });
            }
        }
        std::lock_guard lock(merge_mutex);
        total.merge(local);
    };
    const auto threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, count);
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    MetricsReport report;
    report.K = static_cast<int>(count);
    report.M = static_cast<int>(first.rows());
    report.N = n;
    report.region = r;
    report.theta_a = total.theta_a;
    report.theta_c = total.theta_c;
    report.theta_max = std::max(total.theta_a, total.theta_c);
    report.magnitude_histogram = std::move(total.histogram);
    try {
        report.bound_lemma1 = bound_lemma1(report.K, report.M, n, r.zx, r.zy);
    } catch (const Error&) {
    }
    try {
        report.bound_eq2 = bound_eq2(report.K, report.M, n, r.zy);
        report.eq2_min_zx = bound_eq2_min_zx(report.K, report.M, n, r.zy);
        report.rho = optimality_factor(report.theta_max, *report.bound_eq2);
    } catch (const Error&) {
    }
    return report;
}

double bound_lemma1(int K, int M, int N, int zx, int zy) {
    if (zx < 1 || zx > N || zy < 1 || zy > N) throw Error(ErrorCode::RegionOutOfRange, "need 1 <= zx, zy <= N");
    const double kzx = static_cast<double>(K) * zx;
    if (kzx <= 1.0) throw Error(ErrorCode::NotApplicable, "K zx must exceed 1");
    const double numerator = kzx * zy / (static_cast<double>(M) * (N + zx - 1)) - 1.0;
    if (numerator < 0.0) throw Error(ErrorCode::NotApplicable, "negative radicand");
    return static_cast<double>(M) * N / std::sqrt(static_cast<double>(zy)) * std::sqrt(numerator / (kzx - 1.0));
}

double bound_eq2(int K, int M, int N, int zy) {
    if (zy < 1 || zy > N) throw Error(ErrorCode::RegionOutOfRange, "need 1 <= zy <= N");
    if (static_cast<double>(K) * zy <= 3.0 * M) throw Error(ErrorCode::NotApplicable, "requires K > 3M / zy");
    const double inner = 1.0 - 2.0 * std::sqrt(static_cast<double>(M) / (3.0 * K * zy));
    return std::sqrt(static_cast<double>(M) * N * inner);
}

double bound_eq2_min_zx(int K, int M, int N, int zy) {
    return N * std::sqrt(3.0 * M / (static_cast<double>(K) * zy));
}

double optimality_factor(double theta_max, double bound) {
    if (!(bound > 0.0)) throw Error(ErrorCode::NonPositiveBound, "bound must be positive");
    return theta_max / bound;
}

bool strictly_decreasing(std::span<const double> values) {
    return std::adjacent_find(values.begin(), values.end(), [](double a, double b) { return b >= a; }) ==
           values.end();
}

std::vector<double> magnitudes_outside(const MetricsReport& report, std::span<const double> classes,
                                       double tolerance) {
    std::vector<double> out;
    for (const auto& [key, count] : report.magnitude_histogram) {
        const double mag = static_cast<double>(key) * 1e-6;
        const bool near = std::any_of(classes.begin(), classes.end(),
                                      [&](double c) { return std::abs(mag - c) <= tolerance; });
        if (!near) out.push_back(mag);
    }
    return out;
}

nlohmann::ordered_json to_json(const MetricsReport& report) {
    auto optional = [](const std::optional<double>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json j;
    j["K"] = report.K;
    j["M"] = report.M;
    j["N"] = report.N;
    j["region"] = {{"zx", report.region.zx}, {"zy", report.region.zy}};
    j["theta_a"] = report.theta_a;
    j["theta_c"] = report.theta_c;
    j["theta_max"] = report.theta_max;
    j["bound_lemma1"] = optional(report.bound_lemma1);
    j["bound_eq2"] = optional(report.bound_eq2);
    j["eq2_min_zx"] = optional(report.eq2_min_zx);
    j["rho"] = optional(report.rho);
    auto histogram = nlohmann::ordered_json::array();
    for (const auto& [key, count] : report.magnitude_histogram) {
        histogram.push_back({{"magnitude", static_cast<double>(key) * 1e-6}, {"count", count}});
    }
    j["magnitude_histogram"] = std::move(histogram);
    return j;
}

}  // namespace drcs
