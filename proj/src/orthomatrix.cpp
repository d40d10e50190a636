// SPDX-License-Identifier: Apache-2.0

#include "drcs/orthomatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drcs/error.hpp"

namespace drcs {

namespace {

constexpr double kUnimodularTolerance = 1e-9;
constexpr double kOrthogonalityTolerance = 1e-9;

int reduce(long long value, int modulus) {
    auto r = static_cast<int>(value % modulus);
    return r < 0 ? r + modulus : r;
}

}  // namespace

std::complex<double> root_of_unity(int order, long long exponent) {
    const int k = reduce(exponent, order);
    if (k == 0) return {1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * k / order);
}

std::vector<std::complex<double>> to_complex(std::span<const int> exponents, int alphabet) {
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(alphabet));
    for (int k = 0; k < alphabet; ++k) roots[k] = root_of_unity(alphabet, k);
    std::vector<std::complex<double>> out;
    out.reserve(exponents.size());
    for (int e : exponents) out.push_back(roots[reduce(e, alphabet)]);
    return out;
}

OrthoMatrix character_matrix(const FiniteField& field) {
    const auto q = static_cast<std::size_t>(field.order());
    OrthoMatrix m{static_cast<int>(q), field.characteristic(), ExponentTable(q, q), "character"};
    std::vector<FieldElement> elements;
    elements.reserve(q);
    for (std::size_t i = 0; i < q; ++i) elements.push_back(field.element(i));
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = i; j < q; ++j) {
            const int e = abs_trace(elements[i] * elements[j]);
            m.exponents(i, j) = e;
            m.exponents(j, i) = e;
        }
    }
    return m;
}

OrthoMatrix dft_matrix(int p) {
    if (p < 2) throw Error(ErrorCode::InvalidArgument, "DFT size must be >= 2");
    const auto n = static_cast<std::size_t>(p);
    OrthoMatrix m{p, p, ExponentTable(n, n), "dft"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.exponents(i, j) = static_cast<int>((i * j) % n);
    return m;
}

OrthoMatrix example_matrix_q5() {
    return OrthoMatrix{5, 5,
                       ExponentTable::from_nested({{0, 0, 0, 0, 0},
                                                   {0, 1, 2, 4, 3},
                                                   {0, 2, 4, 3, 1},
                                                   {0, 4, 3, 1, 2},
                                                   {0, 3, 1, 2, 4}}),
                       "example_q5"};
}

OrthogonalityReport validate_orthogonality(const OrthoMatrix& m) {
    const std::size_t rows = m.exponents.rows();
    const std::size_t cols = m.exponents.cols();
    OrthogonalityReport report{true, true, 0.0, {}};
    std::vector<std::size_t> histogram(static_cast<std::size_t>(m.p));

    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t k = j + 1; k < cols; ++k) {
            std::fill(histogram.begin(), histogram.end(), 0);
            for (std::size_t i = 0; i < rows; ++i) {
                ++histogram[reduce(static_cast<long long>(m.exponents(i, j)) - m.exponents(i, k), m.p)];
            }
            const bool uniform =
                std::all_of(histogram.begin(), histogram.end(), [&](std::size_t c) { return c == histogram[0]; });
            if (uniform) continue;

            report.exact = false;
            std::complex<double> sum{};
            for (int r = 0; r < m.p; ++r) sum += static_cast<double>(histogram[r]) * root_of_unity(m.p, r);
            const double residual = std::abs(sum);
            report.worst_residual = std::max(report.worst_residual, residual);
            if (residual > kOrthogonalityTolerance * m.q) {
                report.passed = false;
                report.failing_pairs.emplace_back(j, k);
            }
        }
    }
    return report;
}

OrthoMatrix ortho_from_json(const nlohmann::ordered_json& j, std::vector<std::string>& warnings) {
    try {
        OrthoMatrix m;
        m.q = j.at("q").get<int>();
        m.p = j.at("p").get<int>();
        m.label = j.value("label", std::string("user"));
        if (m.p < 2 || m.q < 1) throw Error(ErrorCode::InvalidArgument, "matrix needs q >= 1 and p >= 2");
        auto nested = j.at("exponents").get<std::vector<std::vector<int>>>();
        m.exponents = ExponentTable::from_nested(nested);
        if (m.exponents.rows() != static_cast<std::size_t>(m.q) || m.exponents.cols() != static_cast<std::size_t>(m.q)) {
            throw Error(ErrorCode::DimensionMismatch, "exponent table is not q x q");
        }
        for (std::size_t r = 0; r < m.exponents.rows(); ++r) {
            for (std::size_t c = 0; c < m.exponents.cols(); ++c) {
                int& e = m.exponents(r, c);
                if (e < 0 || e >= m.p) {
                    std::ostringstream msg;
                    msg << "entry (" << r << "," << c << ") = " << e << " reduced mod " << m.p;
                    warnings.push_back(msg.str());
                    e = reduce(e, m.p);
                }
            }
        }
        return m;
    } catch (const nlohmann::ordered_json::exception& ex) {
        throw Error(ErrorCode::CorruptFile, std::string("bad matrix JSON: ") + ex.what());
    }
}

nlohmann::ordered_json to_json(const OrthoMatrix& m) {
    nlohmann::ordered_json j;
    j["q"] = m.q;
    j["p"] = m.p;
    j["label"] = m.label;
    j["exponents"] = m.exponents.to_nested();
    return j;
}

double papr(std::span<const std::complex<double>> u, int oversampling) {
    if (oversampling < 4) throw Error(ErrorCode::InvalidArgument, "oversampling must be >= 4");
    if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
    for (const auto& x : u) {
        if (std::abs(std::abs(x) - 1.0) > kUnimodularTolerance) {
            throw Error(ErrorCode::NonUnimodularInput, "sequence entries must have unit magnitude");
        }
    }
    const std::size_t m = u.size();
    const std::size_t grid = static_cast<std::size_t>(oversampling) * m;
    std::vector<std::complex<double>> twiddle(grid);
    for (std::size_t k = 0; k < grid; ++k) twiddle[k] = root_of_unity(static_cast<int>(grid), static_cast<long long>(k));

    double peak = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
        std::complex<double> s{};
        for (std::size_t i = 0; i < m; ++i) s += u[i] * twiddle[(i * k) % grid];
        peak = std::max(peak, std::norm(s));
    }
    return peak / static_cast<double>(m);
}

PaprReport max_column_papr(const ExponentTable& matrix, int alphabet, int oversampling) {
    PaprReport report;
    report.oversampling = oversampling;
    report.per_column.reserve(matrix.cols());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        const auto column = matrix.column(c);
        report.per_column.push_back(papr(to_complex(column, alphabet), oversampling));
    }
    if (!report.per_column.empty()) {
        report.max_papr = *std::max_element(report.per_column.begin(), report.per_column.end());
    }
    return report;
}

std::string to_csv(const PaprReport& report) {
    std::ostringstream out;
    out.precision(12);
    out << "column_index,papr\n";
    for (std::size_t c = 0; c < report.per_column.size(); ++c) out << c << ',' << report.per_column[c] << '\n';
    return out.str();
}

}  // namespace drcs
