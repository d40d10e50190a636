// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "drcs/exponent_table.hpp"
#include "drcs/finite_field.hpp"

namespace drcs {

// q x q matrix of p-th roots of unity; entry (i, j) is xi_p^{exponents(i, j)}.
struct OrthoMatrix {
    int q = 0;
    int p = 0;
    ExponentTable exponents;
    std::string label;  // character | dft | example_q5 | user
};

// exponents(i, j) = Tr_1^n(x_i x_j) with x_k the k-th element in canonical order.
OrthoMatrix character_matrix(const FiniteField& field);

// exponents(i, j) = i j mod p.
OrthoMatrix dft_matrix(int p);

// The 5 x 5 matrix used by the worked q = 5 examples.
OrthoMatrix example_matrix_q5();

struct OrthogonalityReport {
    bool passed = false;
    // True when every column pair was settled by the exponent-difference test.
    bool exact = false;
    double worst_residual = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;
};

// A column pair passes exactly when the differences e(i, j) - e(i, j') are
// uniformly distributed over Z_p; otherwise the inner product is summed
// numerically and accepted below 1e-9 * q.
OrthogonalityReport validate_orthogonality(const OrthoMatrix& m);

// {"q":5,"p":5,"label":"user","exponents":[[...],...]}. Entries outside
// [0, p-1] are reduced mod p and noted in `warnings`.
OrthoMatrix ortho_from_json(const nlohmann::ordered_json& j, std::vector<std::string>& warnings);
nlohmann::ordered_json to_json(const OrthoMatrix& m);

// xi_order^exponent.
std::complex<double> root_of_unity(int order, long long exponent);
std::vector<std::complex<double>> to_complex(std::span<const int> exponents, int alphabet);

inline constexpr int kDefaultOversampling = 64;

// max_k |s_u(k / (L M))|^2 / M over the L*M-point grid on [0, 1).
// Throws NonUnimodularInput when some |u_m| != 1, InvalidArgument when L < 4.
double papr(std::span<const std::complex<double>> u, int oversampling = kDefaultOversampling);

struct PaprReport {
    std::vector<double> per_column;
    double max_papr = 0.0;
    int oversampling = kDefaultOversampling;
};

// PAPR of every column of an M x N exponent table over the given alphabet.
PaprReport max_column_papr(const ExponentTable& matrix, int alphabet, int oversampling = kDefaultOversampling);

// column_index,papr
std::string to_csv(const PaprReport& report);

}  // namespace drcs
