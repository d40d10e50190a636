// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "drcs/exponent_table.hpp"
#include "drcs/finite_field.hpp"
#include "drcs/orthomatrix.hpp"

namespace drcs {

enum class Construction { T1, T2, T3, T4, T5 };

std::string_view to_string(Construction c) noexcept;
// Accepts "T1".."T5" (case-insensitive) or "1".."5".
Construction parse_construction(std::string_view text);

// One complementary matrix C^k: M rows (the flock), N columns (time), entries
// xi_alphabet^{exponents(m, t)}.
struct ComplementaryMatrix {
    ExponentTable exponents;
    int alphabet = 0;
    int index_k = 0;

    std::size_t rows() const noexcept { return exponents.rows(); }
    std::size_t cols() const noexcept { return exponents.cols(); }
};

// Everything needed to rebuild a set bit-identically.
struct Provenance {
    Poly base_modulus;
    Poly ext_modulus;
    Poly beta;  // coefficients over F_p in the extension basis
    std::vector<std::uint64_t> phi;
    std::optional<OrthoMatrix> psi;  // T1-T3 only
    std::optional<int> e;            // T4-T5 only
};

struct SequenceSet {
    Construction construction = Construction::T1;
    int q = 0;
    int p = 0;
    int n = 0;
    int K = 0;
    int M = 0;
    int N = 0;
    int alphabet = 0;
    Provenance provenance;
    std::vector<ComplementaryMatrix> matrices;
};

// (K, M, N, alphabet) a construction yields for a given q and p.
struct SetShape {
    int K;
    int M;
    int N;
    int alphabet;
    friend bool operator==(const SetShape&, const SetShape&) = default;
};
SetShape expected_shape(Construction c, int q, int p);

// Smallest q each construction admits (q > 2 for T1, q > 3 for T2-T4, q > 4 for T5).
int minimum_q(Construction c) noexcept;

// c_m^k(t) = psi_m^{phi(Tr(beta^{k(q-1)+t}))}, k in [0, q], t in [0, q-1].
SequenceSet construct_t1(const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi);
// As T1 with t in [0, q-2].
SequenceSet construct_t2(const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi);
// c_m^k(t) = psi_m^{phi(Tr(beta^{k(q+1)+t}))}, k in [0, q-2], t in [0, q].
SequenceSet construct_t3(const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi);
// c_m^k(t) = xi_{q-1}^{m phi(Tr(beta^{e+k(q+1)+t+1}))}, k, m in [0, q-2], t in [0, q-1].
SequenceSet construct_t4(const ExtensionTower& tower, const PhiMap& phi);
// As T4 with t in [0, q-2].
SequenceSet construct_t5(const ExtensionTower& tower, const PhiMap& phi);

// Dispatches on `c`; `psi` is required for T1-T3 and ignored otherwise.
SequenceSet construct(Construction c, const ExtensionTower& tower, const PhiMap& phi,
                      const std::optional<OrthoMatrix>& psi);

nlohmann::ordered_json to_json(const SequenceSet& set);
// Throws CorruptFile on schema violations.
SequenceSet sequence_set_from_json(const nlohmann::ordered_json& j);

// k,m,t,exponent
std::string to_csv(const SequenceSet& set);

}  // namespace drcs
