// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace drcs {

// Polynomial over Z_p, ascending coefficients (index i holds the x^i term).
using Poly = std::vector<int>;

bool is_prime(std::uint64_t value);
std::vector<std::uint64_t> prime_factors(std::uint64_t value);

// Exhaustive trial division by every monic polynomial of degree <= deg/2.
// `poly` must be monic over Z_p.
bool is_irreducible(const Poly& poly, int p);

class FieldElement;

// GF(p^n) in polynomial basis. Cheap to copy (shared immutable state).
//
// Elements are given a canonical index: the coefficient vector
// (c_0, ..., c_{n-1}) maps to c_0 + c_1 p + ... + c_{n-1} p^{n-1}. This is the
// total order used for primitive-element search, for phi, and for the rows and
// columns of character matrices.
class FiniteField {
public:
    // Validates p and the modulus. Without a modulus the lexicographically
    // smallest monic irreducible of degree n is used, where candidates are
    // ordered by the canonical index of their non-leading coefficients.
    static FiniteField make(int p, int n, std::optional<Poly> modulus = std::nullopt);

    int characteristic() const noexcept;
    int degree() const noexcept;
    std::uint64_t order() const noexcept;
    const Poly& modulus() const noexcept;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement constant(int value) const;
    FieldElement element(std::uint64_t index) const;
    FieldElement from_coeffs(Poly coeffs) const;

    bool operator==(const FiniteField& other) const noexcept;

private:
    struct Data;
    explicit FiniteField(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;

    friend class FieldElement;
};

class FieldElement {
public:
    const FiniteField& field() const noexcept { return field_; }
    std::span<const int> coeffs() const noexcept { return coeffs_; }
    std::uint64_t index() const noexcept;
    bool is_zero() const noexcept;

    FieldElement pow(std::uint64_t exponent) const;
    FieldElement inverse() const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);

private:
    FieldElement(FiniteField field, Poly coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

    FiniteField field_;
    Poly coeffs_;

    friend class FiniteField;
};

std::uint64_t multiplicative_order(const FieldElement& x);

// Smallest canonical index with multiplicative order exactly q - 1.
FieldElement find_primitive(const FiniteField& field);

// Smallest monic irreducible of degree d whose root x is primitive.
Poly smallest_primitive_polynomial(int p, int degree);

// Tr_1^n: x + x^p + ... + x^{p^{n-1}}, read as an integer in [0, p-1].
int abs_trace(const FieldElement& x);

// F_q together with F_{q^r}, realized as a single degree-rn extension of F_p
// with an explicit embedding of F_q.
class ExtensionTower {
public:
    // The extension modulus defaults to smallest_primitive_polynomial(p, rn),
    // which makes beta = x.
    static ExtensionTower make(const FiniteField& base, int r = 2,
                               std::optional<Poly> ext_modulus = std::nullopt);

    const FiniteField& base() const noexcept { return base_; }
    const FiniteField& ext() const noexcept { return ext_; }
    int relative_degree() const noexcept { return r_; }
    std::uint64_t q() const noexcept { return base_.order(); }

    const FieldElement& alpha() const noexcept { return alpha_; }
    const FieldElement& beta() const noexcept { return beta_; }

    FieldElement embed(const FieldElement& x) const;
    // Inverse of embed; throws NotInSubfield for elements outside the image.
    FieldElement restrict_to_base(const FieldElement& y) const;

private:
    ExtensionTower(FiniteField base, FiniteField ext, int r, FieldElement alpha, FieldElement beta)
        : base_(std::move(base)), ext_(std::move(ext)), r_(r), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

    FiniteField base_;
    FiniteField ext_;
    int r_;
    FieldElement alpha_;
    FieldElement beta_;
    std::vector<std::uint64_t> embed_table_;    // base index -> ext index
    std::vector<std::int64_t> restrict_table_;  // ext index -> base index, -1 outside F_q
};

// Tr_n^{rn}(x) = x + x^q + ... + x^{q^{r-1}}, returned as an element of F_q.
FieldElement rel_trace(const ExtensionTower& tower, const FieldElement& x);

// s(t) = Tr(beta^t) for t in [0, q^r - 2], as canonical indices of F_q. The
// sequence is cyclic with period q^r - 1.
std::vector<std::uint64_t> m_sequence(const ExtensionTower& tower);

// The unique e in [0, q] with Tr(beta^e) = 0 (r = 2 towers only).
int find_zero_exponent(const ExtensionTower& tower);

// Bijection F_q -> Z_q over canonical indices.
class PhiMap {
public:
    // Base-p digit reading of the coefficient vector, i.e. the canonical index.
    static PhiMap identity(std::uint64_t q);
    // Throws NotABijection unless `table` is a permutation of [0, size).
    static PhiMap from_permutation(std::vector<std::uint64_t> table);

    std::uint64_t operator()(std::uint64_t element_index) const { return table_.at(element_index); }
    std::uint64_t inverse(std::uint64_t value) const { return inverse_.at(value); }
    std::uint64_t size() const noexcept { return table_.size(); }
    const std::vector<std::uint64_t>& table() const noexcept { return table_; }

private:
    PhiMap(std::vector<std::uint64_t> table, std::vector<std::uint64_t> inverse)
        : table_(std::move(table)), inverse_(std::move(inverse)) {}

    std::vector<std::uint64_t> table_;
    std::vector<std::uint64_t> inverse_;
};

inline PhiMap phi_default(const FiniteField& field) { return PhiMap::identity(field.order()); }

// {"p":5,"n":2,"modulus":[2,1,1]}
nlohmann::ordered_json to_json(const FiniteField& field);
// Rebuilds and revalidates; malformed documents throw CorruptFile.
FiniteField field_from_json(const nlohmann::ordered_json& j);

// t,value_index over one period.
std::string m_sequence_csv(const ExtensionTower& tower);

}  // namespace drcs
