// SPDX-License-Identifier: Apache-2.0

#include "drcs/finite_field.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>

#include "drcs/error.hpp"

namespace drcs {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;

int mod(std::int64_t value, int p) {
    auto r = static_cast<int>(value % p);
    return r < 0 ? r + p : r;
}

int inverse_mod(int a, int p) {
    // p is prime, so a^{p-2} is the inverse.
    std::int64_t result = 1;
    std::int64_t base = a;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<int>(result);
}

void trim(Poly& poly) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

// Remainder of a modulo b over Z_p; b must be nonzero.
Poly poly_rem(Poly a, const Poly& b, int p) {
    trim(a);
    const auto db = static_cast<int>(b.size()) - 1;
    const int lead_inv = inverse_mod(b.back(), p);
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int factor = static_cast<int>(static_cast<std::int64_t>(a.back()) * lead_inv % p);
        for (int i = 0; i <= db; ++i) {
            a[shift + i] = mod(a[shift + i] - static_cast<std::int64_t>(factor) * b[i], p);
        }
        trim(a);
    }
    return a;
}

std::uint64_t ipow(std::uint64_t base, int exponent) {
    std::uint64_t result = 1;
    for (int i = 0; i < exponent; ++i) {
        if (result > std::numeric_limits<std::uint64_t>::max() / base) {
            throw Error(ErrorCode::InvalidArgument, "field order overflows");
        }
        result *= base;
    }
    return result;
}

// Coefficient vector of `index` in base p, length `width`.
Poly digits(std::uint64_t index, int p, int width) {
    Poly out(static_cast<std::size_t>(width), 0);
    for (int i = 0; i < width; ++i) {
        out[i] = static_cast<int>(index % static_cast<std::uint64_t>(p));
        index /= static_cast<std::uint64_t>(p);
    }
    return out;
}

Poly smallest_irreducible(int p, int degree) {
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), degree);
    for (std::uint64_t i = 0; i < count; ++i) {
        Poly candidate = digits(i, p, degree);
        candidate.push_back(1);
        if (is_irreducible(candidate, p)) return candidate;
    }
    throw Error(ErrorCode::ReduciblePolynomial, "no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    for (std::uint64_t d = 2; d * d <= value; ++d) {
        if (value % d == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= value; ++d) {
        if (value % d == 0) {
            out.push_back(d);
            while (value % d == 0) value /= d;
        }
    }
    if (value > 1) out.push_back(value);
    return out;
}

bool is_irreducible(const Poly& poly, int p) {
    const int degree = static_cast<int>(poly.size()) - 1;
    if (degree < 1) return false;
    if (degree == 1) return true;
    for (int d = 1; d <= degree / 2; ++d) {
        const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), d);
        for (std::uint64_t i = 0; i < count; ++i) {
            Poly divisor = digits(i, p, d);
            divisor.push_back(1);
            if (poly_rem(poly, divisor, p).empty()) return false;
        }
    }
    return true;
}

struct FiniteField::Data {
    int p;
    int n;
    std::uint64_t q;
    Poly modulus;
};

FiniteField FiniteField::make(int p, int n, std::optional<Poly> modulus) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw Error(ErrorCode::NonPrimeP, "p = " + std::to_string(p) + " is not prime");
    }
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    const std::uint64_t q = ipow(static_cast<std::uint64_t>(p), n);
    if (q > kMaxOrder) throw Error(ErrorCode::InvalidArgument, "field too large for this toolkit");

    Poly chosen;
    if (modulus) {
        chosen = *modulus;
        if (static_cast<int>(chosen.size()) != n + 1 || chosen.back() != 1) {
            throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree " + std::to_string(n));
        }
        for (int c : chosen) {
            if (c < 0 || c >= p) throw Error(ErrorCode::InvalidArgument, "modulus coefficient out of range");
        }
        if (!is_irreducible(chosen, p)) {
            throw Error(ErrorCode::ReduciblePolynomial, "modulus is reducible over F_" + std::to_string(p));
        }
    } else {
        chosen = smallest_irreducible(p, n);
    }
    return FiniteField(std::make_shared<const Data>(Data{p, n, q, std::move(chosen)}));
}

int FiniteField::characteristic() const noexcept { return data_->p; }
int FiniteField::degree() const noexcept { return data_->n; }
std::uint64_t FiniteField::order() const noexcept { return data_->q; }
const Poly& FiniteField::modulus() const noexcept { return data_->modulus; }

FieldElement FiniteField::zero() const { return FieldElement(*this, Poly(data_->n, 0)); }

FieldElement FiniteField::one() const { return constant(1); }

FieldElement FiniteField::constant(int value) const {
    Poly c(data_->n, 0);
    c[0] = mod(value, data_->p);
    return FieldElement(*this, std::move(c));
}

FieldElement FiniteField::element(std::uint64_t index) const {
    if (index >= data_->q) throw Error(ErrorCode::InvalidArgument, "element index out of range");
    return FieldElement(*this, digits(index, data_->p, data_->n));
}

FieldElement FiniteField::from_coeffs(Poly coeffs) const {
    if (static_cast<int>(coeffs.size()) > data_->n) {
        coeffs = poly_rem(std::move(coeffs), data_->modulus, data_->p);
    }
    coeffs.resize(data_->n, 0);
    for (auto& c : coeffs) c = mod(c, data_->p);
    return FieldElement(*this, std::move(coeffs));
}

bool FiniteField::operator==(const FiniteField& other) const noexcept {
    return data_ == other.data_ || (data_->p == other.data_->p && data_->modulus == other.data_->modulus);
}

std::uint64_t FieldElement::index() const noexcept {
    std::uint64_t value = 0;
    const auto p = static_cast<std::uint64_t>(field_.characteristic());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * p + static_cast<std::uint64_t>(*it);
    return value;
}

bool FieldElement::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int c) { return c == 0; });
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, "operands belong to different fields");
}

}  // namespace

FieldElement FieldElement::operator-() const {
    Poly out(coeffs_);
    const int p = field_.characteristic();
    for (auto& c : out) c = mod(-c, p);
    return FieldElement(field_, std::move(out));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const int p = a.field_.characteristic();
    Poly out(a.coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(out[i] + b.coeffs_[i], p);
    return FieldElement(a.field_, std::move(out));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    const int p = a.field_.characteristic();
    const int n = a.field_.degree();
    const Poly& m = a.field_.modulus();

    std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * n - 1), 0);
    for (int i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (int j = 0; j < n; ++j) prod[i + j] += static_cast<std::int64_t>(a.coeffs_[i]) * b.coeffs_[j];
    }
    for (auto& c : prod) c %= p;
    // x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
    for (int d = 2 * n - 2; d >= n; --d) {
        const std::int64_t c = prod[d] % p;
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < n; ++i) prod[d - n + i] = (prod[d - n + i] - c * m[i]) % p;
    }
    Poly out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = mod(prod[i], p);
    return FieldElement(a.field_, std::move(out));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
    FieldElement result = field_.one();
    FieldElement base = *this;
    for (; exponent > 0; exponent >>= 1) {
        if (exponent & 1) result = result * base;
        base = base * base;
    }
    return result;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "zero has no inverse");
    return pow(field_.order() - 2);
}

std::uint64_t multiplicative_order(const FieldElement& x) {
    if (x.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero has no multiplicative order");
    const auto one = x.field().one();
    std::uint64_t order = x.field().order() - 1;
    for (auto f : prime_factors(order)) {
        while (order % f == 0 && x.pow(order / f) == one) order /= f;
    }
    return order;
}

FieldElement find_primitive(const FiniteField& field) {
    const std::uint64_t group = field.order() - 1;
    const auto factors = prime_factors(group);
    const auto one = field.one();
    for (std::uint64_t i = 1; i < field.order(); ++i) {
        auto x = field.element(i);
        const bool primitive = std::none_of(factors.begin(), factors.end(),
                                            [&](std::uint64_t f) { return x.pow(group / f) == one; });
        if (primitive) return x;
    }
    // Unreachable for a genuine field.
    throw Error(ErrorCode::InvalidArgument, "no primitive element found");
}

Poly smallest_primitive_polynomial(int p, int degree) {
    if (!is_prime(static_cast<std::uint64_t>(p))) {
        throw Error(ErrorCode::NonPrimeP, "p = " + std::to_string(p) + " is not prime");
    }
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), degree);
    for (std::uint64_t i = 0; i < count; ++i) {
        Poly candidate = digits(i, p, degree);
        candidate.push_back(1);
        if (!is_irreducible(candidate, p)) continue;
        auto field = FiniteField::make(p, degree, candidate);
        auto x = degree == 1 ? field.constant(mod(-candidate[0], p)) : field.element(static_cast<std::uint64_t>(p));
        if (multiplicative_order(x) == field.order() - 1) return candidate;
    }
    throw Error(ErrorCode::InvalidArgument, "no primitive polynomial found");
}

int abs_trace(const FieldElement& x) {
    const int p = x.field().characteristic();
    FieldElement sum = x;
    FieldElement conj = x;
    for (int i = 1; i < x.field().degree(); ++i) {
        conj = conj.pow(static_cast<std::uint64_t>(p));
        sum = sum + conj;
    }
    const auto c = sum.coeffs();
    if (std::any_of(c.begin() + 1, c.end(), [](int v) { return v != 0; })) {
        throw Error(ErrorCode::NotInSubfield, "absolute trace left the prime field");
    }
    return c[0];
}

ExtensionTower ExtensionTower::make(const FiniteField& base, int r, std::optional<Poly> ext_modulus) {
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "relative degree must be >= 1");
    const int p = base.characteristic();
    const int ext_degree = base.degree() * r;
    if (!ext_modulus) ext_modulus = smallest_primitive_polynomial(p, ext_degree);
    auto ext = FiniteField::make(p, ext_degree, ext_modulus);

    // A root gamma of the base modulus inside the extension; x_base -> gamma.
    const Poly& base_mod = base.modulus();
    std::optional<FieldElement> gamma;
    if (base.degree() == 1) {
        gamma = ext.constant(mod(-base_mod[0], p));
    } else {
        for (std::uint64_t i = 0; i < ext.order() && !gamma; ++i) {
            auto y = ext.element(i);
            auto value = ext.zero();
            for (auto it = base_mod.rbegin(); it != base_mod.rend(); ++it) value = value * y + ext.constant(*it);
            if (value.is_zero()) gamma = y;
        }
        if (!gamma) throw Error(ErrorCode::NotInSubfield, "base modulus has no root in the extension");
    }

    std::vector<std::uint64_t> embed_table(base.order());
    std::vector<std::int64_t> restrict_table(ext.order(), -1);
    std::vector<FieldElement> gamma_powers{ext.one()};
    for (int i = 1; i < base.degree(); ++i) gamma_powers.push_back(gamma_powers.back() * *gamma);
    for (std::uint64_t idx = 0; idx < base.order(); ++idx) {
        auto x = base.element(idx);
        auto image = ext.zero();
        for (int i = 0; i < base.degree(); ++i) image = image + ext.constant(x.coeffs()[i]) * gamma_powers[i];
        embed_table[idx] = image.index();
        restrict_table[image.index()] = static_cast<std::int64_t>(idx);
    }

    ExtensionTower tower(base, ext, r, find_primitive(base), find_primitive(ext));
    tower.embed_table_ = std::move(embed_table);
    tower.restrict_table_ = std::move(restrict_table);
    return tower;
}

FieldElement ExtensionTower::embed(const FieldElement& x) const {
    if (!(x.field() == base_)) throw Error(ErrorCode::FieldMismatch, "element is not in the base field");
    return ext_.element(embed_table_[x.index()]);
}

FieldElement ExtensionTower::restrict_to_base(const FieldElement& y) const {
    if (!(y.field() == ext_)) throw Error(ErrorCode::FieldMismatch, "element is not in the extension field");
    const auto idx = restrict_table_[y.index()];
    if (idx < 0) throw Error(ErrorCode::NotInSubfield, "element does not lie in F_q");
    return base_.element(static_cast<std::uint64_t>(idx));
}

FieldElement rel_trace(const ExtensionTower& tower, const FieldElement& x) {
    FieldElement sum = x;
    FieldElement conj = x;
    for (int i = 1; i < tower.relative_degree(); ++i) {
        conj = conj.pow(tower.q());
        sum = sum + conj;
    }
    return tower.restrict_to_base(sum);
}

std::vector<std::uint64_t> m_sequence(const ExtensionTower& tower) {
    const std::uint64_t period = tower.ext().order() - 1;
    std::vector<std::uint64_t> out;
    out.reserve(period);
    auto power = tower.ext().one();
    for (std::uint64_t t = 0; t < period; ++t) {
        out.push_back(rel_trace(tower, power).index());
        power = power * tower.beta();
    }
    return out;
}

int find_zero_exponent(const ExtensionTower& tower) {
    if (tower.relative_degree() != 2) throw Error(ErrorCode::InvalidArgument, "zero exponent needs a quadratic tower");
    std::optional<int> found;
    int count = 0;
    for (std::uint64_t e = 0; e <= tower.q(); ++e) {
        if (rel_trace(tower, tower.beta().pow(e)).is_zero()) {
            ++count;
            found = static_cast<int>(e);
        }
    }
    if (count != 1) {
        throw Error(ErrorCode::ZeroNotFound, "expected one zero of Tr(beta^e) in [0, q], found " + std::to_string(count));
    }
    return *found;
}

PhiMap PhiMap::identity(std::uint64_t q) {
    std::vector<std::uint64_t> table(q);
    for (std::uint64_t i = 0; i < q; ++i) table[i] = i;
    return PhiMap(table, table);
}

PhiMap PhiMap::from_permutation(std::vector<std::uint64_t> table) {
    std::vector<std::uint64_t> inverse(table.size());
    std::vector<bool> seen(table.size(), false);
    for (std::uint64_t i = 0; i < table.size(); ++i) {
        const auto v = table[i];
        if (v >= table.size() || seen[v]) throw Error(ErrorCode::NotABijection, "phi table is not a permutation");
        seen[v] = true;
        inverse[v] = i;
    }
    return PhiMap(std::move(table), std::move(inverse));
}

nlohmann::ordered_json to_json(const FiniteField& field) {
    nlohmann::ordered_json j;
    j["p"] = field.characteristic();
    j["n"] = field.degree();
    j["modulus"] = field.modulus();
    return j;
}

FiniteField field_from_json(const nlohmann::ordered_json& j) {
    try {
        return FiniteField::make(j.at("p").get<int>(), j.at("n").get<int>(), j.at("modulus").get<Poly>());
    } catch (const nlohmann::ordered_json::exception& ex) {
        throw Error(ErrorCode::CorruptFile, std::string("bad field JSON: ") + ex.what());
    }
}

std::string m_sequence_csv(const ExtensionTower& tower) {
    std::ostringstream out;
    out << "t,value_index\n";
    const auto s = m_sequence(tower);
    for (std::size_t t = 0; t < s.size(); ++t) out << t << ',' << s[t] << '\n';
    return out.str();
}

}  // namespace drcs
