// SPDX-License-Identifier: Apache-2.0

#include "drcs/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "drcs/error.hpp"

namespace drcs {

namespace {

// Trace values feeding every construction: phi(Tr(beta^t)) for one period.
struct TraceSource {
    std::vector<std::uint64_t> phi_of_trace;
    std::uint64_t period;

    std::uint64_t operator()(std::uint64_t exponent) const { return phi_of_trace[exponent % period]; }
};

TraceSource make_source(const ExtensionTower& tower, const PhiMap& phi) {
    if (tower.relative_degree() != 2) {
        throw Error(ErrorCode::InvalidArgument, "constructions need the quadratic extension F_{q^2}");
    }
    if (phi.size() != tower.q()) throw Error(ErrorCode::DimensionMismatch, "phi must be defined on all of F_q");
    auto seq = m_sequence(tower);
    for (auto& s : seq) s = phi(s);
    const auto period = static_cast<std::uint64_t>(seq.size());
    return {std::move(seq), period};
}

void check_q(Construction c, std::uint64_t q) {
    if (q < static_cast<std::uint64_t>(minimum_q(c))) {
        std::ostringstream msg;
        msg << to_string(c) << " needs q >= " << minimum_q(c) << ", got q = " << q;
        throw Error(ErrorCode::ParameterTooSmall, msg.str());
    }
}

void check_psi(const OrthoMatrix& psi, const ExtensionTower& tower) {
    const auto q = static_cast<std::size_t>(tower.q());
    if (psi.exponents.rows() != q || psi.exponents.cols() != q || psi.q != static_cast<int>(q)) {
        throw Error(ErrorCode::DimensionMismatch, "psi must be q x q");
    }
    if (psi.p != tower.base().characteristic()) {
        throw Error(ErrorCode::DimensionMismatch, "psi entries must be p-th roots of unity");
    }
}

SequenceSet skeleton(Construction c, const ExtensionTower& tower, const PhiMap& phi) {
    const auto& base = tower.base();
    SequenceSet set;
    set.construction = c;
    set.q = static_cast<int>(tower.q());
    set.p = base.characteristic();
    set.n = base.degree();
    const auto shape = expected_shape(c, set.q, set.p);
    set.K = shape.K;
    set.M = shape.M;
    set.N = shape.N;
    set.alphabet = shape.alphabet;
    set.provenance.base_modulus = base.modulus();
    set.provenance.ext_modulus = tower.ext().modulus();
    const auto beta = tower.beta().coeffs();
    set.provenance.beta.assign(beta.begin(), beta.end());
    set.provenance.phi = phi.table();
    return set;
}

// T1-T3: row m, column t takes psi(m, phi(Tr(beta^{k * stride + t}))).
SequenceSet psi_family(Construction c, const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi,
                       std::uint64_t stride) {
    check_q(c, tower.q());
    check_psi(psi, tower);
    const auto source = make_source(tower, phi);
    auto set = skeleton(c, tower, phi);
    set.provenance.psi = psi;
    for (int k = 0; k < set.K; ++k) {
        ComplementaryMatrix cm{ExponentTable(set.M, set.N), set.alphabet, k};
        for (int t = 0; t < set.N; ++t) {
            const auto column = source(static_cast<std::uint64_t>(k) * stride + static_cast<std::uint64_t>(t));
            for (int m = 0; m < set.M; ++m) cm.exponents(m, t) = psi.exponents(m, column);
        }
        set.matrices.push_back(std::move(cm));
    }
    return set;
}

// T4-T5: exponent m * phi(Tr(beta^{e + k(q+1) + t + 1})) mod (q - 1).
SequenceSet character_family(Construction c, const ExtensionTower& tower, const PhiMap& phi) {
    check_q(c, tower.q());
    const auto source = make_source(tower, phi);
    const int e = find_zero_exponent(tower);
    auto set = skeleton(c, tower, phi);
    set.provenance.e = e;
    const auto q = tower.q();
    const auto alphabet = static_cast<std::uint64_t>(set.alphabet);
    for (int k = 0; k < set.K; ++k) {
        ComplementaryMatrix cm{ExponentTable(set.M, set.N), set.alphabet, k};
        for (int t = 0; t < set.N; ++t) {
            const auto value = source(static_cast<std::uint64_t>(e) + static_cast<std::uint64_t>(k) * (q + 1) +
                                      static_cast<std::uint64_t>(t) + 1);
            for (int m = 0; m < set.M; ++m) {
                cm.exponents(m, t) = static_cast<int>((static_cast<std::uint64_t>(m) * value) % alphabet);
            }
        }
        set.matrices.push_back(std::move(cm));
    }
    return set;
}

}  // namespace

std::string_view to_string(Construction c) noexcept {
    switch (c) {
        case Construction::T1: return "T1";
        case Construction::T2: return "T2";
        case Construction::T3: return "T3";
        case Construction::T4: return "T4";
        case Construction::T5: return "T5";
    }
    return "T?";
}

Construction parse_construction(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (!s.empty() && s.front() == 'T') s.erase(0, 1);
    if (s == "1") return Construction::T1;
    if (s == "2") return Construction::T2;
    if (s == "3") return Construction::T3;
    if (s == "4") return Construction::T4;
    if (s == "5") return Construction::T5;
    throw Error(ErrorCode::InvalidArgument, "unknown construction '" + std::string(text) + "'");
}

SetShape expected_shape(Construction c, int q, int p) {
    switch (c) {
        case Construction::T1: return {q + 1, q, q, p};
        case Construction::T2: return {q + 1, q, q - 1, p};
        case Construction::T3: return {q - 1, q, q + 1, p};
        case Construction::T4: return {q - 1, q - 1, q, q - 1};
        case Construction::T5: return {q - 1, q - 1, q - 1, q - 1};
    }
    return {0, 0, 0, 0};
}

int minimum_q(Construction c) noexcept {
    switch (c) {
        case Construction::T1: return 3;
        case Construction::T2:
        case Construction::T3:
        case Construction::T4: return 4;
        case Construction::T5: return 5;
    }
    return 0;
}

SequenceSet construct_t1(const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi) {
    return psi_family(Construction::T1, tower, phi, psi, tower.q() - 1);
}

SequenceSet construct_t2(const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi) {
    return psi_family(Construction::T2, tower, phi, psi, tower.q() - 1);
}

SequenceSet construct_t3(const ExtensionTower& tower, const PhiMap& phi, const OrthoMatrix& psi) {
    return psi_family(Construction::T3, tower, phi, psi, tower.q() + 1);
}

SequenceSet construct_t4(const ExtensionTower& tower, const PhiMap& phi) {
    return character_family(Construction::T4, tower, phi);
}

SequenceSet construct_t5(const ExtensionTower& tower, const PhiMap& phi) {
    return character_family(Construction::T5, tower, phi);
}

SequenceSet construct(Construction c, const ExtensionTower& tower, const PhiMap& phi,
                      const std::optional<OrthoMatrix>& psi) {
    const bool needs_psi = c == Construction::T1 || c == Construction::T2 || c == Construction::T3;
    if (needs_psi && !psi) throw Error(ErrorCode::InvalidArgument, std::string(to_string(c)) + " needs a psi matrix");
    switch (c) {
        case Construction::T1: return construct_t1(tower, phi, *psi);
        case Construction::T2: return construct_t2(tower, phi, *psi);
        case Construction::T3: return construct_t3(tower, phi, *psi);
        case Construction::T4: return construct_t4(tower, phi);
        case Construction::T5: return construct_t5(tower, phi);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown construction");
}

nlohmann::ordered_json to_json(const SequenceSet& set) {
    nlohmann::ordered_json j;
    j["construction"] = std::string(to_string(set.construction));
    j["q"] = set.q;
    j["p"] = set.p;
    j["n"] = set.n;
    j["modulus"] = set.provenance.base_modulus;
    j["ext_modulus"] = set.provenance.ext_modulus;
    j["beta"] = set.provenance.beta;
    j["K"] = set.K;
    j["M"] = set.M;
    j["N"] = set.N;
    j["alphabet"] = set.alphabet;
    j["e"] = set.provenance.e ? nlohmann::ordered_json(*set.provenance.e) : nlohmann::ordered_json(nullptr);
    j["phi"] = set.provenance.phi;
    j["psi"] = set.provenance.psi ? to_json(*set.provenance.psi) : nlohmann::ordered_json(nullptr);
    auto matrices = nlohmann::ordered_json::array();
    for (const auto& cm : set.matrices) matrices.push_back(cm.exponents.to_nested());
    j["matrices"] = std::move(matrices);
    return j;
}

SequenceSet sequence_set_from_json(const nlohmann::ordered_json& j) {
    try {
        SequenceSet set;
        set.construction = parse_construction(j.at("construction").get<std::string>());
        set.q = j.at("q").get<int>();
        set.p = j.at("p").get<int>();
        set.n = j.at("n").get<int>();
        set.K = j.at("K").get<int>();
        set.M = j.at("M").get<int>();
        set.N = j.at("N").get<int>();
        set.alphabet = j.at("alphabet").get<int>();
        set.provenance.base_modulus = j.value("modulus", Poly{});
        set.provenance.ext_modulus = j.value("ext_modulus", Poly{});
        set.provenance.beta = j.value("beta", Poly{});
        set.provenance.phi = j.value("phi", std::vector<std::uint64_t>{});
        if (j.contains("e") && !j["e"].is_null()) set.provenance.e = j["e"].get<int>();
        if (j.contains("psi") && !j["psi"].is_null()) {
            std::vector<std::string> warnings;
            set.provenance.psi = ortho_from_json(j["psi"], warnings);
        }
        if (set.alphabet < 1 || set.M < 1 || set.N < 1 || set.K < 1) {
            throw Error(ErrorCode::CorruptFile, "set parameters must be positive");
        }

        const auto& matrices = j.at("matrices");
        if (!matrices.is_array() || static_cast<int>(matrices.size()) != set.K) {
            throw Error(ErrorCode::CorruptFile, "matrix count does not match K");
        }
        int k = 0;
        for (const auto& m : matrices) {
            ComplementaryMatrix cm{ExponentTable::from_nested(m.get<std::vector<std::vector<int>>>()), set.alphabet,
                                   k++};
            if (cm.rows() != static_cast<std::size_t>(set.M) || cm.cols() != static_cast<std::size_t>(set.N)) {
                throw Error(ErrorCode::CorruptFile, "matrix shape does not match M x N");
            }
            for (std::size_t r = 0; r < cm.rows(); ++r) {
                for (int value : cm.exponents.row(r)) {
                    if (value < 0 || value >= set.alphabet) {
                        throw Error(ErrorCode::CorruptFile, "exponent outside the alphabet");
                    }
                }
            }
            set.matrices.push_back(std::move(cm));
        }
        return set;
    } catch (const nlohmann::ordered_json::exception& ex) {
        throw Error(ErrorCode::CorruptFile, std::string("bad sequence-set JSON: ") + ex.what());
    } catch (const Error& ex) {
        if (ex.code() == ErrorCode::CorruptFile) throw;
        throw Error(ErrorCode::CorruptFile, ex.what());
    }
}

std::string to_csv(const SequenceSet& set) {
    std::ostringstream out;
    out << "k,m,t,exponent\n";
    for (const auto& cm : set.matrices) {
        for (std::size_t m = 0; m < cm.rows(); ++m) {
            for (std::size_t t = 0; t < cm.cols(); ++t) {
                out << cm.index_k << ',' << m << ',' << t << ',' << cm.exponents(m, t) << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace drcs
