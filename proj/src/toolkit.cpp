// SPDX-License-Identifier: Apache-2.0

#include "drcs/toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "drcs/error.hpp"

namespace drcs::toolkit {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::CorruptFile, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << contents;
}

nlohmann::ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::exception& ex) {
        throw Error(ErrorCode::CorruptFile, what + ": " + ex.what());
    }
}

bool is_default_psi(const std::optional<OrthoMatrix>& psi) {
    return psi && (psi->label == "character" || psi->label == "dft");
}

// The fixed field of the worked examples: F_5 and F_25 = F_5[x]/(x^2 + x + 2).
ExtensionTower worked_example_tower() {
    return ExtensionTower::make(FiniteField::make(5, 1), 2, Poly{2, 1, 1});
}

}  // namespace

FieldParams resolve_field_params(std::optional<int> q, std::optional<int> p, std::optional<int> n) {
    if (!q && !p) throw Error(ErrorCode::InvalidArgument, "give --q or --p");
    if (p) {
        if (*p < 2 || !is_prime(static_cast<std::uint64_t>(*p))) {
            throw Error(ErrorCode::NonPrimeP, fmt::format("p = {} is not prime", *p));
        }
        const int degree = n.value_or(1);
        if (degree < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
        long long value = 1;
        for (int i = 0; i < degree; ++i) value *= *p;
        if (q && !n) {
            // Only p and q given: derive n.
            long long v = 1;
            int d = 0;
            while (v < *q) {
                v *= *p;
                ++d;
            }
            if (v != *q) throw Error(ErrorCode::InvalidArgument, fmt::format("q = {} is not a power of p = {}", *q, *p));
            return {*p, d, *q};
        }
        if (q && value != *q) throw Error(ErrorCode::InvalidArgument, "q, p and n are inconsistent");
        return {*p, degree, static_cast<int>(value)};
    }
    if (*q < 2) throw Error(ErrorCode::InvalidArgument, "q must be >= 2");
    const auto factors = prime_factors(static_cast<std::uint64_t>(*q));
    if (factors.size() != 1) throw Error(ErrorCode::InvalidArgument, fmt::format("q = {} is not a prime power", *q));
    const int prime = static_cast<int>(factors.front());
    int degree = 0;
    for (int v = *q; v > 1; v /= prime) ++degree;
    if (n && *n != degree) throw Error(ErrorCode::InvalidArgument, "q, p and n are inconsistent");
    return {prime, degree, *q};
}

ExtensionTower build_tower(const RunConfig& config) {
    const auto params = resolve_field_params(config.q, config.p, config.n);
    auto base = FiniteField::make(params.p, params.n, config.base_modulus);
    return ExtensionTower::make(base, 2, config.modulus);
}

PhiMap resolve_phi(const std::string& spec, std::uint64_t q) {
    if (spec.empty() || spec == "default" || spec == "identity") return PhiMap::identity(q);
    const auto j = parse_json(read_file(spec), "phi file");
    try {
        const auto& table = j.is_object() ? j.at("phi") : j;
        auto phi = PhiMap::from_permutation(table.get<std::vector<std::uint64_t>>());
        if (phi.size() != q) throw Error(ErrorCode::NotABijection, "phi must have exactly q entries");
        return phi;
    } catch (const nlohmann::ordered_json::exception& ex) {
        throw Error(ErrorCode::CorruptFile, std::string("phi file: ") + ex.what());
    }
}

std::optional<OrthoMatrix> resolve_psi(const std::string& spec, Construction construction, const FiniteField& base,
                                       std::vector<std::string>& warnings) {
    if (construction == Construction::T4 || construction == Construction::T5) return std::nullopt;
    OrthoMatrix psi;
    if (spec == "character") {
        psi = character_matrix(base);
    } else if (spec == "dft") {
        if (base.degree() != 1) throw Error(ErrorCode::InvalidArgument, "the DFT matrix needs a prime q");
        psi = dft_matrix(base.characteristic());
    } else if (spec == "example_q5") {
        if (base.order() != 5) throw Error(ErrorCode::DimensionMismatch, "example_q5 needs q = 5");
        psi = example_matrix_q5();
    } else {
        psi = ortho_from_json(parse_json(read_file(spec), "psi file"), warnings);
    }
    const auto check = validate_orthogonality(psi);
    if (!check.passed) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("psi columns are not orthogonal (worst residual {:.3g})", check.worst_residual));
    }
    return psi;
}

SequenceSet cmd_generate(const RunConfig& config, std::vector<std::string>& warnings) {
    const auto tower = build_tower(config);
    if (tower.q() < static_cast<std::uint64_t>(minimum_q(config.construction))) {
        throw Error(ErrorCode::ParameterTooSmall, fmt::format("{} needs q >= {}", to_string(config.construction),
                                                              minimum_q(config.construction)));
    }
    const auto phi = resolve_phi(config.phi, tower.q());
    const auto psi = resolve_psi(config.psi, config.construction, tower.base(), warnings);
    return construct(config.construction, tower, phi, psi);
}

std::string serialize(const SequenceSet& set) { return to_json(set).dump(2) + "\n"; }

SequenceSet parse_sequence_set(const std::string& text) {
    return sequence_set_from_json(parse_json(text, "sequence-set file"));
}

SequenceSet load_sequence_set(const std::filesystem::path& path) { return parse_sequence_set(read_file(path)); }

std::string to_pgm(const AFSurface& surface, double normalizer, bool log_scale) {
    if (!(normalizer > 0.0)) throw Error(ErrorCode::InvalidArgument, "heatmap normalizer must be positive");
    const int side = surface.side();
    std::string out = fmt::format("P5\n{} {}\n255\n", side, side);
    for (int row = 0; row < side; ++row) {
        const int v = row - (surface.n - 1);
        for (int col = 0; col < side; ++col) {
            const int tau = col - (surface.n - 1);
            double level = std::min(1.0, std::abs(surface.at(tau, v)) / normalizer);
            if (log_scale) level = std::log10(1.0 + 9.0 * level);
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * level))));
        }
    }
    return out;
}

MetricsOutput cmd_metrics(const SequenceSet& set, const RunConfig& config, std::span<const std::pair<int, int>> pairs) {
    MetricsOutput output;
    std::optional<Region> region;
    if (config.zx || config.zy) region = Region{config.zx.value_or(set.N), config.zy.value_or(set.N)};
    output.report = metrics(set, region);

    const auto& formats = config.formats;
    if (formats.count("json")) {
        const auto path = config.out / "metrics.json";
        write_file(path, to_json(output.report).dump(2) + "\n");
        output.written.push_back(path);
    }
    const double normalizer = static_cast<double>(set.M) * set.N;
    for (const auto& [k1, k2] : pairs) {
        if (k1 < 0 || k2 < 0 || k1 >= set.K || k2 >= set.K) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("pair ({},{}) outside [0, K)", k1, k2));
        }
        const auto surface = af_surface(set.matrices[k1], set.matrices[k2]);
        const auto stem = fmt::format("af_{}_{}", k1, k2);
        if (formats.count("csv")) {
            const auto path = config.out / (stem + ".csv");
            write_file(path, to_csv(surface));
            output.written.push_back(path);
        }
        if (formats.count("pgm")) {
            const auto path = config.out / (stem + ".pgm");
            write_file(path, to_pgm(surface, normalizer, config.log_scale));
            output.written.push_back(path);
        }
    }
    return output;
}

std::vector<TableRow> cmd_tables(Construction construction, std::span<const int> qs) {
    std::vector<TableRow> rows;
    for (int q : qs) {
        const auto params = resolve_field_params(q, std::nullopt, std::nullopt);
        if (q < minimum_q(construction)) {
            throw Error(ErrorCode::ParameterTooSmall,
                        fmt::format("{} needs q >= {}, got {}", to_string(construction), minimum_q(construction), q));
        }
        const auto tower = ExtensionTower::make(FiniteField::make(params.p, params.n));
        const auto phi = phi_default(tower.base());
        std::optional<OrthoMatrix> psi;
        if (construction == Construction::T1 || construction == Construction::T2 || construction == Construction::T3) {
            psi = character_matrix(tower.base());
        }
        const auto set = construct(construction, tower, phi, psi);
        const auto report = metrics(set);

        TableRow row;
        row.q = q;
        row.K = set.K;
        row.M = set.M;
        row.N = set.N;
        row.theta_max = report.theta_max;
        row.theta_opt = bound_eq2(set.K, set.M, set.N, set.N);
        row.rho = optimality_factor(row.theta_max, row.theta_opt);
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(std::span<const TableRow> rows) {
    std::string out = "q,K,M,N,theta_max,theta_opt,rho\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{:.4f},{:.4f},{:.4f}\n", r.q, r.K, r.M, r.N, r.theta_max, r.theta_opt, r.rho);
    }
    return out;
}

SequenceSet build_worked_example(int id) {
    const auto& example = worked_example(id);
    const auto tower = worked_example_tower();
    const auto phi = PhiMap::identity(tower.q());
    std::optional<OrthoMatrix> psi;
    if (id <= 3) psi = example_matrix_q5();
    return construct(example.construction, tower, phi, psi);
}

VerificationReport cmd_verify_example(int id) { return verify_example_against(id, worked_example(id).expected); }

VerificationReport verify_example_against(int id, std::span<const ExponentTable> expected) {
    const auto& example = worked_example(id);
    const auto set = build_worked_example(id);

    VerificationReport report;
    report.example = id;
    report.construction = example.construction;
    report.e = set.provenance.e;
    report.matrices_total = static_cast<int>(expected.size());
    report.shape = SetShape{set.K, set.M, set.N, set.alphabet};
    report.shape_ok = report.shape == example.shape && static_cast<int>(expected.size()) == set.K;

    for (std::size_t k = 0; k < expected.size() && k < set.matrices.size(); ++k) {
        const auto& actual = set.matrices[k].exponents;
        const auto& want = expected[k];
        if (actual.rows() != want.rows() || actual.cols() != want.cols()) {
            report.diffs.push_back({static_cast<int>(k), -1, -1, static_cast<int>(want.rows() * want.cols()),
                                    static_cast<int>(actual.rows() * actual.cols())});
            continue;
        }
        bool same = true;
        for (std::size_t m = 0; m < want.rows(); ++m) {
            for (std::size_t t = 0; t < want.cols(); ++t) {
                if (actual(m, t) != want(m, t)) {
                    same = false;
                    report.diffs.push_back({static_cast<int>(k), static_cast<int>(m), static_cast<int>(t), want(m, t),
                                            actual(m, t)});
                }
            }
        }
        if (same) ++report.matrices_matched;
    }

    report.theta_max_expected = example.theta_max;
    report.theta_max_measured = metrics(set).theta_max;
    report.theta_ok = std::abs(report.theta_max_measured - report.theta_max_expected) <= 1e-6 * set.M * set.N;
    return report;
}

std::string describe(const VerificationReport& r) {
    std::string out = fmt::format("example {} ({}): {}/{} matrices matched", r.example, to_string(r.construction),
                                  r.matrices_matched, r.matrices_total);
    if (r.e) out += fmt::format(", e={}", *r.e);
    out += fmt::format("\n  shape (K,M,N,alphabet) = ({},{},{},{}) {}\n", r.shape.K, r.shape.M, r.shape.N,
                       r.shape.alphabet, r.shape_ok ? "ok" : "MISMATCH");
    out += fmt::format("  theta_max measured {:.6f}, expected {:.6f} {}\n", r.theta_max_measured,
                       r.theta_max_expected, r.theta_ok ? "ok" : "MISMATCH");
    for (const auto& d : r.diffs) {
        if (d.m < 0) {
            out += fmt::format("  C^{}: shape differs\n", d.k);
        } else {
            out += fmt::format("  C^{} row {} col {}: expected {}, generated {}\n", d.k, d.m, d.t, d.expected,
                               d.actual);
        }
    }
    out += r.passed() ? "  PASS\n" : "  FAIL\n";
    return out;
}

SetPaprReport cmd_papr(const SequenceSet& set, int oversampling) {
    SetPaprReport report;
    const auto& psi = set.provenance.psi;
    if (is_default_psi(psi) && oversampling % set.p != 0) {
        oversampling += set.p - oversampling % set.p;
    }
    report.oversampling = oversampling;
    for (const auto& cm : set.matrices) {
        auto r = max_column_papr(cm.exponents, cm.alphabet, oversampling);
        report.global_max = std::max(report.global_max, r.max_papr);
        report.per_matrix.push_back(std::move(r));
    }
    if (psi) report.within_p = report.global_max <= set.p + 1e-9;
    return report;
}

std::string to_csv(const SetPaprReport& report) {
    std::string out = "k,column_index,papr\n";
    for (std::size_t k = 0; k < report.per_matrix.size(); ++k) {
        const auto& cols = report.per_matrix[k].per_column;
        for (std::size_t c = 0; c < cols.size(); ++c) out += fmt::format("{},{},{:.12g}\n", k, c, cols[c]);
    }
    return out;
}

}  // namespace drcs::toolkit
