// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "drcs/ambiguity.hpp"
#include "drcs/constructions.hpp"
#include "drcs/finite_field.hpp"
#include "drcs/orthomatrix.hpp"

namespace drcs::toolkit {

// Process exit statuses of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
    Construction construction = Construction::T1;
    std::optional<int> q;
    std::optional<int> p;
    std::optional<int> n;
    std::optional<Poly> modulus;       // F_{q^2} modulus over F_p; fixes beta
    std::optional<Poly> base_modulus;  // F_q modulus over F_p
    std::string phi = "default";       // default | path to a JSON permutation
    std::string psi = "character";     // character | dft | example_q5 | path to JSON
    std::optional<int> zx;
    std::optional<int> zy;
    int oversample = kDefaultOversampling;
    std::filesystem::path out = ".";
    std::set<std::string> formats{"json"};
    bool log_scale = false;
};

struct FieldParams {
    int p;
    int n;
    int q;
};

// Reconciles any subset of q, p, n. Throws InvalidArgument when they
// disagree or q is not a prime power.
FieldParams resolve_field_params(std::optional<int> q, std::optional<int> p, std::optional<int> n);

ExtensionTower build_tower(const RunConfig& config);

// "default" or a JSON file holding either an array or {"phi": [...]}.
PhiMap resolve_phi(const std::string& spec, std::uint64_t q);

// Null for T4/T5. Warnings from file loading are appended to `warnings`.
std::optional<OrthoMatrix> resolve_psi(const std::string& spec, Construction construction, const FiniteField& base,
                                       std::vector<std::string>& warnings);

// Validated generation; provenance carries everything needed to rebuild.
SequenceSet cmd_generate(const RunConfig& config, std::vector<std::string>& warnings);

std::string serialize(const SequenceSet& set);
SequenceSet load_sequence_set(const std::filesystem::path& path);
SequenceSet parse_sequence_set(const std::string& text);

// 8-bit binary PGM, (2N-1) x (2N-1). Column index is tau + N - 1, row index is
// v + N - 1. Gray level is 255 |AF| / normalizer, or 255 log10(1 + 9 |AF| / normalizer).
std::string to_pgm(const AFSurface& surface, double normalizer, bool log_scale = false);

struct MetricsOutput {
    MetricsReport report;
    std::vector<std::filesystem::path> written;
};

// Writes metrics.json plus, for each requested (k1, k2) pair, af_k1_k2.csv
// and/or af_k1_k2.pgm according to config.formats.
MetricsOutput cmd_metrics(const SequenceSet& set, const RunConfig& config,
                          std::span<const std::pair<int, int>> pairs);

struct TableRow {
    int q = 0;
    int K = 0;
    int M = 0;
    int N = 0;
    double theta_max = 0.0;  // measured by exhaustive scan
    double theta_opt = 0.0;
    double rho = 0.0;
};

inline const std::vector<int> kPrimeSweep{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};

// One row per q using the default tower, phi and character psi.
std::vector<TableRow> cmd_tables(Construction construction, std::span<const int> qs);
std::string to_csv(std::span<const TableRow> rows);

struct EntryDiff {
    int k;
    int m;
    int t;
    int expected;
    int actual;
};

struct VerificationReport {
    int example = 0;
    Construction construction = Construction::T1;
    int matrices_total = 0;
    int matrices_matched = 0;
    std::vector<EntryDiff> diffs;
    bool shape_ok = false;
    SetShape shape{0, 0, 0, 0};
    double theta_max_expected = 0.0;
    double theta_max_measured = 0.0;
    bool theta_ok = false;
    std::optional<int> e;

    bool tables_match() const noexcept { return diffs.empty() && matrices_matched == matrices_total; }
    bool passed() const noexcept { return tables_match() && shape_ok && theta_ok; }
};

// The q = 5 worked examples 1..5: field with beta^2 + beta + 2 = 0, phi the
// identity, and example_matrix_q5 as psi for examples 1-3.
struct WorkedExample {
    int id;
    Construction construction;
    SetShape shape;
    double theta_max;
    std::vector<ExponentTable> expected;
};

const WorkedExample& worked_example(int id);
SequenceSet build_worked_example(int id);

VerificationReport cmd_verify_example(int id);
// Same, against caller-supplied expected tables.
VerificationReport verify_example_against(int id, std::span<const ExponentTable> expected);

std::string describe(const VerificationReport& report);

struct SetPaprReport {
    std::vector<PaprReport> per_matrix;
    double global_max = 0.0;
    int oversampling = kDefaultOversampling;
    // Informational for T1-T3: global_max <= p.
    std::optional<bool> within_p;
};

// Rounds the oversampling factor up to a multiple of p when psi is a
// character or DFT matrix, which puts the analytic peaks on the grid.
SetPaprReport cmd_papr(const SequenceSet& set, int oversampling);

// k,column_index,papr
std::string to_csv(const SetPaprReport& report);

}  // namespace drcs::toolkit
