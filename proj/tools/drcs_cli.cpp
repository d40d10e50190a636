// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "drcs/error.hpp"
#include "drcs/toolkit.hpp"

namespace {

using namespace drcs;
using namespace drcs::toolkit;

Poly parse_poly(const std::string& text) {
    Poly out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<std::pair<int, int>> parse_pairs(const std::vector<std::string>& items) {
    std::vector<std::pair<int, int>> out;
    for (const auto& item : items) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "pairs look like 1,3");
        out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    }
    return out;
}

void write(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << contents;
    std::cout << "wrote " << path.string() << '\n';
}

struct Flags {
    std::string construction = "T1";
    std::optional<int> q, p, n, zx, zy;
    std::string modulus, base_modulus;
    std::string phi = "default";
    std::string psi = "character";
    int oversample = kDefaultOversampling;
    std::string out = ".";
    std::vector<std::string> formats;
    bool log_scale = false;

    RunConfig config() const {
        RunConfig c;
        c.construction = parse_construction(construction);
        c.q = q;
        c.p = p;
        c.n = n;
        if (!modulus.empty()) c.modulus = parse_poly(modulus);
        if (!base_modulus.empty()) c.base_modulus = parse_poly(base_modulus);
        c.phi = phi;
        c.psi = psi;
        c.zx = zx;
        c.zy = zy;
        c.oversample = oversample;
        c.out = out;
        if (!formats.empty()) c.formats = {formats.begin(), formats.end()};
        c.log_scale = log_scale;
        return c;
    }
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--construction", f.construction, "T1..T5");
    cmd->add_option("--q", f.q, "field size q = p^n");
    cmd->add_option("--p", f.p, "characteristic");
    cmd->add_option("--n", f.n, "extension degree");
    cmd->add_option("--modulus", f.modulus, "F_{q^2} modulus over F_p, ascending coefficients, e.g. 2,1,1");
    cmd->add_option("--base-modulus", f.base_modulus, "F_q modulus over F_p, ascending coefficients");
    cmd->add_option("--phi", f.phi, "default | path to JSON permutation");
    cmd->add_option("--psi", f.psi, "character | dft | example_q5 | path to JSON");
    cmd->add_option("--zx", f.zx, "delay extent of the region");
    cmd->add_option("--zy", f.zy, "Doppler extent of the region");
    cmd->add_option("--oversample", f.oversample, "PAPR grid oversampling factor");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--format", f.formats, "json, csv, pgm")->check(CLI::IsMember({"json", "csv", "pgm"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Doppler-resilient complementary sequence set toolkit"};
    app.require_subcommand(1);

    Flags f;
    std::string set_file;
    std::vector<std::string> pair_items;
    std::vector<int> qs;
    int example = 0;

    auto* generate = app.add_subcommand("generate", "build a sequence set and write it as JSON/CSV");
    add_common(generate, f);

    auto* metrics_cmd = app.add_subcommand("metrics", "exhaustive ambiguity scan, bounds and heatmaps");
    add_common(metrics_cmd, f);
    metrics_cmd->add_option("set", set_file, "sequence-set JSON")->required();
    metrics_cmd->add_option("--pair", pair_items, "k1,k2 pair to export (repeatable)");
    metrics_cmd->add_flag("--log-scale", f.log_scale, "log-scale heatmaps");

    auto* tables = app.add_subcommand("tables", "parameter table with measured theta_max, bound and rho");
    add_common(tables, f);
    tables->add_option("--qs", qs, "q values (default: primes 5..43)");

    auto* verify = app.add_subcommand("verify-example", "rebuild a q = 5 worked example and diff it");
    verify->add_option("example", example, "1..5")->required()->check(CLI::Range(1, 5));

    auto* papr_cmd = app.add_subcommand("papr", "column-sequence PAPR of every matrix");
    add_common(papr_cmd, f);
    papr_cmd->add_option("set", set_file, "sequence-set JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const auto has = [&](const std::string& fmt) {
            return f.formats.empty() ? fmt == "json" : std::find(f.formats.begin(), f.formats.end(), fmt) != f.formats.end();
        };
        const std::filesystem::path out = f.out;

        if (generate->parsed()) {
            std::vector<std::string> warnings;
            const auto set = cmd_generate(f.config(), warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
            const auto stem = fmt::format("set_{}_q{}", to_string(set.construction), set.q);
            if (has("json")) write(out / (stem + ".json"), serialize(set));
            if (has("csv")) write(out / (stem + ".csv"), to_csv(set));
            return kExitOk;
        }
        if (metrics_cmd->parsed()) {
            const auto set = load_sequence_set(set_file);
            auto config = f.config();
            const auto result = cmd_metrics(set, config, parse_pairs(pair_items));
            for (const auto& path : result.written) std::cout << "wrote " << path.string() << '\n';
            const auto& r = result.report;
            std::cout << fmt::format("K={} M={} N={} theta_a={:.6f} theta_c={:.6f} theta_max={:.6f}", r.K, r.M, r.N,
                                     r.theta_a, r.theta_c, r.theta_max);
            if (r.rho) std::cout << fmt::format(" theta_opt={:.4f} rho={:.4f}", *r.bound_eq2, *r.rho);
            std::cout << '\n';
            return kExitOk;
        }
        if (tables->parsed()) {
            const auto construction = parse_construction(f.construction);
            const auto rows = cmd_tables(construction, qs.empty() ? kPrimeSweep : qs);
            const auto csv = to_csv(rows);
            std::cout << csv;
            if (has("csv")) write(out / fmt::format("table_{}.csv", to_string(construction)), csv);
            std::vector<double> rhos;
            for (const auto& r : rows) rhos.push_back(r.rho);
            std::cerr << (strictly_decreasing(rhos) ? "rho strictly decreasing over the sweep\n"
                                                    : "rho NOT strictly decreasing over the sweep\n");
            return kExitOk;
        }
        if (verify->parsed()) {
            const auto report = cmd_verify_example(example);
            std::cout << describe(report);
            return report.passed() ? kExitOk : kExitMismatch;
        }
        if (papr_cmd->parsed()) {
            const auto set = load_sequence_set(set_file);
            const auto report = cmd_papr(set, f.oversample);
            const auto csv = to_csv(report);
            if (has("csv")) {
                write(out / "papr.csv", csv);
            } else {
                std::cout << csv;
            }
            std::cout << fmt::format("oversampling L={} global max PAPR={:.6f}", report.oversampling,
                                     report.global_max);
            if (report.within_p) std::cout << (*report.within_p ? " (<= p)" : " (> p)");
            std::cout << '\n';
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
