#pragma once

// Command-line front end: `evolve` writes entanglement curves, `phase` the
// lambda = 1 critical-temperature boundary, `verify` runs invariant suites.
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mesoent/entanglement.hpp"

namespace mesoent {

enum class OutputFormat { csv, json };

struct RunConfig {
    double temperature = 0.1;
    std::optional<double> beta;
    double omega = 1.0;
    double lambda = 1.0;
    double squeeze_k = 1.0;
    double t_max = 10.0;
    double dt_sample = 0.01;
    std::string out;  // empty: standard output
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 20240607;
    int n_max = 24;

    BathParams bath() const;
};

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

void to_json(nlohmann::json& j, const EntanglementReport& r);

/// t, E, S, Idet, Sigma11, Sigma22, Sigma33, Sigma44, Sigmac11, Sigmac22.
extern const std::vector<std::string> kCurveColumns;

void write_curve_csv(std::ostream& os, const EntanglementCurve& curve);
nlohmann::json curve_to_json(const EntanglementCurve& curve);

void write_boundary_csv(std::ostream& os, const std::vector<BoundaryRow>& rows);
nlohmann::json boundary_to_json(const std::vector<BoundaryRow>& rows);

struct VerifyRow {
    std::string check;
    double measured;
    std::string tolerance;
    bool pass;
};

/// suite is one of micro, meso, fock, all; ValidityError otherwise.
std::vector<VerifyRow> run_verify_suite(const std::string& suite, const RunConfig& config,
                                        const std::vector<long>& n_list);

void write_verify_table(std::ostream& os, const std::vector<VerifyRow>& rows);

/// Full CLI entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mesoent
