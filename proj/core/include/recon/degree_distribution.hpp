#pragma once

#include <string>
#include <vector>

namespace recon {

/// One term of an edge-perspective generating polynomial: coefficient * x^(degree-1).
struct DegreeTerm {
    int degree = 0;
    double coefficient = 0.0;
};

/// Edge-perspective degree distribution pair (lambda for variable nodes, rho
/// for check nodes). Coefficients give the fraction of edges attached to
/// nodes of each degree.
struct DegreeDistribution {
    std::vector<DegreeTerm> lambda;
    std::vector<DegreeTerm> rho;
};

/// Throws std::invalid_argument unless: coefficients are nonnegative and sum
/// to 1 within 1e-9 on each side, lambda degrees >= 1, rho degrees >= 2,
/// degrees are unique per side, and the implied design rate lies in (0, 1).
void validate(const DegreeDistribution& dist);

/// Design rate 1 - (sum_j rho_j / j) / (sum_i lambda_i / i).
double design_rate(const DegreeDistribution& dist);

/// Node-perspective fractions: share of variable (check) nodes holding each
/// degree, derived from the edge-perspective coefficients. Degrees ascending.
std::vector<DegreeTerm> node_fractions(const std::vector<DegreeTerm>& edge_terms);

/// Rate-0.6 default: lambda(x) = x^2, rho(x) = (7/15)x^6 + (8/15)x^7.
DegreeDistribution default_distribution();

/// Regular ensemble lambda(x) = x^(dv-1), rho(x) = x^(dc-1).
DegreeDistribution regular_distribution(int variable_degree, int check_degree);

/// Parses the text format: one term per line, "lambda DEG COEFF" or
/// "rho DEG COEFF"; COEFF is a decimal or a fraction "P/Q"; '#' starts a
/// comment. Validates before returning.
DegreeDistribution parse_distribution(const std::string& text);

/// Resolves a builtin name ("default", "regular-DV-DC") or a path to a file
/// in the parse_distribution format.
DegreeDistribution distribution_by_name(const std::string& name_or_path);

/// Inverse of parse_distribution (canonical decimal coefficients).
std::string format_distribution(const DegreeDistribution& dist);

} // namespace recon
