#include "recon/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace recon {

namespace {

constexpr double kSumTolerance = 1e-9;

double edge_moment(const std::vector<DegreeTerm>& terms) {
    double sum = 0.0;
    for (const auto& t : terms) {
        sum += t.coefficient / t.degree;
    }
    return sum;
}

void validate_side(const std::vector<DegreeTerm>& terms, int min_degree, const char* side) {
    if (terms.empty()) {
        throw std::invalid_argument(std::string(side) + " distribution is empty");
    }
    std::set<int> seen;
    double sum = 0.0;
    for (const auto& t : terms) {
        if (t.degree < min_degree) {
            throw std::invalid_argument(std::string(side) + " degree below minimum");
        }
        if (!seen.insert(t.degree).second) {
            throw std::invalid_argument(std::string(side) + " has a duplicate degree");
        }
        if (!(t.coefficient >= 0.0)) {
            throw std::invalid_argument(std::string(side) + " coefficient is negative");
        }
        sum += t.coefficient;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument(std::string(side) + " coefficients do not sum to 1");
    }
}

} // namespace

void validate(const DegreeDistribution& dist) {
    validate_side(dist.lambda, 1, "lambda");
    validate_side(dist.rho, 2, "rho");
    const double rate = 1.0 - edge_moment(dist.rho) / edge_moment(dist.lambda);
    if (!(rate > 0.0 && rate < 1.0)) {
        throw std::invalid_argument("design rate outside (0, 1)");
    }
}

double design_rate(const DegreeDistribution& dist) {
    validate(dist);
    return 1.0 - edge_moment(dist.rho) / edge_moment(dist.lambda);
}

std::vector<DegreeTerm> node_fractions(const std::vector<DegreeTerm>& edge_terms) {
    const double moment = edge_moment(edge_terms);
    std::vector<DegreeTerm> nodes;
    nodes.reserve(edge_terms.size());
    for (const auto& t : edge_terms) {
        nodes.push_back({t.degree, (t.coefficient / t.degree) / moment});
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const DegreeTerm& a, const DegreeTerm& b) { return a.degree < b.degree; });
    return nodes;
}

DegreeDistribution default_distribution() {
    return {{{3, 1.0}}, {{7, 7.0 / 15.0}, {8, 8.0 / 15.0}}};
}

DegreeDistribution regular_distribution(int variable_degree, int check_degree) {
    return {{{variable_degree, 1.0}}, {{check_degree, 1.0}}};
}

namespace {

double parse_coefficient(const std::string& token) {
    const auto slash = token.find('/');
    try {
        if (slash == std::string::npos) {
            return std::stod(token);
        }
        const double num = std::stod(token.substr(0, slash));
        const double den = std::stod(token.substr(slash + 1));
        if (den == 0.0) {
            throw std::invalid_argument("zero denominator");
        }
        return num / den;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad coefficient: " + token);
    }
}

} // namespace

DegreeDistribution parse_distribution(const std::string& text) {
    DegreeDistribution dist;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string side;
        if (!(fields >> side)) {
            continue;
        }
        int degree = 0;
        std::string coeff;
        if (!(fields >> degree >> coeff)) {
            throw std::invalid_argument("distribution line " + std::to_string(line_no) +
                                        ": expected SIDE DEGREE COEFF");
        }
        const DegreeTerm term{degree, parse_coefficient(coeff)};
        if (side == "lambda") {
            dist.lambda.push_back(term);
        } else if (side == "rho") {
            dist.rho.push_back(term);
        } else {
            throw std::invalid_argument("distribution line " + std::to_string(line_no) +
                                        ": side must be lambda or rho");
        }
    }
    validate(dist);
    return dist;
}

DegreeDistribution distribution_by_name(const std::string& name_or_path) {
    if (name_or_path == "default") {
        return default_distribution();
    }
    if (name_or_path.rfind("regular-", 0) == 0) {
        int dv = 0;
        int dc = 0;
        if (std::sscanf(name_or_path.c_str(), "regular-%d-%d", &dv, &dc) == 2) {
            DegreeDistribution dist = regular_distribution(dv, dc);
            validate(dist);
            return dist;
        }
        throw std::invalid_argument("bad regular distribution name: " + name_or_path);
    }
    std::ifstream file(name_or_path);
    if (!file) {
        throw std::invalid_argument("cannot open distribution file: " + name_or_path);
    }
    std::ostringstream text;
    text << file.rdbuf();
    return parse_distribution(text.str());
}

std::string format_distribution(const DegreeDistribution& dist) {
    std::ostringstream out;
    char buf[64];
    for (const auto& t : dist.lambda) {
        std::snprintf(buf, sizeof buf, "lambda %d %.17g\n", t.degree, t.coefficient);
        out << buf;
    }
    for (const auto& t : dist.rho) {
        std::snprintf(buf, sizeof buf, "rho %d %.17g\n", t.degree, t.coefficient);
        out << buf;
    }
    return out.str();
}

} // namespace recon
