#include "recon/alist.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace recon {

namespace {

constexpr std::size_t kMaxDimension = 100000000;

long long read_int(std::istream& in, const char* what) {
    long long value = 0;
    if (!(in >> value)) {
        throw std::invalid_argument(std::string("alist: missing or non-numeric ") + what);
    }
    return value;
}

// One whitespace-separated index record; trailing zero-padding is stripped.
std::vector<std::uint32_t> read_index_line(std::istream& in, std::size_t expected,
                                           std::size_t bound, const char* what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(std::string("alist: truncated ") + what + " section");
    }
    std::istringstream fields(line);
    std::vector<long long> raw;
    long long v = 0;
    while (fields >> v) {
        raw.push_back(v);
    }
    while (!raw.empty() && raw.back() == 0) {
        raw.pop_back();
    }
    if (raw.size() != expected) {
        throw std::invalid_argument(std::string("alist: ") + what +
                                    " entry count disagrees with its declared degree");
    }
    std::vector<std::uint32_t> indices;
    indices.reserve(raw.size());
    for (const auto idx : raw) {
        if (idx < 1 || static_cast<std::size_t>(idx) > bound) {
            throw std::invalid_argument(std::string("alist: ") + what + " index out of range");
        }
        indices.push_back(static_cast<std::uint32_t>(idx - 1));
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw std::invalid_argument(std::string("alist: duplicate ") + what + " index");
    }
    return indices;
}

} // namespace

std::string save_alist(const ParityCheckMatrix& h) {
    validate(h);
    const auto cols = column_adjacency(h);
    std::size_t max_col = 0;
    for (const auto& c : cols) {
        max_col = std::max(max_col, c.size());
    }
    std::size_t max_row = 0;
    for (const auto& r : h.rows) {
        max_row = std::max(max_row, r.size());
    }
    std::ostringstream out;
    out << h.n << ' ' << h.m() << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < h.n; ++c) {
        out << cols[c].size() << (c + 1 < h.n ? ' ' : '\n');
    }
    for (std::size_t r = 0; r < h.m(); ++r) {
        out << h.rows[r].size() << (r + 1 < h.m() ? ' ' : '\n');
    }
    auto write_padded = [&out](const std::vector<std::uint32_t>& indices, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            if (i) {
                out << ' ';
            }
            out << (i < indices.size() ? indices[i] + 1 : 0);
        }
        out << '\n';
    };
    for (const auto& c : cols) {
        write_padded(c, max_col);
    }
    for (const auto& r : h.rows) {
        write_padded(r, max_row);
    }
    return out.str();
}

ParityCheckMatrix load_alist(const std::string& text) {
    std::istringstream in(text);
    const long long n = read_int(in, "column count");
    const long long m = read_int(in, "row count");
    if (n < 1 || m < 1 || static_cast<std::size_t>(n) > kMaxDimension ||
        static_cast<std::size_t>(m) > kMaxDimension) {
        throw std::invalid_argument("alist: dimensions out of range");
    }
    const long long max_col = read_int(in, "max column degree");
    const long long max_row = read_int(in, "max row degree");
    if (max_col < 0 || max_col > m || max_row < 0 || max_row > n) {
        throw std::invalid_argument("alist: max degree out of range");
    }
    std::vector<std::size_t> col_deg(static_cast<std::size_t>(n));
    std::vector<std::size_t> row_deg(static_cast<std::size_t>(m));
    long long col_edges = 0;
    for (auto& d : col_deg) {
        const long long v = read_int(in, "column degree");
        if (v < 0 || v > max_col) {
            throw std::invalid_argument("alist: column degree exceeds declared maximum");
        }
        d = static_cast<std::size_t>(v);
        col_edges += v;
    }
    long long row_edges = 0;
    for (auto& d : row_deg) {
        const long long v = read_int(in, "row degree");
        if (v < 0 || v > max_row) {
            throw std::invalid_argument("alist: row degree exceeds declared maximum");
        }
        d = static_cast<std::size_t>(v);
        row_edges += v;
    }
    if (col_edges != row_edges) {
        throw std::invalid_argument("alist: column and row degree sums disagree");
    }
    // Drop the remainder of the last degree line before switching to
    // line-structured index records.
    std::string rest;
    std::getline(in, rest);

    ParityCheckMatrix h;
    h.n = static_cast<std::size_t>(n);
    h.rows.assign(static_cast<std::size_t>(m), {});
    std::vector<std::vector<std::uint32_t>> from_cols(h.rows.size());
    for (std::size_t c = 0; c < h.n; ++c) {
        const auto rows_of_col =
            read_index_line(in, col_deg[c], static_cast<std::size_t>(m), "column");
        for (const auto r : rows_of_col) {
            from_cols[r].push_back(static_cast<std::uint32_t>(c));
        }
    }
    for (std::size_t r = 0; r < h.rows.size(); ++r) {
        h.rows[r] = read_index_line(in, row_deg[r], h.n, "row");
        if (h.rows[r] != from_cols[r]) {
            throw std::invalid_argument("alist: row lists disagree with column lists");
        }
    }
    validate(h);
    return h;
}

void save_alist_file(const ParityCheckMatrix& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << save_alist(h);
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

ParityCheckMatrix load_alist_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return load_alist(text.str());
}

} // namespace recon
