#pragma once

// Plain-text code files.
//
//   # comment lines and blank lines are ignored
//   # params: d=5 pure=1        (optional cached parameters)
//   p n k
//   <n-k stabilizer rows, 2n integers each: a-part then b-part>
//   ---
//   <2k extension rows>         (optional; computed when absent)

#include "qpunct/errors.hpp"
#include "qpunct/gfp.hpp"
#include "qpunct/stabcode.hpp"

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qpunct {

struct CodeFile {
    StabilizerCode code;
    std::optional<std::size_t> cached_d;
    std::optional<bool> cached_pure;
};

namespace detail {

struct Token {
    std::uint64_t value;
    std::size_t column;  ///< 1-based
};

inline std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
        if (ec != std::errc{} || ptr != line.data() + j) {
            throw ParseError(line_no, i + 1, "expected a non-negative integer, got '" + std::string(line.substr(i, j - i)) + "'");
        }
        out.push_back({v, i + 1});
        i = j;
    }
    return out;
}

inline void parse_params_comment(std::string_view line, std::optional<std::size_t>& d, std::optional<bool>& pure) {
    constexpr std::string_view tag = "# params:";
    if (line.substr(0, tag.size()) != tag) return;
    std::istringstream in{std::string(line.substr(tag.size()))};
    std::string item;
    while (in >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || ptr != val.data() + val.size()) continue;
        if (key == "d") d = v;
        if (key == "pure") pure = v != 0;
    }
}

}  // namespace detail

/// Parses a code file, including any cached parameter comment.
inline CodeFile parse_code_file(std::string_view text) {
    std::optional<PrimeField> field;
    std::size_t n = 0, k = 0;
    std::vector<std::vector<unsigned>> stab, ext;
    bool in_ext = false;
    std::size_t line_no = 0, last_line = 0;
    std::optional<std::size_t> cached_d;
    std::optional<bool> cached_pure;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        if (line[first] == '#') {
            detail::parse_params_comment(line.substr(first), cached_d, cached_pure);
            continue;
        }
        last_line = line_no;
        if (line.substr(first, 3) == "---") {
            if (!field) throw ParseError(line_no, first + 1, "separator before the header line");
            if (in_ext) throw ParseError(line_no, first + 1, "second separator");
            if (stab.size() != n - k) {
                throw ParseError(line_no, first + 1,
                                 "expected " + std::to_string(n - k) + " stabilizer rows, got " + std::to_string(stab.size()));
            }
            in_ext = true;
            continue;
        }
        const auto tokens = detail::tokenize(line, line_no);
        if (!field) {
            if (tokens.size() != 3) throw ParseError(line_no, first + 1, "header must be 'p n k'");
            try {
                field = PrimeField(static_cast<std::uint32_t>(std::min<std::uint64_t>(tokens[0].value, 0xffffffffULL)));
            } catch (const InvalidField& e) {
                throw ParseError(line_no, tokens[0].column, e.what());
            }
            n = tokens[1].value;
            k = tokens[2].value;
            if (n == 0) throw ParseError(line_no, tokens[1].column, "n must be positive");
            if (k > n) throw ParseError(line_no, tokens[2].column, "k exceeds n");
            continue;
        }
        if (tokens.size() != 2 * n) {
            throw ParseError(line_no, first + 1,
                             "row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(2 * n));
        }
        std::vector<unsigned> row;
        row.reserve(tokens.size());
        for (const auto& t : tokens) {
            if (t.value >= field->p()) {
                throw ParseError(line_no, t.column, "entry " + std::to_string(t.value) + " is outside [0, " +
                                                        std::to_string(field->p()) + ")");
            }
            row.push_back(static_cast<unsigned>(t.value));
        }
        auto& block = in_ext ? ext : stab;
        const std::size_t limit = in_ext ? 2 * k : n - k;
        if (block.size() == limit) {
            throw ParseError(line_no, first + 1,
                             std::string("too many ") + (in_ext ? "extension" : "stabilizer") + " rows, expected " +
                                 std::to_string(limit));
        }
        block.push_back(std::move(row));
    }

    if (!field) throw ParseError(line_no, 1, "missing header line 'p n k'");
    if (stab.size() != n - k) {
        throw ParseError(last_line + 1, 1,
                         "expected " + std::to_string(n - k) + " stabilizer rows, got " + std::to_string(stab.size()));
    }
    if (in_ext && ext.size() != 2 * k) {
        throw ParseError(last_line + 1, 1,
                         "expected " + std::to_string(2 * k) + " extension rows, got " + std::to_string(ext.size()));
    }
    const FpMatrix stab_m = FpMatrix::from_rows(*field, 2 * n, stab);
    if (in_ext) {
        return {StabilizerCode::from_full_matrix(*field, n, k, stab_m, FpMatrix::from_rows(*field, 2 * n, ext)),
                cached_d, cached_pure};
    }
    return {StabilizerCode::from_stabilizer(*field, n, stab_m), cached_d, cached_pure};
}

inline StabilizerCode parse_code(std::string_view text) { return parse_code_file(text).code; }

inline CodeFile read_code_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_code_file(buf.str());
}

namespace detail {

inline void write_rows(std::ostringstream& out, const FpMatrix& m, std::size_t n) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < 2 * n; ++c) {
            if (c > 0) out << (c == n ? "  " : " ");
            out << m(r, c);
        }
        out << '\n';
    }
}

}  // namespace detail

/// Serializes a code with its extension rows; optional cached parameters go in a comment line.
inline std::string write_code(const StabilizerCode& c, std::optional<std::size_t> d = std::nullopt,
                              std::optional<bool> pure = std::nullopt) {
    std::ostringstream out;
    if (d || pure) {
        out << "# params:";
        if (d) out << " d=" << *d;
        if (pure) out << " pure=" << (*pure ? 1 : 0);
        out << '\n';
    }
    out << c.field().p() << ' ' << c.n() << ' ' << c.k() << '\n';
    detail::write_rows(out, c.stab(), c.n());
    if (c.k() > 0) {
        out << "---\n";
        detail::write_rows(out, c.ext(), c.n());
    }
    return out.str();
}

}  // namespace qpunct
