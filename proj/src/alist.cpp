#include "drn/alist.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace drn {

namespace {

std::vector<long> parse_ints(std::string_view line) {
    std::vector<long> out;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p >= end) break;
        long v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{}) throw ParseError("alist: non-integer token");
        out.push_back(v);
        p = next;
    }
    return out;
}

std::vector<std::string_view> nonempty_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        bool blank = true;
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r') blank = false;
        if (!blank) lines.push_back(line);
        if (nl == text.size()) break;
        pos = nl + 1;
    }
    return lines;
}

}  // namespace

Gf2Matrix parse_alist(std::string_view text) {
    auto lines = nonempty_lines(text);
    if (lines.size() < 4) throw ParseError("alist: fewer than 4 header lines");

    auto header = parse_ints(lines[0]);
    if (header.size() != 2) throw ParseError("alist: line 1 must be 'n m'");
    const long n = header[0];
    const long m = header[1];
    if (n < 1 || m < 1) throw ParseError("alist: n and m must be positive");

    auto maxdeg = parse_ints(lines[1]);
    if (maxdeg.size() != 2) throw ParseError("alist: line 2 must hold max column/row degrees");

    auto col_deg = parse_ints(lines[2]);
    auto row_deg = parse_ints(lines[3]);
    if (static_cast<long>(col_deg.size()) != n) throw ParseError("alist: column degree list length != n");
    if (static_cast<long>(row_deg.size()) != m) throw ParseError("alist: row degree list length != m");

    if (lines.size() != static_cast<std::size_t>(4 + n + m))
        throw ParseError("alist: expected one neighbor list per column and per row");

    Gf2Matrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(n));

    for (long j = 0; j < n; ++j) {
        auto entries = parse_ints(lines[4 + j]);
        long count = 0;
        for (long e : entries) {
            if (e == 0) continue;  // zero padding
            if (e < 1 || e > m) throw IndexOutOfRange("alist: column list entry out of [1, m]");
            if (h.get(static_cast<std::size_t>(e - 1), static_cast<std::size_t>(j)))
                throw ParseError("alist: duplicate entry in column list");
            h.set(static_cast<std::size_t>(e - 1), static_cast<std::size_t>(j), 1);
            ++count;
        }
        if (count != col_deg[j]) throw ParseError("alist: column degree disagrees with its list");
    }

    // Row lists must reproduce the same matrix.
    for (long i = 0; i < m; ++i) {
        auto entries = parse_ints(lines[4 + n + i]);
        std::vector<long> cols;
        for (long e : entries) {
            if (e == 0) continue;
            if (e < 1 || e > n) throw IndexOutOfRange("alist: row list entry out of [1, n]");
            cols.push_back(e - 1);
        }
        if (static_cast<long>(cols.size()) != row_deg[i])
            throw ParseError("alist: row degree disagrees with its list");
        std::sort(cols.begin(), cols.end());
        if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
            throw ParseError("alist: duplicate entry in row list");
        std::size_t found = 0;
        for (long j = 0; j < n; ++j) found += static_cast<std::size_t>(h.get(i, j));
        if (found != cols.size())
            throw InconsistentAdjacency("alist: row list disagrees with column lists");
        for (long c : cols) {
            if (!h.get(static_cast<std::size_t>(i), static_cast<std::size_t>(c)))
                throw InconsistentAdjacency("alist: row list disagrees with column lists");
        }
    }

    return h;
}

Gf2Matrix read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open alist file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_alist(ss.str());
}

std::string to_alist(const Gf2Matrix& h) {
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    std::vector<std::vector<std::size_t>> col_lists(n), row_lists(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (h.get(i, j)) {
                col_lists[j].push_back(i + 1);
                row_lists[i].push_back(j + 1);
            }
        }
    }
    std::size_t maxc = 0, maxr = 0;
    for (const auto& l : col_lists) maxc = std::max(maxc, l.size());
    for (const auto& l : row_lists) maxr = std::max(maxr, l.size());

    std::ostringstream out;
    out << n << ' ' << m << '\n' << maxc << ' ' << maxr << '\n';
    for (std::size_t j = 0; j < n; ++j) out << col_lists[j].size() << (j + 1 < n ? ' ' : '\n');
    for (std::size_t i = 0; i < m; ++i) out << row_lists[i].size() << (i + 1 < m ? ' ' : '\n');
    auto emit = [&out](const std::vector<std::size_t>& l) {
        if (l.empty()) {
            out << "0\n";  // keep one token per line so the layout stays parseable
            return;
        }
        for (std::size_t t = 0; t < l.size(); ++t) out << l[t] << (t + 1 < l.size() ? ' ' : '\n');
    };
    for (const auto& l : col_lists) emit(l);
    for (const auto& l : row_lists) emit(l);
    return out.str();
}

}  // namespace drn
