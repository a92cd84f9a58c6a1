#include "kmls/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "kmls/errors.hpp"

namespace kmls {

namespace {

bool blank(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    const char sep = line.find(',') != std::string::npos ? ',' : ' ';
    std::string current;
    for (char c : line) {
        const bool is_sep = sep == ',' ? c == ',' : std::isspace(static_cast<unsigned char>(c));
        if (is_sep) {
            if (!current.empty() || sep == ',') tokens.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current += c;
        }
    }
    if (!current.empty() || (sep == ',' && !tokens.empty())) tokens.push_back(current);
    return tokens;
}

double parse_token(const std::string& token, std::size_t line_no) {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    // from_chars rejects an explicit plus sign; accept it here.
    if (begin != end && *begin == '+') ++begin;
    auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || p != end || token.empty())
        throw ParseError("expected a number, got '" + token + "'", line_no);
    if (!std::isfinite(v))
        throw ParseError("non-finite value '" + token + "'", line_no);
    return v;
}

} // namespace

PointSet load_points(std::istream& in) {
    std::vector<double> data;
    std::size_t n = 0, d = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const std::vector<std::string> tokens = tokenize(line);
        if (d == 0) {
            d = tokens.size();
        } else if (tokens.size() != d) {
            throw ParseError("row has " + std::to_string(tokens.size()) +
                                 " values, expected " + std::to_string(d),
                             line_no);
        }
        for (const std::string& t : tokens) data.push_back(parse_token(t, line_no));
        ++n;
    }
    if (n == 0) throw ParseError("no data rows", line_no == 0 ? 1 : line_no);
    return PointSet::from_rows(std::move(data), n, d);
}

PointSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 1);
    return load_points(in);
}

void write_points(const PointSet& points, std::ostream& out) {
    char buf[64];
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto r = points.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, r[j]);
            (void)ec;
            if (j) out.put(',');
            out.write(buf, p - buf);
        }
        out.put('\n');
    }
}

void write_points(const PointSet& points, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_points(points, out);
}

} // namespace kmls
