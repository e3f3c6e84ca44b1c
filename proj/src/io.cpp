#include "rsp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rsp/errors.hpp"

namespace rsp::io {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw Error(ErrorKind::ParseError, "cannot format double");
    }
    return std::string(buf, end);
}

double parse_double(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw Error(ErrorKind::ParseError, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view text) {
    const char *ws = " \t\r\n";
    std::size_t first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    std::size_t last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::string write_matrix(const linalg::ComplexMatrix &m) {
    std::string out(kMatrixHeader);
    out += '\n';
    out += std::to_string(m.rows());
    out += '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += format_double(m(i, j).real());
            out += ',';
            out += format_double(m(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

linalg::ComplexMatrix read_matrix(std::string_view text) {
    auto lines = split(text, '\n');
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty() || trim(lines[0]) != kMatrixHeader) {
        throw Error(ErrorKind::ParseError, "line 1: expected '" + std::string(kMatrixHeader) + "'");
    }
    if (lines.size() < 2) {
        throw Error(ErrorKind::ParseError, "line 2: missing dimension");
    }
    std::string_view dim_text = trim(lines[1]);
    long dim = 0;
    auto [end, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
    if (ec != std::errc() || end != dim_text.data() + dim_text.size() || dim <= 0) {
        throw Error(ErrorKind::ParseError, "line 2: dimension must be a positive integer");
    }
    if (lines.size() != static_cast<std::size_t>(dim) + 2) {
        throw Error(ErrorKind::ParseError, "expected " + std::to_string(dim) + " matrix rows, found " +
                                               std::to_string(lines.size() - 2));
    }
    linalg::ComplexMatrix m(dim, dim);
    for (long i = 0; i < dim; ++i) {
        const std::size_t line_no = static_cast<std::size_t>(i) + 3;
        std::istringstream row{std::string(lines[static_cast<std::size_t>(i) + 2])};
        std::string cell;
        long j = 0;
        while (row >> cell) {
            if (j >= dim) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": too many entries");
            }
            auto parts = split(cell, ',');
            if (parts.size() != 2) {
                throw Error(ErrorKind::ParseError,
                            "line " + std::to_string(line_no) + ": entry '" + cell + "' is not re,im");
            }
            try {
                m(i, j) = {parse_double(parts[0]), parse_double(parts[1])};
            } catch (const Error &e) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
            }
            ++j;
        }
        if (j != dim) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                   std::to_string(dim) + " entries");
        }
    }
    return m;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    }
    out << contents;
    if (!out.flush()) {
        throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
    }
}

}  // namespace rsp::io
