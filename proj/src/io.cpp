#include "subgeo/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "subgeo/errors.hpp"

namespace subgeo {

namespace {

constexpr std::array<char, 4> kMagic{'G', 'P', 'T', 'S'};
constexpr unsigned char kVersion = 1;
constexpr std::uint64_t kMaxCount = std::uint64_t{1} << 40;

[[noreturn]] void fail_line(std::size_t line, const std::string& msg) {
    throw FormatError("line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_offset(std::uint64_t off, const std::string& msg) {
    throw FormatError("byte offset " + std::to_string(off) + ": " + msg);
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_int(std::string_view tok, T& out) {
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return r.ec == std::errc() && r.ptr == tok.data() + tok.size();
}

void put_le(std::ostream& os, std::uint64_t v, int bytes) {
    char buf[8];
    for (int b = 0; b < bytes; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
    os.write(buf, bytes);
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    return v;
}

// Reads exactly `len` bytes or reports where the stream ran out.
void read_exact(std::istream& is, unsigned char* dst, std::size_t len, std::uint64_t& offset,
                const char* what) {
    is.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(len));
    const auto got = static_cast<std::uint64_t>(is.gcount());
    if (got != len) fail_offset(offset + got, std::string("truncated ") + what);
    offset += len;
}

}  // namespace

void write_points_text(std::ostream& os, const PointSet& P) {
    os << "GPTS 1 " << P.size() << ' ' << P.dim() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < P.size(); ++i) {
        const PointView p = P[i];
        for (std::size_t k = 0; k < p.size(); ++k) {
            const auto r = std::to_chars(buf, buf + sizeof buf, p[k], std::chars_format::general, 17);
            if (k) os.put(' ');
            os.write(buf, r.ptr - buf);
        }
        os.put('\n');
    }
    if (!os) throw InputError("write failed");
}

void write_points_binary(std::ostream& os, const PointSet& P) {
    os.write(kMagic.data(), 4);
    os.put(static_cast<char>(kVersion));
    put_le(os, P.size(), 8);
    put_le(os, P.dim(), 4);
    for (double x : P.data()) put_le(os, std::bit_cast<std::uint64_t>(x), 8);
    if (!os) throw InputError("write failed");
}

PointSet read_points_text(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail_line(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto head = split(line);
    if (head.size() != 4 || head[0] != "GPTS") fail_line(1, "expected 'GPTS 1 <n> <d>'");
    if (head[1] != "1") fail_line(1, "unsupported version " + std::string(head[1]));
    std::uint64_t n = 0, d = 0;
    if (!parse_int(head[2], n) || !parse_int(head[3], d) || n == 0 || d == 0)
        fail_line(1, "n and d must be positive integers");
    if (n > kMaxCount || d > kMaxCount || n * d > kMaxCount) fail_line(1, "point set too large");

    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(n * d));
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::size_t lineno = static_cast<std::size_t>(i) + 2;
        if (!std::getline(is, line)) fail_line(lineno, "unexpected end of file");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto toks = split(line);
        if (toks.size() != d)
            fail_line(lineno, "expected " + std::to_string(d) + " values, found " +
                                  std::to_string(toks.size()));
        for (auto tok : toks) {
            double x = 0.0;
            const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
                fail_line(lineno, "malformed number '" + std::string(tok) + "'");
            if (!std::isfinite(x)) fail_line(lineno, "non-finite value");
            data.push_back(x);
        }
    }
    while (std::getline(is, line)) {
        if (!split(line).empty()) fail_line(static_cast<std::size_t>(n) + 2, "trailing data");
    }
    return PointSet(static_cast<std::size_t>(n), static_cast<std::size_t>(d), std::move(data));
}

PointSet read_points_binary(std::istream& is) {
    std::uint64_t off = 0;
    unsigned char head[17];
    read_exact(is, head, 4, off, "magic");
    if (std::memcmp(head, kMagic.data(), 4) != 0) fail_offset(0, "bad magic");
    read_exact(is, head + 4, 1, off, "version");
    if (head[4] != kVersion) fail_offset(4, "unsupported version " + std::to_string(head[4]));
    read_exact(is, head + 5, 12, off, "header");
    const std::uint64_t n = get_le(head + 5, 8);
    const std::uint64_t d = get_le(head + 13, 4);
    if (n == 0 || d == 0) fail_offset(5, "n and d must be positive");
    if (n > kMaxCount || d > kMaxCount || n * d > kMaxCount) fail_offset(5, "point set too large");

    std::vector<double> data(static_cast<std::size_t>(n * d));
    std::vector<unsigned char> buf(static_cast<std::size_t>(d) * 8);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t row_off = off;
        read_exact(is, buf.data(), buf.size(), off, "point data");
        for (std::uint64_t k = 0; k < d; ++k) {
            const double x = std::bit_cast<double>(get_le(buf.data() + 8 * k, 8));
            if (!std::isfinite(x)) fail_offset(row_off + 8 * k, "non-finite value");
            data[static_cast<std::size_t>(i * d + k)] = x;
        }
    }
    if (is.peek() != std::char_traits<char>::eof()) fail_offset(off, "trailing data");
    return PointSet(static_cast<std::size_t>(n), static_cast<std::size_t>(d), std::move(data));
}

PointSet read_points(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    char probe[5] = {};
    f.read(probe, 5);
    const auto got = f.gcount();
    f.clear();
    f.seekg(0);
    if (got == 5 && std::memcmp(probe, kMagic.data(), 4) == 0 &&
        static_cast<unsigned char>(probe[4]) == kVersion)
        return read_points_binary(f);
    return read_points_text(f);
}

void write_points(const std::string& path, const PointSet& P, PointFormat format) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open " + path + " for writing");
    if (format == PointFormat::binary)
        write_points_binary(f, P);
    else
        write_points_text(f, P);
}

}  // namespace subgeo
