#include "fmm/grid_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace fmm {

DumpFormat parse_dump_format(std::string_view name) {
    if (name == "csv") {
        return DumpFormat::Csv;
    }
    if (name == "raw") {
        return DumpFormat::Raw;
    }
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view cell, std::size_t row, std::size_t col) {
    cell = trim(cell);
    // std::from_chars for double is available in libstdc++ 11.
    double v = 0.0;
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
    if (ec != std::errc() || ptr != end || cell.empty()) {
        throw std::invalid_argument("speed csv: cannot parse '" + std::string(cell) + "' at row " +
                                    std::to_string(row) + ", column " + std::to_string(col));
    }
    return v;
}

}  // namespace

SpeedField read_speed_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const auto cell = body.substr(start, comma == std::string_view::npos ? body.npos
                                                                                : comma - start);
            row.push_back(parse_real(cell, rows.size(), row.size()));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 3) {
        throw std::invalid_argument("speed csv: need at least 3 rows (n >= 2), got " +
                                    std::to_string(rows.size()));
    }
    const GridSpec spec(static_cast<int>(rows.size()) - 1);
    std::vector<double> f;
    f.reserve(spec.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
            throw std::invalid_argument("speed csv: row " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " columns, expected " +
                                        std::to_string(rows.size()));
        }
        f.insert(f.end(), rows[r].begin(), rows[r].end());
    }
    return SpeedField(spec, std::move(f));
}

SpeedField load_speed_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open speed file " + path.string());
    }
    return read_speed_csv(in);
}

std::string format_real(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_grid_csv(std::ostream& out, const GridSpec& spec, std::span<const double> values) {
    for (int i = 0; i <= spec.n(); ++i) {
        for (int j = 0; j <= spec.n(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_real(values[spec.flat(i, j)]);
        }
        out << '\n';
    }
}

void write_grid_raw(std::ostream& out, std::span<const double> values) {
    for (double v : values) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        unsigned char bytes[8];
        for (int b = 0; b < 8; ++b) {
            bytes[b] = static_cast<unsigned char>(bits & 0xffu);
            bits >>= 8;
        }
        out.write(reinterpret_cast<const char*>(bytes), sizeof bytes);
    }
}

void write_file_atomically(const std::filesystem::path& path, const std::string& bytes) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

void save_grid(const std::filesystem::path& path, const GridFunction& t, DumpFormat format) {
    std::ostringstream os(std::ios::binary);
    if (format == DumpFormat::Csv) {
        write_grid_csv(os, t.spec(), t.values());
    } else {
        write_grid_raw(os, t.values());
    }
    write_file_atomically(path, os.str());
}

}  // namespace fmm
