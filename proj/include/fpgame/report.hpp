#pragma once

// result serialization: CSV tables and JSON documents. Numbers go through
// to_chars so the output is locale independent and byte stable across runs;
// 17 significant digits, enough for exact double round-trips.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <type_traits>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fpgame {

inline std::string format_double(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {
inline std::string csv_cell(double v) { return format_double(v); }
inline std::string csv_cell(bool v) { return v ? "true" : "false"; }
inline std::string csv_cell(const char* v) { return v; }
inline std::string csv_cell(std::string v) { return v; }
template <class T, std::enable_if_t<std::is_integral_v<T> && !std::is_same_v<T, bool>, int> = 0>
std::string csv_cell(T v) {
    return std::to_string(v);
}
}  // namespace detail

// small fixed-schema table; every row must match the header width
class Csv {
  public:
    explicit Csv(std::vector<std::string> cols) : cols_(std::move(cols)) {}

    template <class... Ts>
    void add(const Ts&... cells) {
        static_assert(sizeof...(Ts) > 0);
        std::vector<std::string> row{detail::csv_cell(cells)...};
        if (row.size() != cols_.size())
            throw std::invalid_argument("Csv::add: row width " + std::to_string(row.size()) +
                                        " vs " + std::to_string(cols_.size()) + " columns");
        rows_.push_back(std::move(row));
    }

    std::string str() const {
        std::string out = join(cols_);
        for (const auto& r : rows_) out += join(r);
        return out;
    }

    void write(const std::filesystem::path& file) const {
        std::ofstream f(file, std::ios::binary);  // binary: no CRLF surprises
        if (!f) throw std::runtime_error("cannot write " + file.string());
        f << str();
    }

    std::size_t size() const { return rows_.size(); }

  private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        line += '\n';
        return line;
    }
    std::vector<std::string> cols_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_json(const std::filesystem::path& file, const nlohmann::json& doc) {
    std::ofstream f(file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + file.string());
    f << doc.dump(2) << '\n';
}

// out/<command>/<label>/, created on demand
inline std::filesystem::path report_dir(const std::filesystem::path& root,
                                        const std::string& command, const std::string& label) {
    const auto dir = root / command / label;
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace fpgame
