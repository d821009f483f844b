// io.hpp: reproducible CSV/SVG emission and content checksums.

#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace bathent::io {

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// General format with 17 significant digits, '.' decimal
// separator, independent of the global locale.
std::string format_number(double value, int significant_digits = 17);

struct Column {
    std::string name;
    Eigen::VectorXd values;
};

// One row per sample, '\n' line endings. All columns must have equal length.
void write_csv(const std::filesystem::path& path, const std::vector<Column>& columns);

// 800x600 polyline plot of every column against `x`.
void write_svg(const std::filesystem::path& path, const std::string& title, const Eigen::VectorXd& x,
               const std::vector<Column>& series);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
void ensure_directory(const std::filesystem::path& dir);

}  // namespace bathent::io
