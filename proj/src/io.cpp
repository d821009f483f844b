#include "bathent/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace bathent::io {

std::string format_number(double value, int significant_digits) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                      std::chars_format::general, significant_digits);
    if (result.ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buffer.data(), result.ptr);
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw OutputError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw OutputError("write to " + path.string() + " failed");
    }
}

void write_csv(const std::filesystem::path& path, const std::vector<Column>& columns) {
    if (columns.empty()) {
        throw std::invalid_argument("write_csv: no columns");
    }
    const Eigen::Index rows = columns.front().values.size();
    for (const auto& c : columns) {
        if (c.values.size() != rows) {
            throw std::invalid_argument("write_csv: column '" + c.name + "' has a different length");
        }
    }
    std::string text;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (j) text += ',';
        text += columns[j].name;
    }
    text += '\n';
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) text += ',';
            text += format_number(columns[j].values(i));
        }
        text += '\n';
    }
    write_text(path, text);
}

void write_svg(const std::filesystem::path& path, const std::string& title, const Eigen::VectorXd& x,
               const std::vector<Column>& series) {
    constexpr double width = 800.0, height = 600.0, margin = 60.0;
    static const std::array<const char*, 10> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    double x_min = x.size() ? x.minCoeff() : 0.0, x_max = x.size() ? x.maxCoeff() : 1.0;
    double y_min = 0.0, y_max = 1.0;
    bool first = true;
    for (const auto& s : series) {
        if (s.values.size() == 0) continue;
        y_min = first ? s.values.minCoeff() : std::min(y_min, s.values.minCoeff());
        y_max = first ? s.values.maxCoeff() : std::max(y_max, s.values.maxCoeff());
        first = false;
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= y_min) y_max = y_min + 1.0;
    const auto px = [&](double v) { return margin + (v - x_min) / (x_max - x_min) * (width - 2 * margin); };
    const auto py = [&](double v) { return height - margin - (v - y_min) / (y_max - y_min) * (height - 2 * margin); };
    const auto f = [](double v) { return format_number(v, 6); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    svg << "<text x=\"" << f(margin) << "\" y=\"30\">" << title << "</text>\n";
    svg << "<line x1=\"" << f(margin) << "\" y1=\"" << f(height - margin) << "\" x2=\"" << f(width - margin)
        << "\" y2=\"" << f(height - margin) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << f(margin) << "\" y1=\"" << f(margin) << "\" x2=\"" << f(margin) << "\" y2=\""
        << f(height - margin) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << f(margin) << "\" y=\"" << f(height - margin + 20) << "\">" << f(x_min) << "</text>\n";
    svg << "<text x=\"" << f(width - margin) << "\" y=\"" << f(height - margin + 20) << "\">" << f(x_max)
        << "</text>\n";
    svg << "<text x=\"5\" y=\"" << f(height - margin) << "\">" << f(y_min) << "</text>\n";
    svg << "<text x=\"5\" y=\"" << f(margin) << "\">" << f(y_max) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* colour = palette[k % palette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
        for (Eigen::Index i = 0; i < series[k].values.size() && i < x.size(); ++i) {
            if (i) svg << ' ';
            svg << f(px(x(i))) << ',' << f(py(series[k].values(i)));
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << f(width - margin + 5) << "\" y=\"" << f(margin + 15.0 * static_cast<double>(k))
            << "\" fill=\"" << colour << "\">" << series[k].name << "</text>\n";
    }
    svg << "</svg>\n";
    write_text(path, svg.str());
}

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
        throw std::runtime_error("sha256: digest computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw OutputError("cannot read " + path.string());
    }
    return sha256_hex(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
}

}  // namespace bathent::io
