#include "output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qlg::cli {

namespace {

std::string cell(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string render_rows(const nlohmann::ordered_json& arr) {
    std::vector<std::string> cols;
    for (const auto& row : arr)
        for (const auto& [k, v] : row.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    std::vector<std::vector<std::string>> cells;
    std::vector<size_t> width;
    for (const auto& c : cols) width.push_back(c.size());
    for (const auto& row : arr) {
        std::vector<std::string> r;
        for (size_t c = 0; c < cols.size(); ++c) {
            r.push_back(row.contains(cols[c]) ? cell(row[cols[c]]) : "");
            width[c] = std::max(width[c], r.back().size());
        }
        cells.push_back(std::move(r));
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t c = 0; c < r.size(); ++c) {
            os << r[c];
            if (c + 1 < r.size()) os << std::string(width[c] - r[c].size() + 2, ' ');
        }
        os << "\n";
    };
    line(cols);
    std::vector<std::string> rule;
    for (size_t w : width) rule.push_back(std::string(w, '-'));
    line(rule);
    for (const auto& r : cells) line(r);
    return os.str();
}

bool rows_of_objects(const nlohmann::ordered_json& j) {
    return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const auto& x) { return x.is_object(); });
}

}  // namespace

std::string render_table(const nlohmann::ordered_json& j) {
    if (rows_of_objects(j)) return render_rows(j);
    if (!j.is_object()) return cell(j) + "\n";
    size_t w = 0;
    for (const auto& [k, v] : j.items()) w = std::max(w, k.size());
    std::ostringstream os;
    std::ostringstream tables;
    for (const auto& [k, v] : j.items()) {
        if (rows_of_objects(v)) {
            tables << "\n" << k << ":\n" << render_rows(v);
            continue;
        }
        os << k << std::string(w - k.size() + 2, ' ') << cell(v) << "\n";
    }
    return os.str() + tables.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

}  // namespace qlg::cli
