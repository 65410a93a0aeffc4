#include "toric/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "toric/errors.hpp"

namespace toric {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// shortest representation that parses back to the same double
std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// the coefficient file contract asks for 17 significant digits explicitly
std::string full_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write(const fs::path& file, const std::string& content) {
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            fail(ErrorCode::IoError, "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        fail(ErrorCode::IoError, "cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

std::string read_file(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(ErrorCode::IoError, "failed reading " + file.string());
    return ss.str();
}

// strict cell parsers; any leftover characters make the row malformed
long long parse_int(const std::string& cell, const fs::path& file) {
    long long value = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        fail(ErrorCode::IoError, "bad integer '" + cell + "' in " + file.string());
    return value;
}

double parse_double(const std::string& cell, const fs::path& file) {
    if (cell.empty()) fail(ErrorCode::IoError, "empty number cell in " + file.string());
    char* end = nullptr;
    double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        fail(ErrorCode::IoError, "bad number '" + cell + "' in " + file.string());
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    return cells;
}

// lines of a text file with trailing carriage returns stripped and a final
// empty line ignored
std::vector<std::string> read_lines(const fs::path& file) {
    std::string text = read_file(file);
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

json parse_json_file(const fs::path& file) {
    std::string text = read_file(file);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::IoError, "malformed JSON in " + file.string());
    return j;
}

int require_int(const json& j, const char* key, const fs::path& file) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorCode::IoError, std::string("missing integer field '") + key + "' in " +
                                     file.string());
    return j[key].get<int>();
}

}  // namespace

Polygon load_polygon(const fs::path& file) {
    json j = parse_json_file(file);
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        fail(ErrorCode::IoError, "polygon file needs a 'vertices' array: " + file.string());
    int k = require_int(j, "k", file);
    std::vector<Vec2i> vertices;
    for (const json& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
            !v[1].is_number_integer())
            fail(ErrorCode::IoError, "vertices must be integer pairs: " + file.string());
        vertices.push_back(Vec2i{v[0].get<int>(), v[1].get<int>()});
    }
    return Polygon::from_vertices(std::move(vertices), k);
}

void save_coefficients(const CoefficientSet& coeffs, const fs::path& file) {
    std::string out = "nu1,nu2,a\n";
    for (size_t i = 0; i < coeffs.size(); ++i) {
        Vec2i nu = coeffs.exponents()[i];
        out += std::to_string(nu.x);
        out += ',';
        out += std::to_string(nu.y);
        out += ',';
        out += full_digits(coeffs.value(i));
        out += '\n';
    }
    atomic_write(file, out);
}

CoefficientSet load_coefficients(const Polygon& poly, const fs::path& file) {
    std::vector<std::string> lines = read_lines(file);
    if (lines.empty() || lines[0] != "nu1,nu2,a")
        fail(ErrorCode::IoError, "expected header 'nu1,nu2,a' in " + file.string());
    std::vector<Vec2i> expected = lattice_points(poly);
    if (lines.size() - 1 != expected.size())
        fail(ErrorCode::IoError,
             "expected " + std::to_string(expected.size()) + " coefficient rows in " +
                 file.string() + ", found " + std::to_string(lines.size() - 1));
    std::vector<double> values;
    values.reserve(expected.size());
    for (size_t i = 0; i < expected.size(); ++i) {
        std::vector<std::string> cells = split_csv_line(lines[i + 1]);
        if (cells.size() != 3)
            fail(ErrorCode::IoError, "malformed coefficient row in " + file.string());
        Vec2i nu{static_cast<int>(parse_int(cells[0], file)),
                 static_cast<int>(parse_int(cells[1], file))};
        if (!(nu == expected[i]))
            fail(ErrorCode::IoError, "coefficient rows out of order in " + file.string());
        double value = parse_double(cells[2], file);
        if (!(value > 0) || !std::isfinite(value))
            fail(ErrorCode::IoError, "coefficients must be positive in " + file.string());
        values.push_back(value);
    }
    return CoefficientSet::from_values(poly, std::move(values));
}

fs::path checkpoint_sidecar_path(const fs::path& coeff_file) {
    fs::path sidecar = coeff_file;
    sidecar += ".state.json";
    return sidecar;
}

void save_checkpoint(const IterationState& state, const fs::path& coeff_file) {
    save_coefficients(state.coeffs, coeff_file);
    json j;
    j["epsilon"] = state.epsilon;
    j["outer_step"] = state.outer_step;
    json tail = json::array();
    for (const HistoryRow& row : state.history)
        tail.push_back(json::array(
            {row.outer, row.inner_total, row.l2_error, row.max_ratio_dev, row.eta_max}));
    j["history_tail"] = std::move(tail);
    atomic_write(checkpoint_sidecar_path(coeff_file), j.dump(1) + "\n");
}

IterationState load_checkpoint(const Polygon& poly, const fs::path& coeff_file) {
    CoefficientSet coeffs = load_coefficients(poly, coeff_file);
    fs::path sidecar = checkpoint_sidecar_path(coeff_file);
    json j = parse_json_file(sidecar);
    if (!j.contains("epsilon") || !j["epsilon"].is_array())
        fail(ErrorCode::IoError, "missing 'epsilon' in " + sidecar.string());
    std::vector<double> epsilon;
    for (const json& e : j["epsilon"]) {
        if (!e.is_number()) fail(ErrorCode::IoError, "bad epsilon entry in " + sidecar.string());
        epsilon.push_back(e.get<double>());
    }
    if (!epsilon.empty() && epsilon.size() != coeffs.size())
        fail(ErrorCode::IoError, "epsilon length does not match the coefficients in " +
                                     sidecar.string());
    int outer_step = require_int(j, "outer_step", sidecar);
    if (!j.contains("history_tail") || !j["history_tail"].is_array())
        fail(ErrorCode::IoError, "missing 'history_tail' in " + sidecar.string());
    std::vector<HistoryRow> history;
    int inner_step = 0;
    for (const json& r : j["history_tail"]) {
        if (!r.is_array() || r.size() != 5 || !r[0].is_number_integer() ||
            !r[1].is_number_integer() || !r[2].is_number() || !r[3].is_number() ||
            !r[4].is_number())
            fail(ErrorCode::IoError, "bad history row in " + sidecar.string());
        HistoryRow row{r[0].get<int>(), r[1].get<int>(), r[2].get<double>(),
                       r[3].get<double>(), r[4].get<double>()};
        inner_step += row.inner_total;
        history.push_back(row);
    }
    return IterationState{std::move(coeffs), std::move(epsilon), {},          inner_step,
                          outer_step,        std::move(history), StopReason::none};
}

void save_iteration_log(const std::vector<HistoryRow>& history, const fs::path& file) {
    std::string out = "outer,inner_total,l2_error,max_ratio_dev,eta_max\n";
    for (const HistoryRow& row : history) {
        out += std::to_string(row.outer);
        out += ',';
        out += std::to_string(row.inner_total);
        out += ',';
        out += number(row.l2_error);
        out += ',';
        out += number(row.max_ratio_dev);
        out += ',';
        out += number(row.eta_max);
        out += '\n';
    }
    atomic_write(file, out);
}

void save_trace(const std::vector<TraceSample>& rows, const fs::path& file) {
    std::string out = "time,t1,t2,x1,x2,H\n";
    for (const TraceSample& row : rows) {
        out += number(row.time);
        out += ',';
        out += number(row.t.x);
        out += ',';
        out += number(row.t.y);
        out += ',';
        out += number(row.x.x);
        out += ',';
        out += number(row.x.y);
        out += ',';
        out += number(row.H);
        out += '\n';
    }
    atomic_write(file, out);
}

void save_report(const std::vector<ReportRow>& rows, const fs::path& file) {
    std::string out = "x1,x2,S,Shat,K,rho_norm,w_norm,riem_norm,bach_norm\n";
    for (const ReportRow& row : rows) {
        out += number(row.x.x);
        out += ',';
        out += number(row.x.y);
        out += ',';
        out += number(row.S);
        out += ',';
        out += number(row.Shat);
        out += ',';
        out += number(row.K);
        out += ',';
        out += number(row.rho_norm);
        out += ',';
        out += number(row.w_norm);
        out += ',';
        out += number(row.riem_norm);
        out += ',';
        out += number(row.bach_norm);
        out += '\n';
    }
    atomic_write(file, out);
}

void save_convergence(const std::vector<std::pair<int, double>>& rows, const fs::path& file) {
    std::string out = "k,l2\n";
    for (const auto& [k, l2] : rows) {
        out += std::to_string(k);
        out += ',';
        out += number(l2);
        out += '\n';
    }
    atomic_write(file, out);
}

void save_text(const std::string& text, const fs::path& file) { atomic_write(file, text); }

}  // namespace toric
