#include "cmbethe/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cmbethe {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::separate() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!has_items_.empty()) {
        if (has_items_.back()) out_ += ',';
        has_items_.back() = 1;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ += '{';
    has_items_.push_back(0);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    has_items_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ += '[';
    has_items_.push_back(0);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    has_items_.pop_back();
    return *this;
}

namespace {
void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}
}  // namespace

JsonWriter& JsonWriter::key(const std::string& name) {
    separate();
    append_escaped(out_, name);
    out_ += ':';
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
    separate();
    append_escaped(out_, s);
    return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(double v) {
    separate();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    separate();
    out_ += b ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(Complex z) {
    begin_array();
    value(z.real());
    value(z.imag());
    return end_array();
}

void write_matrix(JsonWriter& w, const Matrix& m) {
    w.begin_object();
    w.key("n").value(static_cast<long long>(m.dim()));
    w.key("entries").begin_array();
    for (int i = 0; i < m.dim(); ++i) {
        w.begin_array();
        for (int j = 0; j < m.dim(); ++j) w.value(m(i, j));
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

void write_pair(JsonWriter& w, const Matrix& x, const Matrix& z) {
    w.begin_object();
    w.key("X");
    write_matrix(w, x);
    w.key("Z");
    write_matrix(w, z);
    w.end_object();
}

void write_report(JsonWriter& w, const ResidualReport& r) {
    w.begin_object();
    w.key("identity").value(r.identity);
    w.key("lhs").value(r.lhs);
    w.key("rhs").value(r.rhs);
    w.key("abs").value(r.abs_residual);
    w.key("rel").value(r.rel_residual);
    w.key("status").value(to_string(r.status));
    if (!r.note.empty()) w.key("note").value(r.note);
    w.end_object();
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::string out = "m,j,re,im\n";
    for (std::size_t i = 0; i < t.m_values.size(); ++i) {
        for (std::size_t j = 0; j < t.roots[i].size(); ++j) {
            out += format_double(t.m_values[i].real());
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += format_double(t.roots[i][j].real());
            out += ',';
            out += format_double(t.roots[i][j].imag());
            out += '\n';
        }
    }
    return out;
}

std::string trajectory_to_json(const Trajectory& t) {
    JsonWriter w;
    w.begin_object();
    w.key("section").begin_object();
    w.key("eta").value(t.section.eta);
    w.key("lambda1").value(t.section.lambda1);
    w.key("lambda2").value(t.section.lambda2);
    w.end_object();
    w.key("m_values").begin_array();
    for (Complex m : t.m_values) w.value(m);
    w.end_array();
    w.key("roots").begin_array();
    for (const auto& level : t.roots) {
        w.begin_array();
        for (Complex r : level) w.value(r);
        w.end_array();
    }
    w.end_array();
    w.key("match_cost").begin_array();
    for (double c : t.match_cost) w.value(c);
    w.end_array();
    w.key("collision_flags").begin_array();
    for (bool f : t.collision_flag) w.value(f);
    w.end_array();
    w.end_object();
    return w.str();
}

namespace {

Complex complex_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw CmError(std::string(what) + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix_from_json(const nlohmann::json& j, const char* name) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw CmError(std::string("matrix ") + name + ": expected {\"n\", \"entries\"}");
    const int n = j["n"].get<int>();
    if (n <= 0) throw CmError(std::string("matrix ") + name + ": dimension must be positive");
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw CmError(std::string("matrix ") + name + ": entries must hold n rows");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw CmError(std::string("matrix ") + name + ": row has wrong length");
        for (int k = 0; k < n; ++k)
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], "matrix entry");
    }
    if (!m.is_finite()) throw CmError(std::string("matrix ") + name + ": non-finite entry");
    return m;
}

nlohmann::json parse_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw CmError("malformed JSON input");
    return j;
}

}  // namespace

PairFile pair_from_json_text(const std::string& text) {
    nlohmann::json j = parse_text(text);
    if (!j.is_object() || !j.contains("X") || !j.contains("Z"))
        throw CmError("pair file: expected {\"X\": matrix, \"Z\": matrix}");
    PairFile p{matrix_from_json(j["X"], "X"), matrix_from_json(j["Z"], "Z")};
    if (p.x.dim() != p.z.dim()) throw CmError("pair file: X and Z dimensions differ");
    return p;
}

std::string pair_to_json_text(const Matrix& x, const Matrix& z) {
    JsonWriter w;
    write_pair(w, x, z);
    return w.str();
}

RootTable root_table_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("m,j,re,im", 0) != 0)
        throw CmError("trajectory CSV: missing m,j,re,im header");

    std::map<long long, std::vector<std::pair<long long, Complex>>> levels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double m, re, im;
        long long j;
        if (std::sscanf(line.c_str(), "%lf,%lld,%lf,%lf", &m, &j, &re, &im) != 4)
            throw CmError("trajectory CSV: bad row: " + line);
        levels[static_cast<long long>(std::llround(m))].emplace_back(j, Complex{re, im});
    }
    RootTable t;
    for (auto& [m, entries] : levels) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Complex> level;
        level.reserve(entries.size());
        for (const auto& [j, z] : entries) level.push_back(z);
        t.m_values.push_back(m);
        t.roots.push_back(std::move(level));
    }
    return t;
}

RootTable root_table_from_json(const std::string& text) {
    nlohmann::json j = parse_text(text);
    if (!j.is_object() || !j.contains("m_values") || !j.contains("roots"))
        throw CmError("trajectory JSON: expected m_values and roots");
    RootTable t;
    for (const auto& m : j["m_values"]) {
        const Complex mc = complex_from_json(m, "m value");
        t.m_values.push_back(static_cast<long long>(std::llround(mc.real())));
    }
    for (const auto& level : j["roots"]) {
        std::vector<Complex> roots;
        for (const auto& r : level) roots.push_back(complex_from_json(r, "root"));
        t.roots.push_back(std::move(roots));
    }
    if (t.m_values.size() != t.roots.size())
        throw CmError("trajectory JSON: m_values and roots lengths differ");
    return t;
}

}  // namespace cmbethe
